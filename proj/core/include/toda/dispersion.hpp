#pragma once

#include <complex>
#include <string>
#include <vector>

#include "toda/params.hpp"

namespace toda {

using cplx = std::complex<double>;

// All spectral scalars attached to one transverse frequency eta.
// mu is the principal square root of w^2-1; the radicand never meets the
// negative real axis for real eta, so mu is continuous and mu(0) = sinh(kappa).
struct DispersionPoint {
    double eta = 0.0;
    cplx w;           // cosh(kappa) + i eta
    cplx mu;          // sqrt(w^2 - 1)
    cplx beta_plus;   // -w + mu   (|beta_plus| <= e^{-kappa})
    cplx beta_minus;  // -w - mu   (|beta_minus| >= e^{kappa})
    cplx gamma;       // log(-beta_minus), spatial decay exponent
    cplx delta;       // c*gamma - mu, temporal decay exponent

    double gamma_R() const { return gamma.real(); }
    double gamma_I() const { return gamma.imag(); }
    double delta_R() const { return delta.real(); }
    double delta_I() const { return delta.imag(); }
};

DispersionPoint dispersion_point(double eta, const SolitonParams& params);

// Dispersion of the weight-conjugated free lattice wave equation.
// omega = (eta^2 + 4 sin^2((xi + i alpha)/2))^{1/2} with arg omega in (-pi/2, pi/2].
struct FreeDispersionPoint {
    double xi = 0.0;
    double eta = 0.0;
    double alpha = 0.0;
    cplx omega;
};

FreeDispersionPoint free_omega(double xi, double eta, double alpha);

// Confirms eta_star(alpha) by solving gamma_R(eta) = kappa + alpha by bisection.
double eta_star_bisect(double alpha, double kappa, double tol = 1e-13);

struct DerivativeCheck {
    double value = 0.0;      // finite-difference value at step h
    double target = 0.0;     // closed form
    double rel_error = 0.0;  // |value_h/2 - target| / |target|
    double order = 0.0;      // observed convergence order from steps h, h/2
    bool conclusive = false;
};

struct DispersionScanReport {
    bool beta_product_ok = false;       // beta_+ beta_- = 1 on the grid
    double beta_product_max_err = 0.0;
    bool conjugate_symmetry_ok = false;  // point(-eta) = conj(point(eta))
    double conjugate_max_err = 0.0;
    bool beta_minus_increasing = false;  // |beta_-| strictly increasing for eta > 0
    bool delta_R_even = false;
    bool delta_R_increasing = false;
    bool delta_R_positive = false;       // delta_R(eta) > 0 off eta = 0
    bool delta_I_odd = false;
    bool mu_continuous = false;          // no branch jump along the grid
    DerivativeCheck dI_check;            // d delta_I/d eta (0) vs -lambda1
    DerivativeCheck d2R_check;           // d^2 delta_R/d eta^2 (0) vs 2 lambda2
    bool all_ok() const;
};

DispersionScanReport scan_dispersion(const SolitonParams& params,
                                     const std::vector<double>& eta_grid);

// Uniform grid, symmetric about 0, step h on [-m, m].
std::vector<double> symmetric_grid(double m, double h);

}  // namespace toda
