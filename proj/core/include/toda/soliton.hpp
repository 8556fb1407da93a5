#pragma once

#include <vector>

#include "toda/lattice.hpp"
#include "toda/params.hpp"

namespace toda {

namespace math {

// sech via the log-domain form 2 e^{-|x|} / (1 + e^{-2|x|}); no overflow.
inline double sech(double x) {
    const double e = std::exp(-std::abs(x));
    return 2.0 * e / (1.0 + e * e);
}

// log cosh(x) = |x| - log 2 + log1p(e^{-2|x|})
inline double log_cosh(double x) {
    return std::abs(x) - std::log(2.0) + std::log1p(std::exp(-2.0 * std::abs(x)));
}

}  // namespace math

// The line-soliton background and every derived lattice field entering the
// linearized operators, at one site and time. tau is the reduced tau-function
// cosh(kappa z_n(t)); the sign (-1)^n and the exponential y-prefactor of the
// full tau' are reinstated analytically where a formula needs them.
struct BackgroundSample {
    int n = 0;
    double t = 0.0;
    double z = 0.0;    // n - c t
    double tau = 0.0;  // cosh(kappa z)
    double V = 0.0;    // sinh^2(kappa) sech^2(kappa z)
    double R = 0.0;    // log(1 + V)
    double Q = 0.0;    // log(cosh kappa z_n / cosh kappa z_{n-1})
    double u = 0.0;    // -cosh k + sinh k tanh(kappa z_n)
    double v = 0.0;    // -cosh k - sinh k tanh(kappa z_{n-1})
};

BackgroundSample background(int n, double t, const SolitonParams& params);
std::vector<BackgroundSample> background_row(const LatticeWindow& window, double t,
                                             const SolitonParams& params);

// d/dt Q^k_n = -sinh^2 k sech(k z_n) sech(k z_{n-1})
double dt_Q_kappa(int n, double t, const SolitonParams& params);
// d^2/dt^2 Q^k_n = dt_Q * sinh k (tanh k z_n + tanh k z_{n-1})
double dt2_Q_kappa(int n, double t, const SolitonParams& params);
// kappa-derivative of Q^k at fixed (n, t)
double dkappa_Q_kappa(int n, double t, const SolitonParams& params);

// Row evaluations used by the operators and the profile comparison.
std::vector<double> V_row(const LatticeWindow& w, double t, const SolitonParams& p);
std::vector<double> u_row(const LatticeWindow& w, double t, const SolitonParams& p);
std::vector<double> v_row(const LatticeWindow& w, double t, const SolitonParams& p);
// signed reduced tau': (-1)^n cosh(kappa z_n)
std::vector<double> tau_signed_row(const LatticeWindow& w, double t, const SolitonParams& p);
ComplexSeq dtQ_row(const LatticeWindow& w, double t, const SolitonParams& p);
ComplexSeq dt2Q_row(const LatticeWindow& w, double t, const SolitonParams& p);
ComplexSeq dtR_row(const LatticeWindow& w, double t, const SolitonParams& p);
ComplexSeq dt2R_row(const LatticeWindow& w, double t, const SolitonParams& p);
ComplexSeq dkappaR_row(const LatticeWindow& w, double t, const SolitonParams& p);

}  // namespace toda
