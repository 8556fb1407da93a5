#pragma once

#include <complex>
#include <functional>
#include <string>

#include "toda/lattice.hpp"
#include "toda/params.hpp"

namespace toda {

// Light-cone coordinates: t = x + s, y = x - s.
inline double tc_of(double s, double x) { return x + s; }
inline double yc_of(double s, double x) { return x - s; }

// Vacuum Jost functions: Phi^0_n(beta) = beta^n e^{beta x - s/beta} and its dual.
cplx phi0(cplx beta, int n, double s, double x);
cplx phi0_star(cplx beta, int n, double s, double x);

// Jost function around the soliton: beta^n e^{beta x - s/beta} (beta - tau'_{n+1}/tau'_n).
// Ill-conditioned near beta = a, 1/a at large |n| (the parenthesis cancels);
// use phi_soliton_zero for beta = a.
cplx phi(cplx beta, int n, double s, double x, const SolitonParams& params);
// Dual Jost function; poles at beta = a, 1/a, refuses evaluation within 1e-8 of them.
cplx phi_star(cplx beta, int n, double s, double x, const SolitonParams& params);
// Second representation of phi_star via (beta - d_x)^{-1} tau'_{n+1}; cross-check only.
cplx phi_star_alt(cplx beta, int n, double s, double x, const SolitonParams& params);

// Phi_n(a) = (-1)^{n+1} e^{-y cosh k} sinh k sech(n k - t sinh k), a = -e^k.
cplx phi_soliton_zero(int n, double s, double x, const SolitonParams& params);
// 1/(e^d tau'), the third null vector of the soliton Lax pair.
cplx inv_shift_tau(int n, double s, double x, const SolitonParams& params);
// Full tau' including sign and y-prefactor (the factor 2 of the standard form kept).
double tau_prime_full(int n, double s, double x, const SolitonParams& params);

using JostField = std::function<cplx(int n, double s, double x)>;

enum class LaxOp {
    L1Free, L2Free, L1FreeAdj, L2FreeAdj,  // vacuum pair and its adjoint
    L1Sol, L2Sol, L1SolAdj, L2SolAdj       // soliton pair and its adjoint
};

std::string lax_op_name(LaxOp op);

struct GridSpec {
    int n_min = -12, n_max = 12;
    double s_lo = 0.3, s_hi = 0.7;
    int s_count = 5;
    double x_lo = 0.3, x_hi = 0.7;
    int x_count = 5;
    double h = 1e-3;  // finite-difference step for d_s, d_x
};

struct LaxResidualReport {
    std::string op;
    double max_rel_residual = 0.0;  // at step h/2
    double step = 0.0;
    double observed_order = 0.0;    // from steps h and h/2
};

// Central finite-difference residual of (op field) over the grid, relative to
// the local term magnitudes; aborts on non-finite field values.
LaxResidualReport lax_residual(const JostField& field, LaxOp op, const GridSpec& grid,
                               const SolitonParams& params);

// Residual of d_x d_s (Phi Phi^*) = (e^d - 1)(1+V)(1 - e^{-d}) Phi Phi^* by mixed
// central differences; vacuum = true uses the free pair Phi^0 Phi^{0,*} and V = 0.
LaxResidualReport product_solution_residual(cplx beta1, cplx beta2, const GridSpec& grid,
                                            const SolitonParams& params, bool vacuum);

}  // namespace toda
