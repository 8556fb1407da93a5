#pragma once

#include <array>
#include <utility>

#include "toda/dispersion.hpp"
#include "toda/lattice.hpp"
#include "toda/params.hpp"
#include "toda/state.hpp"

namespace toda {

// The eight secular-mode sequences at one (t, eta), their time derivatives,
// the real combinations g^1, g^2, g^{1,*}, g^{2,*}, and the 2x2 Gram matrix.
// All sequences are stored at y = 0; the factor e^{i y eta} is carried
// analytically. Sequences marked "tilde" are the antecedents with
// g = (1 - e^{-d}) g-tilde.
struct ModeBundle {
    double t = 0.0;
    double eta = 0.0;
    LatticeWindow window;
    DispersionPoint disp;
    bool has_pm_modes = false;  // false only for the eta = 0 limit bundle

    ComplexSeq tg_plus, tg_plus_star, tg_minus, tg_minus_star;
    ComplexSeq dt_tg_plus, dt_tg_plus_star, dt_tg_minus, dt_tg_minus_star;
    ComplexSeq g_plus, g_plus_star, g_minus, g_minus_star;
    ComplexSeq dt_g_plus, dt_g_plus_star, dt_g_minus, dt_g_minus_star;

    ComplexSeq g1, g2, g1_star, g2_star;
    ComplexSeq dt_g1, dt_g2, dt_g1_star, dt_g2_star;
    ComplexSeq tg1, tg2, tg1_star, tg2_star;

    // row-major: [ <G1,G1*>, <G2,G1*>, <G1,G2*>, <G2,G2*> ] with
    // <Gj,Gk*> = <g^j, dt g^{k,*}> - <dt g^j, g^{k,*}>
    std::array<cplx, 4> gram{};
    cplx gram_det{};
    double gram_cond = 0.0;
};

// Secular modes for eta != 0, |eta| < eta_star(alpha).
ModeBundle build_modes(double t, double eta, const SolitonParams& params,
                       const LatticeWindow& window);
// The eta -> 0 limit: sin(theta)/eta is replaced by its analytic limit
// -lambda1 t + z csch(kappa); only the g^j family and the +-star pair exist.
ModeBundle eta_zero_modes(double t, const SolitonParams& params, const LatticeWindow& window);

// <(q,p), (r1,r2)> = sum q conj(r1) + sum p conj(r2)
cplx vec_pairing(const ComplexSeq& q, const ComplexSeq& p, const ComplexSeq& r1,
                 const ComplexSeq& r2);

// Removes the secular component: state minus (g^1, g^2) A^{-1} (pairings).
// Throws on |det A| < 1e-8. Post: pairings against (dt g^{j,*}, -g^{j,*}) vanish.
ModeState project_secular(const ModeState& state, const ModeBundle& bundle);

// Pairing values of the secular term condition for a state in R-representation:
// <R', dt tg^{+-,*}> - <dt R', tg^{+-,*}>. Conserved along the flow.
std::pair<cplx, cplx> secular_condition(const ModeState& state_r, const ModeBundle& bundle);

// Same condition evaluated on a Q-representation state via the g^{+-,*} pairings.
std::pair<cplx, cplx> secular_condition_q(const ModeState& state_q, const ModeBundle& bundle);

// Closed-form Gram entries for comparison: {-4 csch Re mu, 4 Im mu/(eta sinh),
// -4 csch eta Im mu, -4 csch Re mu}.
std::array<cplx, 4> gram_closed_form(double eta, const SolitonParams& params);

// Principal angles (cosines) between span{tg^{+,*}, tg^{-,*}} and
// (e^d - 2 + e^{-d})^{-1} span{dt R^k, dk R^k}; qualitative small-eta check.
std::array<double, 2> adjoint_span_angles(double t, double eta, const SolitonParams& params,
                                          const LatticeWindow& window);

}  // namespace toda
