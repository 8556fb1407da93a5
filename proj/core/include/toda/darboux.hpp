#pragma once

#include <string>
#include <vector>

#include "toda/lattice.hpp"
#include "toda/modes.hpp"
#include "toda/params.hpp"
#include "toda/state.hpp"

namespace toda {

// Tridiagonal lattice operator with site-dependent coefficients:
// (T f)(n) = sub(n) f(n-1) + diag(n) f(n) + sup(n) f(n+1), zero extension.
// Rows are exact (coefficients come from the analytic background); only
// references to f outside the window are truncated.
class TriOp {
  public:
    TriOp() = default;
    explicit TriOp(LatticeWindow w)
        : win_(w), sub_(w.size()), diag_(w.size()), sup_(w.size()) {}

    const LatticeWindow& window() const { return win_; }
    cplx& sub(int i) { return sub_[static_cast<std::size_t>(i)]; }
    cplx& diag(int i) { return diag_[static_cast<std::size_t>(i)]; }
    cplx& sup(int i) { return sup_[static_cast<std::size_t>(i)]; }
    cplx sub(int i) const { return sub_[static_cast<std::size_t>(i)]; }
    cplx diag(int i) const { return diag_[static_cast<std::size_t>(i)]; }
    cplx sup(int i) const { return sup_[static_cast<std::size_t>(i)]; }

    ComplexSeq apply(const ComplexSeq& f) const;
    // per-site sum of the term magnitudes |sub f| + |diag f| + |sup f|; the
    // backward-error scale of apply() under cancellation
    ComplexSeq apply_abs(const ComplexSeq& f) const;
    TriOp adjoint() const;
    TriOp& operator-=(const TriOp& o);

  private:
    LatticeWindow win_;
    std::vector<cplx> sub_, diag_, sup_;
};

// The frozen-frequency Darboux operators built from the background u(t), v(t).
struct DarbouxOps {
    double t = 0.0;
    double eta = 0.0;
    LatticeWindow window;
    TriOp A;            // A(-i eta)
    TriOp Ap;           // A'(-i eta)
    TriOp B;            // B(i eta)
    TriOp Bp;           // B'(i eta)
    TriOp C;            // A(-i eta) - B(i eta)
    TriOp Cp;           // e^d B'(i eta) - A'(-i eta)
    TriOp epB_minus_A;  // e^d B(i eta) - A(-i eta)
    TriOp ApmBp;        // A'(-i eta) - B'(i eta)
    TriOp D;            // e^d + e^{-d} + 2 i eta + 2 cosh kappa
};

DarbouxOps build_ops(double t, double eta, const SolitonParams& params,
                     const LatticeWindow& window);

// Green kernel of D(eta): k_n = beta_-(eta)^{-|n|} / (2 mu(eta)).
struct GreenKernel {
    double eta = 0.0;
    cplx mu;
    cplx gamma;  // log(-beta_minus)
    cplx k(int m) const;
};

GreenKernel green_kernel(double eta, const SolitonParams& params);

enum class DConjugation { None, Tau, TauInverse };

struct DSolveResult {
    ComplexSeq u;
    double residual = 0.0;  // interior relative residual of the conjugated system
};

// Solves the (possibly tau'-conjugated) system D(eta) by Green-kernel
// convolution: Tau solves tau' D (tau')^{-1} u = f, TauInverse the reverse.
DSolveResult solve_D(double eta, const ComplexSeq& f, DConjugation conj,
                     const SolitonParams& params, double t);

struct CSolveResult {
    ComplexSeq u;
    double ortho_defect = 0.0;  // |<f, e^{-d} tg^{+,*}>| / (|f| |tg|) before solving
    double residual = 0.0;      // interior relative residual of C(eta) u = f
};

// Solves C(eta) u = f for |eta| < eta_star via u = -e^{-d} tau' k * ((1/tau') e^d f).
// Requires the orthogonality <f, e^{-d} tg^{+,*}(eta)> = 0; rejects above tol.
CSolveResult solve_C(double eta, const ComplexSeq& f, const SolitonParams& params,
                     double t, double ortho_tol = 1e-8);

// Particular inverse of C'(eta) with the value at pin_site normalized to zero
// (the component along ker C' = span{g+} is fixed by the pin).
ComplexSeq solve_Cprime_pinned(double eta, const ComplexSeq& F, const SolitonParams& params,
                               double t, const ModeBundle& bundle, int pin_site = 0);

struct DarbouxMapResult {
    ModeState state;
    double row1_residual = 0.0;
    double row2_residual = 0.0;
    double ortho_defect = 0.0;        // forward: defect of the solvability condition
    cplx normalization_pairing{};     // inverse: pairing fixed to zero
    double amplification = 0.0;       // output norm / input norm, comoving l^2_alpha
};

// Q' -> Q: solves both rows of the frozen Darboux system for the free-side pair.
DarbouxMapResult darboux_forward(const ModeState& q_prime, const ModeBundle& bundle,
                                 const DarbouxOps& ops, const SolitonParams& params);
// Q -> Q': particular solution with pin normalization plus the (g+, dt g+)
// correction enforcing <(Q1',Q2'), (dt g^{-,*}, -g^{-,*})> = 0.
DarbouxMapResult darboux_inverse(const ModeState& q, const ModeBundle& bundle,
                                 const DarbouxOps& ops, const SolitonParams& params,
                                 int pin_site = 0);

// Residuals of the two rows of the frozen Darboux system for a given pair,
// relative, measured away from an edge band.
std::pair<double, double> darboux_system_residual(const ModeState& q, const ModeState& q_prime,
                                                  const SolitonParams& params, int edge_band = 10);

struct DriftReport {
    double max_residual = 0.0;             // max row residual over the horizon
    std::vector<double> sample_times;
    std::vector<double> residuals;
};

// Evolves Q' (soliton equation) and Q (free equation) independently and tracks
// the Darboux-system residual over [t0, t0+T].
DriftReport correspondence_drift(const ModeState& q_prime0, const ModeState& q0, double T,
                                 double dt, const SolitonParams& params, double sample_dt = 0.5);

struct IdentityResidual {
    std::string name;
    double backward_rel = 0.0;     // residual / local term scale, max over interior
    double forward_central = 0.0;  // residual / rhs scale on |n - ct| <= 7
    // full-window residual in the weighted norm natural to the identity's
    // modes; tail-dominated, so it shrinks as the window grows
    double weighted_full = 0.0;
};

struct ModeIdentityReport {
    double t = 0.0, eta = 0.0;
    LatticeWindow window;
    bool derived_route = false;  // tilde modes realized via inverse shift operators
    std::vector<IdentityResidual> identities;
    double max_backward() const;
    // weighted full-window residual over the four mode identities (the
    // vacuum-pair identities excluded: their geometric fields admit no
    // tempering weight)
    double max_weighted_mode_ids() const;
};

// The six operator identities satisfied by the secular modes. With
// derived_route the tilde sequences are reconstructed through the truncated
// Neumann inverses, making the residual tail-dominated (window-convergence).
ModeIdentityReport mode_operator_identities(double t, double eta, const SolitonParams& params,
                                     const LatticeWindow& window, bool derived_route = false);

struct KernelSvdReport {
    double eta = 0.0;
    double sigma_max_C = 0.0, sigma_min_C = 0.0;
    double sigma_max_Cp = 0.0, sigma_min_Cp = 0.0;
    int near_kernel_C = 0;    // near-zero singular values with interior right vector
    int near_kernel_Cp = 0;
    double threshold = 1e-6;  // relative to sigma_max
};

// SVD of the weight-conjugated truncations e^{an} C e^{-an}, e^{an} C' e^{-an}.
// A near-zero singular value counts as a kernel direction only when its right
// singular vector carries most of its mass away from the edge band (a genuine
// decaying kernel vector rather than a truncation artifact).
KernelSvdReport kernel_svd_check(double eta, const SolitonParams& params,
                                 const LatticeWindow& window, int edge_band = 10);

// Smallest singular value of the weighted C(eta) truncation.
double c_sigma_min(double eta, const SolitonParams& params, const LatticeWindow& window);

// Direct estimate of ||C(eta)^{-1}|| on the weighted space by applying the
// Green-kernel inverse to random right sides; the operative surrogate for the
// high-frequency resolvent bound.
double c_inverse_norm_estimate(double eta, const SolitonParams& params,
                               const LatticeWindow& window, int trials = 6,
                               unsigned seed = 1234);

}  // namespace toda
