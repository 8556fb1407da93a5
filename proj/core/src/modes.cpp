#include "toda/modes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "toda/soliton.hpp"

namespace toda {

namespace {

// Shared impl for eta != 0 and the eta -> 0 limit. Everything is assembled
// from E = exp(-t delta_R - gamma_R z) sech(kappa z),
//      B = exp(+t delta_R + gamma_R z) sech(kappa z),
//      theta = t delta_I + gamma_I z,
// with sin(theta)/eta and Im(mu)/eta replaced by their limits at eta = 0.
ModeBundle build_impl(double t, double eta, const SolitonParams& params,
                      const LatticeWindow& w) {
    ModeBundle b;
    b.t = t;
    b.eta = eta;
    b.window = w;
    b.disp = dispersion_point(eta, params);
    b.has_pm_modes = (eta != 0.0);

    const double k = params.kappa;
    const double sh = params.sinh_k();
    const double csch = 1.0 / sh;
    const double gR = b.disp.gamma_R();
    const double gI = b.disp.gamma_I();
    const double dR = b.disp.delta_R();
    const double dI = b.disp.delta_I();
    const double muR = b.disp.mu.real();
    const double muI = b.disp.mu.imag();
    const ProfileParams pp = ProfileParams::make(k);
    // Im mu(eta)/eta, continued through 0 by its limit cosh k / sinh k
    const double muI_over_eta = (eta != 0.0) ? muI / eta : params.cosh_k() * csch;

    const int n0 = w.n_min, n1 = w.n_max;
    auto seqs = [&]() { return ComplexSeq(w); };
    ComplexSeq g1 = seqs(), g2 = seqs(), g1s = seqs(), g2s = seqs();
    ComplexSeq dg1 = seqs(), dg2 = seqs(), dg1s = seqs(), dg2s = seqs();
    ComplexSeq tgp = seqs(), tgps = seqs(), tgm = seqs(), tgms = seqs();
    ComplexSeq dtgp = seqs(), dtgps = seqs(), dtgm = seqs(), dtgms = seqs();
    ComplexSeq tg1 = seqs(), tg2 = seqs(), tg1s = seqs(), tg2s = seqs();

    for (int n = n0; n <= n1; ++n) {
        const int i = w.index(n);
        const double z = params.z(n, t);
        const double lsech = std::log(math::sech(k * z));
        const double T = std::tanh(k * z);
        const double E = std::exp(-t * dR - gR * z + lsech);
        const double B = std::exp(t * dR + gR * z + lsech);
        const double theta = t * dI + gI * z;
        const double cth = (eta != 0.0) ? std::cos(theta) : 1.0;
        const double sth = (eta != 0.0) ? std::sin(theta) : 0.0;
        // sin(theta)/eta with its analytic eta -> 0 limit
        const double sinc = (eta != 0.0) ? sth / eta : -pp.lambda1 * t + z * csch;

        tg1[i] = E * cth;
        tg2[i] = E * sinc;
        tg1s[i] = -B * sinc;
        tg2s[i] = B * cth;
        dg1[i] = (muR + sh * T) * E * cth + muI * E * sth;
        dg2[i] = (muR + sh * T) * E * sinc - muI_over_eta * E * cth;
        dg1s[i] = (muR - sh * T) * B * sinc + muI_over_eta * B * cth;
        dg2s[i] = (-muR + sh * T) * B * cth + muI * B * sth;

        // complex +- modes; the minus pair needs eta != 0
        const cplx eith(cth, sth);
        tgp[i] = 0.5 * E * eith;
        tgps[i] = 0.5 * B * std::conj(eith);
        dtgp[i] = (std::conj(b.disp.mu) + sh * T) * tgp[i];
        dtgps[i] = (-std::conj(b.disp.mu) + sh * T) * tgps[i];
        if (eta != 0.0) {
            const cplx pref = -sh / (2.0 * cplx(0.0, eta));
            tgm[i] = pref * E * std::conj(eith);
            tgms[i] = pref * B * eith;
            dtgm[i] = (b.disp.mu + sh * T) * tgm[i];
            dtgms[i] = (-b.disp.mu + sh * T) * tgms[i];
        }
    }

    // the non-tilde g's; for j = 1, 2 the tilde stays the inv_diff_minus antecedent
    b.tg_plus = tgp; b.tg_plus_star = tgps; b.tg_minus = tgm; b.tg_minus_star = tgms;
    b.dt_tg_plus = dtgp; b.dt_tg_plus_star = dtgps; b.dt_tg_minus = dtgm; b.dt_tg_minus_star = dtgms;
    b.g_plus = diff_minus(tgp); b.g_plus_star = diff_minus(tgps);
    b.g_minus = diff_minus(tgm); b.g_minus_star = diff_minus(tgms);
    b.dt_g_plus = diff_minus(dtgp); b.dt_g_plus_star = diff_minus(dtgps);
    b.dt_g_minus = diff_minus(dtgm); b.dt_g_minus_star = diff_minus(dtgms);

    b.tg1 = tg1; b.tg2 = tg2; b.tg1_star = tg1s; b.tg2_star = tg2s;
    b.g1 = diff_minus(tg1); b.g2 = diff_minus(tg2);
    b.g1_star = diff_minus(tg1s); b.g2_star = diff_minus(tg2s);
    b.dt_g1 = diff_minus(dg1); b.dt_g2 = diff_minus(dg2);
    b.dt_g1_star = diff_minus(dg1s); b.dt_g2_star = diff_minus(dg2s);

    b.gram[0] = vec_pairing(b.g1, b.dt_g1, b.dt_g1_star, cplx(-1.0) * b.g1_star);
    b.gram[1] = vec_pairing(b.g2, b.dt_g2, b.dt_g1_star, cplx(-1.0) * b.g1_star);
    b.gram[2] = vec_pairing(b.g1, b.dt_g1, b.dt_g2_star, cplx(-1.0) * b.g2_star);
    b.gram[3] = vec_pairing(b.g2, b.dt_g2, b.dt_g2_star, cplx(-1.0) * b.g2_star);
    b.gram_det = b.gram[0] * b.gram[3] - b.gram[1] * b.gram[2];

    const double a0 = std::abs(b.gram[0]), a1 = std::abs(b.gram[1]);
    const double a2 = std::abs(b.gram[2]), a3 = std::abs(b.gram[3]);
    const double big = std::max(std::max(a0, a1), std::max(a2, a3));
    b.gram_cond = (std::abs(b.gram_det) > 0.0)
                      ? (big * big * 2.0) / std::abs(b.gram_det)
                      : std::numeric_limits<double>::infinity();
    return b;
}

}  // namespace

ModeBundle build_modes(double t, double eta, const SolitonParams& params,
                       const LatticeWindow& window) {
    if (eta == 0.0)
        throw std::domain_error("build_modes: eta = 0 needs eta_zero_modes");
    if (std::abs(eta) >= params.eta_star)
        throw std::domain_error("build_modes: |eta| >= eta_star(alpha), modes leave l^2_alpha");
    return build_impl(t, eta, params, window);
}

ModeBundle eta_zero_modes(double t, const SolitonParams& params, const LatticeWindow& window) {
    return build_impl(t, 0.0, params, window);
}

cplx vec_pairing(const ComplexSeq& q, const ComplexSeq& p, const ComplexSeq& r1,
                 const ComplexSeq& r2) {
    return pairing(q, r1) + pairing(p, r2);
}

ModeState project_secular(const ModeState& state, const ModeBundle& bundle) {
    if (!(state.q.window() == bundle.window))
        throw std::invalid_argument("project_secular: window mismatch");
    if (std::abs(bundle.gram_det) < 1e-8)
        throw std::runtime_error("project_secular: degenerate Gram matrix");

    const cplx v1 = vec_pairing(state.q, state.p, bundle.dt_g1_star, cplx(-1.0) * bundle.g1_star);
    const cplx v2 = vec_pairing(state.q, state.p, bundle.dt_g2_star, cplx(-1.0) * bundle.g2_star);
    // solve A c = v with A row-major [a b; c d]
    const cplx a = bundle.gram[0], bb = bundle.gram[1], cc = bundle.gram[2], d = bundle.gram[3];
    const cplx det = bundle.gram_det;
    const cplx c1 = (d * v1 - bb * v2) / det;
    const cplx c2 = (-cc * v1 + a * v2) / det;

    ModeState out = state;
    for (int i = 0; i < out.q.size(); ++i) {
        out.q[i] -= c1 * bundle.g1[i] + c2 * bundle.g2[i];
        out.p[i] -= c1 * bundle.dt_g1[i] + c2 * bundle.dt_g2[i];
    }
    return out;
}

std::pair<cplx, cplx> secular_condition(const ModeState& state_r, const ModeBundle& bundle) {
    if (!bundle.has_pm_modes)
        throw std::domain_error("secular_condition: needs eta != 0");
    if (is_q_form(state_r.rep))
        throw std::invalid_argument("secular_condition: state must be in R representation");
    const cplx sp = pairing(state_r.q, bundle.dt_tg_plus_star) -
                    pairing(state_r.p, bundle.tg_plus_star);
    const cplx sm = pairing(state_r.q, bundle.dt_tg_minus_star) -
                    pairing(state_r.p, bundle.tg_minus_star);
    return {sp, sm};
}

std::pair<cplx, cplx> secular_condition_q(const ModeState& state_q, const ModeBundle& bundle) {
    if (!bundle.has_pm_modes)
        throw std::domain_error("secular_condition_q: needs eta != 0");
    const cplx sp =
        vec_pairing(state_q.q, state_q.p, bundle.dt_g_plus_star, cplx(-1.0) * bundle.g_plus_star);
    const cplx sm =
        vec_pairing(state_q.q, state_q.p, bundle.dt_g_minus_star, cplx(-1.0) * bundle.g_minus_star);
    return {sp, sm};
}

std::array<cplx, 4> gram_closed_form(double eta, const SolitonParams& params) {
    const DispersionPoint d = dispersion_point(eta, params);
    const double csch = params.csch_k();
    const double muR = d.mu.real();
    const double muI_over_eta = (eta != 0.0) ? d.mu.imag() / eta : params.cosh_k() * csch;
    return {cplx(-4.0 * csch * muR), cplx(4.0 * csch * muI_over_eta),
            cplx(-4.0 * csch * eta * d.mu.imag()), cplx(-4.0 * csch * muR)};
}

std::array<double, 2> adjoint_span_angles(double t, double eta, const SolitonParams& params,
                                          const LatticeWindow& w) {
    const ModeBundle b = build_modes(t, eta, params, w);
    const int n = w.size();

    // (e^d - 2 + e^{-d})^{-1} = (1 - e^{-d})^{-1} (e^d - 1)^{-1} realized on
    // the dual side: suffix sums for (e^d - 1)^{-1}, forward prefix sums for
    // (1 - e^{-d})^{-1} (the convergent branch on l^2_{-alpha})
    auto prefix = [&](const ComplexSeq& f) {
        ComplexSeq g(w);
        cplx acc{};
        for (int i = 0; i < n; ++i) {
            acc += f[i];
            g[i] = acc;
        }
        return g;
    };
    const ComplexSeq w1 = prefix(inv_diff_plus(dtR_row(w, t, params)));
    const ComplexSeq w2 = prefix(inv_diff_plus(dkappaR_row(w, t, params)));

    // principal angles in the l^2_{-alpha} comoving geometry, where the
    // adjoint modes live
    Eigen::MatrixXcd U(n, 2), V(n, 2);
    const double cen = params.center(t);
    for (int i = 0; i < n; ++i) {
        const double wgt = std::exp(-params.alpha * (w.site(i) - cen));
        U(i, 0) = wgt * b.tg_plus_star[i];
        U(i, 1) = wgt * b.tg_minus_star[i];
        V(i, 0) = wgt * w1[i];
        V(i, 1) = wgt * w2[i];
    }
    const Eigen::MatrixXcd Qu = Eigen::HouseholderQR<Eigen::MatrixXcd>(U).householderQ() *
                                Eigen::MatrixXcd::Identity(n, 2);
    const Eigen::MatrixXcd Qv = Eigen::HouseholderQR<Eigen::MatrixXcd>(V).householderQ() *
                                Eigen::MatrixXcd::Identity(n, 2);
    const Eigen::Matrix2cd M = Qu.adjoint() * Qv;
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M);
    return {svd.singularValues()(0), svd.singularValues()(1)};
}

}  // namespace toda
