#include "toda/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace toda {

DispersionPoint dispersion_point(double eta, const SolitonParams& params) {
    DispersionPoint p;
    p.eta = eta;
    p.w = cplx(params.cosh_k(), eta);
    p.mu = std::sqrt(p.w * p.w - 1.0);
    p.beta_plus = -p.w + p.mu;
    p.beta_minus = -p.w - p.mu;
    p.gamma = std::log(p.w + p.mu);  // -beta_minus = w + mu
    p.delta = params.c * p.gamma - p.mu;
    return p;
}

FreeDispersionPoint free_omega(double xi, double eta, double alpha) {
    FreeDispersionPoint p;
    p.xi = xi;
    p.eta = eta;
    p.alpha = alpha;
    const cplx s = std::sin(cplx(xi, alpha) * 0.5);
    p.omega = std::sqrt(eta * eta + 4.0 * s * s);
    return p;
}

double eta_star_bisect(double alpha, double kappa, double tol) {
    const SolitonParams p = SolitonParams::make(kappa, alpha);
    const double target = kappa + alpha;
    double lo = 0.0;
    double hi = 1.0;
    while (dispersion_point(hi, p).gamma_R() < target) hi *= 2.0;
    while (hi - lo > tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (dispersion_point(mid, p).gamma_R() < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool DispersionScanReport::all_ok() const {
    return beta_product_ok && conjugate_symmetry_ok && beta_minus_increasing && delta_R_even &&
           delta_R_increasing && delta_R_positive && delta_I_odd && mu_continuous &&
           dI_check.conclusive && d2R_check.conclusive;
}

std::vector<double> symmetric_grid(double m, double h) {
    const int k = static_cast<int>(std::llround(m / h));
    std::vector<double> g;
    g.reserve(2 * k + 1);
    for (int i = -k; i <= k; ++i) g.push_back(i * h);
    return g;
}

namespace {

DerivativeCheck derivative_check(double value_h, double value_h2, double target) {
    DerivativeCheck c;
    c.value = value_h;
    c.target = target;
    const double err_h = std::abs(value_h - target);
    const double err_h2 = std::abs(value_h2 - target);
    c.rel_error = err_h2 / std::abs(target);
    c.order = (err_h2 > 0.0) ? std::log2(err_h / err_h2) : 2.0;
    c.conclusive = c.rel_error < 1e-5 && c.order >= 1.9;
    return c;
}

}  // namespace

DispersionScanReport scan_dispersion(const SolitonParams& params,
                                     const std::vector<double>& eta_grid) {
    DispersionScanReport r;
    const std::size_t n = eta_grid.size();
    std::vector<DispersionPoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = dispersion_point(eta_grid[i], params);

    double prod_err = 0.0;
    for (const auto& p : pts) prod_err = std::max(prod_err, std::abs(p.beta_plus * p.beta_minus - 1.0));
    r.beta_product_max_err = prod_err;
    r.beta_product_ok = prod_err < 1e-12;

    double conj_err = 0.0;
    double even_err = 0.0, odd_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;  // grid symmetric about 0
        conj_err = std::max(conj_err, std::abs(pts[j].mu - std::conj(pts[i].mu)));
        conj_err = std::max(conj_err, std::abs(pts[j].gamma - std::conj(pts[i].gamma)));
        conj_err = std::max(conj_err, std::abs(pts[j].delta - std::conj(pts[i].delta)));
        even_err = std::max(even_err, std::abs(pts[j].delta_R() - pts[i].delta_R()));
        odd_err = std::max(odd_err, std::abs(pts[j].delta_I() + pts[i].delta_I()));
    }
    r.conjugate_max_err = conj_err;
    r.conjugate_symmetry_ok = conj_err < 1e-12;
    r.delta_R_even = even_err < 1e-12;
    r.delta_I_odd = odd_err < 1e-12;

    bool bm_inc = true, dR_inc = true, dR_pos = true, mu_cont = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (eta_grid[i] >= 0.0) {
            if (std::abs(pts[i + 1].beta_minus) <= std::abs(pts[i].beta_minus)) bm_inc = false;
            if (pts[i + 1].delta_R() <= pts[i].delta_R()) dR_inc = false;
        }
        if (eta_grid[i] != 0.0 && pts[i].delta_R() <= 0.0) dR_pos = false;
        // Lipschitz bound for the branch-continuity check: |mu'| = |w|/|mu|
        const double h = eta_grid[i + 1] - eta_grid[i];
        const double lip = std::abs(pts[i].w) / std::min(std::abs(pts[i].mu), std::abs(pts[i + 1].mu));
        if (std::abs(pts[i + 1].mu - pts[i].mu) > 3.0 * lip * h + 1e-12) mu_cont = false;
    }
    r.beta_minus_increasing = bm_inc;
    r.delta_R_increasing = dR_inc;
    r.delta_R_positive = dR_pos;
    r.mu_continuous = mu_cont;

    const ProfileParams pp = ProfileParams::make(params.kappa);
    // derivative step follows the grid resolution; a coarse grid cannot
    // support a conclusive check
    double spacing = 1e-3;
    if (n >= 2) spacing = eta_grid[1] - eta_grid[0];
    const double h0 = std::max(1e-3, spacing);
    auto dI = [&](double h) {
        return (dispersion_point(h, params).delta_I() - dispersion_point(-h, params).delta_I()) /
               (2.0 * h);
    };
    auto d2R = [&](double h) {
        return (dispersion_point(h, params).delta_R() - 2.0 * dispersion_point(0.0, params).delta_R() +
                dispersion_point(-h, params).delta_R()) /
               (h * h);
    };
    r.dI_check = derivative_check(dI(h0), dI(h0 / 2.0), -pp.lambda1);
    r.d2R_check = derivative_check(d2R(h0), d2R(h0 / 2.0), 2.0 * pp.lambda2);
    return r;
}

}  // namespace toda
