#include "toda/soliton.hpp"

#include <cmath>

namespace toda {

BackgroundSample background(int n, double t, const SolitonParams& params) {
    BackgroundSample s;
    const double k = params.kappa;
    s.n = n;
    s.t = t;
    s.z = params.z(n, t);
    const double zm = params.z(n - 1, t);
    s.tau = std::cosh(k * s.z);
    const double sh = params.sinh_k();
    const double se = math::sech(k * s.z);
    s.V = sh * sh * se * se;
    s.R = std::log1p(s.V);
    s.Q = math::log_cosh(k * s.z) - math::log_cosh(k * zm);
    s.u = -params.cosh_k() + sh * std::tanh(k * s.z);
    s.v = -params.cosh_k() - sh * std::tanh(k * zm);
    return s;
}

std::vector<BackgroundSample> background_row(const LatticeWindow& window, double t,
                                             const SolitonParams& params) {
    std::vector<BackgroundSample> row;
    row.reserve(static_cast<std::size_t>(window.size()));
    for (int n = window.n_min; n <= window.n_max; ++n) row.push_back(background(n, t, params));
    return row;
}

double dt_Q_kappa(int n, double t, const SolitonParams& params) {
    const double k = params.kappa;
    const double sh = params.sinh_k();
    return -sh * sh * math::sech(k * params.z(n, t)) * math::sech(k * params.z(n - 1, t));
}

double dt2_Q_kappa(int n, double t, const SolitonParams& params) {
    const double k = params.kappa;
    const double th = std::tanh(k * params.z(n, t)) + std::tanh(k * params.z(n - 1, t));
    return dt_Q_kappa(n, t, params) * params.sinh_k() * th;
}

double dkappa_Q_kappa(int n, double t, const SolitonParams& params) {
    // d/dkappa log cosh(kappa z_n(t)) = tanh(kappa z_n) * (z_n - t (cosh k - c))
    const double k = params.kappa;
    auto term = [&](double z) {
        return std::tanh(k * z) * (z - t * (params.cosh_k() - params.c));
    };
    return term(params.z(n, t)) - term(params.z(n - 1, t));
}

std::vector<double> V_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    std::vector<double> r(static_cast<std::size_t>(w.size()));
    const double sh2 = p.sinh_k() * p.sinh_k();
    for (int i = 0; i < w.size(); ++i) {
        const double se = math::sech(p.kappa * p.z(w.site(i), t));
        r[static_cast<std::size_t>(i)] = sh2 * se * se;
    }
    return r;
}

std::vector<double> u_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    std::vector<double> r(static_cast<std::size_t>(w.size()));
    for (int i = 0; i < w.size(); ++i)
        r[static_cast<std::size_t>(i)] =
            -p.cosh_k() + p.sinh_k() * std::tanh(p.kappa * p.z(w.site(i), t));
    return r;
}

std::vector<double> v_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    std::vector<double> r(static_cast<std::size_t>(w.size()));
    for (int i = 0; i < w.size(); ++i)
        r[static_cast<std::size_t>(i)] =
            -p.cosh_k() - p.sinh_k() * std::tanh(p.kappa * p.z(w.site(i) - 1, t));
    return r;
}

std::vector<double> tau_signed_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    std::vector<double> r(static_cast<std::size_t>(w.size()));
    for (int i = 0; i < w.size(); ++i) {
        const int n = w.site(i);
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        r[static_cast<std::size_t>(i)] = sgn * std::cosh(p.kappa * p.z(n, t));
    }
    return r;
}

ComplexSeq dtQ_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    ComplexSeq r(w);
    for (int i = 0; i < w.size(); ++i) r[i] = dt_Q_kappa(w.site(i), t, p);
    return r;
}

ComplexSeq dt2Q_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    ComplexSeq r(w);
    for (int i = 0; i < w.size(); ++i) r[i] = dt2_Q_kappa(w.site(i), t, p);
    return r;
}

ComplexSeq dtR_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    // R^k_n = Q^k_{n+1} - Q^k_n exactly, for the interior and the edge alike
    ComplexSeq r(w);
    for (int i = 0; i < w.size(); ++i) {
        const int n = w.site(i);
        r[i] = dt_Q_kappa(n + 1, t, p) - dt_Q_kappa(n, t, p);
    }
    return r;
}

ComplexSeq dt2R_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    ComplexSeq r(w);
    for (int i = 0; i < w.size(); ++i) {
        const int n = w.site(i);
        r[i] = dt2_Q_kappa(n + 1, t, p) - dt2_Q_kappa(n, t, p);
    }
    return r;
}

ComplexSeq dkappaR_row(const LatticeWindow& w, double t, const SolitonParams& p) {
    ComplexSeq r(w);
    for (int i = 0; i < w.size(); ++i) {
        const int n = w.site(i);
        r[i] = dkappa_Q_kappa(n + 1, t, p) - dkappa_Q_kappa(n, t, p);
    }
    return r;
}

}  // namespace toda
