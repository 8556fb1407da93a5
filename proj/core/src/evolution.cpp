#include "toda/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unsupported/Eigen/FFT>

#include "toda/modes.hpp"
#include "toda/soliton.hpp"

namespace toda {

namespace {

// RHS of the second-order systems, written on (q, p): dq/dt = p, dp/dt = L(t) q.
struct Rhs {
    const SolitonParams* params;
    double eta2;
    bool free_eq;
    bool q_form;  // Q-forms apply (1-e^{-d})(1+V)(e^d-1); R-forms (e^d-2+e^{-d})(1+V)*
    // scratch row of 1+V at the stage time
    mutable std::vector<double> one_plus_v;

    void fill_potential(const LatticeWindow& w, double t) const {
        one_plus_v.resize(static_cast<std::size_t>(w.size()));
        if (free_eq) {
            std::fill(one_plus_v.begin(), one_plus_v.end(), 1.0);
            return;
        }
        const double sh2 = params->sinh_k() * params->sinh_k();
        for (int i = 0; i < w.size(); ++i) {
            const double se = math::sech(params->kappa * params->z(w.site(i), t));
            one_plus_v[static_cast<std::size_t>(i)] = 1.0 + sh2 * se * se;
        }
    }

    // out = L(t) q - eta^2 q
    void apply(const ComplexSeq& q, double t, ComplexSeq& out) const {
        const int n = q.size();
        fill_potential(q.window(), t);
        if (q_form) {
            // h = (1+V) (e^d - 1) q ; out = (1 - e^{-d}) h
            thread_local std::vector<cplx> h;
            h.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                const cplx up = (i + 1 < n) ? q[i + 1] : cplx{};
                h[static_cast<std::size_t>(i)] = one_plus_v[static_cast<std::size_t>(i)] * (up - q[i]);
            }
            for (int i = 0; i < n; ++i) {
                const cplx hm = (i > 0) ? h[static_cast<std::size_t>(i - 1)] : cplx{};
                out[i] = h[static_cast<std::size_t>(i)] - hm - eta2 * q[i];
            }
        } else {
            // out = (e^d - 2 + e^{-d}) [(1+V) q] - eta^2 q
            thread_local std::vector<cplx> h;
            h.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                h[static_cast<std::size_t>(i)] = one_plus_v[static_cast<std::size_t>(i)] * q[i];
            for (int i = 0; i < n; ++i) {
                const cplx up = (i + 1 < n) ? h[static_cast<std::size_t>(i + 1)] : cplx{};
                const cplx dn = (i > 0) ? h[static_cast<std::size_t>(i - 1)] : cplx{};
                out[i] = up - 2.0 * h[static_cast<std::size_t>(i)] + dn - eta2 * q[i];
            }
        }
    }
};

double l2(const ComplexSeq& f) {
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += std::norm(f[i]);
    return std::sqrt(s);
}

}  // namespace

ModeState evolve_ode(const ModeState& state, double t_target, double dt,
                     const SolitonParams& params) {
    OdeOptions o;
    o.dt = dt;
    return evolve_ode(state, t_target, o, params);
}

ModeState evolve_ode(const ModeState& state, double t_target, const OdeOptions& opts,
                     const SolitonParams& params) {
    if (!(opts.dt > 0.0)) throw std::invalid_argument("evolve_ode: dt must be positive");
    if (opts.dt * (2.0 + std::abs(state.eta)) >= 0.5)
        throw std::invalid_argument("evolve_ode: dt too large for the mode frequency");

    Rhs rhs{&params, state.eta * state.eta, is_free(state.rep), is_q_form(state.rep), {}};

    ModeState s = state;
    const double total = t_target - s.t;
    if (total == 0.0) return s;
    const double dir = total > 0.0 ? 1.0 : -1.0;
    long nsteps = static_cast<long>(std::ceil(std::abs(total) / opts.dt - 1e-12));
    const double norm0 = l2(s.q) + l2(s.p);

    const LatticeWindow w = s.q.window();
    ComplexSeq k1p(w), k2p(w), k3p(w), k4p(w), qa(w), qb(w);

    double t = s.t;
    for (long step = 0; step < nsteps; ++step) {
        double h = dir * opts.dt;
        if (step == nsteps - 1) h = t_target - t;  // hit the final time exactly
        const int n = s.q.size();

        rhs.apply(s.q, t, k1p);  // k1q = p
        for (int i = 0; i < n; ++i) qa[i] = s.q[i] + 0.5 * h * s.p[i];
        rhs.apply(qa, t + 0.5 * h, k2p);  // k2q = p + h/2 k1p
        for (int i = 0; i < n; ++i) qb[i] = s.q[i] + 0.5 * h * (s.p[i] + 0.5 * h * k1p[i]);
        rhs.apply(qb, t + 0.5 * h, k3p);  // k3q = p + h/2 k2p
        for (int i = 0; i < n; ++i) qa[i] = s.q[i] + h * (s.p[i] + 0.5 * h * k2p[i]);
        rhs.apply(qa, t + h, k4p);        // k4q = p + h k3p

        for (int i = 0; i < n; ++i) {
            const cplx k1q = s.p[i];
            const cplx k2q = s.p[i] + 0.5 * h * k1p[i];
            const cplx k3q = s.p[i] + 0.5 * h * k2p[i];
            const cplx k4q = s.p[i] + h * k3p[i];
            s.q[i] += (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
            s.p[i] += (h / 6.0) * (k1p[i] + 2.0 * k2p[i] + 2.0 * k3p[i] + k4p[i]);
        }
        t += h;

        if (opts.check_stability && (step & 1023) == 0) {
            const double nn = l2(s.q) + l2(s.p);
            if (nn > norm0 * std::exp(10.0) + 1e30)
                throw std::runtime_error("evolve_ode: instability detected");
        }
    }
    s.t = t_target;
    return s;
}

ModeState evolve_free_exact(const ModeState& state, double t_target, double alpha) {
    if (!is_free(state.rep))
        throw std::invalid_argument("evolve_free_exact: state must be a free representation");
    const double t = t_target - state.t;
    if (t == 0.0) return state;

    const LatticeWindow w = state.q.window();
    const int n = w.size();
    int padded = 1;
    while (padded < 4 * n) padded *= 2;

    std::vector<cplx> qa(static_cast<std::size_t>(padded), cplx{});
    std::vector<cplx> pa(static_cast<std::size_t>(padded), cplx{});
    for (int i = 0; i < n; ++i) {
        const double wgt = std::exp(alpha * w.site(i));
        qa[static_cast<std::size_t>(i)] = state.q[i] * wgt;
        pa[static_cast<std::size_t>(i)] = state.p[i] * wgt;
    }

    // Eigen's FFT plans are created lazily; guard the transform calls.
    static std::mutex fft_mutex;
    std::vector<cplx> qh(static_cast<std::size_t>(padded)), ph(static_cast<std::size_t>(padded));
    {
        std::lock_guard<std::mutex> lock(fft_mutex);
        Eigen::FFT<double> fft;
        fft.fwd(qh, qa);
        fft.fwd(ph, pa);
    }

    const double eta2 = state.eta * state.eta;
    for (int j = 0; j < padded; ++j) {
        const double xi = 2.0 * M_PI * j / padded;
        const cplx sn = std::sin(cplx(xi, alpha) * 0.5);
        const cplx omega = std::sqrt(eta2 + 4.0 * sn * sn);
        const cplx ct = std::cos(t * omega);
        const cplx st = std::sin(t * omega);
        cplx sin_over;  // sin(t omega)/omega, series near the branch zero
        if (std::abs(omega) > 1e-8) {
            sin_over = st / omega;
        } else {
            const cplx z = t * omega;
            sin_over = t * (1.0 - z * z / 6.0 + z * z * z * z / 120.0);
        }
        const cplx q0 = qh[static_cast<std::size_t>(j)];
        const cplx p0 = ph[static_cast<std::size_t>(j)];
        qh[static_cast<std::size_t>(j)] = ct * q0 + sin_over * p0;
        ph[static_cast<std::size_t>(j)] = -omega * st * q0 + ct * p0;
    }

    {
        std::lock_guard<std::mutex> lock(fft_mutex);
        Eigen::FFT<double> fft;
        fft.inv(qa, qh);
        fft.inv(pa, ph);
    }

    ModeState out = state;
    out.t = t_target;
    for (int i = 0; i < n; ++i) {
        const double wgt = std::exp(-alpha * w.site(i));
        out.q[i] = qa[static_cast<std::size_t>(i)] * wgt;
        out.p[i] = pa[static_cast<std::size_t>(i)] * wgt;
    }
    return out;
}

DecayReport measure_decay(const ModeState& initial, const SolitonParams& params, double alpha,
                          const DecayOptions& opts) {
    DecayReport rep;
    ModeState s = initial;
    const double eta_fac = std::sqrt(1.0 + s.eta * s.eta);

    const int blocks = static_cast<int>(std::llround(opts.T / opts.sample_dt));
    for (int b = 1; b <= blocks; ++b) {
        const double tt = initial.t + b * opts.sample_dt;
        s = evolve_ode(s, tt, opts.dt, params);
        const double center = opts.comoving ? params.center(tt) : 0.0;
        const double nq = weighted_l2(s.q, alpha, center);
        const double np = weighted_l2(s.p, alpha, center);
        rep.times.push_back(tt);
        rep.norms.push_back(eta_fac * nq + np);
        const double em = std::max(edge_mass_fraction(s.q, alpha, center, opts.edge_band),
                                   edge_mass_fraction(s.p, alpha, center, opts.edge_band));
        if (em > 1e-8) rep.boundary_rejected = true;
        if (opts.track_pairings && s.eta != 0.0 && std::abs(s.eta) < params.eta_star) {
            const ModeBundle bundle = build_modes(tt, s.eta, params, s.q.window());
            const auto [sp, sm] = secular_condition_q(s, bundle);
            rep.pairing_plus.push_back(std::abs(sp));
            rep.pairing_minus.push_back(std::abs(sm));
        }
    }

    // least-squares line on [T/4, T]
    rep.t_lo = initial.t + opts.T / 4.0;
    rep.t_hi = initial.t + opts.T;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        if (rep.times[i] < rep.t_lo || rep.norms[i] <= 0.0) continue;
        const double x = rep.times[i], y = std::log(rep.norms[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m >= 3) {
        const double det = m * sxx - sx * sx;
        rep.exponent = (m * sxy - sx * sy) / det;
        rep.offset = (sy * sxx - sx * sxy) / det;
        double ss = 0.0, mean = sy / m, var = 0.0;
        for (std::size_t i = 0; i < rep.times.size(); ++i) {
            if (rep.times[i] < rep.t_lo || rep.norms[i] <= 0.0) continue;
            const double pred = rep.offset + rep.exponent * rep.times[i];
            const double y = std::log(rep.norms[i]);
            ss += (y - pred) * (y - pred);
            var += (y - mean) * (y - mean);
        }
        rep.fit_residual = (var > 0.0) ? std::sqrt(ss / var) : std::sqrt(ss / m);
        rep.inconclusive = rep.fit_residual > 0.05;
        rep.b = -rep.exponent;
        rep.K = std::exp(rep.offset + rep.exponent * 0.0);
    } else {
        rep.inconclusive = true;
    }
    return rep;
}

PlanarState planar_evolve(const PlanarState& grid, double t_target, double dt,
                          const SolitonParams& params, int threads) {
    PlanarState out = grid;
    const std::size_t m = out.modes.size();
    if (m == 0) return out;
    unsigned hw = std::thread::hardware_concurrency();
    const int nt = threads > 0 ? threads : static_cast<int>(hw ? hw : 1);

    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out.modes[i] = evolve_ode(out.modes[i], t_target, dt, params);
    };
    if (nt <= 1 || m == 1) {
        worker(0, m);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (m + static_cast<std::size_t>(nt) - 1) / static_cast<std::size_t>(nt);
        for (std::size_t lo = 0; lo < m; lo += chunk)
            pool.emplace_back(worker, lo, std::min(m, lo + chunk));
        for (auto& th : pool) th.join();
    }
    return out;
}

double free_energy(const ModeState& state) {
    double e = 0.0;
    const int n = state.q.size();
    for (int i = 0; i < n; ++i) {
        e += std::norm(state.p[i]);
        const cplx dm = state.q[i] - ((i > 0) ? state.q[i - 1] : cplx{});
        e += std::norm(dm);
        e += state.eta * state.eta * std::norm(state.q[i]);
    }
    return e;
}

}  // namespace toda
