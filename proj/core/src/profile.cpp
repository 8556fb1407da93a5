#include "toda/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "toda/evolution.hpp"
#include "toda/modes.hpp"
#include "toda/soliton.hpp"

namespace toda {

double heat_kernel(double t, double y, const ProfileParams& pp) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be positive");
    const double s = 4.0 * M_PI * pp.lambda2 * t;
    return std::exp(-y * y / (4.0 * pp.lambda2 * t)) / std::sqrt(s);
}

double transport_window(double t, double y, const ProfileParams& pp) {
    if (!(t > 0.0)) throw std::domain_error("transport_window: t must be positive");
    return (std::abs(y) <= pp.lambda1 * t) ? 1.0 / (2.0 * pp.lambda1) : 0.0;
}

double grid_mass(const std::vector<double>& y, const std::vector<double>& vals) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i)
        s += 0.5 * (vals[i] + vals[i + 1]) * (y[i + 1] - y[i]);
    return s;
}

std::vector<double> convolve_grid(const std::vector<double>& y, const std::vector<double>& a,
                                  const std::vector<double>& b) {
    const std::size_t n = y.size();
    if (a.size() != n || b.size() != n)
        throw std::invalid_argument("convolve_grid: size mismatch");
    const double dy = y[1] - y[0];
    const std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(n) / 2;  // grid includes 0
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) -
                                     static_cast<std::ptrdiff_t>(j) + i0;
            if (k >= 0 && k < static_cast<std::ptrdiff_t>(n))
                acc += a[j] * b[static_cast<std::size_t>(k)];
        }
        c[i] = acc * dy;
    }
    return c;
}

std::vector<double> make_y_grid(double extent, double spacing) {
    const int k = static_cast<int>(std::ceil(extent / spacing));
    std::vector<double> y;
    y.reserve(static_cast<std::size_t>(2 * k + 1));
    for (int i = -k; i <= k; ++i) y.push_back(i * spacing);
    return y;
}

double default_y_extent(double T, double support_radius, const ProfileParams& pp) {
    return pp.lambda1 * T + 8.0 * std::sqrt(pp.lambda2 * T) + support_radius;
}

ProfileData extract_amplitude(const PlanarState& initial, const SolitonParams& params,
                              const std::vector<double>& y_grid) {
    if (initial.modes.empty())
        throw std::invalid_argument("extract_amplitude: empty planar state");
    const LatticeWindow w = initial.modes.front().q.window();
    const ModeBundle b0 = eta_zero_modes(0.0, params, w);

    const std::size_t m = initial.modes.size();
    std::vector<cplx> m1(m), m2(m);
    for (std::size_t j = 0; j < m; ++j) {
        const ModeState& s = initial.modes[j];
        if (s.t != 0.0)
            throw std::invalid_argument("extract_amplitude: initial data must be at t = 0");
        m1[j] = vec_pairing(s.q, s.p, b0.dt_g1_star, cplx(-1.0) * b0.g1_star);
        m2[j] = vec_pairing(s.q, s.p, b0.dt_g2_star, cplx(-1.0) * b0.g2_star);
    }

    ProfileData data;
    data.y_grid = y_grid;
    data.pp = ProfileParams::make(params.kappa);
    data.f.resize(y_grid.size());
    data.f1.resize(y_grid.size());
    const double deta = initial.d_eta();
    const double scale = data.pp.lambda1 * params.csch_k() / 4.0;
    for (std::size_t iy = 0; iy < y_grid.size(); ++iy) {
        cplx a2{}, a1{};
        for (std::size_t j = 0; j < m; ++j) {
            const cplx ph = std::exp(cplx(0.0, y_grid[iy] * initial.eta_grid[j]));
            a2 += ph * m2[j];
            a1 += ph * m1[j];
        }
        data.f[iy] = scale * (a2 * deta / (2.0 * M_PI)).real();
        data.f1[iy] = scale * (a1 * deta / (2.0 * M_PI)).real();
    }
    return data;
}

namespace {

// trapezoid transform of grid samples: fhat(eta) = int f(y) e^{-i y eta} dy
cplx grid_transform(const std::vector<double>& y, const std::vector<double>& f, double eta) {
    const double dy = y[1] - y[0];
    cplx s{};
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double wgt = (i == 0 || i + 1 == y.size()) ? 0.5 : 1.0;
        s += wgt * f[i] * std::exp(cplx(0.0, -y[i] * eta));
    }
    return s * dy;
}

// e^{-lambda2 t eta^2} sin(lambda1 t eta) / (lambda1 eta), the transform of H_t * W_t
cplx hw_symbol(double t, double eta, const ProfileParams& pp) {
    const double gauss = std::exp(-pp.lambda2 * t * eta * eta);
    const double x = pp.lambda1 * t * eta;
    double sfac;
    if (std::abs(x) > 1e-8)
        sfac = std::sin(x) / (pp.lambda1 * eta);
    else
        sfac = t * (1.0 - x * x / 6.0);
    return gauss * sfac;
}

}  // namespace

ProfileField profile_field(const ProfileData& data, double t, const SolitonParams& params,
                           const PlanarState& like) {
    if (!(t > 0.0)) throw std::domain_error("profile_field: t must be positive");
    ProfileField out;

    // y-space amplitude by direct quadrature
    std::vector<double> H(data.y_grid.size()), W(data.y_grid.size());
    for (std::size_t i = 0; i < data.y_grid.size(); ++i) {
        H[i] = heat_kernel(t, data.y_grid[i], data.pp);
        W[i] = transport_window(t, data.y_grid[i], data.pp);
    }
    out.amplitude = convolve_grid(data.y_grid, convolve_grid(data.y_grid, W, data.f), H);

    // transform-domain planar pair in the R representation
    const LatticeWindow w = like.modes.front().q.window();
    const ComplexSeq dtR = dtR_row(w, t, params);
    const ComplexSeq dt2R = dt2R_row(w, t, params);
    out.field.eta_grid = like.eta_grid;
    out.field.modes.resize(like.modes.size());
    for (std::size_t j = 0; j < like.modes.size(); ++j) {
        const double eta = like.eta_grid[j];
        const cplx amp = grid_transform(data.y_grid, data.f, eta) * hw_symbol(t, eta, data.pp);
        ModeState ms;
        ms.eta = eta;
        ms.t = t;
        ms.rep = Representation::RSoliton;
        ms.q = ComplexSeq(w);
        ms.p = ComplexSeq(w);
        for (int i = 0; i < w.size(); ++i) {
            ms.q[i] = amp * dtR[i];
            ms.p[i] = amp * dt2R[i];
        }
        out.field.modes[j] = ms;
    }
    return out;
}

bool ProfileComparison::strictly_decreasing() const {
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        if (!(errors[i + 1] < errors[i])) return false;
    return true;
}

ProfileComparison compare_profile(const PlanarState& initial, const ProfileData& data,
                                  const std::vector<double>& times, double dt,
                                  const SolitonParams& params) {
    ProfileComparison cmp;
    PlanarState state = initial;
    for (double target : times) {
        state = planar_evolve(state, target, dt, params);
        const ProfileField prof = profile_field(data, target, params, state);
        const double cen = params.center(target);
        double num2 = 0.0, den2 = 0.0;
        for (std::size_t j = 0; j < state.modes.size(); ++j) {
            const ModeState& s = state.modes[j];
            const ModeState& pf = prof.field.modes[j];
            const double oz = 1.0 + s.eta * s.eta;  // <eta>^2 weight on the H^1 slot
            // state in R representation
            const ComplexSeq R1 = diff_plus(s.q);
            const ComplexSeq R2 = diff_plus(s.p);
            const ComplexSeq d1 = R1 - pf.q;
            const ComplexSeq d2 = R2 - pf.p;
            const double w1 = weighted_l2(d1, params.alpha, cen);
            const double w2 = weighted_l2(d2, params.alpha, cen);
            const double s1 = weighted_l2(R1, params.alpha, cen);
            const double s2 = weighted_l2(R2, params.alpha, cen);
            num2 += oz * w1 * w1 + w2 * w2;
            den2 += oz * s1 * s1 + s2 * s2;
        }
        cmp.times.push_back(target);
        cmp.errors.push_back(den2 > 0.0 ? std::sqrt(num2 / den2) : 0.0);
    }
    return cmp;
}

}  // namespace toda
