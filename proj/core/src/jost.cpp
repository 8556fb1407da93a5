#include "toda/jost.hpp"

#include <cmath>
#include <stdexcept>

#include "toda/soliton.hpp"

namespace toda {

namespace {

// exp(n log beta + beta x - s/beta), assembled in the exponent
cplx phi0_exp(cplx beta, int n, double s, double x) {
    return std::exp(static_cast<double>(n) * std::log(beta) + beta * x - s / beta);
}

double tau_ratio_up(int n, double t, const SolitonParams& p) {
    // tau'_{n+1}/tau'_n = -cosh(k z_{n+1})/cosh(k z_n), prefactors cancel
    const double k = p.kappa;
    return -std::exp(math::log_cosh(k * p.z(n + 1, t)) - math::log_cosh(k * p.z(n, t)));
}

}  // namespace

cplx phi0(cplx beta, int n, double s, double x) {
    if (beta == cplx{}) throw std::domain_error("phi0: beta = 0");
    return phi0_exp(beta, n, s, x);
}

cplx phi0_star(cplx beta, int n, double s, double x) {
    if (beta == cplx{}) throw std::domain_error("phi0_star: beta = 0");
    return phi0_exp(beta, -n, -s, -x);
}

cplx phi(cplx beta, int n, double s, double x, const SolitonParams& params) {
    if (beta == cplx{}) throw std::domain_error("phi: beta = 0");
    const double t = tc_of(s, x);
    return phi0_exp(beta, n, s, x) * (beta - tau_ratio_up(n, t, params));
}

cplx phi_star(cplx beta, int n, double s, double x, const SolitonParams& params) {
    if (beta == cplx{}) throw std::domain_error("phi_star: beta = 0");
    const cplx a = -std::exp(params.kappa);
    const cplx ainv = -std::exp(-params.kappa);
    if (std::abs(beta - a) < 1e-8 || std::abs(beta - ainv) < 1e-8)
        throw std::domain_error("phi_star: beta too close to a pole");
    const double t = tc_of(s, x);
    const double ratio_dn = 1.0 / tau_ratio_up(n, t, params);  // tau'_n/tau'_{n+1}
    return phi0_exp(beta, -n, -s, -x) * (beta - ratio_dn) / ((beta - a) * (beta - ainv));
}

cplx phi_star_alt(cplx beta, int n, double s, double x, const SolitonParams& params) {
    // tau'_{n+1} = P + Q with P, Q the two exponentials; (beta - d_x)^{-1} divides
    // each by (beta - a) and (beta - 1/a) respectively.
    const double k = params.kappa;
    const double aa = -std::exp(k);
    const double ai = -std::exp(-k);
    const double t = tc_of(s, x);
    const double y = yc_of(s, x);
    const double sgn = ((n + 1) % 2 == 0) ? 1.0 : -1.0;
    const double e1 = -y * std::cosh(k) + ((n + 1) * k - t * std::sinh(k));
    const double e2 = -y * std::cosh(k) - ((n + 1) * k - t * std::sinh(k));
    const cplx num = sgn * (std::exp(e1) / (beta - aa) + std::exp(e2) / (beta - ai));
    const double tau_up = tau_prime_full(n + 1, s, x, params);
    return phi0_exp(beta, -n, -s, -x) * num / tau_up;
}

cplx phi_soliton_zero(int n, double s, double x, const SolitonParams& params) {
    const double t = tc_of(s, x);
    const double y = yc_of(s, x);
    const double sgn = ((n + 1) % 2 == 0) ? 1.0 : -1.0;
    return sgn * std::exp(-y * params.cosh_k()) * params.sinh_k() *
           math::sech(params.kappa * params.z(n, t));
}

double tau_prime_full(int n, double s, double x, const SolitonParams& params) {
    const double t = tc_of(s, x);
    const double y = yc_of(s, x);
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * sgn * std::exp(-y * params.cosh_k()) *
           std::cosh(params.kappa * params.z(n, t));
}

cplx inv_shift_tau(int n, double s, double x, const SolitonParams& params) {
    return 1.0 / tau_prime_full(n + 1, s, x, params);
}

std::string lax_op_name(LaxOp op) {
    switch (op) {
        case LaxOp::L1Free: return "L1";
        case LaxOp::L2Free: return "L2";
        case LaxOp::L1FreeAdj: return "L1*";
        case LaxOp::L2FreeAdj: return "L2*";
        case LaxOp::L1Sol: return "L1'";
        case LaxOp::L2Sol: return "L2'";
        case LaxOp::L1SolAdj: return "L1'*";
        case LaxOp::L2SolAdj: return "L2'*";
    }
    return "?";
}

namespace {

struct OpTerms {
    cplx residual;
    double scale;  // sum of term magnitudes for the relative normalization
};

// Applies the chosen Lax operator at one point with step h for d_s, d_x.
OpTerms apply_lax(const JostField& f, LaxOp op, int n, double s, double x, double h,
                  const SolitonParams& params) {
    const double t = tc_of(s, x);
    const bool sol = (op == LaxOp::L1Sol || op == LaxOp::L2Sol || op == LaxOp::L1SolAdj ||
                      op == LaxOp::L2SolAdj);
    const double k = params.kappa;
    const double sh = params.sinh_k();
    auto Vn = [&](int m) {
        if (!sol) return 0.0;
        const double se = math::sech(k * params.z(m, t));
        return sh * sh * se * se;
    };
    auto dxq = [&](int m) {
        // d_x q_{m}(t) = -sinh k (tanh k z_m - tanh k z_{m-1}); zero for the vacuum
        if (!sol) return 0.0;
        return -sh * (std::tanh(k * params.z(m, t)) - std::tanh(k * params.z(m - 1, t)));
    };

    const cplx f0 = f(n, s, x);
    cplx ds = (f(n, s + h, x) - f(n, s - h, x)) / (2.0 * h);
    cplx dx = (f(n, s, x + h) - f(n, s, x - h)) / (2.0 * h);
    if (!std::isfinite(f0.real()) || !std::isfinite(f0.imag()))
        throw std::runtime_error("lax_residual: non-finite field value");

    cplx r;
    double scale = 0.0;
    switch (op) {
        case LaxOp::L1Free:
        case LaxOp::L1Sol: {
            const cplx t2 = (1.0 + Vn(n)) * f(n - 1, s, x);
            r = ds + t2;
            scale = std::abs(ds) + std::abs(t2);
            break;
        }
        case LaxOp::L2Free:
        case LaxOp::L2Sol: {
            const cplx t2 = f(n + 1, s, x);
            const cplx t3 = dxq(n + 1) * f0;
            r = dx - t2 - t3;
            scale = std::abs(dx) + std::abs(t2) + std::abs(t3);
            break;
        }
        case LaxOp::L1FreeAdj:
        case LaxOp::L1SolAdj: {
            const cplx t2 = (1.0 + Vn(n + 1)) * f(n + 1, s, x);
            r = ds - t2;
            scale = std::abs(ds) + std::abs(t2);
            break;
        }
        case LaxOp::L2FreeAdj:
        case LaxOp::L2SolAdj: {
            const cplx t2 = f(n - 1, s, x);
            const cplx t3 = dxq(n + 1) * f0;
            r = dx + t2 + t3;
            scale = std::abs(dx) + std::abs(t2) + std::abs(t3);
            break;
        }
    }
    return {r, scale};
}

double max_rel_residual(const JostField& f, LaxOp op, const GridSpec& g, double h,
                        const SolitonParams& params) {
    double worst = 0.0;
    for (int n = g.n_min; n <= g.n_max; ++n)
        for (int is = 0; is < g.s_count; ++is)
            for (int ix = 0; ix < g.x_count; ++ix) {
                const double s = g.s_lo + (g.s_hi - g.s_lo) * is / std::max(1, g.s_count - 1);
                const double x = g.x_lo + (g.x_hi - g.x_lo) * ix / std::max(1, g.x_count - 1);
                const OpTerms ot = apply_lax(f, op, n, s, x, h, params);
                if (ot.scale > 1e-280)
                    worst = std::max(worst, std::abs(ot.residual) / ot.scale);
            }
    return worst;
}

}  // namespace

LaxResidualReport lax_residual(const JostField& field, LaxOp op, const GridSpec& grid,
                               const SolitonParams& params) {
    LaxResidualReport rep;
    rep.op = lax_op_name(op);
    const double r_h = max_rel_residual(field, op, grid, grid.h, params);
    const double r_h2 = max_rel_residual(field, op, grid, grid.h / 2.0, params);
    rep.max_rel_residual = r_h2;
    rep.step = grid.h / 2.0;
    rep.observed_order = (r_h2 > 0.0) ? std::log2(r_h / r_h2) : 2.0;
    return rep;
}

LaxResidualReport product_solution_residual(cplx beta1, cplx beta2, const GridSpec& grid,
                                            const SolitonParams& params, bool vacuum) {
    const cplx a = -std::exp(params.kappa);
    const cplx ainv = -std::exp(-params.kappa);
    if (!vacuum && (std::abs(beta2 - a) < 1e-8 || std::abs(beta2 - ainv) < 1e-8))
        throw std::domain_error("product_solution_residual: beta2 at a pole of phi_star");

    JostField prod;
    if (vacuum) {
        prod = [=](int n, double s, double x) {
            return phi0(beta1, n, s, x) * phi0_star(beta2, n, s, x);
        };
    } else if (std::abs(beta1 - a) < 1e-12) {
        prod = [=, &params](int n, double s, double x) {
            return phi_soliton_zero(n, s, x, params) * phi_star(beta2, n, s, x, params);
        };
    } else {
        prod = [=, &params](int n, double s, double x) {
            return phi(beta1, n, s, x, params) * phi_star(beta2, n, s, x, params);
        };
    }

    auto rel_residual = [&](double h) {
        double worst = 0.0;
        const double k = params.kappa;
        const double sh = params.sinh_k();
        for (int n = grid.n_min; n <= grid.n_max; ++n)
            for (int is = 0; is < grid.s_count; ++is)
                for (int ix = 0; ix < grid.x_count; ++ix) {
                    const double s =
                        grid.s_lo + (grid.s_hi - grid.s_lo) * is / std::max(1, grid.s_count - 1);
                    const double x =
                        grid.x_lo + (grid.x_hi - grid.x_lo) * ix / std::max(1, grid.x_count - 1);
                    const double t = tc_of(s, x);
                    const cplx dxds = (prod(n, s + h, x + h) - prod(n, s + h, x - h) -
                                       prod(n, s - h, x + h) + prod(n, s - h, x - h)) /
                                      (4.0 * h * h);
                    auto Vn = [&](int m) {
                        if (vacuum) return 0.0;
                        const double se = math::sech(k * params.z(m, t));
                        return sh * sh * se * se;
                    };
                    // (e^d - 1)(1+V)(1 - e^{-d}) P at site n
                    auto inner = [&](int m) {
                        return (1.0 + Vn(m)) * (prod(m, s, x) - prod(m - 1, s, x));
                    };
                    const cplx rhs = inner(n + 1) - inner(n);
                    const double scale =
                        std::abs(dxds) + std::abs(inner(n + 1)) + std::abs(inner(n));
                    if (scale > 1e-280)
                        worst = std::max(worst, std::abs(dxds - rhs) / scale);
                }
        return worst;
    };

    LaxResidualReport rep;
    rep.op = vacuum ? "prod-free" : "prod-soliton";
    const double r_h = rel_residual(grid.h);
    const double r_h2 = rel_residual(grid.h / 2.0);
    rep.max_rel_residual = r_h2;
    rep.step = grid.h / 2.0;
    rep.observed_order = (r_h2 > 0.0) ? std::log2(r_h / r_h2) : 2.0;
    return rep;
}

}  // namespace toda
