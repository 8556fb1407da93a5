#include "toda/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace toda {

namespace {
void check_same(const LatticeWindow& a, const LatticeWindow& b) {
    if (!(a == b)) throw std::invalid_argument("window mismatch");
}
}  // namespace

ComplexSeq& ComplexSeq::operator+=(const ComplexSeq& o) {
    check_same(win_, o.window());
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.values()[i];
    return *this;
}

ComplexSeq& ComplexSeq::operator-=(const ComplexSeq& o) {
    check_same(win_, o.window());
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.values()[i];
    return *this;
}

ComplexSeq& ComplexSeq::operator*=(cplx a) {
    for (auto& x : v_) x *= a;
    return *this;
}

ComplexSeq operator+(ComplexSeq a, const ComplexSeq& b) { a += b; return a; }
ComplexSeq operator-(ComplexSeq a, const ComplexSeq& b) { a -= b; return a; }
ComplexSeq operator*(cplx a, ComplexSeq f) { f *= a; return f; }

ComplexSeq shift_by(const ComplexSeq& f, int k) {
    ComplexSeq g(f.window());
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        const int j = i + k;
        g[i] = (j >= 0 && j < n) ? f[j] : cplx{};
    }
    return g;
}

ComplexSeq shift_plus(const ComplexSeq& f) { return shift_by(f, 1); }
ComplexSeq shift_minus(const ComplexSeq& f) { return shift_by(f, -1); }

ComplexSeq diff_plus(const ComplexSeq& f) {
    ComplexSeq g = shift_plus(f);
    g -= f;
    return g;
}

ComplexSeq diff_minus(const ComplexSeq& f) {
    ComplexSeq g = f;
    g -= shift_minus(f);
    return g;
}

ComplexSeq inv_diff_plus(const ComplexSeq& f) {
    // -suffix sums: g(n) = -sum_{k>=0} f(n+k)
    ComplexSeq g(f.window());
    cplx acc{};
    for (int i = f.size() - 1; i >= 0; --i) {
        acc += f[i];
        g[i] = -acc;
    }
    return g;
}

ComplexSeq inv_diff_minus(const ComplexSeq& f) {
    // g(n) = -sum_{k>=1} f(n+k)
    ComplexSeq g(f.window());
    cplx acc{};
    for (int i = f.size() - 1; i >= 0; --i) {
        g[i] = -acc;
        acc += f[i];
    }
    return g;
}

ComplexSeq apply_shift(ShiftKind kind, const ComplexSeq& f, double alpha) {
    switch (kind) {
        case ShiftKind::ShiftPlus: return shift_plus(f);
        case ShiftKind::ShiftMinus: return shift_minus(f);
        case ShiftKind::InvDiffPlus:
        case ShiftKind::InvDiffMinus:
            if (!(alpha > 0.0))
                throw std::domain_error("apply_shift: inverse shifts need alpha > 0");
            return kind == ShiftKind::InvDiffPlus ? inv_diff_plus(f) : inv_diff_minus(f);
    }
    throw std::logic_error("apply_shift: unknown kind");
}

cplx pairing(const ComplexSeq& f, const ComplexSeq& g) {
    check_same(f.window(), g.window());
    cplx s{};
    for (int i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
    return s;
}

double weighted_l2(const ComplexSeq& f, double alpha, double center) {
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        const double wgt = std::exp(alpha * (f.window().site(i) - center));
        s += std::norm(wgt * f[i]);
    }
    return std::sqrt(s);
}

WeightedNormReport weighted_norm(const ComplexSeq& f, double alpha, double eta, double center) {
    WeightedNormReport r;
    r.l2_alpha = weighted_l2(f, alpha, center);
    r.l2_alpha_h1 = std::sqrt(1.0 + eta * eta) * r.l2_alpha;

    // geometric tail estimate from the outer 5 sites on each side
    auto side_tail = [&](bool right) {
        const int n = f.size();
        if (n < 12) return 0.0;
        double a0 = 0.0, a1 = 0.0;  // weighted moduli of last two of the 5-site band
        double mass = 0.0;
        for (int k = 0; k < 5; ++k) {
            const int i = right ? n - 5 + k : 4 - k;
            const double wgt = std::exp(alpha * (f.window().site(i) - center));
            const double m = std::abs(wgt * f[i]);
            mass += m * m;
            if (k == 3) a0 = m;
            if (k == 4) a1 = m;
        }
        double rho = (a0 > 0.0) ? std::min(a1 / a0, 0.95) : 0.0;
        // extrapolated mass beyond the edge: a1^2 * rho^2 / (1 - rho^2)
        const double beyond = (rho > 0.0) ? a1 * a1 * rho * rho / (1.0 - rho * rho) : 0.0;
        (void)mass;
        return std::sqrt(beyond);
    };
    r.tail_bound = std::max(side_tail(true), side_tail(false));
    return r;
}

double edge_mass_fraction(const ComplexSeq& f, double alpha, double center, int band) {
    double edge = 0.0, total = 0.0;
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        const double wgt = std::exp(alpha * (f.window().site(i) - center));
        const double m = std::norm(wgt * f[i]);
        total += m;
        if (i < band || i >= n - band) edge += m;
    }
    return total > 0.0 ? edge / total : 0.0;
}

}  // namespace toda
