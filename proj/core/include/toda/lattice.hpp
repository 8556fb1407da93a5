#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace toda {

using cplx = std::complex<double>;

// Contiguous block [n_min, n_max] of the integer lattice. Everything outside
// the window is treated as zero (Dirichlet truncation).
struct LatticeWindow {
    int n_min = 0;
    int n_max = 0;

    LatticeWindow() = default;
    LatticeWindow(int a, int b) : n_min(a), n_max(b) {
        if (a >= b) throw std::invalid_argument("LatticeWindow: need n_min < n_max");
    }
    int size() const { return n_max - n_min + 1; }
    bool contains(int n) const { return n >= n_min && n <= n_max; }
    int index(int n) const { return n - n_min; }
    int site(int i) const { return n_min + i; }
    bool operator==(const LatticeWindow& o) const = default;
};

// A complex-valued sequence supported on a lattice window.
class ComplexSeq {
  public:
    ComplexSeq() = default;
    explicit ComplexSeq(LatticeWindow w) : win_(w), v_(static_cast<std::size_t>(w.size()), cplx{}) {}
    ComplexSeq(LatticeWindow w, std::vector<cplx> values) : win_(w), v_(std::move(values)) {
        if (static_cast<int>(v_.size()) != win_.size())
            throw std::invalid_argument("ComplexSeq: size mismatch");
    }

    const LatticeWindow& window() const { return win_; }
    int size() const { return win_.size(); }

    cplx& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
    const cplx& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

    // value at lattice site n, zero beyond the window
    cplx at(int n) const { return win_.contains(n) ? v_[static_cast<std::size_t>(win_.index(n))] : cplx{}; }
    cplx& ref(int n) { return v_[static_cast<std::size_t>(win_.index(n))]; }

    std::vector<cplx>& values() { return v_; }
    const std::vector<cplx>& values() const { return v_; }

    ComplexSeq& operator+=(const ComplexSeq& o);
    ComplexSeq& operator-=(const ComplexSeq& o);
    ComplexSeq& operator*=(cplx a);

  private:
    LatticeWindow win_;
    std::vector<cplx> v_;
};

ComplexSeq operator+(ComplexSeq a, const ComplexSeq& b);
ComplexSeq operator-(ComplexSeq a, const ComplexSeq& b);
ComplexSeq operator*(cplx a, ComplexSeq f);

// Shift calculus with zero extension. e^d f(n) = f(n+1).
ComplexSeq shift_plus(const ComplexSeq& f);    // e^d
ComplexSeq shift_minus(const ComplexSeq& f);   // e^{-d}
ComplexSeq shift_by(const ComplexSeq& f, int k);
ComplexSeq diff_plus(const ComplexSeq& f);     // e^d - 1
ComplexSeq diff_minus(const ComplexSeq& f);    // 1 - e^{-d}
// (e^d - 1)^{-1} = -sum_{k>=0} e^{kd}; bounded on l^2_alpha for alpha > 0.
ComplexSeq inv_diff_plus(const ComplexSeq& f);
// (1 - e^{-d})^{-1} = -sum_{k>=1} e^{kd}
ComplexSeq inv_diff_minus(const ComplexSeq& f);

enum class ShiftKind { ShiftPlus, ShiftMinus, InvDiffPlus, InvDiffMinus };

// Inverse kinds require alpha > 0 (the Neumann sums only converge on l^2_alpha).
ComplexSeq apply_shift(ShiftKind kind, const ComplexSeq& f, double alpha);

// sum_n f_n conj(g_n); windows must agree.
cplx pairing(const ComplexSeq& f, const ComplexSeq& g);

// l^2 norm with weight exp(alpha*(n - center)).
double weighted_l2(const ComplexSeq& f, double alpha, double center = 0.0);

struct WeightedNormReport {
    double l2_alpha = 0.0;
    double l2_alpha_h1 = 0.0;  // mode-level H^1: <eta> * l2_alpha
    double tail_bound = 0.0;   // geometric extrapolation of the outer 5 sites
};

WeightedNormReport weighted_norm(const ComplexSeq& f, double alpha, double eta,
                                 double center = 0.0);

// Weighted mass fraction carried by the outermost `band` sites on each side.
double edge_mass_fraction(const ComplexSeq& f, double alpha, double center, int band);

}  // namespace toda
