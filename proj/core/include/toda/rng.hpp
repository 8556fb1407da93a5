#pragma once

#include <cstdint>
#include <random>

#include "toda/lattice.hpp"

namespace toda {

// Deterministic Gaussian draws independent of the standard library's
// distribution implementation (plain Box-Muller over mt19937_64).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    double gaussian() {
        if (have_) {
            have_ = false;
            return cache_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cache_ = r * std::sin(2.0 * M_PI * u2);
        have_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    cplx gaussian_c() { return cplx(gaussian(), gaussian()); }

    // sequence supported on [lo, hi] within the window, zero elsewhere
    ComplexSeq gaussian_seq(const LatticeWindow& w, int lo, int hi) {
        ComplexSeq f(w);
        for (int n = lo; n <= hi; ++n)
            if (w.contains(n)) f.ref(n) = gaussian_c();
        return f;
    }

  private:
    std::mt19937_64 eng_;
    bool have_ = false;
    double cache_ = 0.0;
};

}  // namespace toda
