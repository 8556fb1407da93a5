#include <doctest.h>

#include <cmath>

#include "toda/dispersion.hpp"

using namespace toda;

TEST_CASE("beta roots at eta = 0") {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const DispersionPoint d = dispersion_point(0.0, p);
    CHECK(std::abs(d.beta_minus - cplx(-std::exp(1.0))) < 1e-14);
    CHECK(std::abs(d.beta_plus - cplx(-std::exp(-1.0))) < 1e-14);
    CHECK(std::abs(d.mu - cplx(std::sinh(1.0))) < 1e-14);
    CHECK(std::abs(d.gamma - cplx(1.0)) < 1e-14);
    CHECK(std::abs(d.delta) < 1e-14);
}

TEST_CASE("delta vanishes at 0 for any kappa") {
    for (double k : {0.3, 0.9, 1.7, 2.4}) {
        const SolitonParams p = SolitonParams::make(k, 0.4 * k);
        CHECK(std::abs(dispersion_point(0.0, p).delta) < 1e-13);
    }
}

TEST_CASE("beta product is 1") {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const DispersionPoint d = dispersion_point(0.3, p);
    CHECK(std::abs(d.beta_plus * d.beta_minus - 1.0) < 1e-14);
}

TEST_CASE("beta_plus stays inside e^{-kappa}") {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    for (double eta = 0.05; eta < 3.0; eta += 0.05)
        CHECK(std::abs(dispersion_point(eta, p).beta_plus) < std::exp(-1.0));
}

TEST_CASE("eta_star closed form against the bisection oracle") {
    // the threshold solves gamma_R(eta) = kappa + alpha
    const double closed = eta_star(0.5, 1.0);
    const double oracle = eta_star_bisect(0.5, 1.0);
    CHECK(closed == doctest::Approx(1.6071755787602269).epsilon(1e-12));
    CHECK(std::abs(closed - oracle) < 1e-10);

    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    CHECK(std::abs(std::abs(dispersion_point(closed, p).beta_minus) - std::exp(1.5)) < 1e-10);
}

TEST_CASE("eta_star limits and domain") {
    CHECK(eta_star(1e-8, 1.0) < 1e-3);
    CHECK_THROWS_AS(eta_star(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(eta_star(2.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(eta_star(0.5, -1.0), std::domain_error);
}

TEST_CASE("free omega special values") {
    const double a = 0.6;
    const double b = 2.0 * std::sinh(a / 2.0);
    CHECK(std::abs(free_omega(0.0, b, a).omega) < 1e-13);
    CHECK(std::abs(free_omega(0.0, -b, a).omega) < 1e-13);
    CHECK(std::abs(free_omega(M_PI, 0.0, a).omega - cplx(2.0 * std::cosh(a / 2.0))) < 1e-13);
    CHECK(std::abs(free_omega(0.0, 0.0, a).omega - cplx(0.0, 2.0 * std::sinh(0.3))) < 1e-13);
}

TEST_CASE("free omega branch and symmetry") {
    const double a = 0.6;
    for (double xi = 0.05; xi < M_PI; xi += 0.1)
        for (double eta = -3.0; eta <= 3.0; eta += 0.25) {
            const cplx o = free_omega(xi, eta, a).omega;
            const cplx om = free_omega(-xi, eta, a).omega;
            CHECK(o.imag() >= -1e-14);
            CHECK(o.imag() <= 2.0 * std::sinh(a / 2.0) + 1e-14);
            // odd in xi away from the branch segment
            CHECK(std::abs(om.imag() + o.imag()) < 1e-13);
            // pointwise bound from the proof: Im omega <= 2 cos(xi/2) sinh(a/2)
            CHECK(o.imag() <= 2.0 * std::cos(xi / 2.0) * std::sinh(a / 2.0) + 1e-13);
            // branch: omega^2 reproduced exactly
            const cplx s = std::sin(cplx(xi, a) * 0.5);
            CHECK(std::abs(o * o - (eta * eta + 4.0 * s * s)) < 1e-12);
        }
}

TEST_CASE("dispersion scan passes on a fine grid") {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const auto r = scan_dispersion(p, symmetric_grid(1.0, 1e-3));
    CHECK(r.beta_product_ok);
    CHECK(r.conjugate_symmetry_ok);
    CHECK(r.beta_minus_increasing);
    CHECK(r.delta_R_even);
    CHECK(r.delta_R_increasing);
    CHECK(r.delta_R_positive);
    CHECK(r.delta_I_odd);
    CHECK(r.mu_continuous);
    CHECK(r.dI_check.conclusive);
    CHECK(r.d2R_check.conclusive);
    CHECK(r.dI_check.rel_error < 1e-5);
    CHECK(r.d2R_check.rel_error < 1e-5);
    CHECK(r.dI_check.order > 1.9);
    CHECK(r.d2R_check.order > 1.9);
    CHECK(r.all_ok());
}

TEST_CASE("dispersion scan flags a too-coarse grid") {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const auto r = scan_dispersion(p, symmetric_grid(1.0, 0.25));
    CHECK_FALSE(r.dI_check.conclusive);
}

TEST_CASE("conjugate symmetry of the dispersion point") {
    const SolitonParams p = SolitonParams::make(1.3, 0.7);
    for (double eta = 0.1; eta < 2.0; eta += 0.3) {
        const DispersionPoint a = dispersion_point(eta, p);
        const DispersionPoint b = dispersion_point(-eta, p);
        CHECK(std::abs(b.mu - std::conj(a.mu)) < 1e-13);
        CHECK(std::abs(b.gamma - std::conj(a.gamma)) < 1e-13);
        CHECK(std::abs(b.delta - std::conj(a.delta)) < 1e-13);
    }
}
