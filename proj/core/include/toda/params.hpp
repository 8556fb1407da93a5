#pragma once

#include <cmath>
#include <stdexcept>

namespace toda {

// Problem constants for a single line soliton of amplitude parameter kappa,
// observed in the exponentially weighted space with weight exp(alpha*n).
struct SolitonParams {
    double kappa = 1.0;   // soliton amplitude parameter, > 0
    double alpha = 0.5;   // weight exponent, in (0, 2*kappa)
    double c = 0.0;       // wave speed sinh(kappa)/kappa
    double eta_star = 0.0;  // threshold transverse frequency for the weight alpha

    static SolitonParams make(double kappa, double alpha);

    double sinh_k() const { return std::sinh(kappa); }
    double cosh_k() const { return std::cosh(kappa); }
    double csch_k() const { return 1.0 / std::sinh(kappa); }
    // position of the soliton center at time t, in lattice units
    double center(double t) const { return c * t; }
    double z(double n, double t) const { return n - c * t; }
};

// Threshold frequency eta_*(alpha): below it the secular modes stay in l^2_alpha.
double eta_star(double alpha, double kappa);

// Constants of the transverse amplitude equation (damped transport):
// lambda1 the transport speed, lambda2 the diffusivity.
struct ProfileParams {
    double lambda1 = 0.0;  // coth(k) - 1/k
    double lambda2 = 0.0;  // (sinh(2k)/(2k) - 1) / (2 sinh(k)^3)

    static ProfileParams make(double kappa) {
        ProfileParams p;
        p.lambda1 = 1.0 / std::tanh(kappa) - 1.0 / kappa;
        const double sk = std::sinh(kappa);
        p.lambda2 = (std::sinh(2.0 * kappa) / (2.0 * kappa) - 1.0) / (2.0 * sk * sk * sk);
        return p;
    }
};

inline double eta_star(double alpha, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("eta_star: kappa must be positive");
    if (!(alpha > 0.0 && alpha < 2.0 * kappa))
        throw std::domain_error("eta_star: alpha must lie in (0, 2*kappa)");
    return std::tanh(kappa + alpha) * std::sqrt(std::sinh(alpha) * std::sinh(2.0 * kappa + alpha));
}

inline SolitonParams SolitonParams::make(double kappa, double alpha) {
    SolitonParams p;
    p.kappa = kappa;
    p.alpha = alpha;
    p.c = std::sinh(kappa) / kappa;
    p.eta_star = toda::eta_star(alpha, kappa);
    return p;
}

}  // namespace toda
