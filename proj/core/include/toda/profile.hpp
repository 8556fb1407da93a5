#pragma once

#include <vector>

#include "toda/params.hpp"
#include "toda/state.hpp"

namespace toda {

// Uniform y-grid holding the transverse amplitude f, the heat kernel H_t and
// the transport window W_t. H_t has unit mass; W_t has height (2 lambda1)^{-1}
// on [-lambda1 t, lambda1 t] and therefore mass t (the mass of the window is
// what spreads the plateau); see transport_window_mass.
struct ProfileData {
    std::vector<double> y_grid;
    std::vector<double> f;   // transverse amplitude
    std::vector<double> f1;  // alternative amplitude from the g^{1,*} pairing
    ProfileParams pp;
    double t = 0.0;
    std::vector<double> H;   // heat kernel samples at time t
    std::vector<double> W;   // transport window samples at time t
};

double heat_kernel(double t, double y, const ProfileParams& pp);
double transport_window(double t, double y, const ProfileParams& pp);
inline double transport_window_mass(double t) { return t; }

// Trapezoid mass of samples on a uniform grid.
double grid_mass(const std::vector<double>& y, const std::vector<double>& vals);

// Direct-quadrature convolution of two sampled kernels on the same grid.
std::vector<double> convolve_grid(const std::vector<double>& y, const std::vector<double>& a,
                                  const std::vector<double>& b);

std::vector<double> make_y_grid(double extent, double spacing);

// Default y-grid extent for horizon T with initial support radius r:
// lambda1 T + 8 sqrt(lambda2 T) + r.
double default_y_extent(double T, double support_radius, const ProfileParams& pp);

// Transverse amplitudes from the initial planar state (Q', dt Q') at t = 0:
// f_j(y) = <(Q'(0,y), dt Q'(0,y)), (dt g^{j,*}(0,0), -g^{j,*}(0,0))>.
// The default amplitude is f = (lambda1 csch k / 4) f_2, the coefficient that
// matches the secular part of the flow in the dt R^k direction.
ProfileData extract_amplitude(const PlanarState& initial, const SolitonParams& params,
                              const std::vector<double>& y_grid);

// (H_t * W_t * f)(y) times (dt R^k, dt^2 R^k) on the window, as a planar pair
// sampled on the same eta-grid as `like` (transform-domain product).
struct ProfileField {
    std::vector<double> amplitude;       // (H_t * W_t * f)(y) on the y-grid
    PlanarState field;                   // R-representation planar pair
};

ProfileField profile_field(const ProfileData& data, double t, const SolitonParams& params,
                           const PlanarState& like);

// Weighted-norm comparison of the evolved state against the profile at each
// requested time; entries are l^2_alpha H^1 x l^2_alpha L^2 norms of the
// difference divided by the norm of the state (comoving weight).
struct ProfileComparison {
    std::vector<double> times;
    std::vector<double> errors;
    bool strictly_decreasing() const;
};

ProfileComparison compare_profile(const PlanarState& initial, const ProfileData& data,
                                  const std::vector<double>& times, double dt,
                                  const SolitonParams& params);

}  // namespace toda
