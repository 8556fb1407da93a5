#pragma once

#include <vector>

#include "toda/params.hpp"
#include "toda/state.hpp"

namespace toda {

// Exact evolution of the free equation by weight-conjugated DFT: each Fourier
// bin rotates with frequency omega(xi, eta). Zero-padded to >= 4x the window.
// Valid for the Q-free and R-free representations (same equation).
ModeState evolve_free_exact(const ModeState& state, double t_target, double alpha);

struct OdeOptions {
    double dt = 1e-3;
    bool check_stability = true;  // abort when the norm grows by more than e^10
};

// Classical 4th-order one-step integration of the first-order system in (q, p);
// the non-autonomous soliton potential is sampled at the stage times.
ModeState evolve_ode(const ModeState& state, double t_target, double dt,
                     const SolitonParams& params);
ModeState evolve_ode(const ModeState& state, double t_target, const OdeOptions& opts,
                     const SolitonParams& params);

struct DecayReport {
    double exponent = 0.0;    // slope of log N(t) on the fit window
    double offset = 0.0;      // intercept (log K at t = fit start)
    double fit_residual = 0.0;  // RMS residual relative to the data spread
    double t_lo = 0.0, t_hi = 0.0;
    double b = 0.0;           // decay rate -exponent when comoving-normalized
    double K = 0.0;
    bool inconclusive = false;  // fit residual above 5%
    bool boundary_rejected = false;  // weighted edge mass exceeded 1e-8 of the norm
    std::vector<double> times;
    std::vector<double> norms;
    std::vector<double> pairing_plus;   // |secular pairings| along the flow
    std::vector<double> pairing_minus;
};

struct DecayOptions {
    double T = 40.0;
    double sample_dt = 0.5;
    double dt = 1e-3;
    bool comoving = true;     // measure e^{-alpha c t} || . ||_{l^2_alpha}
    bool track_pairings = false;  // record the secular-condition pairings (eta != 0)
    int edge_band = 10;
};

// Least-squares line fit of log(<eta> ||q|| + ||p||) against t on [T/4, T],
// with the comoving normalization on by default.
DecayReport measure_decay(const ModeState& initial, const SolitonParams& params, double alpha,
                          const DecayOptions& opts);

// Evolves every mode of the grid independently; deterministic regardless of
// the number of threads.
PlanarState planar_evolve(const PlanarState& grid, double t_target, double dt,
                          const SolitonParams& params, int threads = 0);

// Unweighted energy of the free equation: ||p||^2 + ||(1-e^{-d}) q||^2 + eta^2 ||q||^2.
double free_energy(const ModeState& state);

}  // namespace toda
