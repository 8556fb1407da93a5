#pragma once

#include <vector>

#include "toda/lattice.hpp"

namespace toda {

// Which linearized field a ModeState carries. Q and R are related by
// R = (e^d - 1) Q; the "free" forms solve the constant-coefficient equation,
// the "soliton" (primed) forms the equation linearized around the line soliton.
enum class Representation { QFree, QSoliton, RFree, RSoliton };

inline bool is_free(Representation r) {
    return r == Representation::QFree || r == Representation::RFree;
}
inline bool is_q_form(Representation r) {
    return r == Representation::QFree || r == Representation::QSoliton;
}

// One transverse Fourier mode of the linearized solution: the field q and its
// time derivative p on a truncated lattice at time t.
struct ModeState {
    double eta = 0.0;
    double t = 0.0;
    ComplexSeq q;
    ComplexSeq p;
    Representation rep = Representation::QSoliton;
};

// A planar field sampled on a symmetric uniform eta-grid; the flow is diagonal
// in eta, so the grid modes evolve independently.
struct PlanarState {
    std::vector<double> eta_grid;   // uniform, symmetric about 0
    std::vector<ModeState> modes;   // one per grid frequency

    double d_eta() const {
        return eta_grid.size() > 1 ? eta_grid[1] - eta_grid[0] : 0.0;
    }
};

}  // namespace toda
