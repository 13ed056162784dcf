#pragma once

#include "gptaudit/types.hpp"

namespace gptaudit {

// r_n = sqrt(sec(pi/n)), the circumradius of the regular n-gon state body.
double polygon_radius(int n);

// Regular polygon model: n pure states on the circle of radius r_n at height
// 1, pure effects per the even/odd construction, generator list
// {e_i, complements, zero, unit}.
ModelSpec polygon_model(int n);

// (d-1)-simplex: d basis states, all-ones unit effect, basis functionals as
// pure effects.
ModelSpec classical_model(int d);

// The n=4 polygon under its usual name.
ModelSpec squit_model();

// Bloch-ball model: states (1, b) with |b| <= 1, effects (alpha, m) acting as
// alpha + m.b, unit effect (1, 0, 0, 0).
ModelSpec qubit_model();

// Toy-bit model: 4 ontic states, six maximal-knowledge epistemic states,
// exactly three allowed binary measurements.
ModelSpec spekkens_model();

StateVec qubit_state(double bx, double by, double bz);
RealVec bloch_of(const StateVec& state);

// Epistemic state over the 4 ontic labels {1,2,3,4}, uniform on a 2-element
// support.
struct ToyEpistemicState {
    std::array<int, 2> support;
    std::string name;
    RealVec distribution;
};

// One of the three partitions of {1,2,3,4} into two pairs.
struct ToyMeasurement {
    std::array<std::array<int, 2>, 2> partition;
    std::string name;
};

const std::vector<ToyEpistemicState>& spekkens_states();
const std::vector<ToyMeasurement>& spekkens_measurements();
int spekkens_state_index(const std::string& name);

// Minimal-ignorance mixture p*w_i + (1-p)*w_j; the endpoints must be
// perfectly distinguishable (the GIS constructor). Use the unchecked variant
// for plain mixtures.
StateVec mix_states(const ModelSpec& model, int i, int j, double p);
StateVec mix_states_unchecked(const ModelSpec& model, int i, int j, double p);

// Single-shot perfect distinguishability of a set of states.
bool distinguishable(const ModelSpec& model, const std::vector<StateVec>& states,
                     const Tolerances& tol = {});

}  // namespace gptaudit
