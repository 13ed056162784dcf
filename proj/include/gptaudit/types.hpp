#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gptaudit {

// Dense real vector; dimension is size().
using RealVec = std::vector<double>;

// Absolute tolerances. Geometric identities go through trig-derived
// coordinates and accumulate rounding; plain arithmetic identities hold
// much tighter.
struct Tolerances {
    double geometric = 1e-9;
    double arithmetic = 1e-12;
};

inline constexpr double kGeomTol = 1e-9;
inline constexpr double kArithTol = 1e-12;

// A normalized state: unit-effect value 1 within tolerance.
struct StateVec {
    RealVec coords;
    std::optional<int> label;
};

// A linear functional with values in [0,1] on every state of its model.
struct EffectVec {
    RealVec coords;
    std::optional<int> label;
    bool is_complement = false;
    // Set for generator effects of a model: whether the effect lies on an
    // extreme ray of the effect cone.
    bool ray_extremal = false;
    // Position of u - e in the model's generator list, -1 if not listed.
    int complement_index = -1;
};

enum class ModelKind { polytope, qubit, measurement_list };

// Geometry fast paths for the built-in catalog; loaded models are generic.
enum class ModelFamily { regular_polygon, simplex, generic };

struct ModelSpec {
    std::string name;
    ModelKind kind = ModelKind::polytope;
    int dim = 0;
    RealVec unit_effect;
    std::vector<StateVec> pure_states;
    // Generator list of the effect body. For polytope models this is
    // {e_0..e_{n-1}, their complements, zero, unit}; for measurement-list
    // models it is the fixed outcome-effect list.
    std::vector<EffectVec> effects;
    // measurement_list only: pairs of indices into `effects`, one pair per
    // allowed binary measurement.
    std::vector<std::array<int, 2>> measurements;
    std::vector<std::string> state_names;   // measurement_list only
    std::vector<std::string> effect_names;  // measurement_list only
    ModelFamily family = ModelFamily::generic;
    int family_param = 0;  // n for regular polygons, d for simplices

    bool is_polytope() const { return kind == ModelKind::polytope; }
};

}  // namespace gptaudit
