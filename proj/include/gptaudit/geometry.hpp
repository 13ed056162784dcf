#pragma once

#include "gptaudit/types.hpp"

namespace gptaudit {

// Direct-sum decomposition v = unit_component * u + hat_part with
// hat_part orthogonal to u.
struct HatDecomposition {
    double unit_component = 0.0;
    RealVec hat_part;
};

enum class EffectClass {
    ray_extremal,       // vertex of the effect body on an extreme ray of the cone
    extremal_not_ray,   // vertex of the effect body off every extreme ray
    boundary_mixed,     // proper convex combination on the boundary
    interior,
    invalid,
};

const char* to_string(EffectClass c);

struct EffectValidity {
    bool ok = false;
    std::vector<std::string> violations;
};

// Euclidean inner product; throws std::invalid_argument on dimension mismatch.
double inner(const RealVec& a, const RealVec& b);

double norm(const RealVec& v);
RealVec vec_add(const RealVec& a, const RealVec& b);
RealVec vec_sub(const RealVec& a, const RealVec& b);
RealVec vec_scale(double s, const RealVec& v);
// max-norm distance
double vec_dist(const RealVec& a, const RealVec& b);

HatDecomposition hat_decompose(const RealVec& v, const RealVec& unit);

// Rescales e so that its tip lies on the normalized-state plane
// { x : <u, x> = 1 }. Throws if the unit component is not strictly positive.
EffectVec scale_to_plane(const EffectVec& e, const RealVec& unit);

// Outcome probability p(e|state) with input validation and clamping of
// sub-tolerance excursions to [0,1].
double probability(const ModelSpec& model, const EffectVec& e, const StateVec& state,
                   const Tolerances& tol = {});

// True iff 0 <= <e, w> <= 1 for every pure state w; sufficiency on pure
// states follows from linearity and convexity (see docs/geometry notes).
EffectValidity validate_effect(const ModelSpec& model, const EffectVec& e,
                               const Tolerances& tol = {});

// State validity: unit-effect value 1 and membership in the state body.
bool validate_state(const ModelSpec& model, const StateVec& state,
                    const Tolerances& tol = {});

// Classification against the model's finite generator list. Throws for
// models without one (qubit, measurement lists).
EffectClass classify_effect(const ModelSpec& model, const EffectVec& e,
                            const Tolerances& tol = {});

// True iff the hat parts of the plane-scaled ray-extremal effects coincide,
// as a point set, with the hat parts of the pure states.
bool check_self_duality(const ModelSpec& model, const Tolerances& tol = {});

// Convex/conic membership against a finite generator list, by exhaustive
// Caratheodory subset elimination. Exact up to the tolerance; no LP.
bool convex_member(const RealVec& x, const std::vector<RealVec>& points, double tol);
bool cone_member(const RealVec& x, const std::vector<RealVec>& rays, double tol);

}  // namespace gptaudit
