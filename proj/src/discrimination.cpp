#include "gptaudit/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gptaudit/geometry.hpp"
#include "gptaudit/models.hpp"

namespace gptaudit {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

EffectVec make_effect(RealVec coords) {
    EffectVec e;
    e.coords = std::move(coords);
    return e;
}

RealVec complement_coords(const ModelSpec& model, std::size_t gen) {
    const auto& e = model.effects[gen];
    if (e.complement_index >= 0) return model.effects[e.complement_index].coords;
    return vec_sub(model.unit_effect, e.coords);
}

bool measurement_is_pure(const ModelSpec& model, std::size_t gen) {
    const auto& e = model.effects[gen];
    if (e.ray_extremal) return true;
    if (e.complement_index >= 0) return model.effects[e.complement_index].ray_extremal;
    return false;
}

Minimizer make_minimizer(RealVec effect_for_first, RealVec comp, double p12, double p21,
                         MinimizerKind kind) {
    Minimizer m;
    m.measurement.effect = make_effect(std::move(effect_for_first));
    m.measurement.complement = make_effect(std::move(comp));
    m.p12 = p12;
    m.p21 = p21;
    m.kind = kind;
    return m;
}

void finalize(DiscriminationResult& r) {
    if (r.minimizers.empty()) return;
    r.p12 = r.minimizers.front().p12;
    r.p21 = r.minimizers.front().p21;
    r.pE = 0.5 * (r.p12 + r.p21);
    r.asymmetry = std::abs(r.p12 - r.p21);
}

// Appends mixed-effect representatives of the optimal family spanned by the
// pure minimizers: the midpoint of every pair plus the symmetric-error
// member when the asymmetries straddle zero.
void append_mixed_family(DiscriminationResult& r, const ModelSpec& model, const StateVec& w1,
                         const StateVec& w2) {
    std::size_t n_pure = 0;
    while (n_pure < r.minimizers.size() &&
           r.minimizers[n_pure].kind == MinimizerKind::pure_effect) {
        ++n_pure;
    }
    if (n_pure < 2) return;
    auto add_point = [&](double t, std::size_t a, std::size_t b) {
        const RealVec e = vec_add(vec_scale(1.0 - t, r.minimizers[a].measurement.effect.coords),
                                  vec_scale(t, r.minimizers[b].measurement.effect.coords));
        const RealVec comp = vec_sub(model.unit_effect, e);
        const double p12 = std::clamp(inner(e, w2.coords), 0.0, 1.0);
        const double p21 = std::clamp(inner(comp, w1.coords), 0.0, 1.0);
        for (const auto& m : r.minimizers) {
            if (vec_dist(m.measurement.effect.coords, e) <= 1e-12) return;
        }
        r.minimizers.push_back(
            make_minimizer(e, comp, p12, p21, MinimizerKind::mixed_effect));
    };
    for (std::size_t a = 0; a < n_pure; ++a) {
        for (std::size_t b = a + 1; b < n_pure; ++b) {
            add_point(0.5, a, b);
            const double va = r.minimizers[a].p12 - r.minimizers[a].p21;
            const double vb = r.minimizers[b].p12 - r.minimizers[b].p21;
            if ((va > 0.0) != (vb > 0.0) && std::abs(va - vb) > 1e-15) {
                add_point(va / (va - vb), a, b);
            }
        }
    }
}

struct PairValue {
    double p12;
    double p21;
    double pE;
};

// Error of measurement {e, comp} with e mapped to the first state. Reported
// probabilities clamp sub-tolerance excursions outside [0,1].
PairValue evaluate(const RealVec& e, const RealVec& comp, const StateVec& w1,
                   const StateVec& w2) {
    PairValue v;
    v.p12 = std::clamp(inner(e, w2.coords), 0.0, 1.0);
    v.p21 = std::clamp(inner(comp, w1.coords), 0.0, 1.0);
    v.pE = 0.5 * (v.p12 + v.p21);
    return v;
}

}  // namespace

const char* to_string(MinimizerKind k) {
    return k == MinimizerKind::pure_effect ? "pure" : "mixed";
}

std::size_t DiscriminationResult::pure_count() const {
    std::size_t n = 0;
    for (const auto& m : minimizers)
        if (m.kind == MinimizerKind::pure_effect) ++n;
    return n;
}

double DiscriminationResult::min_pure_asymmetry() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : minimizers) {
        if (m.kind == MinimizerKind::pure_effect) best = std::min(best, std::abs(m.p12 - m.p21));
    }
    return best;
}

double DiscriminationResult::max_pure_asymmetry() const {
    double worst = 0.0;
    bool any = false;
    for (const auto& m : minimizers) {
        if (m.kind == MinimizerKind::pure_effect) {
            worst = std::max(worst, std::abs(m.p12 - m.p21));
            any = true;
        }
    }
    return any ? worst : std::numeric_limits<double>::infinity();
}

bool DiscriminationResult::has_symmetric_pure_minimizer(double tol) const {
    return min_pure_asymmetry() <= tol;
}

double DiscriminationResult::min_asymmetry() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : minimizers) best = std::min(best, std::abs(m.p12 - m.p21));
    return best;
}

DiscriminationResult mesd_polytope(const ModelSpec& model, const StateVec& w1,
                                   const StateVec& w2, const Tolerances& tol) {
    if (model.kind != ModelKind::polytope) {
        throw std::invalid_argument("mesd_polytope: model is not a polytope model");
    }
    if (!validate_state(model, w1, tol) || !validate_state(model, w2, tol)) {
        throw std::invalid_argument("mesd_polytope: state not in model");
    }

    const std::size_t g = model.effects.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g; ++i) {
        const RealVec comp = complement_coords(model, i);
        const PairValue fwd = evaluate(model.effects[i].coords, comp, w1, w2);
        const PairValue rev = evaluate(comp, model.effects[i].coords, w1, w2);
        best = std::min(best, std::min(fwd.pE, rev.pE));
    }

    DiscriminationResult r;
    for (std::size_t i = 0; i < g; ++i) {
        const RealVec comp = complement_coords(model, i);
        const MinimizerKind kind = measurement_is_pure(model, i)
                                       ? MinimizerKind::pure_effect
                                       : MinimizerKind::mixed_effect;
        for (int assign = 0; assign < 2; ++assign) {
            const RealVec& e = assign == 0 ? model.effects[i].coords : comp;
            const RealVec& c = assign == 0 ? comp : model.effects[i].coords;
            const PairValue v = evaluate(e, c, w1, w2);
            if (v.pE > best + tol.geometric) continue;
            bool dup = false;
            for (const auto& m : r.minimizers) {
                if (vec_dist(m.measurement.effect.coords, e) <= 1e-12) {
                    dup = true;
                    break;
                }
            }
            if (!dup) r.minimizers.push_back(make_minimizer(e, c, v.p12, v.p21, kind));
        }
    }

    // Canonical ordering: exact optima ahead of tolerance ties, pure-effect
    // measurements ahead of the rest, otherwise lowest label then assignment.
    std::stable_partition(r.minimizers.begin(), r.minimizers.end(), [&](const Minimizer& m) {
        return 0.5 * (m.p12 + m.p21) <= best + 1e-12;
    });
    std::stable_partition(r.minimizers.begin(), r.minimizers.end(),
                          [](const Minimizer& m) { return m.kind == MinimizerKind::pure_effect; });
    append_mixed_family(r, model, w1, w2);
    finalize(r);
    return r;
}

DiscriminationResult mesd_qubit(const RealVec& bloch1, const RealVec& bloch2) {
    if (bloch1.size() != 3 || bloch2.size() != 3) {
        throw std::invalid_argument("mesd_qubit: Bloch vectors must have 3 components");
    }
    if (norm(bloch1) > 1.0 + kGeomTol || norm(bloch2) > 1.0 + kGeomTol) {
        throw std::invalid_argument("mesd_qubit: Bloch vector outside the unit ball");
    }

    DiscriminationResult r;
    const RealVec diff = vec_sub(bloch1, bloch2);
    const double dist = norm(diff);
    if (dist < 1e-15) {
        // identical states: random guessing
        r.minimizers.push_back(make_minimizer({0.5, 0.0, 0.0, 0.0}, {0.5, 0.0, 0.0, 0.0}, 0.5,
                                              0.5, MinimizerKind::mixed_effect));
        finalize(r);
        return r;
    }
    const RealVec axis = vec_scale(1.0 / dist, diff);
    const double p12 = 0.5 * (1.0 + inner(axis, bloch2));
    const double p21 = 0.5 * (1.0 - inner(axis, bloch1));
    RealVec e = {0.5, 0.5 * axis[0], 0.5 * axis[1], 0.5 * axis[2]};
    RealVec c = {0.5, -0.5 * axis[0], -0.5 * axis[1], -0.5 * axis[2]};
    r.minimizers.push_back(make_minimizer(e, c, p12, p21, MinimizerKind::pure_effect));
    finalize(r);
    return r;
}

double helstrom(double overlap_sq, double prior) {
    if (overlap_sq < 0.0 || overlap_sq > 1.0) {
        throw std::invalid_argument("helstrom: overlap_sq must lie in [0,1]");
    }
    if (prior < 0.0 || prior > 1.0) {
        throw std::invalid_argument("helstrom: prior must lie in [0,1]");
    }
    const double arg = std::max(0.0, 1.0 - 4.0 * prior * (1.0 - prior) * overlap_sq);
    return 0.5 * (1.0 - std::sqrt(arg));
}

namespace {

DiscriminationResult spekkens_best(const ModelSpec& model, int state_a, int state_b,
                                   int only_measurement) {
    if (model.kind != ModelKind::measurement_list) {
        throw std::invalid_argument("mesd_spekkens: model has no fixed measurement list");
    }
    const int ns = static_cast<int>(model.pure_states.size());
    if (state_a < 0 || state_a >= ns || state_b < 0 || state_b >= ns) {
        throw std::invalid_argument(
            "mesd_spekkens: states must be among the maximal-knowledge states");
    }
    const StateVec& sa = model.pure_states[state_a];
    const StateVec& sb = model.pure_states[state_b];

    double best = std::numeric_limits<double>::infinity();
    const int mc = static_cast<int>(model.measurements.size());
    for (int mi = 0; mi < mc; ++mi) {
        if (only_measurement >= 0 && mi != only_measurement) continue;
        for (int flip = 0; flip < 2; ++flip) {
            const auto& e = model.effects[model.measurements[mi][flip]].coords;
            const auto& c = model.effects[model.measurements[mi][1 - flip]].coords;
            best = std::min(best, evaluate(e, c, sa, sb).pE);
        }
    }

    DiscriminationResult r;
    for (int mi = 0; mi < mc; ++mi) {
        if (only_measurement >= 0 && mi != only_measurement) continue;
        for (int flip = 0; flip < 2; ++flip) {
            const auto& eff = model.effects[model.measurements[mi][flip]];
            const auto& comp = model.effects[model.measurements[mi][1 - flip]];
            const PairValue v = evaluate(eff.coords, comp.coords, sa, sb);
            if (v.pE > best + kGeomTol) continue;
            bool dup = false;
            for (const auto& m : r.minimizers) {
                if (vec_dist(m.measurement.effect.coords, eff.coords) <= 1e-12) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            Minimizer m = make_minimizer(eff.coords, comp.coords, v.p12, v.p21,
                                         MinimizerKind::pure_effect);
            m.measurement.effect.label = eff.label;
            m.measurement.complement.label = comp.label;
            r.minimizers.push_back(std::move(m));
        }
    }
    finalize(r);
    return r;
}

}  // namespace

DiscriminationResult mesd_spekkens(const ModelSpec& model, int state_a, int state_b) {
    return spekkens_best(model, state_a, state_b, -1);
}

DiscriminationResult spekkens_measurement_error(const ModelSpec& model, int measurement,
                                                int state_a, int state_b) {
    if (measurement < 0 || measurement >= static_cast<int>(model.measurements.size())) {
        throw std::invalid_argument("spekkens_measurement_error: measurement index out of range");
    }
    return spekkens_best(model, state_a, state_b, measurement);
}

OddGonClosedForm oddgon_closed_form(int n) {
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("oddgon_closed_form: n must be odd and >= 3");
    }
    OddGonClosedForm f;
    f.n = n;
    f.k_opt = n / 4;
    const double r2 = 1.0 / std::cos(kPi / n);
    f.p = std::clamp((1.0 + r2 * std::cos(2.0 * kPi * (f.k_opt + 1) / n)) / (1.0 + r2), 0.0, 1.0);
    f.p_bar = std::clamp(r2 / (1.0 + r2) * (1.0 - std::cos(2.0 * kPi * f.k_opt / n)), 0.0, 1.0);
    return f;
}

namespace {

// unordered comparison of an error pair against the minimizers of an
// enumeration result
bool pair_matches(const DiscriminationResult& direct, double a, double b, double tol) {
    for (const auto& m : direct.minimizers) {
        if (m.kind != MinimizerKind::pure_effect) continue;
        if ((std::abs(m.p12 - a) <= tol && std::abs(m.p21 - b) <= tol) ||
            (std::abs(m.p12 - b) <= tol && std::abs(m.p21 - a) <= tol)) {
            return true;
        }
    }
    return false;
}

}  // namespace

EvenGonCase1 evengon_case1(int m, int l) {
    if (m < 2) throw std::invalid_argument("evengon_case1: m must be >= 2");
    if (l < 1 || l > m - 1) throw std::invalid_argument("evengon_case1: l must be in 1..m-1");
    EvenGonCase1 out;
    out.m = m;
    out.l = l;
    out.n = 4 * m;
    const double r2 = 1.0 / std::cos(kPi / out.n);
    double best_total = std::numeric_limits<double>::infinity();
    for (int k : {m - l, m - l + 1}) {
        const double p = std::clamp(
            0.5 * (1.0 + r2 * std::cos((4.0 * l + 2.0 * k + 1.0) * kPi / out.n)), 0.0, 1.0);
        const double p_bar =
            std::clamp(0.5 * (1.0 - r2 * std::cos((2.0 * k + 1.0) * kPi / out.n)), 0.0, 1.0);
        if (p + p_bar < best_total) {
            best_total = p + p_bar;
            out.k_opt = k;
            out.p = p;
            out.p_bar = p_bar;
        }
    }
    out.abs_diff = std::abs(out.p - out.p_bar);

    const ModelSpec model = polygon_model(out.n);
    const auto direct =
        mesd_polytope(model, model.pure_states[0], model.pure_states[2 * l]);
    out.direct_pE = direct.pE;
    out.agrees_with_direct = std::abs(direct.pE - 0.5 * (out.p + out.p_bar)) <= 1e-9 &&
                             pair_matches(direct, out.p, out.p_bar, 1e-9);
    return out;
}

EvenGonCase2 evengon_case2(int m, int l) {
    if (m < 1) throw std::invalid_argument("evengon_case2: m must be >= 1");
    if (l < 1 || l > m) throw std::invalid_argument("evengon_case2: l must be in 1..m");
    EvenGonCase2 out;
    out.m = m;
    out.l = l;
    out.n = 4 * m + 2;
    const double r2 = 1.0 / std::cos(kPi / out.n);
    const double theta_l = (2.0 * l - 1.0) * 2.0 * kPi / out.n;

    const ModelSpec model = polygon_model(out.n);
    out.direct = mesd_polytope(model, model.pure_states[0], model.pure_states[2 * l - 1]);
    out.pE = out.direct.pE;
    out.min_pure_asymmetry = out.direct.min_pure_asymmetry();

    const std::array<int, 2> ks = {m - l, m - l + 1};
    for (std::size_t i = 0; i < 2; ++i) {
        EvenGonCase2Candidate c;
        c.k = ks[i];
        c.p_click = std::clamp(
            0.5 * (1.0 + r2 * std::cos(theta_l + (2.0 * c.k + 1.0) * kPi / out.n)), 0.0, 1.0);
        c.p_bar_printed =
            std::clamp(0.5 * (1.0 - r2 * std::cos((2.0 * c.k - 1.0) * kPi / out.n)), 0.0, 1.0);
        c.p_bar_corrected =
            std::clamp(0.5 * (1.0 - r2 * std::cos((2.0 * c.k + 1.0) * kPi / out.n)), 0.0, 1.0);
        c.printed_matches_direct = pair_matches(out.direct, c.p_click, c.p_bar_printed, 1e-9);
        c.corrected_matches_direct = pair_matches(out.direct, c.p_click, c.p_bar_corrected, 1e-9);
        out.candidates[i] = c;
    }
    return out;
}

DiscriminationResult brute_force_oracle(const ModelSpec& model, const StateVec& w1,
                                        const StateVec& w2, int resolution) {
    if (model.kind != ModelKind::polytope) {
        throw std::invalid_argument("brute_force_oracle: model is not a polytope model");
    }
    if (resolution < 1) throw std::invalid_argument("brute_force_oracle: resolution must be >= 1");
    if (!validate_state(model, w1, {}) || !validate_state(model, w2, {})) {
        throw std::invalid_argument("brute_force_oracle: state not in model");
    }

    const std::size_t g = model.effects.size();
    auto visit = [&](auto&& fn) {
        for (std::size_t i = 0; i < g; ++i) {
            for (std::size_t j = i; j < g; ++j) {
                const int steps = (i == j) ? 0 : resolution;
                for (int s = 0; s <= steps; ++s) {
                    const double t = steps == 0 ? 0.0 : static_cast<double>(s) / resolution;
                    const RealVec e = vec_add(vec_scale(1.0 - t, model.effects[i].coords),
                                              vec_scale(t, model.effects[j].coords));
                    const bool on_generator = (s == 0 || s == steps);
                    const std::size_t gen = (s == steps && steps != 0) ? j : i;
                    fn(e, on_generator, gen);
                }
            }
        }
    };

    double best = std::numeric_limits<double>::infinity();
    visit([&](const RealVec& e, bool, std::size_t) {
        const RealVec comp = vec_sub(model.unit_effect, e);
        best = std::min(best, evaluate(e, comp, w1, w2).pE);
        best = std::min(best, evaluate(comp, e, w1, w2).pE);
    });

    DiscriminationResult r;
    const std::size_t cap = 128;
    double most_symmetric = std::numeric_limits<double>::infinity();
    visit([&](const RealVec& e, bool on_generator, std::size_t gen) {
        const RealVec comp = vec_sub(model.unit_effect, e);
        for (int assign = 0; assign < 2; ++assign) {
            const RealVec& ef = assign == 0 ? e : comp;
            const RealVec& cf = assign == 0 ? comp : e;
            const PairValue v = evaluate(ef, cf, w1, w2);
            if (v.pE > best + 1e-9) continue;
            const MinimizerKind kind = on_generator && measurement_is_pure(model, gen)
                                           ? MinimizerKind::pure_effect
                                           : MinimizerKind::mixed_effect;
            const double asym = std::abs(v.p12 - v.p21);
            const bool improves_symmetry = asym < most_symmetric - 1e-15;
            if (r.minimizers.size() >= cap && !improves_symmetry) continue;
            bool dup = false;
            for (const auto& m : r.minimizers) {
                if (vec_dist(m.measurement.effect.coords, ef) <= 1e-12) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            most_symmetric = std::min(most_symmetric, asym);
            r.minimizers.push_back(make_minimizer(ef, cf, v.p12, v.p21, kind));
        }
    });
    std::stable_partition(r.minimizers.begin(), r.minimizers.end(), [&](const Minimizer& m) {
        return 0.5 * (m.p12 + m.p21) <= best + 1e-12;
    });
    finalize(r);
    return r;
}

}  // namespace gptaudit
