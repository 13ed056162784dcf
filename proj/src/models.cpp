#include "gptaudit/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "feasibility.hpp"
#include "gptaudit/geometry.hpp"

namespace gptaudit {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

void push_complements_and_trivials(ModelSpec& m, bool complements_ray_extremal) {
    const int n = static_cast<int>(m.effects.size());
    for (int i = 0; i < n; ++i) {
        EffectVec bar;
        bar.coords = vec_sub(m.unit_effect, m.effects[i].coords);
        bar.label = m.effects[i].label;
        bar.is_complement = true;
        bar.ray_extremal = complements_ray_extremal;
        bar.complement_index = i;
        m.effects[i].complement_index = n + i;
        m.effects.push_back(std::move(bar));
    }
    EffectVec zero;
    zero.coords.assign(m.dim, 0.0);
    zero.complement_index = 2 * n + 1;
    m.effects.push_back(std::move(zero));
    EffectVec unit;
    unit.coords = m.unit_effect;
    unit.complement_index = 2 * n;
    m.effects.push_back(std::move(unit));
}

// Perfect-discrimination certificate for a pair: an effect e in the body
// with <e,w1> = 1 and <e,w2> = 0. By Caratheodory applied to the body cut by
// the two hyperplanes, a certificate exists iff one exists supported on at
// most three generators.
bool pair_certificate(const ModelSpec& model, const StateVec& w1, const StateVec& w2,
                      double tol) {
    const std::size_t g = model.effects.size();
    std::vector<double> v1(g), v2(g);
    for (std::size_t i = 0; i < g; ++i) {
        v1[i] = inner(model.effects[i].coords, w1.coords);
        v2[i] = inner(model.effects[i].coords, w2.coords);
    }
    for (std::size_t i = 0; i < g; ++i) {
        if (std::abs(v1[i] - 1.0) <= tol && std::abs(v2[i]) <= tol) return true;
    }
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            // e = w*g_i + (1-w)*g_j
            const double da = v1[i] - v1[j];
            if (std::abs(da) > 1e-14) {
                const double w = (1.0 - v1[j]) / da;
                if (w < -tol || w > 1.0 + tol) continue;
                if (std::abs(w * v2[i] + (1.0 - w) * v2[j]) <= tol) return true;
            } else if (std::abs(v1[j] - 1.0) <= tol) {
                const double db = v2[i] - v2[j];
                if (std::abs(db) > 1e-14) {
                    const double w = -v2[j] / db;
                    if (w >= -tol && w <= 1.0 + tol) return true;
                } else if (std::abs(v2[j]) <= tol) {
                    return true;
                }
            }
        }
    }
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            for (std::size_t k = j + 1; k < g; ++k) {
                // 3x3: value-1 on w1, value-0 on w2, convexity
                const double a[3][3] = {{v1[i], v1[j], v1[k]},
                                        {v2[i], v2[j], v2[k]},
                                        {1.0, 1.0, 1.0}};
                const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
                if (std::abs(det) < 1e-12) continue;
                const double b[3] = {1.0, 0.0, 1.0};
                double w[3];
                // Cramer
                for (int c = 0; c < 3; ++c) {
                    double m2[3][3];
                    for (int r = 0; r < 3; ++r)
                        for (int cc = 0; cc < 3; ++cc) m2[r][cc] = a[r][cc];
                    for (int r = 0; r < 3; ++r) m2[r][c] = b[r];
                    const double d2 = m2[0][0] * (m2[1][1] * m2[2][2] - m2[1][2] * m2[2][1]) -
                                      m2[0][1] * (m2[1][0] * m2[2][2] - m2[1][2] * m2[2][0]) +
                                      m2[0][2] * (m2[1][0] * m2[2][1] - m2[1][1] * m2[2][0]);
                    w[c] = d2 / det;
                }
                if (w[0] >= -tol && w[1] >= -tol && w[2] >= -tol) return true;
            }
        }
    }
    return false;
}

// Joint feasibility for m >= 3 outcomes: effects e_j in the body with
// <e_j, w_i> = delta_ij and sum_j e_j = u.
bool partition_feasible(const ModelSpec& model, const std::vector<StateVec>& states) {
    const std::size_t m = states.size();
    const std::size_t g = model.effects.size();
    const std::size_t dim = static_cast<std::size_t>(model.dim);
    const std::size_t vars = m * g;

    std::vector<std::vector<double>> a;
    std::vector<double> b;

    for (std::size_t j = 0; j < m; ++j) {  // convexity per outcome
        std::vector<double> row(vars, 0.0);
        for (std::size_t k = 0; k < g; ++k) row[j * g + k] = 1.0;
        a.push_back(std::move(row));
        b.push_back(1.0);
    }
    for (std::size_t j = 0; j < m; ++j) {  // delta constraints
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> row(vars, 0.0);
            for (std::size_t k = 0; k < g; ++k) {
                row[j * g + k] = inner(model.effects[k].coords, states[i].coords);
            }
            a.push_back(std::move(row));
            b.push_back(i == j ? 1.0 : 0.0);
        }
    }
    for (std::size_t c = 0; c < dim; ++c) {  // effects sum to the unit effect
        std::vector<double> row(vars, 0.0);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < g; ++k) row[j * g + k] = model.effects[k].coords[c];
        a.push_back(std::move(row));
        b.push_back(model.unit_effect[c]);
    }
    return detail::equality_feasible(std::move(a), std::move(b));
}

}  // namespace

double polygon_radius(int n) {
    if (n < 3) throw std::invalid_argument("polygon_radius: n must be >= 3");
    return std::sqrt(1.0 / std::cos(kPi / n));
}

ModelSpec polygon_model(int n) {
    if (n < 3) throw std::invalid_argument("polygon_model: n must be >= 3");
    const double r = polygon_radius(n);
    ModelSpec m;
    m.name = "polygon-" + std::to_string(n);
    m.kind = ModelKind::polytope;
    m.dim = 3;
    m.unit_effect = {0.0, 0.0, 1.0};
    m.family = ModelFamily::regular_polygon;
    m.family_param = n;

    for (int i = 0; i < n; ++i) {
        const double ang = 2.0 * kPi * i / n;
        m.pure_states.push_back({{r * std::cos(ang), r * std::sin(ang), 1.0}, i});
    }

    const bool even = n % 2 == 0;
    for (int i = 0; i < n; ++i) {
        EffectVec e;
        if (even) {
            const double ang = (2.0 * i - 1.0) * kPi / n;
            e.coords = {0.5 * r * std::cos(ang), 0.5 * r * std::sin(ang), 0.5};
        } else {
            const double ang = 2.0 * kPi * i / n;
            const double s = 1.0 / (1.0 + r * r);
            e.coords = {s * r * std::cos(ang), s * r * std::sin(ang), s};
        }
        e.label = i;
        e.ray_extremal = true;
        m.effects.push_back(std::move(e));
    }
    // For even n the complements coincide with pure effects on the opposite
    // side and stay on extreme rays; for odd n they are extremal but off
    // every extreme ray.
    push_complements_and_trivials(m, even);
    return m;
}

ModelSpec classical_model(int d) {
    if (d < 2) throw std::invalid_argument("classical_model: d must be >= 2");
    ModelSpec m;
    m.name = "classical-" + std::to_string(d);
    m.kind = ModelKind::polytope;
    m.dim = d;
    m.unit_effect.assign(d, 1.0);
    m.family = ModelFamily::simplex;
    m.family_param = d;
    for (int i = 0; i < d; ++i) {
        RealVec basis(d, 0.0);
        basis[i] = 1.0;
        m.pure_states.push_back({basis, i});
        EffectVec e;
        e.coords = basis;
        e.label = i;
        e.ray_extremal = true;
        m.effects.push_back(std::move(e));
    }
    push_complements_and_trivials(m, d == 2);
    return m;
}

ModelSpec squit_model() { return polygon_model(4); }

ModelSpec qubit_model() {
    ModelSpec m;
    m.name = "qubit";
    m.kind = ModelKind::qubit;
    m.dim = 4;
    m.unit_effect = {1.0, 0.0, 0.0, 0.0};
    return m;
}

const std::vector<ToyEpistemicState>& spekkens_states() {
    static const std::vector<ToyEpistemicState> states = [] {
        std::vector<ToyEpistemicState> s;
        const std::array<std::array<int, 2>, 6> supports = {
            {{1, 2}, {3, 4}, {1, 3}, {2, 4}, {2, 3}, {1, 4}}};
        for (const auto& sup : supports) {
            ToyEpistemicState t;
            t.support = sup;
            t.name = std::to_string(sup[0]) + "v" + std::to_string(sup[1]);
            t.distribution.assign(4, 0.0);
            t.distribution[sup[0] - 1] = 0.5;
            t.distribution[sup[1] - 1] = 0.5;
            s.push_back(std::move(t));
        }
        return s;
    }();
    return states;
}

const std::vector<ToyMeasurement>& spekkens_measurements() {
    static const std::vector<ToyMeasurement> ms = {
        {{{{1, 2}, {3, 4}}}, "M1"},
        {{{{1, 3}, {2, 4}}}, "M2"},
        {{{{1, 4}, {2, 3}}}, "M3"},
    };
    return ms;
}

int spekkens_state_index(const std::string& name) {
    std::string canon = name;
    std::replace(canon.begin(), canon.end(), 'V', 'v');
    const auto& states = spekkens_states();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        const std::string fwd = s.name;
        const std::string rev =
            std::to_string(s.support[1]) + "v" + std::to_string(s.support[0]);
        if (canon == fwd || canon == rev) return static_cast<int>(i);
    }
    throw std::invalid_argument("unknown epistemic state '" + name +
                                "' (expected e.g. 1v2, 1v3)");
}

ModelSpec spekkens_model() {
    ModelSpec m;
    m.name = "spekkens";
    m.kind = ModelKind::measurement_list;
    m.dim = 4;
    m.unit_effect.assign(4, 1.0);
    int label = 0;
    for (const auto& s : spekkens_states()) {
        m.pure_states.push_back({s.distribution, label++});
        m.state_names.push_back(s.name);
    }
    int eff = 0;
    for (const auto& meas : spekkens_measurements()) {
        for (const auto& pair : meas.partition) {
            EffectVec e;
            e.coords.assign(4, 0.0);
            e.coords[pair[0] - 1] = 1.0;
            e.coords[pair[1] - 1] = 1.0;
            e.label = eff;
            e.ray_extremal = true;
            e.complement_index = (eff % 2 == 0) ? eff + 1 : eff - 1;
            m.effect_names.push_back(std::to_string(pair[0]) + "v" + std::to_string(pair[1]));
            m.effects.push_back(std::move(e));
            ++eff;
        }
        m.measurements.push_back({eff - 2, eff - 1});
    }
    return m;
}

StateVec qubit_state(double bx, double by, double bz) {
    return {{1.0, bx, by, bz}, std::nullopt};
}

RealVec bloch_of(const StateVec& state) {
    if (state.coords.size() != 4) {
        throw std::invalid_argument("bloch_of: expected a qubit state (1, b)");
    }
    return {state.coords[1], state.coords[2], state.coords[3]};
}

StateVec mix_states_unchecked(const ModelSpec& model, int i, int j, double p) {
    const int n = static_cast<int>(model.pure_states.size());
    if (i < 0 || i >= n || j < 0 || j >= n) {
        throw std::invalid_argument("mix_states: state index out of range");
    }
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("mix_states: p must be in [0,1]");
    StateVec mixed;
    mixed.coords = vec_add(vec_scale(p, model.pure_states[i].coords),
                           vec_scale(1.0 - p, model.pure_states[j].coords));
    return mixed;
}

StateVec mix_states(const ModelSpec& model, int i, int j, double p) {
    if (model.kind != ModelKind::polytope) {
        throw std::invalid_argument("mix_states: model does not admit convex mixtures");
    }
    StateVec mixed = mix_states_unchecked(model, i, j, p);
    if (!distinguishable(model, {model.pure_states[i], model.pure_states[j]})) {
        throw std::invalid_argument(
            "mix_states: endpoints are not perfectly distinguishable (not a minimal-ignorance "
            "mixture)");
    }
    return mixed;
}

bool distinguishable(const ModelSpec& model, const std::vector<StateVec>& states,
                     const Tolerances& tol) {
    if (states.size() < 2) {
        throw std::invalid_argument("distinguishable: need at least two states");
    }
    switch (model.kind) {
        case ModelKind::qubit: {
            if (states.size() > 2) return false;
            const RealVec b1 = bloch_of(states[0]);
            const RealVec b2 = bloch_of(states[1]);
            return std::abs(norm(b1) - 1.0) <= tol.geometric &&
                   std::abs(norm(b2) - 1.0) <= tol.geometric &&
                   vec_dist(b1, vec_scale(-1.0, b2)) <= tol.geometric;
        }
        case ModelKind::measurement_list: {
            if (states.size() > 2) return false;  // binary measurements only
            for (const auto& meas : model.measurements) {
                for (int flip = 0; flip < 2; ++flip) {
                    const auto& ea = model.effects[meas[flip]].coords;
                    const auto& eb = model.effects[meas[1 - flip]].coords;
                    if (std::abs(inner(ea, states[0].coords) - 1.0) <= tol.geometric &&
                        std::abs(inner(eb, states[1].coords) - 1.0) <= tol.geometric) {
                        return true;
                    }
                }
            }
            return false;
        }
        case ModelKind::polytope: {
            if (states.size() == 2) {
                return pair_certificate(model, states[0], states[1], tol.geometric);
            }
            return partition_feasible(model, states);
        }
    }
    return false;
}

}  // namespace gptaudit
