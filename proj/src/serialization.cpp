#include "gptaudit/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gptaudit/geometry.hpp"
#include "gptaudit/models.hpp"

namespace gptaudit {

using nlohmann::json;

namespace {

const char* kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::polytope: return "polytope";
        case ModelKind::qubit: return "qubit";
        case ModelKind::measurement_list: return "measurement_list";
    }
    return "?";
}

ModelKind kind_from_name(const std::string& s) {
    if (s == "polytope") return ModelKind::polytope;
    if (s == "qubit") return ModelKind::qubit;
    if (s == "measurement_list") return ModelKind::measurement_list;
    throw std::invalid_argument("model JSON: unknown kind '" + s + "'");
}

json coords_array(const RealVec& v) { return json(v); }

RealVec coords_from(const json& j, int dim, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) {
        throw std::invalid_argument(std::string("model JSON: ") + what +
                                    " must be an array of length dim");
    }
    RealVec v;
    for (const auto& x : j) {
        if (!x.is_number()) {
            throw std::invalid_argument(std::string("model JSON: ") + what +
                                        " entries must be numbers");
        }
        v.push_back(x.get<double>());
    }
    return v;
}

// Extreme-ray test against the other generators: a nonzero effect is
// ray-extremal iff it cannot be written as a nonnegative combination of
// generators pointing elsewhere.
bool compute_ray_extremal(const std::vector<EffectVec>& effects, std::size_t i) {
    const RealVec& e = effects[i].coords;
    const double en = norm(e);
    if (en <= 1e-12) return false;
    std::vector<RealVec> rays;
    for (std::size_t j = 0; j < effects.size(); ++j) {
        if (j == i) continue;
        const RealVec& g = effects[j].coords;
        const double gn = norm(g);
        if (gn <= 1e-12) continue;
        const double cosang = inner(e, g) / (en * gn);
        if (cosang > 1.0 - 1e-12) continue;  // same ray
        rays.push_back(g);
    }
    return !cone_member(e, rays, 1e-9);
}

}  // namespace

std::string format_sig(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

std::string model_to_json(const ModelSpec& model, int indent) {
    json j;
    j["name"] = model.name;
    j["kind"] = kind_name(model.kind);
    j["dim"] = model.dim;
    j["unit_effect"] = coords_array(model.unit_effect);
    if (model.kind == ModelKind::qubit) {
        j["pure_states"] = "bloch_sphere";
        j["effects"] = "bloch_ball_effects";
    } else {
        json states = json::array();
        for (const auto& s : model.pure_states) states.push_back(coords_array(s.coords));
        j["pure_states"] = std::move(states);
        json effects = json::array();
        for (const auto& e : model.effects) effects.push_back(coords_array(e.coords));
        j["effects"] = std::move(effects);
    }
    if (model.kind == ModelKind::measurement_list) {
        json ms = json::array();
        for (const auto& m : model.measurements) ms.push_back({m[0], m[1]});
        j["measurements"] = std::move(ms);
        j["state_names"] = model.state_names;
        j["effect_names"] = model.effect_names;
    }
    return j.dump(indent) + "\n";
}

ModelSpec model_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("model JSON: parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("model JSON: expected an object");
    for (const char* field : {"name", "kind", "dim", "unit_effect"}) {
        if (!j.contains(field)) {
            throw std::invalid_argument(std::string("model JSON: missing field '") + field + "'");
        }
    }

    ModelSpec m;
    m.name = j["name"].get<std::string>();
    m.kind = kind_from_name(j["kind"].get<std::string>());
    m.dim = j["dim"].get<int>();
    if (m.dim < 2) throw std::invalid_argument("model JSON: dim must be >= 2");
    m.unit_effect = coords_from(j["unit_effect"], m.dim, "unit_effect");

    if (m.kind == ModelKind::qubit) {
        ModelSpec q = qubit_model();
        q.name = m.name;
        return q;
    }

    if (!j.contains("pure_states") || !j.contains("effects")) {
        throw std::invalid_argument("model JSON: missing pure_states or effects");
    }
    int label = 0;
    for (const auto& s : j["pure_states"]) {
        m.pure_states.push_back({coords_from(s, m.dim, "pure_states"), label++});
    }
    label = 0;
    for (const auto& e : j["effects"]) {
        EffectVec ev;
        ev.coords = coords_from(e, m.dim, "effects");
        ev.label = label++;
        m.effects.push_back(std::move(ev));
    }
    if (m.pure_states.size() < 2) {
        throw std::invalid_argument("model JSON: need at least two pure states");
    }
    if (m.effects.empty()) throw std::invalid_argument("model JSON: need at least one effect");

    // validation: states normalized, effects valid on all states
    for (const auto& s : m.pure_states) {
        if (std::abs(inner(m.unit_effect, s.coords) - 1.0) > kGeomTol) {
            throw std::invalid_argument("model JSON: pure state " +
                                        std::to_string(*s.label) + " is not normalized");
        }
    }
    for (const auto& e : m.effects) {
        const auto v = validate_effect(m, e);
        if (!v.ok) {
            throw std::invalid_argument("model JSON: effect " + std::to_string(*e.label) +
                                        " is not a valid effect: " + v.violations.front());
        }
    }

    // complement bookkeeping and ray-extremality
    std::vector<RealVec> gen_coords;
    for (const auto& e : m.effects) gen_coords.push_back(e.coords);
    for (std::size_t i = 0; i < m.effects.size(); ++i) {
        const RealVec comp = vec_sub(m.unit_effect, m.effects[i].coords);
        m.effects[i].complement_index = -1;
        for (std::size_t k = 0; k < m.effects.size(); ++k) {
            if (vec_dist(m.effects[k].coords, comp) <= 1e-12) {
                m.effects[i].complement_index = static_cast<int>(k);
                break;
            }
        }
        if (m.kind == ModelKind::polytope && m.effects[i].complement_index < 0 &&
            !convex_member(comp, gen_coords, kGeomTol)) {
            throw std::invalid_argument(
                "model JSON: effect body is not closed under complements (u - e_" +
                std::to_string(i) + " lies outside)");
        }
    }
    for (std::size_t i = 0; i < m.effects.size(); ++i) {
        m.effects[i].ray_extremal = compute_ray_extremal(m.effects, i);
    }

    if (m.kind == ModelKind::measurement_list) {
        if (!j.contains("measurements")) {
            throw std::invalid_argument("model JSON: measurement_list requires 'measurements'");
        }
        for (const auto& p : j["measurements"]) {
            if (!p.is_array() || p.size() != 2) {
                throw std::invalid_argument("model JSON: each measurement is an index pair");
            }
            const int a = p[0].get<int>();
            const int b = p[1].get<int>();
            const int g = static_cast<int>(m.effects.size());
            if (a < 0 || a >= g || b < 0 || b >= g) {
                throw std::invalid_argument("model JSON: measurement index out of range");
            }
            const RealVec sum = vec_add(m.effects[a].coords, m.effects[b].coords);
            if (vec_dist(sum, m.unit_effect) > kGeomTol) {
                throw std::invalid_argument(
                    "model JSON: measurement outcomes do not sum to the unit effect");
            }
            m.measurements.push_back({a, b});
        }
        if (j.contains("state_names")) {
            m.state_names = j["state_names"].get<std::vector<std::string>>();
        }
        if (j.contains("effect_names")) {
            m.effect_names = j["effect_names"].get<std::vector<std::string>>();
        }
    }
    return m;
}

ModelSpec load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

std::string result_to_json(const DiscriminationResult& r, int indent) {
    json j;
    j["pE"] = r.pE;
    j["p12"] = r.p12;
    j["p21"] = r.p21;
    j["asymmetry"] = r.asymmetry;
    json ms = json::array();
    for (const auto& m : r.minimizers) {
        json mj;
        mj["p12"] = m.p12;
        mj["p21"] = m.p21;
        mj["kind"] = to_string(m.kind);
        mj["effect"] = coords_array(m.measurement.effect.coords);
        mj["complement"] = coords_array(m.measurement.complement.coords);
        ms.push_back(std::move(mj));
    }
    j["minimizers"] = std::move(ms);
    return j.dump(indent) + "\n";
}

std::string is_report_to_json(const ISReport& rep, int indent) {
    json j;
    j["model"] = rep.model;
    j["audit"] = "information_symmetry";
    j["policy"] = to_string(rep.policy);
    j["tolerance"] = rep.tolerance;
    j["satisfied"] = rep.satisfied;
    j["max_asymmetry"] = rep.max_asymmetry;
    json pairs = json::array();
    for (const auto& p : rep.pairs) {
        json pj;
        pj["a"] = p.state_a;
        pj["b"] = p.state_b;
        pj["pE"] = p.result.pE;
        pj["p12"] = p.result.p12;
        pj["p21"] = p.result.p21;
        pj["pair_asymmetry"] = p.pair_asymmetry;
        pj["satisfied"] = p.is_satisfied;
        pj["witness"] = p.witness;
        pairs.push_back(std::move(pj));
    }
    j["pairs"] = std::move(pairs);
    return j.dump(indent) + "\n";
}

std::string gis_report_to_json(const GISReport& rep, int indent) {
    json j;
    j["model"] = rep.model;
    j["audit"] = "generalized_information_symmetry";
    j["satisfied"] = rep.satisfied;
    j["max_gap"] = rep.max_gap;
    j["max_asymmetry"] = rep.max_asymmetry;
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json rj;
        rj["p"] = r.p;
        rj["pair"] = r.description;
        rj["min_error"] = r.min_error;
        rj["symmetric_error"] = r.symmetric_error;
        rj["gap"] = r.gap;
        rj["asymmetry"] = r.asymmetry;
        rj["satisfied"] = r.satisfied;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return j.dump(indent) + "\n";
}

std::string sweep_odd_csv(const std::vector<SweepRow>& rows) {
    std::string out = "m,n,p,p_bar,abs_diff\n";
    for (const auto& r : rows) {
        out += std::to_string(r.m) + "," + std::to_string(r.n) + "," + format_sig(r.p) + "," +
               format_sig(r.p_bar) + "," + format_sig(r.abs_diff) + "\n";
    }
    return out;
}

std::string sweep_even1_csv(const std::vector<EvenSweepRow>& rows) {
    std::string out = "m,l,n,p,p_bar,abs_diff\n";
    for (const auto& r : rows) {
        out += std::to_string(r.m) + "," + std::to_string(r.l) + "," + std::to_string(r.n) + "," +
               format_sig(r.p) + "," + format_sig(r.p_bar) + "," + format_sig(r.abs_diff) + "\n";
    }
    return out;
}

std::string sweep_even2_csv(const std::vector<Case2SweepRow>& rows) {
    std::string out = "m,l,n,pE,min_pure_asymmetry\n";
    for (const auto& r : rows) {
        out += std::to_string(r.m) + "," + std::to_string(r.l) + "," + std::to_string(r.n) + "," +
               format_sig(r.pE) + "," + format_sig(r.min_pure_asymmetry) + "\n";
    }
    return out;
}

}  // namespace gptaudit
