#include "gptaudit/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gptaudit/geometry.hpp"
#include "gptaudit/models.hpp"

namespace gptaudit {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
constexpr int kQubitAngleSamples = 50;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

std::string state_name(const ModelSpec& model, int i) {
    if (model.kind == ModelKind::measurement_list &&
        i < static_cast<int>(model.state_names.size())) {
        return model.state_names[i];
    }
    return "w" + std::to_string(i);
}

PairVerdict judge_pair(std::string a, std::string b, DiscriminationResult result,
                       double tolerance, Policy policy) {
    PairVerdict v;
    v.state_a = std::move(a);
    v.state_b = std::move(b);
    v.pair_asymmetry = policy == Policy::pure_minimizers_any ? result.min_pure_asymmetry()
                                                             : result.max_pure_asymmetry();
    v.is_satisfied = v.pair_asymmetry <= tolerance;
    std::ostringstream os;
    if (v.is_satisfied) {
        os << "symmetric pure-effect minimizer with errors (" << fmt(result.p12) << ", "
           << fmt(result.p21) << ")";
        for (const auto& m : result.minimizers) {
            if (m.kind == MinimizerKind::pure_effect &&
                std::abs(m.p12 - m.p21) <= tolerance) {
                os.str("");
                os << "symmetric pure-effect minimizer with errors (" << fmt(m.p12) << ", "
                   << fmt(m.p21) << ")";
                break;
            }
        }
    } else {
        os << result.pure_count() << " pure-effect minimizer(s), all asymmetric; error pair ("
           << fmt(result.p12) << ", " << fmt(result.p21) << ")";
    }
    v.witness = os.str();
    v.result = std::move(result);
    return v;
}

}  // namespace

// Maximizes the discrimination functional over the effect body cut by the
// symmetry plane <e, w1 + w2> = 1, whose extreme points sit on generator
// chords.
double best_symmetric_error(const ModelSpec& model, const StateVec& w1, const StateVec& w2) {
    const RealVec sum = vec_add(w1.coords, w2.coords);
    const RealVec diff = vec_sub(w1.coords, w2.coords);
    const std::size_t g = model.effects.size();
    std::vector<double> h(g), obj(g);
    for (std::size_t i = 0; i < g; ++i) {
        h[i] = inner(model.effects[i].coords, sum) - 1.0;
        obj[i] = inner(model.effects[i].coords, diff);
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g; ++i) {
        if (std::abs(h[i]) <= 1e-12) best = std::max(best, std::abs(obj[i]));
        for (std::size_t j = i + 1; j < g; ++j) {
            if ((h[i] > 0.0) == (h[j] > 0.0)) continue;
            const double t = h[i] / (h[i] - h[j]);
            const double o = (1.0 - t) * obj[i] + t * obj[j];
            best = std::max(best, std::abs(o));
        }
    }
    if (!std::isfinite(best)) return 0.5;  // only the random-guess slice point
    return 0.5 * (1.0 - best);
}

namespace {

ISReport audit_is_polytope(const ModelSpec& model, double tolerance, Policy policy) {
    ISReport rep;
    rep.model = model.name;
    rep.policy = policy;
    rep.tolerance = tolerance;
    const int n = static_cast<int>(model.pure_states.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto res = mesd_polytope(model, model.pure_states[i], model.pure_states[j]);
            rep.pairs.push_back(judge_pair(state_name(model, i), state_name(model, j),
                                           std::move(res), tolerance, policy));
        }
    }
    return rep;
}

ISReport audit_is_qubit(const ModelSpec& model, double tolerance, Policy policy) {
    ISReport rep;
    rep.model = model.name;
    rep.policy = policy;
    rep.tolerance = tolerance;
    for (int j = 1; j <= kQubitAngleSamples; ++j) {
        const double angle = kPi * j / (kQubitAngleSamples + 1);
        const double s = std::sin(0.5 * angle);
        const double c = std::cos(0.5 * angle);
        auto res = mesd_qubit({s, 0.0, c}, {-s, 0.0, c});
        rep.pairs.push_back(judge_pair("pure(+" + fmt(0.5 * angle) + ")",
                                       "pure(-" + fmt(0.5 * angle) + ")", std::move(res),
                                       tolerance, policy));
    }
    return rep;
}

ISReport audit_is_measurement_list(const ModelSpec& model, double tolerance, Policy policy) {
    ISReport rep;
    rep.model = model.name;
    rep.policy = policy;
    rep.tolerance = tolerance;
    const int n = static_cast<int>(model.pure_states.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto res = mesd_spekkens(model, i, j);
            rep.pairs.push_back(judge_pair(state_name(model, i), state_name(model, j),
                                           std::move(res), tolerance, policy));
        }
    }
    return rep;
}

void finish_is(ISReport& rep) {
    rep.satisfied = true;
    rep.max_asymmetry = 0.0;
    for (const auto& p : rep.pairs) {
        rep.satisfied = rep.satisfied && p.is_satisfied;
        rep.max_asymmetry = std::max(rep.max_asymmetry, p.pair_asymmetry);
    }
}

}  // namespace

const char* to_string(Policy p) {
    return p == Policy::pure_minimizers_any ? "any" : "all";
}

Policy policy_from_string(const std::string& s) {
    if (s == "any") return Policy::pure_minimizers_any;
    if (s == "all") return Policy::pure_minimizers_all;
    throw std::invalid_argument("unknown policy '" + s + "' (expected any|all)");
}

ISReport audit_is(const ModelSpec& model, double tolerance, Policy policy) {
    if (tolerance < 0.0) throw std::invalid_argument("audit_is: tolerance must be >= 0");
    ISReport rep;
    switch (model.kind) {
        case ModelKind::polytope:
            rep = audit_is_polytope(model, tolerance, policy);
            break;
        case ModelKind::qubit:
            rep = audit_is_qubit(model, tolerance, policy);
            break;
        case ModelKind::measurement_list:
            rep = audit_is_measurement_list(model, tolerance, policy);
            break;
    }
    finish_is(rep);
    return rep;
}

ISReport audit_spekkens(double tolerance) {
    return audit_is(spekkens_model(), tolerance, Policy::pure_minimizers_any);
}

GISReport audit_gis(const ModelSpec& model, const std::vector<double>& p_grid,
                    double tolerance) {
    for (double p : p_grid) {
        if (!(p > 0.0 && p < 1.0)) {
            throw std::invalid_argument("audit_gis: mixing weights must lie in (0,1)");
        }
    }
    GISReport rep;
    rep.model = model.name;

    if (model.kind == ModelKind::measurement_list) {
        throw std::invalid_argument(
            "audit_gis: model does not admit minimal-ignorance mixtures");
    }

    if (model.kind == ModelKind::qubit) {
        for (double p : p_grid) {
            const double len = std::abs(2.0 * p - 1.0);
            if (len < 1e-12) continue;  // both mixtures collapse to the center
            for (int j = 1; j <= kQubitAngleSamples; ++j) {
                const double angle = kPi * j / (kQubitAngleSamples + 1);
                const double s = std::sin(0.5 * angle);
                const double c = std::cos(0.5 * angle);
                auto res = mesd_qubit({len * s, 0.0, len * c}, {-len * s, 0.0, len * c});
                GISRow row;
                row.p = p;
                row.description = "|b|=" + fmt(len) + " angle=" + fmt(angle);
                row.min_error = res.pE;
                row.asymmetry = res.asymmetry;
                // equal-length pairs: the projective optimum carries p12 = p21
                // itself, so it is also the best symmetric measurement
                row.symmetric_error = res.pE;
                row.gap = row.asymmetry;
                row.satisfied = row.asymmetry <= tolerance;
                rep.rows.push_back(std::move(row));
            }
        }
    } else {
        const int n = static_cast<int>(model.pure_states.size());
        std::vector<std::vector<bool>> dist(n, std::vector<bool>(n, false));
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const bool d =
                    distinguishable(model, {model.pure_states[a], model.pure_states[b]});
                dist[a][b] = dist[b][a] = d;
            }
        }
        for (double p : p_grid) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (j == i || !dist[i][j]) continue;
                    for (int k = 0; k < n; ++k) {
                        if (k == i || k == j || !dist[k][i]) continue;
                        const StateVec w = mix_states_unchecked(model, i, j, p);
                        const StateVec wp = mix_states_unchecked(model, k, i, p);
                        if (vec_dist(w.coords, wp.coords) <= 1e-12) continue;
                        auto res = mesd_polytope(model, w, wp);
                        GISRow row;
                        row.p = p;
                        row.description = "w=p*w" + std::to_string(i) + "+(1-p)*w" +
                                          std::to_string(j) + "  w'=p*w" + std::to_string(k) +
                                          "+(1-p)*w" + std::to_string(i);
                        row.min_error = res.pE;
                        row.symmetric_error = best_symmetric_error(model, w, wp);
                        row.gap = row.symmetric_error - row.min_error;
                        row.asymmetry = res.min_asymmetry();
                        row.satisfied = row.gap <= tolerance;
                        rep.rows.push_back(std::move(row));
                    }
                }
            }
        }
    }

    rep.satisfied = true;
    rep.max_gap = 0.0;
    rep.max_asymmetry = 0.0;
    for (const auto& r : rep.rows) {
        rep.satisfied = rep.satisfied && r.satisfied;
        rep.max_gap = std::max(rep.max_gap, r.gap);
        rep.max_asymmetry = std::max(rep.max_asymmetry, r.asymmetry);
    }
    return rep;
}

std::vector<SweepRow> sweep_odd(int m_min, int m_max) {
    if (m_min < 2 || m_min > m_max) {
        throw std::invalid_argument("sweep_odd: need 2 <= m_min <= m_max");
    }
    std::vector<SweepRow> rows;
    for (int m = m_min; m <= m_max; ++m) {
        const int n = 2 * m + 1;
        const auto f = oddgon_closed_form(n);
        const auto model = polygon_model(n);
        const auto direct = mesd_polytope(model, model.pure_states[0], model.pure_states[1]);
        const double total = 0.5 * (f.p + f.p_bar);
        const bool pair_ok =
            (std::abs(direct.p12 - f.p) <= 1e-9 && std::abs(direct.p21 - f.p_bar) <= 1e-9) ||
            (std::abs(direct.p12 - f.p_bar) <= 1e-9 && std::abs(direct.p21 - f.p) <= 1e-9);
        if (std::abs(direct.pE - total) > 1e-9 || !pair_ok) {
            throw std::logic_error("sweep_odd: closed form disagrees with enumeration at n=" +
                                   std::to_string(n));
        }
        rows.push_back({m, n, f.p, f.p_bar, std::abs(f.p - f.p_bar)});
    }
    return rows;
}

std::vector<EvenSweepRow> sweep_even_case1(int m_min, int m_max) {
    if (m_min < 2 || m_min > m_max) {
        throw std::invalid_argument("sweep_even_case1: need 2 <= m_min <= m_max");
    }
    std::vector<EvenSweepRow> rows;
    for (int m = m_min; m <= m_max; ++m) {
        for (int l = 1; l <= m - 1; ++l) {
            const auto c = evengon_case1(m, l);
            if (!c.agrees_with_direct) {
                throw std::logic_error("sweep_even_case1: formula disagrees with enumeration at m=" +
                                       std::to_string(m) + " l=" + std::to_string(l));
            }
            rows.push_back({m, l, c.n, c.p, c.p_bar, c.abs_diff});
        }
    }
    return rows;
}

std::vector<Case2SweepRow> sweep_even_case2(int m_min, int m_max) {
    if (m_min < 1 || m_min > m_max) {
        throw std::invalid_argument("sweep_even_case2: need 1 <= m_min <= m_max");
    }
    std::vector<Case2SweepRow> rows;
    for (int m = m_min; m <= m_max; ++m) {
        for (int l = 1; l <= m; ++l) {
            const auto c = evengon_case2(m, l);
            rows.push_back({m, l, c.n, c.pE, c.min_pure_asymmetry});
        }
    }
    return rows;
}

}  // namespace gptaudit
