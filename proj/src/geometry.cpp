#include "gptaudit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>

namespace gptaudit {

namespace {

// Solves A w = b for a column-full-rank rectangular system by Gaussian
// elimination with partial pivoting, then verifies every equation against
// `residual_tol`. Returns nothing when the system is rank deficient or
// inconsistent.
std::optional<std::vector<double>> solve_checked(std::vector<std::vector<double>> a,
                                                 std::vector<double> b,
                                                 double residual_tol) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    if (cols == 0 || rows < cols) return std::nullopt;

    const auto a0 = a;
    const auto b0 = b;

    std::vector<std::size_t> perm(rows);
    for (std::size_t i = 0; i < rows; ++i) perm[i] = i;

    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[perm[col]][col]);
        for (std::size_t r = col + 1; r < rows; ++r) {
            const double cand = std::abs(a[perm[r]][col]);
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best < 1e-12) return std::nullopt;
        std::swap(perm[col], perm[pivot]);
        const std::size_t p = perm[col];
        for (std::size_t r = col + 1; r < rows; ++r) {
            const std::size_t q = perm[r];
            const double f = a[q][col] / a[p][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < cols; ++c) a[q][c] -= f * a[p][c];
            b[q] -= f * b[p];
        }
    }

    std::vector<double> w(cols, 0.0);
    for (std::size_t col = cols; col-- > 0;) {
        const std::size_t p = perm[col];
        double s = b[p];
        for (std::size_t c = col + 1; c < cols; ++c) s -= a[p][c] * w[c];
        w[col] = s / a[p][col];
    }

    for (std::size_t r = 0; r < rows; ++r) {
        double s = -b0[r];
        for (std::size_t c = 0; c < cols; ++c) s += a0[r][c] * w[c];
        if (std::abs(s) > residual_tol) return std::nullopt;
    }
    return w;
}

// Visits every k-subset of {0..n-1}; `body` returns true to stop early.
template <typename F>
bool for_each_subset(std::size_t n, std::size_t k, F&& body) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (body(idx)) return true;
        std::size_t j = k;
        bool advanced = false;
        while (j-- > 0) {
            if (idx[j] != j + n - k) {
                ++idx[j];
                for (std::size_t c = j + 1; c < k; ++c) idx[c] = idx[c - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return false;
    }
}

struct Facet {
    RealVec normal;  // unit outward normal
    double offset;   // points satisfy normal . x <= offset + tol
};

// Brute-force facet enumeration: every hyperplane through `dim` generators
// that has all generators on one side. Adequate for the generator counts in
// this catalog (<= 2n+2).
std::vector<Facet> enumerate_facets(const std::vector<RealVec>& pts, double tol) {
    std::vector<Facet> facets;
    if (pts.empty()) return facets;
    const std::size_t dim = pts[0].size();
    if (pts.size() < dim) return facets;

    for_each_subset(pts.size(), dim, [&](const std::vector<std::size_t>& idx) {
        // normal is orthogonal to the dim-1 difference vectors
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 1; i < dim; ++i) {
            rows.push_back(vec_sub(pts[idx[i]], pts[idx[0]]));
        }
        // find a nullspace vector by trying each coordinate as the free one
        RealVec normal;
        for (std::size_t free = 0; free < dim && normal.empty(); ++free) {
            std::vector<std::vector<double>> a;
            std::vector<double> b;
            for (const auto& r : rows) {
                std::vector<double> ar;
                for (std::size_t c = 0; c < dim; ++c)
                    if (c != free) ar.push_back(r[c]);
                a.push_back(std::move(ar));
                b.push_back(-r[free]);
            }
            auto sol = solve_checked(a, b, 1e-7);
            if (!sol) continue;
            normal.assign(dim, 0.0);
            normal[free] = 1.0;
            std::size_t c2 = 0;
            for (std::size_t c = 0; c < dim; ++c)
                if (c != free) normal[c] = (*sol)[c2++];
        }
        if (normal.empty()) return false;
        const double len = norm(normal);
        if (len < 1e-12) return false;
        normal = vec_scale(1.0 / len, normal);
        const double d = inner(normal, pts[idx[0]]);
        double lo = 0.0, hi = 0.0;
        for (const auto& p : pts) {
            const double s = inner(normal, p) - d;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (hi <= tol) facets.push_back({normal, d});
        if (lo >= -tol) facets.push_back({vec_scale(-1.0, normal), -d});
        return false;
    });
    return facets;
}

std::vector<RealVec> effect_coords(const ModelSpec& model) {
    std::vector<RealVec> pts;
    pts.reserve(model.effects.size());
    for (const auto& e : model.effects) pts.push_back(e.coords);
    return pts;
}

bool point_in_regular_polygon_hat(const ModelSpec& model, double x, double y, double tol) {
    const int n = model.family_param;
    for (int i = 0; i < n; ++i) {
        const auto& a = model.pure_states[i].coords;
        const auto& b = model.pure_states[(i + 1) % n].coords;
        const double cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
        if (cross < -tol) return false;
    }
    return true;
}

}  // namespace

const char* to_string(EffectClass c) {
    switch (c) {
        case EffectClass::ray_extremal: return "ray_extremal";
        case EffectClass::extremal_not_ray: return "extremal_not_ray";
        case EffectClass::boundary_mixed: return "boundary_mixed";
        case EffectClass::interior: return "interior";
        case EffectClass::invalid: return "invalid";
    }
    return "?";
}

double inner(const RealVec& a, const RealVec& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner: dimension mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const RealVec& v) { return std::sqrt(inner(v, v)); }

RealVec vec_add(const RealVec& a, const RealVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_add: dimension mismatch");
    RealVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RealVec vec_sub(const RealVec& a, const RealVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_sub: dimension mismatch");
    RealVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RealVec vec_scale(double s, const RealVec& v) {
    RealVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

double vec_dist(const RealVec& a, const RealVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_dist: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

HatDecomposition hat_decompose(const RealVec& v, const RealVec& unit) {
    const double uu = inner(unit, unit);
    if (uu < 1e-24) throw std::invalid_argument("hat_decompose: zero unit vector");
    HatDecomposition d;
    d.unit_component = inner(v, unit) / uu;
    d.hat_part = vec_sub(v, vec_scale(d.unit_component, unit));
    return d;
}

EffectVec scale_to_plane(const EffectVec& e, const RealVec& unit) {
    const double value = inner(unit, e.coords);
    if (value <= 1e-12) {
        throw std::invalid_argument("scale_to_plane: unit component must be strictly positive");
    }
    EffectVec scaled = e;
    scaled.coords = vec_scale(1.0 / value, e.coords);
    scaled.complement_index = -1;
    return scaled;
}

double probability(const ModelSpec& model, const EffectVec& e, const StateVec& state,
                   const Tolerances& tol) {
    const auto validity = validate_effect(model, e, tol);
    if (!validity.ok) {
        throw std::invalid_argument("probability: invalid effect" +
                                    (validity.violations.empty() ? std::string{}
                                                                 : ": " + validity.violations.front()));
    }
    if (!validate_state(model, state, tol)) {
        throw std::invalid_argument("probability: state not in model");
    }
    const double raw = inner(e.coords, state.coords);
    return std::clamp(raw, 0.0, 1.0);
}

EffectValidity validate_effect(const ModelSpec& model, const EffectVec& e, const Tolerances& tol) {
    EffectValidity v;
    if (static_cast<int>(e.coords.size()) != model.dim) {
        v.violations.push_back("dimension mismatch");
        return v;
    }
    if (model.kind == ModelKind::qubit) {
        const double alpha = e.coords[0];
        const double m = std::sqrt(e.coords[1] * e.coords[1] + e.coords[2] * e.coords[2] +
                                   e.coords[3] * e.coords[3]);
        if (alpha - m < -tol.geometric || alpha + m > 1.0 + tol.geometric) {
            std::ostringstream os;
            os << "qubit effect out of range: alpha=" << alpha << " |m|=" << m;
            v.violations.push_back(os.str());
        }
        v.ok = v.violations.empty();
        return v;
    }
    for (const auto& w : model.pure_states) {
        const double p = inner(e.coords, w.coords);
        if (p < -tol.geometric || p > 1.0 + tol.geometric) {
            std::ostringstream os;
            os << "value " << p << " on pure state";
            if (w.label) os << " " << *w.label;
            v.violations.push_back(os.str());
        }
    }
    v.ok = v.violations.empty();
    return v;
}

bool validate_state(const ModelSpec& model, const StateVec& state, const Tolerances& tol) {
    if (static_cast<int>(state.coords.size()) != model.dim) return false;
    if (std::abs(inner(model.unit_effect, state.coords) - 1.0) > tol.geometric) return false;
    switch (model.kind) {
        case ModelKind::qubit: {
            if (std::abs(state.coords[0] - 1.0) > tol.geometric) return false;
            const double b = std::sqrt(state.coords[1] * state.coords[1] +
                                       state.coords[2] * state.coords[2] +
                                       state.coords[3] * state.coords[3]);
            return b <= 1.0 + tol.geometric;
        }
        case ModelKind::measurement_list: {
            for (const auto& s : model.pure_states) {
                if (vec_dist(s.coords, state.coords) <= tol.geometric) return true;
            }
            // the only non-maximal state allowed is the fully mixed one
            const RealVec mixed(state.coords.size(), 1.0 / static_cast<double>(model.dim));
            return vec_dist(mixed, state.coords) <= tol.geometric;
        }
        case ModelKind::polytope: {
            if (model.family == ModelFamily::regular_polygon) {
                return point_in_regular_polygon_hat(model, state.coords[0], state.coords[1],
                                                    tol.geometric);
            }
            if (model.family == ModelFamily::simplex) {
                for (double c : state.coords)
                    if (c < -tol.geometric) return false;
                return true;
            }
            for (const auto& s : model.pure_states) {
                if (vec_dist(s.coords, state.coords) <= tol.geometric) return true;
            }
            std::vector<RealVec> pts;
            for (const auto& s : model.pure_states) pts.push_back(s.coords);
            return convex_member(state.coords, pts, tol.geometric);
        }
    }
    return false;
}

EffectClass classify_effect(const ModelSpec& model, const EffectVec& e, const Tolerances& tol) {
    if (model.kind != ModelKind::polytope) {
        throw std::invalid_argument(
            "classify_effect: unsupported for models without a finite effect-generator list");
    }
    if (static_cast<int>(e.coords.size()) != model.dim) {
        throw std::invalid_argument("classify_effect: dimension mismatch");
    }
    if (!validate_effect(model, e, tol).ok) return EffectClass::invalid;

    const auto gens = effect_coords(model);

    // ray-extremal: direction coincides with a listed pure-effect direction
    if (inner(model.unit_effect, e.coords) > tol.arithmetic) {
        const auto scaled = scale_to_plane(e, model.unit_effect);
        for (const auto& g : model.effects) {
            if (!g.ray_extremal) continue;
            const auto gs = scale_to_plane(g, model.unit_effect);
            if (vec_dist(scaled.coords, gs.coords) <= tol.geometric) {
                return EffectClass::ray_extremal;
            }
        }
    }

    if (!convex_member(e.coords, gens, tol.geometric)) return EffectClass::invalid;

    // vertex of the effect body but off every pure-effect ray
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (vec_dist(e.coords, gens[i]) > tol.geometric) continue;
        std::vector<RealVec> others;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (j != i && vec_dist(gens[j], gens[i]) > tol.geometric) others.push_back(gens[j]);
        }
        if (!convex_member(gens[i], others, tol.geometric)) return EffectClass::extremal_not_ray;
        break;
    }

    const auto facets = enumerate_facets(gens, tol.geometric);
    double margin = 1e300;
    for (const auto& f : facets) {
        margin = std::min(margin, f.offset - inner(f.normal, e.coords));
    }
    return margin > tol.geometric ? EffectClass::interior : EffectClass::boundary_mixed;
}

bool check_self_duality(const ModelSpec& model, const Tolerances& tol) {
    if (model.kind == ModelKind::qubit) {
        throw std::invalid_argument("check_self_duality: requires a finite model");
    }
    std::vector<RealVec> state_hats;
    for (const auto& s : model.pure_states) {
        state_hats.push_back(hat_decompose(s.coords, model.unit_effect).hat_part);
    }
    std::vector<RealVec> effect_hats;
    for (const auto& e : model.effects) {
        if (!e.ray_extremal) continue;
        const auto scaled = scale_to_plane(e, model.unit_effect);
        effect_hats.push_back(hat_decompose(scaled.coords, model.unit_effect).hat_part);
    }
    if (effect_hats.empty() || state_hats.empty()) return false;
    auto contained = [&](const std::vector<RealVec>& a, const std::vector<RealVec>& b) {
        for (const auto& x : a) {
            bool found = false;
            for (const auto& y : b) {
                if (vec_dist(x, y) <= tol.geometric) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };
    return contained(state_hats, effect_hats) && contained(effect_hats, state_hats);
}

bool convex_member(const RealVec& x, const std::vector<RealVec>& points, double tol) {
    if (points.empty()) return false;
    const std::size_t dim = x.size();
    for (const auto& p : points) {
        if (vec_dist(p, x) <= tol) return true;
    }
    std::vector<double> target(x);
    target.push_back(1.0);
    for (std::size_t k = 2; k <= dim + 1 && k <= points.size(); ++k) {
        const bool hit = for_each_subset(points.size(), k, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::vector<double>> a(dim + 1, std::vector<double>(k));
            for (std::size_t c = 0; c < k; ++c) {
                for (std::size_t r = 0; r < dim; ++r) a[r][c] = points[idx[c]][r];
                a[dim][c] = 1.0;
            }
            auto w = solve_checked(a, target, tol);
            if (!w) return false;
            for (double wi : *w)
                if (wi < -tol) return false;
            return true;
        });
        if (hit) return true;
    }
    return false;
}

bool cone_member(const RealVec& x, const std::vector<RealVec>& rays, double tol) {
    const std::size_t dim = x.size();
    if (norm(x) <= tol) return true;
    for (std::size_t k = 1; k <= dim && k <= rays.size(); ++k) {
        const bool hit = for_each_subset(rays.size(), k, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::vector<double>> a(dim, std::vector<double>(k));
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t r = 0; r < dim; ++r) a[r][c] = rays[idx[c]][r];
            auto w = solve_checked(a, x, tol);
            if (!w) return false;
            for (double wi : *w)
                if (wi < -tol) return false;
            return true;
        });
        if (hit) return true;
    }
    return false;
}

}  // namespace gptaudit
