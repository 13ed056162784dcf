#include "gptaudit/selfcheck.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gptaudit/audit.hpp"
#include "gptaudit/discrimination.hpp"
#include "gptaudit/geometry.hpp"
#include "gptaudit/models.hpp"
#include "gptaudit/serialization.hpp"

namespace gptaudit {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

struct Check {
    std::string name;
    bool pass = true;
    std::ostringstream detail;

    explicit Check(std::string n) : name(std::move(n)) {}

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    CheckResult done(const std::string& ok_msg) {
        CheckResult r;
        r.name = name;
        r.pass = pass;
        r.detail = pass ? ok_msg : detail.str();
        return r;
    }
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool unordered_pair_close(double a1, double a2, double b1, double b2, double tol) {
    return (close(a1, b1, tol) && close(a2, b2, tol)) ||
           (close(a1, b2, tol) && close(a2, b1, tol));
}

CheckResult check_pentagon() {
    Check c("pentagon neighbor MESD");
    const double expected_pE = (3.0 - std::sqrt(5.0)) / 4.0;
    const double expected_hi = (3.0 - std::sqrt(5.0)) / 2.0;

    const auto model = polygon_model(5);
    const auto r = mesd_polytope(model, model.pure_states[0], model.pure_states[1]);
    c.require(close(r.pE, expected_pE, 1e-9), "enumeration pE " + format_sig(r.pE));
    c.require(unordered_pair_close(r.p12, r.p21, 0.0, expected_hi, 1e-9),
              "error pair (" + format_sig(r.p12) + ", " + format_sig(r.p21) + ")");

    const auto f = oddgon_closed_form(5);
    c.require(f.k_opt == 1, "k_opt " + std::to_string(f.k_opt));
    c.require(close(0.5 * (f.p + f.p_bar), expected_pE, 1e-9),
              "closed-form pE " + format_sig(0.5 * (f.p + f.p_bar)));
    c.require(unordered_pair_close(f.p, f.p_bar, 0.0, expected_hi, 1e-9),
              "closed-form pair (" + format_sig(f.p) + ", " + format_sig(f.p_bar) + ")");

    const auto o = brute_force_oracle(model, model.pure_states[0], model.pure_states[1], 40);
    c.require(close(o.pE, expected_pE, 1e-6), "oracle pE " + format_sig(o.pE));
    return c.done("pE = " + format_sig(r.pE) + ", error pair {0, " + format_sig(expected_hi) +
                  "}, closed form and resolution-40 oracle agree");
}

CheckResult check_odd_sweep(std::vector<std::string>& notes) {
    Check c("odd-gon sweep m=2..50: abs_diff positive and strictly decreasing");
    const auto rows = sweep_odd(2, 50);
    c.require(rows.size() == 49, "row count " + std::to_string(rows.size()));
    c.require(close(rows.front().abs_diff, (3.0 - std::sqrt(5.0)) / 2.0, 1e-9),
              "first abs_diff " + format_sig(rows.front().abs_diff));
    int upticks = 0;
    std::string first_uptick;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        c.require(rows[i].abs_diff > 0.0,
                  "abs_diff not positive at m=" + std::to_string(rows[i].m));
        if (i > 0 && rows[i].abs_diff >= rows[i - 1].abs_diff) {
            ++upticks;
            if (upticks == 1) {
                first_uptick = "m=" + std::to_string(rows[i - 1].m) + ": " +
                               format_sig(rows[i - 1].abs_diff) + " -> m=" +
                               std::to_string(rows[i].m) + ": " + format_sig(rows[i].abs_diff);
            }
        }
    }
    c.require(upticks == 0, "not strictly decreasing: " + std::to_string(upticks) +
                                " upticks, first at " + first_uptick);
    if (upticks > 0) {
        notes.push_back(
            "odd-gon sweep: |p - p_bar| at the optimal measurement is NOT strictly decreasing "
            "in m; it decays in envelope but oscillates between the n = 4j+3 and n = 4j+1 "
            "polygon classes (every uptick is an odd m -> even m step, e.g. " +
            first_uptick +
            "). The closed form and exhaustive enumeration agree on every value to 1e-9, so "
            "the oscillation is a property of the optimum itself, not of either route");
    }
    return c.done("49 rows, first abs_diff = " + format_sig(rows.front().abs_diff) +
                  ", strictly decreasing, every row cross-checked against enumeration");
}

CheckResult check_even_case1() {
    Check c("even-gon case I (n=4m, m<=10)");
    int count = 0;
    for (int m = 2; m <= 10; ++m) {
        for (int l = 1; l <= m - 1; ++l) {
            const auto e = evengon_case1(m, l);
            ++count;
            c.require(e.agrees_with_direct, "formula/enumeration mismatch at m=" +
                                                std::to_string(m) + " l=" + std::to_string(l));
            c.require(e.abs_diff > 1e-6, "symmetric optimum at m=" + std::to_string(m) +
                                             " l=" + std::to_string(l));
        }
    }
    return c.done(std::to_string(count) +
                  " (m,l) pairs agree with enumeration within 1e-9; abs_diff > 1e-6 everywhere");
}

CheckResult check_even_case2(std::vector<std::string>& notes) {
    Check c("even-gon case II (n=4m+2, m<=10)");
    for (int m = 1; m <= 10; ++m) {
        for (int l = 1; l <= m; ++l) {
            const auto e = evengon_case2(m, l);
            c.require(e.min_pure_asymmetry > 1e-6,
                      "symmetric pure-effect optimum at m=" + std::to_string(m) +
                          " l=" + std::to_string(l));
            bool corrected_ok = false;
            for (const auto& cand : e.candidates) {
                corrected_ok = corrected_ok || cand.corrected_matches_direct;
            }
            c.require(corrected_ok, "no corrected-index candidate matches enumeration at m=" +
                                        std::to_string(m) + " l=" + std::to_string(l));
        }
    }
    const auto hexagon = evengon_case2(1, 1);
    c.require(close(hexagon.min_pure_asymmetry, 0.5, 1e-9),
              "hexagon minimizer asymmetry " + format_sig(hexagon.min_pure_asymmetry));
    for (const auto& cand : hexagon.candidates) {
        if (cand.k != 1) continue;
        std::ostringstream os;
        os << "documented discrepancy (not a failure): the printed complementary-error "
              "expression with index 2k-1 evaluates to "
           << format_sig(cand.p_bar_printed) << " at n=6, k=1, while direct enumeration gives "
           << format_sig(0.5) << "; the 2k+1 variant gives " << format_sig(cand.p_bar_corrected)
           << " and agrees";
        notes.push_back(os.str());
    }
    return c.done(
        "every pure-effect minimizer asymmetric (> 1e-6); hexagon asymmetry exactly 1/2");
}

CheckResult check_squit() {
    Check c("squit: perfect pure pairs, GIS violated");
    const auto model = squit_model();
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const auto r = mesd_polytope(model, model.pure_states[i], model.pure_states[j]);
            c.require(close(r.pE, 0.0, 1e-12), "pair (" + std::to_string(i) + "," +
                                                   std::to_string(j) + ") pE " +
                                                   format_sig(r.pE));
        }
    }

    const std::vector<double> grid = {0.6, 0.75, 0.9};
    const auto rep = audit_gis(model, grid);
    c.require(!rep.satisfied, "GIS verdict satisfied");
    for (double p : grid) {
        bool violated_at_p = false;
        for (const auto& row : rep.rows) {
            if (close(row.p, p, 1e-15) && !row.satisfied && row.gap > 1e-9) violated_at_p = true;
        }
        c.require(violated_at_p, "no strict violation at p=" + format_sig(p));
    }

    // the canonical neighbor-mix pair: w = p w1 + (1-p) w2, w' = p w0 + (1-p) w1
    const StateVec w = mix_states(model, 1, 2, 0.75);
    const StateVec wp = mix_states(model, 0, 1, 0.75);
    const auto direct = mesd_polytope(model, w, wp);
    const double sym = best_symmetric_error(model, w, wp);
    c.require(close(direct.pE, 0.125, 1e-9), "pure minimum " + format_sig(direct.pE));
    c.require(close(sym, 0.1875, 1e-9), "symmetric-measurement error " + format_sig(sym));
    return c.done("all 6 pure pairs discriminate perfectly; at p=0.75 symmetric error 0.1875 vs "
                  "minimum 0.125");
}

CheckResult check_quantum(double sym_tol) {
    Check c("quantum: Helstrom value, IS and GIS");
    const double expected = 0.5 * (1.0 - std::sqrt(0.5));
    const double h = helstrom(0.5, 0.5);
    c.require(close(h, expected, 1e-12), "helstrom(1/2,1/2) " + format_sig(h));

    const double s = std::sin(kPi / 4.0);
    const double cz = std::cos(kPi / 4.0);
    const auto q = mesd_qubit({s, 0.0, cz}, {-s, 0.0, cz});
    c.require(close(q.pE, h, 1e-9), "mesd_qubit pE " + format_sig(q.pE));
    c.require(std::abs(q.p12 - q.p21) <= sym_tol,
              "straddling pair asymmetry " + format_sig(q.p12 - q.p21));

    const auto is_rep = audit_is(qubit_model(), std::max(sym_tol, 0.0));
    c.require(is_rep.satisfied && is_rep.max_asymmetry < 1e-9,
              "IS audit max asymmetry " + format_sig(is_rep.max_asymmetry));

    const auto gis_rep = audit_gis(qubit_model(), {0.6, 0.75, 0.9});
    c.require(gis_rep.satisfied && gis_rep.max_asymmetry < 1e-9,
              "GIS audit max asymmetry " + format_sig(gis_rep.max_asymmetry));
    return c.done("helstrom(1/2,1/2) = " + format_sig(h) +
                  "; qubit errors exactly symmetric over 50 sampled angles (IS and GIS)");
}

CheckResult check_spekkens() {
    Check c("Spekkens toy bit: IS violated");
    const auto model = spekkens_model();
    const int a = spekkens_state_index("1v2");
    const int b = spekkens_state_index("1v3");
    const auto r = mesd_spekkens(model, a, b);
    c.require(close(r.pE, 0.25, 1e-12), "pE " + format_sig(r.pE));
    c.require(unordered_pair_close(r.p12, r.p21, 0.0, 0.5, 1e-12),
              "error pair (" + format_sig(r.p12) + ", " + format_sig(r.p21) + ")");
    const auto m3 = spekkens_measurement_error(model, 2, a, b);
    c.require(close(m3.pE, 0.5, 1e-12), "M3 error " + format_sig(m3.pE));
    const auto rep = audit_spekkens();
    c.require(!rep.satisfied, "model verdict satisfied");
    c.require(rep.pairs.size() == 15, "pair count " + std::to_string(rep.pairs.size()));
    return c.done("(1v2, 1v3): pE = 1/4 with error pair {0, 1/2}; M3 gives 1/2; verdict violated");
}

CheckResult check_classical() {
    Check c("classical simplices d=2..6");
    for (int d = 2; d <= 6; ++d) {
        const auto model = classical_model(d);
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) {
                const auto r = mesd_polytope(model, model.pure_states[i], model.pure_states[j]);
                c.require(close(r.pE, 0.0, 1e-12),
                          "d=" + std::to_string(d) + " pair pE " + format_sig(r.pE));
            }
        }
        const auto rep = audit_is(model);
        c.require(rep.satisfied, "d=" + std::to_string(d) + " verdict violated");
    }
    return c.done("every pure pair discriminates perfectly; IS satisfied for d=2..6");
}

CheckResult check_properties() {
    Check c("property suite");

    // swap symmetry, exact
    {
        const auto model = polygon_model(7);
        const auto ab = mesd_polytope(model, model.pure_states[0], model.pure_states[1]);
        const auto ba = mesd_polytope(model, model.pure_states[1], model.pure_states[0]);
        c.require(ab.pE == ba.pE && ab.p12 == ba.p21 && ab.p21 == ba.p12,
                  "polygon swap symmetry not exact");
        const auto q1 = mesd_qubit({0.3, 0.1, 0.2}, {-0.5, 0.0, 0.4});
        const auto q2 = mesd_qubit({-0.5, 0.0, 0.4}, {0.3, 0.1, 0.2});
        c.require(q1.pE == q2.pE && q1.p12 == q2.p21 && q1.p21 == q2.p12,
                  "qubit swap symmetry not exact");
    }

    // complement identity and normalization
    for (int n = 3; n <= 8; ++n) {
        const auto model = polygon_model(n);
        for (const auto& w : model.pure_states) {
            c.require(close(inner(model.unit_effect, w.coords), 1.0, 1e-12),
                      "normalization at n=" + std::to_string(n));
            for (const auto& e : model.effects) {
                const double a = inner(e.coords, w.coords);
                const double b =
                    inner(vec_sub(model.unit_effect, e.coords), w.coords);
                c.require(close(a + b, 1.0, 1e-12), "complement identity at n=" + std::to_string(n));
            }
        }
    }

    // rotational reduction: pE depends only on the index separation
    for (int n : {5, 6, 7, 12}) {
        const auto model = polygon_model(n);
        std::vector<double> by_sep(n, -1.0);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const int sep = std::min(j - i, n - (j - i));
                const auto r = mesd_polytope(model, model.pure_states[i], model.pure_states[j]);
                if (by_sep[sep] < 0.0) {
                    by_sep[sep] = r.pE;
                } else {
                    c.require(close(by_sep[sep], r.pE, 1e-12),
                              "rotational reduction broken at n=" + std::to_string(n));
                }
            }
        }
    }

    // self-duality: odd yes (to 41), even no (to 40)
    for (int n = 3; n <= 41; ++n) {
        const bool sd = check_self_duality(polygon_model(n));
        c.require(sd == (n % 2 == 1), "self-duality verdict at n=" + std::to_string(n));
    }

    // oracle agreement across every pure pair of every polygon n <= 16
    for (int n = 3; n <= 16; ++n) {
        const auto model = polygon_model(n);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const auto exact = mesd_polytope(model, model.pure_states[i], model.pure_states[j]);
                const auto oracle =
                    brute_force_oracle(model, model.pure_states[i], model.pure_states[j], 40);
                c.require(close(exact.pE, oracle.pE, 1e-6),
                          "oracle disagreement at n=" + std::to_string(n) + " pair (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }

    // hexagon degeneracy witness
    {
        const auto model = polygon_model(6);
        const auto exact = mesd_polytope(model, model.pure_states[0], model.pure_states[1]);
        c.require(exact.min_pure_asymmetry() > 1e-6, "hexagon pure minimizer symmetric");
        const auto oracle =
            brute_force_oracle(model, model.pure_states[0], model.pure_states[1], 40);
        bool witness = false;
        for (const auto& m : oracle.minimizers) {
            if (m.kind == MinimizerKind::mixed_effect && close(m.p12, 0.25, 1e-9) &&
                close(m.p21, 0.25, 1e-9)) {
                witness = true;
            }
        }
        c.require(witness, "hexagon mixed symmetric minimizer not found by the oracle");
        c.require(close(oracle.pE, 0.25, 1e-9), "hexagon oracle pE " + format_sig(oracle.pE));
    }

    return c.done("swap symmetry exact; complement identity and normalization within 1e-12; "
                  "rotational reduction within 1e-12; self-duality odd/even for n<=40; oracle "
                  "agreement for all polygon pairs n<=16; hexagon mixed-minimizer witness found");
}

}  // namespace

SelfcheckReport run_selfcheck(double qubit_symmetry_tolerance) {
    SelfcheckReport rep;
    rep.checks.push_back(check_pentagon());
    rep.checks.push_back(check_odd_sweep(rep.notes));
    rep.checks.push_back(check_even_case1());
    rep.checks.push_back(check_even_case2(rep.notes));
    rep.checks.push_back(check_squit());
    rep.checks.push_back(check_quantum(qubit_symmetry_tolerance));
    rep.checks.push_back(check_spekkens());
    rep.checks.push_back(check_classical());
    rep.checks.push_back(check_properties());
    rep.all_pass = true;
    for (const auto& chk : rep.checks) rep.all_pass = rep.all_pass && chk.pass;
    return rep;
}

}  // namespace gptaudit
