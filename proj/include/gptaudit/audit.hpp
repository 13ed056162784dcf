#pragma once

#include "gptaudit/discrimination.hpp"
#include "gptaudit/types.hpp"

namespace gptaudit {

// Which pure-effect minimizers must exhibit symmetric errors for a pair to
// satisfy IS: some of them (default) or all of them.
enum class Policy { pure_minimizers_any, pure_minimizers_all };
const char* to_string(Policy p);
Policy policy_from_string(const std::string& s);

struct PairVerdict {
    std::string state_a;
    std::string state_b;
    DiscriminationResult result;
    bool is_satisfied = false;
    double pair_asymmetry = 0.0;
    std::string witness;
};

struct ISReport {
    std::string model;
    Policy policy = Policy::pure_minimizers_any;
    double tolerance = kGeomTol;
    std::vector<PairVerdict> pairs;
    bool satisfied = true;
    double max_asymmetry = 0.0;
};

struct GISRow {
    double p = 0.0;
    std::string description;
    double min_error = 0.0;        // true optimum over the full effect body
    double symmetric_error = 0.0;  // best error among symmetric measurements
    double gap = 0.0;
    double asymmetry = 0.0;        // smallest asymmetry among true minimizers
    bool satisfied = false;
};

struct GISReport {
    std::string model;
    std::vector<GISRow> rows;
    bool satisfied = true;
    double max_gap = 0.0;
    double max_asymmetry = 0.0;
};

// Information-symmetry audit over every pure pair (qubit models: a 50-angle
// grid; toy models: the fixed measurement set).
ISReport audit_is(const ModelSpec& model, double tolerance = kGeomTol,
                  Policy policy = Policy::pure_minimizers_any);

// Generalized IS: pairs of equal-weight mixtures of distinguishable pure
// states sharing one endpoint, per mixing weight in p_grid.
GISReport audit_gis(const ModelSpec& model, const std::vector<double>& p_grid,
                    double tolerance = kGeomTol);

// Best error achievable by a measurement constrained to symmetric errors
// (p12 = p21), over the full effect body of a polytope model.
double best_symmetric_error(const ModelSpec& model, const StateVec& w1, const StateVec& w2);

ISReport audit_spekkens(double tolerance = kGeomTol);

struct SweepRow {
    int m = 0;
    int n = 0;
    double p = 0.0;
    double p_bar = 0.0;
    double abs_diff = 0.0;
};
std::vector<SweepRow> sweep_odd(int m_min, int m_max);

struct EvenSweepRow {
    int m = 0;
    int l = 0;
    int n = 0;
    double p = 0.0;
    double p_bar = 0.0;
    double abs_diff = 0.0;
};
std::vector<EvenSweepRow> sweep_even_case1(int m_min, int m_max);

struct Case2SweepRow {
    int m = 0;
    int l = 0;
    int n = 0;
    double pE = 0.0;
    double min_pure_asymmetry = 0.0;
};
std::vector<Case2SweepRow> sweep_even_case2(int m_min, int m_max);

}  // namespace gptaudit
