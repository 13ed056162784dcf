#pragma once

#include <vector>

namespace gptaudit::detail {

// Phase-1 simplex for { A w = b, w >= 0 }: returns the minimal total
// artificial mass, which is 0 (up to roundoff) iff the system is feasible.
double phase1_infeasibility(std::vector<std::vector<double>> a, std::vector<double> b);

inline bool equality_feasible(std::vector<std::vector<double>> a, std::vector<double> b,
                              double tol = 1e-7) {
    return phase1_infeasibility(std::move(a), std::move(b)) < tol;
}

}  // namespace gptaudit::detail
