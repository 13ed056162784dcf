#include "feasibility.hpp"

#include <cmath>
#include <cstddef>

namespace gptaudit::detail {

double phase1_infeasibility(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    if (m == 0) return 0.0;

    for (std::size_t r = 0; r < m; ++r) {
        if (b[r] < 0.0) {
            for (auto& v : a[r]) v = -v;
            b[r] = -b[r];
        }
    }

    // tableau: n structural columns, m artificial columns, rhs; last row is
    // the phase-1 reduced-cost row
    const std::size_t cols = n + m;
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols + 1, 0.0));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) t[r][c] = a[r][c];
        t[r][n + r] = 1.0;
        t[r][cols] = b[r];
    }
    for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += t[r][c];
        t[m][c] = s;
    }
    {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += t[r][cols];
        t[m][cols] = s;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

    const double eps = 1e-9;
    const int max_iter = 50000;
    for (int iter = 0; iter < max_iter; ++iter) {
        // Bland's rule to avoid cycling
        std::size_t enter = cols;
        for (std::size_t c = 0; c < cols; ++c) {
            if (t[m][c] > eps) {
                enter = c;
                break;
            }
        }
        if (enter == cols) break;

        std::size_t leave = m;
        double best = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            if (t[r][enter] > eps) {
                const double ratio = t[r][cols] / t[r][enter];
                if (leave == m || ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
                    best = ratio;
                    leave = r;
                }
            }
        }
        if (leave == m) break;

        const double piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const double f = t[r][enter];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= f * t[leave][c];
        }
        basis[leave] = enter;
    }
    return t[m][cols];
}

}  // namespace gptaudit::detail
