#include "bpb/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace bpb {

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau with rows [A | b], basis tracking, Bland pivoting.
struct Tableau {
    std::size_t m, n;  // constraints, variables (incl. artificials)
    std::vector<std::vector<double>> t;  // m x (n+1)
    std::vector<double> cost;            // n, reduced via basis
    std::vector<std::size_t> basis;      // m

    void pivot(std::size_t r, std::size_t c) {
        double p = t[r][c];
        for (std::size_t j = 0; j <= n; ++j) t[r][j] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            double f = t[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[r][j];
        }
        double f = cost[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j < n; ++j) cost[j] -= f * t[r][j];
            obj += f * t[r][n];
        }
        basis[r] = c;
    }

    double obj = 0.0;

    // Returns false if unbounded.
    bool run() {
        for (;;) {
            // Bland: smallest index with negative reduced cost.
            std::size_t c = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (cost[j] < -kPivotEps) {
                    c = j;
                    break;
                }
            }
            if (c == n) return true;
            std::size_t r = m;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][c] > kPivotEps) {
                    double ratio = t[i][n] / t[i][c];
                    if (ratio < best - kPivotEps ||
                        (ratio < best + kPivotEps && (r == m || basis[i] < basis[r]))) {
                        best = ratio;
                        r = i;
                    }
                }
            }
            if (r == m) return false;
            pivot(r, c);
        }
    }
};

}  // namespace

LpResult lp_solve(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();

    Tableau tab;
    tab.m = m;
    tab.n = n + m;  // artificials appended
    tab.t.assign(m, std::vector<double>(tab.n + 1, 0.0));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double sign = (b[i] < 0.0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = sign * A[i][j];
        tab.t[i][n + i] = 1.0;
        tab.t[i][tab.n] = sign * b[i];
        tab.basis[i] = n + i;
    }

    // Phase 1: minimize sum of artificials.
    tab.cost.assign(tab.n, 0.0);
    for (std::size_t i = 0; i < m; ++i) tab.cost[n + i] = 1.0;
    tab.obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < tab.n; ++j) tab.cost[j] -= tab.t[i][j];
        tab.obj += tab.t[i][tab.n];
    }
    if (!tab.run()) return {LpStatus::Infeasible, 0.0, {}};
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= n) infeas += tab.t[i][tab.n];
    if (infeas > 1e-7) return {LpStatus::Infeasible, 0.0, {}};

    // Drive leftover artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] >= n) {
            std::size_t c2 = tab.n;
            for (std::size_t j = 0; j < n; ++j) {
                if (std::abs(tab.t[i][j]) > kPivotEps) {
                    c2 = j;
                    break;
                }
            }
            if (c2 < tab.n) tab.pivot(i, c2);
            // Otherwise the row is redundant; the artificial stays at zero.
        }
    }

    // Phase 2 on the original cost, artificials pinned by a huge cost.
    tab.cost.assign(tab.n, 0.0);
    for (std::size_t j = 0; j < n; ++j) tab.cost[j] = c[j];
    for (std::size_t i = 0; i < m; ++i) tab.cost[n + i] = 1e30;
    tab.obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t bj = tab.basis[i];
        double f = tab.cost[bj];
        if (f != 0.0) {
            for (std::size_t j = 0; j < tab.n; ++j) tab.cost[j] -= f * tab.t[i][j];
            tab.obj += f * tab.t[i][tab.n];
        }
    }
    if (!tab.run()) return {LpStatus::Unbounded, 0.0, {}};

    LpResult res;
    res.status = LpStatus::Optimal;
    res.x.assign(n, 0.0);
    double obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][tab.n];
    }
    for (std::size_t j = 0; j < n; ++j) obj += c[j] * res.x[j];
    res.objective = obj;
    return res;
}

}  // namespace bpb
