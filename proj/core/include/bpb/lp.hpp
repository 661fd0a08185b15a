#pragma once

#include <vector>

namespace bpb {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status;
    double objective = 0.0;
    std::vector<double> x;
};

/// Two-phase dense simplex for the tiny programs that arise from
/// polyhedral-gauge distance problems (a handful of rows and columns).
/// Solves  min c.z  s.t.  A z = b, z >= 0.  Bland's rule, so it cannot
/// cycle; speed is irrelevant at these sizes.
LpResult lp_solve(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c);

}  // namespace bpb
