#include "bpb/squareness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bpb {

namespace {

double defect_of(const NormedSpace& S, const Vec& u, const Vec& v) {
    return 2.0 - std::min(S.norm(add(u, v)), S.norm(sub(u, v)));
}

// Local pattern search minimizing the defect over sphere pairs.
void refine(const NormedSpace& S, Vec& u, Vec& v, double& best) {
    const int n = S.dim();
    double step = 0.25;
    while (step >= 1e-9) {
        bool improved = false;
        for (int coord = 0; coord < 2 * n && !improved; ++coord) {
            for (double dir : {1.0, -1.0}) {
                Vec cu = u, cv = v;
                if (coord < n)
                    cu[coord] += dir * step;
                else
                    cv[coord - n] += dir * step;
                double nu = S.norm(cu), nv = S.norm(cv);
                if (nu <= 1e-12 || nv <= 1e-12) continue;
                cu = scale(cu, 1.0 / nu);
                cv = scale(cv, 1.0 / nv);
                double d = defect_of(S, cu, cv);
                if (d < best - 1e-13) {
                    best = d;
                    u = cu;
                    v = cv;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
}

}  // namespace

SquareWitness squareness_defect(const NormedSpace& S, const SearchBudget& budget) {
    if (S.dim() < 2) throw BadParameter("squareness needs dim >= 2");

    SquareWitness best;
    auto consider = [&](const Vec& u, const Vec& v) {
        double d = defect_of(S, u, v);
        if (d < best.defect - 1e-13 || best.u.empty() ||
            (d < best.defect + 1e-13 &&
             (lex_less(u, best.u) || (u == best.u && lex_less(v, best.v))))) {
            best.defect = d;
            best.u = u;
            best.v = v;
        }
    };

    if (S.polytopal_backed()) {
        const auto& verts = S.geometry().ball.vertices();
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) consider(verts[i], verts[j]);
    }

    std::mt19937_64 rng(budget.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = S.dim();
    int starts = S.polytopal_backed() ? std::max(4, budget.starts / 8) : budget.starts;
    for (int s = 0; s < starts; ++s) {
        Vec u(n), v(n);
        for (double& t : u) t = gauss(rng);
        for (double& t : v) t = gauss(rng);
        double nu = S.norm(u), nv = S.norm(v);
        if (nu <= 1e-12 || nv <= 1e-12) continue;
        consider(scale(u, 1.0 / nu), scale(v, 1.0 / nv));
    }

    // Refine from the incumbent.
    if (best.u.empty()) throw BudgetTooSmall("no squareness start found");
    double d = best.defect;
    Vec u = best.u, v = best.v;
    refine(S, u, v, d);
    if (d < best.defect) {
        best.defect = d;
        best.u = std::move(u);
        best.v = std::move(v);
    }
    best.defect = std::max(best.defect, 0.0);
    return best;
}

ContainmentReport containment_check(const NormedSpace& S, const std::vector<double>& deltas,
                                    double margin, const SearchBudget& budget) {
    ContainmentReport report;
    report.margin = margin;
    report.dual_defect = squareness_defect(S.dual_space(), budget).defect;
    report.hypothesis = report.dual_defect > margin;
    if (!report.hypothesis) return report;  // contrapositive does not apply

    for (double delta : deltas) {
        if (!(delta > 0.0 && delta < 0.5)) continue;
        double cap = std::sqrt(2.0 * delta);
        SearchBudget b = budget;
        b.stop_below = cap - 1e-6;
        ModulusEstimate est = phi_upper_certified(S, delta, false, 0.02, b);
        ContainmentReport::Entry entry{delta, est.upper, cap, est.upper < cap};
        report.passed = report.passed && entry.ok;
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace bpb
