#include "bpb/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <random>

namespace bpb {

namespace {

constexpr double kFeasTol = 1e-12;

// Normalization by true division: v/v == 1 exactly in IEEE arithmetic,
// which keeps one-dimensional sphere points at exactly +-1.
Vec div_by(Vec v, double n) {
    for (double& c : v) c /= n;
    return v;
}

bool space_has_exact_distance(const NormedSpace& S) {
    return S.polytopal_backed() || S.kind() == SpaceKind::Euclidean;
}

}  // namespace

double pi_distance_value(const NormedSpace& S, const Vec& x, const Vec& f) {
    if (space_has_exact_distance(S)) return dist_to_pi(S, x, f).distance;
    return dist_to_pi_sampled(S, x, f, 4000, 7u).distance;
}

namespace {

// Pulls (x,f) into the feasible A-set representation used by the search:
// scale into balls (onto spheres when spherical), then check the pairing
// constraint (non-strict, per the closure-invariance of the moduli).
std::optional<BpbPoint> repair(const NormedSpace& S, Vec x, Vec f, double delta, bool spherical) {
    double nx = S.norm(x);
    double nf = S.dual_norm(f);
    if (spherical) {
        if (nx <= 1e-12 || nf <= 1e-12) return std::nullopt;
        x = div_by(std::move(x), nx);
        f = div_by(std::move(f), nf);
    } else {
        if (nx > 1.0) x = div_by(std::move(x), nx);
        if (nf > 1.0) f = div_by(std::move(f), nf);
    }
    if (pairing(f, x) < 1.0 - delta - kFeasTol) return std::nullopt;
    return BpbPoint{std::move(x), std::move(f), delta, spherical};
}

Vec unit_e1(const NormedSpace& S) {
    Vec e1(S.dim(), 0.0);
    e1[0] = 1.0;
    return scale(e1, 1.0 / S.norm(e1));
}

// Known extremal pairs from the closed-form examples, filtered for
// feasibility in the given space/mode.
std::vector<BpbPoint> structured_seeds(const NormedSpace& S, double delta, bool spherical) {
    std::vector<BpbPoint> seeds;
    auto push = [&](const Vec& x, const Vec& f) {
        if (auto p = repair(S, x, f, delta, spherical)) seeds.push_back(std::move(*p));
    };

    Vec x0 = unit_e1(S);
    Vec x0star = S.support_functional(x0).functional;
    push(x0, x0star);  // a Pi point: always feasible, distance 0
    if (delta <= 1.0) push(scale(x0, 1.0 - delta), x0star);
    if (delta > 1.0) {
        double t = std::sqrt(delta - 1.0);
        push(scale(x0, t), scale(x0star, -t));
    }

    if (S.kind() == SpaceKind::Euclidean && S.dim() >= 2) {
        Vec u(S.dim(), 0.0), v(S.dim(), 0.0);
        u[0] = v[0] = std::sqrt(1.0 - delta / 2.0);
        u[1] = std::sqrt(delta / 2.0);
        v[1] = -std::sqrt(delta / 2.0);
        push(u, v);
    }

    if (S.name() == "linf2") {
        double eps = std::sqrt(2.0 * delta);
        push({1.0 - eps, 1.0}, {eps / 2.0, 1.0 - eps / 2.0});
        push({1.0, 1.0 - eps}, {1.0 - eps / 2.0, eps / 2.0});
    }

    if (S.is_direct_sum() && S.combiner() == SumCombiner::L1 && delta <= 0.5) {
        BpbPoint w = l1_sum_witness(S, delta);
        push(w.x, w.f);
    }
    if (S.is_direct_sum() && S.combiner() == SumCombiner::LInf && delta <= 0.5) {
        // Reflexive duality: the l1-sum witness of the dual, roles swapped.
        BpbPoint w = l1_sum_witness(S.dual_space(), delta);
        push(w.f, w.x);
    }
    return seeds;
}

}  // namespace

ModulusEstimate phi_lower(const NormedSpace& S, double delta, bool spherical,
                          const SearchBudget& budget) {
    if (!(delta > 0.0 && delta < 2.0)) throw BadParameter("delta must lie in (0,2)");
    const int n = S.dim();
    std::mt19937_64 rng(budget.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<BpbPoint> starts = structured_seeds(S, delta, spherical);
    for (int s = 0; s < budget.starts; ++s) {
        Vec x(n), f(n);
        for (double& v : x) v = gauss(rng);
        double nx = S.norm(x);
        if (nx <= 1e-12) continue;
        x = div_by(std::move(x), nx);
        f = S.support_functional(x).functional;
        // Half the starts explore away from the support functional.
        if (s % 2 == 1) {
            for (double& v : f) v += 0.25 * gauss(rng);
        }
        if (auto p = repair(S, x, f, delta, spherical)) starts.push_back(std::move(*p));
    }
    if (starts.empty()) throw BudgetTooSmall("no feasible start found");

    ModulusEstimate est;
    est.delta = delta;
    est.spherical = spherical;
    est.lower = -1.0;

    for (const BpbPoint& start : starts) {
        Vec x = start.x, f = start.f;
        double val = pi_distance_value(S, x, f);
        double step = 0.25;
        while (step >= 1e-7) {
            bool improved = false;
            for (int coord = 0; coord < 2 * n && !improved; ++coord) {
                for (double dir : {1.0, -1.0}) {
                    Vec cx = x, cf = f;
                    if (coord < n)
                        cx[coord] += dir * step;
                    else
                        cf[coord - n] += dir * step;
                    auto p = repair(S, cx, cf, delta, spherical);
                    if (!p) continue;
                    double v = pi_distance_value(S, p->x, p->f);
                    if (v > val + 1e-12) {
                        val = v;
                        x = p->x;
                        f = p->f;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (val > est.lower) {
            est.lower = val;
            est.witness = BpbPoint{x, f, delta, spherical};
            est.witness_distance = val;
        }
    }
    est.upper = std::sqrt(2.0 * delta);  // universal cap
    return est;
}

namespace {

struct BnbBox {
    Vec lo, hi;     // 2n coordinates: x part then f part
    Vec eval_x, eval_f;
    double radius = 0.0;  // max d_inf distance from the eval point
    double bound = 0.0;   // value at eval point + radius
};

struct BoundLess {
    bool operator()(const BnbBox& a, const BnbBox& b) const { return a.bound < b.bound; }
};

}  // namespace

ModulusEstimate phi_upper_certified(const NormedSpace& S, double delta, bool spherical,
                                    double mesh_h, const SearchBudget& budget) {
    if (!(delta > 0.0 && delta < 2.0)) throw BadParameter("delta must lie in (0,2)");
    if (!(mesh_h > 0.0)) throw BadParameter("mesh must be positive");
    if (!space_has_exact_distance(S))
        throw UnsupportedSpace("certified bounds need an exact Pi-distance: " + S.name());
    if (S.dim() > 3) throw UnsupportedSpace("certified bounds limited to dim <= 3");

    const int n = S.dim();
    const double root2d = std::sqrt(2.0 * delta);
    const double target = budget.stop_below;
    const double stop_radius = mesh_h / 3.0;

    // Coordinate extents of the two unit balls.
    Vec ext(2 * n);
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        ext[i] = S.dual_norm(e);
        ext[n + i] = S.norm(e);
    }

    long evals = 0;

    auto norm_x = [&](const Vec& v) { return S.norm(v); };
    auto norm_f = [&](const Vec& v) { return S.dual_norm(v); };

    // Exact max of a convex function over the box: the corner maximum.
    auto corner_max_norm = [&](const Vec& lo, const Vec& hi, int offset, auto&& nrm,
                               const Vec& from) {
        double best = 0.0;
        for (int mask = 0; mask < (1 << n); ++mask) {
            Vec corner(n);
            for (int i = 0; i < n; ++i)
                corner[i] = ((mask >> i) & 1) ? hi[offset + i] : lo[offset + i];
            best = std::max(best, nrm(sub(corner, from)));
        }
        return best;
    };
    auto corner_max_norm_abs = [&](const Vec& lo, const Vec& hi, int offset, auto&& nrm) {
        Vec zero(n, 0.0);
        return corner_max_norm(lo, hi, offset, nrm, zero);
    };

    ModulusEstimate est;
    est.delta = delta;
    est.spherical = spherical;
    est.mesh = mesh_h;
    est.lower = 0.0;

    auto try_lower_update = [&](const Vec& px, const Vec& pf, double value_hint) {
        auto p = repair(S, px, pf, delta, spherical);
        if (!p) return;
        double v;
        if (dist_inf_coords(p->x, px) < 1e-15 && dist_inf_coords(p->f, pf) < 1e-15)
            v = value_hint;
        else
            v = pi_distance_value(S, p->x, p->f);
        if (v > est.lower) {
            est.lower = v;
            est.witness = *p;
            est.witness_distance = v;
        }
    };

    auto make_box = [&](Vec lo, Vec hi) -> std::optional<BnbBox> {
        // Pairing range over the box (separable bilinear form, exact).
        double pair_max = 0.0;
        for (int i = 0; i < n; ++i) {
            double a = lo[i], b = hi[i], c = lo[n + i], d = hi[n + i];
            pair_max += std::max(std::max(a * c, a * d), std::max(b * c, b * d));
        }
        if (pair_max < 1.0 - delta - kFeasTol) return std::nullopt;

        Vec cx(n), cf(n);
        for (int i = 0; i < n; ++i) {
            cx[i] = 0.5 * (lo[i] + hi[i]);
            cf[i] = 0.5 * (lo[n + i] + hi[n + i]);
        }
        double rx = corner_max_norm(lo, hi, 0, norm_x, cx);
        double rf = corner_max_norm(lo, hi, n, norm_f, cf);

        // Ball pruning: no point of the box reaches the ball.
        if (norm_x(cx) - rx > 1.0 + kFeasTol) return std::nullopt;
        if (norm_f(cf) - rf > 1.0 + kFeasTol) return std::nullopt;
        if (spherical) {
            if (corner_max_norm_abs(lo, hi, 0, norm_x) < 1.0 - kFeasTol) return std::nullopt;
            if (corner_max_norm_abs(lo, hi, n, norm_f) < 1.0 - kFeasTol) return std::nullopt;
        }

        BnbBox box;
        box.lo = std::move(lo);
        box.hi = std::move(hi);
        // Evaluate at the center pulled into the balls; the Lipschitz
        // bound stays valid for any evaluation point in the box.
        double ncx = norm_x(cx), ncf = norm_f(cf);
        Vec px = ncx > 1.0 ? scale(cx, 1.0 / ncx) : cx;
        Vec pf = ncf > 1.0 ? scale(cf, 1.0 / ncf) : cf;
        box.radius = std::max(corner_max_norm(box.lo, box.hi, 0, norm_x, px),
                              corner_max_norm(box.lo, box.hi, n, norm_f, pf));
        double value = pi_distance_value(S, px, pf);
        ++evals;
        box.bound = value + box.radius;
        try_lower_update(px, pf, value);
        box.eval_x = std::move(px);
        box.eval_f = std::move(pf);
        return box;
    };

    std::priority_queue<BnbBox, std::vector<BnbBox>, BoundLess> queue;
    {
        Vec lo(2 * n), hi(2 * n);
        for (int i = 0; i < 2 * n; ++i) {
            lo[i] = -ext[i];
            hi[i] = ext[i];
        }
        auto root = make_box(std::move(lo), std::move(hi));
        if (!root) {
            // Empty A-set cover; the certificate is the trivial one.
            est.upper = 0.0;
            est.certified = true;
            return est;
        }
        queue.push(std::move(*root));
    }

    double upper = std::numeric_limits<double>::infinity();
    bool converged = false;
    while (!queue.empty()) {
        BnbBox box = queue.top();
        upper = box.bound;
        if (box.radius <= stop_radius) {
            converged = true;
            break;
        }
        if (target >= 0.0 && upper <= target) {
            converged = true;
            break;
        }
        if (evals >= budget.max_evals) break;
        if (queue.size() > 4'000'000) break;
        queue.pop();

        // Split along the widest coordinate relative to its extent.
        int split = 0;
        double widest = -1.0;
        for (int i = 0; i < 2 * n; ++i) {
            double w = (box.hi[i] - box.lo[i]) / std::max(ext[i], 1e-12);
            if (w > widest) {
                widest = w;
                split = i;
            }
        }
        double mid = 0.5 * (box.lo[split] + box.hi[split]);
        Vec lo1 = box.lo, hi1 = box.hi, lo2 = box.lo, hi2 = box.hi;
        hi1[split] = mid;
        lo2[split] = mid;
        if (auto b1 = make_box(std::move(lo1), std::move(hi1))) queue.push(std::move(*b1));
        if (auto b2 = make_box(std::move(lo2), std::move(hi2))) queue.push(std::move(*b2));
        if (queue.empty()) {
            upper = 0.0;
            converged = true;
            break;
        }
    }

    // MeshTooCoarse: the refinement budget ran out before the requested
    // mesh was reached, so the bound may say nothing beyond the trivial
    // sqrt(2 delta) cap. The capped value is still a valid certificate.
    est.vacuous = !converged && upper >= root2d - 1e-12;
    est.upper = std::min(upper, root2d);
    est.certified = true;
    est.mesh = queue.empty() ? 0.0 : queue.top().radius;
    est.enlarged_delta = std::min(2.0, delta + 2.0 * mesh_h);
    return est;
}

double reference_phi(const std::string& name, double delta, bool spherical) {
    if (!(delta > 0.0 && delta < 2.0)) throw OutOfDomain("delta outside (0,2)");
    if (name == "line") {
        if (spherical) return 0.0;
        return delta <= 1.0 ? delta : std::sqrt(delta - 1.0) + 1.0;
    }
    if (name == "euclidean") {
        double s = std::sqrt(2.0 - std::sqrt(4.0 - 2.0 * delta));
        if (spherical) return s;
        return delta <= 1.0 ? std::max(delta, s) : std::sqrt(delta);
    }
    if (name == "linf2") return std::sqrt(2.0 * delta);
    throw OutOfDomain("no reference curve for space: " + name);
}

double a_set_shift_bound(double delta, double delta0) {
    if (!(0.0 < delta && delta < delta0 && delta0 < 2.0))
        throw OutOfDomain("need 0 < delta < delta0 < 2");
    if (delta <= 1.0 && delta0 <= 1.0) {
        double s0 = std::sqrt(1.0 - delta0);
        return 2.0 * (std::sqrt(1.0 - delta) - s0) / (1.0 - s0);
    }
    if (delta >= 1.0 && delta0 >= 1.0) {
        double rad = std::sqrt(1.0 - 2.0 * delta + delta * delta0);
        return 2.0 * ((2.0 - delta0) / delta0) * (delta0 - delta) / (delta0 - 1.0 + rad);
    }
    throw OutOfDomain("delta and delta0 straddle 1; split the interval");
}

double spherical_shift_bound(double delta, double delta0) {
    if (!(0.0 < delta && delta < delta0 && delta0 < 2.0))
        throw OutOfDomain("need 0 < delta < delta0 < 2");
    if (delta < 1.0) return 4.0 * (delta0 - delta) / delta0;
    if (delta > 2.0 - std::sqrt(2.0 - delta0)) return 2.0 * (delta0 - delta) / (2.0 - delta);
    throw OutOfDomain("spherical shift bound: delta outside both case ranges");
}

std::vector<ModulusEstimate> phi_curve(const NormedSpace& S, const std::vector<double>& deltas,
                                       bool spherical, const SearchBudget& budget) {
    std::vector<ModulusEstimate> curve;
    for (double d : deltas) {
        if (!(d > 0.0 && d < 2.0)) throw BadParameter("curve grid must lie in (0,2)");
        curve.push_back(phi_lower(S, d, spherical, budget));
    }
    // Isotonic pass: the moduli are increasing, so running maxima are
    // still valid lower bounds.
    double run = 0.0;
    for (ModulusEstimate& e : curve) {
        run = std::max(run, e.lower);
        e.lower = run;
    }
    return curve;
}

}  // namespace bpb
