#include "bpb/attainment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace bpb {

bool is_norming_pair(const NormedSpace& S, const NormingPair& pair, double tol) {
    return std::abs(S.norm(pair.x) - 1.0) <= tol && std::abs(S.dual_norm(pair.f) - 1.0) <= tol &&
           std::abs(pairing(pair.f, pair.x) - 1.0) <= tol;
}

PiDecomposition pi_decomposition(const NormedSpace& S) {
    PiDecomposition dec;
    if (S.kind() == SpaceKind::Euclidean) {
        dec.parametric_euclidean = true;
        return dec;
    }
    if (!S.polytopal_backed())
        throw UnsupportedSpace("pi_decomposition needs a finite face lattice: " + S.name());
    const PolytopeGeometry& g = S.geometry();
    for (std::size_t i = 0; i < g.lattice.faces.size(); ++i)
        dec.pairs.emplace_back(static_cast<int>(i), g.lattice.faces[i].conjugate);
    return dec;
}

namespace {

// Pi is symmetric under (y,y*) -> (-y,-y*), so the distance is an even
// function of (x,f). Solver pivot paths are not, so inputs are
// canonicalized by sign to make the symmetry exact, not just approximate.
bool negate_canonical(const Vec& x, const Vec& f) {
    for (const Vec* v : {&x, &f})
        for (double c : *v) {
            if (c < 0.0) return true;
            if (c > 0.0) return false;
        }
    return false;
}

}  // namespace

PiDistance dist_to_pi(const NormedSpace& S, const Vec& x, const Vec& f) {
    if (static_cast<int>(x.size()) != S.dim() || static_cast<int>(f.size()) != S.dim())
        throw DimensionMismatch("dist_to_pi: wrong dimension");
    if (negate_canonical(x, f)) {
        PiDistance r = dist_to_pi(S, negate(x), negate(f));
        r.witness.x = negate(r.witness.x);
        r.witness.f = negate(r.witness.f);
        return r;
    }
    if (S.kind() == SpaceKind::Euclidean) return dist_to_pi_euclidean(x, f);
    if (!S.polytopal_backed())
        throw UnsupportedSpace("dist_to_pi needs a finite face lattice: " + S.name());

    const PolytopeGeometry& g = S.geometry();
    const std::size_t nf = g.lattice.faces.size();

    // Facet pairings of the query points, shared across all faces.
    std::vector<double> px(g.facets.size()), pf(g.polar_facets.size());
    for (std::size_t i = 0; i < g.facets.size(); ++i) px[i] = pairing(g.facets[i].normal, x);
    for (std::size_t i = 0; i < g.polar_facets.size(); ++i)
        pf[i] = pairing(g.polar_facets[i].normal, f);

    // Lower bound on the pair objective: gauge(x - y) >= <n, x> - max_E <n, .>
    // for every ball facet normal n and y in the face, exact for vertex faces.
    auto face_bound = [](const std::vector<double>& p, const std::vector<double>& sup) {
        double m = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, p[i] - sup[i]);
        return m;
    };
    std::vector<double> bound(nf);
    std::vector<int> order(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        int conj = g.lattice.faces[i].conjugate;
        bound[i] = std::max(face_bound(px, g.face_support[i]),
                            face_bound(pf, g.polar_face_support[conj]));
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return bound[a] < bound[b]; });

    PiDistance best;
    best.distance = std::numeric_limits<double>::infinity();
    for (int fi : order) {
        if (bound[fi] >= best.distance) break;  // sorted: no later face can win
        const std::vector<Vec>& pts = g.face_points[fi];
        const std::vector<Vec>& dual_pts = g.polar_face_points[g.lattice.faces[fi].conjugate];

        Vec y, ystar;
        double dx = dist_to_face(x, pts, g.facets, &y);
        if (dx >= best.distance) continue;  // max cannot beat current best
        double df = dist_to_face(f, dual_pts, g.polar_facets, &ystar);
        double d = std::max(dx, df);
        if (d < best.distance - 1e-15) {
            best.distance = d;
            best.witness = NormingPair{std::move(y), std::move(ystar)};
        }
    }
    return best;
}

PiDistance dist_to_pi_euclidean(const Vec& x, const Vec& f) {
    const std::size_t n = x.size();
    if (f.size() != n) throw DimensionMismatch("dist_to_pi_euclidean: size mismatch");

    auto objective_at = [&](const Vec& z) {
        return std::max(norm2(sub(x, z)), norm2(sub(f, z)));
    };

    if (n == 1) {
        Vec zp{1.0}, zm{-1.0};
        double dp = objective_at(zp), dm = objective_at(zm);
        PiDistance r;
        if (dp <= dm) {
            r.distance = dp;
            r.witness = {zp, zp};
        } else {
            r.distance = dm;
            r.witness = {zm, zm};
        }
        return r;
    }

    // Orthonormal basis of span{x,f}, padded with a coordinate direction
    // when degenerate.
    Vec b1, b2;
    if (norm2(x) > 1e-14)
        b1 = scale(x, 1.0 / norm2(x));
    else if (norm2(f) > 1e-14)
        b1 = scale(f, 1.0 / norm2(f));
    else {
        b1 = Vec(n, 0.0);
        b1[0] = 1.0;
    }
    Vec resid = sub(f, scale(b1, pairing(b1, f)));
    if (norm2(resid) > 1e-12) {
        b2 = scale(resid, 1.0 / norm2(resid));
    } else {
        // Pick the coordinate direction least aligned with b1.
        std::size_t k = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(b1[i]) < std::abs(b1[k])) k = i;
        Vec e(n, 0.0);
        e[k] = 1.0;
        resid = sub(e, scale(b1, pairing(b1, e)));
        b2 = scale(resid, 1.0 / norm2(resid));
    }

    auto z_of = [&](double theta) {
        Vec z(n);
        double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t i = 0; i < n; ++i) z[i] = c * b1[i] + s * b2[i];
        return z;
    };

    // The optimum lies on the circle in span{b1,b2}. The objective is a
    // max of two functions of theta, each with a single local minimum
    // (the projection of x resp. f), so the minimizer is one of: the two
    // projections, or a crossing point where both distances agree (the
    // bisector plane <z, f-x> = (|f|^2 - |x|^2)/2 cut with the circle).
    double a1 = pairing(x, b1), a2 = pairing(x, b2);
    double c1 = pairing(f, b1), c2 = pairing(f, b2);
    std::vector<double> thetas;
    if (std::hypot(a1, a2) > 1e-14) thetas.push_back(std::atan2(a2, a1));
    if (std::hypot(c1, c2) > 1e-14) thetas.push_back(std::atan2(c2, c1));
    double d1 = c1 - a1, d2 = c2 - a2;
    double dn = std::hypot(d1, d2);
    if (dn > 1e-14) {
        double e = 0.5 * (c1 * c1 + c2 * c2 - a1 * a1 - a2 * a2);
        if (std::abs(e) <= dn) {
            double phi = std::atan2(d2, d1);
            double off = std::acos(std::clamp(e / dn, -1.0, 1.0));
            thetas.push_back(phi + off);
            thetas.push_back(phi - off);
        }
    }
    if (thetas.empty()) thetas.push_back(0.0);

    double best_theta = thetas[0], best_val = std::numeric_limits<double>::infinity();
    for (double theta : thetas) {
        double v = objective_at(z_of(theta));
        if (v < best_val) {
            best_val = v;
            best_theta = theta;
        }
    }
    PiDistance r;
    r.distance = best_val;
    Vec z = z_of(best_theta);
    r.witness = {z, z};
    return r;
}

PiDistance dist_to_pi_sampled(const NormedSpace& S, const Vec& x, const Vec& f, int samples,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PiDistance best;
    best.distance = std::numeric_limits<double>::infinity();
    const int n = S.dim();
    for (int s = 0; s < samples; ++s) {
        Vec z(n);
        for (double& v : z) v = gauss(rng);
        double nz = S.norm(z);
        if (nz <= 1e-12) continue;
        z = scale(z, 1.0 / nz);
        Vec zstar = S.support_functional(z).functional;
        double d = std::max(S.norm(sub(x, z)), S.dual_norm(sub(f, zstar)));
        if (d < best.distance) {
            best.distance = d;
            best.witness = {std::move(z), std::move(zstar)};
        }
    }
    return best;
}

BpbPoint l1_sum_witness(const NormedSpace& S, double delta) {
    if (!S.is_direct_sum() || S.combiner() != SumCombiner::L1)
        throw UnsupportedSpace("l1_sum_witness needs an l1 direct sum");
    if (!(delta > 0.0 && delta <= 0.5)) throw BadParameter("l1_sum_witness needs delta in (0,1/2]");

    const auto& parts = S.sum_parts();
    // Norming pairs in the first two summands, in the e1 direction.
    auto part_pi = [](const NormedSpace& part) {
        Vec e1(part.dim(), 0.0);
        e1[0] = 1.0;
        Vec y0 = scale(e1, 1.0 / part.norm(e1));
        Vec y0star = part.support_functional(y0).functional;
        return NormingPair{std::move(y0), std::move(y0star)};
    };
    NormingPair py = part_pi(parts[0]);
    NormingPair pz = part_pi(parts[1]);

    int off_y = 0;
    int off_z = parts[0].dim();
    const double root = std::sqrt(2.0 * delta);
    BpbPoint w;
    w.delta = delta;
    w.spherical = false;
    w.x.assign(S.dim(), 0.0);
    w.f.assign(S.dim(), 0.0);
    for (int i = 0; i < parts[0].dim(); ++i) {
        w.x[off_y + i] = (root / 2.0) * py.x[i];
        w.f[off_y + i] = (1.0 - root) * py.f[i];
    }
    for (int i = 0; i < parts[1].dim(); ++i) {
        w.x[off_z + i] = (1.0 - root / 2.0) * pz.x[i];
        w.f[off_z + i] = pz.f[i];
    }
    return w;
}

}  // namespace bpb
