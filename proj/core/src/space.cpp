#include "bpb/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bpb {

struct NormedSpace::Impl {
    SpaceKind kind;
    int dim = 0;
    std::string name;
    double p = 2.0;    // Lp only
    double eps = 0.0;  // Diamond only
    std::shared_ptr<const PolytopeGeometry> geom;
    SumCombiner comb = SumCombiner::L1;
    std::vector<NormedSpace> parts;
    std::vector<int> part_offsets;
};

namespace {

using Impl = NormedSpace::Impl;

std::shared_ptr<const PolytopeGeometry> build_geom(std::vector<Vec> verts) {
    return std::make_shared<PolytopeGeometry>(
        PolytopeGeometry::build(SymmetricPolytope(std::move(verts))));
}

// Geometry of the polar ball, reusing an already built primal geometry.
std::shared_ptr<const PolytopeGeometry> swapped_geom(const PolytopeGeometry& g) {
    return std::make_shared<PolytopeGeometry>(
        PolytopeGeometry{g.polar_ball, g.polar_facets, g.ball, g.facets, g.polar_lattice,
                         g.lattice, g.polar_face_points, g.polar_face_support, g.face_points,
                         g.face_support});
}

std::vector<Vec> cube_vertices(int n) {
    std::vector<Vec> verts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        verts.push_back(std::move(v));
    }
    return verts;
}

std::vector<Vec> cross_polytope_vertices(int n) {
    std::vector<Vec> verts;
    for (int i = 0; i < n; ++i) {
        Vec v(n, 0.0);
        v[i] = 1.0;
        verts.push_back(v);
        v[i] = -1.0;
        verts.push_back(v);
    }
    return verts;
}

double holder_conjugate(double p) {
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

double lp_norm(const Vec& x, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

}  // namespace

SpaceKind NormedSpace::kind() const { return impl_->kind; }
int NormedSpace::dim() const { return impl_->dim; }
const std::string& NormedSpace::name() const { return impl_->name; }
bool NormedSpace::polytopal_backed() const { return impl_->geom != nullptr; }

const PolytopeGeometry& NormedSpace::geometry() const {
    if (!impl_->geom) throw UnsupportedSpace("space has no polytopal geometry: " + impl_->name);
    return *impl_->geom;
}

double NormedSpace::lp_p() const { return impl_->p; }
double NormedSpace::diamond_eps() const { return impl_->eps; }
bool NormedSpace::is_direct_sum() const { return impl_->kind == SpaceKind::DirectSum; }
SumCombiner NormedSpace::combiner() const { return impl_->comb; }
const std::vector<NormedSpace>& NormedSpace::sum_parts() const { return impl_->parts; }

double NormedSpace::norm(const Vec& x) const {
    if (static_cast<int>(x.size()) != impl_->dim) throw DimensionMismatch("norm: wrong dimension");
    switch (impl_->kind) {
        case SpaceKind::Euclidean:
            return norm2(x);
        case SpaceKind::Lp:
            return lp_norm(x, impl_->p);
        case SpaceKind::DirectSum:
            if (!impl_->geom) {
                double acc = 0.0;
                for (std::size_t k = 0; k < impl_->parts.size(); ++k) {
                    const NormedSpace& part = impl_->parts[k];
                    Vec xk(x.begin() + impl_->part_offsets[k],
                           x.begin() + impl_->part_offsets[k] + part.dim());
                    double nk = part.norm(xk);
                    acc = impl_->comb == SumCombiner::L1 ? acc + nk : std::max(acc, nk);
                }
                return acc;
            }
            [[fallthrough]];
        default:
            return gauge(x, impl_->geom->facets);
    }
}

double NormedSpace::dual_norm(const Vec& f) const {
    if (static_cast<int>(f.size()) != impl_->dim)
        throw DimensionMismatch("dual_norm: wrong dimension");
    switch (impl_->kind) {
        case SpaceKind::Euclidean:
            return norm2(f);
        case SpaceKind::Lp:
            return lp_norm(f, holder_conjugate(impl_->p));
        case SpaceKind::DirectSum:
            if (!impl_->geom) {
                double acc = 0.0;
                for (std::size_t k = 0; k < impl_->parts.size(); ++k) {
                    const NormedSpace& part = impl_->parts[k];
                    Vec fk(f.begin() + impl_->part_offsets[k],
                           f.begin() + impl_->part_offsets[k] + part.dim());
                    double nk = part.dual_norm(fk);
                    acc = impl_->comb == SumCombiner::L1 ? std::max(acc, nk) : acc + nk;
                }
                return acc;
            }
            [[fallthrough]];
        default: {
            // Polar gauge = maximum of the pairing over the ball vertices.
            double m = 0.0;
            for (const Vec& v : impl_->geom->ball.vertices()) m = std::max(m, pairing(f, v));
            return m;
        }
    }
}

SupportResult NormedSpace::support_functional(const Vec& x) const {
    double nx = norm(x);
    if (nx <= 0.0) throw ZeroVector("support_functional of the zero vector");
    if (impl_->geom) {
        // All maximizing facet normals; their centroid lies in the
        // conjugate face of x's minimal face, so it has dual norm 1 and
        // attains. At a generic point this is the unique maximizing
        // facet; at lower-dimensional faces it is the symmetric interior
        // choice (e.g. the apex of the diamond gets (0,0,4/3), not an
        // arbitrary incident facet). Reported index: lowest maximizer.
        const auto& facets = impl_->geom->facets;
        double best_val = pairing(facets[0].normal, x);
        for (std::size_t i = 1; i < facets.size(); ++i)
            best_val = std::max(best_val, pairing(facets[i].normal, x));
        Vec f(x.size(), 0.0);
        int count = 0, lowest = -1;
        for (std::size_t i = 0; i < facets.size(); ++i) {
            if (pairing(facets[i].normal, x) >= best_val - 1e-9 * std::max(1.0, best_val)) {
                f = add(f, facets[i].normal);
                ++count;
                if (lowest < 0) lowest = static_cast<int>(i);
            }
        }
        return {scale(f, 1.0 / count), lowest};
    }
    if (impl_->kind == SpaceKind::Euclidean) return {scale(x, 1.0 / nx), -1};
    if (impl_->kind == SpaceKind::Lp) {
        double p = impl_->p;
        if (std::isinf(p)) {
            // Maximizing coordinate, lowest index on ties.
            std::size_t best = 0;
            for (std::size_t i = 1; i < x.size(); ++i)
                if (std::abs(x[i]) > std::abs(x[best]) + 1e-12) best = i;
            Vec f(x.size(), 0.0);
            f[best] = x[best] >= 0 ? 1.0 : -1.0;
            return {std::move(f), -1};
        }
        if (p == 1.0) {
            Vec f(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) f[i] = x[i] >= 0 ? 1.0 : -1.0;
            return {std::move(f), -1};
        }
        Vec f(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            f[i] = (x[i] >= 0 ? 1.0 : -1.0) * std::pow(std::abs(x[i]) / nx, p - 1.0);
        return {std::move(f), -1};
    }
    // Non-materialized direct sum.
    Vec f(impl_->dim, 0.0);
    if (impl_->comb == SumCombiner::L1) {
        for (std::size_t k = 0; k < impl_->parts.size(); ++k) {
            const NormedSpace& part = impl_->parts[k];
            Vec xk(x.begin() + impl_->part_offsets[k],
                   x.begin() + impl_->part_offsets[k] + part.dim());
            if (part.norm(xk) <= 0.0) continue;
            SupportResult s = part.support_functional(xk);
            std::copy(s.functional.begin(), s.functional.end(), f.begin() + impl_->part_offsets[k]);
        }
    } else {
        std::size_t best = 0;
        double best_val = -1.0;
        for (std::size_t k = 0; k < impl_->parts.size(); ++k) {
            const NormedSpace& part = impl_->parts[k];
            Vec xk(x.begin() + impl_->part_offsets[k],
                   x.begin() + impl_->part_offsets[k] + part.dim());
            double nk = part.norm(xk);
            if (nk > best_val + 1e-12) {
                best_val = nk;
                best = k;
            }
        }
        const NormedSpace& part = impl_->parts[best];
        Vec xk(x.begin() + impl_->part_offsets[best],
               x.begin() + impl_->part_offsets[best] + part.dim());
        SupportResult s = part.support_functional(xk);
        std::copy(s.functional.begin(), s.functional.end(), f.begin() + impl_->part_offsets[best]);
    }
    return {std::move(f), -1};
}

NormedSpace NormedSpace::dual_space() const {
    auto impl = std::make_shared<Impl>();
    impl->dim = impl_->dim;
    switch (impl_->kind) {
        case SpaceKind::Line:
            return *this;
        case SpaceKind::Euclidean:
            return *this;
        case SpaceKind::Lp: {
            impl->kind = SpaceKind::Lp;
            impl->p = holder_conjugate(impl_->p);
            impl->name = impl_->name + "-dual";
            if (impl_->geom) impl->geom = swapped_geom(*impl_->geom);
            return NormedSpace(std::move(impl));
        }
        case SpaceKind::Polytopal:
        case SpaceKind::Diamond: {
            impl->kind = SpaceKind::Polytopal;
            impl->name = impl_->name + "-dual";
            impl->geom = swapped_geom(*impl_->geom);
            return NormedSpace(std::move(impl));
        }
        case SpaceKind::DirectSum: {
            impl->kind = SpaceKind::DirectSum;
            impl->comb = impl_->comb == SumCombiner::L1 ? SumCombiner::LInf : SumCombiner::L1;
            for (const NormedSpace& part : impl_->parts) impl->parts.push_back(part.dual_space());
            impl->part_offsets = impl_->part_offsets;
            impl->name = impl_->name + "-dual";
            if (impl_->geom) impl->geom = swapped_geom(*impl_->geom);
            return NormedSpace(std::move(impl));
        }
    }
    throw Error("unreachable");
}

std::vector<Vec> diamond_vertices(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw BadParameter("diamond requires eps in (0,1)");
    std::vector<Vec> pts = {
        {0.0, 0.0, 0.75},
        {1.0 - eps, 1.0, eps / 2.0},
        {1.0 - eps, -1.0, eps / 2.0},
        {eps - 1.0, 1.0, eps / 2.0},
        {eps - 1.0, -1.0, eps / 2.0},
        {1.0, 1.0 - eps, eps / 2.0},
        {-1.0, 1.0 - eps, eps / 2.0},
        {1.0, eps - 1.0, eps / 2.0},
        {-1.0, eps - 1.0, eps / 2.0},
        {1.0, 1.0, 0.0},
        {1.0, -1.0, 0.0},
    };
    std::vector<Vec> verts;
    for (const Vec& a : pts) {
        verts.push_back(a);
        verts.push_back(negate(a));
    }
    return verts;
}

NormedSpace NormedSpace::make_line() {
    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::Line;
    impl->dim = 1;
    impl->name = "line";
    impl->geom = build_geom({{1.0}, {-1.0}});
    return NormedSpace(std::move(impl));
}

NormedSpace NormedSpace::make_lp(double p, int n) {
    if (!(p >= 1.0) || n < 1 || n > 4) throw BadParameter("lp requires p >= 1 and n in [1,4]");
    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::Lp;
    impl->dim = n;
    impl->p = p;
    if (std::isinf(p))
        impl->name = "linf" + std::to_string(n);
    else if (p == 1.0)
        impl->name = "l1-" + std::to_string(n);
    else
        impl->name = "lp";
    if (p == 1.0) impl->geom = build_geom(cross_polytope_vertices(n));
    if (std::isinf(p)) impl->geom = build_geom(cube_vertices(n));
    return NormedSpace(std::move(impl));
}

NormedSpace NormedSpace::make_euclidean(int n) {
    if (n < 1 || n > 4) throw BadParameter("euclidean requires n in [1,4]");
    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::Euclidean;
    impl->dim = n;
    impl->name = "euclidean";
    return NormedSpace(std::move(impl));
}

NormedSpace NormedSpace::make_polytopal(SymmetricPolytope P, std::string name) {
    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::Polytopal;
    impl->dim = P.dim();
    impl->name = std::move(name);
    impl->geom = std::make_shared<PolytopeGeometry>(PolytopeGeometry::build(std::move(P)));
    return NormedSpace(std::move(impl));
}

NormedSpace NormedSpace::make_diamond(double eps) {
    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::Diamond;
    impl->dim = 3;
    impl->eps = eps;
    impl->name = "diamond";
    impl->geom = build_geom(diamond_vertices(eps));
    return NormedSpace(std::move(impl));
}

NormedSpace NormedSpace::make_sum(SumCombiner comb, std::vector<NormedSpace> parts) {
    if (parts.size() < 2) throw BadParameter("direct sum needs at least two parts");
    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::DirectSum;
    impl->comb = comb;
    impl->name = comb == SumCombiner::L1 ? "l1sum" : "linfsum";
    int off = 0;
    bool all_polytopal = true;
    for (const NormedSpace& part : parts) {
        impl->part_offsets.push_back(off);
        off += part.dim();
        all_polytopal = all_polytopal && part.polytopal_backed();
    }
    impl->dim = off;
    impl->parts = std::move(parts);
    if (off > 4) all_polytopal = false;
    if (all_polytopal) {
        // Materialize the ball so the one polytopal code path serves sums
        // of catalog spaces too.
        std::vector<Vec> verts;
        if (comb == SumCombiner::L1) {
            for (std::size_t k = 0; k < impl->parts.size(); ++k) {
                for (const Vec& v : impl->parts[k].geometry().ball.vertices()) {
                    Vec w(impl->dim, 0.0);
                    std::copy(v.begin(), v.end(), w.begin() + impl->part_offsets[k]);
                    verts.push_back(std::move(w));
                }
            }
        } else {
            verts.push_back(Vec(impl->dim, 0.0));
            for (std::size_t k = 0; k < impl->parts.size(); ++k) {
                std::vector<Vec> next;
                for (const Vec& w : verts) {
                    for (const Vec& v : impl->parts[k].geometry().ball.vertices()) {
                        Vec w2 = w;
                        std::copy(v.begin(), v.end(), w2.begin() + impl->part_offsets[k]);
                        next.push_back(std::move(w2));
                    }
                }
                verts = std::move(next);
            }
        }
        impl->geom = build_geom(std::move(verts));
    }
    return NormedSpace(std::move(impl));
}

NormedSpace NormedSpace::catalog(const std::string& name, const CatalogParams& params) {
    if (name == "line") return make_line();
    if (name == "linf2") return make_lp(std::numeric_limits<double>::infinity(), 2);
    if (name == "l1-2") return make_lp(1.0, 2);
    if (name == "lp") return make_lp(params.p, params.n);
    if (name == "euclidean") return make_euclidean(params.n);
    if (name == "diamond") return make_diamond(params.eps);
    if (name == "l1sum" || name == "linfsum") {
        std::vector<NormedSpace> parts;
        for (const std::string& part_name : params.parts) parts.push_back(catalog(part_name));
        return make_sum(name == "l1sum" ? SumCombiner::L1 : SumCombiner::LInf, std::move(parts));
    }
    throw UnknownSpace("unknown catalog space: " + name);
}

}  // namespace bpb
