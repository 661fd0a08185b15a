#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bpb/lp.hpp"
#include "bpb/polytope.hpp"
#include "bpb/space.hpp"
#include "doctest.h"

using namespace bpb;

namespace {

std::vector<Vec> square_vertices() { return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; }
std::vector<Vec> cross_vertices() { return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}; }

bool contains_vec(const std::vector<Vec>& set, const Vec& v, double tol = 1e-9) {
    for (const Vec& w : set)
        if (w.size() == v.size() && dist_inf_coords(w, v) <= tol) return true;
    return false;
}

bool same_vec_set(std::vector<Vec> a, std::vector<Vec> b, double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    for (const Vec& v : a)
        if (!contains_vec(b, v, tol)) return false;
    return true;
}

// Gauge via an LP over the vertex hull: min sum(mu) s.t. sum mu_j v_j = x,
// mu >= 0. Valid because the vertex list is closed under negation, so the
// hull is absolutely convex. Independent of the facet representation.
double gauge_vertex_lp(const Vec& x, const std::vector<Vec>& verts) {
    const std::size_t d = x.size(), k = verts.size();
    std::vector<std::vector<double>> A(d, std::vector<double>(k));
    std::vector<double> b(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) A[i][j] = verts[j][i];
        b[i] = x[i];
    }
    std::vector<double> c(k, 1.0);
    LpResult r = lp_solve(A, b, c);
    REQUIRE(r.status == LpStatus::Optimal);
    return r.objective;
}

// Independent facet oracle for 3-D polytopes: fit a plane through each
// vertex triple by cross product, normalize to <n, v> = 1, and keep it if
// all vertices lie on one side. Distinct method from hull_facets' linear
// solve.
std::vector<Vec> facet_normals_cross_oracle(const std::vector<Vec>& verts) {
    std::vector<Vec> normals;
    const std::size_t n = verts.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                Vec u = sub(verts[b], verts[a]);
                Vec w = sub(verts[c], verts[a]);
                Vec cr{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                       u[0] * w[1] - u[1] * w[0]};
                if (norm2(cr) <= 1e-10) continue;  // collinear triple
                double offset = pairing(cr, verts[a]);
                if (std::abs(offset) <= 1e-10) continue;  // plane through origin
                Vec nrm = scale(cr, 1.0 / offset);
                bool one_sided = true;
                for (const Vec& v : verts)
                    if (pairing(nrm, v) > 1.0 + 1e-9) {
                        one_sided = false;
                        break;
                    }
                if (one_sided && !contains_vec(normals, nrm, 1e-7)) normals.push_back(nrm);
            }
    return normals;
}

}  // namespace

TEST_CASE("polytope: validation rejects bad vertex sets") {
    CHECK_THROWS_AS(SymmetricPolytope({{1, 0}, {0, 1}}), BadParameter);  // not symmetric
    CHECK_THROWS_AS(SymmetricPolytope({{1, 0}, {-1, 0}}), DegeneratePolytope);  // flat in 2-D
    // Redundant vertex: (0.5, 0.5) inside the square.
    CHECK_THROWS_AS(
        SymmetricPolytope({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {0.5, 0.5}, {-0.5, -0.5}}),
        BadParameter);
    CHECK_THROWS_AS(SymmetricPolytope({}), DegeneratePolytope);
}

TEST_CASE("polytope: square facets are the coordinate functionals") {
    SymmetricPolytope P(square_vertices());
    auto facets = hull_facets(P);
    REQUIRE(facets.size() == 4);
    std::vector<Vec> normals;
    for (const auto& f : facets) normals.push_back(f.normal);
    CHECK(same_vec_set(normals, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
    for (const auto& f : facets) CHECK(f.vertex_indices.size() == 2);
}

TEST_CASE("polytope: cross-polytope facets are the sign functionals") {
    SymmetricPolytope P(cross_vertices());
    auto facets = hull_facets(P);
    REQUIRE(facets.size() == 4);
    std::vector<Vec> normals;
    for (const auto& f : facets) normals.push_back(f.normal);
    CHECK(same_vec_set(normals, {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
}

TEST_CASE("polytope: polar duality on the catalog") {
    CHECK(same_vec_set(polar(SymmetricPolytope(square_vertices())).vertices(), cross_vertices()));
    // l1^3 ball -> linf^3 ball.
    std::vector<Vec> l1_3{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    auto cube3 = polar(SymmetricPolytope(l1_3)).vertices();
    CHECK(cube3.size() == 8);
    for (const Vec& v : cube3)
        for (double coord : v) CHECK(std::abs(std::abs(coord) - 1.0) <= 1e-9);
}

TEST_CASE("polytope: bipolar reproduces vertices") {
    std::vector<std::vector<Vec>> cases = {square_vertices(), cross_vertices(),
                                           diamond_vertices(0.5), diamond_vertices(0.25),
                                           diamond_vertices(0.75)};
    for (const auto& verts : cases) {
        SymmetricPolytope P(verts);
        auto back = polar(polar(P)).vertices();
        CHECK(same_vec_set(back, verts, 1e-9));
    }
}

TEST_CASE("polytope: facet correctness and symmetry invariants") {
    for (const auto& verts :
         {square_vertices(), cross_vertices(), diamond_vertices(0.5), diamond_vertices(0.8)}) {
        SymmetricPolytope P(verts);
        auto facets = hull_facets(P);
        std::vector<Vec> normals;
        for (const auto& f : facets) {
            normals.push_back(f.normal);
            for (std::size_t i = 0; i < verts.size(); ++i) {
                double pr = pairing(f.normal, verts[i]);
                CHECK(pr <= 1.0 + 1e-9);
                bool incident = std::find(f.vertex_indices.begin(), f.vertex_indices.end(),
                                          static_cast<int>(i)) != f.vertex_indices.end();
                CHECK(incident == (pr >= 1.0 - 1e-9));
            }
        }
        for (const Vec& nrm : normals) CHECK(contains_vec(normals, negate(nrm)));
    }
}

TEST_CASE("polytope: diamond facets match the cross-product oracle") {
    for (double eps : {0.25, 0.5, 0.75}) {
        auto verts = diamond_vertices(eps);
        SymmetricPolytope P(verts);
        auto facets = hull_facets(P);
        std::vector<Vec> normals;
        for (const auto& f : facets) normals.push_back(f.normal);
        auto oracle = facet_normals_cross_oracle(verts);
        CHECK(same_vec_set(normals, oracle, 1e-7));
        // The polar's vertex set is exactly the facet normal set.
        CHECK(same_vec_set(polar(P).vertices(), normals, 1e-9));
    }
    CHECK(hull_facets(SymmetricPolytope(diamond_vertices(0.5))).size() == 28);
}

TEST_CASE("polytope: diamond polar contains the l1-2 copy") {
    auto pv = polar(SymmetricPolytope(diamond_vertices(0.5))).vertices();
    CHECK(contains_vec(pv, {1, 0, 0}));
    CHECK(contains_vec(pv, {-1, 0, 0}));
    CHECK(contains_vec(pv, {0, 1, 0}));
    CHECK(contains_vec(pv, {0, -1, 0}));
}

TEST_CASE("polytope: face lattice of the square") {
    auto g = PolytopeGeometry::build(SymmetricPolytope(square_vertices()));
    // 4 vertices + 4 edges = 8 proper faces.
    REQUIRE(g.lattice.faces.size() == 8);
    int n_vert = 0, n_edge = 0;
    for (const Face& f : g.lattice.faces) {
        if (f.dim == 0) ++n_vert;
        if (f.dim == 1) ++n_edge;
    }
    CHECK(n_vert == 4);
    CHECK(n_edge == 4);
}

TEST_CASE("polytope: conjugate faces of the square") {
    auto g = PolytopeGeometry::build(SymmetricPolytope(square_vertices()));
    const auto& verts = g.ball.vertices();
    const auto& dual_verts = g.polar_ball.vertices();
    for (std::size_t i = 0; i < g.lattice.faces.size(); ++i) {
        const Face& f = g.lattice.faces[i];
        int ci = face_conjugate(g.lattice, static_cast<int>(i));
        const Face& cf = g.polar_lattice.faces[ci];
        // Antitone bijection: facet <-> vertex in 2-D.
        CHECK(f.dim + cf.dim == 1);
        // Pairing 1 on all vertex pairs.
        for (int a : f.vertex_indices)
            for (int b : cf.vertex_indices)
                CHECK(pairing(dual_verts[b], verts[a]) == doctest::Approx(1.0).epsilon(1e-12));
        // Round trip through the polar lattice.
        CHECK(face_conjugate(g.polar_lattice, ci) == static_cast<int>(i));
    }
    // Facet conv{(1,1),(1,-1)} of the square is conjugate to polar vertex (1,0).
    bool found = false;
    for (std::size_t i = 0; i < g.lattice.faces.size(); ++i) {
        const Face& f = g.lattice.faces[i];
        if (f.dim != 1) continue;
        std::vector<Vec> pts;
        for (int a : f.vertex_indices) pts.push_back(verts[a]);
        if (!(contains_vec(pts, {1, 1}) && contains_vec(pts, {1, -1}))) continue;
        found = true;
        const Face& cf = g.polar_lattice.faces[face_conjugate(g.lattice, static_cast<int>(i))];
        REQUIRE(cf.vertex_indices.size() == 1);
        CHECK(dist_inf_coords(dual_verts[cf.vertex_indices[0]], {1, 0}) <= 1e-12);
    }
    CHECK(found);
    CHECK_THROWS_AS(face_conjugate(g.lattice, 99), InvalidFace);
}

TEST_CASE("polytope: diamond conjugate faces pair to one") {
    auto g = PolytopeGeometry::build(SymmetricPolytope(diamond_vertices(0.5)));
    CHECK(g.lattice.faces.size() == 98);
    const auto& verts = g.ball.vertices();
    const auto& dual_verts = g.polar_ball.vertices();
    for (std::size_t i = 0; i < g.lattice.faces.size(); ++i) {
        const Face& f = g.lattice.faces[i];
        const Face& cf = g.polar_lattice.faces[face_conjugate(g.lattice, static_cast<int>(i))];
        for (int a : f.vertex_indices)
            for (int b : cf.vertex_indices)
                CHECK(std::abs(pairing(dual_verts[b], verts[a]) - 1.0) <= 1e-9);
    }
}

TEST_CASE("polytope: dist_to_face examples") {
    auto g = PolytopeGeometry::build(SymmetricPolytope(square_vertices()));
    // Horizontal gap from (0,1) to the right edge.
    CHECK(dist_to_face({0, 1}, {{1, 1}, {1, -1}}, g.facets) == doctest::Approx(1.0).epsilon(1e-9));
    // Point to opposite vertex, delta = 1/2: |1 - sqrt(2 delta) - (-1)| = 1.
    double x1 = 1.0 - std::sqrt(1.0);
    CHECK(dist_to_face({x1, 1}, {{-1, 1}}, g.facets) == doctest::Approx(1.0).epsilon(1e-9));
    // Point on the face.
    Vec argmin;
    CHECK(dist_to_face({1, 0.25}, {{1, 1}, {1, -1}}, g.facets, &argmin) ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(dist_inf_coords(argmin, {1, 0.25}) <= 1e-7);
    CHECK_THROWS_AS(dist_to_face({1, 0, 0}, {{1, 1}}, g.facets), DimensionMismatch);
    CHECK_THROWS_AS(dist_to_face({1, 0}, {}, g.facets), InvalidFace);
}

TEST_CASE("polytope: dist_to_face argmin lies in the face and attains") {
    auto g = PolytopeGeometry::build(SymmetricPolytope(diamond_vertices(0.6)));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1.5, 1.5);
    const auto& faces = g.lattice.faces;
    for (int trial = 0; trial < 40; ++trial) {
        Vec x{unif(rng), unif(rng), unif(rng)};
        const Face& f = faces[static_cast<std::size_t>(trial * 7) % faces.size()];
        std::vector<Vec> pts;
        for (int a : f.vertex_indices) pts.push_back(g.ball.vertices()[a]);
        Vec y;
        double d = dist_to_face(x, pts, g.facets, &y);
        CHECK(d >= -1e-12);
        CHECK(gauge(sub(x, y), g.facets) == doctest::Approx(d).epsilon(1e-7));
        // y must lie on the face: gauge 1 and pairing 1 with the conjugate.
        CHECK(gauge(y, g.facets) == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("polytope: dist_to_face is 1-Lipschitz in the gauge") {
    auto g = PolytopeGeometry::build(SymmetricPolytope(diamond_vertices(0.5)));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(-1.2, 1.2);
    const Face& f = g.lattice.faces[90];  // some facet
    std::vector<Vec> pts;
    for (int a : f.vertex_indices) pts.push_back(g.ball.vertices()[a]);
    for (int trial = 0; trial < 100; ++trial) {
        Vec x{unif(rng), unif(rng), unif(rng)};
        Vec xp{unif(rng), unif(rng), unif(rng)};
        double lhs = std::abs(dist_to_face(x, pts, g.facets) - dist_to_face(xp, pts, g.facets));
        CHECK(lhs <= gauge(sub(x, xp), g.facets) + 1e-8);
    }
}

TEST_CASE("polytope: gauge via facets matches vertex-hull LP oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (const auto& verts : {square_vertices(), cross_vertices(), diamond_vertices(0.5)}) {
        SymmetricPolytope P(verts);
        auto facets = hull_facets(P);
        const int d = P.dim();
        for (int trial = 0; trial < 1000; ++trial) {
            Vec x(d);
            for (double& v : x) v = unif(rng);
            CHECK(gauge(x, facets) == doctest::Approx(gauge_vertex_lp(x, verts)).epsilon(1e-8));
        }
    }
}
