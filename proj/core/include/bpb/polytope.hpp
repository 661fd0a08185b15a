#pragma once

#include <vector>

#include "bpb/vec.hpp"

namespace bpb {

// Tolerances for all polytope computations: incidence tests, normal
// deduplication, and degeneracy rejection.
constexpr double kIncidenceTol = 1e-9;
constexpr double kNormalDedupTol = 1e-7;
constexpr double kDegeneracyTol = 1e-12;

/// Supporting half-space { x : <normal, x> <= 1 } touching the polytope
/// along the listed vertices. Normals are scaled so the maximum of the
/// pairing over the polytope is exactly 1.
struct Facet {
    Vec normal;
    std::vector<int> vertex_indices;
};

/// Origin-symmetric full-dimensional polytope in vertex form. The vertex
/// list contains both v and -v for every vertex, is irredundant, and the
/// origin is strictly interior.
class SymmetricPolytope {
public:
    /// Validates symmetry, full-dimensionality and irredundancy.
    /// Throws DegeneratePolytope / BadParameter on violation.
    explicit SymmetricPolytope(std::vector<Vec> vertices);

    int dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }

private:
    int dim_;
    std::vector<Vec> vertices_;
};

/// Proper face given by its incident vertex indices. `conjugate` indexes
/// the dual face in the polar lattice (set by FaceLattice construction).
struct Face {
    int dim = 0;
    std::vector<int> vertex_indices;
    int conjugate = -1;
};

struct FaceLattice {
    std::vector<Face> faces;  // proper faces only, sorted by (dim, indices)
};

/// Brute-force facet enumeration over dim-subsets of vertices with a
/// one-sidedness test. Coplanar clusters are merged by normal
/// deduplication, so non-simplicial facets come out as single facets.
std::vector<Facet> hull_facets(const SymmetricPolytope& P);

/// Polar dual: vertices of the polar are the facet normals of P.
SymmetricPolytope polar(const SymmetricPolytope& P);

/// Enumerates all proper faces of P (vertices up to facets) as closures
/// of facet-set intersections.
FaceLattice face_lattice(const SymmetricPolytope& P, const std::vector<Facet>& facets);

/// Fills in the conjugate links between the lattice of P and the lattice
/// of its polar: conj(E) = { f in polar : <f, y> = 1 for all y in E }.
/// Requires polar_facets = hull_facets(polar(P)) and both lattices built
/// from the same facet lists.
void link_conjugates(const SymmetricPolytope& P, const std::vector<Facet>& facets,
                     FaceLattice& lattice, const SymmetricPolytope& polarP,
                     const std::vector<Facet>& polar_facets, FaceLattice& polar_lattice);

/// Conjugate lookup with validation.
int face_conjugate(const FaceLattice& L, int face_id);

/// Gauge (Minkowski functional) of the polytope evaluated via the facet
/// maximum: max_F <n_F, x>.
double gauge(const Vec& x, const std::vector<Facet>& facets);

/// min over y in conv(face vertices) of gauge(x - y), solved as an LP.
/// If argmin is non-null it receives the minimizing y.
double dist_to_face(const Vec& x, const std::vector<Vec>& face_vertices,
                    const std::vector<Facet>& ball_facets, Vec* argmin = nullptr);

/// Everything downstream code needs about a polytopal unit ball, built
/// once and shared: facets, polar, both face lattices with conjugate
/// links.
struct PolytopeGeometry {
    SymmetricPolytope ball;
    std::vector<Facet> facets;
    SymmetricPolytope polar_ball;
    std::vector<Facet> polar_facets;
    FaceLattice lattice;
    FaceLattice polar_lattice;

    // Per-face caches for the Pi-distance search: the face's vertex
    // coordinates, and per ball facet the support value
    // max_j <n_F, e_j> over the face vertices. The latter yields the
    // lower bound max_F(<n_F, x> - support) on dist_to_face, exact for
    // vertex faces, used to skip LP solves.
    std::vector<std::vector<Vec>> face_points;
    std::vector<std::vector<double>> face_support;
    std::vector<std::vector<Vec>> polar_face_points;
    std::vector<std::vector<double>> polar_face_support;

    static PolytopeGeometry build(SymmetricPolytope P);
};

}  // namespace bpb
