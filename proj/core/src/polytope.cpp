#include "bpb/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "bpb/lp.hpp"

namespace bpb {

namespace {

// Row rank of a small dense matrix, Gaussian elimination with partial
// pivoting.
int matrix_rank(std::vector<Vec> rows, double tol) {
    if (rows.empty()) return 0;
    const std::size_t ncols = rows[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < rows.size(); ++col) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < rows.size(); ++i)
            if (std::abs(rows[i][col]) > std::abs(rows[piv][col])) piv = i;
        if (std::abs(rows[piv][col]) <= tol) continue;
        std::swap(rows[row], rows[piv]);
        for (std::size_t i = row + 1; i < rows.size(); ++i) {
            double f = rows[i][col] / rows[row][col];
            for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[row][j];
        }
        ++rank;
        ++row;
    }
    return rank;
}

// Affine dimension of a point set.
int affine_dim(const std::vector<Vec>& pts) {
    if (pts.empty()) return -1;
    std::vector<Vec> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    if (diffs.empty()) return 0;
    return matrix_rank(diffs, 1e-9);
}

// Solve M n = ones for the hyperplane <n, v_i> = 1 through the given
// points. Returns false if the system is singular (plane through the
// origin or affinely dependent points).
bool fit_unit_plane(const std::vector<Vec>& pts, Vec& normal) {
    const std::size_t d = pts.size();
    std::vector<Vec> M = pts;
    Vec rhs(d, 1.0);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < d; ++i)
            if (std::abs(M[i][col]) > std::abs(M[piv][col])) piv = i;
        if (std::abs(M[piv][col]) <= kDegeneracyTol) return false;
        std::swap(M[col], M[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t i = col + 1; i < d; ++i) {
            double f = M[i][col] / M[col][col];
            for (std::size_t j = col; j < d; ++j) M[i][j] -= f * M[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    normal.assign(d, 0.0);
    for (std::size_t i = d; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < d; ++j) s -= M[i][j] * normal[j];
        normal[i] = s / M[i][i];
    }
    return all_finite(normal);
}

// Is v in the convex hull of pts? Phase-1 feasibility LP.
bool in_convex_hull(const Vec& v, const std::vector<Vec>& pts) {
    const std::size_t d = v.size();
    const std::size_t k = pts.size();
    if (k == 0) return false;
    std::vector<std::vector<double>> A(d + 1, std::vector<double>(k, 0.0));
    std::vector<double> b(d + 1, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) A[i][j] = pts[j][i];
        b[i] = v[i];
    }
    for (std::size_t j = 0; j < k; ++j) A[d][j] = 1.0;
    b[d] = 1.0;
    std::vector<double> c(k, 0.0);
    return lp_solve(A, b, c).status == LpStatus::Optimal;
}

void next_combination_init(std::vector<int>& idx, int k) {
    idx.resize(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
}

bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

SymmetricPolytope::SymmetricPolytope(std::vector<Vec> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw DegeneratePolytope("empty vertex list");
    dim_ = static_cast<int>(vertices_[0].size());
    if (dim_ < 1 || dim_ > 4) throw BadParameter("dimension must be in [1,4]");
    for (const Vec& v : vertices_) {
        if (static_cast<int>(v.size()) != dim_) throw DimensionMismatch("inconsistent vertex dims");
        if (!all_finite(v)) throw BadParameter("non-finite vertex coordinate");
    }
    // Closed under v -> -v.
    for (const Vec& v : vertices_) {
        Vec nv = negate(v);
        bool found = false;
        for (const Vec& w : vertices_)
            if (dist_inf_coords(nv, w) <= 1e-9) {
                found = true;
                break;
            }
        if (!found) throw BadParameter("vertex set not symmetric under negation");
    }
    if (matrix_rank(vertices_, kDegeneracyTol) < dim_)
        throw DegeneratePolytope("polytope is not full-dimensional");
    // Irredundancy: no vertex in the hull of the others.
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < vertices_.size(); ++j)
            if (j != i) others.push_back(vertices_[j]);
        if (in_convex_hull(vertices_[i], others))
            throw BadParameter("redundant vertex in polytope");
    }
}

std::vector<Facet> hull_facets(const SymmetricPolytope& P) {
    const int d = P.dim();
    const auto& verts = P.vertices();
    const int n = static_cast<int>(verts.size());

    std::vector<Facet> facets;
    std::vector<int> idx;
    next_combination_init(idx, d);
    do {
        std::vector<Vec> pts;
        for (int i : idx) pts.push_back(verts[i]);
        Vec normal;
        if (!fit_unit_plane(pts, normal)) continue;
        bool one_sided = true;
        for (const Vec& w : verts) {
            if (pairing(normal, w) > 1.0 + kIncidenceTol) {
                one_sided = false;
                break;
            }
        }
        if (!one_sided) continue;
        bool dup = false;
        for (const Facet& f : facets) {
            if (dist_inf_coords(f.normal, normal) <= kNormalDedupTol) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        Facet f;
        f.normal = std::move(normal);
        for (int i = 0; i < n; ++i)
            if (pairing(f.normal, verts[i]) >= 1.0 - kIncidenceTol) f.vertex_indices.push_back(i);
        std::vector<Vec> incident;
        for (int i : f.vertex_indices) incident.push_back(verts[i]);
        if (affine_dim(incident) != d - 1) continue;
        facets.push_back(std::move(f));
    } while (next_combination(idx, n));

    if (facets.empty()) throw DegeneratePolytope("no facets found");
    std::sort(facets.begin(), facets.end(),
              [](const Facet& a, const Facet& b) { return lex_less(a.normal, b.normal); });
    return facets;
}

SymmetricPolytope polar(const SymmetricPolytope& P) {
    std::vector<Vec> verts;
    for (const Facet& f : hull_facets(P)) verts.push_back(f.normal);
    return SymmetricPolytope(std::move(verts));
}

FaceLattice face_lattice(const SymmetricPolytope& P, const std::vector<Facet>& facets) {
    std::set<std::vector<int>> sets;
    for (const Facet& f : facets) {
        std::vector<int> s = f.vertex_indices;
        std::sort(s.begin(), s.end());
        sets.insert(std::move(s));
    }
    // Close under pairwise intersection; every proper face is an
    // intersection of the facets containing it.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> current(sets.begin(), sets.end());
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                std::vector<int> inter;
                std::set_intersection(current[i].begin(), current[i].end(), current[j].begin(),
                                      current[j].end(), std::back_inserter(inter));
                if (!inter.empty() && sets.insert(inter).second) grew = true;
            }
        }
    }

    FaceLattice L;
    for (const auto& s : sets) {
        Face face;
        face.vertex_indices = s;
        std::vector<Vec> pts;
        for (int i : s) pts.push_back(P.vertices()[i]);
        face.dim = affine_dim(pts);
        L.faces.push_back(std::move(face));
    }
    std::sort(L.faces.begin(), L.faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertex_indices < b.vertex_indices;
    });
    return L;
}

void link_conjugates(const SymmetricPolytope& P, const std::vector<Facet>& facets,
                     FaceLattice& lattice, const SymmetricPolytope& polarP,
                     const std::vector<Facet>& polar_facets, FaceLattice& polar_lattice) {
    auto conjugate_set = [](const std::vector<Vec>& face_pts, const std::vector<Vec>& dual_verts) {
        std::vector<int> out;
        for (std::size_t j = 0; j < dual_verts.size(); ++j) {
            bool on_all = true;
            for (const Vec& y : face_pts) {
                if (std::abs(pairing(dual_verts[j], y) - 1.0) > kIncidenceTol) {
                    on_all = false;
                    break;
                }
            }
            if (on_all) out.push_back(static_cast<int>(j));
        }
        return out;
    };
    auto find_face = [](const FaceLattice& L, const std::vector<int>& s) {
        for (std::size_t i = 0; i < L.faces.size(); ++i)
            if (L.faces[i].vertex_indices == s) return static_cast<int>(i);
        return -1;
    };

    for (Face& face : lattice.faces) {
        std::vector<Vec> pts;
        for (int i : face.vertex_indices) pts.push_back(P.vertices()[i]);
        face.conjugate = find_face(polar_lattice, conjugate_set(pts, polarP.vertices()));
        if (face.conjugate < 0) throw InvalidFace("no conjugate face in polar lattice");
    }
    for (Face& face : polar_lattice.faces) {
        std::vector<Vec> pts;
        for (int i : face.vertex_indices) pts.push_back(polarP.vertices()[i]);
        face.conjugate = find_face(lattice, conjugate_set(pts, P.vertices()));
        if (face.conjugate < 0) throw InvalidFace("no conjugate face in primal lattice");
    }
    (void)facets;
    (void)polar_facets;
}

int face_conjugate(const FaceLattice& L, int face_id) {
    if (face_id < 0 || face_id >= static_cast<int>(L.faces.size()))
        throw InvalidFace("face id out of range");
    int c = L.faces[face_id].conjugate;
    if (c < 0) throw InvalidFace("conjugate links not built");
    return c;
}

double gauge(const Vec& x, const std::vector<Facet>& facets) {
    double m = 0.0;
    for (const Facet& f : facets) m = std::max(m, pairing(f.normal, x));
    return m;
}

double dist_to_face(const Vec& x, const std::vector<Vec>& face_vertices,
                    const std::vector<Facet>& ball_facets, Vec* argmin) {
    if (face_vertices.empty()) throw InvalidFace("empty face");
    for (const Vec& v : face_vertices)
        if (v.size() != x.size()) throw DimensionMismatch("dist_to_face: dimension mismatch");

    if (face_vertices.size() == 1) {
        if (argmin) *argmin = face_vertices[0];
        return gauge(sub(x, face_vertices[0]), ball_facets);
    }

    // Variables: lambda_1..lambda_k, t, slack per facet.
    const std::size_t k = face_vertices.size();
    const std::size_t m = ball_facets.size();
    const std::size_t nv = k + 1 + m;
    std::vector<std::vector<double>> A(m + 1, std::vector<double>(nv, 0.0));
    std::vector<double> b(m + 1, 0.0);
    std::vector<double> c(nv, 0.0);
    c[k] = 1.0;  // minimize t
    for (std::size_t j = 0; j < k; ++j) A[0][j] = 1.0;
    b[0] = 1.0;
    for (std::size_t fi = 0; fi < m; ++fi) {
        const Vec& nrm = ball_facets[fi].normal;
        for (std::size_t j = 0; j < k; ++j) A[fi + 1][j] = pairing(nrm, face_vertices[j]);
        A[fi + 1][k] = 1.0;
        A[fi + 1][k + 1 + fi] = -1.0;
        b[fi + 1] = pairing(nrm, x);
    }
    LpResult res = lp_solve(A, b, c);
    if (res.status != LpStatus::Optimal) throw Error("dist_to_face: LP did not solve");
    if (argmin) {
        Vec y(x.size(), 0.0);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += res.x[j] * face_vertices[j][i];
        *argmin = std::move(y);
    }
    return std::max(0.0, res.objective);
}

namespace {

void fill_face_cache(const SymmetricPolytope& P, const std::vector<Facet>& facets,
                     const FaceLattice& L, std::vector<std::vector<Vec>>& points,
                     std::vector<std::vector<double>>& support) {
    points.clear();
    support.clear();
    for (const Face& face : L.faces) {
        std::vector<Vec> pts;
        pts.reserve(face.vertex_indices.size());
        for (int i : face.vertex_indices) pts.push_back(P.vertices()[i]);
        std::vector<double> sup(facets.size());
        for (std::size_t fi = 0; fi < facets.size(); ++fi) {
            double m = -std::numeric_limits<double>::infinity();
            for (const Vec& v : pts) m = std::max(m, pairing(facets[fi].normal, v));
            sup[fi] = m;
        }
        points.push_back(std::move(pts));
        support.push_back(std::move(sup));
    }
}

}  // namespace

PolytopeGeometry PolytopeGeometry::build(SymmetricPolytope P) {
    std::vector<Facet> facets = hull_facets(P);
    std::vector<Vec> polar_verts;
    for (const Facet& f : facets) polar_verts.push_back(f.normal);
    SymmetricPolytope polarP{std::move(polar_verts)};
    std::vector<Facet> polar_facets = hull_facets(polarP);
    FaceLattice lattice = face_lattice(P, facets);
    FaceLattice polar_lattice = face_lattice(polarP, polar_facets);
    link_conjugates(P, facets, lattice, polarP, polar_facets, polar_lattice);
    PolytopeGeometry g{std::move(P),      std::move(facets),        std::move(polarP),
                       std::move(polar_facets), std::move(lattice), std::move(polar_lattice)};
    fill_face_cache(g.ball, g.facets, g.lattice, g.face_points, g.face_support);
    fill_face_cache(g.polar_ball, g.polar_facets, g.polar_lattice, g.polar_face_points,
                    g.polar_face_support);
    return g;
}

}  // namespace bpb
