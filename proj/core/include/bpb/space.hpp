#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bpb/polytope.hpp"
#include "bpb/vec.hpp"

namespace bpb {

enum class SpaceKind { Line, Lp, Euclidean, Polytopal, DirectSum, Diamond };
enum class SumCombiner { L1, LInf };

/// Norm-one functional attaining the norm of a given vector, plus the
/// facet it came from when the ball is polytopal (-1 otherwise).
struct SupportResult {
    Vec functional;
    int facet_index = -1;
};

struct CatalogParams {
    double eps = 0.0;
    double p = 2.0;
    int n = 2;
    std::vector<std::string> parts;

    bool operator==(const CatalogParams&) const = default;
};

/// Finite-dimensional real normed space. Immutable after construction;
/// polytopal variants carry an eagerly built face-lattice cache shared
/// across copies.
class NormedSpace {
public:
    SpaceKind kind() const;
    int dim() const;
    /// Catalog-style identifier used in reports ("linf2", "diamond", ...).
    const std::string& name() const;

    double norm(const Vec& x) const;
    double dual_norm(const Vec& f) const;
    SupportResult support_functional(const Vec& x) const;
    NormedSpace dual_space() const;

    /// True when the unit ball is a polytope with cached geometry
    /// (Line, Polytopal, Diamond, and materialized direct sums).
    bool polytopal_backed() const;
    const PolytopeGeometry& geometry() const;

    double lp_p() const;
    double diamond_eps() const;
    bool is_direct_sum() const;
    SumCombiner combiner() const;
    const std::vector<NormedSpace>& sum_parts() const;

    static NormedSpace make_line();
    static NormedSpace make_lp(double p, int n);
    static NormedSpace make_euclidean(int n);
    static NormedSpace make_polytopal(SymmetricPolytope P, std::string name = "polytopal");
    static NormedSpace make_diamond(double eps);
    static NormedSpace make_sum(SumCombiner comb, std::vector<NormedSpace> parts);

    /// Named constructor for every space in the catalog:
    /// line, linf2, l1-2, lp, euclidean, l1sum, linfsum, diamond.
    static NormedSpace catalog(const std::string& name, const CatalogParams& params = {});

    struct Impl;

private:
    explicit NormedSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Vertices +-A_1..A_11 of the diamond ball for a given eps in (0,1).
std::vector<Vec> diamond_vertices(double eps);

}  // namespace bpb
