#pragma once

#include <vector>

#include "bpb/modulus.hpp"
#include "bpb/space.hpp"

namespace bpb {

/// Pair of unit vectors witnessing (near-)squareness:
/// defect = 2 - min(||u+v||, ||u-v||). Zero defect means u, v span an
/// isometric copy of the max-norm plane.
struct SquareWitness {
    Vec u;
    Vec v;
    double defect = 2.0;
};

/// Best witness found by vertex-pair enumeration (polytopal) plus local
/// refinement and multistart search. The result is an upper bound on the
/// infimal defect over the sphere.
SquareWitness squareness_defect(const NormedSpace& S, const SearchBudget& budget = {});

struct ContainmentReport {
    double dual_defect = 2.0;
    double margin = 1e-3;
    /// True when the dual defect exceeds the margin, i.e. the dual is
    /// uniformly non-square and the contrapositive applies.
    bool hypothesis = false;
    struct Entry {
        double delta;
        double upper;
        double cap;  // sqrt(2 delta)
        bool ok;     // upper < cap
    };
    std::vector<Entry> entries;
    bool passed = true;
};

/// Numerical contrapositive of the containment theorem: a space whose
/// dual has squareness defect > margin must have a strictly sub-maximal
/// modulus at every delta in (0, 1/2).
ContainmentReport containment_check(const NormedSpace& S, const std::vector<double>& deltas,
                                    double margin = 1e-3, const SearchBudget& budget = {});

}  // namespace bpb
