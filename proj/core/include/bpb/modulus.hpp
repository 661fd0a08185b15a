#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpb/attainment.hpp"
#include "bpb/space.hpp"

namespace bpb {

struct ModulusEstimate {
    double delta = 0.0;
    bool spherical = false;
    double lower = 0.0;
    double upper = 0.0;
    BpbPoint witness;
    double witness_distance = 0.0;
    double mesh = 0.0;
    bool certified = false;
    /// Set when a certified upper bound exceeds the universal sqrt(2 delta)
    /// cap and therefore says nothing (MeshTooCoarse condition).
    bool vacuous = false;
    double enlarged_delta = 0.0;
};

struct SearchBudget {
    int starts = 64;
    long max_evals = 2'000'000;
    std::uint64_t seed = 20240913u;
    /// Early-exit target for certified upper bounds: stop as soon as the
    /// bound drops below this value (negative disables).
    double stop_below = -1.0;
};

/// Lower bound on Phi (or Phi^S) by multistart coordinate pattern search
/// over the A-set, seeded with the known extremal constructions.
ModulusEstimate phi_lower(const NormedSpace& S, double delta, bool spherical,
                          const SearchBudget& budget = {});

/// Certified upper bound: adaptive box cover of the A-set refined until
/// the worst box is resolved to d_inf radius <= mesh_h (or the bound
/// falls below budget.stop_below). Soundness rests on dist-to-Pi being
/// 1-Lipschitz in d_inf: for every box, sup over it is at most the value
/// at the box's evaluation point plus the box radius.
ModulusEstimate phi_upper_certified(const NormedSpace& S, double delta, bool spherical,
                                    double mesh_h, const SearchBudget& budget = {});

/// Closed-form reference curves; name in {line, euclidean, linf2}.
double reference_phi(const std::string& name, double delta, bool spherical);

/// Bound on dist((x0,x0*), A_X(delta)) for (x0,x0*) in A_X(delta0),
/// 0 < delta < delta0 < 2, both on the same side of 1.
double a_set_shift_bound(double delta, double delta0);

/// Spherical analogue.
double spherical_shift_bound(double delta, double delta0);

/// Lower-side curve over a delta grid with an isotonic pass (the moduli
/// are increasing in delta).
std::vector<ModulusEstimate> phi_curve(const NormedSpace& S, const std::vector<double>& deltas,
                                       bool spherical, const SearchBudget& budget = {});

/// Distance evaluation used by the search: exact for lattice-backed and
/// Euclidean spaces, sampled for smooth Lp.
double pi_distance_value(const NormedSpace& S, const Vec& x, const Vec& f);

}  // namespace bpb
