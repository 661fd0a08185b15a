#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bpb/space.hpp"

namespace bpb {

/// Element of Pi(X): ||x|| = ||f||* = <f,x> = 1 within tolerance.
struct NormingPair {
    Vec x;
    Vec f;
};

/// Checks the NormingPair invariants against a space.
bool is_norming_pair(const NormedSpace& S, const NormingPair& pair, double tol = 1e-9);

/// Element of A_X(delta) (or A_X^S(delta) when spherical).
struct BpbPoint {
    Vec x;
    Vec f;
    double delta = 0.0;
    bool spherical = false;
};

/// Pi(X) as a finite union of products E x conj(E) over proper faces E
/// of the unit ball. For Euclidean spaces the decomposition is the
/// parametric diagonal {(z,z) : z in S_H} and `pairs` stays empty.
struct PiDecomposition {
    bool parametric_euclidean = false;
    std::vector<std::pair<int, int>> pairs;  // (ball lattice id, polar lattice id)
};

PiDecomposition pi_decomposition(const NormedSpace& S);

struct PiDistance {
    double distance = 0.0;
    NormingPair witness;
};

/// Exact d_inf distance from (x,f) to Pi(S) for spaces with finite face
/// lattices: min over conjugate face pairs of
/// max( dist(x, E), dist(f, conj E) ), each term a polyhedral-gauge LP.
/// Euclidean spaces route to dist_to_pi_euclidean.
PiDistance dist_to_pi(const NormedSpace& S, const Vec& x, const Vec& f);

/// Hilbert case: minimize max(||x-z||_2, ||f-z||_2) over the unit
/// sphere. The optimum lies in span{x,f}; reduced to a scalar search on
/// the circle.
PiDistance dist_to_pi_euclidean(const Vec& x, const Vec& f);

/// Monte-Carlo upper bound on the Pi-distance for smooth balls: samples
/// (z, support(z)) pairs. Used by the search path for general Lp.
PiDistance dist_to_pi_sampled(const NormedSpace& S, const Vec& x, const Vec& f, int samples,
                              std::uint64_t seed);

/// The extremal pair for an l1 direct sum: pairing exactly 1 - delta,
/// yet Pi-distance sqrt(2 delta). Requires delta in (0, 1/2].
BpbPoint l1_sum_witness(const NormedSpace& S, double delta);

}  // namespace bpb
