#include <cmath>
#include <random>
#include <vector>

#include "bpb/attainment.hpp"
#include "doctest.h"

using namespace bpb;

namespace {

// Hand-written parametrization of Pi(linf2): 8 one-parameter families,
// (edge point, conjugate vertex) and (vertex, conjugate edge point).
// Independent of the face-lattice machinery.
std::vector<NormingPair> pi_linf2_grid(int per_family) {
    std::vector<NormingPair> out;
    for (int i = 0; i < per_family; ++i) {
        double t = -1.0 + 2.0 * i / (per_family - 1);
        out.push_back({{1, t}, {1, 0}});
        out.push_back({{-1, t}, {-1, 0}});
        out.push_back({{t, 1}, {0, 1}});
        out.push_back({{t, -1}, {0, -1}});
        double s = (t + 1.0) / 2.0;  // in [0,1]
        out.push_back({{1, 1}, {s, 1 - s}});
        out.push_back({{-1, -1}, {-s, s - 1.0}});
        out.push_back({{1, -1}, {s, s - 1.0}});
        out.push_back({{-1, 1}, {-s, 1 - s}});
    }
    return out;
}

Vec random_ball_point(const NormedSpace& S, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec x(S.dim());
    for (double& v : x) v = gauss(rng);
    double n = S.norm(x);
    if (n < 1e-9) return Vec(S.dim(), 0.0);
    return scale(x, unif(rng) / n);
}

}  // namespace

TEST_CASE("attainment: norming pair check") {
    NormedSpace S = NormedSpace::catalog("linf2");
    CHECK(is_norming_pair(S, {{1, 0.5}, {1, 0}}));
    CHECK(is_norming_pair(S, {{1, 1}, {0.25, 0.75}}));
    CHECK_FALSE(is_norming_pair(S, {{1, 0.5}, {0, 1}}));     // pairing 0.5
    CHECK_FALSE(is_norming_pair(S, {{0.5, 0.5}, {1, 0}}));   // not on sphere
}

TEST_CASE("attainment: pi decomposition shapes") {
    NormedSpace S = NormedSpace::catalog("linf2");
    PiDecomposition dec = pi_decomposition(S);
    CHECK_FALSE(dec.parametric_euclidean);
    CHECK(dec.pairs.size() == 8);

    NormedSpace L = NormedSpace::make_line();
    CHECK(pi_decomposition(L).pairs.size() == 2);

    NormedSpace E = NormedSpace::make_euclidean(2);
    CHECK(pi_decomposition(E).parametric_euclidean);

    CHECK_THROWS_AS(pi_decomposition(NormedSpace::make_lp(3.0, 2)), UnsupportedSpace);
}

TEST_CASE("attainment: dist_to_pi closed-form examples") {
    NormedSpace S = NormedSpace::catalog("linf2");
    // delta = 1/2 extremal pair of the max-norm plane.
    PiDistance r = dist_to_pi(S, {0, 1}, {0.5, 0.5});
    CHECK(r.distance == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(is_norming_pair(S, r.witness, 1e-7));

    // A pair already in Pi.
    CHECK(dist_to_pi(S, {1, 0.3}, {1, 0}).distance == doctest::Approx(0.0).epsilon(1e-9));

    NormedSpace L = NormedSpace::make_line();
    for (double delta : {0.2, 0.5, 0.9})
        CHECK(dist_to_pi(L, {1 - delta}, {1}).distance == doctest::Approx(delta).epsilon(1e-12));
}

TEST_CASE("attainment: dist_to_pi agrees with the Pi grid oracle on linf2 and l1-2") {
    NormedSpace Si = NormedSpace::catalog("linf2");
    NormedSpace S1 = NormedSpace::catalog("l1-2");
    auto grid = pi_linf2_grid(250);  // 2000 points
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        Vec x = random_ball_point(Si, rng), f = random_ball_point(S1, rng);
        double oracle_i = 1e9, oracle_1 = 1e9;
        for (const NormingPair& p : grid) {
            oracle_i = std::min(oracle_i, std::max(Si.norm(sub(x, p.x)), Si.dual_norm(sub(f, p.f))));
            // Pi(l1-2) = swapped Pi(linf2).
            oracle_1 = std::min(oracle_1, std::max(S1.norm(sub(x, p.f)), S1.dual_norm(sub(f, p.x))));
        }
        CHECK(dist_to_pi(Si, x, f).distance == doctest::Approx(oracle_i).epsilon(1e-4));
        CHECK(dist_to_pi(S1, x, f).distance == doctest::Approx(oracle_1).epsilon(1e-4));
    }
}

TEST_CASE("attainment: dist_to_pi witness validity and symmetry") {
    std::mt19937_64 rng(59);
    CatalogParams dia;
    dia.eps = 0.5;
    for (const char* name : {"linf2", "l1-2", "diamond"}) {
        NormedSpace S = NormedSpace::catalog(name, dia);
        for (int trial = 0; trial < 30; ++trial) {
            Vec x = random_ball_point(S, rng);
            Vec f = random_ball_point(S.dual_space(), rng);
            PiDistance r = dist_to_pi(S, x, f);
            CHECK(is_norming_pair(S, r.witness, 1e-7));
            double attained =
                std::max(S.norm(sub(x, r.witness.x)), S.dual_norm(sub(f, r.witness.f)));
            CHECK(attained == doctest::Approx(r.distance).epsilon(1e-8));
            CHECK(dist_to_pi(S, negate(x), negate(f)).distance == r.distance);
        }
    }
}

TEST_CASE("attainment: dist_to_pi is 1-Lipschitz in d_inf") {
    std::mt19937_64 rng(61);
    NormedSpace S = NormedSpace::make_diamond(0.6);
    NormedSpace Sd = S.dual_space();
    for (int trial = 0; trial < 30; ++trial) {
        Vec x = random_ball_point(S, rng), f = random_ball_point(Sd, rng);
        Vec xp = random_ball_point(S, rng), fp = random_ball_point(Sd, rng);
        double d1 = dist_to_pi(S, x, f).distance;
        double d2 = dist_to_pi(S, xp, fp).distance;
        double dinf = std::max(S.norm(sub(x, xp)), S.dual_norm(sub(f, fp)));
        CHECK(std::abs(d1 - d2) <= dinf + 1e-8);
    }
}

TEST_CASE("attainment: universal cap on random A-points") {
    std::mt19937_64 rng(67);
    CatalogParams dia;
    dia.eps = 0.5;
    for (const char* name : {"linf2", "l1-2", "diamond"}) {
        NormedSpace S = NormedSpace::catalog(name, dia);
        NormedSpace Sd = S.dual_space();
        int accepted = 0;
        while (accepted < 300) {
            Vec x = random_ball_point(S, rng), f = random_ball_point(Sd, rng);
            double pr = pairing(f, x);
            if (pr <= 0.0) continue;
            double delta = 1.0 - pr + 1e-9;  // (x,f) is in A(delta)
            ++accepted;
            CHECK(dist_to_pi(S, x, f).distance <= std::sqrt(2.0 * delta) + 1e-8);
        }
    }
}

TEST_CASE("attainment: euclidean distance closed forms") {
    // Identical unit vectors.
    CHECK(dist_to_pi_euclidean({1, 0}, {1, 0}).distance == doctest::Approx(0.0).epsilon(1e-10));
    // Symmetric spherical pair at angle set by delta.
    for (double delta : {0.2, 0.5, 0.9, 1.0}) {
        double a = std::sqrt(1.0 - delta / 2.0), b = std::sqrt(delta / 2.0);
        PiDistance r = dist_to_pi_euclidean({a, b}, {a, -b});
        double expect = std::sqrt(2.0 - std::sqrt(4.0 - 2.0 * delta));
        CHECK(r.distance == doctest::Approx(expect).epsilon(1e-8));
        CHECK(norm2(r.witness.x) == doctest::Approx(1.0).epsilon(1e-9));
    }
    // Antipodal interior pair, delta > 1.
    for (double delta : {1.2, 1.5, 1.9}) {
        double t = std::sqrt(delta - 1.0);
        PiDistance r = dist_to_pi_euclidean({t, 0}, {-t, 0});
        CHECK(r.distance == doctest::Approx(std::sqrt(delta)).epsilon(1e-8));
    }
}

TEST_CASE("attainment: euclidean distance matches a dense grid oracle") {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int grid = 20000;
    for (int trial = 0; trial < 25; ++trial) {
        Vec x{gauss(rng), gauss(rng)}, f{gauss(rng), gauss(rng)};
        if (norm2(x) > 1e-9) x = scale(x, unif(rng) / norm2(x));
        if (norm2(f) > 1e-9) f = scale(f, unif(rng) / norm2(f));
        double oracle = 1e9;
        for (int i = 0; i < grid; ++i) {
            double th = 2.0 * M_PI * i / grid;
            Vec z{std::cos(th), std::sin(th)};
            oracle = std::min(oracle, std::max(norm2(sub(x, z)), norm2(sub(f, z))));
        }
        double d = dist_to_pi_euclidean(x, f).distance;
        // The solver must not beat the true minimum (oracle is an upper
        // bound) nor miss it by more than the grid resolution.
        CHECK(d <= oracle + 1e-9);
        CHECK(oracle - d <= 2.0 * M_PI / grid + 1e-8);
    }
}

TEST_CASE("attainment: l1 sum witness construction") {
    CatalogParams prm;
    prm.parts = {"line", "line"};
    NormedSpace S = NormedSpace::catalog("l1sum", prm);

    BpbPoint w = l1_sum_witness(S, 0.5);
    CHECK(dist_inf_coords(w.x, {0.5, 0.5}) <= 1e-12);
    CHECK(dist_inf_coords(w.f, {0.0, 1.0}) <= 1e-12);
    CHECK(pairing(w.f, w.x) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist_to_pi(S, w.x, w.f).distance == doctest::Approx(1.0).epsilon(1e-9));

    BpbPoint w8 = l1_sum_witness(S, 0.125);
    CHECK(pairing(w8.f, w8.x) == doctest::Approx(0.875).epsilon(1e-12));

    // Three-dimensional l1 sum, delta = 0.32: distance sqrt(2 delta) = 0.8.
    CatalogParams prm3;
    prm3.parts = {"line", "l1-2"};
    NormedSpace S3 = NormedSpace::catalog("l1sum", prm3);
    BpbPoint w3 = l1_sum_witness(S3, 0.32);
    CHECK(dist_to_pi(S3, w3.x, w3.f).distance >= 0.8 - 1e-8);

    CHECK_THROWS_AS(l1_sum_witness(S, 0.7), BadParameter);
    CHECK_THROWS_AS(l1_sum_witness(NormedSpace::catalog("linf2"), 0.3), UnsupportedSpace);
}

TEST_CASE("attainment: witness pairing is exactly 1 - delta across deltas") {
    CatalogParams prm;
    prm.parts = {"linf2", "line"};
    NormedSpace S = NormedSpace::catalog("l1sum", prm);
    for (double delta : {0.05, 0.1, 0.3, 0.5}) {
        BpbPoint w = l1_sum_witness(S, delta);
        CHECK(pairing(w.f, w.x) == doctest::Approx(1.0 - delta).epsilon(1e-12));
        CHECK(S.norm(w.x) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(S.dual_norm(w.f) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(dist_to_pi(S, w.x, w.f).distance >= std::sqrt(2.0 * delta) - 1e-8);
    }
}
