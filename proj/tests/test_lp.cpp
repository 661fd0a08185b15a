#include <cmath>
#include <random>
#include <vector>

#include "bpb/lp.hpp"
#include "doctest.h"

using namespace bpb;

using Mat = std::vector<std::vector<double>>;

TEST_CASE("lp: simple 2-variable program") {
    // min -x1 - 2 x2  s.t.  x1 + x2 + s = 4, x1, x2, s >= 0.
    Mat A{{1.0, 1.0, 1.0}};
    std::vector<double> b{4.0};
    std::vector<double> c{-1.0, -2.0, 0.0};
    LpResult r = lp_solve(A, b, c);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-8.0).epsilon(1e-10));
    CHECK(r.x[1] == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("lp: equality-constrained transport") {
    // min x1 + 3 x2 + x3  s.t.  x1 + x2 = 2, x2 + x3 = 3.
    Mat A{{1.0, 1.0, 0.0}, {0.0, 1.0, 1.0}};
    std::vector<double> b{2.0, 3.0};
    std::vector<double> c{1.0, 3.0, 1.0};
    LpResult r = lp_solve(A, b, c);
    REQUIRE(r.status == LpStatus::Optimal);
    // x2 = 0, x1 = 2, x3 = 3 is optimal.
    CHECK(r.objective == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("lp: infeasible system detected") {
    // x1 = 1 and x1 = 2 simultaneously.
    Mat A{{1.0}, {1.0}};
    std::vector<double> b{1.0, 2.0};
    std::vector<double> c{0.0};
    CHECK(lp_solve(A, b, c).status == LpStatus::Infeasible);
}

TEST_CASE("lp: infeasible due to sign restriction") {
    // x1 + x2 = -1 with x >= 0.
    Mat A{{1.0, 1.0}};
    std::vector<double> b{-1.0};
    std::vector<double> c{1.0, 1.0};
    CHECK(lp_solve(A, b, c).status == LpStatus::Infeasible);
}

TEST_CASE("lp: unbounded program detected") {
    // min -x1  s.t.  x1 - x2 = 0 : x1 can grow without bound.
    Mat A{{1.0, -1.0}};
    std::vector<double> b{0.0};
    std::vector<double> c{-1.0, 0.0};
    CHECK(lp_solve(A, b, c).status == LpStatus::Unbounded);
}

TEST_CASE("lp: degenerate vertices do not cycle (Bland)") {
    // Classic degenerate example: redundant constraints meeting at one
    // vertex. Bland's rule must terminate.
    Mat A{{1.0, 1.0, 1.0, 0.0}, {1.0, 2.0, 0.0, 1.0}, {2.0, 1.0, 0.0, 0.0}};
    std::vector<double> b{0.0, 0.0, 0.0};
    std::vector<double> c{-1.0, -1.0, 0.0, 0.0};
    LpResult r = lp_solve(A, b, c);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("lp: random feasible programs satisfy optimality conditions") {
    // Build programs with a known feasible point and verify: solution is
    // feasible, objective <= objective at the known point.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.1, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 3, n = 6;
        std::vector<double> z0(n);
        for (double& v : z0) v = unif(rng);
        Mat A(m, std::vector<double>(n));
        std::vector<double> b(m, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                A[i][j] = unif(rng) - 1.0;
                b[i] += A[i][j] * z0[j];
            }
        std::vector<double> c(n);
        for (double& v : c) v = unif(rng);
        LpResult r = lp_solve(A, b, c);
        REQUIRE(r.status == LpStatus::Optimal);
        double obj0 = 0.0;
        for (int j = 0; j < n; ++j) obj0 += c[j] * z0[j];
        CHECK(r.objective <= obj0 + 1e-8);
        for (int i = 0; i < m; ++i) {
            double lhs = 0.0;
            for (int j = 0; j < n; ++j) lhs += A[i][j] * r.x[j];
            CHECK(lhs == doctest::Approx(b[i]).epsilon(1e-7));
        }
        for (double v : r.x) CHECK(v >= -1e-9);
    }
}
