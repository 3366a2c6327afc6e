#include "doctest.h"

#include "thermops/lp.hpp"
#include "thermops/random.hpp"

#include <cmath>

using namespace thermops;

TEST_CASE("trivial programs") {
    LinearProgram lp;
    lp.objective = (Vector(2) << 1.0, 0.0).finished();
    lp.equality = (RealMatrix(1, 2) << 1.0, 1.0).finished();
    lp.rhs = (Vector(1) << 1.0).finished();
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.value == doctest::Approx(1.0));
    CHECK(s.x(0) == doctest::Approx(1.0));

    LinearProgram bad;
    bad.objective = Vector::Zero(1);
    bad.equality = RealMatrix::Zero(1, 1);
    bad.rhs = (Vector(1) << 1.0).finished();
    CHECK(solve_lp(bad).status == LpStatus::infeasible);
}

TEST_CASE("max G00 over qubit Gibbs-stochastic matrices") {
    // variables G00, G10, G01, G11 (column major)
    const double g0 = 2.0 / 3, g1 = 1.0 / 3;
    LinearProgram lp;
    lp.objective = (Vector(4) << 1.0, 0.0, 0.0, 0.0).finished();
    lp.equality = RealMatrix::Zero(4, 4);
    lp.equality.row(0) << 1, 1, 0, 0;
    lp.equality.row(1) << 0, 0, 1, 1;
    lp.equality.row(2) << g0, 0, g1, 0;
    lp.equality.row(3) << 0, g0, 0, g1;
    lp.rhs = (Vector(4) << 1.0, 1.0, g0, g1).finished();
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.value == doctest::Approx(1.0));

    // min G00 is the beta-swap corner 1 - q = 1/2
    lp.objective(0) = -1.0;
    CHECK(solve_lp(lp).value == doctest::Approx(-0.5));
}

TEST_CASE("redundant and negative right-hand sides") {
    LinearProgram lp;
    lp.objective = (Vector(3) << 1.0, 2.0, 0.0).finished();
    lp.equality = RealMatrix(3, 3);
    lp.equality << 1, 1, 1,
                   2, 2, 2,
                   -1, 0, 0;
    lp.rhs = (Vector(3) << 1.0, 2.0, -0.25).finished();
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.value == doctest::Approx(0.25 + 2 * 0.75));
    CHECK(s.residual <= 1e-12);
}

TEST_CASE("random feasible programs agree with a brute-force vertex search") {
    // max c.x over {x >= 0, sum x = 1, a.x = b}: optimum sits on a vertex with at
    // most two nonzero coordinates, which we enumerate directly.
    Rng rng(19, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 5;
        Vector c(n), a(n);
        for (int i = 0; i < n; ++i) {
            c(i) = rng.normal();
            a(i) = rng.uniform();
        }
        const double b = 0.5 * (a.minCoeff() + a.maxCoeff());
        LinearProgram lp;
        lp.objective = c;
        lp.equality = RealMatrix(2, n);
        lp.equality.row(0).setOnes();
        lp.equality.row(1) = a.transpose();
        lp.rhs = (Vector(2) << 1.0, b).finished();

        double best = -kInf;
        for (int i = 0; i < n; ++i) {
            if (std::abs(a(i) - b) < 1e-14) best = std::max(best, c(i));
            for (int j = i + 1; j < n; ++j) {
                if (std::abs(a(i) - a(j)) < 1e-14) continue;
                const double t = (b - a(j)) / (a(i) - a(j));
                if (t < 0.0 || t > 1.0) continue;
                best = std::max(best, t * c(i) + (1.0 - t) * c(j));
            }
        }
        const LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::optimal);
        CHECK(s.value == doctest::Approx(best).epsilon(1e-10));
        CHECK((lp.equality * s.x - lp.rhs).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(s.x.minCoeff() >= 0.0);
    }
}

TEST_CASE("unbounded programs throw") {
    LinearProgram lp;
    lp.objective = (Vector(2) << 1.0, 0.0).finished();
    lp.equality = (RealMatrix(1, 2) << 1.0, -1.0).finished();
    lp.rhs = (Vector(1) << 0.0).finished();
    CHECK_THROWS_AS(solve_lp(lp), std::logic_error);
    lp.rhs = Vector::Zero(2);
    CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);
}
