#include "doctest.h"

#include "thermops/bounds.hpp"
#include "thermops/channels.hpp"

#include <cmath>

using namespace thermops;

namespace {

RealMatrix double_swap_matrix(double x) {
    RealMatrix g = RealMatrix::Zero(4, 4);
    g(0, 0) = 1.0 - x;
    g(2, 0) = x;
    g(1, 1) = 1.0 - x;
    g(3, 1) = x;
    g(0, 2) = 1.0;
    g(1, 3) = 1.0;
    return g;
}

Matrix merge_state(double r10, double r32) {
    Matrix rho = Matrix::Zero(4, 4);
    rho(0, 0) = rho(1, 1) = rho(2, 2) = rho(3, 3) = 0.25;
    rho(1, 0) = r10;
    rho(0, 1) = r10;
    rho(3, 2) = r32;
    rho(2, 3) = r32;
    return rho;
}

}  // namespace

TEST_CASE("symmetric bound") {
    const SystemSpec spec = SystemSpec::four_level(1, 3);
    const Matrix rho = merge_state(0.1, 0.2);
    CHECK(symmetric_bound(rho, TransitionMatrix(RealMatrix::Identity(4, 4)), spec, 1, 0) == doctest::Approx(0.1));
    const double x = 0.5;
    CHECK(symmetric_bound(rho, TransitionMatrix(double_swap_matrix(x)), spec, 1, 0) ==
          doctest::Approx((1.0 - x) * 0.1 + 0.2).epsilon(1e-15));
    const Matrix diag = Matrix::Identity(4, 4) / 4.0;
    CHECK(symmetric_bound(diag, TransitionMatrix(double_swap_matrix(x)), spec, 1, 0) == 0.0);
    CHECK_THROWS(symmetric_bound(rho, TransitionMatrix(RealMatrix::Identity(4, 4)), spec, 4, 0));
}

TEST_CASE("merge-down bound") {
    const MergeBoundReport a = merge_down_bound(0.1, 0.2, 0.5);
    CHECK(a.bound == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(a.strategy == MergeStrategy::simultaneous_beta_swap);
    const MergeBoundReport b = merge_down_bound(0.3, 0.1, 0.5);
    CHECK(b.bound == doctest::Approx(0.3));
    CHECK(b.strategy == MergeStrategy::identity);
    const MergeBoundReport c = merge_down_bound(0.4, 0.0, 0.7);
    CHECK(c.bound == 0.4);
    CHECK(c.strategy == MergeStrategy::identity);
    // tie: r32 = x r10
    CHECK(merge_down_bound(0.2, 0.1, 0.5).strategy == MergeStrategy::identity);
    CHECK_THROWS(merge_down_bound(-0.1, 0.1, 0.5));
    CHECK_THROWS(merge_down_bound(0.1, 0.1, 1.0));
    CHECK(to_string(MergeStrategy::simultaneous_beta_swap) == "simultaneous-beta-swap");
}

TEST_CASE("merge-up bound") {
    const MergeBoundReport a = merge_up_bound(0.3, 0.1, 0.5);
    CHECK(a.bound == doctest::Approx(0.15));
    CHECK(a.strategy == MergeStrategy::simultaneous_beta_swap);
    const MergeBoundReport b = merge_up_bound(0.1, 0.2, 0.5);
    CHECK(b.bound == doctest::Approx(0.2));
    CHECK(b.strategy == MergeStrategy::identity);
    CHECK(merge_up_bound(0.0, 0.35, 0.5).bound == 0.35);
}

TEST_CASE("simultaneous beta-swap saturates both merge bounds") {
    for (double x : {0.3, 0.5, 0.8}) {
        const KrausChannel ch = simultaneous_beta_swap_kraus(x, SystemSpec::four_level(1, 3));
        const Matrix out = ch.apply(merge_state(0.1, 0.2));
        CHECK(std::abs(std::abs(out(1, 0)) - ((1.0 - x) * 0.1 + 0.2)) <= 1e-12);
        CHECK(std::abs(std::abs(out(3, 2)) - x * 0.1) <= 1e-12);
    }
}

TEST_CASE("overlap bounds") {
    const OverlapBounds a = overlap_merge_bounds(0.3, 0.1, 0.5);
    CHECK(a.down == doctest::Approx(0.3));
    CHECK(a.up == doctest::Approx(0.15));
    const OverlapBounds b = overlap_merge_bounds(0.1, 0.3, 0.5);
    CHECK(b.down == doctest::Approx(std::sqrt(0.0975)).epsilon(1e-15));
    CHECK(b.up == doctest::Approx(0.3));
    const OverlapBounds c = overlap_merge_bounds(0.4, 0.0, 0.6);
    CHECK(c.down == 0.4);
    CHECK(c.up == doctest::Approx(0.24));
}

TEST_CASE("decoupling witness") {
    const DecouplingWitness w = decoupling_witness(0.8, 0.1, 0.3, 0.5);
    CHECK(w.product_coherence == doctest::Approx(0.112).epsilon(1e-14));
    CHECK(w.exto_bound == doctest::Approx(0.1).epsilon(1e-14));
    CHECK_FALSE(w.reachable);
    CHECK(w.condition == DecouplingCondition::holds);
    CHECK(w.condition_threshold == doctest::Approx(0.6).epsilon(1e-14));

    // b = a: product p a (p + 1 - p) = p a, which the identity branch reaches
    const DecouplingWitness same = decoupling_witness(0.8, 0.1, 0.1, 0.5);
    CHECK(same.product_coherence == doctest::Approx(0.08));
    CHECK(same.reachable);

    const DecouplingWitness edge = decoupling_witness(0.5, 0.1, 0.3, 0.5);
    CHECK(edge.condition == DecouplingCondition::vacuous);
    CHECK(decoupling_witness(0.4, 0.1, 0.3, 0.5).condition == DecouplingCondition::vacuous);

    // b exactly at the threshold (0.375 for p = 5/7, a = 0.2), which rounds slightly above it
    const DecouplingWitness boundary = decoupling_witness(5.0 / 7.0, 0.2, 0.375, 0.5);
    CHECK(boundary.condition == DecouplingCondition::fails);
    CHECK(boundary.reachable);

    CHECK_THROWS(decoupling_witness(1.0, 0.1, 0.3, 0.5));
    CHECK_THROWS(decoupling_witness(0.8, 0.0, 0.3, 0.5));
}

TEST_CASE("qubit damping bound") {
    CHECK(qubit_damping_bound(1.0, 0.5) == 1.0);
    CHECK(qubit_damping_bound(0.5, 0.5) == 0.0);
    CHECK(qubit_damping_bound(0.9, 0.5) == doctest::Approx(std::sqrt(0.72)).epsilon(1e-15));
    CHECK_THROWS_AS(qubit_damping_bound(0.4, 0.5), std::domain_error);
}

TEST_CASE("saturation check") {
    const SystemSpec qubit = SystemSpec::ladder(2);
    const Matrix plus = Matrix::Constant(2, 2, cplx(0.5, 0.0));
    const SaturationReport id = saturation_check(KrausChannel::identity(2), plus, qubit, 1, 0);
    CHECK(id.ratio == doctest::Approx(1.0));

    const BathSpec bath = BathSpec::from_q(0.5, 20);
    const SaturationReport swap = saturation_check(sto_channel(beta_swap_qubit(bath), qubit, bath), plus, qubit, 1, 0);
    CHECK(swap.achieved == 0.0);
    CHECK(swap.bound == 0.0);
    CHECK(swap.ratio == 1.0);

    const SystemSpec spec = SystemSpec::ladder(3);
    RealMatrix g(3, 3);
    g << 0.7, 0.4, 0.2, 0.2, 0.5, 0.3, 0.1, 0.1, 0.5;
    const KrausChannel ch = exto_optimal_channel(TransitionMatrix(g), spec);
    const Matrix rho = Matrix::Constant(3, 3, cplx(1.0 / 3, 0.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(saturation_check(ch, rho, spec, i, j).ratio - 1.0) <= 1e-10);
}
