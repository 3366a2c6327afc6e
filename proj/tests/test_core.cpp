#include "doctest.h"

#include "thermops/core.hpp"
#include "thermops/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace thermops;

namespace {

Matrix random_hermitian(int d, Rng& rng) {
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
    return a + a.adjoint();
}

Vector random_distribution(int d, Rng& rng) {
    Vector p(d);
    for (int i = 0; i < d; ++i) p(i) = rng.uniform() + 1e-3;
    return p / p.sum();
}

Matrix plus_state() { return Matrix::Constant(2, 2, cplx(0.5, 0.0)); }

}  // namespace

TEST_CASE("SystemSpec validates its energies") {
    CHECK(SystemSpec::ladder(3).energies() == std::vector<int>{0, 1, 2});
    CHECK(SystemSpec::four_level(1, 3).energies() == std::vector<int>{0, 1, 3, 4});
    CHECK_THROWS_AS(SystemSpec({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(SystemSpec({0, 2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SystemSpec::four_level(3, 1), std::invalid_argument);

    const std::vector<double> ok{0.0, 1.0, 2.0000000001};
    CHECK(SystemSpec::from_real_energies(ok).energies() == std::vector<int>{0, 1, 2});
    const std::vector<double> off{0.0, 0.5};
    CHECK_THROWS_AS(SystemSpec::from_real_energies(off), StructuralError);

    CHECK(SystemSpec::ladder(4).nondegenerate());
    CHECK_FALSE(SystemSpec::four_level(1, 1).nondegenerate());
}

TEST_CASE("bath weights are renormalized geometric weights") {
    const BathSpec bath = BathSpec::from_q(0.5, 3);
    CHECK(bath.q() == doctest::Approx(0.5).epsilon(1e-15));
    // (1, 1/2, 1/4, 1/8) / (15/8)
    const std::vector<double> expected{8.0 / 15, 4.0 / 15, 2.0 / 15, 1.0 / 15};
    double total = 0.0;
    for (std::size_t n = 0; n < expected.size(); ++n) {
        CHECK(std::abs(bath.weights()[n] - expected[n]) < 1e-15);
        total += bath.weights()[n];
    }
    CHECK(std::abs(total - 1.0) < 1e-15);
    CHECK_THROWS(BathSpec(1, -1.0, 5));
    CHECK_THROWS(BathSpec(1, 1.0, 0));
}

TEST_CASE("gibbs_state closed forms") {
    const Matrix qubit = gibbs_state(SystemSpec::ladder(2), std::log(2.0)).matrix();
    CHECK(std::abs(qubit(0, 0).real() - 2.0 / 3) < 1e-15);
    CHECK(std::abs(qubit(1, 1).real() - 1.0 / 3) < 1e-15);
    CHECK(std::abs(qubit(0, 1)) == 0.0);

    const Vector qutrit = gibbs_weights(SystemSpec::ladder(3), std::log(2.0));
    CHECK(std::abs(qutrit(0) - 4.0 / 7) < 1e-15);
    CHECK(std::abs(qutrit(1) - 2.0 / 7) < 1e-15);
    CHECK(std::abs(qutrit(2) - 1.0 / 7) < 1e-15);

    const Vector flat = gibbs_weights(SystemSpec({0, 0, 0}), 3.0);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(flat(k) - 1.0 / 3) < 1e-15);

    CHECK_THROWS_AS(gibbs_weights(SystemSpec::ladder(2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gibbs_weights(SystemSpec({0, 1000000}), 1e6), std::range_error);
}

TEST_CASE("DensityMatrix rejects invalid states") {
    CHECK_NOTHROW(DensityMatrix(plus_state()));
    Matrix bad = plus_state();
    bad(0, 1) = cplx(0.5, 0.1);
    CHECK_THROWS_AS(DensityMatrix{bad}, ValidationError);
    CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(2, 2)), ValidationError);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);
}

TEST_CASE("populations") {
    const std::vector<double> fig{0.8, 0.16, 0.04};
    const Vector p = populations(DensityMatrix::diagonal(fig));
    for (int k = 0; k < 3; ++k) CHECK(p(k) == fig[static_cast<std::size_t>(k)]);
    const Vector plus = populations(plus_state());
    CHECK(plus(0) == 0.5);
    CHECK(plus(1) == 0.5);
}

TEST_CASE("mode decomposition") {
    const ModeSet qubit = mode_decompose(plus_state(), SystemSpec::ladder(2));
    CHECK(qubit.modes.size() == 3);
    CHECK(qubit.at(1)(1, 0) == cplx(0.5, 0.0));
    CHECK(qubit.at(1).cwiseAbs().sum() == 0.5);
    CHECK(qubit.at(-1)(0, 1) == cplx(0.5, 0.0));
    CHECK(qubit.at(0)(0, 0) == cplx(0.5, 0.0));

    SUBCASE("four-level mode at gap E1 collects both terms") {
        Matrix rho = Matrix::Zero(4, 4);
        rho(1, 0) = cplx(0.1, 0.02);
        rho(3, 2) = cplx(0.2, -0.05);
        rho(2, 1) = 0.3;
        const ModeSet m = mode_decompose(rho, SystemSpec::four_level(1, 3));
        Matrix expected = Matrix::Zero(4, 4);
        expected(1, 0) = rho(1, 0);
        expected(3, 2) = rho(3, 2);
        CHECK((m.at(1) - expected).cwiseAbs().maxCoeff() == 0.0);
        CHECK(m.at(2)(2, 1) == cplx(0.3, 0.0));
    }

    SUBCASE("diagonal state has one mode") {
        const std::vector<double> d{0.5, 0.3, 0.2};
        const ModeSet m = mode_decompose(DensityMatrix::diagonal(d).matrix(), SystemSpec::ladder(3));
        CHECK(m.modes.size() == 1);
        CHECK(m.modes.count(0) == 1);
    }

    SUBCASE("modes reassemble random Hermitian matrices") {
        Rng rng(11, 0);
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix h = random_hermitian(4, rng);
            const SystemSpec spec = trial % 2 ? SystemSpec::ladder(4) : SystemSpec::four_level(1, 3);
            const ModeSet m = mode_decompose(h, spec);
            CHECK((m.sum() - h).cwiseAbs().maxCoeff() <= 1e-12);
            for (const auto& [gap, mat] : m.modes)
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        if (spec.energy(i) - spec.energy(j) != gap) CHECK(mat(i, j) == cplx(0.0, 0.0));
        }
    }
}

TEST_CASE("Renyi divergence closed forms") {
    const Vector p = (Vector(2) << 0.8, 0.2).finished();
    const Vector g = (Vector(2) << 2.0 / 3, 1.0 / 3).finished();
    CHECK(renyi_divergence(p, g, kInf) == doctest::Approx(std::log(1.2)).epsilon(1e-14));
    CHECK(renyi_divergence(p, g, -kInf) == doctest::Approx(-std::log(0.6)).epsilon(1e-14));

    // KL by hand
    const double kl = 0.8 * std::log(0.8 / (2.0 / 3)) + 0.2 * std::log(0.2 / (1.0 / 3));
    CHECK(renyi_divergence(p, g, 1.0) == doctest::Approx(kl).epsilon(1e-13));

    // alpha = 2: log sum p^2 / g
    const double d2 = std::log(0.64 / (2.0 / 3) + 0.04 / (1.0 / 3));
    CHECK(renyi_divergence(p, g, 2.0) == doctest::Approx(d2).epsilon(1e-13));

    // alpha = 1/2: -2 log sum sqrt(p g)
    const double dh = -2.0 * std::log(std::sqrt(0.8 * 2.0 / 3) + std::sqrt(0.2 / 3));
    CHECK(renyi_divergence(p, g, 0.5) == doctest::Approx(dh).epsilon(1e-13));

    // alpha = -2: sgn(alpha)/(alpha - 1) log sum p^alpha g^(1-alpha) = (1/3) log sum g^3 / p^2
    const double dm2 = std::log(std::pow(2.0 / 3, 3) / 0.64 + std::pow(1.0 / 3, 3) / 0.04) / 3.0;
    CHECK(renyi_divergence(p, g, -2.0) == doctest::Approx(dm2).epsilon(1e-13));

    // support mismatch
    const Vector pure = (Vector(2) << 1.0, 0.0).finished();
    CHECK(renyi_divergence(pure, g, 0.0) == doctest::Approx(-std::log(2.0 / 3)).epsilon(1e-14));
    CHECK(renyi_divergence(pure, g, -2.0) == kInf);
    const Vector g_edge = (Vector(2) << 1.0, 0.0).finished();
    CHECK(renyi_divergence(p, g_edge, 2.0) == kInf);
}

TEST_CASE("Renyi divergence is non-negative and vanishes at p = g") {
    Rng rng(5, 0);
    const std::vector<double> alphas{-kInf, -2.0, 0.0, 0.5, 1.0, 2.0, kInf};
    for (int trial = 0; trial < 50; ++trial) {
        const Vector p = random_distribution(3, rng);
        const Vector g = random_distribution(3, rng);
        for (double a : alphas) {
            CHECK(std::abs(renyi_divergence(p, p, a)) <= 1e-12);
            CHECK(renyi_divergence(p, g, a) >= -1e-12);
            // Positive off the diagonal, except D_0 which only sees supports.
            if (a != 0.0) CHECK(renyi_divergence(p, g, a) > 0.0);
        }
    }
}

TEST_CASE("trace distance") {
    const std::vector<double> a{0.8, 0.2}, b{0.6, 0.4}, e0{1.0, 0.0}, e1{0.0, 1.0};
    CHECK(trace_distance(plus_state(), plus_state()) == doctest::Approx(0.0));
    CHECK(trace_distance(DensityMatrix::diagonal(e0).matrix(), DensityMatrix::diagonal(e1).matrix()) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(trace_distance(DensityMatrix::diagonal(a).matrix(), DensityMatrix::diagonal(b).matrix()) ==
          doctest::Approx(0.2).epsilon(1e-14));
    // |+> vs |0>: sqrt(1 - |<+|0>|^2) = 1/sqrt(2)
    CHECK(trace_distance(plus_state(), DensityMatrix::diagonal(e0).matrix()) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS(trace_distance(Matrix::Identity(2, 2), Matrix::Identity(3, 3)));
}

TEST_CASE("time translation") {
    const SystemSpec qubit = SystemSpec::ladder(2);
    CHECK((time_translate(plus_state(), qubit, 0.0) - plus_state()).cwiseAbs().maxCoeff() == 0.0);

    const Matrix flipped = time_translate(plus_state(), qubit, std::numbers::pi);
    CHECK(std::abs(flipped(1, 0) + 0.5) < 1e-15);
    CHECK(std::abs(flipped(0, 1) + 0.5) < 1e-15);
    CHECK(flipped(0, 0) == cplx(0.5, 0.0));

    const Matrix gamma = gibbs_state(SystemSpec::ladder(3), 0.7).matrix();
    for (double t : {0.3, 1.1, 5.0}) CHECK((time_translate(gamma, SystemSpec::ladder(3), t) - gamma).cwiseAbs().maxCoeff() == 0.0);

    Rng rng(9, 0);
    const SystemSpec spec = SystemSpec::four_level(1, 3);
    const Matrix h = random_hermitian(4, rng);
    const double t = 0.37;
    const Matrix out = time_translate(h, spec, t);
    for (int i = 0; i < 4; ++i) {
        CHECK(out(i, i) == h(i, i));
        for (int j = 0; j < 4; ++j) {
            const cplx phase = std::polar(1.0, -(spec.energy(i) - spec.energy(j)) * t);
            CHECK(std::abs(out(i, j) - phase * h(i, j)) < 1e-13);
        }
    }
}

TEST_CASE("Rng streams are counter based") {
    Rng a(42, 3), b(42, 3), c(42, 4);
    const double first = a.uniform();
    CHECK(first == b.uniform());
    CHECK(first != c.uniform());
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(a.below(7) < 7);
    }
    Rng h(1, 0);
    for (int n : {1, 2, 3, 5}) {
        const Matrix u = haar_unitary(n, h);
        CHECK((u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13);
    }
}
