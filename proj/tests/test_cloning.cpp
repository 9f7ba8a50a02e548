#include "doctest.h"

#include "qcl/cloning.hpp"
#include "qcl/random.hpp"

#include <cmath>
#include <numbers>

using namespace qcl;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("optimal fidelity closed forms") {
    CHECK(optimal_fidelity(CloneSpec::universal(1, 2)) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(optimal_fidelity(CloneSpec::universal(3, 3)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(optimal_fidelity(CloneSpec::universal(1, 2, Figure::Global)) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(optimal_fidelity(CloneSpec::phase_covariant(1, 2)) ==
          doctest::Approx(0.5 * (1.0 + std::sqrt(2.0) / 2.0)).epsilon(1e-15));
    CHECK(optimal_fidelity(CloneSpec::fixed_overlap(0.5)) == doctest::Approx(0.987).epsilon(2e-4));
    CHECK(optimal_fidelity(CloneSpec::fixed_overlap(std::cos(kPi / 9.0))) ==
          doctest::Approx(0.997).epsilon(1e-3));
    CHECK(optimal_fidelity(CloneSpec::fixed_overlap(0.0, 1, 2, Figure::Global)) ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("unsupported combinations raise instead of approximating") {
    CHECK_THROWS_AS(optimal_fidelity(CloneSpec::phase_covariant(2, 4)), std::invalid_argument);
    CHECK_THROWS_AS(optimal_fidelity(CloneSpec::fixed_overlap(0.5, 1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(optimal_fidelity(CloneSpec::four_state(kPi / 8.0)), std::invalid_argument);
    CHECK_THROWS_AS(optimal_fidelity(CloneSpec::universal(3, 2)), std::invalid_argument);
}

TEST_CASE("equatorial map: global fidelity matches the closed form") {
    Rng rng(3);
    for (double eta : {kPi / 4.0, 0.3, 1.1}) {
        const double expected = std::pow(1.0 + std::sin(eta) + std::cos(eta), 2) / 8.0;
        for (int k = 0; k < 8; ++k) {
            const PureState psi = equatorial_state(rng.uniform(0, 2 * kPi));
            const CloneOutput out = phase_cov_transformation(eta, psi);
            const double fg = out.global_state.expectation(psi.tensor(psi));
            CHECK(fg == doctest::Approx(expected).epsilon(1e-10));
        }
    }
    // eta = pi/4, |+>: (1+sqrt2)^2/8
    const CloneOutput out = phase_cov_transformation(kPi / 4.0, equatorial_state(0.0));
    const PureState plus2 = equatorial_state(0.0).tensor(equatorial_state(0.0));
    CHECK(out.global_state.expectation(plus2) ==
          doctest::Approx(std::pow(1.0 + std::sqrt(2.0), 2) / 8.0).epsilon(1e-12));
}

TEST_CASE("equatorial map degenerates to a pass-through at eta = 0") {
    Rng rng(5);
    for (int k = 0; k < 8; ++k) {
        const PureState psi = equatorial_state(rng.uniform(0, 2 * kPi));
        const CloneOutput out = phase_cov_transformation(0.0, psi);
        CHECK(out.clones[0].expectation(psi) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.clones[1].expectation(psi) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("equatorial map: both local fidelities optimal at eta = pi/4") {
    const double target = 0.5 * (1.0 + std::sqrt(2.0) / 2.0);
    Rng rng(7);
    for (int k = 0; k < 8; ++k) {
        const PureState psi = equatorial_state(rng.uniform(0, 2 * kPi));
        const CloneOutput out = phase_cov_transformation(kPi / 4.0, psi);
        CHECK(out.clones[0].expectation(psi) == doctest::Approx(target).epsilon(1e-12));
        CHECK(out.clones[1].expectation(psi) == doctest::Approx(target).epsilon(1e-12));
    }
}

TEST_CASE("global fidelity peaks exactly at eta = pi/4 on a symmetric grid") {
    const PureState psi = equatorial_state(0.7);
    const PureState psi2 = psi.tensor(psi);
    double best = -1.0;
    int best_idx = -1;
    const int points = 1001;
    for (int i = 0; i < points; ++i) {
        const double eta = kPi / 2.0 * i / (points - 1);
        const double fg = phase_cov_transformation(eta, psi).global_state.expectation(psi2);
        if (fg > best) {
            best = fg;
            best_idx = i;
        }
    }
    CHECK(best_idx == (points - 1) / 2);  // grid midpoint is pi/4
}

TEST_CASE("ideal cloning network hits the equatorial optimum") {
    const double target = 0.5 * (1.0 + std::sqrt(2.0) / 2.0);
    double mean_b = 0.0, mean_e = 0.0, max_asym = 0.0;
    const int points = 64;
    for (int i = 0; i < points; ++i) {
        const PureState psi = equatorial_state(2 * kPi * i / points);
        const CloneOutput out = phase_cov_ideal_clone(psi);
        const double fb = out.clones[0].expectation(psi);
        const double fe = out.clones[1].expectation(psi);
        mean_b += fb;
        mean_e += fe;
        max_asym = std::max(max_asym, std::abs(fb - fe));
    }
    mean_b /= points;
    mean_e /= points;
    CHECK(mean_b == doctest::Approx(target).epsilon(1e-6));
    CHECK(mean_e == doctest::Approx(target).epsilon(1e-6));
    CHECK(max_asym <= 1e-8);
}

TEST_CASE("ideal cloning network on a pole input stays a valid state") {
    // |0> lies outside the equatorial family; fidelities are recorded, no
    // optimality claim attaches to them
    const CloneOutput out = phase_cov_ideal_clone(PureState::basis(1, 0));
    for (const auto& clone : out.clones) {
        const double f = clone.expectation(PureState::basis(1, 0));
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("fixed overlap clone meets the optimal fidelity and stays physical") {
    const double s = std::cos(kPi / 9.0);
    const auto clone = fixed_overlap_clone(s, 0);
    auto [phi0, phi1] = fixed_overlap_pair(s);
    CHECK(clone.state.expectation(phi0) == doctest::Approx(0.997).epsilon(1e-3));
    CHECK(std::abs(clone.state.entries().trace().real() - 1.0) < 1e-12);
    CHECK_FALSE(clone.degenerate);
    // s = 0: exact cloning of orthogonal states
    const auto exact = fixed_overlap_clone(0.0, 1);
    auto pair0 = fixed_overlap_pair(0.0);
    CHECK(exact.state.expectation(pair0.second) == doctest::Approx(1.0).epsilon(1e-12));
    // s = 1/2: alpha - beta = sqrt(4/5)
    const auto half = fixed_overlap_clone(0.5, 0);
    CHECK(half.alpha - half.beta == doctest::Approx(std::sqrt(0.8)).epsilon(1e-12));
    // s = 1 degenerates to the identity clone
    CHECK(fixed_overlap_clone(1.0, 0).degenerate);
}

TEST_CASE("four-state clone shrinking factors and Bloch vectors") {
    auto [ex, ez] = four_state_shrinking(kPi / 8.0);
    CHECK(ex == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ez == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    const DensityMatrix c = four_state_clone(kPi / 8.0, 0, 0);
    // Bloch vector (sin(pi/4), 0, cos(pi/4))/sqrt(2)
    const double bx = 2.0 * c.entries()(0, 1).real();
    const double bz = (c.entries()(0, 0) - c.entries()(1, 1)).real();
    CHECK(bx == doctest::Approx(std::sin(kPi / 4.0) / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(bz == doctest::Approx(std::cos(kPi / 4.0) / std::sqrt(2.0)).epsilon(1e-12));

    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            const DensityMatrix r = four_state_clone(kPi / 8.0, x, a);
            CHECK(std::abs(r.entries().trace().real() - 1.0) < 1e-12);
            Eigen::SelfAdjointEigenSolver<Matrix> es(r.entries(), Eigen::EigenvaluesOnly);
            CHECK(es.eigenvalues().minCoeff() > -1e-12);
        }
}

TEST_CASE("helstrom bound on equal and orthogonal states") {
    const DensityMatrix zero{PureState::basis(1, 0)}, one{PureState::basis(1, 1)};
    CHECK(helstrom_prob(zero, zero, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(helstrom_prob(zero, one, 0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(helstrom_prob(zero, one, 0.7, 0.7), std::invalid_argument);
}

TEST_CASE("helstrom on pure states with overlap s") {
    // oracle: eigenvalues of the rank-2 difference give 1/2 + sqrt(1-s^2)/2
    for (double s : {0.0, 0.3, 0.5, 0.8, 0.95}) {
        auto [a, b] = fixed_overlap_pair(s);
        const double got = helstrom_prob(DensityMatrix(a), DensityMatrix(b), 0.5, 0.5);
        CHECK(got == doctest::Approx(0.5 + 0.5 * std::sqrt(1.0 - s * s)).epsilon(1e-12));
    }
}

TEST_CASE("helstrom is symmetric under swapping the hypotheses") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix a = partial_trace(haar_state(4, rng), {0});
        const DensityMatrix b = partial_trace(haar_state(4, rng), {0});
        const double q = rng.uniform(0.1, 0.9);
        CHECK(helstrom_prob(a, b, q, 1 - q) ==
              doctest::Approx(helstrom_prob(b, a, 1 - q, q)).epsilon(1e-12));
    }
}

TEST_CASE("unambiguous discrimination closed form") {
    CHECK(unambiguous_disc(kPi / 2.0).conclusive == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unambiguous_disc(0.0).inconclusive == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unambiguous_disc(kPi / 3.0).conclusive == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("local fidelity of the global optimiser lower-bounds the local optimum") {
    for (int i = 1; i <= 50; ++i) {
        const double s = i / 51.0;
        CHECK(fixed_overlap_local_of_global(s, 1, 2) <=
              optimal_fidelity(CloneSpec::fixed_overlap(s)) + 1e-9);
    }
}

TEST_CASE("fidelity ordering across the families") {
    const double pc = optimal_fidelity(CloneSpec::phase_covariant(1, 2));
    const double ul = optimal_fidelity(CloneSpec::universal(1, 2));
    const double ug = optimal_fidelity(CloneSpec::universal(1, 2, Figure::Global));
    CHECK(pc > ul);
    CHECK(ul > ug);
}
