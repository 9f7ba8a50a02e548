#include "doctest.h"

#include "qcl/gates.hpp"
#include "qcl/random.hpp"
#include "qcl/state.hpp"

#include <cmath>
#include <numbers>

using namespace qcl;

namespace {

Circuit random_circuit(int n, int gates, Rng& rng) {
    Circuit c(n);
    for (int g = 0; g < gates; ++g) {
        switch (rng.integer(5)) {
            case 0: c.append(Gate::rx(static_cast<int>(rng.integer(n)), rng.uniform(0, 6.28))); break;
            case 1: c.append(Gate::ry(static_cast<int>(rng.integer(n)), rng.uniform(0, 6.28))); break;
            case 2: c.append(Gate::rz(static_cast<int>(rng.integer(n)), rng.uniform(0, 6.28))); break;
            case 3: c.append(Gate::h(static_cast<int>(rng.integer(n)))); break;
            default: {
                int a = static_cast<int>(rng.integer(n)), b = static_cast<int>(rng.integer(n));
                if (a == b) b = (b + 1) % n;
                c.append(Gate::cnot(a, b));
            }
        }
    }
    return c;
}

}  // namespace

TEST_CASE("hadamard takes |0> to |+>") {
    const PureState out = apply_circuit(PureState::zero(1), Circuit(1, {Gate::h(0)}));
    CHECK(std::abs(out.amplitude(0) - Complex(1 / std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(out.amplitude(1) - Complex(1 / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("cnot on |+>|0> builds the Bell pair") {
    Circuit c(2, {Gate::h(0), Gate::cnot(0, 1)});
    const PureState out = apply_circuit(PureState::zero(2), c);
    CHECK(std::abs(out.amplitude(0b00) - Complex(1 / std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(out.amplitude(0b11) - Complex(1 / std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(out.amplitude(0b01)) < 1e-12);
    CHECK(std::abs(out.amplitude(0b10)) < 1e-12);
}

TEST_CASE("random circuits preserve norm and trace") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = random_circuit(3, 25, rng);
        const PureState out = apply_circuit(haar_state(8, rng), c);
        CHECK(std::abs(out.amplitudes().squaredNorm() - 1.0) < 1e-12);
        const DensityMatrix rho_out = apply_circuit(DensityMatrix(haar_state(8, rng)), c);
        CHECK(std::abs(rho_out.entries().trace().real() - 1.0) < 1e-12);
    }
}

TEST_CASE("partial trace of the Bell pair is maximally mixed") {
    Circuit c(2, {Gate::h(0), Gate::cnot(0, 1)});
    const PureState bell = apply_circuit(PureState::zero(2), c);
    const DensityMatrix r = partial_trace(bell, {0});
    CHECK((r.entries() - Matrix::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace of a product state recovers the factor") {
    Rng rng(3);
    const PureState a = haar_state(2, rng), b = haar_state(2, rng);
    const DensityMatrix r = partial_trace(a.tensor(b), {0});
    CHECK((r.entries() - a.projector()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace preserves trace and positivity") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho(haar_state(8, rng));
        for (int keep = 0; keep < 3; ++keep) {
            const DensityMatrix r = partial_trace(rho, {keep});
            CHECK(std::abs(r.entries().trace().real() - 1.0) < 1e-12);
            Eigen::SelfAdjointEigenSolver<Matrix> es(r.entries(), Eigen::EigenvaluesOnly);
            CHECK(es.eigenvalues().minCoeff() > -1e-10);
        }
    }
    CHECK_THROWS_AS(partial_trace(DensityMatrix(haar_state(4, rng)), std::set<int>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(DensityMatrix(haar_state(4, rng)), std::set<int>{5}),
                    std::out_of_range);
}

TEST_CASE("distance metrics on identical and orthogonal states") {
    const DensityMatrix zero{PureState::basis(1, 0)};
    const DensityMatrix one{PureState::basis(1, 1)};
    auto same = distance_metrics(zero, zero);
    CHECK(same.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.trace_distance == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(same.bures_angle == doctest::Approx(0.0).epsilon(1e-6));
    auto orth = distance_metrics(zero, one);
    CHECK(orth.fidelity == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(orth.trace_distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(orth.bures_angle == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
}

TEST_CASE("pure-state fidelity matches the direct inner product") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const PureState a = haar_state(2, rng), b = haar_state(2, rng);
        const double expected = a.overlap(b);  // independent route
        const auto m = distance_metrics(DensityMatrix(a), DensityMatrix(b));
        CHECK(m.fidelity == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("fidelity / trace-distance sandwich holds on random pairs") {
    Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index d = trial % 2 ? 2 : 4;
        const auto m = distance_metrics(DensityMatrix(haar_state(d, rng)),
                                        DensityMatrix(haar_state(d, rng)));
        // pure pairs saturate the upper bound; compare in squared form so the
        // eigensolver dust is not amplified near F = 1
        CHECK(1.0 - std::sqrt(m.fidelity) <= m.trace_distance + 1e-7);
        CHECK(m.trace_distance * m.trace_distance <= 1.0 - m.fidelity + 1e-7);
    }
}

TEST_CASE("depolarizing channel never increases trace distance") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix a(haar_state(4, rng)), b(haar_state(4, rng));
        const double before = trace_distance(a, b);
        const double p = rng.uniform();
        CHECK(trace_distance(depolarize(a, p), depolarize(b, p)) <= before + 1e-12);
    }
}

TEST_CASE("haar sampling is deterministic under the seed") {
    Rng r1(42), r2(42);
    CHECK((haar_state(8, r1).amplitudes() - haar_state(8, r2).amplitudes()).norm() < 1e-15);
    Rng r3(42), r4(42);
    CHECK((haar_unitary(4, r3) - haar_unitary(4, r4)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("haar unitaries are unitary") {
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
        const Matrix u = haar_unitary(4, rng);
        CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("haar states cover the Bloch sphere uniformly") {
    Rng rng(1);
    double mx = 0, my = 0, mz = 0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
        const PureState s = haar_state(2, rng);
        const Complex a = s.amplitude(0), b = s.amplitude(1);
        mx += 2.0 * std::real(std::conj(a) * b);
        my += 2.0 * std::imag(std::conj(a) * b);
        mz += std::norm(a) - std::norm(b);
    }
    const double norm = std::sqrt(mx * mx + my * my + mz * mz) / samples;
    CHECK(norm <= 0.02);
}

TEST_CASE("haar measure is left-invariant in distribution") {
    // the first-entry weight statistic matches between U and V U samples
    Rng rng(2);
    const Matrix v = haar_unitary(4, rng);
    double plain = 0.0, rotated = 0.0;
    const int samples = 2000;
    for (int i = 0; i < samples; ++i) {
        const Matrix u = haar_unitary(4, rng);
        plain += std::norm(u(0, 0));
        rotated += std::norm((v * u)(0, 0));
    }
    plain /= samples;
    rotated /= samples;
    CHECK(plain == doctest::Approx(0.25).epsilon(0.1));
    CHECK(rotated == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("bloch state hits the poles and the equator") {
    CHECK(bloch_state(0.0, 0.0).overlap(PureState::basis(1, 0)) == doctest::Approx(1.0));
    const PureState plus = bloch_state(std::numbers::pi / 2, 0.0);
    CHECK(std::abs(plus.amplitude(0) - Complex(1 / std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(plus.amplitude(1) - Complex(1 / std::sqrt(2.0))) < 1e-12);
    const double eta = 1.234;
    CHECK(bloch_state(std::numbers::pi / 2, eta).overlap(equatorial_state(eta)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(bloch_state(-0.1, 0.0), std::out_of_range);
    CHECK_THROWS_AS(bloch_state(1.0, 7.0), std::out_of_range);
}

TEST_CASE("state invariants are enforced") {
    Vector bad(2);
    bad << 1.0, 1.0;  // unnormalised
    CHECK_THROWS_AS(PureState{bad}, std::invalid_argument);
    Vector odd(3);
    odd << 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(PureState{odd}, std::invalid_argument);
    Matrix m = Matrix::Identity(2, 2);  // trace 2
    CHECK_THROWS_AS(DensityMatrix{m}, std::invalid_argument);
    Matrix h(2, 2);
    h << 0.5, 0.9, 0.9, 0.5;  // Hermitian, unit trace, not PSD
    CHECK_THROWS_AS(DensityMatrix{h}, std::invalid_argument);
}

TEST_CASE("csv round trip keeps amplitudes") {
    Rng rng(31);
    const PureState s = haar_state(8, rng);
    const PureState back = PureState::from_csv(s.to_csv());
    CHECK((s.amplitudes() - back.amplitudes()).norm() < 1e-15);
}
