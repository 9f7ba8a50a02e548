#include "doctest.h"

#include "qcl/emulation.hpp"
#include "qcl/random.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

using namespace qcl;

namespace {

EmulationSamples random_samples(Eigen::Index dim, int count, Rng& rng, Matrix* u_out = nullptr) {
    const Matrix u = haar_unitary(dim, rng);
    EmulationSamples s;
    for (int i = 0; i < count; ++i) {
        const PureState in = haar_state(dim, rng);
        s.inputs.push_back(in);
        s.outputs.emplace_back(Vector(u * in.amplitudes()));
    }
    s.reference_index = rng.integer(count);
    if (u_out) *u_out = u;
    return s;
}

}  // namespace

TEST_CASE("two samples give one block per stage") {
    Rng rng(1);
    const QECircuit qe = build_qe(random_samples(4, 2, rng));
    CHECK(qe.block_count == 1);
    int reflections = 0;
    for (const auto& g : qe.circuit.gates())
        if (g.kind == GateKind::ControlledReflection) ++reflections;
    // 2 per stage-1 block, 1 in stage 2, 2 per stage-4 block
    CHECK(reflections == 5);
    CHECK(qe.stage1_gates == 3);
}

TEST_CASE("all controlled reflections are unitary") {
    Rng rng(2);
    const QECircuit qe = build_qe(random_samples(4, 3, rng));
    for (const auto& g : qe.circuit.gates()) {
        if (g.kind != GateKind::ControlledReflection) continue;
        Circuit single(qe.circuit.num_qubits());
        single.append(g);
        const Matrix u = circuit_unitary(single);
        CHECK((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("stage-4 block equals the conjugated stage-1 block") {
    Rng rng(3);
    Matrix u;
    const EmulationSamples s = random_samples(4, 3, rng, &u);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == s.reference_index) continue;
        const Matrix w = qe_stage1_block(s, i);
        const Matrix wout = qe_stage4_block(s, i);
        const Matrix u_ext = Eigen::kroneckerProduct(Matrix::Identity(2, 2), u).eval();
        CHECK((wout - u_ext * w * u_ext.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("the reference state is a fixed point of the emulator") {
    Rng rng(4);
    Matrix u;
    const EmulationSamples s = random_samples(4, 3, rng, &u);
    const PureState& ref = s.inputs[s.reference_index];
    const QEResult res = run_qe(s, ref);
    CHECK(res.stage1_success_prob == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(res.output_state.has_value());
    CHECK(res.output_state->expectation(s.outputs[s.reference_index]) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a target orthogonal to the sample span never leaves stage 1") {
    Rng rng(5);
    const Eigen::Index d = 8;
    const Matrix u = haar_unitary(d, rng);
    Matrix basis = haar_unitary(d, rng);
    EmulationSamples s;
    for (int i = 0; i < 2; ++i) {
        const PureState in{Vector(basis.col(i))};
        s.inputs.push_back(in);
        s.outputs.emplace_back(Vector(u * in.amplitudes()));
    }
    s.reference_index = 0;
    const QEResult res = run_qe(s, PureState{Vector(basis.col(2))});
    CHECK(res.stage1_success_prob == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.postselect_prob == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(res.output_state.has_value());
}

TEST_CASE("one-block closed form follows the five-term overlap expression") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        EmulationSamples s = random_samples(2, 2, rng);
        s.reference_index = 1;
        const PureState target = haar_state(2, rng);
        const Vector psi = target.amplitudes();
        const Vector phir = s.inputs[1].amplitudes();
        const Vector phi1 = s.inputs[0].amplitudes();
        const Complex a = phir.dot(psi), b = phi1.dot(psi), g = phir.dot(phi1);
        Vector expected = Vector::Zero(4);
        expected.segment(0, 2) = a * phir;
        expected.segment(2, 2) = psi - a * phir - 2.0 * b * phi1 + 2.0 * a * std::conj(g) * phi1;
        const PureState chi = chi_closed_form(s, target);
        CHECK((chi.amplitudes() - expected).norm() < 1e-12);
    }
}

TEST_CASE("closed form collapses onto the reference fixed point") {
    Rng rng(7);
    EmulationSamples s = random_samples(4, 2, rng);
    const PureState& ref = s.inputs[s.reference_index];
    const PureState chi = chi_closed_form(s, ref);
    Vector expect = Vector::Zero(8);
    expect.segment(0, 4) = ref.amplitudes();
    CHECK((chi.amplitudes() - expect).norm() < 1e-9);
}

TEST_CASE("closed forms reproduce the recursion for one and two blocks") {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const int count = 2 + static_cast<int>(rng.integer(2));  // 2 or 3 samples
        const EmulationSamples s = random_samples(2, count, rng);
        const PureState target = haar_state(2, rng);
        const PureState closed = chi_closed_form(s, target);
        const PureState rec = chi_recursion(s, target);
        CHECK(closed.overlap(rec) >= 1.0 - 1e-10);
    }
}

TEST_CASE("one-block attack saturates at alpha = 1/sqrt(2) and alpha = 1") {
    const auto unity = one_block_attack(1.0 / std::sqrt(2.0), 4, 11);
    CHECK(unity.bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unity.simulated_fidelity == doctest::Approx(1.0).epsilon(1e-9));
    const auto trivial = one_block_attack(1.0, 4, 12);
    CHECK(trivial.simulated_fidelity == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("one-block attack at alpha = 0.6 meets the arithmetic bound") {
    const auto r = one_block_attack(0.6, 4, 13);
    CHECK(r.bound == doctest::Approx(0.36 * (1.0 + 4.0 * 0.4096)).epsilon(1e-12));
    CHECK(r.simulated_fidelity >= r.bound - 1e-9);
}

TEST_CASE("output fidelity dominates the square root of the stage-1 probability") {
    Rng rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index d = trial % 2 ? 2 : 4;
        const int count = 2 + static_cast<int>(rng.integer(3));
        Matrix u;
        const EmulationSamples s = random_samples(d, count, rng, &u);
        const PureState target = haar_state(d, rng);
        const QEResult res = run_qe(s, target);
        if (!res.output_state) continue;
        const PureState truth{Vector(u * target.amplitudes())};
        const double f = res.output_state->expectation(truth);
        CHECK(f >= std::sqrt(res.stage1_success_prob) - 1e-9);
        // the mixed channel output keeps at least the accepted branch's share
        const double fc = fidelity(*res.channel_output, truth);
        CHECK(fc >= res.postselect_prob * f - 1e-9);
    }
}

TEST_CASE("a span-covering reference makes in-span targets emulate perfectly") {
    Rng rng(10);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index d = 8;
        const Matrix u = haar_unitary(d, rng);
        Vector e1 = haar_state(d, rng).amplitudes();
        Vector e2 = haar_state(d, rng).amplitudes();
        e2 -= e1.dot(e2) * e1;
        e2 /= e2.norm();
        Vector ref = (e1 + e2) / std::sqrt(2.0);
        EmulationSamples s;
        s.inputs = {PureState(e1), PureState(ref)};
        s.outputs = {PureState(Vector(u * e1)), PureState(Vector(u * ref))};
        s.reference_index = 1;
        Vector z(2);
        z << Complex(rng.gaussian(), rng.gaussian()), Complex(rng.gaussian(), rng.gaussian());
        z /= z.norm();
        const PureState target{Vector(z(0) * e1 + z(1) * e2)};
        const QEResult res = run_qe(s, target);
        CHECK(res.stage1_success_prob >= 1.0 - 1e-6);
        const PureState truth{Vector(u * target.amplitudes())};
        CHECK(res.output_state->expectation(truth) >= 1.0 - 1e-9);
    }
}

TEST_CASE("three-state forgery probability") {
    CHECK(three_state_forgery_prob(0.0) == doctest::Approx(0.0));
    CHECK(three_state_forgery_prob(1.0 / std::sqrt(2.0)) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK_THROWS_AS(three_state_forgery_prob(0.9), std::out_of_range);
    double best = -1.0, best_g = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double g = i / 1000.0 / std::sqrt(2.0);
        const double v = three_state_forgery_prob(g);
        if (v > best) {
            best = v;
            best_g = g;
        }
    }
    CHECK(best > 0.0);
    CHECK(best_g > 0.01);
    CHECK(best_g < 1.0 / std::sqrt(2.0) - 0.01);
}

TEST_CASE("sample converter rejects malformed inputs") {
    Rng rng(14);
    Vector bad = Vector::Zero(4);
    bad(0) = 1.0;
    CHECK_THROWS_AS(invert_samples({{0, 0}, {1, 1}}, PureState(bad), rng), std::invalid_argument);
}

TEST_CASE("sample converter outputs both signs with equal probability") {
    // f = identity on one bit: pairs (0,0), (1,1); superposition (|00>+|11>)/sqrt2
    Vector pair = Vector::Zero(4);
    pair(0b00) = 1.0 / std::sqrt(2.0);
    pair(0b11) = 1.0 / std::sqrt(2.0);
    int plus = 0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        Rng rng(100 + t);
        const InvertedSamples inv = invert_samples({{0, 0}, {1, 1}}, PureState(pair), rng);
        if (inv.measured_sign > 0) ++plus;
    }
    const double freq = static_cast<double>(plus) / trials;
    CHECK(std::abs(freq - 0.5) < 0.03);
}

TEST_CASE("degenerate classical outputs make the conversion trivial") {
    // f constant: y1 == yk, the superposed register is a product state
    Vector pair = Vector::Zero(4);
    pair(0b00) = 1.0 / std::sqrt(2.0);  // |x=0, y=0>
    pair(0b01) = 1.0 / std::sqrt(2.0);  // |x=1, y=0>
    Rng rng(15);
    const InvertedSamples inv = invert_samples({{0, 0}, {1, 0}}, PureState(pair), rng);
    CHECK(inv.measured_sign == 1);  // the minus branch has zero weight
    CHECK(inv.samples.inputs[1].overlap(inv.samples.inputs[0]) == doctest::Approx(1.0));
}

TEST_CASE("full inversion pipeline emulates the inverse oracle exactly") {
    // invertible single-bit f = NOT: y1 = f(0) = 1, yk = f(1) = 0
    Vector pair = Vector::Zero(4);
    pair(0b10) = 1.0 / std::sqrt(2.0);  // |x=0, y=1>
    pair(0b01) = 1.0 / std::sqrt(2.0);  // |x=1, y=0>
    for (std::uint64_t seed : {21, 22, 23, 24}) {
        Rng rng(seed);
        const InvertedSamples inv = invert_samples({{0, 1}, {1, 0}}, PureState(pair), rng);
        // target |y_k = 0, 0>; expected output |y_k, f^-1(y_k)> = |0, 1>
        const PureState target = PureState::basis(2, 0b00);
        const PureState expected = PureState::basis(2, 0b10);
        const QEResult res = run_qe(inv.samples, target);
        REQUIRE(res.output_state.has_value());
        CHECK(res.output_state->expectation(expected) == doctest::Approx(1.0).epsilon(1e-9));
    }
}
