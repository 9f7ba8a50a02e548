#include "doctest.h"

#include "qcl/gates.hpp"
#include "qcl/random.hpp"

#include <cmath>

using namespace qcl;

TEST_CASE("every gate kind yields a unitary matrix") {
    Rng rng(13);
    Circuit c(3);
    c.append(Gate::rx(0, 0.3));
    c.append(Gate::ry(1, -1.2));
    c.append(Gate::rz(2, 2.7));
    c.append(Gate::h(0));
    c.append(Gate::x(1));
    c.append(Gate::y(2));
    c.append(Gate::z(0));
    c.append(Gate::cnot(0, 2));
    c.append(Gate::cz(1, 2));
    c.append(Gate::swap(0, 1));
    c.append(Gate::controlled_reflection(2, {0, 1}, haar_state(4, rng)));
    const Matrix u = circuit_unitary(c);
    CHECK((u.adjoint() * u - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two-qubit gates act as expected on basis states") {
    // CNOT control wire 0: |q1 q0> = |01> -> |11>
    PureState s = apply_circuit(PureState::basis(2, 0b01), Circuit(2, {Gate::cnot(0, 1)}));
    CHECK(std::abs(s.amplitude(0b11) - Complex(1.0)) < 1e-12);
    s = apply_circuit(PureState::basis(2, 0b10), Circuit(2, {Gate::cnot(0, 1)}));
    CHECK(std::abs(s.amplitude(0b10) - Complex(1.0)) < 1e-12);
    s = apply_circuit(PureState::basis(2, 0b11), Circuit(2, {Gate::cz(0, 1)}));
    CHECK(std::abs(s.amplitude(0b11) + Complex(1.0)) < 1e-12);
    s = apply_circuit(PureState::basis(2, 0b01), Circuit(2, {Gate::swap(0, 1)}));
    CHECK(std::abs(s.amplitude(0b10) - Complex(1.0)) < 1e-12);
}

TEST_CASE("controlled reflection flips the axis component when the control is on") {
    Rng rng(5);
    const PureState axis = haar_state(4, rng);
    Circuit c(3);
    c.append(Gate::controlled_reflection(2, {0, 1}, axis));
    // control |0>: nothing happens
    const PureState idle = haar_state(4, rng).tensor(PureState::basis(1, 0));
    CHECK((apply_circuit(idle, c).amplitudes() - idle.amplitudes()).norm() < 1e-12);
    // control |1>: the axis state picks up a minus sign
    const PureState active = axis.tensor(PureState::basis(1, 1));
    CHECK((apply_circuit(active, c).amplitudes() + active.amplitudes()).norm() < 1e-12);
}

TEST_CASE("circuit inverse undoes the circuit") {
    Rng rng(19);
    Circuit c(2);
    c.append(Gate::ry(0, 0.7));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::rz(1, -0.4));
    c.append(Gate::h(0));
    const PureState in = haar_state(4, rng);
    PureState out = apply_circuit(apply_circuit(in, c), c.inverse());
    CHECK((out.amplitudes() - in.amplitudes()).norm() < 1e-12);
}

TEST_CASE("circuit text round trip") {
    Circuit c(3);
    c.append(Gate::ry(0, 0.25));
    c.append(Gate::cz(1, 2));
    c.append(Gate::rx(2, -1.5));
    c.append(Gate::cnot(2, 0));
    const Circuit back = Circuit::from_text(c.to_text());
    REQUIRE(back.size() == c.size());
    const Matrix u1 = circuit_unitary(c), u2 = circuit_unitary(back);
    CHECK((u1 - u2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gate validation catches bad wiring") {
    Circuit c(2);
    CHECK_THROWS_AS(c.append(Gate::rx(5, 1.0)), std::out_of_range);
    CHECK_THROWS_AS(c.append(Gate::cnot(1, 1)), std::invalid_argument);
    // non-unit reflection axis is a non-unitary gate
    Vector bad(2);
    bad << 0.5, 0.5;
    Gate g{GateKind::ControlledReflection, {1, 0}, 0.0, bad};
    CHECK_THROWS_AS(c.append(g), std::invalid_argument);
    // width mismatch between state and circuit
    CHECK_THROWS_AS(apply_circuit(PureState::zero(3), c), std::invalid_argument);
}
