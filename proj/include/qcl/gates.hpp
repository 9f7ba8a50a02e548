#pragma once

#include "qcl/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcl {

enum class GateKind { Rx, Ry, Rz, H, X, Y, Z, CNOT, CZ, SWAP, ControlledReflection };

bool is_rotation(GateKind kind);
std::string gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

// One gate. Rotation gates carry an angle in radians; ControlledReflection
// carries the reflection axis state and acts on targets[0] (control) and
// targets[1..] (the reflected register, little-endian).
struct Gate {
    GateKind kind;
    std::vector<int> targets;
    double param = 0.0;
    std::optional<Vector> reflection_state;

    static Gate rx(int q, double theta) { return {GateKind::Rx, {q}, theta, std::nullopt}; }
    static Gate ry(int q, double theta) { return {GateKind::Ry, {q}, theta, std::nullopt}; }
    static Gate rz(int q, double theta) { return {GateKind::Rz, {q}, theta, std::nullopt}; }
    static Gate h(int q) { return {GateKind::H, {q}, 0.0, std::nullopt}; }
    static Gate x(int q) { return {GateKind::X, {q}, 0.0, std::nullopt}; }
    static Gate y(int q) { return {GateKind::Y, {q}, 0.0, std::nullopt}; }
    static Gate z(int q) { return {GateKind::Z, {q}, 0.0, std::nullopt}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, 0.0, std::nullopt}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, 0.0, std::nullopt}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, 0.0, std::nullopt}; }
    static Gate controlled_reflection(int control, std::vector<int> block, const PureState& axis);

    // 2x2 matrix of a single-qubit gate.
    Matrix single_qubit_matrix() const;
};

// Ordered gate list on a fixed number of wires.
class Circuit {
public:
    explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {}
    Circuit(int num_qubits, std::vector<Gate> gates);

    void append(Gate g);
    int num_qubits() const { return num_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    Circuit inverse() const;

    // One gate per line: "kind wires [param]".
    std::string to_text() const;
    static Circuit from_text(const std::string& text);

private:
    void validate(const Gate& g) const;
    int num_qubits_;
    std::vector<Gate> gates_;
};

PureState apply_circuit(const PureState& psi, const Circuit& circuit);
DensityMatrix apply_circuit(const DensityMatrix& rho, const Circuit& circuit);
void apply_gate_in_place(Vector& amps, int num_qubits, const Gate& g);

// Full 2^n x 2^n unitary of the circuit.
Matrix circuit_unitary(const Circuit& circuit);

}  // namespace qcl
