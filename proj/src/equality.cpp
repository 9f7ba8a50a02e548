#include "qcl/equality.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcl {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void append_toffoli(Circuit& c, int a, int b, int t) {
    // standard T-gate network; Rz stands in for T up to global phase
    c.append(Gate::h(t));
    c.append(Gate::cnot(b, t));
    c.append(Gate::rz(t, -kQuarterPi));
    c.append(Gate::cnot(a, t));
    c.append(Gate::rz(t, kQuarterPi));
    c.append(Gate::cnot(b, t));
    c.append(Gate::rz(t, -kQuarterPi));
    c.append(Gate::cnot(a, t));
    c.append(Gate::rz(b, kQuarterPi));
    c.append(Gate::rz(t, kQuarterPi));
    c.append(Gate::cnot(a, b));
    c.append(Gate::h(t));
    c.append(Gate::rz(a, kQuarterPi));
    c.append(Gate::rz(b, -kQuarterPi));
    c.append(Gate::cnot(a, b));
}

void append_cswap(Circuit& c, int control, int x, int y) {
    c.append(Gate::cnot(y, x));
    append_toffoli(c, control, x, y);
    c.append(Gate::cnot(y, x));
}

}  // namespace

Circuit swap_test_circuit(int state_qubits) {
    if (state_qubits < 1) throw std::invalid_argument("need at least one state qubit");
    const int anc = 2 * state_qubits;
    Circuit c(2 * state_qubits + 1);
    c.append(Gate::h(anc));
    for (int q = 0; q < state_qubits; ++q) append_cswap(c, anc, q, state_qubits + q);
    c.append(Gate::h(anc));
    return c;
}

double swap_accept_prob_circuit(const DensityMatrix& rho, const PureState& psi) {
    if (rho.dim() != psi.dim()) throw std::invalid_argument("dimension mismatch in SWAP test");
    const int n = rho.num_qubits();
    const Circuit c = swap_test_circuit(n);

    // input rho (x) |psi><psi| (x) |0><0|
    Matrix in = Matrix::Zero(rho.dim() * psi.dim() * 2, rho.dim() * psi.dim() * 2);
    const Matrix joint =
        Eigen::kroneckerProduct(psi.projector(), rho.entries()).eval();  // psi on high wires
    in.topLeftCorner(joint.rows(), joint.cols()) = joint;

    // block layout: ancilla is the highest wire, so anc=0 is the top-left block
    const DensityMatrix out = apply_circuit(DensityMatrix(std::move(in)), c);
    double p0 = 0.0;
    for (Eigen::Index i = 0; i < joint.rows(); ++i) p0 += out.entries()(i, i).real();
    return p0;
}

TestOutcome swap_accept_prob(const DensityMatrix& rho, const PureState& psi,
                             std::optional<int> shots, std::uint64_t seed) {
    if (rho.dim() != psi.dim()) throw std::invalid_argument("dimension mismatch in SWAP test");
    TestOutcome out;
    out.accept_prob = 0.5 + 0.5 * rho.expectation(psi);
    if (shots) {
        if (*shots < 1) throw std::invalid_argument("shot count must be positive");
        const double p = swap_accept_prob_circuit(rho, psi);
        Rng rng(seed);
        long accepted = 0;
        for (int s = 0; s < *shots; ++s)
            if (rng.bernoulli(p)) ++accepted;
        out.sampled_freq = static_cast<double>(accepted) / *shots;
        out.sampled_bit = rng.bernoulli(p) ? 1 : 0;
    }
    return out;
}

double gswap_accept_prob(const DensityMatrix& rho, const PureState& psi, int copies) {
    if (copies < 1) throw std::invalid_argument("GSWAP needs at least one reference copy");
    const double f = rho.expectation(psi);
    return 1.0 / (copies + 1) + static_cast<double>(copies) / (copies + 1) * f;
}

int ideal_test(const DensityMatrix& rho, const PureState& psi, double delta) {
    if (delta < 0.0 || delta > 1.0) throw std::out_of_range("delta must lie in [0,1]");
    return fidelity(rho, psi) >= delta ? 1 : 0;
}

int ideal_test_single(const DensityMatrix& rho, const PureState& psi, Rng& rng) {
    return rng.bernoulli(fidelity(rho, psi)) ? 1 : 0;
}

int repetition_budget(double f, double eps, TestKind kind) {
    if (f < 0.0 || f >= 1.0) throw std::out_of_range("fidelity must lie in [0,1)");
    if (eps <= 0.0 || eps >= 1.0) throw std::out_of_range("target error must lie in (0,1)");
    if (kind == TestKind::Swap) {
        const double base = 0.5 * (1.0 + f);
        return static_cast<int>(std::ceil(std::log(eps) / std::log(base) - 1e-12));
    }
    if (eps <= f)
        throw std::invalid_argument("GSWAP cannot reach error below the fidelity floor");
    return static_cast<int>(std::ceil((1.0 - eps) / (eps - f) - 1e-12));
}

}  // namespace qcl
