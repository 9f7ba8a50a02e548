#pragma once

#include "qcl/gates.hpp"
#include "qcl/random.hpp"
#include "qcl/state.hpp"

#include <optional>

namespace qcl {

struct TestOutcome {
    double accept_prob;                  // in [0,1]
    std::optional<int> sampled_bit;      // set when shots were requested
    std::optional<double> sampled_freq;  // acceptance frequency over the shots
};

// SWAP test of rho against the pure reference psi.
// Analytic accept probability 1/2 + 1/2 <psi|rho|psi>. When `shots` is given,
// the explicit ancilla + controlled-SWAP circuit is simulated and sampled.
TestOutcome swap_accept_prob(const DensityMatrix& rho, const PureState& psi,
                             std::optional<int> shots = std::nullopt, std::uint64_t seed = 0);

// The explicit SWAP-test circuit on 2n+1 wires; ancilla is the last wire.
Circuit swap_test_circuit(int state_qubits);
// Analytic acceptance of the simulated circuit (no sampling); cross-checks the
// closed form.
double swap_accept_prob_circuit(const DensityMatrix& rho, const PureState& psi);

// Generalised SWAP test with M reference copies: 1/(M+1) + M/(M+1) <psi|rho|psi>.
double gswap_accept_prob(const DensityMatrix& rho, const PureState& psi, int copies);

// Threshold test: 1 iff F(rho, |psi><psi|) >= delta.
int ideal_test(const DensityMatrix& rho, const PureState& psi, double delta);
// Single-instance variant: accepts with probability exactly F.
int ideal_test_single(const DensityMatrix& rho, const PureState& psi, Rng& rng);

enum class TestKind { Swap, Gswap };

// Smallest repetition/copy count M bringing the one-sided error to eps:
// swap:  ((1+F)/2)^M <= eps,   gswap: 1/(M+1) + M F/(M+1) <= eps.
// The gswap variant is infeasible when eps <= F.
int repetition_budget(double fidelity, double eps, TestKind kind);

}  // namespace qcl
