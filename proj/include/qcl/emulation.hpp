#pragma once

#include "qcl/gates.hpp"
#include "qcl/random.hpp"
#include "qcl/state.hpp"

#include <optional>
#include <vector>

namespace qcl {

// Ordered input/output sample pairs of a hidden unitary, plus the index of
// the reference pair.
struct EmulationSamples {
    std::vector<PureState> inputs;
    std::vector<PureState> outputs;
    std::size_t reference_index = 0;

    void validate() const;
    std::size_t size() const { return inputs.size(); }
};

struct QEResult {
    std::optional<DensityMatrix> output_state;  // main register, post-selected
    double stage1_success_prob = 0.0;           // squared reference overlap of the stage-1 state
    bool postselected = false;
    double postselect_prob = 0.0;               // physical stage-2 acceptance probability
    std::optional<DensityMatrix> channel_output;  // without post-selection (both branches kept)
};

// The emulator circuit: main register wires [0, k), one |-> ancilla per
// non-reference sample, plus the stage-2 ancilla. Reflections are
// ControlledReflection gates. Stage boundaries are given by gate counts in
// the returned struct.
struct QECircuit {
    Circuit circuit;
    int main_qubits;
    int block_count;
    std::size_t stage1_gates;  // number of gates forming stage 1
};

QECircuit build_qe(const EmulationSamples& samples);

// Stage-4 block for sample i as a matrix identity check helper:
// W_out(i) = R_c(phi_i_out) H R_c(phi_r_out) on (main + one ancilla).
Matrix qe_stage4_block(const EmulationSamples& samples, std::size_t i);
Matrix qe_stage1_block(const EmulationSamples& samples, std::size_t i);

// Run the four-stage emulator on `target`.
QEResult run_qe(const EmulationSamples& samples, const PureState& target);

// Joint main+ancilla state after stage 1, straight from the reflection
// recursion (general K path).
PureState chi_recursion(const EmulationSamples& samples, const PureState& target);
// Closed forms for one and two blocks, written in the pairwise overlaps.
// Throws for block counts above two.
PureState chi_closed_form(const EmulationSamples& samples, const PureState& target);

struct OneBlockAttackResult {
    double bound;                // alpha^2 (1 + 4 (1-alpha^2)^2)
    double simulated_fidelity;   // post-selected output vs U|psi>
    double stage1_success_prob;
};

// Reference sqrt(1-a^2)|phi_1> + a|psi> with <phi_1|psi> = 0, random hidden
// unitary of the given dimension.
OneBlockAttackResult one_block_attack(double alpha, Eigen::Index dim, std::uint64_t seed);

// Effective forgery win probability gamma^2 (2 - 5 gamma^2 + 3 gamma^4) of the
// two-message superposition attack; gamma in [0, 1/sqrt(2)].
double three_state_forgery_prob(double gamma);

struct InvertedSamples {
    EmulationSamples samples;
    int measured_sign;  // +1 or -1: which relative phase the converter produced
};

// Converts oracle samples of U_f into emulation samples for U_{f^-1}
// (single-bit registers). `f_pairs` holds the classical pairs (x, f(x)) for
// x in {0,1}; `superposed_pair` is the two-register state
// (|0, y_1> + |1, y_k>)/sqrt(2) obtained from the superposed oracle query.
InvertedSamples invert_samples(const std::vector<std::pair<int, int>>& f_pairs,
                               const PureState& superposed_pair, Rng& rng);

}  // namespace qcl
