#pragma once

#include "qcl/cloning.hpp"
#include "qcl/gates.hpp"
#include "qcl/random.hpp"
#include "qcl/state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qcl {

// A 1->2 cloner usable by the protocol attacks: maps a single-qubit input to
// the full output register. Clone wires come first in the bookkeeping;
// everything else is ancilla and stays with the eavesdropper.
struct ClonerHandle {
    std::function<PureState(const PureState&)> run;
    int output_qubits = 0;
    std::vector<int> clone_wires;    // forwarded clone first, kept clone second
    std::vector<int> ancilla_wires;
    std::string id;
};

// The three-qubit preparation+cloning network (clones on wires 1 and 2,
// ancilla on wire 0).
ClonerHandle ideal_phase_covariant_cloner();
// Handle around an arbitrary cloning circuit; the input enters `input_wire`,
// all other wires start at |0>.
ClonerHandle circuit_cloner(Circuit circuit, std::vector<int> clone_wires,
                            std::vector<int> ancilla_wires, int input_wire, std::string id);
// Degenerate handle that forwards the qubit untouched and keeps nothing.
ClonerHandle forwarding_cloner();

struct Bb84Result {
    double holevo_chi;       // S(rho_E) - 1/2 S(rho_E^0) - 1/2 S(rho_E^1), bit ensembles
    double eve_information;  // per announced basis: 1 - H(1 - P_guess)
    double eve_guess_prob;   // per-basis Helstrom guess probability on Eve's registers
    double bob_fidelity;     // mean fidelity of the forwarded clone
    double d_crit;           // error rate at which the key rate hits zero
    bool no_solution = false;
};

// Cloning attack on the X-Y-basis protocol: Eve clones each transit qubit,
// forwards one clone and keeps the rest (second clone + ancillas). The
// critical rate solves 1 - H(D) - I_E = 0 with I_E Eve's per-basis
// information (the Holevo quantity over the bit ensembles is also reported).
Bb84Result bb84_dcrit(const ClonerHandle& cloner);

struct AttackReport {
    double guess_prob = 0.0;
    double bias = 0.0;
    double detection_prob = 0.0;
    double overall_success = 0.0;
    std::vector<double> per_state;
    std::optional<std::pair<double, double>> bounds;
};

// What the two-state attack needs from a cloner: the eavesdropper's kept
// registers for either input and the fidelity of the clone sent back.
struct TwoStateCloner {
    DensityMatrix kept0, kept1;      // kept clone (+ ancillas) for phi_0 / phi_1
    double returned_fidelity0 = 0.0;
    double returned_fidelity1 = 0.0;
    std::string id;
};

// Constraint-solved optimal fixed-overlap cloner at s = cos(pi/9).
TwoStateCloner mayers_ideal_cloner();
// Kept/returned statistics of a concrete circuit cloning the two-state family.
TwoStateCloner mayers_cloner_from_circuit(const ClonerHandle& cloner, double phi);

// Two-state coin-flipping attack: Helstrom discrimination of the kept pair
// (intact qubit x kept clone); detection is one minus the returned-clone
// fidelity. `copies` > 1 applies the majority-vote formula.
AttackReport mayers_bias(const TwoStateCloner& cloner, int copies = 1);
// Majority-vote success over n rounds with single-round failure rate p_fail.
double mayers_majority_success(double p_fail, int n);

enum class AharonovModel { GlobalI, FourStateII, TwoStateBoundsII };

// Four-state coin-flipping attacks. Model I measures the global clone pair
// with an explicit projector pair; model II uses the anisotropically shrunk
// local clones; the two-state variant returns fidelity-derived bounds.
AttackReport aharonov_bias(AharonovModel model, double phi);

// Global clone states |psi^{1->2}_{x,a}>: the inputs embedded isometrically
// in the two-qubit symmetric subspace (all pairwise overlaps preserved).
PureState aharonov_global_clone(double phi, int x, int a);
// Projector pair {|v>, |v_perp>} that optimally splits the (0,0)/(1,1)
// global clone pair.
std::pair<PureState, PureState> aharonov_attack_projectors(double phi);

struct P1RoundStats {
    double guess_freq = 0.0;
    double detection_freq = 0.0;
    double bias = 0.0;
    long trials = 0;
};

// Monte Carlo of the one-round attack: Alice draws her bits, Bob clones the
// returned qubit, keeps the other and discriminates with the Helstrom
// measurement; Alice verifies what she got back. A null cloner plays the
// honest forward-and-guess-at-random strategy.
P1RoundStats simulate_p1_round(const TwoStateCloner* cloner, std::uint64_t seed, long trials);

}  // namespace qcl
