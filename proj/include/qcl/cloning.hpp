#pragma once

#include "qcl/gates.hpp"
#include "qcl/state.hpp"

#include <optional>
#include <vector>

namespace qcl {

enum class CloneFamily { Universal, PhaseCovariant, FixedOverlap, FourState };
enum class Figure { Local, Global };

// Cloning family descriptor with copy counts. `overlap` is the fixed overlap s
// for FixedOverlap; `angle` is the family angle phi for FourState.
struct CloneSpec {
    CloneFamily family;
    int in_copies = 1;   // M
    int out_copies = 2;  // N
    Figure figure = Figure::Local;
    double overlap = 0.0;
    double angle = 0.0;

    static CloneSpec universal(int m, int n, Figure fig = Figure::Local) {
        return {CloneFamily::Universal, m, n, fig, 0.0, 0.0};
    }
    static CloneSpec phase_covariant(int m, int n, Figure fig = Figure::Local) {
        return {CloneFamily::PhaseCovariant, m, n, fig, 0.0, 0.0};
    }
    static CloneSpec fixed_overlap(double s, int m = 1, int n = 2, Figure fig = Figure::Local) {
        return {CloneFamily::FixedOverlap, m, n, fig, s, 0.0};
    }
    static CloneSpec four_state(double phi, int m = 1, int n = 2, Figure fig = Figure::Local) {
        return {CloneFamily::FourState, m, n, fig, 0.0, phi};
    }
};

struct CloneOutput {
    DensityMatrix global_state;
    std::vector<DensityMatrix> clones;
    std::optional<DensityMatrix> ancilla;
};

// Closed-form optimal cloning fidelity. Supported combinations:
//   universal local M->N, universal global M->N,
//   phase-covariant local 1->2 and 1->N,
//   fixed-overlap local 1->2, fixed-overlap global M->N.
// Anything else raises (no silent numerical fallback).
double optimal_fidelity(const CloneSpec& spec);

// Local fidelity of the globally optimised fixed-overlap M->N cloner
// (a lower bound on the local optimum).
double fixed_overlap_local_of_global(double s, int m, int n);

// One-parameter symmetric equatorial cloning map applied to
// |psi> (x) (|00>+|11>)/sqrt2; clones appear on wires 0 and 1, ancilla on 2.
CloneOutput phase_cov_transformation(double eta, const PureState& input);

// The 3-qubit preparation+cloning network whose clones sit on wires 1 and 2
// (wire 0 keeps the ancilla); on equatorial inputs both clones reach the
// optimal equatorial fidelity.
Circuit phase_cov_ideal_circuit();
// Run the circuit on a single-qubit input: wires (input, blank, blank).
CloneOutput phase_cov_ideal_clone(const PureState& input);
// Clone wires of the ideal circuit, in order (Bob, Eve); ancilla wire is 0.
inline constexpr int kIdealCloneWireB = 1;
inline constexpr int kIdealCloneWireE = 2;
inline constexpr int kIdealAncillaWire = 0;

struct FixedOverlapClone {
    DensityMatrix state;
    bool degenerate;  // s = 1: the two states coincide and cloning is trivial
    double alpha, beta, gamma;
};

// Reduced single-clone density matrix of the symmetric optimal fixed-overlap
// 1->2 cloner, expressed through the non-orthogonal pair
// |phi_x> = cos(phi)|0> + (-1)^x sin(phi)|1> with s = cos(2 phi).
// `which` selects the input state (0 or 1); `fidelity_override` substitutes a
// different target fidelity for the clone (used for learned cloners).
FixedOverlapClone fixed_overlap_clone(double s, int which,
                                      std::optional<double> fidelity_override = std::nullopt);

// The pair of family states for a given overlap s.
std::pair<PureState, PureState> fixed_overlap_pair(double s);

// Clone of |phi_{x,a}> under the symmetric four-state cloner: Bloch vector
// shrunk anisotropically in the x and z directions.
DensityMatrix four_state_clone(double phi, int x, int a);
// The four family states |phi_{x,a}>.
PureState four_state_state(double phi, int x, int a);
// Shrinking factors (eta_x, eta_z).
std::pair<double, double> four_state_shrinking(double phi);

// Optimal minimum-error discrimination probability between rho1 (prior q1)
// and rho2 (prior q2 = 1 - q1).
double helstrom_prob(const DensityMatrix& rho1, const DensityMatrix& rho2, double q1, double q2);

struct UnambiguousOutcome {
    double conclusive;
    double inconclusive;
};

// Optimal unambiguous discrimination of two pure states at angle theta
// (cos(theta) = |<psi1|psi2>|).
UnambiguousOutcome unambiguous_disc(double theta);

}  // namespace qcl
