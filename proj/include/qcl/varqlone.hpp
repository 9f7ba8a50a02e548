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

enum class Connectivity { NearestNeighbor, FullyConnected };

// Candidate gate for the variable-structure ansatz: a gate kind plus fixed
// wires; rotations train a continuous angle.
struct PoolEntry {
    GateKind kind;
    std::vector<int> wires;
};

struct GatePool {
    std::vector<PoolEntry> entries;
    Connectivity connectivity = Connectivity::NearestNeighbor;
    int width = 0;

    void validate() const;
};

// Rotations on every wire plus CZs allowed by the connectivity.
GatePool standard_pool(int width, Connectivity connectivity);

// Ordered pool indices plus one angle per rotation gate.
struct StructuredCircuit {
    std::vector<int> structure;   // indices into the pool
    std::vector<double> params;   // one per rotation gate in `structure`
    int width = 0;

    Circuit materialize(const GatePool& pool) const;
    int rotation_count(const GatePool& pool) const;
};

enum class FamilyKind { PhaseCovariant, FixedOverlapPair, FourState };

// Family of states a cloner is trained on, with a deterministic evaluation
// grid (exact-expectation mode) and seeded Monte Carlo sampling.
class StateFamily {
public:
    static StateFamily phase_covariant(int grid_points = 64);
    static StateFamily fixed_overlap_pair(double phi);
    static StateFamily four_state(double phi);

    FamilyKind kind() const { return kind_; }
    double angle() const { return angle_; }
    const std::vector<PureState>& grid() const { return grid_; }
    PureState sample(Rng& rng) const;
    // total measure of the family parameter space (2*pi for the equatorial
    // family, the state count for the discrete families)
    double measure() const;
    // known optimal 1->N local fidelity where the cloning module has one
    std::optional<double> known_local_optimum(int n_clones) const;

private:
    FamilyKind kind_;
    double angle_ = 0.0;
    std::vector<PureState> grid_;
};

enum class CostKind { SquaredLocal, Local, Global };

// Wiring of a cloning task: which wires hold the input copies at the start,
// which wires are read out as clones.
struct CloneTask {
    int width = 0;
    std::vector<int> input_wires;   // M wires carrying copies of |psi>
    std::vector<int> clone_wires;   // N wires read out as clones
};

struct CostOptions {
    std::optional<int> shots;       // shot-sampled mode instead of exact expectation
    std::optional<int> mc_samples;  // Monte Carlo family samples instead of the grid
    std::uint64_t seed = 0;
};

// Per-clone fidelities for one family state.
std::vector<double> clone_fidelities(const Circuit& circuit, const CloneTask& task,
                                     const PureState& psi);
double global_fidelity(const Circuit& circuit, const CloneTask& task, const PureState& psi);

double cost(const StructuredCircuit& sc, const GatePool& pool, const CloneTask& task,
            const StateFamily& family, CostKind kind, const CostOptions& opts = {});

// Parameter-shift gradient, one component per trainable angle.
std::vector<double> gradient(const StructuredCircuit& sc, const GatePool& pool,
                             const CloneTask& task, const StateFamily& family, CostKind kind);

struct TrainConfig {
    double learning_rate = 0.05;
    int iterations = 200;
    std::uint64_t seed = 0;
    bool adaptive = false;  // adaptive-moment update instead of plain descent
    int restarts = 1;       // independent random initialisations, best kept
};

struct TrainResult {
    StructuredCircuit circuit;
    std::vector<double> cost_trace;
    double best_cost = 0.0;
    double mean_clone_fidelity = 0.0;
    std::optional<int> nan_iteration;
};

TrainResult train(StructuredCircuit init, const GatePool& pool, const CloneTask& task,
                  const StateFamily& family, CostKind kind, const TrainConfig& config);

struct SearchConfig {
    int sequence_length = 20;
    int restarts = 5;
    int sweeps = 30;             // substitution attempts per restart
    TrainConfig inner;           // re-optimisation after each substitution
    std::uint64_t seed = 0;
};

TrainResult structure_search(const GatePool& pool, const CloneTask& task,
                             const StateFamily& family, CostKind kind, const SearchConfig& config);

struct FaithfulnessReport {
    double epsilon;       // C(theta) - C_opt
    double bound;         // Bures-angle bound implied by the matching theorem
    std::vector<double> max_bures_angle;  // per clone, worst case over the family grid
    bool pass;
};

// Compares trained clones to the ideal cloner's clones in Bures angle.
// Supported families: PhaseCovariant (ideal circuit) and FixedOverlapPair
// (constraint-solved optimal clone).
FaithfulnessReport faithfulness_audit(const StructuredCircuit& sc, const GatePool& pool,
                                      const CloneTask& task, const StateFamily& family,
                                      CostKind kind);

// Serialise a cost trace as "iteration,cost" CSV lines.
std::string cost_trace_csv(const std::vector<double>& trace);

}  // namespace qcl
