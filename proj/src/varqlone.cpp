#include "qcl/varqlone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcl {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

void GatePool::validate() const {
    if (entries.empty()) throw std::invalid_argument("gate pool is empty");
    if (width < 1) throw std::invalid_argument("pool width must be positive");
    for (const auto& e : entries)
        for (int w : e.wires)
            if (w < 0 || w >= width) throw std::out_of_range("pool entry wire out of range");
}

GatePool standard_pool(int width, Connectivity connectivity) {
    GatePool pool;
    pool.width = width;
    pool.connectivity = connectivity;
    for (int q = 0; q < width; ++q) {
        pool.entries.push_back({GateKind::Rz, {q}});
        pool.entries.push_back({GateKind::Rx, {q}});
        pool.entries.push_back({GateKind::Ry, {q}});
    }
    if (connectivity == Connectivity::NearestNeighbor) {
        for (int q = 0; q + 1 < width; ++q) pool.entries.push_back({GateKind::CZ, {q, q + 1}});
    } else {
        for (int a = 0; a < width; ++a)
            for (int b = a + 1; b < width; ++b) pool.entries.push_back({GateKind::CZ, {a, b}});
    }
    return pool;
}

Circuit StructuredCircuit::materialize(const GatePool& pool) const {
    pool.validate();
    if (width != pool.width) throw std::invalid_argument("structure width does not match pool");
    Circuit c(width);
    std::size_t p = 0;
    for (int idx : structure) {
        if (idx < 0 || idx >= static_cast<int>(pool.entries.size()))
            throw std::out_of_range("structure index outside pool");
        const PoolEntry& e = pool.entries[idx];
        Gate g{e.kind, e.wires, 0.0, std::nullopt};
        if (is_rotation(e.kind)) {
            if (p >= params.size()) throw std::invalid_argument("missing rotation parameter");
            g.param = params[p++];
        }
        c.append(std::move(g));
    }
    if (p != params.size()) throw std::invalid_argument("superfluous rotation parameters");
    return c;
}

int StructuredCircuit::rotation_count(const GatePool& pool) const {
    int r = 0;
    for (int idx : structure)
        if (is_rotation(pool.entries.at(idx).kind)) ++r;
    return r;
}

StateFamily StateFamily::phase_covariant(int grid_points) {
    if (grid_points < 1) throw std::invalid_argument("grid needs at least one point");
    StateFamily f;
    f.kind_ = FamilyKind::PhaseCovariant;
    for (int i = 0; i < grid_points; ++i)
        f.grid_.push_back(equatorial_state(2.0 * std::numbers::pi * i / grid_points));
    return f;
}

StateFamily StateFamily::fixed_overlap_pair(double phi) {
    StateFamily f;
    f.kind_ = FamilyKind::FixedOverlapPair;
    f.angle_ = phi;
    f.grid_ = {four_state_state(phi, 0, 0), four_state_state(phi, 1, 0)};
    return f;
}

StateFamily StateFamily::four_state(double phi) {
    StateFamily f;
    f.kind_ = FamilyKind::FourState;
    f.angle_ = phi;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) f.grid_.push_back(four_state_state(phi, x, a));
    return f;
}

PureState StateFamily::sample(Rng& rng) const {
    if (kind_ == FamilyKind::PhaseCovariant)
        return equatorial_state(rng.uniform(0.0, 2.0 * std::numbers::pi));
    return grid_[rng.integer(grid_.size())];
}

double StateFamily::measure() const {
    if (kind_ == FamilyKind::PhaseCovariant) return 2.0 * std::numbers::pi;
    return static_cast<double>(grid_.size());
}

std::optional<double> StateFamily::known_local_optimum(int n_clones) const {
    switch (kind_) {
        case FamilyKind::PhaseCovariant:
            return optimal_fidelity(CloneSpec::phase_covariant(1, n_clones));
        case FamilyKind::FixedOverlapPair:
            if (n_clones == 2)
                return optimal_fidelity(CloneSpec::fixed_overlap(std::cos(2.0 * angle_)));
            return std::nullopt;
        case FamilyKind::FourState:
            return std::nullopt;
    }
    return std::nullopt;
}

namespace {

PureState initial_state(const CloneTask& task, const PureState& psi) {
    std::optional<PureState> acc;
    for (int w = 0; w < task.width; ++w) {
        const bool is_input =
            std::find(task.input_wires.begin(), task.input_wires.end(), w) != task.input_wires.end();
        const PureState wire = is_input ? psi : PureState::basis(1, 0);
        acc = acc ? acc->tensor(wire) : wire;
    }
    return *acc;
}

void check_task(const CloneTask& task) {
    if (task.width < 1) throw std::invalid_argument("task width must be positive");
    if (task.input_wires.empty() || task.clone_wires.empty())
        throw std::invalid_argument("task needs input and clone wires");
    for (int w : task.input_wires)
        if (w < 0 || w >= task.width) throw std::out_of_range("input wire out of range");
    std::set<int> seen;
    for (int w : task.clone_wires) {
        if (w < 0 || w >= task.width) throw std::out_of_range("clone wire out of range");
        if (!seen.insert(w).second)
            throw std::invalid_argument("clone wire listed twice (overlaps an ancilla role)");
    }
}

}  // namespace

std::vector<double> clone_fidelities(const Circuit& circuit, const CloneTask& task,
                                     const PureState& psi) {
    check_task(task);
    const PureState out = apply_circuit(initial_state(task, psi), circuit);
    std::vector<double> f;
    f.reserve(task.clone_wires.size());
    for (int w : task.clone_wires) f.push_back(partial_trace(out, {w}).expectation(psi));
    return f;
}

double global_fidelity(const Circuit& circuit, const CloneTask& task, const PureState& psi) {
    check_task(task);
    const PureState out = apply_circuit(initial_state(task, psi), circuit);
    std::set<int> keep(task.clone_wires.begin(), task.clone_wires.end());
    const DensityMatrix joint = partial_trace(out, keep);
    std::optional<PureState> target;
    for (std::size_t i = 0; i < task.clone_wires.size(); ++i)
        target = target ? target->tensor(psi) : psi;
    return joint.expectation(*target);
}

namespace {

double cost_for_state(const Circuit& circuit, const CloneTask& task, const PureState& psi,
                      CostKind kind, const CostOptions& opts, Rng* rng) {
    auto sample_fid = [&](double f) {
        if (!opts.shots || !rng) return f;
        int acc = 0;
        for (int s = 0; s < *opts.shots; ++s)
            if (rng->bernoulli(f)) ++acc;
        return static_cast<double>(acc) / *opts.shots;
    };
    if (kind == CostKind::Global) return 1.0 - sample_fid(global_fidelity(circuit, task, psi));
    std::vector<double> f = clone_fidelities(circuit, task, psi);
    for (double& v : f) v = sample_fid(v);
    if (kind == CostKind::Local) {
        double mean = 0.0;
        for (double v : f) mean += v;
        return 1.0 - mean / static_cast<double>(f.size());
    }
    double c = 0.0;
    for (double v : f) c += (1.0 - v) * (1.0 - v);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) c += (f[i] - f[j]) * (f[i] - f[j]);
    return c;
}

double cost_circuit(const Circuit& circuit, const CloneTask& task, const StateFamily& family,
                    CostKind kind, const CostOptions& opts) {
    Rng rng(opts.seed);
    double acc = 0.0;
    if (opts.mc_samples) {
        for (int s = 0; s < *opts.mc_samples; ++s)
            acc += cost_for_state(circuit, task, family.sample(rng), kind, opts, &rng);
        return acc / *opts.mc_samples;
    }
    for (const PureState& psi : family.grid())
        acc += cost_for_state(circuit, task, psi, kind, opts, &rng);
    return acc / static_cast<double>(family.grid().size());
}

}  // namespace

double cost(const StructuredCircuit& sc, const GatePool& pool, const CloneTask& task,
            const StateFamily& family, CostKind kind, const CostOptions& opts) {
    return cost_circuit(sc.materialize(pool), task, family, kind, opts);
}

std::vector<double> gradient(const StructuredCircuit& sc, const GatePool& pool,
                             const CloneTask& task, const StateFamily& family, CostKind kind) {
    for (int idx : sc.structure) {
        const GateKind k = pool.entries.at(idx).kind;
        if (k != GateKind::CZ && !is_rotation(k))
            throw std::invalid_argument("parameter-shift gradients need Pauli rotations");
    }
    const std::size_t np = sc.params.size();
    std::vector<double> grad(np, 0.0);
    const double norm = family.grid().size();
    const int n_clones = static_cast<int>(task.clone_wires.size());

    for (std::size_t l = 0; l < np; ++l) {
        StructuredCircuit plus = sc, minus = sc;
        plus.params[l] += kHalfPi;
        minus.params[l] -= kHalfPi;
        const Circuit cp = plus.materialize(pool);
        const Circuit cm = minus.materialize(pool);
        const Circuit c0 = sc.materialize(pool);

        double g = 0.0;
        for (const PureState& psi : family.grid()) {
            if (kind == CostKind::Global) {
                g += 0.5 * (global_fidelity(cm, task, psi) - global_fidelity(cp, task, psi));
            } else if (kind == CostKind::Local) {
                const auto fp = clone_fidelities(cp, task, psi);
                const auto fm = clone_fidelities(cm, task, psi);
                double s = 0.0;
                for (int j = 0; j < n_clones; ++j) s += 0.5 * (fm[j] - fp[j]);
                g += s / n_clones;
            } else {
                const auto f0 = clone_fidelities(c0, task, psi);
                const auto fp = clone_fidelities(cp, task, psi);
                const auto fm = clone_fidelities(cm, task, psi);
                double s = 0.0;
                for (int j = 0; j < n_clones; ++j)
                    s -= (1.0 - f0[j]) * (fp[j] - fm[j]);
                for (int i = 0; i < n_clones; ++i)
                    for (int j = i + 1; j < n_clones; ++j)
                        s += (f0[i] - f0[j]) * ((fp[i] - fm[i]) - (fp[j] - fm[j]));
                g += s;
            }
        }
        grad[l] = g / norm;
    }
    return grad;
}

namespace {

double mean_fidelity(const Circuit& circuit, const CloneTask& task, const StateFamily& family) {
    double acc = 0.0;
    for (const PureState& psi : family.grid()) {
        const auto f = clone_fidelities(circuit, task, psi);
        double m = 0.0;
        for (double v : f) m += v;
        acc += m / f.size();
    }
    return acc / family.grid().size();
}

TrainResult train_single(StructuredCircuit sc, const GatePool& pool, const CloneTask& task,
                         const StateFamily& family, CostKind kind, const TrainConfig& config) {
    TrainResult res;
    res.cost_trace.reserve(config.iterations + 1);
    double c = cost(sc, pool, task, family, kind);
    res.cost_trace.push_back(c);
    res.best_cost = c;
    res.circuit = sc;

    std::vector<double> m(sc.params.size(), 0.0), v(sc.params.size(), 0.0);
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;

    for (int it = 1; it <= config.iterations; ++it) {
        const auto g = gradient(sc, pool, task, family, kind);
        for (std::size_t l = 0; l < sc.params.size(); ++l) {
            if (config.adaptive) {
                m[l] = b1 * m[l] + (1.0 - b1) * g[l];
                v[l] = b2 * v[l] + (1.0 - b2) * g[l] * g[l];
                const double mh = m[l] / (1.0 - std::pow(b1, it));
                const double vh = v[l] / (1.0 - std::pow(b2, it));
                sc.params[l] -= config.learning_rate * mh / (std::sqrt(vh) + eps);
            } else {
                sc.params[l] -= config.learning_rate * g[l];
            }
        }
        c = cost(sc, pool, task, family, kind);
        if (std::isnan(c)) {
            res.nan_iteration = it;
            break;
        }
        res.cost_trace.push_back(c);
        if (c < res.best_cost) {
            res.best_cost = c;
            res.circuit = sc;
        }
    }
    res.mean_clone_fidelity = mean_fidelity(res.circuit.materialize(pool), task, family);
    return res;
}

}  // namespace

TrainResult train(StructuredCircuit init, const GatePool& pool, const CloneTask& task,
                  const StateFamily& family, CostKind kind, const TrainConfig& config) {
    pool.validate();
    check_task(task);
    if (config.iterations < 0 || config.restarts < 1)
        throw std::invalid_argument("training config must be finite");
    Rng rng(config.seed);
    std::optional<TrainResult> best;
    for (int r = 0; r < config.restarts; ++r) {
        StructuredCircuit sc = init;
        if (r > 0)
            for (double& p : sc.params) p = rng.uniform(0.0, 2.0 * std::numbers::pi);
        TrainResult t = train_single(std::move(sc), pool, task, family, kind, config);
        if (!best || t.best_cost < best->best_cost) best = std::move(t);
    }
    return *best;
}

TrainResult structure_search(const GatePool& pool, const CloneTask& task,
                             const StateFamily& family, CostKind kind,
                             const SearchConfig& config) {
    pool.validate();
    check_task(task);
    if (config.sequence_length < 1) throw std::invalid_argument("sequence length must be positive");
    Rng rng(config.seed);

    auto pack_params = [&](const std::vector<int>& structure, const std::vector<double>& slots) {
        std::vector<double> packed;
        for (std::size_t i = 0; i < structure.size(); ++i)
            if (is_rotation(pool.entries[structure[i]].kind)) packed.push_back(slots[i]);
        return packed;
    };

    std::optional<TrainResult> best;
    for (int r = 0; r < config.restarts; ++r) {
        std::vector<int> structure(config.sequence_length);
        std::vector<double> slots(config.sequence_length);
        for (int i = 0; i < config.sequence_length; ++i) {
            structure[i] = static_cast<int>(rng.integer(pool.entries.size()));
            slots[i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        TrainConfig inner = config.inner;
        inner.seed = rng.integer(std::numeric_limits<std::uint64_t>::max());

        StructuredCircuit sc{structure, pack_params(structure, slots), pool.width};
        TrainResult current = train(sc, pool, task, family, kind, inner);
        // write trained angles back to the slots
        {
            std::size_t p = 0;
            for (std::size_t i = 0; i < structure.size(); ++i)
                if (is_rotation(pool.entries[structure[i]].kind))
                    slots[i] = current.circuit.params[p++];
        }
        if (!best || current.best_cost < best->best_cost) best = current;

        for (int sweep = 0; sweep < config.sweeps; ++sweep) {
            const int pos = static_cast<int>(rng.integer(structure.size()));
            const int replacement = static_cast<int>(rng.integer(pool.entries.size()));
            if (replacement == structure[pos]) continue;
            std::vector<int> cand_structure = structure;
            cand_structure[pos] = replacement;
            std::vector<double> cand_slots = slots;
            if (is_rotation(pool.entries[replacement].kind))
                cand_slots[pos] = rng.uniform(0.0, 2.0 * std::numbers::pi);
            StructuredCircuit cand{cand_structure, pack_params(cand_structure, cand_slots),
                                   pool.width};
            inner.seed = rng.integer(std::numeric_limits<std::uint64_t>::max());
            TrainResult t = train(cand, pool, task, family, kind, inner);
            if (!best || t.best_cost < best->best_cost) best = t;
            if (t.best_cost < current.best_cost) {  // greedy accept
                current = t;
                structure = cand_structure;
                std::size_t p = 0;
                for (std::size_t i = 0; i < structure.size(); ++i)
                    if (is_rotation(pool.entries[structure[i]].kind))
                        slots[i] = t.circuit.params[p++];
                    else
                        slots[i] = cand_slots[i];
            }
        }
    }
    return *best;
}

FaithfulnessReport faithfulness_audit(const StructuredCircuit& sc, const GatePool& pool,
                                      const CloneTask& task, const StateFamily& family,
                                      CostKind kind) {
    const int n = static_cast<int>(task.clone_wires.size());
    const auto f_opt = family.known_local_optimum(n);
    if (!f_opt) throw std::invalid_argument("family has no known optimum for the audit");

    double c_opt = 0.0, bound_denom = 1.0;
    double fg_opt = 0.0;
    switch (kind) {
        case CostKind::SquaredLocal:
            c_opt = n * (1.0 - *f_opt) * (1.0 - *f_opt);
            bound_denom = 2.0 * (1.0 - *f_opt) * std::sin(*f_opt);
            break;
        case CostKind::Local:
            c_opt = 1.0 - *f_opt;
            bound_denom = std::sin(*f_opt);
            break;
        case CostKind::Global:
            if (family.kind() == FamilyKind::PhaseCovariant && n == 2) {
                const double s = std::sin(std::numbers::pi / 4.0), c = std::cos(std::numbers::pi / 4.0);
                fg_opt = (1.0 + s + c) * (1.0 + s + c) / 8.0;
            } else if (family.kind() == FamilyKind::FixedOverlapPair) {
                fg_opt = optimal_fidelity(
                    CloneSpec::fixed_overlap(std::cos(2.0 * family.angle()), 1, n, Figure::Global));
            } else {
                throw std::invalid_argument("no known global optimum for this family");
            }
            c_opt = 1.0 - fg_opt;
            bound_denom = std::sin(fg_opt);
            break;
    }

    FaithfulnessReport rep;
    rep.epsilon = cost(sc, pool, task, family, kind) - c_opt;
    rep.bound = family.measure() * std::max(rep.epsilon, 0.0) / bound_denom;

    const Circuit circuit = sc.materialize(pool);
    rep.max_bures_angle.assign(n, 0.0);
    for (const PureState& psi : family.grid()) {
        const PureState out = apply_circuit(initial_state(task, psi), circuit);
        // ideal clone for this input
        DensityMatrix ideal = [&]() {
            if (family.kind() == FamilyKind::PhaseCovariant)
                return phase_cov_ideal_clone(psi).clones[0];
            const double s = std::cos(2.0 * family.angle());
            const int which = psi.amplitude(1).real() >= 0.0 ? 0 : 1;
            return fixed_overlap_clone(s, which).state;
        }();
        for (int j = 0; j < n; ++j) {
            const DensityMatrix clone = partial_trace(out, {task.clone_wires[j]});
            const double theta = distance_metrics(clone, ideal).bures_angle;
            rep.max_bures_angle[j] = std::max(rep.max_bures_angle[j], theta);
        }
    }
    rep.pass = true;
    for (double t : rep.max_bures_angle)
        if (t > rep.bound + 1e-12) rep.pass = false;
    return rep;
}

std::string cost_trace_csv(const std::vector<double>& trace) {
    std::ostringstream os;
    os.precision(17);
    os << "iteration,cost\n";
    for (std::size_t i = 0; i < trace.size(); ++i) os << i << ',' << trace[i] << '\n';
    return os.str();
}

}  // namespace qcl
