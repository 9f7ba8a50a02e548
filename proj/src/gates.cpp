#include "qcl/gates.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qcl {

bool is_rotation(GateKind kind) {
    return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz;
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::Rx: return "rx";
        case GateKind::Ry: return "ry";
        case GateKind::Rz: return "rz";
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::CNOT: return "cnot";
        case GateKind::CZ: return "cz";
        case GateKind::SWAP: return "swap";
        case GateKind::ControlledReflection: return "crefl";
    }
    throw std::logic_error("unknown gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
    static const std::map<std::string, GateKind> table = {
        {"rx", GateKind::Rx}, {"ry", GateKind::Ry}, {"rz", GateKind::Rz},
        {"h", GateKind::H},   {"x", GateKind::X},   {"y", GateKind::Y},
        {"z", GateKind::Z},   {"cnot", GateKind::CNOT}, {"cz", GateKind::CZ},
        {"swap", GateKind::SWAP}, {"crefl", GateKind::ControlledReflection}};
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown gate name: " + name);
    return it->second;
}

Gate Gate::controlled_reflection(int control, std::vector<int> block, const PureState& axis) {
    if (axis.dim() != (Eigen::Index{1} << block.size()))
        throw std::invalid_argument("reflection axis dimension does not match block size");
    Gate g{GateKind::ControlledReflection, {control}, 0.0, axis.amplitudes()};
    g.targets.insert(g.targets.end(), block.begin(), block.end());
    return g;
}

Matrix Gate::single_qubit_matrix() const {
    const Complex i(0.0, 1.0);
    Matrix m(2, 2);
    switch (kind) {
        case GateKind::Rx: {
            const double c = std::cos(param / 2), s = std::sin(param / 2);
            m << c, -i * s, -i * s, c;
            return m;
        }
        case GateKind::Ry: {
            const double c = std::cos(param / 2), s = std::sin(param / 2);
            m << c, -s, s, c;
            return m;
        }
        case GateKind::Rz: {
            m << std::exp(-i * (param / 2)), 0, 0, std::exp(i * (param / 2));
            return m;
        }
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            m << r, r, r, -r;
            return m;
        }
        case GateKind::X: m << 0, 1, 1, 0; return m;
        case GateKind::Y: m << 0, -i, i, 0; return m;
        case GateKind::Z: m << 1, 0, 0, -1; return m;
        default:
            throw std::invalid_argument("not a single-qubit gate: " + gate_name(kind));
    }
}

Circuit::Circuit(int num_qubits, std::vector<Gate> gates) : num_qubits_(num_qubits) {
    for (auto& g : gates) append(std::move(g));
}

void Circuit::validate(const Gate& g) const {
    if (g.targets.empty()) throw std::invalid_argument("gate has no targets");
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
        if (g.targets[i] < 0 || g.targets[i] >= num_qubits_)
            throw std::out_of_range("gate target " + std::to_string(g.targets[i]) +
                                    " outside circuit of width " + std::to_string(num_qubits_));
        for (std::size_t j = i + 1; j < g.targets.size(); ++j)
            if (g.targets[i] == g.targets[j])
                throw std::invalid_argument("repeated target wire in multi-qubit gate");
    }
    switch (g.kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
            if (g.targets.size() != 2) throw std::invalid_argument("two-qubit gate needs two targets");
            break;
        case GateKind::ControlledReflection: {
            if (g.targets.size() < 2) throw std::invalid_argument("controlled reflection needs a block");
            if (!g.reflection_state)
                throw std::invalid_argument("controlled reflection without axis state");
            const Eigen::Index d = Eigen::Index{1} << (g.targets.size() - 1);
            if (g.reflection_state->size() != d)
                throw std::invalid_argument("reflection axis dimension mismatch");
            if (std::abs(g.reflection_state->squaredNorm() - 1.0) > 1e-9)
                throw std::invalid_argument("reflection axis not normalised: non-unitary gate");
            break;
        }
        default:
            if (g.targets.size() != 1) throw std::invalid_argument("single-qubit gate needs one target");
    }
}

void Circuit::append(Gate g) {
    validate(g);
    gates_.push_back(std::move(g));
}

Circuit Circuit::inverse() const {
    Circuit inv(num_qubits_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        Gate g = *it;
        if (is_rotation(g.kind)) g.param = -g.param;
        // H, Paulis, CNOT, CZ, SWAP and reflections are involutions
        inv.append(std::move(g));
    }
    return inv;
}

std::string Circuit::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "qubits " << num_qubits_ << '\n';
    for (const auto& g : gates_) {
        os << gate_name(g.kind);
        for (int t : g.targets) os << ' ' << t;
        if (is_rotation(g.kind)) os << ' ' << g.param;
        os << '\n';
    }
    return os.str();
}

Circuit Circuit::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int n = -1;
    std::vector<Gate> gates;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "qubits") {
            ls >> n;
            continue;
        }
        const GateKind kind = gate_kind_from_name(head);
        if (kind == GateKind::ControlledReflection)
            throw std::invalid_argument("controlled reflections are not text-serialisable");
        Gate g{kind, {}, 0.0, std::nullopt};
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        const std::size_t wire_count = is_rotation(kind) ? toks.size() - 1 : toks.size();
        for (std::size_t i = 0; i < wire_count; ++i) g.targets.push_back(std::stoi(toks[i]));
        if (is_rotation(kind)) g.param = std::stod(toks.back());
        gates.push_back(std::move(g));
    }
    if (n <= 0) throw std::invalid_argument("circuit text missing qubit count");
    return Circuit(n, std::move(gates));
}

void apply_gate_in_place(Vector& amps, int num_qubits, const Gate& g) {
    const Eigen::Index dim = amps.size();
    switch (g.kind) {
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z: {
            const Matrix m = g.single_qubit_matrix();
            const Eigen::Index bit = Eigen::Index{1} << g.targets[0];
            for (Eigen::Index i = 0; i < dim; ++i) {
                if (i & bit) continue;
                const Complex a0 = amps(i), a1 = amps(i | bit);
                amps(i) = m(0, 0) * a0 + m(0, 1) * a1;
                amps(i | bit) = m(1, 0) * a0 + m(1, 1) * a1;
            }
            return;
        }
        case GateKind::CNOT: {
            const Eigen::Index c = Eigen::Index{1} << g.targets[0];
            const Eigen::Index t = Eigen::Index{1} << g.targets[1];
            for (Eigen::Index i = 0; i < dim; ++i)
                if ((i & c) && !(i & t)) std::swap(amps(i), amps(i | t));
            return;
        }
        case GateKind::CZ: {
            const Eigen::Index a = Eigen::Index{1} << g.targets[0];
            const Eigen::Index b = Eigen::Index{1} << g.targets[1];
            for (Eigen::Index i = 0; i < dim; ++i)
                if ((i & a) && (i & b)) amps(i) = -amps(i);
            return;
        }
        case GateKind::SWAP: {
            const Eigen::Index a = Eigen::Index{1} << g.targets[0];
            const Eigen::Index b = Eigen::Index{1} << g.targets[1];
            for (Eigen::Index i = 0; i < dim; ++i)
                if ((i & a) && !(i & b)) std::swap(amps(i), amps((i & ~a) | b));
            return;
        }
        case GateKind::ControlledReflection: {
            // R = I - 2|phi><phi| on the block, applied when the control is 1.
            const Eigen::Index c = Eigen::Index{1} << g.targets[0];
            const std::vector<int> block(g.targets.begin() + 1, g.targets.end());
            const Vector& axis = *g.reflection_state;
            const Eigen::Index bd = axis.size();
            std::vector<Eigen::Index> strides(block.size());
            for (std::size_t i = 0; i < block.size(); ++i)
                strides[i] = Eigen::Index{1} << block[i];
            Eigen::Index block_mask = 0;
            for (auto s : strides) block_mask |= s;
            auto expand = [&](Eigen::Index b) {
                Eigen::Index idx = 0;
                for (std::size_t i = 0; i < strides.size(); ++i)
                    if (b & (Eigen::Index{1} << i)) idx |= strides[i];
                return idx;
            };
            for (Eigen::Index rest = 0; rest < dim; ++rest) {
                if ((rest & block_mask) || !(rest & c)) continue;
                // gather block amplitudes, project, reflect
                Complex proj = 0.0;
                for (Eigen::Index b = 0; b < bd; ++b)
                    proj += std::conj(axis(b)) * amps(rest | expand(b));
                for (Eigen::Index b = 0; b < bd; ++b)
                    amps(rest | expand(b)) -= 2.0 * proj * axis(b);
            }
            return;
        }
    }
    throw std::logic_error("unhandled gate kind");
}

PureState apply_circuit(const PureState& psi, const Circuit& circuit) {
    if (psi.num_qubits() != circuit.num_qubits())
        throw std::invalid_argument("circuit width does not match state width");
    Vector amps = psi.amplitudes();
    for (const auto& g : circuit.gates()) apply_gate_in_place(amps, circuit.num_qubits(), g);
    return PureState(std::move(amps));
}

DensityMatrix apply_circuit(const DensityMatrix& rho, const Circuit& circuit) {
    if (rho.num_qubits() != circuit.num_qubits())
        throw std::invalid_argument("circuit width does not match state width");
    const Matrix u = circuit_unitary(circuit);
    return DensityMatrix(u * rho.entries() * u.adjoint());
}

Matrix circuit_unitary(const Circuit& circuit) {
    const Eigen::Index dim = Eigen::Index{1} << circuit.num_qubits();
    Matrix u = Matrix::Identity(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Vector v = u.col(col);
        for (const auto& g : circuit.gates()) apply_gate_in_place(v, circuit.num_qubits(), g);
        u.col(col) = v;
    }
    return u;
}

}  // namespace qcl
