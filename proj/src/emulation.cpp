#include "qcl/emulation.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace qcl {

namespace {

// main register wires are [0, k); ancilla for block b sits at wire k + b
std::vector<int> main_block(int k) {
    std::vector<int> block(k);
    for (int i = 0; i < k; ++i) block[i] = i;
    return block;
}

// W(i) gate sequence: R_c(phi_r), H(anc), R_c(phi_i)
void append_block(Circuit& c, int k, int anc, const PureState& phi_r, const PureState& phi_i) {
    c.append(Gate::controlled_reflection(anc, main_block(k), phi_r));
    c.append(Gate::h(anc));
    c.append(Gate::controlled_reflection(anc, main_block(k), phi_i));
}

// inverse block with output states: R_c(phi_i_out), H(anc), R_c(phi_r_out)
void append_block_inverse(Circuit& c, int k, int anc, const PureState& phi_r_out,
                          const PureState& phi_i_out) {
    c.append(Gate::controlled_reflection(anc, main_block(k), phi_i_out));
    c.append(Gate::h(anc));
    c.append(Gate::controlled_reflection(anc, main_block(k), phi_r_out));
}

}  // namespace

void EmulationSamples::validate() const {
    if (inputs.empty()) throw std::invalid_argument("need at least one sample pair");
    if (inputs.size() != outputs.size())
        throw std::invalid_argument("input/output sample count mismatch");
    if (reference_index >= inputs.size()) throw std::out_of_range("reference index out of range");
    const Eigen::Index d = inputs.front().dim();
    if (d > 16) throw std::invalid_argument("emulator supports main registers up to dimension 16");
    for (const auto& s : inputs)
        if (s.dim() != d) throw std::invalid_argument("mixed sample dimensions");
    for (const auto& s : outputs)
        if (s.dim() != d) throw std::invalid_argument("mixed sample dimensions");
}

QECircuit build_qe(const EmulationSamples& samples) {
    samples.validate();
    const int k = samples.inputs.front().num_qubits();
    const int blocks = static_cast<int>(samples.size()) - 1;
    const int stage2_anc = k + blocks;
    const int out_reg = k + blocks + 1;  // fresh register holding phi_r_out for stage 3
    Circuit c(2 * k + blocks + 1);

    const PureState& phi_r = samples.inputs[samples.reference_index];
    const PureState& phi_r_out = samples.outputs[samples.reference_index];

    // ancilla preparation to |->
    for (int b = 0; b < blocks; ++b) {
        c.append(Gate::x(k + b));
        c.append(Gate::h(k + b));
    }
    std::size_t stage1_begin = c.size();
    int b = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i == samples.reference_index) continue;
        append_block(c, k, k + b, phi_r, samples.inputs[i]);
        ++b;
    }
    const std::size_t stage1_gates = c.size() - stage1_begin;

    // stage 2: |-> ancilla, controlled reflection around phi_r, H, then a
    // computational-basis measurement (outcome 0 accepts; not a gate)
    c.append(Gate::x(stage2_anc));
    c.append(Gate::h(stage2_anc));
    c.append(Gate::controlled_reflection(stage2_anc, main_block(k), phi_r));
    c.append(Gate::h(stage2_anc));

    // stage 3: swap the main register with the phi_r_out register
    for (int q = 0; q < k; ++q) c.append(Gate::swap(q, out_reg + q));

    // stage 4: undo the encoding with the output states, blocks reversed
    b = blocks - 1;
    for (std::size_t i = samples.size(); i-- > 0;) {
        if (i == samples.reference_index) continue;
        append_block_inverse(c, k, k + b, phi_r_out, samples.outputs[i]);
        --b;
    }
    return QECircuit{std::move(c), k, blocks, stage1_gates};
}

Matrix qe_stage1_block(const EmulationSamples& samples, std::size_t i) {
    samples.validate();
    if (i == samples.reference_index) throw std::invalid_argument("block index is the reference");
    const int k = samples.inputs.front().num_qubits();
    Circuit c(k + 1);
    append_block(c, k, k, samples.inputs[samples.reference_index], samples.inputs[i]);
    return circuit_unitary(c);
}

Matrix qe_stage4_block(const EmulationSamples& samples, std::size_t i) {
    samples.validate();
    if (i == samples.reference_index) throw std::invalid_argument("block index is the reference");
    const int k = samples.inputs.front().num_qubits();
    // literal W_out(i) = R_c(phi_i_out) H R_c(phi_r_out)
    Circuit c(k + 1);
    append_block(c, k, k, samples.outputs[samples.reference_index], samples.outputs[i]);
    return circuit_unitary(c);
}

PureState chi_recursion(const EmulationSamples& samples, const PureState& target) {
    samples.validate();
    const int k = samples.inputs.front().num_qubits();
    if (target.dim() != samples.inputs.front().dim())
        throw std::invalid_argument("target dimension mismatch");
    const int blocks = static_cast<int>(samples.size()) - 1;
    PureState minus(Vector{{1.0 / std::sqrt(2.0)}, {-1.0 / std::sqrt(2.0)}});
    PureState state = target;
    for (int b = 0; b < blocks; ++b) state = state.tensor(minus);

    Vector amps = state.amplitudes();
    const int n = k + blocks;
    int b = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i == samples.reference_index) continue;
        Circuit c(n);
        append_block(c, k, k + b, samples.inputs[samples.reference_index], samples.inputs[i]);
        for (const auto& g : c.gates()) apply_gate_in_place(amps, n, g);
        ++b;
    }
    return PureState(std::move(amps));
}

PureState chi_closed_form(const EmulationSamples& samples, const PureState& target) {
    samples.validate();
    const std::size_t blocks = samples.size() - 1;
    if (blocks < 1 || blocks > 2)
        throw std::invalid_argument("closed form available for one or two blocks only");
    const Vector& psi = target.amplitudes();
    const Vector& phir = samples.inputs[samples.reference_index].amplitudes();
    std::vector<Vector> others;
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (i != samples.reference_index) others.push_back(samples.inputs[i].amplitudes());

    const Complex a = phir.dot(psi);  // <phi_r|psi>
    const Complex b1 = others[0].dot(psi);
    const Complex g1 = phir.dot(others[0]);  // <phi_r|phi_1>
    // one-block stage-1 state:
    //   chi_1 = a phi_r |0> + (psi - a phi_r - 2 b1 phi_1 + 2 a conj(g1) phi_1)|1>
    Vector branch0 = a * phir;
    Vector branch1 = psi - a * phir + (2.0 * a * std::conj(g1) - 2.0 * b1) * others[0];
    if (blocks == 1) {
        const Eigen::Index d = psi.size();
        Vector out = Vector::Zero(2 * d);
        out.segment(0, d) = branch0;
        out.segment(d, d) = branch1;
        return PureState(std::move(out));
    }

    // two blocks: feed the one-block branches through the second reflection pair
    const Complex b2 = others[1].dot(psi);
    const Complex g2 = phir.dot(others[1]);
    (void)b2;
    const Complex cr = phir.dot(branch1);  // = 2 a |g1|^2 - 2 b1 g1
    const Complex c2 = others[1].dot(branch1);
    Vector t00 = branch0;                                   // anc |00>
    Vector t10 = cr * phir;                                 // anc |10> (block-1 bit set)
    Vector t11 = branch1 - cr * phir + (2.0 * cr * std::conj(g2) - 2.0 * c2) * others[1];
    const Eigen::Index d = psi.size();
    Vector out = Vector::Zero(4 * d);
    out.segment(0, d) = t00;       // b1=0 b2=0
    out.segment(d, d) = t10;       // b1=1 b2=0
    out.segment(3 * d, d) = t11;   // b1=1 b2=1
    return PureState(std::move(out));
}

QEResult run_qe(const EmulationSamples& samples, const PureState& target) {
    samples.validate();
    if (target.dim() != samples.inputs.front().dim())
        throw std::invalid_argument("target dimension mismatch");
    const int k = samples.inputs.front().num_qubits();
    const int blocks = static_cast<int>(samples.size()) - 1;
    const int n = k + blocks;
    const Eigen::Index d = target.dim();
    const Eigen::Index anc_dim = Eigen::Index{1} << blocks;

    const PureState chi = chi_recursion(samples, target);
    const Vector& amps = chi.amplitudes();

    // little-endian: main bits are the low k bits, so reshape as (anc, main)
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>> grid(
        amps.data(), d, anc_dim);

    const Vector& phir = samples.inputs[samples.reference_index].amplitudes();
    const Vector& phir_out = samples.outputs[samples.reference_index].amplitudes();

    QEResult res;
    const Matrix rho_main = grid * grid.adjoint();
    const double overlap = std::real(phir.dot(rho_main * phir));
    res.stage1_success_prob = overlap * overlap;

    // stage 2: project the main register onto phi_r (measurement outcome 0)
    Vector anc_amp = (phir.adjoint() * grid).transpose();  // <phi_r|chi_a> per ancilla branch
    const double p0 = anc_amp.squaredNorm();
    res.postselect_prob = p0;

    auto run_stage4 = [&](const Vector& main_in, const Vector& anc_in) {
        Vector state = Vector::Zero(d * anc_dim);
        for (Eigen::Index ai = 0; ai < anc_dim; ++ai)
            state.segment(ai * d, d) = anc_in(ai) * main_in;
        int b = blocks - 1;
        for (std::size_t i = samples.size(); i-- > 0;) {
            if (i == samples.reference_index) continue;
            Circuit c(n);
            append_block_inverse(c, k, k + b, samples.outputs[samples.reference_index],
                                 samples.outputs[i]);
            for (const auto& g : c.gates()) apply_gate_in_place(state, n, g);
            --b;
        }
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>> out_grid(
            state.data(), d, anc_dim);
        return Matrix(out_grid * out_grid.adjoint());
    };

    if (p0 > 1e-14) {
        const Vector anc_norm = anc_amp / std::sqrt(p0);
        Matrix rho = run_stage4(phir_out, anc_norm);
        res.output_state = DensityMatrix(rho / rho.trace().real());
        res.postselected = true;
    }

    // channel without post-selection: keep the failure branch as well; its main
    // register is swapped out for phi_r_out and the entangled remainder rides
    // on the ancillas
    Matrix chan = Matrix::Zero(d, d);
    if (p0 > 1e-14)
        chan += p0 * res.output_state->entries();
    if (p0 < 1.0 - 1e-14) {
        // failure branch amplitudes: chi - |phi_r><phi_r| chi
        Matrix fail = grid;
        for (Eigen::Index ai = 0; ai < anc_dim; ++ai)
            fail.col(ai) -= anc_amp(ai) * phir;
        // ancilla reduced state after the main register is swapped out
        const Matrix rho_anc = fail.transpose() * fail.conjugate();
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_anc);
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            const double w = es.eigenvalues()(j);
            if (w < 1e-14) continue;
            Vector anc_j = es.eigenvectors().col(j);
            chan += w * run_stage4(phir_out, anc_j);
        }
    }
    res.channel_output = DensityMatrix(chan / chan.trace().real());
    return res;
}

OneBlockAttackResult one_block_attack(double alpha, Eigen::Index dim, std::uint64_t seed) {
    if (alpha < 0.0 || alpha > 1.0) throw std::out_of_range("alpha must lie in [0,1]");
    Rng rng(seed);
    // orthonormal pair (phi_1, psi)
    Vector v1 = haar_state(dim, rng).amplitudes();
    Vector v2 = haar_state(dim, rng).amplitudes();
    v2 -= v1.dot(v2) * v1;
    v2 /= v2.norm();
    const PureState phi1(v1), psi(v2);
    Vector ref = std::sqrt(1.0 - alpha * alpha) * v1 + alpha * v2;
    ref /= ref.norm();
    const PureState phir(ref);

    const Matrix u = haar_unitary(dim, rng);
    EmulationSamples samples;
    samples.inputs = {phi1, phir};
    samples.outputs = {PureState(Vector(u * v1)), PureState(Vector(u * ref))};
    samples.reference_index = 1;

    const QEResult qe = run_qe(samples, psi);
    OneBlockAttackResult out;
    out.bound = alpha * alpha * (1.0 + 4.0 * std::pow(1.0 - alpha * alpha, 2));
    out.stage1_success_prob = qe.stage1_success_prob;
    const PureState truth{Vector(u * v2)};
    out.simulated_fidelity = qe.output_state ? qe.output_state->expectation(truth) : 0.0;
    return out;
}

double three_state_forgery_prob(double gamma) {
    if (gamma < 0.0 || gamma > 1.0 / std::sqrt(2.0) + 1e-15)
        throw std::out_of_range("gamma must lie in [0, 1/sqrt(2)]");
    const double g2 = gamma * gamma;
    return g2 * (2.0 - 5.0 * g2 + 3.0 * g2 * g2);
}

InvertedSamples invert_samples(const std::vector<std::pair<int, int>>& f_pairs,
                               const PureState& superposed_pair, Rng& rng) {
    if (f_pairs.size() != 2) throw std::invalid_argument("need the two classical pairs (x, f(x))");
    if (superposed_pair.num_qubits() != 2)
        throw std::invalid_argument("superposed pair must live on two single-bit registers");
    const int x1 = f_pairs[0].first, y1 = f_pairs[0].second;
    const int xk = f_pairs[1].first, yk = f_pairs[1].second;
    if ((x1 != 0 && x1 != 1) || (xk != 0 && xk != 1) || (y1 != 0 && y1 != 1) ||
        (yk != 0 && yk != 1) || x1 == xk)
        throw std::invalid_argument("classical pairs must cover x = 0 and x = 1");

    // expect (|x1, y1> + |xk, yk>)/sqrt(2), registers little-endian (x = wire 0)
    const double r = 1.0 / std::sqrt(2.0);
    Vector expect = Vector::Zero(4);
    expect(x1 + 2 * y1) += r;
    expect(xk + 2 * yk) += r;
    if ((superposed_pair.amplitudes() - expect).norm() > 1e-9)
        throw std::invalid_argument("superposed pair is not of the expected two-term form");

    // swap in a fresh |0> ancilla for the x register, then measure the x
    // register in the +/- basis; both outcomes are valid references. The
    // minus branch cancels when y1 == yk (product input), so its weight is 0.
    Vector plus_branch = Vector::Zero(2), minus_branch = Vector::Zero(2);
    plus_branch(y1) += r * r;
    plus_branch(yk) += r * r;
    minus_branch(y1) += (x1 == 0 ? 1.0 : -1.0) * r * r;
    minus_branch(yk) += (xk == 0 ? 1.0 : -1.0) * r * r;
    const double p_plus =
        plus_branch.squaredNorm() / (plus_branch.squaredNorm() + minus_branch.squaredNorm());
    const int sign = rng.bernoulli(p_plus) ? +1 : -1;

    // post-measurement y-register state, registers swapped: (|y1,0> +/- |yk,0>)/sqrt(2)
    Vector ref = Vector::Zero(4);
    ref(y1) += r;
    ref(yk) += (sign > 0 ? r : -r);
    ref /= ref.norm();

    Vector phi1 = Vector::Zero(4);
    phi1(y1) = 1.0;
    Vector phi1_out = Vector::Zero(4);
    phi1_out(y1 + 2 * x1) = 1.0;  // |y1, x1 = f^-1(y1)>
    Vector ref_out = Vector::Zero(4);
    ref_out(y1 + 2 * x1) += r;
    ref_out(yk + 2 * xk) += (sign > 0 ? r : -r);
    ref_out /= ref_out.norm();

    InvertedSamples out{EmulationSamples{{PureState(std::move(phi1)), PureState(std::move(ref))},
                                         {PureState(std::move(phi1_out)), PureState(std::move(ref_out))},
                                         1},
                        sign};
    return out;
}

}  // namespace qcl
