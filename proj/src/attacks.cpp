#include "qcl/attacks.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcl {

namespace {

constexpr double kPi = std::numbers::pi;
// conservative weighting of the verification step in the two-state analysis
constexpr double kDetectionWeight = 0.01;

double bisect_error_rate(double eve_information) {
    // solve 1 - H(D) = I_E on (0, 1/2)
    if (eve_information >= 1.0) return 0.0;
    if (eve_information <= 0.0) return 0.5;
    double lo = 1e-12, hi = 0.5;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const double f = 1.0 - binary_entropy(mid) - eve_information;
        (f > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ClonerHandle circuit_cloner(Circuit circuit, std::vector<int> clone_wires,
                            std::vector<int> ancilla_wires, int input_wire, std::string id) {
    const int n = circuit.num_qubits();
    if (clone_wires.size() != 2) throw std::invalid_argument("attacks use 1->2 cloners");
    ClonerHandle h;
    h.output_qubits = n;
    h.clone_wires = std::move(clone_wires);
    h.ancilla_wires = std::move(ancilla_wires);
    h.id = std::move(id);
    h.run = [c = std::move(circuit), n, input_wire](const PureState& psi) {
        if (psi.num_qubits() != 1) throw std::invalid_argument("cloner input must be one qubit");
        std::optional<PureState> acc;
        for (int w = 0; w < n; ++w) {
            const PureState wire = (w == input_wire) ? psi : PureState::basis(1, 0);
            acc = acc ? acc->tensor(wire) : wire;
        }
        return apply_circuit(*acc, c);
    };
    return h;
}

ClonerHandle ideal_phase_covariant_cloner() {
    return circuit_cloner(phase_cov_ideal_circuit(), {kIdealCloneWireB, kIdealCloneWireE},
                          {kIdealAncillaWire}, 0, "ideal-phase-covariant");
}

ClonerHandle forwarding_cloner() {
    ClonerHandle h;
    h.output_qubits = 1;
    h.clone_wires = {0, 0};
    h.id = "forwarding";
    h.run = [](const PureState& psi) { return psi; };
    return h;
}

Bb84Result bb84_dcrit(const ClonerHandle& cloner) {
    const PureState plus = equatorial_state(0.0);
    const PureState minus = equatorial_state(kPi);
    const PureState plus_i = equatorial_state(kPi / 2.0);
    const PureState minus_i = equatorial_state(3.0 * kPi / 2.0);
    const std::vector<const PureState*> basis_states = {&plus, &minus, &plus_i, &minus_i};

    std::set<int> eve_wires(cloner.ancilla_wires.begin(), cloner.ancilla_wires.end());
    if (cloner.clone_wires.size() > 1 && cloner.clone_wires[1] != cloner.clone_wires[0])
        eve_wires.insert(cloner.clone_wires[1]);

    Bb84Result res{};
    if (eve_wires.empty()) {
        // nothing reaches Eve: chi = 0 and the solve degenerates to H(D) = 1
        res.holevo_chi = 0.0;
        res.eve_information = 0.0;
        res.eve_guess_prob = 0.5;
        res.bob_fidelity = 1.0;
        res.d_crit = 0.5;
        return res;
    }

    std::vector<DensityMatrix> eve;
    double bob_f = 0.0;
    for (const PureState* psi : basis_states) {
        const PureState out = cloner.run(*psi);
        eve.push_back(partial_trace(out, eve_wires));
        bob_f += partial_trace(out, {cloner.clone_wires[0]}).expectation(*psi);
    }
    res.bob_fidelity = bob_f / 4.0;

    const Eigen::Index d = eve[0].dim();
    Matrix mix = Matrix::Zero(d, d), mix0 = Matrix::Zero(d, d), mix1 = Matrix::Zero(d, d);
    for (const auto& e : eve) mix += 0.25 * e.entries();
    mix0 = 0.5 * (eve[0].entries() + eve[2].entries());  // bit 0: {+, +i}
    mix1 = 0.5 * (eve[1].entries() + eve[3].entries());  // bit 1: {-, -i}
    res.holevo_chi = von_neumann_entropy(DensityMatrix(mix)) -
                     0.5 * von_neumann_entropy(DensityMatrix(mix0)) -
                     0.5 * von_neumann_entropy(DensityMatrix(mix1));

    // after basis reconciliation Eve discriminates within the announced basis
    const double p_x = helstrom_prob(eve[0], eve[1], 0.5, 0.5);
    const double p_y = helstrom_prob(eve[2], eve[3], 0.5, 0.5);
    res.eve_guess_prob = 0.5 * (p_x + p_y);
    res.eve_information = 1.0 - binary_entropy(1.0 - res.eve_guess_prob);
    if (res.eve_information > 1.0) {
        res.no_solution = true;
        res.d_crit = 0.0;
        return res;
    }
    res.d_crit = bisect_error_rate(res.eve_information);
    return res;
}

TwoStateCloner mayers_ideal_cloner() {
    const double s = std::cos(kPi / 9.0);
    TwoStateCloner c{fixed_overlap_clone(s, 0).state, fixed_overlap_clone(s, 1).state, 0.0, 0.0,
                     "ideal-fixed-overlap"};
    const double f = optimal_fidelity(CloneSpec::fixed_overlap(s));
    c.returned_fidelity0 = f;
    c.returned_fidelity1 = f;
    return c;
}

TwoStateCloner mayers_cloner_from_circuit(const ClonerHandle& cloner, double phi) {
    const PureState phi0 = four_state_state(phi, 0, 0);
    const PureState phi1 = four_state_state(phi, 1, 0);
    std::set<int> kept(cloner.ancilla_wires.begin(), cloner.ancilla_wires.end());
    kept.insert(cloner.clone_wires[1]);
    const PureState out0 = cloner.run(phi0);
    const PureState out1 = cloner.run(phi1);
    TwoStateCloner c{partial_trace(out0, kept), partial_trace(out1, kept), 0.0, 0.0, cloner.id};
    c.returned_fidelity0 = partial_trace(out0, {cloner.clone_wires[0]}).expectation(phi0);
    c.returned_fidelity1 = partial_trace(out1, {cloner.clone_wires[0]}).expectation(phi1);
    return c;
}

double mayers_majority_success(double p_fail, int n) {
    if (n < 1) throw std::invalid_argument("copy count must be positive");
    if (p_fail < 0.0 || p_fail > 1.0) throw std::out_of_range("failure rate must lie in [0,1]");
    const double p = 1.0 - p_fail;
    auto binom = [](int n_, int k_) {
        double b = 1.0;
        for (int i = 1; i <= k_; ++i) b *= static_cast<double>(n_ - k_ + i) / i;
        return b;
    };
    double total = 0.0;
    const int start = n % 2 == 1 ? (n + 1) / 2 : n / 2 + 1;
    for (int k = start; k <= n; ++k)
        total += binom(n, k) * std::pow(p, k) * std::pow(p_fail, n - k);
    if (n % 2 == 0)
        total += 0.5 * binom(n, n / 2) * std::pow(p, n / 2) * std::pow(p_fail, n / 2);
    return total;
}

AttackReport mayers_bias(const TwoStateCloner& cloner, int copies) {
    if (copies < 1) throw std::invalid_argument("copy count must be positive");
    const double phi = kPi / 18.0;
    const PureState phi0 = four_state_state(phi, 0, 0);
    const PureState phi1 = four_state_state(phi, 1, 0);

    // kept pair: intact qubit (low wire) x kept clone registers
    const Matrix rho1 = Eigen::kroneckerProduct(cloner.kept1.entries(), phi0.projector()).eval();
    const Matrix rho2 = Eigen::kroneckerProduct(cloner.kept0.entries(), phi1.projector()).eval();

    AttackReport rep;
    const double single = helstrom_prob(DensityMatrix(rho1), DensityMatrix(rho2), 0.5, 0.5);
    rep.guess_prob = copies == 1 ? single : mayers_majority_success(1.0 - single, copies);
    rep.detection_prob = 1.0 - 0.5 * (cloner.returned_fidelity0 + cloner.returned_fidelity1);
    rep.overall_success = rep.guess_prob * (1.0 - kDetectionWeight);
    rep.bias = rep.overall_success - 0.5;
    rep.per_state = {cloner.returned_fidelity0, cloner.returned_fidelity1};
    return rep;
}

PureState aharonov_global_clone(double phi, int x, int a) {
    // isometry |0> -> |00>, |1> -> (|01>+|10>)/sqrt(2): every pairwise overlap
    // of the family is preserved, so a unitary cloner with these outputs exists
    const PureState in = four_state_state(phi, x, a);
    Vector v = Vector::Zero(4);
    const double r = 1.0 / std::sqrt(2.0);
    v(0b00) = in.amplitude(0);
    v(0b01) = in.amplitude(1) * r;
    v(0b10) = in.amplitude(1) * r;
    return PureState(std::move(v));
}

std::pair<PureState, PureState> aharonov_attack_projectors(double phi) {
    // optimal projective split of the (0,0)/(1,1) global clone pair: rotate
    // the symmetric/antisymmetric combinations by pi/4 within their span
    const Vector a = aharonov_global_clone(phi, 0, 0).amplitudes();
    const Vector b = aharonov_global_clone(phi, 1, 1).amplitudes();
    Vector e1 = a + b, e2 = a - b;
    e1 /= e1.norm();
    e2 /= e2.norm();
    const double r = 1.0 / std::sqrt(2.0);
    Vector v = r * (e1 + e2), vp = r * (e1 - e2);
    return {PureState(std::move(v)), PureState(std::move(vp))};
}

AttackReport aharonov_bias(AharonovModel model, double phi) {
    if (phi <= 0.0 || phi > kPi / 4.0) throw std::out_of_range("phi must lie in (0, pi/4]");
    AttackReport rep;
    const double s = std::sin(2.0 * phi);
    switch (model) {
        case AharonovModel::GlobalI: {
            rep.guess_prob = 0.5 + 0.5 * s;
            rep.bias = rep.guess_prob - 0.5;
            rep.detection_prob = 0.0;
            rep.overall_success = rep.guess_prob;
            // realised success of the explicit projector pair on the clone pair
            auto [v, vp] = aharonov_attack_projectors(phi);
            const PureState c00 = aharonov_global_clone(phi, 0, 0);
            const PureState c11 = aharonov_global_clone(phi, 1, 1);
            rep.per_state = {c00.overlap(v), c11.overlap(vp), c00.overlap(vp), c11.overlap(v)};
            return rep;
        }
        case AharonovModel::FourStateII: {
            auto [ex, ez] = four_state_shrinking(phi);
            (void)ex;
            rep.guess_prob = 0.5 + 0.5 * ez * std::cos(2.0 * phi);
            rep.bias = rep.guess_prob - 0.5;
            rep.overall_success = rep.guess_prob;
            for (int x = 0; x < 2; ++x)
                for (int a = 0; a < 2; ++a)
                    rep.per_state.push_back(
                        four_state_clone(phi, x, a).expectation(four_state_state(phi, x, a)));
            return rep;
        }
        case AharonovModel::TwoStateBoundsII: {
            const double fl = optimal_fidelity(CloneSpec::fixed_overlap(s));
            const double ab = std::sqrt((1.0 - s * s) / (1.0 - s * s * s * s));
            const double f_cross = fl + (s * s - 1.0) * ab;
            const double lo = 0.5 + 0.5 * (1.0 - std::sqrt(f_cross));
            const double hi = 0.5 + 0.5 * std::sqrt(1.0 - f_cross);
            rep.bounds = {lo, hi};
            rep.guess_prob = lo;  // the certified value
            rep.bias = lo - 0.5;
            rep.overall_success = lo;
            rep.per_state = {fl, f_cross};
            return rep;
        }
    }
    throw std::logic_error("unknown attack model");
}

P1RoundStats simulate_p1_round(const TwoStateCloner* cloner, std::uint64_t seed, long trials) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const double phi = kPi / 18.0;
    const PureState phi0 = four_state_state(phi, 0, 0);
    const PureState phi1 = four_state_state(phi, 1, 0);
    Rng rng(seed);

    std::optional<Matrix> guess0_projector;  // Helstrom projector voting for c = 0
    if (cloner) {
        const Matrix rho1 = Eigen::kroneckerProduct(cloner->kept1.entries(), phi0.projector()).eval();
        const Matrix rho2 = Eigen::kroneckerProduct(cloner->kept0.entries(), phi1.projector()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho1 - rho2));
        Matrix proj = Matrix::Zero(rho1.rows(), rho1.cols());
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()(i) > 0.0)
                proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        guess0_projector = std::move(proj);
    }

    long guessed = 0, detected = 0;
    for (long t = 0; t < trials; ++t) {
        const int c = rng.bit();
        // Bob clones the qubit he returns (phi_{1-c}) and keeps the intact
        // phi_c next to the leftover clone registers
        if (!cloner) {
            if (rng.bit() == c) ++guessed;  // random guess, nothing disturbed
            continue;
        }
        const DensityMatrix& kept_clone = (c == 0) ? cloner->kept1 : cloner->kept0;
        const PureState& intact = (c == 0) ? phi0 : phi1;
        const Matrix joint = Eigen::kroneckerProduct(kept_clone.entries(), intact.projector()).eval();
        const double p_guess0 = std::real((*guess0_projector * joint).trace());
        const int guess = rng.bernoulli(p_guess0) ? 0 : 1;
        if (guess == c) ++guessed;
        // Alice checks the returned clone against the state she sent
        const double pass = (c == 0) ? cloner->returned_fidelity1 : cloner->returned_fidelity0;
        if (!rng.bernoulli(pass)) ++detected;
    }
    P1RoundStats st;
    st.trials = trials;
    st.guess_freq = static_cast<double>(guessed) / trials;
    st.detection_freq = static_cast<double>(detected) / trials;
    st.bias = st.guess_freq * (1.0 - kDetectionWeight) - 0.5;
    return st;
}

}  // namespace qcl
