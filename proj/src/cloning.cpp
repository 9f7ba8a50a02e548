#include "qcl/cloning.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcl {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double universal_local(int m, int n) {
    return (static_cast<double>(m) * n + m + n) / (static_cast<double>(n) * (m + 2));
}

double universal_global(int m, int n) {
    return factorial(n) * factorial(m + 1) / (factorial(m) * factorial(n + 1));
}

double phase_covariant_local_1toN(int n) {
    if (n % 2 == 1) return 0.5 * (1.0 + static_cast<double>(n + 1) / (2.0 * n));
    return 0.5 * (1.0 + std::sqrt(static_cast<double>(n) * (n + 2)) / (2.0 * n));
}

double fixed_overlap_local_1to2(double s) {
    if (s < 0.0 || s > 1.0) throw std::out_of_range("overlap must lie in [0,1]");
    if (s == 0.0) return 1.0;
    if (s == 1.0) return 1.0;
    const double r = std::sqrt(1.0 - 2.0 * s + 9.0 * s * s);
    return 0.5 + (std::sqrt(2.0) / (32.0 * s)) * (1.0 + s) * (3.0 - 3.0 * s + r) *
                     std::sqrt(-1.0 + 2.0 * s + 3.0 * s * s + (1.0 - s) * r);
}

double fixed_overlap_global(double s, int m, int n) {
    if (s < 0.0 || s > 1.0) throw std::out_of_range("overlap must lie in [0,1]");
    const double sm = std::pow(s, m), sn = std::pow(s, n);
    return 0.5 * (1.0 + std::pow(s, m + n) +
                  std::sqrt(1.0 - sm * sm) * std::sqrt(1.0 - sn * sn));
}

}  // namespace

double fixed_overlap_local_of_global(double s, int m, int n) {
    if (s < 0.0 || s >= 1.0) throw std::out_of_range("overlap must lie in [0,1)");
    if (s == 0.0) return 1.0;
    const double sm = std::pow(s, m), sn = std::pow(s, n);
    const double s2 = s * s;
    return 0.25 * ((1.0 + sm) / (1.0 + sn) * (1.0 + s2 + 2.0 * sn) +
                   (1.0 - sm) / (1.0 - sn) * (1.0 + s2 - 2.0 * sn) +
                   2.0 * (1.0 - sm * sm) / (1.0 - sn * sn) * (1.0 - s2));
}

double optimal_fidelity(const CloneSpec& spec) {
    const int m = spec.in_copies, n = spec.out_copies;
    if (m < 1 || n < m) throw std::invalid_argument("need 1 <= M <= N");
    switch (spec.family) {
        case CloneFamily::Universal:
            return spec.figure == Figure::Local ? universal_local(m, n) : universal_global(m, n);
        case CloneFamily::PhaseCovariant:
            if (spec.figure == Figure::Local && m == 1) return phase_covariant_local_1toN(n);
            throw std::invalid_argument("no closed form: phase-covariant supports local 1->N only");
        case CloneFamily::FixedOverlap:
            if (spec.figure == Figure::Global) return fixed_overlap_global(spec.overlap, m, n);
            if (m == 1 && n == 2) return fixed_overlap_local_1to2(spec.overlap);
            throw std::invalid_argument("no closed form: fixed-overlap local supports 1->2 only");
        case CloneFamily::FourState:
            throw std::invalid_argument("no closed form for the four-state family");
    }
    throw std::logic_error("unknown clone family");
}

CloneOutput phase_cov_transformation(double eta, const PureState& input) {
    if (eta < 0.0 || eta > std::numbers::pi / 2.0)
        throw std::out_of_range("eta must lie in [0, pi/2]");
    if (input.num_qubits() != 1) throw std::invalid_argument("input must be a single qubit");
    const Complex a = input.amplitude(0), b = input.amplitude(1);
    const double se = std::sin(eta), ce = std::cos(eta);
    const double r = 1.0 / std::sqrt(2.0);

    // wires: 0,1 clones, 2 ancilla; basis index q0 + 2 q1 + 4 q2
    Vector out = Vector::Zero(8);
    out(0b000) += a * r;                      // |000> -> |000>
    out(0b010) += b * r * se;                 // |100> -> sin |010> + cos |001>... (wire order)
    out(0b001) += b * r * ce;
    out(0b110) += a * r * ce;                 // |011>_{q1,q2} branch
    out(0b101) += a * r * se;
    out(0b111) += b * r;                      // |111> -> |111>
    PureState full(std::move(out));

    CloneOutput result{partial_trace(full, {0, 1}),
                       {partial_trace(full, {0}), partial_trace(full, {1})},
                       partial_trace(full, {2})};
    return result;
}

namespace {
// preparation angles of the three-qubit cloning network
const double kPrepAngle1 = std::asin(std::sqrt(0.5 - 0.5 / std::sqrt(3.0)));
const double kPrepAngle2 = -std::asin(std::sqrt(0.5 - std::sqrt(3.0) / 4.0));
const double kPrepAngle3 = kPrepAngle1;
}  // namespace

Circuit phase_cov_ideal_circuit() {
    Circuit c(3);
    // preparation of the blank pair (wires 1, 2)
    c.append(Gate::ry(1, 2.0 * kPrepAngle1));
    c.append(Gate::cnot(1, 2));
    c.append(Gate::ry(2, 2.0 * kPrepAngle2));
    c.append(Gate::cnot(2, 1));
    c.append(Gate::ry(1, 2.0 * kPrepAngle3));
    // information transfer from the input wire
    c.append(Gate::cnot(0, 1));
    c.append(Gate::cnot(0, 2));
    c.append(Gate::cnot(1, 0));
    c.append(Gate::cnot(2, 0));
    return c;
}

CloneOutput phase_cov_ideal_clone(const PureState& input) {
    if (input.num_qubits() != 1) throw std::invalid_argument("input must be a single qubit");
    const PureState full_in = input.tensor(PureState::zero(2));
    const PureState full = apply_circuit(full_in, phase_cov_ideal_circuit());
    return CloneOutput{partial_trace(full, {kIdealCloneWireB, kIdealCloneWireE}),
                       {partial_trace(full, {kIdealCloneWireB}), partial_trace(full, {kIdealCloneWireE})},
                       partial_trace(full, {kIdealAncillaWire})};
}

std::pair<PureState, PureState> fixed_overlap_pair(double s) {
    if (s < 0.0 || s > 1.0) throw std::out_of_range("overlap must lie in [0,1]");
    const double phi = 0.5 * std::acos(s);
    Vector v0(2), v1(2);
    v0 << std::cos(phi), std::sin(phi);
    v1 << std::cos(phi), -std::sin(phi);
    return {PureState(std::move(v0)), PureState(std::move(v1))};
}

FixedOverlapClone fixed_overlap_clone(double s, int which, std::optional<double> fidelity_override) {
    if (which != 0 && which != 1) throw std::out_of_range("input index must be 0 or 1");
    if (s < 0.0 || s > 1.0) throw std::out_of_range("overlap must lie in [0,1]");
    auto [phi0, phi1] = fixed_overlap_pair(s);
    const PureState& in = which == 0 ? phi0 : phi1;
    if (s == 1.0)
        return {DensityMatrix(in), true, 1.0, 0.0, 0.0};

    const double f = fidelity_override.value_or(fixed_overlap_local_1to2(s));
    // rho_c = alpha |in><in| + beta |other><other| + gamma (|in><other| + h.c.)
    // from {trace 1, <in|rho|in> = f, alpha - beta = sqrt((1-s^2)/(1-s^4))}
    const double beta = (1.0 - f) / (1.0 - s * s);
    const double alpha = beta + std::sqrt((1.0 - s * s) / (1.0 - s * s * s * s));
    const double gamma = s > 0.0 ? (1.0 - alpha - beta) / (2.0 * s) : 0.0;

    const PureState& other = which == 0 ? phi1 : phi0;
    Matrix rho = alpha * in.projector() + beta * other.projector() +
                 gamma * (in.amplitudes() * other.amplitudes().adjoint() +
                          other.amplitudes() * in.amplitudes().adjoint());
    return {DensityMatrix(std::move(rho)), false, alpha, beta, gamma};
}

PureState four_state_state(double phi, int x, int a) {
    if (x < 0 || x > 1 || a < 0 || a > 1) throw std::out_of_range("bits must be 0 or 1");
    Vector v(2);
    if (a == 0)
        v << std::cos(phi), (x ? -1.0 : 1.0) * std::sin(phi);
    else
        v << std::sin(phi), (x ? 1.0 : -1.0) * std::cos(phi);
    return PureState(std::move(v));
}

std::pair<double, double> four_state_shrinking(double phi) {
    const double s2 = std::sin(2.0 * phi), c2 = std::cos(2.0 * phi);
    const double denom = std::sqrt(s2 * s2 * s2 * s2 + c2 * c2 * c2 * c2);
    return {s2 * s2 / denom, c2 * c2 / denom};
}

DensityMatrix four_state_clone(double phi, int x, int a) {
    if (phi <= 0.0 || phi > std::numbers::pi / 4.0)
        throw std::out_of_range("phi must lie in (0, pi/4]");
    if (x < 0 || x > 1 || a < 0 || a > 1) throw std::out_of_range("bits must be 0 or 1");
    const double s2 = std::sin(2.0 * phi), c2 = std::cos(2.0 * phi);
    // family Bloch vectors: m_{00}=(s2,0,c2) m_{01}=(-s2,0,-c2) m_{10}=(-s2,0,c2) m_{11}=(s2,0,-c2)
    const double vx = (x == a ? 1.0 : -1.0) * s2;
    const double vz = (a == 0 ? 1.0 : -1.0) * c2;
    auto [ex, ez] = four_state_shrinking(phi);
    Matrix rho(2, 2);
    rho << 0.5 * (1.0 + ez * vz), 0.5 * (ex * vx), 0.5 * (ex * vx), 0.5 * (1.0 - ez * vz);
    return DensityMatrix(std::move(rho));
}

double helstrom_prob(const DensityMatrix& rho1, const DensityMatrix& rho2, double q1, double q2) {
    if (std::abs(q1 + q2 - 1.0) > 1e-12) throw std::invalid_argument("priors must sum to one");
    if (q1 < 0.0 || q2 < 0.0) throw std::invalid_argument("priors must be nonnegative");
    if (rho1.dim() != rho2.dim()) throw std::invalid_argument("dimension mismatch");
    return 0.5 + 0.5 * trace_norm(q1 * rho1.entries() - q2 * rho2.entries());
}

UnambiguousOutcome unambiguous_disc(double theta) {
    if (theta < 0.0 || theta > std::numbers::pi / 2.0)
        throw std::out_of_range("theta must lie in [0, pi/2]");
    const double c = std::cos(theta);
    return {1.0 - c, c};
}

}  // namespace qcl
