#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace qcl {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kPsdFloor = -1e-10;

// Exact state-vector of n qubits, little-endian: qubit 0 is the least
// significant bit of the basis index.
class PureState {
public:
    explicit PureState(Vector amplitudes);
    static PureState basis(int num_qubits, std::uint64_t index);
    static PureState zero(int num_qubits) { return basis(num_qubits, 0); }

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex amplitude(std::uint64_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

    Complex inner(const PureState& other) const;
    // |<this|other>|^2
    double overlap(const PureState& other) const;
    PureState tensor(const PureState& other) const;

    Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

    // CSV row of (re, im) pairs in little-endian qubit order.
    std::string to_csv() const;
    static PureState from_csv(const std::string& line);

private:
    Vector amplitudes_;
    int num_qubits_;
};

// Hermitian, PSD, unit-trace matrix over n qubits.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix entries);
    explicit DensityMatrix(const PureState& psi) : DensityMatrix(psi.projector()) {}
    static DensityMatrix maximally_mixed(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }

    double purity() const { return (entries_ * entries_).trace().real(); }
    // <psi|rho|psi>
    double expectation(const PureState& psi) const;

private:
    Matrix entries_;
    int num_qubits_;
};

// Reduced state on the kept wires. `keep` must be a nonempty subset of wires.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep);
DensityMatrix partial_trace(const PureState& psi, const std::set<int>& keep);

struct DistanceMetrics {
    double fidelity;
    double trace_distance;
    double bures_angle;
};

// Uhlmann fidelity (squared-overlap convention: F(|a>,|b>) = |<a|b>|^2),
// trace distance and Bures angle arccos(sqrt(F)) in one pass.
DistanceMetrics distance_metrics(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity(const DensityMatrix& rho, const PureState& psi);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Tr|M| for Hermitian M (sum of absolute eigenvalues).
double trace_norm(const Matrix& m);

// Von Neumann entropy in bits; eigenvalues below 1e-12 are dropped.
double von_neumann_entropy(const DensityMatrix& rho);
// Binary entropy in bits with H(0) = H(1) = 0.
double binary_entropy(double p);

// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, theta in [0,pi], phi in [0,2pi).
PureState bloch_state(double theta, double phi);
// Equatorial qubit (|0> + e^{i eta}|1>)/sqrt(2).
PureState equatorial_state(double eta);

// Depolarizing channel (1-p) rho + p I/d; used by the contractivity checks.
DensityMatrix depolarize(const DensityMatrix& rho, double p);

int qubit_count_for_dim(Eigen::Index dim);  // throws unless dim is a power of two

}  // namespace qcl
