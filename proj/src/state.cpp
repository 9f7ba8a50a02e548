#include "qcl/state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qcl {

int qubit_count_for_dim(Eigen::Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("dimension must be a power of two >= 2, got " + std::to_string(dim));
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    return n;
}

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    num_qubits_ = qubit_count_for_dim(amplitudes_.size());
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("state not normalised: |psi|^2 = " + std::to_string(norm2));
    if (std::abs(norm2 - 1.0) > kNormTol) amplitudes_ /= std::sqrt(norm2);
}

PureState PureState::basis(int num_qubits, std::uint64_t index) {
    if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
    Vector v = Vector::Zero(Eigen::Index{1} << num_qubits);
    if (index >= static_cast<std::uint64_t>(v.size())) throw std::out_of_range("basis index out of range");
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

Complex PureState::inner(const PureState& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch in inner product");
    return amplitudes_.dot(other.amplitudes_);  // conjugates *this
}

double PureState::overlap(const PureState& other) const {
    const Complex v = inner(other);
    return std::norm(v);
}

PureState PureState::tensor(const PureState& other) const {
    Vector out(dim() * other.dim());
    // little-endian: this occupies the low qubits of the combined register
    for (Eigen::Index j = 0; j < other.dim(); ++j)
        for (Eigen::Index i = 0; i < dim(); ++i)
            out(j * dim() + i) = amplitudes_(i) * other.amplitudes_(j);
    return PureState(std::move(out));
}

std::string PureState::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (i) os << ',';
        os << amplitudes_(i).real() << ',' << amplitudes_(i).imag();
    }
    return os.str();
}

PureState PureState::from_csv(const std::string& line) {
    std::vector<double> vals;
    std::istringstream is(line);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        vals.push_back(std::stod(tok));
    }
    if (vals.empty() || vals.size() % 2 != 0)
        throw std::invalid_argument("malformed state CSV row");
    Vector v(static_cast<Eigen::Index>(vals.size() / 2));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = Complex(vals[2 * i], vals[2 * i + 1]);
    return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("density matrix must be square");
    num_qubits_ = qubit_count_for_dim(entries_.rows());
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("density matrix not Hermitian");
    entries_ = 0.5 * (entries_ + entries_.adjoint().eval());
    const double tr = entries_.trace().real();
    if (std::abs(tr - 1.0) > 1e-9)
        throw std::invalid_argument("density matrix trace != 1: " + std::to_string(tr));
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdFloor)
        throw std::invalid_argument("density matrix not PSD: min eigenvalue " +
                                    std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::expectation(const PureState& psi) const {
    if (dim() != psi.dim()) throw std::invalid_argument("dimension mismatch");
    return std::real(psi.amplitudes().dot(entries_ * psi.amplitudes()));
}

namespace {

Matrix partial_trace_impl(const Matrix& rho, int n, const std::set<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
    for (int q : keep)
        if (q < 0 || q >= n) throw std::out_of_range("keep wire out of range");
    std::vector<int> kept(keep.begin(), keep.end());
    std::vector<int> dropped;
    for (int q = 0; q < n; ++q)
        if (!keep.count(q)) dropped.push_back(q);

    const Eigen::Index dk = Eigen::Index{1} << kept.size();
    const Eigen::Index dd = Eigen::Index{1} << dropped.size();
    Matrix out = Matrix::Zero(dk, dk);

    auto expand = [](const std::vector<int>& wires, Eigen::Index bits) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < wires.size(); ++i)
            if (bits & (Eigen::Index{1} << i)) idx |= std::uint64_t{1} << wires[i];
        return idx;
    };

    for (Eigen::Index a = 0; a < dk; ++a) {
        const std::uint64_t ia = expand(kept, a);
        for (Eigen::Index b = 0; b < dk; ++b) {
            const std::uint64_t ib = expand(kept, b);
            Complex sum = 0.0;
            for (Eigen::Index e = 0; e < dd; ++e) {
                const std::uint64_t ie = expand(dropped, e);
                sum += rho(static_cast<Eigen::Index>(ia | ie), static_cast<Eigen::Index>(ib | ie));
            }
            out(a, b) = sum;
        }
    }
    return out;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep) {
    return DensityMatrix(partial_trace_impl(rho.entries(), rho.num_qubits(), keep));
}

DensityMatrix partial_trace(const PureState& psi, const std::set<int>& keep) {
    return DensityMatrix(partial_trace_impl(psi.projector(), psi.num_qubits(), keep));
}

double trace_norm(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

namespace {

Matrix psd_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < kPsdFloor)
            throw std::invalid_argument("matrix not PSD in sqrt");
        ev(i) = std::sqrt(std::max(ev(i), 0.0));  // clip the numerical dust
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("dimension mismatch in fidelity");
    const Matrix sr = psd_sqrt(rho.entries());
    const Matrix inner = sr * sigma.entries() * sr;
    Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        sum += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
    const double f = sum * sum;
    return std::min(f, 1.0);
}

double fidelity(const DensityMatrix& rho, const PureState& psi) {
    return std::min(rho.expectation(psi), 1.0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("dimension mismatch in trace distance");
    return 0.5 * trace_norm(rho.entries() - sigma.entries());
}

DistanceMetrics distance_metrics(const DensityMatrix& rho, const DensityMatrix& sigma) {
    DistanceMetrics m;
    m.fidelity = fidelity(rho, sigma);
    m.trace_distance = trace_distance(rho, sigma);
    m.bures_angle = std::acos(std::clamp(std::sqrt(m.fidelity), 0.0, 1.0));
    return m;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-12) s -= p * std::log2(p);
    }
    return s;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

PureState bloch_state(double theta, double phi) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::out_of_range("theta must lie in [0, pi]");
    if (phi < 0.0 || phi >= 2.0 * std::numbers::pi)
        throw std::out_of_range("phi must lie in [0, 2pi)");
    Vector v(2);
    v(0) = std::cos(theta / 2.0);
    v(1) = std::polar(std::sin(theta / 2.0), phi);
    return PureState(std::move(v));
}

PureState equatorial_state(double eta) {
    Vector v(2);
    v(0) = 1.0 / std::sqrt(2.0);
    v(1) = std::polar(1.0 / std::sqrt(2.0), eta);
    return PureState(std::move(v));
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
    if (p < 0.0 || p > 1.0) throw std::out_of_range("depolarizing strength must lie in [0,1]");
    const Eigen::Index d = rho.dim();
    Matrix out = (1.0 - p) * rho.entries() + p * Matrix::Identity(d, d) / static_cast<double>(d);
    return DensityMatrix(std::move(out));
}

}  // namespace qcl
