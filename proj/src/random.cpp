#include "qcl/random.hpp"

#include <stdexcept>

namespace qcl {

std::uint64_t Rng::integer(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("integer bound must be positive");
    std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
    return d(engine_);
}

PureState haar_state(Eigen::Index dim, Rng& rng) {
    qubit_count_for_dim(dim);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
    v /= v.norm();
    return PureState(std::move(v));
}

Matrix haar_unitary(Eigen::Index dim, Rng& rng) {
    qubit_count_for_dim(dim);
    Matrix z(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace qcl
