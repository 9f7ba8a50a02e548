#pragma once

#include "qcl/state.hpp"

#include <cstdint>
#include <random>

namespace qcl {

// Per-task RNG; never shared between threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return dist_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * dist_(engine_); }
    double gaussian() { return gauss_(engine_); }
    int bit() { return engine_() & 1u ? 1 : 0; }
    std::uint64_t integer(std::uint64_t bound);  // uniform in [0, bound)
    bool bernoulli(double p) { return uniform() < p; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> dist_{0.0, 1.0};
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

// Haar-random state: normalised complex Gaussian vector.
PureState haar_state(Eigen::Index dim, Rng& rng);
// Haar-random unitary: QR of a complex Gaussian matrix with the R diagonal
// phase-normalised.
Matrix haar_unitary(Eigen::Index dim, Rng& rng);

}  // namespace qcl
