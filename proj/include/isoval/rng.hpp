#ifndef ISOVAL_RNG_HPP
#define ISOVAL_RNG_HPP

#include <cstdint>
#include <random>

#include "isoval/kernels.hpp"

namespace isoval {

/// Deterministic generator with explicit distributions (std distributions
/// are implementation-defined, which would break byte-reproducibility).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// splitmix64 mix of (seed, index) for independent per-trial streams.
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t index);

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double normal();
    Vector unit_vector(int n);
    /// Haar-ish random rotation via QR of a Gaussian matrix.
    Eigen::MatrixXd rotation(int n);
    /// Random special-linear map with singular values in [0.5, 2], det = 1.
    Eigen::MatrixXd special_linear(int n);

private:
    std::mt19937_64 gen_;
};

}  // namespace isoval

#endif
