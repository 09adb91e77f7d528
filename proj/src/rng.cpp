#include "isoval/rng.hpp"

#include <cmath>

#include "isoval/constants.hpp"

namespace isoval {

std::uint64_t Rng::substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::normal() {
    // Box-Muller, spare discarded: one state draw pattern per call pair.
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Vector Rng::unit_vector(int n) {
    Vector v(n);
    while (true) {
        for (int i = 0; i < n; ++i) v[i] = normal();
        double nrm = v.norm();
        if (nrm > 1e-6) return v / nrm;
    }
}

Eigen::MatrixXd Rng::rotation(int n) {
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::VectorXd d = qr.matrixQR().diagonal();
    for (int i = 0; i < n; ++i)
        if (d[i] < 0) Q.col(i) = -Q.col(i);
    if (Q.determinant() < 0) Q.col(0) = -Q.col(0);
    return Q;
}

Eigen::MatrixXd Rng::special_linear(int n) {
    Eigen::MatrixXd U = rotation(n);
    Eigen::MatrixXd V = rotation(n);
    Vector d(n);
    double logsum = 0.0;
    for (int i = 0; i < n; ++i) {
        d[i] = std::exp(uniform(std::log(0.5), std::log(2.0)));
        logsum += std::log(d[i]);
    }
    // Rescale so the determinant is exactly-ish 1.
    d *= std::exp(-logsum / n);
    return U * d.asDiagonal() * V.transpose();
}

}  // namespace isoval
