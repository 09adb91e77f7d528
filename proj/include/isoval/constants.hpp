#ifndef ISOVAL_CONSTANTS_HPP
#define ISOVAL_CONSTANTS_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isoval {

inline constexpr double kPi = std::numbers::pi;

/// Volume of the unit ball in R^k: omega_k = pi^{k/2} / Gamma(1 + k/2).
inline double unit_ball_volume(int k) {
    if (k < 0) throw std::invalid_argument("unit_ball_volume: k < 0");
    return std::pow(kPi, 0.5 * k) / std::tgamma(1.0 + 0.5 * k);
}

/// Surface measure of S^{n-1}: n * omega_n.
inline double sphere_surface(int n) { return n * unit_ball_volume(n); }

/// Normalizing constant of the L_p projection body,
/// a_{n,p} = Gamma((n+p)/2) / (2 pi^{(n-1)/2} Gamma((p+1)/2)),
/// chosen so that Pi_p B_1(0) = B_1(0).
inline double a_np(int n, double p) {
    if (n < 3) throw std::invalid_argument("a_np: requires n >= 3");
    if (p < 1.0) throw std::invalid_argument("a_np: requires p >= 1");
    return std::exp(std::lgamma(0.5 * (n + p)) - std::lgamma(0.5 * (p + 1.0))) /
           (2.0 * std::pow(kPi, 0.5 * (n - 1)));
}

/// Mean value of |v . e|^p over v in S^{n-1}. Equals 1 / (a_{n,p} n omega_n).
inline double mean_abs_cos_pow(int n, double p) {
    return 1.0 / (a_np(n, p) * sphere_surface(n));
}

}  // namespace isoval

#endif
