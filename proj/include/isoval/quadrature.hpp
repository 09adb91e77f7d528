#ifndef ISOVAL_QUADRATURE_HPP
#define ISOVAL_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace isoval {

/// Neumaier-compensated accumulator. Summation order is fixed by the caller,
/// so results do not depend on thread count as long as the caller reduces
/// serially over a deterministic index order.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
/// Newton iteration on Legendre polynomials; accurate to ~1e-15.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Integrate f over [a, b] with a composite rule split at the given interior
/// breakpoints, Gauss-Legendre on each panel. Breakpoints outside (a, b) are
/// ignored.
double panel_integrate(const std::function<double(double)>& f, double a, double b,
                       std::span<const double> breakpoints, int points_per_panel = 24);

/// Integrate f over [a, b] by tanh-sinh quadrature. Robust against algebraic
/// endpoint singularities such as (x-a)^p; near machine precision for the
/// integrands used here.
double tanh_sinh(const std::function<double(double)>& f, double a, double b);

}  // namespace isoval

#endif
