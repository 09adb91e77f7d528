#ifndef ISOVAL_SPHERE_QUAD_HPP
#define ISOVAL_SPHERE_QUAD_HPP

#include <Eigen/Dense>
#include <functional>

#include "isoval/kernels.hpp"

namespace isoval {

/// Pole of the sphere (last coordinate axis). All zonal measures are
/// symmetric about this axis.
Vector pole(int n);

/// Normalizes v; rejects vectors too short to define a direction.
Vector unit_vector(const Vector& v);

/// Quadrature grid on S^{n-1}.
///
/// For n = 3 this is a Gauss-Legendre (polar, 32*level nodes) x uniform
/// trapezoid (azimuth, 64*level nodes) product grid; level 2 is the default
/// 64 x 128 grid. For n > 3 an equal-weight antipodally symmetric Halton
/// grid is used (best effort; only the n = 3 grid carries accuracy
/// guarantees).
struct SphericalGrid {
    int dim = 0;
    int level = 0;
    NodeMatrix nodes;  // N x dim, unit rows
    Vector weights;    // N, strictly positive, sum = n * omega_n

    Eigen::Index size() const { return nodes.rows(); }
    Vector node(Eigen::Index i) const { return nodes.row(i).transpose(); }
};

inline constexpr int kDefaultGridLevel = 2;

SphericalGrid make_grid(int n, int level = kDefaultGridLevel);

/// Rotation of R^n carrying the pole to u: the geodesic rotation in
/// span{pole, u}. For u = -pole, a half turn about the first axis orthogonal
/// to the pole. Any other choice differing by a rotation fixing the pole
/// gives identical results downstream because the measures are zonal.
Eigen::MatrixXd rotation_to(const Vector& u);

/// Weighted node sum of f (compensated, serial reduction order). Throws if f
/// returns a non-finite value at a node.
double integrate(const std::function<double(const Vector&)>& f, const SphericalGrid& grid);

/// Same, with f already sampled at the nodes.
double integrate_samples(const Vector& samples, const SphericalGrid& grid);

}  // namespace isoval

#endif
