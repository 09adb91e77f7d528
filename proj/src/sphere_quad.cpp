#include "isoval/sphere_quad.hpp"

#include <cmath>
#include <stdexcept>

#include "isoval/constants.hpp"
#include "isoval/quadrature.hpp"

namespace isoval {

Vector pole(int n) {
    Vector e = Vector::Zero(n);
    e[n - 1] = 1.0;
    return e;
}

Vector unit_vector(const Vector& v) {
    double nrm = v.norm();
    if (!(nrm > 1e-14)) throw std::invalid_argument("unit_vector: zero-length input");
    return v / nrm;
}

namespace {

// Halton sequence mapped through the inverse normal CDF, plus the antipode
// of every point, so odd integrands cancel exactly.
double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

// Acklam's rational approximation; ~1e-9 accuracy is ample for node
// placement.
double inverse_normal_cdf(double u) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    if (u < plow) {
        double q = std::sqrt(-2 * std::log(u));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (u > phigh) {
        double q = std::sqrt(-2 * std::log(1 - u));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double q = u - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

SphericalGrid make_grid_3d(int level) {
    const int n_polar = 32 * level;
    const int n_az = 64 * level;
    // Two-panel composite Gauss-Legendre in t = cos(theta), split at the
    // equator: |t|-type kernels (the zonal workhorses) are smooth on each
    // panel, so pole-aligned integrands integrate to machine precision.
    GaussRule upper = gauss_legendre(n_polar / 2, 0.0, 1.0);
    std::vector<double> tn(n_polar), tw(n_polar);
    for (int i = 0; i < n_polar / 2; ++i) {
        tn[i] = -upper.nodes[n_polar / 2 - 1 - i];
        tw[i] = upper.weights[n_polar / 2 - 1 - i];
        tn[n_polar / 2 + i] = upper.nodes[i];
        tw[n_polar / 2 + i] = upper.weights[i];
    }
    SphericalGrid grid;
    grid.dim = 3;
    grid.level = level;
    grid.nodes.resize(static_cast<Eigen::Index>(n_polar) * n_az, 3);
    grid.weights.resize(static_cast<Eigen::Index>(n_polar) * n_az);
    const double wphi = 2.0 * kPi / n_az;
    Eigen::Index idx = 0;
    for (int i = 0; i < n_polar; ++i) {
        const double t = tn[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (int j = 0; j < n_az; ++j, ++idx) {
            const double phi = (2.0 * kPi * j) / n_az;
            grid.nodes(idx, 0) = s * std::cos(phi);
            grid.nodes(idx, 1) = s * std::sin(phi);
            grid.nodes(idx, 2) = t;
            grid.weights[idx] = tw[i] * wphi;
        }
    }
    return grid;
}

SphericalGrid make_grid_qmc(int n, int level) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n > 12) throw std::invalid_argument("make_grid: n > 12 not supported");
    const Eigen::Index pairs = static_cast<Eigen::Index>(2048) * level;
    SphericalGrid grid;
    grid.dim = n;
    grid.level = level;
    grid.nodes.resize(2 * pairs, n);
    grid.weights = Vector::Constant(2 * pairs, sphere_surface(n) / (2.0 * pairs));
    Eigen::Index row = 0;
    std::uint64_t index = 1;
    while (row < 2 * pairs) {
        Vector x(n);
        for (int d = 0; d < n; ++d) x[d] = inverse_normal_cdf(halton(index, primes[d]));
        ++index;
        double nrm = x.norm();
        if (nrm < 1e-3) continue;
        grid.nodes.row(row) = (x / nrm).transpose();
        grid.nodes.row(row + 1) = -(x / nrm).transpose();
        row += 2;
    }
    return grid;
}

}  // namespace

SphericalGrid make_grid(int n, int level) {
    if (n < 3) throw std::invalid_argument("make_grid: requires n >= 3");
    if (level < 1) throw std::invalid_argument("make_grid: requires level >= 1");
    return n == 3 ? make_grid_3d(level) : make_grid_qmc(n, level);
}

Eigen::MatrixXd rotation_to(const Vector& u) {
    const int n = static_cast<int>(u.size());
    Vector e = pole(n);
    double c = e.dot(u);
    Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n, n);
    Vector w = u - c * e;
    double s = w.norm();
    if (s < 1e-14) {
        if (c > 0.0) return rot;
        // u = -pole: half turn in the plane spanned by the pole and e_1.
        rot(0, 0) = -1.0;
        rot(n - 1, n - 1) = -1.0;
        return rot;
    }
    w /= s;
    // Geodesic rotation: acts in span{e, w}, identity on the complement.
    rot += (c - 1.0) * (e * e.transpose() + w * w.transpose());
    rot += s * (w * e.transpose() - e * w.transpose());
    return rot;
}

double integrate(const std::function<double(const Vector&)>& f, const SphericalGrid& grid) {
    KahanSum acc;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        double v = f(grid.node(i));
        if (!std::isfinite(v)) throw std::domain_error("integrate: non-finite integrand value");
        acc.add(v * grid.weights[i]);
    }
    return acc.value();
}

double integrate_samples(const Vector& samples, const SphericalGrid& grid) {
    if (samples.size() != grid.size())
        throw std::invalid_argument("integrate_samples: size mismatch");
    KahanSum acc;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(samples[i]))
            throw std::domain_error("integrate_samples: non-finite sample");
        acc.add(samples[i] * grid.weights[i]);
    }
    return acc.value();
}

}  // namespace isoval
