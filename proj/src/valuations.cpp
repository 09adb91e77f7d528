#include "isoval/valuations.hpp"

#include <cmath>
#include <stdexcept>

#include "isoval/constants.hpp"
#include "isoval/quadrature.hpp"

namespace isoval {

namespace {

constexpr int kRingSamples = 96;   // azimuth nodes of the adapted rule
constexpr int kPanelPoints = 20;   // Gauss nodes per half-panel
constexpr int kCircleSamples = 4096;  // latitude-circle rule of the rotation average

struct KernelSpec {
    std::function<double(double)> k;  // contribution to h^p at s = u.v
    std::vector<double> breakpoints;  // non-smooth heights of k in (-1, 1)
};

KernelSpec projection_kernel(int n, double p) {
    KernelSpec spec;
    const double a = a_np(n, p);
    spec.k = [a, p](double s) { return a * std::pow(std::abs(s), p); };
    double r = std::round(p);
    if (!(std::abs(p - r) < 1e-12 && static_cast<long long>(r) % 2 == 0))
        spec.breakpoints.push_back(0.0);
    return spec;
}

KernelSpec measure_kernel(const ZonalMeasure& mu, double p) {
    KernelSpec spec;
    spec.k = [&mu, p](double s) { return kernel(mu, p, s); };
    spec.breakpoints = kernel_breakpoints(mu, p);
    return spec;
}

// Orthonormal frame completing u (n = 3).
void frame3(const Vector& u, Eigen::Vector3d& e1, Eigen::Vector3d& e2) {
    Eigen::Vector3d w(u[0], u[1], u[2]);
    int k = 0;
    for (int d = 1; d < 3; ++d)
        if (std::abs(w[d]) < std::abs(w[k])) k = d;
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    axis[k] = 1.0;
    e1 = (axis - axis.dot(w) * w).normalized();
    e2 = w.cross(e1);
}

// Fixed-size density evaluator so the inner loops stay allocation-free.
struct SmoothDensity3 {
    bool is_ball = true;
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    double radius = 1.0;
    double r_pow = 1.0;        // r^{n-1}
    Eigen::Matrix3d A;         // ellipsoid: rotation diag(a) rotation^T
    Eigen::Matrix3d QaT;       // diag(a) rotation^T (for the support value)
    double det2 = 1.0;

    explicit SmoothDensity3(const Body& K) {
        if (auto* b = std::get_if<Ball>(&K.shape)) {
            center = Eigen::Vector3d(b->center[0], b->center[1], b->center[2]);
            radius = b->radius;
            r_pow = b->radius * b->radius;
        } else {
            const Ellipsoid& e = std::get<Ellipsoid>(K.shape);
            is_ball = false;
            Eigen::Matrix3d Q = e.rotation;
            Eigen::Vector3d a(e.semiaxes[0], e.semiaxes[1], e.semiaxes[2]);
            A = Q * a.asDiagonal() * Q.transpose();
            QaT = a.asDiagonal() * Q.transpose();
            det2 = a.prod() * a.prod();
        }
    }

    double operator()(const Eigen::Vector3d& nu, double p) const {
        if (is_ball) {
            double d = r_pow;
            if (p != 1.0) d *= std::pow(center.dot(nu) + radius, 1.0 - p);
            return d;
        }
        const double an = (A * nu).norm();
        double d = det2 / (an * an * an * an);
        if (p != 1.0) d *= std::pow((QaT * nu).norm(), 1.0 - p);
        return d;
    }

    // Origin-centered balls have a ring-constant density.
    bool ring_constant(double p) const {
        return is_ball && (p == 1.0 || center.norm() == 0.0);
    }
    double constant_value(double p) const {
        return r_pow * (p == 1.0 ? 1.0 : std::pow(radius, 1.0 - p));
    }
};

// int_{S^2} k(u . nu) dens(nu) dnu by the rotated product rule: Gauss panels
// in s = u . nu, split at the kernel breakpoints, times a trapezoid ring in
// the azimuth. Each panel is halved and mapped through s = edge -+ len
// sigma^2, which turns the algebraic behavior of the kernels at their
// breakpoints and at s = +-1 (|s|^p, (1-s^2)^{p/2}) into high-order zeros in
// sigma; the ring integrand (the smooth-body surface density) is analytic.
double adapted_smooth_integral(const SmoothDensity3& dens, const KernelSpec& spec, double p,
                               const Vector& u) {
    if (u.size() != 3)
        throw std::invalid_argument("smooth-body valuations: adapted rule requires n = 3");
    Eigen::Vector3d e1, e2;
    frame3(u, e1, e2);
    const Eigen::Vector3d w(u[0], u[1], u[2]);

    std::vector<double> cuts{-1.0, 1.0};
    for (double b : spec.breakpoints)
        if (b > -1.0 && b < 1.0) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    static thread_local GaussRule base = gauss_legendre(kPanelPoints, 0.0, 1.0);
    KahanSum total;
    const bool ring_const = dens.ring_constant(p);
    const double const_ring = ring_const ? 2.0 * kPi * dens.constant_value(p) : 0.0;
    auto ring_value = [&](double s) {
        if (ring_const) return const_ring;
        const double r = std::sqrt(std::max(0.0, 1.0 - s * s));
        KahanSum ring;
        for (int j = 0; j < kRingSamples; ++j) {
            const double phi = (2.0 * kPi * j) / kRingSamples;
            const Eigen::Vector3d v = s * w + r * (std::cos(phi) * e1 + std::sin(phi) * e2);
            ring.add(dens(v, p));
        }
        return ring.value() * (2.0 * kPi / kRingSamples);
    };
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
        const double len = mid - cuts[c];
        if (len <= 0.0) continue;
        for (int i = 0; i < kPanelPoints; ++i) {
            const double sg = base.nodes[i];
            const double jac = 2.0 * len * sg * base.weights[i];
            const double lo = cuts[c] + len * sg * sg;
            const double hi = cuts[c + 1] - len * sg * sg;
            total.add(spec.k(lo) * ring_value(lo) * jac);
            total.add(spec.k(hi) * ring_value(hi) * jac);
        }
    }
    return total.value();
}

double adapted_smooth_integral(const Body& K, const KernelSpec& spec, double p, const Vector& u) {
    return adapted_smooth_integral(SmoothDensity3(K), spec, p, u);
}

// h^p at every grid node for the given kernel.
Vector valuation_raw(const Body& K, const KernelSpec& spec, double p, const SphericalGrid& grid) {
    if (p > 1.0 && !origin_interior(K))
        throw std::invalid_argument("L_p valuation: origin must be interior to the body");
    Vector out;
    if (K.is_polytope()) {
        const SurfaceMeasure S = lp_surface_measure(K, p, grid);
        kernels::support_sum(grid.nodes, S.normals, S.weights, spec.k, out,
                             kernels::default_exec());
    } else if (grid.dim == 3) {
        const SmoothDensity3 dens(K);
        kernels::map_indices(
            grid.size(),
            [&](Eigen::Index i) { return adapted_smooth_integral(dens, spec, p, grid.node(i)); },
            out, kernels::default_exec());
    } else {
        const SurfaceMeasure S = lp_surface_measure(K, p, grid);
        kernels::support_sum(grid.nodes, S.normals, S.weights, spec.k, out,
                             kernels::default_exec());
    }
    return out;
}

SupportField finish_field(const SphericalGrid& grid, Vector raw, double p, std::string label) {
    if (p != 1.0)
        for (Eigen::Index i = 0; i < raw.size(); ++i) raw[i] = std::pow(raw[i], 1.0 / p);
    return make_support_field(grid, std::move(raw), std::move(label));
}

}  // namespace

SupportField projection_body(const Body& K, const SphericalGrid& grid) {
    KernelSpec spec;
    spec.k = [](double s) { return 0.5 * std::abs(s); };
    spec.breakpoints = {0.0};
    return finish_field(grid, valuation_raw(K, spec, 1.0, grid), 1.0, "Pi[" + K.label + "]");
}

SupportField lp_projection_body(const Body& K, double p, const SphericalGrid& grid) {
    if (p < 1.0) throw std::invalid_argument("lp_projection_body: p must be >= 1");
    KernelSpec spec = projection_kernel(grid.dim, p);
    return finish_field(grid, valuation_raw(K, spec, p, grid), p, "Pi_p[" + K.label + "]");
}

SupportField zonal_valuation(const Body& K, const ZonalMeasure& mu, const SphericalGrid& grid) {
    KernelSpec spec = measure_kernel(mu, 1.0);
    return finish_field(grid, valuation_raw(K, spec, 1.0, grid),
                        1.0, "Phi[" + mu.describe() + "][" + K.label + "]");
}

SupportField lp_zonal_valuation(const Body& K, const ZonalMeasure& mu, double p,
                                const SphericalGrid& grid) {
    if (p < 1.0) throw std::invalid_argument("lp_zonal_valuation: p must be >= 1");
    KernelSpec spec = measure_kernel(mu, p);
    return finish_field(grid, valuation_raw(K, spec, p, grid), p,
                        "Phi_p[" + mu.describe() + "][" + K.label + "]");
}

double zonal_valuation_at(const Body& K, const ZonalMeasure& mu, double p, const Vector& u,
                          const SphericalGrid& grid) {
    KernelSpec spec = measure_kernel(mu, p);
    if (K.is_polytope()) {
        const SurfaceMeasure S = lp_surface_measure(K, p, grid);
        KahanSum acc;
        for (Eigen::Index j = 0; j < S.weights.size(); ++j)
            acc.add(spec.k(S.normals.row(j).dot(u)) * S.weights[j]);
        return acc.value();
    }
    return adapted_smooth_integral(K, spec, p, u);
}

double lp_projection_body_at(const Body& K, double p, const Vector& u,
                             const SphericalGrid& grid) {
    KernelSpec spec = projection_kernel(static_cast<int>(u.size()), p);
    if (K.is_polytope()) {
        const SurfaceMeasure S = lp_surface_measure(K, p, grid);
        KahanSum acc;
        for (Eigen::Index j = 0; j < S.weights.size(); ++j)
            acc.add(spec.k(S.normals.row(j).dot(u)) * S.weights[j]);
        return acc.value();
    }
    return adapted_smooth_integral(K, spec, p, u);
}

RotationAverageCheck rotation_average_check(const Body& K, const ZonalMeasure& mu, double p,
                                            const Vector& u, const SphericalGrid& grid) {
    if (u.size() != 3 || mu.dim() != 3)
        throw std::invalid_argument("rotation_average_check: requires n = 3");
    RotationAverageCheck out;
    out.lhs = zonal_valuation_at(K, mu, p, u, grid);

    // h(Pi_p K, v)^p evaluated off-grid. Constant for origin-centered balls.
    std::function<double(const Vector&)> pip;
    if (auto* b = std::get_if<Ball>(&K.shape); b && b->center.norm() == 0.0) {
        const double c = lp_projection_body_at(K, p, pole(3), grid);
        pip = [c](const Vector&) { return c; };
    } else {
        pip = [&](const Vector& v) { return lp_projection_body_at(K, p, v, grid); };
    }

    Eigen::Vector3d e1, e2;
    frame3(u, e1, e2);
    const Eigen::Vector3d w(u[0], u[1], u[2]);
    Vector nu(3);
    // Mean of h(Pi_p K, .)^p over the latitude circle at height t about u.
    auto circle_mean = [&](double t) {
        const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
        KahanSum acc;
        for (int j = 0; j < kCircleSamples; ++j) {
            const double phi = (2.0 * kPi * (j + 0.5)) / kCircleSamples;
            const Eigen::Vector3d v = t * w + r * (std::cos(phi) * e1 + std::sin(phi) * e2);
            nu[0] = v[0];
            nu[1] = v[1];
            nu[2] = v[2];
            acc.add(pip(nu));
        }
        return acc.value() / kCircleSamples;
    };

    KahanSum rhs;
    if (mu.pole_mass() > 0.0) rhs.add(mu.pole_mass() * pip(u));
    if (mu.equator_mass() > 0.0) rhs.add(mu.equator_mass() * circle_mean(0.0));
    if (mu.lebesgue_mass() > 0.0) {
        // n = 3: the Lebesgue profile is uniform in t on [0, 1].
        GaussRule rule = gauss_legendre(128, 0.0, 1.0);
        KahanSum leb;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            leb.add(rule.weights[k] * circle_mean(rule.nodes[k]));
        rhs.add(mu.lebesgue_mass() * leb.value());
    }
    for (auto& [t, m] : mu.interior_atoms()) rhs.add(m * circle_mean(t));
    for (const auto& d : mu.densities()) {
        GaussRule rule = gauss_legendre(128, 0.0, 1.0);
        KahanSum dens;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double t = rule.nodes[k];
            dens.add(rule.weights[k] * 4.0 * kPi * d.scale * d.g(t) * circle_mean(t));
        }
        rhs.add(dens.value());
    }
    out.rhs = rhs.value() / a_np(3, p);
    return out;
}

}  // namespace isoval
