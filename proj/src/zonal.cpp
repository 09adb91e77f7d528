#include "isoval/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "isoval/constants.hpp"
#include "isoval/quadrature.hpp"

namespace isoval {

namespace {

bool is_even_integer(double p) {
    double r = std::round(p);
    return std::abs(p - r) < 1e-12 && static_cast<long long>(r) % 2 == 0;
}

/// Mean of |w . e|^p over w in S^{m-1}.
double sphere_mean_abs_pow(int m, double p) {
    return std::exp(std::lgamma(0.5 * (p + 1.0)) + std::lgamma(0.5 * m) -
                    std::lgamma(0.5 * (m + p))) /
           std::sqrt(kPi);
}

/// Mean of |a + b w1|^p over the latitude sphere S^{n-2} (w1 a coordinate),
/// i.e. int_0^pi |a + b cos(phi)|^p sin^{n-3}(phi) dphi, normalized.
double circle_avg_pow(int n, double p, double a, double b) {
    a = std::abs(a);
    b = std::abs(b);
    if (b < 1e-15) return std::pow(a, p);
    if (p == 2.0) return a * a + b * b / (n - 1);
    if (p == 1.0 && n == 3) {
        if (a >= b) return a;
        const double phi0 = std::acos(-a / b);
        return (2.0 * a * phi0 - a * kPi + 2.0 * b * std::sin(phi0)) / kPi;
    }
    const double m = n - 3.0;  // sin exponent
    auto f = [&](double phi) {
        const double base = std::abs(a + b * std::cos(phi));
        const double s = std::sin(phi);
        return std::pow(base, p) * (m == 0.0 ? 1.0 : std::pow(s, m));
    };
    const double norm =
        std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (m + 1.0)) - std::lgamma(0.5 * m + 1.0));
    double total;
    if (a >= b) {
        total = tanh_sinh(f, 0.0, kPi);
    } else {
        const double phi0 = std::acos(-a / b);  // a + b cos(phi0) = 0
        total = tanh_sinh(f, 0.0, phi0) + tanh_sinh(f, phi0, kPi);
    }
    return total / norm;
}

double latitude_weight(int n, double t) {
    return n == 3 ? 1.0 : std::pow(std::max(0.0, 1.0 - t * t), 0.5 * (n - 3.0));
}

// Panel-split tanh-sinh over [0, 1]: the integrands below carry algebraic
// endpoint factors such as (1-t^2)^{p/2}, which Gauss panels resolve poorly.
double split_tanh_sinh(const std::function<double(double)>& f, std::vector<double> cuts) {
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    KahanSum acc;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (cuts[k + 1] - cuts[k] < 1e-14 || cuts[k] < 0.0 || cuts[k + 1] > 1.0) continue;
        acc.add(tanh_sinh(f, cuts[k], cuts[k + 1]));
    }
    return acc.value();
}

double full_sphere_density_mass(int n, const ZonalMeasure::Density& d) {
    const double circ = 2.0 * (n - 1) * unit_ball_volume(n - 1);
    auto f = [&](double t) { return d.scale * d.g(t) * latitude_weight(n, t); };
    return circ * split_tanh_sinh(f, d.knots);
}

// Integral of the circle average against a density component, split at the
// grazing height |s| t = b(t) and at the density's own knots.
double density_kernel(int n, double p, double s, const ZonalMeasure::Density& d) {
    const double circ = 2.0 * (n - 1) * unit_ball_volume(n - 1);
    const double one_m_s2 = std::max(0.0, 1.0 - s * s);
    std::vector<double> cuts = d.knots;
    cuts.push_back(std::sqrt(one_m_s2));
    auto f = [&](double t) {
        return d.scale * d.g(t) * latitude_weight(n, t) *
               circle_avg_pow(n, p, s * t, std::sqrt(one_m_s2 * (1.0 - t * t)));
    };
    return circ * split_tanh_sinh(f, std::move(cuts));
}

}  // namespace

std::string to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::discrete_poles: return "discrete";
        case MeasureKind::equatorial: return "equatorial";
        case MeasureKind::lebesgue: return "lebesgue";
        default: return "custom";
    }
}

void ZonalMeasure::finalize() {
    KahanSum acc;
    acc.add(pole_mass_);
    acc.add(equator_mass_);
    acc.add(lebesgue_mass_);
    for (auto& [t, m] : mid_atoms_) acc.add(m);
    for (auto& d : densities_) acc.add(full_sphere_density_mass(dim_, d));
    total_mass_ = acc.value();
    if (!(total_mass_ > 0.0))
        throw std::invalid_argument("zonal measure: total mass must be positive");
    const bool pure_pole = pole_mass_ > 0.0 && equator_mass_ == 0.0 && lebesgue_mass_ == 0.0 &&
                           mid_atoms_.empty() && densities_.empty();
    const bool pure_eq = equator_mass_ > 0.0 && pole_mass_ == 0.0 && lebesgue_mass_ == 0.0 &&
                         mid_atoms_.empty() && densities_.empty();
    const bool pure_leb = lebesgue_mass_ > 0.0 && pole_mass_ == 0.0 && equator_mass_ == 0.0 &&
                          mid_atoms_.empty() && densities_.empty();
    kind_ = pure_pole  ? MeasureKind::discrete_poles
            : pure_eq  ? MeasureKind::equatorial
            : pure_leb ? MeasureKind::lebesgue
                       : MeasureKind::custom;
}

ZonalMeasure ZonalMeasure::discrete_poles(double mass, int n) {
    if (!(mass > 0.0)) throw std::invalid_argument("discrete_poles: mass must be positive");
    ZonalMeasure mu;
    mu.dim_ = n;
    mu.pole_mass_ = mass;
    mu.finalize();
    return mu;
}

ZonalMeasure ZonalMeasure::equatorial(double mass, int n) {
    if (!(mass > 0.0)) throw std::invalid_argument("equatorial: mass must be positive");
    ZonalMeasure mu;
    mu.dim_ = n;
    mu.equator_mass_ = mass;
    mu.finalize();
    return mu;
}

ZonalMeasure ZonalMeasure::lebesgue(double mass, int n) {
    if (!(mass > 0.0)) throw std::invalid_argument("lebesgue: mass must be positive");
    ZonalMeasure mu;
    mu.dim_ = n;
    mu.lebesgue_mass_ = mass;
    mu.finalize();
    return mu;
}

ZonalMeasure ZonalMeasure::from_density(const std::function<double(double)>& g, int n,
                                        const std::vector<double>& knots) {
    Density d;
    d.g = g;
    d.knots = knots;
    std::sort(d.knots.begin(), d.knots.end());
    // probe non-negativity at a few heights
    for (int k = 0; k <= 32; ++k) {
        if (g(k / 32.0) < 0.0)
            throw std::invalid_argument("from_density: density must be non-negative");
    }
    ZonalMeasure mu;
    mu.dim_ = n;
    mu.densities_.push_back(std::move(d));
    mu.finalize();
    return mu;
}

ZonalMeasure ZonalMeasure::from_atoms(const std::vector<std::pair<double, double>>& atoms,
                                      int n) {
    ZonalMeasure mu;
    mu.dim_ = n;
    for (auto& [t, m] : atoms) {
        if (t < 0.0 || t > 1.0) throw std::invalid_argument("from_atoms: t outside [0, 1]");
        if (!(m > 0.0)) throw std::invalid_argument("from_atoms: masses must be positive");
        if (t >= 1.0 - 1e-14)
            mu.pole_mass_ += m;
        else if (t <= 1e-14)
            mu.equator_mass_ += m;
        else
            mu.mid_atoms_.emplace_back(t, m);
    }
    mu.finalize();
    return mu;
}

ZonalMeasure ZonalMeasure::mix(const std::vector<std::pair<double, ZonalMeasure>>& parts) {
    if (parts.empty()) throw std::invalid_argument("mix: no components");
    ZonalMeasure mu;
    mu.dim_ = parts.front().second.dim_;
    for (auto& [w, nu] : parts) {
        if (nu.dim_ != mu.dim_) throw std::invalid_argument("mix: dimension mismatch");
        if (!(w > 0.0)) throw std::invalid_argument("mix: weights must be positive");
        mu.pole_mass_ += w * nu.pole_mass_;
        mu.equator_mass_ += w * nu.equator_mass_;
        mu.lebesgue_mass_ += w * nu.lebesgue_mass_;
        for (auto& [t, m] : nu.mid_atoms_) mu.mid_atoms_.emplace_back(t, w * m);
        for (const Density& d : nu.densities_) {
            Density scaled = d;
            scaled.scale *= w;
            mu.densities_.push_back(std::move(scaled));
        }
    }
    mu.finalize();
    return mu;
}

ZonalMeasure ZonalMeasure::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
    ZonalMeasure mu = *this;
    mu.pole_mass_ *= factor;
    mu.equator_mass_ *= factor;
    mu.lebesgue_mass_ *= factor;
    for (auto& [t, m] : mu.mid_atoms_) m *= factor;
    for (auto& d : mu.densities_) d.scale *= factor;
    mu.finalize();
    return mu;
}

ZonalMeasure ZonalMeasure::normalized(double target_mass) const {
    if (!(target_mass > 0.0)) throw std::invalid_argument("normalized: target must be positive");
    return scaled(target_mass / total_mass_);
}

std::string ZonalMeasure::describe() const {
    std::ostringstream out;
    out << to_string(kind_) << ":" << total_mass_;
    return out.str();
}

double kernel(const ZonalMeasure& mu, double p, double s) {
    if (p < 1.0) throw std::invalid_argument("kernel: p must be >= 1");
    s = std::clamp(s, -1.0, 1.0);
    const double as = std::abs(s);
    const double one_m_s2 = std::max(0.0, 1.0 - s * s);
    const int n = mu.dim();
    KahanSum acc;
    if (mu.pole_mass() > 0.0) acc.add(mu.pole_mass() * std::pow(as, p));
    if (mu.equator_mass() > 0.0)
        acc.add(mu.equator_mass() * sphere_mean_abs_pow(n - 1, p) * std::pow(one_m_s2, 0.5 * p));
    if (mu.lebesgue_mass() > 0.0) acc.add(mu.lebesgue_mass() * sphere_mean_abs_pow(n, p));
    for (auto& [t, m] : mu.interior_atoms())
        acc.add(m * circle_avg_pow(n, p, s * t, std::sqrt(one_m_s2 * (1.0 - t * t))));
    for (auto& d : mu.densities()) acc.add(density_kernel(n, p, s, d));
    return acc.value();
}

double kernel_by_quadrature(const ZonalMeasure& mu, double p, double s) {
    if (p < 1.0) throw std::invalid_argument("kernel: p must be >= 1");
    s = std::clamp(s, -1.0, 1.0);
    const int n = mu.dim();
    const double one_m_s2 = std::max(0.0, 1.0 - s * s);

    auto circle_quad = [&](double t) {
        const double a = std::abs(s * t);  // the average is even in a
        const double b = std::sqrt(std::max(0.0, one_m_s2 * (1.0 - t * t)));
        const double m = n - 3.0;
        auto f = [&](double phi) {
            const double base = std::abs(a + b * std::cos(phi));
            const double sn = std::sin(phi);
            return std::pow(base, p) * (m == 0.0 ? 1.0 : std::pow(sn, m));
        };
        const double norm = std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (m + 1.0)) -
                                                      std::lgamma(0.5 * m + 1.0));
        double total;
        const double aa = std::abs(a), bb = std::abs(b);
        if (bb < 1e-15 || aa >= bb) {
            total = tanh_sinh(f, 0.0, kPi);
        } else {
            const double phi0 = std::acos(-aa / bb);
            total = tanh_sinh(f, 0.0, phi0) + tanh_sinh(f, phi0, kPi);
        }
        return total / norm;
    };

    const double circ = 2.0 * (n - 1) * unit_ball_volume(n - 1);
    const double tstar = std::sqrt(one_m_s2);  // grazing height of the circle average

    KahanSum acc;
    if (mu.pole_mass() > 0.0) acc.add(mu.pole_mass() * circle_quad(1.0));
    if (mu.equator_mass() > 0.0) acc.add(mu.equator_mass() * circle_quad(0.0));
    if (mu.lebesgue_mass() > 0.0) {
        auto f = [&](double t) { return latitude_weight(n, t) * circle_quad(t); };
        const double mass_norm =
            circ * split_tanh_sinh([&](double t) { return latitude_weight(n, t); }, {});
        acc.add(mu.lebesgue_mass() / mass_norm * circ * split_tanh_sinh(f, {tstar}));
    }
    for (auto& [t, m] : mu.interior_atoms()) acc.add(m * circle_quad(t));
    for (auto& d : mu.densities()) {
        std::vector<double> cuts = d.knots;
        cuts.push_back(tstar);
        auto f = [&](double t) {
            return d.scale * d.g(t) * latitude_weight(n, t) * circle_quad(t);
        };
        acc.add(circ * split_tanh_sinh(f, std::move(cuts)));
    }
    return acc.value();
}

std::vector<double> kernel_breakpoints(const ZonalMeasure& mu, double p) {
    std::vector<double> breaks;
    if (mu.pole_mass() > 0.0 && !is_even_integer(p)) breaks.push_back(0.0);
    for (auto& [t, m] : mu.interior_atoms()) {
        const double s0 = std::sqrt(std::max(0.0, 1.0 - t * t));
        breaks.push_back(s0);
        breaks.push_back(-s0);
    }
    std::sort(breaks.begin(), breaks.end());
    return breaks;
}

double zonoid_mean_width(const ZonalMeasure& mu) {
    const int n = mu.dim();
    return 4.0 * unit_ball_volume(n - 1) * mu.total_mass() / (n * unit_ball_volume(n));
}

double zonoid_volume_estimate(const ZonalMeasure& mu, const SphericalGrid& grid) {
    if (mu.dim() != 3 || grid.dim != 3)
        throw std::invalid_argument("zonoid_volume_estimate: requires n = 3");
    const double scale = mu.total_mass();
    // Flat zonoids are Lebesgue null: segments (kernel vanishes at the
    // equator of directions) and discs (kernel vanishes at the poles).
    if (kernel(mu, 1.0, 0.0) < 1e-12 * scale || kernel(mu, 1.0, 1.0) < 1e-12 * scale)
        return 0.0;
    NodeMatrix dual(grid.size(), 3);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double h = kernel(mu, 1.0, grid.nodes(i, 2));
        dual.row(i) = grid.nodes.row(i) / h;
    }
    Vector m;
    kernels::max_dot(grid.nodes, dual, m, kernels::default_exec());
    KahanSum acc;
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        acc.add(std::pow(m[i], -3.0) * grid.weights[i]);
    return acc.value() / 3.0;
}

}  // namespace isoval
