#include "isoval/sobolev.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "isoval/constants.hpp"
#include "isoval/quadrature.hpp"

namespace isoval {

double c_np(int n, double p) {
    if (!(p > 1.0 && p < n)) throw std::invalid_argument("c_np: requires 1 < p < n");
    const double f1 = std::pow((n - p) / (p - 1.0), 1.0 - 1.0 / p);
    const double f2 = std::exp((std::lgamma(n / p) + std::lgamma(n + 1.0 - n / p) -
                                std::lgamma(n + 1.0)) / n);
    const double f3 = std::exp((std::log(static_cast<double>(n)) + std::lgamma(0.5 * n) +
                                std::lgamma(0.5 * (p + 1.0)) - 0.5 * std::log(kPi) -
                                std::lgamma(0.5 * (n + p))) / p);
    return f1 * f2 * f3;
}

double tilde_c_np(int n, double p) {
    if (!(p > 1.0 && p < n)) throw std::invalid_argument("tilde_c_np: requires 1 < p < n");
    const double f1 = std::pow((n - p) / (p - 1.0), 1.0 - 1.0 / p);
    const double f2 = std::exp((std::lgamma(n / p) + std::lgamma(n + 1.0 - n / p) -
                                std::lgamma(static_cast<double>(n))) / n);
    return f1 * f2;
}

GridFunction::GridFunction(Eigen::Vector3i dims, Eigen::Vector3d box_min, double spacing,
                           std::vector<double> values)
    : dims_(dims), box_min_(box_min), spacing_(spacing), values_(std::move(values)) {
    if ((dims_.array() < 2).any()) throw std::invalid_argument("GridFunction: dims too small");
    if (!(spacing_ > 0.0)) throw std::invalid_argument("GridFunction: spacing must be positive");
    if (values_.size() != static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2])
        throw std::invalid_argument("GridFunction: value count does not match dims");
    if (max_boundary_value() > 1e-12)
        throw std::domain_error("GridFunction: support touches the box boundary");
}

double GridFunction::max_boundary_value() const {
    const int nx = dims_[0], ny = dims_[1], nz = dims_[2];
    auto at = [&](int i, int j, int k) { return values_[i + static_cast<std::size_t>(nx) * (j + static_cast<std::size_t>(ny) * k)]; };
    double m = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int k = 0; k < nz; ++k)
            m = std::max({m, std::abs(at(0, j, k)), std::abs(at(nx - 1, j, k))});
    for (int i = 0; i < nx; ++i)
        for (int k = 0; k < nz; ++k)
            m = std::max({m, std::abs(at(i, 0, k)), std::abs(at(i, ny - 1, k))});
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            m = std::max({m, std::abs(at(i, j, 0)), std::abs(at(i, j, nz - 1))});
    return m;
}

const std::vector<double>& GridFunction::gradient() const {
    if (!gradient_.empty()) return gradient_;
    const int nx = dims_[0], ny = dims_[1], nz = dims_[2];
    auto at = [&](int i, int j, int k) { return values_[i + static_cast<std::size_t>(nx) * (j + static_cast<std::size_t>(ny) * k)]; };
    gradient_.assign(values_.size() * 3, 0.0);
    const double inv2h = 1.0 / (2.0 * spacing_), invh = 1.0 / spacing_;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const std::size_t idx =
                    i + static_cast<std::size_t>(nx) * (j + static_cast<std::size_t>(ny) * k);
                double gx = (i == 0)        ? (at(1, j, k) - at(0, j, k)) * invh
                            : (i == nx - 1) ? (at(nx - 1, j, k) - at(nx - 2, j, k)) * invh
                                            : (at(i + 1, j, k) - at(i - 1, j, k)) * inv2h;
                double gy = (j == 0)        ? (at(i, 1, k) - at(i, 0, k)) * invh
                            : (j == ny - 1) ? (at(i, ny - 1, k) - at(i, ny - 2, k)) * invh
                                            : (at(i, j + 1, k) - at(i, j - 1, k)) * inv2h;
                double gz = (k == 0)        ? (at(i, j, 1) - at(i, j, 0)) * invh
                            : (k == nz - 1) ? (at(i, j, nz - 1) - at(i, j, nz - 2)) * invh
                                            : (at(i, j, k + 1) - at(i, j, k - 1)) * inv2h;
                gradient_[3 * idx] = gx;
                gradient_[3 * idx + 1] = gy;
                gradient_[3 * idx + 2] = gz;
            }
        }
    }
    return gradient_;
}

double GridFunction::lp_norm(double q) const {
    KahanSum acc;
    for (double v : values_) acc.add(std::pow(std::abs(v), q));
    return std::pow(acc.value() * cell_volume(), 1.0 / q);
}

GridFunction make_profile(const std::string& name, int samples_per_axis, double half_width) {
    const int n = samples_per_axis;
    const double h = 2.0 * half_width / n;
    std::vector<double> values(static_cast<std::size_t>(n) * n * n);
    auto coord = [&](int i) { return -half_width + (i + 0.5) * h; };

    std::function<double(double)> radial;
    if (name == "aubin-talenti") {
        // (1 + (lam r)^2)^{-1/2} clamped to zero at r0: the near-extremal
        // profile of the p = 2 inequality, made compactly supported.
        const double lam = 1.5, r0 = 0.9375 * half_width;
        const double clamp = 1.0 / std::sqrt(1.0 + lam * lam * r0 * r0);
        radial = [lam, clamp](double r) {
            return std::max(0.0, 1.0 / std::sqrt(1.0 + lam * lam * r * r) - clamp);
        };
    } else if (name == "gaussian") {
        radial = [](double r) { return std::exp(-r * r); };
    } else if (name == "bump") {
        const double r0 = 0.75 * half_width;
        radial = [r0](double r) {
            const double q = (r / r0) * (r / r0);
            return q < 1.0 ? std::exp(-1.0 / (1.0 - q)) : 0.0;
        };
    } else {
        throw std::invalid_argument("make_profile: unknown profile " + name);
    }

    std::size_t idx = 0;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i, ++idx) {
                const double r = std::sqrt(coord(i) * coord(i) + coord(j) * coord(j) +
                                           coord(k) * coord(k));
                values[idx] = radial(r);
            }
    return GridFunction(Eigen::Vector3i(n, n, n),
                        Eigen::Vector3d(-half_width, -half_width, -half_width), h,
                        std::move(values));
}

void write_grid_function(const GridFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + path);
    nlohmann::ordered_json j;
    j["schema"] = "isoval/1";
    j["dims"] = {f.dims()[0], f.dims()[1], f.dims()[2]};
    j["box_min"] = {f.box_min()[0], f.box_min()[1], f.box_min()[2]};
    j["spacing"] = f.spacing();
    out << j.dump() << '\n';
    out.write(reinterpret_cast<const char*>(f.values().data()),
              static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

GridFunction read_grid_function(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::string header;
    std::getline(in, header);
    nlohmann::json j = nlohmann::json::parse(header);
    Eigen::Vector3i dims(j.at("dims")[0], j.at("dims")[1], j.at("dims")[2]);
    Eigen::Vector3d box_min(j.at("box_min")[0], j.at("box_min")[1], j.at("box_min")[2]);
    const double spacing = j.at("spacing");
    std::vector<double> values(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2]);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!in) throw std::invalid_argument(path + ": truncated raster");
    return GridFunction(dims, box_min, spacing, std::move(values));
}

BvCharLhs bv_char_lhs(const Body& K, const ZonalMeasure& mu, const SphericalGrid& grid) {
    const SupportField F = zonal_valuation(K, mu, grid);
    const int n = grid.dim;
    KahanSum acc;
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        acc.add(std::pow(F.values[i], -n) * grid.weights[i]);
    BvCharLhs out;
    out.direct = std::pow(acc.value(), -1.0 / n);
    out.via_polar = std::pow(static_cast<double>(n), -1.0 / n) *
                    std::pow(polar_volume(F), -1.0 / n);
    return out;
}

double theorem3_rhs(double mass, int n, double f_norm) {
    return 2.0 * unit_ball_volume(n - 1) * mass /
           (std::pow(static_cast<double>(n), 1.0 / n) * unit_ball_volume(n)) * f_norm;
}

SobolevCheck lp_sobolev_check(const GridFunction& f, const ZonalMeasure& mu, double p,
                              const SphericalGrid& grid) {
    const int n = grid.dim;
    if (n != 3 || mu.dim() != 3) throw std::invalid_argument("lp_sobolev_check: requires n = 3");
    if (!(p > 1.0 && p < n)) throw std::invalid_argument("lp_sobolev_check: requires 1 < p < n");
    const std::vector<double>& g = f.gradient();
    const std::size_t cells = f.size();
    const double vol = f.cell_volume();

    double grad_norm_p = 0.0;  // sum |grad f|^p vol
    {
        KahanSum acc;
        for (std::size_t x = 0; x < cells; ++x) {
            const double gx = g[3 * x], gy = g[3 * x + 1], gz = g[3 * x + 2];
            acc.add(std::pow(gx * gx + gy * gy + gz * gz, 0.5 * p));
        }
        grad_norm_p = acc.value() * vol;
    }
    if (!(grad_norm_p > 0.0)) throw std::invalid_argument("lp_sobolev_check: zero function");

    Vector inner(grid.size());
    if (mu.kind() == MeasureKind::lebesgue) {
        // h(Z_p(u), y)^p = |y|^p * const: the inner integral is direction free.
        inner.setConstant(kernel(mu, p, 0.0) * grad_norm_p);
    } else if (p == 2.0) {
        // kernel(mu, 2, s) = alpha + beta s^2 exactly, so the inner integral
        // is a quadratic form in u built from the gradient moment matrix.
        const double alpha = kernel(mu, 2.0, 0.0);
        const double beta = kernel(mu, 2.0, 1.0) - alpha;
        Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
        for (std::size_t x = 0; x < cells; ++x) {
            Eigen::Vector3d gv(g[3 * x], g[3 * x + 1], g[3 * x + 2]);
            M += gv * gv.transpose();
        }
        M *= vol;
        const double trace_term = alpha * M.trace();
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            Eigen::Vector3d u(grid.nodes(i, 0), grid.nodes(i, 1), grid.nodes(i, 2));
            inner[i] = trace_term + beta * u.dot(M * u);
        }
    } else {
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const double ux = grid.nodes(i, 0), uy = grid.nodes(i, 1), uz = grid.nodes(i, 2);
            KahanSum acc;
            for (std::size_t x = 0; x < cells; ++x) {
                const double gx = g[3 * x], gy = g[3 * x + 1], gz = g[3 * x + 2];
                const double norm2 = gx * gx + gy * gy + gz * gz;
                if (norm2 == 0.0) continue;
                const double norm = std::sqrt(norm2);
                const double s = (ux * gx + uy * gy + uz * gz) / norm;
                acc.add(kernel(mu, p, s) * std::pow(norm, p));
            }
            inner[i] = acc.value() * vol;
        }
    }

    KahanSum acc;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (!(inner[i] > 0.0)) throw std::domain_error("lp_sobolev_check: degenerate gradient");
        acc.add(std::pow(inner[i], -static_cast<double>(n) / p) * grid.weights[i]);
    }
    SobolevCheck out;
    out.lhs = std::pow(acc.value(), -1.0 / n);
    const double pstar = n * p / (n - p);
    out.rhs = c_np(n, p) * std::pow(mu.total_mass(), 1.0 / p) * f.lp_norm(pstar);
    return out;
}

GromovCompare gromov_compare(const ZonalMeasure& mu, const SphericalGrid& grid) {
    const int n = grid.dim;
    GromovCompare out;
    const double zvol = zonoid_volume_estimate(mu, grid);
    const double npow = std::pow(static_cast<double>(n), (n - 1.0) / n);
    out.avg_gromov_rhs = npow * std::pow(zvol, 1.0 / n) / std::pow(unit_ball_volume(n), 1.0 / n);
    out.thm3_rhs = npow * zonoid_mean_width(mu) / 2.0;
    return out;
}

}  // namespace isoval
