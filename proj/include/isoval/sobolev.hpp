#ifndef ISOVAL_SOBOLEV_HPP
#define ISOVAL_SOBOLEV_HPP

#include <string>
#include <vector>

#include "isoval/valuations.hpp"

namespace isoval {

/// Sharp constant of the affine L_p Sobolev inequality, 1 < p < n.
double c_np(int n, double p);
/// Sharp constant of the volume bound for the convexification operator.
double tilde_c_np(int n, double p);

/// Scalar samples on a cubic box with compact support inside it; gradients
/// by central differences (one-sided at the boundary, where values vanish
/// anyway).
class GridFunction {
public:
    GridFunction(Eigen::Vector3i dims, Eigen::Vector3d box_min, double spacing,
                 std::vector<double> values);

    const Eigen::Vector3i& dims() const { return dims_; }
    const Eigen::Vector3d& box_min() const { return box_min_; }
    double spacing() const { return spacing_; }
    const std::vector<double>& values() const { return values_; }
    double cell_volume() const { return spacing_ * spacing_ * spacing_; }
    std::size_t size() const { return values_.size(); }

    /// Gradient samples, 3 per cell, computed once on first use.
    const std::vector<double>& gradient() const;

    double lp_norm(double q) const;
    double max_boundary_value() const;

private:
    Eigen::Vector3i dims_;
    Eigen::Vector3d box_min_;
    double spacing_;
    std::vector<double> values_;
    mutable std::vector<double> gradient_;
};

/// Named radial profiles on a centered cubic box.
///  - "aubin-talenti": ((1 + (lam r)^2)^{-1/2} - c)_+ clamped at r0, the
///    near-extremal profile of the p = 2 inequality,
///  - "gaussian": exp(-r^2),
///  - "bump": exp(-1/(1 - (r/r0)^2)) inside r0.
GridFunction make_profile(const std::string& name, int samples_per_axis, double half_width);

GridFunction read_grid_function(const std::string& path);
void write_grid_function(const GridFunction& f, const std::string& path);

/// Characteristic-function LHS of the BV Sobolev inequality for f = 1_K:
/// (int_{S^{n-1}} (int h(Z^mu(u), nu) dS(K, nu))^{-n} du)^{-1/n},
/// computed both directly and as n^{-1/n} |Phi^{mu,o} K|^{-1/n}. The two
/// routes share the quadrature and must agree to ~1e-10.
struct BvCharLhs {
    double direct = 0.0;
    double via_polar = 0.0;
};
BvCharLhs bv_char_lhs(const Body& K, const ZonalMeasure& mu, const SphericalGrid& grid);

/// RHS constant of the BV Sobolev inequality times the norm:
/// 2 omega_{n-1} mass / (n^{1/n} omega_n) * f_norm.
double theorem3_rhs(double mass, int n, double f_norm);

struct SobolevCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// W^{1,p} inequality check for a sampled function, 1 < p < n = 3:
/// lhs = (int (int h(Z_p^mu(u), grad f(x))^p dx)^{-n/p} du)^{-1/n},
/// rhs = c_{n,p} mass^{1/p} ||f||_{p*}.
/// Closed-form inner integrals are used when the kernel allows (constant for
/// Lebesgue measures, a moment matrix for p = 2); otherwise the inner
/// integral is accumulated per direction.
SobolevCheck lp_sobolev_check(const GridFunction& f, const ZonalMeasure& mu, double p,
                              const SphericalGrid& grid);

/// RHS constants of the sphere-averaged Gromov inequality vs the zonal one:
/// n^{(n-1)/n} |Z^mu|^{1/n} / omega_n^{1/n} vs n^{(n-1)/n} w(Z^mu) / 2.
/// The second dominates (Urysohn), with equality iff Z^mu is a ball.
struct GromovCompare {
    double avg_gromov_rhs = 0.0;
    double thm3_rhs = 0.0;
};
GromovCompare gromov_compare(const ZonalMeasure& mu, const SphericalGrid& grid);

}  // namespace isoval

#endif
