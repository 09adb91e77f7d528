#ifndef ISOVAL_ZONAL_HPP
#define ISOVAL_ZONAL_HPP

#include <functional>
#include <string>
#include <vector>

#include "isoval/sphere_quad.hpp"

namespace isoval {

enum class MeasureKind { discrete_poles, equatorial, lebesgue, custom };

std::string to_string(MeasureKind k);

/// Even zonal measure on S^{n-1}, reduced to its profile on t = u.pole in
/// [0, 1]. An atom (t, m) carries total mass m spread uniformly over the
/// latitude pair at heights +-t; t = 1 is the pole pair, t = 0 the equator.
/// A Lebesgue component is kept symbolic (its kernels have closed forms);
/// general densities are stored as functions of t and integrated against
/// the latitude weight (1-t^2)^{(n-3)/2} on demand.
class ZonalMeasure {
public:
    struct Density {
        std::function<double(double)> g;   // shape on [0, 1]
        double scale = 1.0;                // multiplies g
        std::vector<double> knots;         // heights where g is not smooth
    };

    static ZonalMeasure discrete_poles(double mass, int n = 3);
    static ZonalMeasure equatorial(double mass, int n = 3);
    static ZonalMeasure lebesgue(double mass, int n = 3);
    /// g >= 0 on [0, 1], not identically zero. Total mass is the full-sphere
    /// integral of g(|v . pole|). Knots mark heights where g is not smooth
    /// (sample points of piecewise-linear densities, say).
    static ZonalMeasure from_density(const std::function<double(double)>& g, int n,
                                     const std::vector<double>& knots = {});
    /// Atoms at explicit heights t in [0, 1].
    static ZonalMeasure from_atoms(const std::vector<std::pair<double, double>>& atoms, int n = 3);
    /// Weighted sum of measures (weights scale each component's mass).
    static ZonalMeasure mix(const std::vector<std::pair<double, ZonalMeasure>>& parts);

    int dim() const { return dim_; }
    double total_mass() const { return total_mass_; }
    MeasureKind kind() const { return kind_; }
    double pole_mass() const { return pole_mass_; }
    double equator_mass() const { return equator_mass_; }
    double lebesgue_mass() const { return lebesgue_mass_; }
    const std::vector<std::pair<double, double>>& interior_atoms() const { return mid_atoms_; }
    const std::vector<Density>& densities() const { return densities_; }

    ZonalMeasure normalized(double target_mass) const;
    ZonalMeasure scaled(double factor) const;

    std::string describe() const;

private:
    ZonalMeasure() = default;
    void finalize();

    int dim_ = 3;
    double total_mass_ = 0.0;
    MeasureKind kind_ = MeasureKind::custom;
    double pole_mass_ = 0.0;
    double equator_mass_ = 0.0;
    double lebesgue_mass_ = 0.0;
    std::vector<std::pair<double, double>> mid_atoms_;  // (t, mass), 0 < t < 1
    std::vector<Density> densities_;
};

/// h(Z_p^mu(u), v)^p as a function of s = u.v. Even in s; exactly linear in
/// the mass of mu. Closed forms for pole/equator/Lebesgue components at any
/// p and for interior atoms at p = 1, 2; other cases integrate the latitude
/// circle by tanh-sinh split at the sign change.
double kernel(const ZonalMeasure& mu, double p, double s);

/// Fully numeric evaluation path (every component integrated in t and on the
/// latitude circles). Independent of the closed forms; used as a
/// cross-check.
double kernel_by_quadrature(const ZonalMeasure& mu, double p, double s);

/// Heights where kernel(mu, p, .) fails to be smooth in s, for panel-split
/// quadrature in s over [-1, 1]. (0 when a pole atom is present and p is not
/// an even integer; +-sqrt(1-t^2) for each interior atom.)
std::vector<double> kernel_breakpoints(const ZonalMeasure& mu, double p);

/// Mean width of the zonoid Z^mu: 4 omega_{n-1} mu(S^{n-1}) / (n omega_n).
double zonoid_mean_width(const ZonalMeasure& mu);

/// Volume of the zonoid Z^mu(pole) for n = 3, as the halfspace intersection
/// over the grid directions (outer approximation). Returns 0 for degenerate
/// (flat) zonoids: segments (kernel -> 0 at s = 0) and discs (kernel -> 0 at
/// |s| = 1).
double zonoid_volume_estimate(const ZonalMeasure& mu, const SphericalGrid& grid);

}  // namespace isoval

#endif
