#ifndef ISOVAL_VALUATIONS_HPP
#define ISOVAL_VALUATIONS_HPP

#include "isoval/bodies.hpp"
#include "isoval/zonal.hpp"

namespace isoval {

/// Projection body: h(Pi K, u) = (1/2) int |u . v| dS(K, v).
SupportField projection_body(const Body& K, const SphericalGrid& grid);

/// L_p projection body: h(Pi_p K, u)^p = a_{n,p} int |u . v|^p dS_p(K, v).
/// Requires the origin interior to K for p > 1.
SupportField lp_projection_body(const Body& K, double p, const SphericalGrid& grid);

/// h(Phi^mu K, u) = int h(Z^mu(u), v) dS(K, v).
SupportField zonal_valuation(const Body& K, const ZonalMeasure& mu, const SphericalGrid& grid);

/// h(Phi_p^mu K, u)^p = int h(Z_p^mu(u), v)^p dS_p(K, v).
SupportField lp_zonal_valuation(const Body& K, const ZonalMeasure& mu, double p,
                                const SphericalGrid& grid);

/// Support evaluation at a single direction (used by the rotation-average
/// identity, which needs off-grid values). Polytopes are exact sums; smooth
/// bodies use the adapted quadrature.
double zonal_valuation_at(const Body& K, const ZonalMeasure& mu, double p, const Vector& u,
                          const SphericalGrid& grid);
double lp_projection_body_at(const Body& K, double p, const Vector& u, const SphericalGrid& grid);

/// Both sides of the rotation-average identity
///   h(Phi_p^mu K, u)^p = (1/a_{n,p}) int h(Pi_p K, theta_u w)^p dmu(w),
/// the left evaluated through the zonal kernel, the right by quadrature over
/// the latitude circles of mu carried to axis u. Two independent quadrature
/// paths for the same quantity.
struct RotationAverageCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};
RotationAverageCheck rotation_average_check(const Body& K, const ZonalMeasure& mu, double p,
                                            const Vector& u, const SphericalGrid& grid);

}  // namespace isoval

#endif
