#ifndef ISOVAL_BODIES_HPP
#define ISOVAL_BODIES_HPP

#include <string>
#include <variant>

#include "isoval/sphere_quad.hpp"

namespace isoval {

struct Ball {
    Vector center;
    double radius = 1.0;
};

/// rotation * diag(semiaxes) * B^n, origin-centered.
struct Ellipsoid {
    Vector semiaxes;
    Eigen::MatrixXd rotation;
};

/// Convex polytope in R^3 with centroid at the origin. Facet offsets are
/// measured from the origin and are strictly positive.
struct Polytope {
    NodeMatrix vertices;      // V x 3
    NodeMatrix facet_normals; // F x 3, unit rows, outward
    Vector facet_offsets;     // F
    Vector facet_areas;       // F
    double volume = 0.0;
};

struct Body {
    std::variant<Ball, Ellipsoid, Polytope> shape;
    std::string label;

    int dim() const;
    bool is_polytope() const { return std::holds_alternative<Polytope>(shape); }
    bool is_smooth() const { return !is_polytope(); }
};

Body make_ball(double radius, int n = 3);
Body make_ball(double radius, const Vector& center);
Body make_ellipsoid(const Vector& semiaxes);
Body make_ellipsoid(const Vector& semiaxes, const Eigen::MatrixXd& rotation);
/// Axis-aligned cube of the given side length centered at the origin.
Body make_cube(double side = 1.0);
Body make_simplex();

/// Convex hull of the points, recentered so the volume centroid is the
/// origin (which certifies origin-interior). Rejects degenerate input.
Body polytope_from_vertices(const NodeMatrix& points);

Body body_from_json_file(const std::string& path);
Body body_from_off_file(const std::string& path);

double support(const Body& K, const Vector& u);
double volume(const Body& K);
/// Surface area. The grid is used only for ellipsoids (quadrature mass).
double perimeter(const Body& K, const SphericalGrid& grid);
bool origin_interior(const Body& K);
/// Image of K under an invertible linear map (polytopes are re-hulled,
/// balls/ellipsoids map to ellipsoids via SVD).
Body linear_map(const Eigen::MatrixXd& A, const Body& K);
Body translate(const Body& K, const Vector& shift);

/// Discrete measure on the sphere: atoms (normal, weight).
/// p = 1 for S(K, .); p > 1 for S_p(K, .) = h^{1-p} S(K, .).
struct SurfaceMeasure {
    NodeMatrix normals;
    Vector weights;
    double p = 1.0;
};

SurfaceMeasure surface_measure(const Body& K, const SphericalGrid& grid);
SurfaceMeasure lp_surface_measure(const Body& K, double p, const SphericalGrid& grid);

/// Density of S(K, .) with respect to du for smooth bodies: r^{n-1} for a
/// ball, det(A)^2 |A nu|^{-(n+1)} for an ellipsoid A B^n. Throws for
/// polytopes.
double smooth_surface_density(const Body& K, const Vector& nu);

/// Support function sampled on a grid. Values are strictly positive.
struct SupportField {
    SphericalGrid grid;
    Vector values;
    std::string label;
};

SupportField make_support_field(SphericalGrid grid, Vector values, std::string label);
/// Samples h(K, .) on the grid.
SupportField support_field(const Body& K, const SphericalGrid& grid);

/// (1/n) sum h^{-n} w: the polar volume |K^o| when h = h(K, .).
double polar_volume(const SupportField& h);
/// (2 / (n omega_n)) sum h w.
double mean_width(const SupportField& h);

}  // namespace isoval

#endif
