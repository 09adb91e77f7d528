#include "isoval/bodies.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "isoval/constants.hpp"
#include "isoval/hull.hpp"
#include "isoval/quadrature.hpp"

namespace isoval {

namespace {

Polytope polytope_from_hull(const HullData& hull) {
    Polytope P;
    P.vertices = hull.vertices;
    P.vertices.rowwise() -= hull.centroid.transpose();
    P.facet_normals = hull.normals;
    P.facet_areas = hull.areas;
    P.facet_offsets = hull.offsets - hull.normals * hull.centroid;
    P.volume = hull.volume;
    for (Eigen::Index f = 0; f < P.facet_offsets.size(); ++f)
        if (!(P.facet_offsets[f] > 0.0))
            throw std::invalid_argument("polytope: centroid not interior (degenerate hull?)");
    return P;
}

const Polytope& as_polytope(const Body& K) { return std::get<Polytope>(K.shape); }

// S(E, .) has density det(A)^2 |A nu|^{-(n+1)} with respect to du, where
// E = A B^n and A = rotation * diag(semiaxes) * rotation^T.
double ellipsoid_surface_density(const Ellipsoid& E, const Vector& nu) {
    const Vector An = E.rotation *
                      (E.semiaxes.array() * (E.rotation.transpose() * nu).array()).matrix();
    const double det = E.semiaxes.prod();
    const int n = static_cast<int>(E.semiaxes.size());
    return det * det * std::pow(An.norm(), -(n + 1.0));
}

}  // namespace

double smooth_surface_density(const Body& K, const Vector& nu) {
    if (auto* b = std::get_if<Ball>(&K.shape)) {
        const int n = static_cast<int>(b->center.size());
        return std::pow(b->radius, n - 1);
    }
    if (auto* e = std::get_if<Ellipsoid>(&K.shape)) return ellipsoid_surface_density(*e, nu);
    throw std::invalid_argument("smooth_surface_density: polytope has atomic surface measure");
}

int Body::dim() const {
    if (auto* b = std::get_if<Ball>(&shape)) return static_cast<int>(b->center.size());
    if (auto* e = std::get_if<Ellipsoid>(&shape)) return static_cast<int>(e->semiaxes.size());
    return 3;
}

Body make_ball(double radius, int n) { return make_ball(radius, Vector::Zero(n)); }

Body make_ball(double radius, const Vector& center) {
    if (!(radius > 0.0)) throw std::invalid_argument("make_ball: radius must be positive");
    std::ostringstream label;
    label << "ball:" << radius;
    return Body{Ball{center, radius}, label.str()};
}

Body make_ellipsoid(const Vector& semiaxes) {
    return make_ellipsoid(semiaxes, Eigen::MatrixXd::Identity(semiaxes.size(), semiaxes.size()));
}

Body make_ellipsoid(const Vector& semiaxes, const Eigen::MatrixXd& rotation) {
    if ((semiaxes.array() <= 0.0).any())
        throw std::invalid_argument("make_ellipsoid: semiaxes must be positive");
    std::ostringstream label;
    label << "ellipsoid:";
    for (Eigen::Index i = 0; i < semiaxes.size(); ++i)
        label << (i ? "," : "") << semiaxes[i];
    return Body{Ellipsoid{semiaxes, rotation}, label.str()};
}

Body make_cube(double side) {
    NodeMatrix pts(8, 3);
    const double h = 0.5 * side;
    int r = 0;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) pts.row(r++) << sx * h, sy * h, sz * h;
    Body K = polytope_from_vertices(pts);
    K.label = "cube";
    return K;
}

Body make_simplex() {
    NodeMatrix pts(4, 3);
    pts << 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1;
    Body K = polytope_from_vertices(pts);
    K.label = "simplex";
    return K;
}

Body polytope_from_vertices(const NodeMatrix& points) {
    Body K{polytope_from_hull(convex_hull_3d(points)), "polytope"};
    return K;
}

Body body_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    nlohmann::json j;
    in >> j;
    const auto& verts = j.at("vertices");
    NodeMatrix pts(verts.size(), 3);
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (int d = 0; d < 3; ++d) pts(static_cast<Eigen::Index>(i), d) = verts[i][d];
    return polytope_from_vertices(pts);
}

Body body_from_off_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::string tok;
    in >> tok;
    if (tok != "OFF") throw std::invalid_argument(path + ": not an OFF file");
    Eigen::Index nv, nf, ne;
    in >> nv >> nf >> ne;
    NodeMatrix pts(nv, 3);
    for (Eigen::Index i = 0; i < nv; ++i) in >> pts(i, 0) >> pts(i, 1) >> pts(i, 2);
    if (!in) throw std::invalid_argument(path + ": truncated OFF vertex data");
    return polytope_from_vertices(pts);
}

double support(const Body& K, const Vector& u) {
    if (auto* b = std::get_if<Ball>(&K.shape)) return b->center.dot(u) + b->radius * u.norm();
    if (auto* e = std::get_if<Ellipsoid>(&K.shape))
        return (e->semiaxes.array() * (e->rotation.transpose() * u).array()).matrix().norm();
    const Polytope& P = as_polytope(K);
    return (P.vertices * u).maxCoeff();
}

double volume(const Body& K) {
    if (auto* b = std::get_if<Ball>(&K.shape))
        return unit_ball_volume(static_cast<int>(b->center.size())) *
               std::pow(b->radius, static_cast<int>(b->center.size()));
    if (auto* e = std::get_if<Ellipsoid>(&K.shape))
        return unit_ball_volume(static_cast<int>(e->semiaxes.size())) * e->semiaxes.prod();
    return as_polytope(K).volume;
}

double perimeter(const Body& K, const SphericalGrid& grid) {
    if (auto* b = std::get_if<Ball>(&K.shape)) {
        const int n = static_cast<int>(b->center.size());
        return sphere_surface(n) * std::pow(b->radius, n - 1);
    }
    if (auto* e = std::get_if<Ellipsoid>(&K.shape)) {
        KahanSum acc;
        for (Eigen::Index i = 0; i < grid.size(); ++i)
            acc.add(ellipsoid_surface_density(*e, grid.node(i)) * grid.weights[i]);
        return acc.value();
    }
    return compensated_sum({as_polytope(K).facet_areas.data(),
                            static_cast<std::size_t>(as_polytope(K).facet_areas.size())});
}

bool origin_interior(const Body& K) {
    if (auto* b = std::get_if<Ball>(&K.shape)) return b->center.norm() < b->radius;
    if (std::holds_alternative<Ellipsoid>(K.shape)) return true;
    return (as_polytope(K).facet_offsets.array() > 0.0).all();
}

Body linear_map(const Eigen::MatrixXd& A, const Body& K) {
    if (A.determinant() == 0.0) throw std::invalid_argument("linear_map: singular map");
    if (auto* p = std::get_if<Polytope>(&K.shape)) {
        NodeMatrix mapped = p->vertices * A.transpose();
        return polytope_from_vertices(mapped);
    }
    Eigen::MatrixXd M;
    if (auto* b = std::get_if<Ball>(&K.shape)) {
        M = A * b->radius;  // translation part dropped; the operators are translation invariant
    } else {
        const Ellipsoid& e = std::get<Ellipsoid>(K.shape);
        M = A * e.rotation * e.semiaxes.asDiagonal();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU);
    return make_ellipsoid(svd.singularValues(), svd.matrixU());
}

Body translate(const Body& K, const Vector& shift) {
    if (auto* b = std::get_if<Ball>(&K.shape))
        return Body{Ball{b->center + shift, b->radius}, K.label};
    if (std::holds_alternative<Ellipsoid>(K.shape))
        throw std::invalid_argument("translate: ellipsoids are kept origin-centered");
    Polytope P = as_polytope(K);
    P.vertices.rowwise() += shift.transpose();
    P.facet_offsets += P.facet_normals * shift;
    return Body{std::move(P), K.label};
}

SurfaceMeasure surface_measure(const Body& K, const SphericalGrid& grid) {
    SurfaceMeasure S;
    S.p = 1.0;
    if (auto* p = std::get_if<Polytope>(&K.shape)) {
        S.normals = p->facet_normals;
        S.weights = p->facet_areas;
        return S;
    }
    S.normals = grid.nodes;
    S.weights.resize(grid.size());
    if (auto* b = std::get_if<Ball>(&K.shape)) {
        const int n = static_cast<int>(b->center.size());
        const double rho = std::pow(b->radius, n - 1);
        for (Eigen::Index i = 0; i < grid.size(); ++i) S.weights[i] = rho * grid.weights[i];
        return S;
    }
    const Ellipsoid& e = std::get<Ellipsoid>(K.shape);
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        S.weights[i] = ellipsoid_surface_density(e, grid.node(i)) * grid.weights[i];
    return S;
}

SurfaceMeasure lp_surface_measure(const Body& K, double p, const SphericalGrid& grid) {
    if (p < 1.0) throw std::invalid_argument("lp_surface_measure: p must be >= 1");
    SurfaceMeasure S = surface_measure(K, grid);
    if (p == 1.0) return S;
    if (!origin_interior(K))
        throw std::invalid_argument("lp_surface_measure: origin must be interior for p > 1");
    for (Eigen::Index i = 0; i < S.weights.size(); ++i) {
        const double h = support(K, S.normals.row(i).transpose());
        S.weights[i] *= std::pow(h, 1.0 - p);
    }
    S.p = p;
    return S;
}

SupportField make_support_field(SphericalGrid grid, Vector values, std::string label) {
    if (values.size() != grid.size())
        throw std::invalid_argument("support field: value/grid size mismatch");
    if (!(values.array() > 0.0).all())
        throw std::domain_error("support field: values must be strictly positive");
    return SupportField{std::move(grid), std::move(values), std::move(label)};
}

SupportField support_field(const Body& K, const SphericalGrid& grid) {
    Vector values(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) values[i] = support(K, grid.node(i));
    return make_support_field(grid, std::move(values), "h[" + K.label + "]");
}

double polar_volume(const SupportField& h) {
    const int n = h.grid.dim;
    KahanSum acc;
    for (Eigen::Index i = 0; i < h.grid.size(); ++i) {
        if (!(h.values[i] > 0.0))
            throw std::domain_error("polar_volume: non-positive support value");
        acc.add(std::pow(h.values[i], -n) * h.grid.weights[i]);
    }
    return acc.value() / n;
}

double mean_width(const SupportField& h) {
    const int n = h.grid.dim;
    KahanSum acc;
    for (Eigen::Index i = 0; i < h.grid.size(); ++i) acc.add(h.values[i] * h.grid.weights[i]);
    return 2.0 * acc.value() / (n * unit_ball_volume(n));
}

}  // namespace isoval
