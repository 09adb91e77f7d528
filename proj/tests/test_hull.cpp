#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoval/constants.hpp"
#include "isoval/hull.hpp"
#include "isoval/rng.hpp"

using namespace isoval;

namespace {

NodeMatrix cube_corners(double h) {
    NodeMatrix pts(8, 3);
    int r = 0;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) pts.row(r++) << sx * h, sy * h, sz * h;
    return pts;
}

}  // namespace

TEST_CASE("cube hull merges coplanar triangles into six facets") {
    HullData hull = convex_hull_3d(cube_corners(0.5));
    CHECK(hull.normals.rows() == 6);
    CHECK(hull.volume == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hull.centroid.norm() < 1e-12);
    CHECK(hull.vertices.rows() == 8);
    for (Eigen::Index f = 0; f < 6; ++f) {
        CHECK(hull.areas[f] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(hull.offsets[f] == doctest::Approx(0.5).epsilon(1e-12));
        // normal is +-e_i
        Eigen::Vector3d nn = hull.normals.row(f).transpose();
        CHECK(nn.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("simplex facet data is closed") {
    NodeMatrix pts(4, 3);
    pts << 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1;
    HullData hull = convex_hull_3d(pts);
    CHECK(hull.normals.rows() == 4);
    Eigen::Vector3d total = Eigen::Vector3d::Zero();
    for (Eigen::Index f = 0; f < 4; ++f)
        total += hull.areas[f] * hull.normals.row(f).transpose();
    CHECK(total.norm() < 1e-10);
    // volume of conv{(1,1,1),(1,-1,-1),(-1,1,-1),(-1,-1,1)} = 8/3
    CHECK(hull.volume == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("hull of random sphere points approaches the ball") {
    Rng rng(17);
    double prev = 0.0;
    for (int npts : {50, 200, 800}) {
        NodeMatrix pts(npts, 3);
        for (int i = 0; i < npts; ++i) pts.row(i) = rng.unit_vector(3).transpose();
        HullData hull = convex_hull_3d(pts);
        CHECK(hull.volume < unit_ball_volume(3));
        CHECK(hull.volume > prev);  // monotone refinement toward omega_3
        prev = hull.volume;
        Eigen::Vector3d total = Eigen::Vector3d::Zero();
        for (Eigen::Index f = 0; f < hull.normals.rows(); ++f)
            total += hull.areas[f] * hull.normals.row(f).transpose();
        CHECK(total.norm() < 1e-10);
    }
    CHECK(prev > 0.95 * unit_ball_volume(3));
}

TEST_CASE("degenerate input is rejected") {
    NodeMatrix planar(5, 3);
    planar << 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 0.3, 0.7, 0;
    CHECK_THROWS_AS(convex_hull_3d(planar), std::invalid_argument);
    NodeMatrix line(4, 3);
    line << 0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3;
    CHECK_THROWS_AS(convex_hull_3d(line), std::invalid_argument);
    NodeMatrix few(3, 3);
    few << 0, 0, 0, 1, 0, 0, 0, 1, 0;
    CHECK_THROWS_AS(convex_hull_3d(few), std::invalid_argument);
}

TEST_CASE("interior points do not change the hull") {
    Rng rng(23);
    NodeMatrix pts(30, 3);
    for (int i = 0; i < 20; ++i) pts.row(i) = rng.unit_vector(3).transpose();
    for (int i = 20; i < 30; ++i) pts.row(i) = 0.3 * rng.unit_vector(3).transpose();
    HullData with_inner = convex_hull_3d(pts);
    HullData without = convex_hull_3d(pts.topRows(20));
    CHECK(with_inner.volume == doctest::Approx(without.volume).epsilon(1e-12));
    CHECK(with_inner.vertices.rows() == without.vertices.rows());
}

TEST_CASE("2d hull area") {
    std::vector<Eigen::Vector2d> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    CHECK(convex_hull_area_2d(square) == doctest::Approx(1.0).epsilon(1e-14));
    Rng rng(29);
    std::vector<Eigen::Vector2d> disc;
    for (int i = 0; i < 4000; ++i) {
        double a = rng.uniform() * 2.0 * kPi, r = std::sqrt(rng.uniform());
        disc.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    CHECK(convex_hull_area_2d(disc) == doctest::Approx(kPi).epsilon(0.01));
}
