#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoval/bodies.hpp"
#include "isoval/kernels.hpp"
#include "isoval/rng.hpp"
#include "isoval/valuations.hpp"
#include "isoval/zonal.hpp"

using namespace isoval;

TEST_CASE("parallel support_sum is bitwise equal to the serial reference") {
    Rng rng(101);
    NodeMatrix nodes(777, 3), atoms(313, 3);
    Vector w(313);
    for (int i = 0; i < 777; ++i) nodes.row(i) = rng.unit_vector(3).transpose();
    for (int j = 0; j < 313; ++j) {
        atoms.row(j) = rng.unit_vector(3).transpose();
        w[j] = rng.uniform(0.1, 2.0);
    }
    auto k = [](double s) { return std::abs(s) + 0.25 * s * s; };
    Vector serial, parallel;
    kernels::support_sum(nodes, atoms, w, k, serial, kernels::Exec::serial);
    kernels::support_sum(nodes, atoms, w, k, parallel, kernels::Exec::parallel);
    REQUIRE(serial.size() == parallel.size());
    for (Eigen::Index i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("parallel max_dot is bitwise equal to the serial reference") {
    Rng rng(103);
    NodeMatrix nodes(500, 3), pts(211, 3);
    for (int i = 0; i < 500; ++i) nodes.row(i) = rng.unit_vector(3).transpose();
    for (int j = 0; j < 211; ++j) pts.row(j) = (2.0 * rng.unit_vector(3)).transpose();
    Vector serial, parallel;
    kernels::max_dot(nodes, pts, serial, kernels::Exec::serial);
    kernels::max_dot(nodes, pts, parallel, kernels::Exec::parallel);
    for (Eigen::Index i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("valuations are bitwise independent of the execution policy") {
    SphericalGrid grid = make_grid(3, 1);
    Rng rng(107);
    NodeMatrix pts(16, 3);
    for (int i = 0; i < 16; ++i) pts.row(i) = rng.unit_vector(3).transpose();
    Body K = polytope_from_vertices(pts);
    Body E = make_ellipsoid(Eigen::Vector3d(1.4, 1.0, 0.7));
    ZonalMeasure mu = ZonalMeasure::equatorial(0.5);

    kernels::set_default_exec(kernels::Exec::serial);
    SupportField a1 = zonal_valuation(K, mu, grid);
    SupportField a2 = lp_zonal_valuation(E, mu.normalized(1.0), 2.0, grid);
    kernels::set_default_exec(kernels::Exec::parallel);
    SupportField b1 = zonal_valuation(K, mu, grid);
    SupportField b2 = lp_zonal_valuation(E, mu.normalized(1.0), 2.0, grid);

    CHECK((a1.values - b1.values).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((a2.values - b2.values).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
    NodeMatrix nodes(4, 3), atoms(4, 4);
    Vector w = Vector::Ones(4);
    Vector out;
    CHECK_THROWS_AS(
        kernels::support_sum(
            nodes, atoms, w, [](double s) { return s; }, out, kernels::Exec::serial),
        std::invalid_argument);
    CHECK_THROWS_AS(kernels::max_dot(nodes, atoms, out, kernels::Exec::serial),
                    std::invalid_argument);
}
