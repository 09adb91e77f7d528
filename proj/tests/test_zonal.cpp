#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoval/bodies.hpp"
#include "isoval/constants.hpp"
#include "isoval/rng.hpp"
#include "isoval/zonal.hpp"

using namespace isoval;

TEST_CASE("constructors and kinds") {
    ZonalMeasure d = ZonalMeasure::discrete_poles(0.5);
    CHECK(d.kind() == MeasureKind::discrete_poles);
    CHECK(d.total_mass() == doctest::Approx(0.5).epsilon(1e-15));
    ZonalMeasure e = ZonalMeasure::equatorial(0.5);
    CHECK(e.kind() == MeasureKind::equatorial);
    ZonalMeasure l = ZonalMeasure::lebesgue(0.5);
    CHECK(l.kind() == MeasureKind::lebesgue);
    ZonalMeasure b = ZonalMeasure::mix({{0.5, d}, {0.5, l}});
    CHECK(b.kind() == MeasureKind::custom);
    CHECK(b.total_mass() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(ZonalMeasure::discrete_poles(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ZonalMeasure::from_density([](double) { return 0.0; }, 3),
                    std::invalid_argument);
}

TEST_CASE("kernel closed values") {
    Rng rng(3);
    SUBCASE("discrete poles: kernel = mass |s|^p") {
        ZonalMeasure mu = ZonalMeasure::discrete_poles(1.0);
        for (int k = 0; k < 10; ++k) {
            double s = rng.uniform(-1.0, 1.0);
            CHECK(kernel(mu, 1.0, s) == doctest::Approx(std::abs(s)).epsilon(1e-15));
            CHECK(kernel(mu, 1.5, s) ==
                  doctest::Approx(std::pow(std::abs(s), 1.5)).epsilon(1e-15));
        }
    }
    SUBCASE("equatorial(1/2), p = 1: (1/pi) sqrt(1-s^2)") {
        ZonalMeasure mu = ZonalMeasure::equatorial(0.5);
        for (int k = 0; k < 10; ++k) {
            double s = rng.uniform(-1.0, 1.0);
            CHECK(kernel(mu, 1.0, s) ==
                  doctest::Approx(std::sqrt(1.0 - s * s) / kPi).epsilon(1e-8));
        }
    }
    SUBCASE("lebesgue(1/2), p = 1: constant 1/4") {
        ZonalMeasure mu = ZonalMeasure::lebesgue(0.5);
        CHECK(kernel(mu, 1.0, 0.3) == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(kernel(mu, 1.0, -0.9) == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("lebesgue mass a_{n,p} reproduces the unit ball normalization") {
        // kernel = a_{3,p} * mean|u.v|^p = a / (a 4 pi) ... => integral over S^2 is 1
        for (double p : {1.0, 1.5, 2.0}) {
            ZonalMeasure mu = ZonalMeasure::lebesgue(a_np(3, p));
            CHECK(kernel(mu, p, 0.42) * sphere_surface(3) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("kernel structure properties") {
    Rng rng(7);
    ZonalMeasure measures[] = {
        ZonalMeasure::discrete_poles(0.7), ZonalMeasure::equatorial(1.3),
        ZonalMeasure::lebesgue(0.5),
        ZonalMeasure::mix({{0.4, ZonalMeasure::discrete_poles(1.0)},
                           {0.6, ZonalMeasure::lebesgue(1.0)}}),
        ZonalMeasure::from_atoms({{0.6, 0.8}, {0.2, 0.4}}, 3)};
    for (const ZonalMeasure& mu : measures) {
        for (double p : {1.0, 1.5, 2.0}) {
            for (int k = 0; k < 6; ++k) {
                double s = rng.uniform(0.0, 1.0);
                // evenness
                CHECK(kernel(mu, p, s) == doctest::Approx(kernel(mu, p, -s)).epsilon(1e-15));
                // exact mass linearity
                CHECK(kernel(mu.scaled(3.25), p, s) ==
                      doctest::Approx(3.25 * kernel(mu, p, s)).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("closed-form kernels match the independent quadrature path") {
    Rng rng(13);
    ZonalMeasure measures[] = {
        ZonalMeasure::discrete_poles(0.5), ZonalMeasure::equatorial(0.5),
        ZonalMeasure::lebesgue(0.5),
        ZonalMeasure::mix({{0.5, ZonalMeasure::discrete_poles(0.5)},
                           {0.5, ZonalMeasure::lebesgue(0.5)}}),
        ZonalMeasure::from_atoms({{0.37, 1.0}}, 3)};
    for (const ZonalMeasure& mu : measures) {
        for (double p : {1.0, 1.5, 2.0}) {
            for (int k = 0; k < 5; ++k) {
                double s = rng.uniform(-1.0, 1.0);
                CHECK(kernel(mu, p, s) ==
                      doctest::Approx(kernel_by_quadrature(mu, p, s)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("constant density reduces to the lebesgue closed form") {
    ZonalMeasure dens = ZonalMeasure::from_density([](double) { return 1.0; }, 3);
    CHECK(dens.total_mass() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    ZonalMeasure leb = ZonalMeasure::lebesgue(dens.total_mass());
    for (double p : {1.0, 2.0}) {
        for (double s : {0.0, 0.33, 0.71, 0.98}) {
            CHECK(kernel(dens, p, s) == doctest::Approx(kernel(leb, p, s)).epsilon(1e-8));
        }
    }
}

TEST_CASE("normalization") {
    ZonalMeasure l = ZonalMeasure::lebesgue(1.0).normalized(0.5);
    CHECK(l.total_mass() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(l.kind() == MeasureKind::lebesgue);
    ZonalMeasure d = ZonalMeasure::discrete_poles(3.0).normalized(a_np(3, 2.0));
    CHECK(d.total_mass() == doctest::Approx(3.0 / (4.0 * kPi)).epsilon(1e-13));
    CHECK(d.kind() == MeasureKind::discrete_poles);
    // idempotent
    ZonalMeasure dd = d.normalized(d.total_mass());
    CHECK(dd.total_mass() == doctest::Approx(d.total_mass()).epsilon(1e-15));
}

TEST_CASE("zonoid mean width") {
    // 4 omega_{n-1} mass / (n omega_n); for n = 3 equal to the mass.
    CHECK(zonoid_mean_width(ZonalMeasure::equatorial(0.5)) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(zonoid_mean_width(ZonalMeasure::lebesgue(0.5)) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(zonoid_mean_width(ZonalMeasure::discrete_poles(0.7)) ==
          doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("mean-width consistency: sampled kernel field vs closed form") {
    SphericalGrid grid = make_grid(3);
    auto sampled_width = [&](const ZonalMeasure& mu) {
        Vector v(grid.size());
        for (Eigen::Index i = 0; i < grid.size(); ++i)
            v[i] = kernel(mu, 1.0, grid.nodes(i, 2));
        return mean_width(make_support_field(grid, v, "zonoid"));
    };
    // pole-aligned |t| and constants are exact on the split rule
    CHECK(sampled_width(ZonalMeasure::discrete_poles(0.5)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sampled_width(ZonalMeasure::lebesgue(0.5)) == doctest::Approx(0.5).epsilon(1e-12));
    // sqrt(1-t^2) has endpoint singularities; quadratic-in-level convergence
    CHECK(sampled_width(ZonalMeasure::equatorial(0.5)) == doctest::Approx(0.5).epsilon(1e-5));
    SphericalGrid fine = make_grid(3, 16);
    Vector v(fine.size());
    for (Eigen::Index i = 0; i < fine.size(); ++i)
        v[i] = kernel(ZonalMeasure::equatorial(0.5), 1.0, fine.nodes(i, 2));
    CHECK(mean_width(make_support_field(fine, v, "zonoid")) ==
          doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("zonoid volume estimate") {
    SphericalGrid grid = make_grid(3);
    // Z^{lebesgue(1/2)} = B/4
    CHECK(zonoid_volume_estimate(ZonalMeasure::lebesgue(0.5), grid) ==
          doctest::Approx(unit_ball_volume(3) / 64.0).epsilon(0.02));
    // flat zonoids are null
    CHECK(zonoid_volume_estimate(ZonalMeasure::discrete_poles(0.5), grid) == 0.0);
    CHECK(zonoid_volume_estimate(ZonalMeasure::equatorial(0.5), grid) == 0.0);
    // blend is full-dimensional
    ZonalMeasure blend = ZonalMeasure::mix(
        {{0.5, ZonalMeasure::discrete_poles(0.5)}, {0.5, ZonalMeasure::lebesgue(0.5)}});
    CHECK(zonoid_volume_estimate(blend, grid) > 0.0);
}
