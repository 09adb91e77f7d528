#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoval/constants.hpp"
#include "isoval/inequalities.hpp"

using namespace isoval;

TEST_CASE("petty bounds") {
    CHECK(petty_bound(3, 1.0) == doctest::Approx(64.0 / 27.0).epsilon(1e-14));
    CHECK(petty_bound(3, 2.0) ==
          doctest::Approx(std::pow(unit_ball_volume(3), 3)).epsilon(1e-14));
    CHECK(petty_bound(4, 1.0) ==
          doctest::Approx(std::pow(unit_ball_volume(4) / unit_ball_volume(3), 4))
              .epsilon(1e-14));
}

TEST_CASE("ball saturates the volume product for every standard measure") {
    // the ball's fields are constant, so the product is grid-level free
    SphericalGrid grid = make_grid(3, 1);
    Body B = make_ball(1.0);
    for (const ZonalMeasure& mu : standard_measures(0.5)) {
        const double prod = volume_product(B, mu, 1.0, grid);
        CHECK(prod == doctest::Approx(64.0 / 27.0).epsilon(1e-6));
    }
    for (double p : {1.5, 2.0}) {
        for (const ZonalMeasure& raw : standard_measures(1.0)) {
            const ZonalMeasure mu = raw.normalized(a_np(3, p));
            CHECK(volume_product(B, mu, p, grid) ==
                  doctest::Approx(petty_bound(3, p)).epsilon(1e-6));
        }
    }
}

TEST_CASE("cube volume product sits below the bound") {
    SphericalGrid grid = make_grid(3);
    const double prod =
        volume_product(make_cube(), ZonalMeasure::discrete_poles(0.5), 1.0, grid);
    // 4/3 up to the |.|-kink error of the default grid (documented)
    CHECK(prod == doctest::Approx(4.0 / 3.0).epsilon(2e-3));
    const double margin = (petty_bound(3, 1.0) - prod) / petty_bound(3, 1.0);
    CHECK(margin == doctest::Approx(7.0 / 16.0).epsilon(5e-3));
}

TEST_CASE("volume product is scale invariant") {
    SphericalGrid grid = make_grid(3, 1);
    Rng rng(71);
    Body K = random_hull_body(rng, 18);
    Body K2 = linear_map(3.7 * Eigen::MatrixXd::Identity(3, 3), K);
    for (double p : {1.0, 2.0}) {
        ZonalMeasure mu = ZonalMeasure::equatorial(p == 1.0 ? 0.5 : a_np(3, p));
        CHECK(volume_product(K, mu, p, grid) ==
              doctest::Approx(volume_product(K2, mu, p, grid)).epsilon(1e-8));
    }
}

TEST_CASE("theorem-2 sandwich closed forms") {
    SphericalGrid grid = make_grid(3);
    SUBCASE("ball: full equality chain") {
        for (const ZonalMeasure& mu : standard_measures(0.5)) {
            Sandwich s = theorem2_sandwich(make_ball(1.0), mu, grid);
            const double expect = 4.0 / (3.0 * kPi * kPi);
            CHECK(s.left == doctest::Approx(expect).epsilon(1e-9));
            CHECK(s.mid == doctest::Approx(expect).epsilon(1e-9));
            CHECK(s.right == doctest::Approx(expect).epsilon(1e-9));
            CHECK(s.left_ok);
            CHECK(s.right_ok);
        }
    }
    SUBCASE("cube with the pole measure: mid = right exactly") {
        Sandwich s = theorem2_sandwich(make_cube(), ZonalMeasure::discrete_poles(0.5), grid);
        CHECK(s.left == doctest::Approx(256.0 * kPi / 3.0 / 216.0).epsilon(1e-12));
        CHECK(s.mid == doctest::Approx(s.right).epsilon(1e-13));
        CHECK(s.mid == doctest::Approx(4.0 / 3.0).epsilon(2e-3));
        CHECK(s.left_ok);
        CHECK(s.right_ok);
    }
    SUBCASE("cube with the lebesgue measure: mid = left exactly") {
        Sandwich s = theorem2_sandwich(make_cube(), ZonalMeasure::lebesgue(0.5), grid);
        CHECK(s.mid == doctest::Approx(s.left).epsilon(1e-9));
        CHECK(s.right == doctest::Approx(4.0 / 3.0).epsilon(2e-3));
        CHECK(s.left_ok);
        CHECK(s.right_ok);
    }
    SUBCASE("mass normalization is enforced") {
        CHECK_THROWS_AS(
            theorem2_sandwich(make_cube(), ZonalMeasure::discrete_poles(1.0), grid),
            std::invalid_argument);
    }
}

TEST_CASE("sandwich holds across random hulls") {
    SphericalGrid grid = make_grid(3);
    Rng rng(73);
    for (int trial = 0; trial < 8; ++trial) {
        Body K = random_hull_body(rng, 20);
        for (const ZonalMeasure& mu : standard_measures(0.5)) {
            Sandwich s = theorem2_sandwich(K, mu, grid);
            CHECK(s.left_ok);
            CHECK(s.right_ok);
        }
    }
}

TEST_CASE("affine dichotomy") {
    SphericalGrid grid = make_grid(3);
    Rng rng(79);
    SUBCASE("identity map changes nothing") {
        AffineProbe pr = affine_probe(make_ball(1.0), ZonalMeasure::equatorial(0.5), 1.0,
                                      Eigen::MatrixXd::Identity(3, 3), grid);
        CHECK(pr.before == doctest::Approx(pr.after).epsilon(1e-12));
    }
    SUBCASE("pole measure: invariant over SL(3) images of the ball") {
        for (int k = 0; k < 6; ++k) {
            Eigen::MatrixXd A = rng.special_linear(3);
            AffineProbe pr =
                affine_probe(make_ball(1.0), ZonalMeasure::discrete_poles(0.5), 1.0, A, grid);
            CHECK(std::abs(pr.after - pr.before) / pr.before < 1e-5);
        }
    }
    SUBCASE("pole measure on the cube: limited by the node-sum error") {
        Eigen::MatrixXd A = rng.special_linear(3);
        AffineProbe pr =
            affine_probe(make_cube(), ZonalMeasure::discrete_poles(0.5), 1.0, A, grid);
        CHECK(std::abs(pr.after - pr.before) / pr.before < 2e-3);
    }
    SUBCASE("equatorial measure: strict drop away from the ball") {
        Eigen::MatrixXd A = Eigen::Vector3d(2.0, 1.0, 0.5).asDiagonal();
        A = (rng.rotation(3) * A).eval();
        AffineProbe pr =
            affine_probe(make_ball(1.0), ZonalMeasure::equatorial(0.5), 1.0, A, grid);
        CHECK(pr.after < pr.before * (1.0 - 1e-3));
    }
    SUBCASE("non-volume-preserving maps are rejected") {
        CHECK_THROWS_AS(affine_probe(make_ball(1.0), ZonalMeasure::equatorial(0.5), 1.0,
                                     2.0 * Eigen::MatrixXd::Identity(3, 3), grid),
                        std::invalid_argument);
    }
}

TEST_CASE("fuzz: theorem 1") {
    FuzzConfig cfg;
    cfg.theorem = FuzzTheorem::thm1;
    cfg.trials = 16;
    cfg.seed = 42;
    cfg.measures = standard_measures(0.5);
    VerificationReport rep = fuzz(cfg);
    CHECK(rep.trials.size() == 16 * 4);
    CHECK(rep.violations() == 0);
    CHECK(rep.max_equality_residual() < 1e-6);  // ball trials saturate
    CHECK(rep.min_margin() > -1e-6);
}

TEST_CASE("fuzz: theorem 2") {
    FuzzConfig cfg;
    cfg.theorem = FuzzTheorem::thm2;
    cfg.trials = 12;
    cfg.seed = 7;
    cfg.measures = standard_measures(0.5);
    VerificationReport rep = fuzz(cfg);
    CHECK(rep.violations() == 0);
}

TEST_CASE("fuzz: lp petty family") {
    FuzzConfig cfg;
    cfg.trials = 8;
    cfg.seed = 11;
    cfg.measures = standard_measures(1.0);
    cfg.ps = {1.5, 2.0};
    cfg.theorem = FuzzTheorem::thm51;
    CHECK(fuzz(cfg).violations() == 0);
    cfg.theorem = FuzzTheorem::thm52;
    CHECK(fuzz(cfg).violations() == 0);
}

TEST_CASE("fuzz: rotation average identity") {
    FuzzConfig cfg;
    cfg.theorem = FuzzTheorem::lemma41;
    cfg.trials = 4;
    cfg.seed = 13;
    cfg.grid_level = 1;
    cfg.measures = standard_measures(1.0);
    cfg.ps = {1.0, 1.5, 2.0};
    VerificationReport rep = fuzz(cfg);
    CHECK(rep.violations() == 0);
}

TEST_CASE("fuzz: empty measure list gives an empty report") {
    FuzzConfig cfg;
    cfg.measures.clear();
    VerificationReport rep = fuzz(cfg);
    CHECK(rep.trials.empty());
    CHECK(rep.violations() == 0);
}

TEST_CASE("fuzz: deterministic given the config") {
    FuzzConfig cfg;
    cfg.theorem = FuzzTheorem::thm2;
    cfg.trials = 4;
    cfg.seed = 99;
    cfg.grid_level = 1;
    cfg.measures = standard_measures(0.5);
    CHECK(fuzz(cfg).to_json() == fuzz(cfg).to_json());
}

TEST_CASE("extremize over ellipsoids") {
    SUBCASE("equatorial measure converges to the ball") {
        ExtremizeConfig cfg;
        cfg.mu = ZonalMeasure::equatorial(0.5);
        cfg.max_steps = 120;
        std::vector<ExtremizeStep> traj = extremize(cfg);
        REQUIRE(!traj.empty());
        for (std::size_t i = 1; i < traj.size(); ++i)
            CHECK(traj[i].product >= traj[i - 1].product);
        CHECK(traj.back().product == doctest::Approx(64.0 / 27.0).epsilon(1e-4));
        const Vector& axes = traj.back().semiaxes;
        CHECK(axes.maxCoeff() / axes.minCoeff() == doctest::Approx(1.0).epsilon(1e-2));
    }
    SUBCASE("ball start is a fixed point") {
        ExtremizeConfig cfg;
        cfg.mu = ZonalMeasure::equatorial(0.5);
        cfg.start_semiaxes = Vector::Constant(3, 1.0);
        cfg.max_steps = 20;
        std::vector<ExtremizeStep> traj = extremize(cfg);
        CHECK(traj.front().product == doctest::Approx(64.0 / 27.0).epsilon(1e-6));
        CHECK(traj.back().product == doctest::Approx(64.0 / 27.0).epsilon(1e-6));
    }
    SUBCASE("pole measure: flat ridge across the family") {
        ExtremizeConfig cfg;
        cfg.mu = ZonalMeasure::discrete_poles(0.5);
        cfg.max_steps = 40;
        std::vector<ExtremizeStep> traj = extremize(cfg);
        for (const ExtremizeStep& st : traj)
            CHECK(st.product == doctest::Approx(64.0 / 27.0).epsilon(1e-6));
    }
}

TEST_CASE("extremize in polytope mode is monotone") {
    ExtremizeConfig cfg;
    cfg.mu = ZonalMeasure::equatorial(0.5);
    cfg.polytope_mode = true;
    cfg.polytope_points = 12;
    cfg.max_steps = 40;
    cfg.seed = 3;
    std::vector<ExtremizeStep> traj = extremize(cfg);
    REQUIRE(traj.size() >= 1);
    for (std::size_t i = 1; i < traj.size(); ++i)
        CHECK(traj[i].product >= traj[i - 1].product);
    CHECK(traj.back().product <= petty_bound(3, 1.0) * (1.0 + 1e-6));
}

TEST_CASE("report serialization") {
    FuzzConfig cfg;
    cfg.theorem = FuzzTheorem::thm1;
    cfg.trials = 2;
    cfg.grid_level = 1;
    cfg.measures = {ZonalMeasure::lebesgue(0.5)};
    VerificationReport rep = fuzz(cfg);
    const std::string json = rep.to_json();
    CHECK(json.find("\"schema\": \"isoval/1\"") != std::string::npos);
    CHECK(json.find("\"theorem\": \"thm1\"") != std::string::npos);
    const std::string csv = rep.to_csv();
    CHECK(csv.find("index,body,mu,p,lhs,bound,margin,pass") == 0);
}
