#ifndef ISOVAL_INEQUALITIES_HPP
#define ISOVAL_INEQUALITIES_HPP

#include <cstdint>
#include <vector>

#include "isoval/report.hpp"
#include "isoval/rng.hpp"
#include "isoval/valuations.hpp"

namespace isoval {

/// Sharp bound of the volume product:
/// omega_n^n / omega_{n-1}^n for p = 1 (measures of mass 1/2),
/// omega_n^n for p > 1 (measures of mass a_{n,p}).
double petty_bound(int n, double p);

/// |Phi_p^{mu,o} K|^p |K|^{n-p}; for p = 1 this is |Phi^{mu,o} K| |K|^{n-1}.
double volume_product(const Body& K, const ZonalMeasure& mu, double p, const SphericalGrid& grid);

/// Theorem-2 chain for measures of mass 1/2:
///   n^n omega_n^{n+1} / omega_{n-1}^n * P(K)^{-n} <= |Phi^{mu,o} K| <= |Pi^o K|.
struct Sandwich {
    double left = 0.0;
    double mid = 0.0;
    double right = 0.0;
    bool left_ok = false;
    bool right_ok = false;
};
Sandwich theorem2_sandwich(const Body& K, const ZonalMeasure& mu, const SphericalGrid& grid,
                           double tolerance = 1e-6);

struct AffineProbe {
    double before = 0.0;
    double after = 0.0;
};
/// Volume product before/after applying a volume-preserving map A to K.
AffineProbe affine_probe(const Body& K, const ZonalMeasure& mu, double p,
                         const Eigen::MatrixXd& A, const SphericalGrid& grid);

/// Uniform points on S^2 -> convex hull -> recenter.
Body random_hull_body(Rng& rng, int n_points);

enum class FuzzTheorem { thm1, thm2, thm51, thm52, lemma41, affine };
FuzzTheorem fuzz_theorem_from_string(const std::string& tag);

struct FuzzConfig {
    FuzzTheorem theorem = FuzzTheorem::thm2;
    int trials = 100;
    std::uint64_t seed = 42;
    int grid_level = kDefaultGridLevel;
    double tolerance = 1e-6;
    int hull_points = 20;
    std::vector<ZonalMeasure> measures;  // empty -> empty report
    std::vector<double> ps = {1.0};      // used by thm51 / thm52 / lemma41
};

/// Deterministic given the config; trial i uses Rng::substream(seed, i).
/// Violations are report entries, not errors.
VerificationReport fuzz(const FuzzConfig& config);

/// The four standard measures at the given mass: discrete, equatorial,
/// Lebesgue and a half/half discrete+Lebesgue blend.
std::vector<ZonalMeasure> standard_measures(double mass, int n = 3);

struct ExtremizeStep {
    int step = 0;
    Vector semiaxes;
    double product = 0.0;
};

struct ExtremizeConfig {
    ZonalMeasure mu = ZonalMeasure::equatorial(0.5);
    double p = 1.0;
    Vector start_semiaxes;     // empty -> (2, 1, 0.5)
    int max_steps = 200;
    std::uint64_t seed = 1;
    int grid_level = 1;        // the objective is smooth; level 1 suffices
    bool polytope_mode = false;
    int polytope_points = 20;
};

/// Derivative-free ascent of the volume product: Nelder-Mead over
/// log-semiaxes at fixed volume (or random vertex perturbation with
/// rejection, in polytope mode). The trajectory records best-so-far values,
/// hence is monotone non-decreasing.
std::vector<ExtremizeStep> extremize(const ExtremizeConfig& config);

}  // namespace isoval

#endif
