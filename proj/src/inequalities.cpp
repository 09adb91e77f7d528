#include "isoval/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "isoval/constants.hpp"

namespace isoval {

double petty_bound(int n, double p) {
    if (n < 3) throw std::invalid_argument("petty_bound: requires n >= 3");
    const double wn = unit_ball_volume(n);
    if (p == 1.0) return std::pow(wn / unit_ball_volume(n - 1), n);
    return std::pow(wn, n);
}

double volume_product(const Body& K, const ZonalMeasure& mu, double p,
                      const SphericalGrid& grid) {
    const int n = grid.dim;
    if (p == 1.0) {
        const double pv = polar_volume(zonal_valuation(K, mu, grid));
        return pv * std::pow(volume(K), n - 1);
    }
    const double pv = polar_volume(lp_zonal_valuation(K, mu, p, grid));
    return std::pow(pv, p) * std::pow(volume(K), n - p);
}

Sandwich theorem2_sandwich(const Body& K, const ZonalMeasure& mu, const SphericalGrid& grid,
                           double tolerance) {
    if (std::abs(mu.total_mass() - 0.5) > 1e-9)
        throw std::invalid_argument("theorem2_sandwich: measure must have mass 1/2");
    const int n = grid.dim;
    const double wn = unit_ball_volume(n), wn1 = unit_ball_volume(n - 1);
    Sandwich s;
    const double P = perimeter(K, grid);
    s.left = std::pow(static_cast<double>(n), n) * std::pow(wn, n + 1) / std::pow(wn1, n) *
             std::pow(P, -n);
    s.mid = polar_volume(zonal_valuation(K, mu, grid));
    s.right = polar_volume(projection_body(K, grid));
    s.left_ok = s.left <= s.mid * (1.0 + tolerance);
    s.right_ok = s.mid <= s.right * (1.0 + tolerance);
    return s;
}

AffineProbe affine_probe(const Body& K, const ZonalMeasure& mu, double p,
                         const Eigen::MatrixXd& A, const SphericalGrid& grid) {
    if (std::abs(A.determinant() - 1.0) > 1e-9)
        throw std::invalid_argument("affine_probe: map must be volume preserving");
    AffineProbe out;
    out.before = volume_product(K, mu, p, grid);
    out.after = volume_product(linear_map(A, K), mu, p, grid);
    return out;
}

Body random_hull_body(Rng& rng, int n_points) {
    NodeMatrix pts(n_points, 3);
    for (int i = 0; i < n_points; ++i) pts.row(i) = rng.unit_vector(3).transpose();
    Body K = polytope_from_vertices(pts);
    std::ostringstream label;
    label << "hull" << n_points;
    K.label = label.str();
    return K;
}

std::vector<ZonalMeasure> standard_measures(double mass, int n) {
    ZonalMeasure disc = ZonalMeasure::discrete_poles(mass, n);
    ZonalMeasure leb = ZonalMeasure::lebesgue(mass, n);
    return {disc, ZonalMeasure::equatorial(mass, n), leb,
            ZonalMeasure::mix({{0.5, disc}, {0.5, leb}})};
}

FuzzTheorem fuzz_theorem_from_string(const std::string& tag) {
    if (tag == "thm1") return FuzzTheorem::thm1;
    if (tag == "thm2") return FuzzTheorem::thm2;
    if (tag == "thm51") return FuzzTheorem::thm51;
    if (tag == "thm52") return FuzzTheorem::thm52;
    if (tag == "lemma41") return FuzzTheorem::lemma41;
    if (tag == "affine") return FuzzTheorem::affine;
    throw std::invalid_argument("unknown theorem tag: " + tag);
}

namespace {

std::string theorem_tag(FuzzTheorem t) {
    switch (t) {
        case FuzzTheorem::thm1: return "thm1";
        case FuzzTheorem::thm2: return "thm2";
        case FuzzTheorem::thm51: return "thm51";
        case FuzzTheorem::thm52: return "thm52";
        case FuzzTheorem::lemma41: return "lemma41";
        default: return "affine";
    }
}

Body trial_body(const FuzzConfig& cfg, int index) {
    // Every eighth trial runs the ball, the known equality case.
    if (index % 8 == 7) return make_ball(1.0);
    Rng rng(Rng::substream(cfg.seed, static_cast<std::uint64_t>(index)));
    return random_hull_body(rng, cfg.hull_points);
}

}  // namespace

VerificationReport fuzz(const FuzzConfig& cfg) {
    VerificationReport report;
    report.theorem = theorem_tag(cfg.theorem);
    report.seed = cfg.seed;
    report.grid_level = cfg.grid_level;
    report.tolerance = cfg.tolerance;
    if (cfg.measures.empty()) return report;

    const SphericalGrid grid = make_grid(3, cfg.grid_level);

    struct Job {
        int trial;
        int measure;
        int pindex;
    };
    std::vector<Job> jobs;
    const bool uses_p =
        cfg.theorem == FuzzTheorem::thm51 || cfg.theorem == FuzzTheorem::thm52 ||
        cfg.theorem == FuzzTheorem::lemma41;
    const std::vector<double> ps = uses_p ? cfg.ps : std::vector<double>{1.0};
    for (int i = 0; i < cfg.trials; ++i)
        for (int m = 0; m < static_cast<int>(cfg.measures.size()); ++m)
            for (int q = 0; q < static_cast<int>(ps.size()); ++q)
                jobs.push_back({i, m, q});

    report.trials.resize(jobs.size());

    // The affine suite probes one fixed base body, so its unmapped product
    // is computed once per measure.
    std::vector<double> affine_base(cfg.measures.size(), 0.0);
    if (cfg.theorem == FuzzTheorem::affine) {
        const Body B = make_ball(1.0);
        for (std::size_t m = 0; m < cfg.measures.size(); ++m)
            affine_base[m] = volume_product(B, cfg.measures[m], 1.0, grid);
    }

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(jobs.size()); ++j) {
        const Job& job = jobs[j];
        const double p = ps[job.pindex];
        Trial t;
        t.index = static_cast<int>(j);
        t.p = p;
        const ZonalMeasure& mu_raw = cfg.measures[job.measure];

        switch (cfg.theorem) {
            case FuzzTheorem::thm1: {
                const Body K = trial_body(cfg, job.trial);
                const ZonalMeasure mu = mu_raw.normalized(0.5);
                t.body = K.label;
                t.mu = mu.describe();
                t.lhs = volume_product(K, mu, 1.0, grid);
                t.bound = petty_bound(3, 1.0);
                t.margin = (t.bound - t.lhs) / t.bound;
                t.pass = t.lhs <= t.bound * (1.0 + cfg.tolerance);
                if (!K.is_polytope()) t.note = "equality";
                break;
            }
            case FuzzTheorem::thm2: {
                const Body K = trial_body(cfg, job.trial);
                const ZonalMeasure mu = mu_raw.normalized(0.5);
                t.body = K.label;
                t.mu = mu.describe();
                const Sandwich s = theorem2_sandwich(K, mu, grid, cfg.tolerance);
                t.lhs = s.mid;
                t.bound = s.right;
                t.margin = (s.right - s.mid) / s.right;
                t.pass = s.left_ok && s.right_ok;
                std::ostringstream note;
                note << "left=" << s.left;
                t.note = note.str();
                break;
            }
            case FuzzTheorem::thm51: {
                const Body K = trial_body(cfg, job.trial);
                const ZonalMeasure mu = mu_raw.normalized(a_np(3, p));
                t.body = K.label;
                t.mu = mu.describe();
                t.lhs = polar_volume(lp_zonal_valuation(K, mu, p, grid));
                t.bound = polar_volume(lp_projection_body(K, p, grid));
                t.margin = (t.bound - t.lhs) / t.bound;
                t.pass = t.lhs <= t.bound * (1.0 + cfg.tolerance);
                if (mu.kind() == MeasureKind::discrete_poles || !K.is_polytope())
                    t.note = "equality";
                break;
            }
            case FuzzTheorem::thm52: {
                const Body K = trial_body(cfg, job.trial);
                const ZonalMeasure mu = mu_raw.normalized(a_np(3, p));
                t.body = K.label;
                t.mu = mu.describe();
                t.lhs = volume_product(K, mu, p, grid);
                t.bound = petty_bound(3, p);
                t.margin = (t.bound - t.lhs) / t.bound;
                t.pass = t.lhs <= t.bound * (1.0 + cfg.tolerance);
                if (!K.is_polytope()) t.note = "equality";
                break;
            }
            case FuzzTheorem::lemma41: {
                const Body K = trial_body(cfg, job.trial);
                Rng rng(Rng::substream(cfg.seed ^ 0x5bd1e995u, static_cast<std::uint64_t>(j)));
                const Vector u = rng.unit_vector(3);
                t.body = K.label;
                t.mu = mu_raw.describe();
                const RotationAverageCheck c = rotation_average_check(K, mu_raw, p, u, grid);
                t.lhs = c.lhs;
                t.bound = c.rhs;
                t.margin = std::abs(c.lhs - c.rhs) / std::abs(c.lhs);
                t.pass = t.margin <= cfg.tolerance;
                break;
            }
            case FuzzTheorem::affine: {
                Rng rng(Rng::substream(cfg.seed, static_cast<std::uint64_t>(job.trial)));
                const Eigen::MatrixXd A = rng.special_linear(3);
                const Body K = make_ball(1.0);
                t.body = K.label;
                t.mu = mu_raw.describe();
                const double before = affine_base[job.measure];
                const double after = volume_product(linear_map(A, K), mu_raw, p, grid);
                t.lhs = after;
                t.bound = before;
                t.margin = (before - after) / before;
                if (mu_raw.kind() == MeasureKind::discrete_poles)
                    t.pass = std::abs(after - before) <= cfg.tolerance * before;
                else
                    t.pass = after <= before * (1.0 + cfg.tolerance);
                break;
            }
        }
        report.trials[j] = std::move(t);
    }
    return report;
}

namespace {

double ellipsoid_objective(const ZonalMeasure& mu, double p, const SphericalGrid& grid,
                           double fixed_volume, double la, double lb) {
    const double a = std::exp(la), b = std::exp(lb);
    const double c = fixed_volume / (a * b);
    Vector axes(3);
    axes << a, b, c;
    return volume_product(make_ellipsoid(axes), mu, p, grid);
}

}  // namespace

std::vector<ExtremizeStep> extremize(const ExtremizeConfig& cfg) {
    const SphericalGrid grid = make_grid(3, cfg.grid_level);
    std::vector<ExtremizeStep> traj;

    if (cfg.polytope_mode) {
        Rng rng(cfg.seed);
        Body K = random_hull_body(rng, cfg.polytope_points);
        double best = volume_product(K, cfg.mu, cfg.p, grid);
        Vector axes = Vector::Zero(3);
        traj.push_back({0, axes, best});
        NodeMatrix verts = std::get<Polytope>(K.shape).vertices;
        for (int step = 1; step <= cfg.max_steps; ++step) {
            const double sigma = 0.10 * std::pow(0.995, step);
            NodeMatrix trial = verts;
            const int v = static_cast<int>(rng.uniform() * trial.rows());
            for (int d = 0; d < 3; ++d) trial(v, d) += sigma * rng.normal();
            try {
                Body Kt = polytope_from_vertices(trial);
                const double val = volume_product(Kt, cfg.mu, cfg.p, grid);
                if (val > best) {
                    best = val;
                    verts = std::get<Polytope>(Kt.shape).vertices;
                    traj.push_back({step, axes, best});
                }
            } catch (const std::invalid_argument&) {
                continue;  // degenerate perturbation rejected
            }
        }
        return traj;
    }

    Vector start = cfg.start_semiaxes;
    if (start.size() == 0) {
        start.resize(3);
        start << 2.0, 1.0, 0.5;
    }
    const double fixed_volume = start.prod();

    // Nelder-Mead (maximization) on (log a, log b) at fixed a*b*c.
    using Point = Eigen::Vector2d;
    auto eval = [&](const Point& x) {
        return ellipsoid_objective(cfg.mu, cfg.p, grid, fixed_volume, x[0], x[1]);
    };
    auto axes_of = [&](const Point& x) {
        Vector axes(3);
        axes << std::exp(x[0]), std::exp(x[1]), fixed_volume / std::exp(x[0] + x[1]);
        return axes;
    };

    std::array<Point, 3> simplex = {Point(std::log(start[0]), std::log(start[1])),
                                    Point(std::log(start[0]) + 0.08, std::log(start[1])),
                                    Point(std::log(start[0]), std::log(start[1]) + 0.08)};
    std::array<double, 3> value{};
    int evals = 0;
    double best = -1.0;
    auto record = [&](const Point& x, double v) {
        ++evals;
        if (v > best) {
            best = v;
            traj.push_back({evals, axes_of(x), best});
        }
    };
    for (int i = 0; i < 3; ++i) {
        value[i] = eval(simplex[i]);
        record(simplex[i], value[i]);
    }

    while (evals < cfg.max_steps) {
        std::array<int, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return value[a] > value[b]; });
        const int hi = order[2], lo = order[0];
        const double diam = std::max((simplex[order[0]] - simplex[order[2]]).norm(),
                                     (simplex[order[1]] - simplex[order[2]]).norm());
        if (diam < 1e-8) break;
        const Point centroid = 0.5 * (simplex[order[0]] + simplex[order[1]]);
        const Point refl = centroid + (centroid - simplex[hi]);
        const double frefl = eval(refl);
        record(refl, frefl);
        if (frefl > value[lo]) {
            const Point exp_pt = centroid + 2.0 * (centroid - simplex[hi]);
            const double fexp = eval(exp_pt);
            record(exp_pt, fexp);
            simplex[hi] = fexp > frefl ? exp_pt : refl;
            value[hi] = std::max(fexp, frefl);
        } else if (frefl > value[order[1]]) {
            simplex[hi] = refl;
            value[hi] = frefl;
        } else {
            const Point contr = centroid + 0.5 * (simplex[hi] - centroid);
            const double fcontr = eval(contr);
            record(contr, fcontr);
            if (fcontr > value[hi]) {
                simplex[hi] = contr;
                value[hi] = fcontr;
            } else {
                for (int i : {order[1], order[2]}) {
                    simplex[i] = simplex[lo] + 0.5 * (simplex[i] - simplex[lo]);
                    value[i] = eval(simplex[i]);
                    record(simplex[i], value[i]);
                }
            }
        }
    }
    return traj;
}

}  // namespace isoval
