// Command-line front end: computes the projection-body family of a body,
// verifies the inequality suites, runs the Sobolev checks, and drives the
// extremizer. Reports are JSON (schema "isoval/1") or CSV.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoval/constants.hpp"
#include "isoval/inequalities.hpp"
#include "isoval/sobolev.hpp"

using namespace isoval;
using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

Body parse_body(const std::string& spec) {
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty body spec");
    if (parts[0] == "cube") return make_cube(parts.size() > 1 ? std::stod(parts[1]) : 1.0);
    if (parts[0] == "simplex") return make_simplex();
    if (parts[0] == "ball") {
        if (parts.size() < 2) throw std::invalid_argument("ball spec: ball:r");
        return make_ball(std::stod(parts[1]));
    }
    if (parts[0] == "ellipsoid") {
        if (parts.size() < 2) throw std::invalid_argument("ellipsoid spec: ellipsoid:a,b,c");
        const std::vector<std::string> axes = split(parts[1], ',');
        if (axes.size() != 3) throw std::invalid_argument("ellipsoid spec needs 3 semiaxes");
        Vector a(3);
        for (int i = 0; i < 3; ++i) a[i] = std::stod(axes[i]);
        return make_ellipsoid(a);
    }
    if (parts[0] == "hull") {
        if (parts.size() < 2 || parts[1].empty() || parts[1][0] != '@')
            throw std::invalid_argument("hull spec: hull:@vertices.json|@mesh.off");
        const std::string path = parts[1].substr(1);
        if (path.size() > 4 && path.substr(path.size() - 4) == ".off")
            return body_from_off_file(path);
        return body_from_json_file(path);
    }
    throw std::invalid_argument("unknown body kind: " + parts[0]);
}

ZonalMeasure measure_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind");
    const double mass = j.value("mass", 1.0);
    if (kind == "discrete") return ZonalMeasure::discrete_poles(mass);
    if (kind == "equatorial") return ZonalMeasure::equatorial(mass);
    if (kind == "lebesgue") return ZonalMeasure::lebesgue(mass);
    if (kind == "custom") {
        std::vector<std::pair<double, double>> samples;
        for (const auto& row : j.at("density_samples"))
            samples.emplace_back(row[0].get<double>(), row[1].get<double>());
        std::sort(samples.begin(), samples.end());
        std::vector<double> knots;
        for (auto& [t, g] : samples) knots.push_back(t);
        auto g = [samples](double t) {
            if (t <= samples.front().first) return samples.front().second;
            if (t >= samples.back().first) return samples.back().second;
            for (std::size_t i = 1; i < samples.size(); ++i) {
                if (t <= samples[i].first) {
                    const double w =
                        (t - samples[i - 1].first) / (samples[i].first - samples[i - 1].first);
                    return (1.0 - w) * samples[i - 1].second + w * samples[i].second;
                }
            }
            return samples.back().second;
        };
        return ZonalMeasure::from_density(g, 3, knots).normalized(mass);
    }
    throw std::invalid_argument("unknown measure kind: " + kind);
}

ZonalMeasure parse_measure(const std::string& spec) {
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty measure spec");
    const std::string& kind = parts[0];
    const double mass = parts.size() > 1 ? std::stod(parts[1]) : 1.0;
    if (kind == "discrete") return ZonalMeasure::discrete_poles(mass);
    if (kind == "equatorial") return ZonalMeasure::equatorial(mass);
    if (kind == "lebesgue") return ZonalMeasure::lebesgue(mass);
    if (kind == "blend") {
        double wd = 0.5, we = 0.0, wl = 0.5;
        if (parts.size() > 2) {
            const std::vector<std::string> ws = split(parts[2], ',');
            if (ws.size() != 3) throw std::invalid_argument("blend spec: blend:mass:wd,we,wl");
            wd = std::stod(ws[0]);
            we = std::stod(ws[1]);
            wl = std::stod(ws[2]);
        }
        std::vector<std::pair<double, ZonalMeasure>> comps;
        if (wd > 0) comps.emplace_back(wd, ZonalMeasure::discrete_poles(1.0));
        if (we > 0) comps.emplace_back(we, ZonalMeasure::equatorial(1.0));
        if (wl > 0) comps.emplace_back(wl, ZonalMeasure::lebesgue(1.0));
        return ZonalMeasure::mix(comps).normalized(mass);
    }
    if (kind == "custom") {
        if (parts.size() < 3 || parts[2].empty() || parts[2][0] != '@')
            throw std::invalid_argument("custom spec: custom:mass:@file.json");
        std::ifstream in(parts[2].substr(1));
        if (!in) throw std::invalid_argument("cannot open " + parts[2].substr(1));
        nlohmann::json j;
        in >> j;
        j["mass"] = mass;
        return measure_from_json(j);
    }
    throw std::invalid_argument("unknown measure kind: " + kind);
}

int resolve_grid_level(int cli_level) {
    if (cli_level > 0) return cli_level;
    if (const char* env = std::getenv("ISOVAL_GRID_LEVEL")) {
        const int lvl = std::atoi(env);
        if (lvl > 0) return lvl;
    }
    return kDefaultGridLevel;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + out_path);
    out << text;
}

ordered_json field_stats(const SupportField& f) {
    ordered_json j;
    j["min"] = f.values.minCoeff();
    j["max"] = f.values.maxCoeff();
    j["mean"] = f.values.mean();
    j["polar_volume"] = polar_volume(f);
    j["mean_width"] = mean_width(f);
    return j;
}

std::string field_csv(const SupportField& f) {
    std::ostringstream out;
    out << "u1,u2,u3,w,h\n";
    for (Eigen::Index i = 0; i < f.grid.size(); ++i) {
        out << format_double(f.grid.nodes(i, 0)) << ',' << format_double(f.grid.nodes(i, 1))
            << ',' << format_double(f.grid.nodes(i, 2)) << ','
            << format_double(f.grid.weights[i]) << ',' << format_double(f.values[i]) << '\n';
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zonal-measure Minkowski valuations and their isoperimetric inequalities"};
    app.require_subcommand(1);
    app.fallthrough();

    int grid_level = 0;
    int jobs = 0;
    std::string out_path;
    std::string format = "json";
    app.add_option("--grid-level", grid_level, "spherical grid level (default 2 = 64x128)");
    app.add_option("--jobs", jobs, "cap worker threads (output is identical for any value)");
    app.add_option("--out", out_path, "write the report to this file instead of stdout");
    app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_grid = app.add_subcommand("grid", "export the quadrature grid as CSV");
    cmd_grid->fallthrough();
    int grid_n = 3;
    cmd_grid->add_option("--n", grid_n, "sphere dimension parameter n (grid on S^{n-1})");

    auto* cmd_compute =
        app.add_subcommand("compute", "projection bodies and zonal valuations of one body");
    cmd_compute->fallthrough();
    std::string body_spec = "cube", measure_spec = "discrete:0.5";
    double p = 1.0;
    cmd_compute->add_option("--body", body_spec,
                            "cube | ball:r | ellipsoid:a,b,c | hull:@file | simplex");
    cmd_compute->add_option("--measure", measure_spec,
                            "discrete|equatorial|lebesgue|blend|custom :mass[:params]");
    cmd_compute->add_option("--p", p, "L_p exponent, p >= 1");

    auto* cmd_verify = app.add_subcommand("verify", "run a theorem verification suite");
    cmd_verify->fallthrough();
    std::string theorem = "thm2";
    int trials = 100;
    std::uint64_t seed = 42;
    std::string v_body, v_measure;
    std::vector<double> v_ps;
    cmd_verify->add_option("theorem", theorem, "thm1|thm2|thm51|thm52|lemma41|affine")
        ->required();
    cmd_verify->add_option("--trials", trials, "number of random trials");
    cmd_verify->add_option("--seed", seed, "trial seed");
    cmd_verify->add_option("--body", v_body, "check a single body instead of random trials");
    cmd_verify->add_option("--measure", v_measure, "restrict to a single measure");
    cmd_verify->add_option("--p", v_ps, "L_p exponents for thm51/thm52/lemma41");

    auto* cmd_sobolev = app.add_subcommand("sobolev", "Sobolev-type inequality checks");
    cmd_sobolev->fallthrough();
    std::string sob_mode = "char";
    std::string sob_body = "ball:1", sob_measure = "discrete:0.5", profile = "aubin-talenti";
    std::string input_raster;
    double sob_p = 2.0;
    int samples = 96;
    double half_width = 16.0;
    cmd_sobolev->add_option("mode", sob_mode, "char (f = 1_K) | grid (sampled W^{1,p} function)")
        ->required();
    cmd_sobolev->add_option("--body", sob_body, "body for char mode");
    cmd_sobolev->add_option("--measure", sob_measure, "zonal measure");
    cmd_sobolev->add_option("--p", sob_p, "exponent for grid mode, 1 < p < 3");
    cmd_sobolev->add_option("--profile", profile, "aubin-talenti | gaussian | bump");
    cmd_sobolev->add_option("--input", input_raster, "raster file instead of a named profile");
    cmd_sobolev->add_option("--samples", samples, "profile samples per axis");
    cmd_sobolev->add_option("--half-width", half_width, "profile box half-width");

    auto* cmd_ext =
        app.add_subcommand("extremize", "derivative-free ascent of the volume product");
    cmd_ext->fallthrough();
    std::string ext_measure = "equatorial:0.5", start_spec = "ellipsoid:2,1,0.5";
    double ext_p = 1.0;
    int steps = 200;
    std::uint64_t ext_seed = 1;
    bool polytope_mode = false;
    cmd_ext->add_option("--measure", ext_measure, "zonal measure");
    cmd_ext->add_option("--p", ext_p, "L_p exponent");
    cmd_ext->add_option("--start", start_spec, "ellipsoid:a,b,c start point");
    cmd_ext->add_option("--steps", steps, "objective evaluation budget");
    cmd_ext->add_option("--seed", ext_seed, "seed (polytope mode)");
    cmd_ext->add_flag("--polytope", polytope_mode, "perturb random hulls instead of ellipsoids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (jobs > 0) omp_set_num_threads(jobs);
        const int level = resolve_grid_level(grid_level);

        if (*cmd_grid) {
            const SphericalGrid grid = make_grid(grid_n, level);
            std::ostringstream csv;
            for (int d = 0; d < grid.dim; ++d) csv << "u" << d + 1 << ',';
            csv << "w\n";
            for (Eigen::Index i = 0; i < grid.size(); ++i) {
                for (int d = 0; d < grid.dim; ++d) csv << format_double(grid.nodes(i, d)) << ',';
                csv << format_double(grid.weights[i]) << '\n';
            }
            emit(csv.str(), out_path);
            return 0;
        }

        if (*cmd_compute) {
            const SphericalGrid grid = make_grid(3, level);
            const Body K = parse_body(body_spec);
            const ZonalMeasure mu = parse_measure(measure_spec);
            SupportField pi_f = projection_body(K, grid);
            SupportField pip_f = lp_projection_body(K, p, grid);
            SupportField phi_f = zonal_valuation(K, mu, grid);
            SupportField phip_f = lp_zonal_valuation(K, mu, p, grid);
            if (format == "csv") {
                emit(field_csv(phip_f), out_path);
                return 0;
            }
            ordered_json j;
            j["schema"] = "isoval/1";
            j["command"] = "compute";
            j["body"] = body_spec;
            j["measure"] = measure_spec;
            j["p"] = p;
            j["grid_level"] = level;
            j["volume"] = volume(K);
            j["perimeter"] = perimeter(K, grid);
            j["pi"] = field_stats(pi_f);
            j["pi_p"] = field_stats(pip_f);
            j["phi"] = field_stats(phi_f);
            j["phi_p"] = field_stats(phip_f);
            j["polar_volume"] = polar_volume(phi_f);
            j["volume_product"] = volume_product(K, mu, p, grid);
            emit(j.dump(2) + "\n", out_path);
            return 0;
        }

        if (*cmd_verify) {
            FuzzConfig cfg;
            cfg.theorem = fuzz_theorem_from_string(theorem);
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.grid_level = level;
            const bool lp_family =
                cfg.theorem == FuzzTheorem::thm51 || cfg.theorem == FuzzTheorem::thm52;
            if (!v_ps.empty())
                cfg.ps = v_ps;
            else if (lp_family || cfg.theorem == FuzzTheorem::lemma41)
                cfg.ps = {1.0, 1.5, 2.0};
            if (!v_measure.empty())
                cfg.measures = {parse_measure(v_measure)};
            else
                cfg.measures = standard_measures(lp_family ? 1.0 : 0.5);

            VerificationReport rep;
            if (!v_body.empty()) {
                // single-body check instead of the random-trial sweep
                const SphericalGrid grid = make_grid(3, level);
                const Body K = parse_body(v_body);
                rep.theorem = theorem;
                rep.seed = seed;
                rep.grid_level = level;
                rep.tolerance = cfg.tolerance;
                int index = 0;
                for (const ZonalMeasure& mu_raw : cfg.measures) {
                    for (double pp : cfg.ps) {
                        Trial t;
                        t.index = index++;
                        t.body = v_body;
                        t.p = pp;
                        if (cfg.theorem == FuzzTheorem::thm2) {
                            const ZonalMeasure mu = mu_raw.normalized(0.5);
                            t.mu = mu.describe();
                            Sandwich s = theorem2_sandwich(K, mu, grid, cfg.tolerance);
                            t.lhs = s.mid;
                            t.bound = s.right;
                            t.margin = (s.right - s.mid) / s.right;
                            t.pass = s.left_ok && s.right_ok;
                        } else {
                            const double mass = cfg.theorem == FuzzTheorem::thm1 ||
                                                        cfg.theorem == FuzzTheorem::affine
                                                    ? 0.5
                                                    : a_np(3, pp);
                            const ZonalMeasure mu = mu_raw.normalized(mass);
                            t.mu = mu.describe();
                            t.lhs = volume_product(K, mu, pp, grid);
                            t.bound = petty_bound(3, pp);
                            t.margin = (t.bound - t.lhs) / t.bound;
                            t.pass = t.lhs <= t.bound * (1.0 + cfg.tolerance);
                            if (t.margin < 1e-6) t.note = "equality case";
                        }
                        rep.trials.push_back(std::move(t));
                    }
                }
            } else {
                rep = fuzz(cfg);
            }
            emit(format == "csv" ? rep.to_csv() : rep.to_json(), out_path);
            return rep.violations() == 0 ? 0 : 1;
        }

        if (*cmd_sobolev) {
            const SphericalGrid grid = make_grid(3, level);
            ordered_json j;
            j["schema"] = "isoval/1";
            j["command"] = "sobolev";
            j["mode"] = sob_mode;
            j["grid_level"] = level;
            if (sob_mode == "char") {
                const Body K = parse_body(sob_body);
                ZonalMeasure mu = parse_measure(sob_measure);
                // Pole measures are reported in the Sobolev-Zhang convention
                // (mass 1), so `--measure discrete:0.5` prints the classical
                // (2 pi^2)^{1/3} equality value for the unit ball.
                if (mu.kind() == MeasureKind::discrete_poles) mu = mu.normalized(1.0);
                BvCharLhs lhs = bv_char_lhs(K, mu, grid);
                const double f_norm = std::pow(volume(K), 2.0 / 3.0);
                const double rhs = theorem3_rhs(mu.total_mass(), 3, f_norm);
                j["body"] = sob_body;
                j["measure"] = mu.describe();
                j["lhs"] = lhs.direct;
                j["lhs_via_polar"] = lhs.via_polar;
                j["rhs"] = rhs;
                j["margin"] = (lhs.direct - rhs) / rhs;
                emit(j.dump(2) + "\n", out_path);
                return lhs.direct >= rhs * (1.0 - 1e-6) ? 0 : 1;
            }
            if (sob_mode == "grid") {
                GridFunction f = input_raster.empty()
                                     ? make_profile(profile, samples, half_width)
                                     : read_grid_function(input_raster);
                const ZonalMeasure mu = parse_measure(sob_measure);
                SobolevCheck c = lp_sobolev_check(f, mu, sob_p, grid);
                j["profile"] = input_raster.empty() ? profile : input_raster;
                j["measure"] = sob_measure;
                j["p"] = sob_p;
                j["lhs"] = c.lhs;
                j["rhs"] = c.rhs;
                j["ratio"] = c.lhs / c.rhs;
                j["margin"] = (c.lhs - c.rhs) / c.rhs;
                emit(j.dump(2) + "\n", out_path);
                return 0;
            }
            throw std::invalid_argument("sobolev mode must be char or grid");
        }

        if (*cmd_ext) {
            ExtremizeConfig cfg;
            cfg.mu = parse_measure(ext_measure);
            cfg.p = ext_p;
            cfg.max_steps = steps;
            cfg.seed = ext_seed;
            cfg.grid_level = grid_level > 0 ? grid_level : 1;
            cfg.polytope_mode = polytope_mode;
            if (!polytope_mode) {
                Body start = parse_body(start_spec);
                if (auto* e = std::get_if<Ellipsoid>(&start.shape))
                    cfg.start_semiaxes = e->semiaxes;
                else if (auto* b = std::get_if<Ball>(&start.shape))
                    cfg.start_semiaxes = Vector::Constant(3, b->radius);
                else
                    throw std::invalid_argument("extremize start must be an ellipsoid or ball");
            }
            std::vector<ExtremizeStep> traj = extremize(cfg);
            std::ostringstream csv;
            csv << "step,a,b,c,product\n";
            for (const ExtremizeStep& st : traj) {
                csv << st.step << ',';
                if (st.semiaxes.size() == 3)
                    csv << format_double(st.semiaxes[0]) << ',' << format_double(st.semiaxes[1])
                        << ',' << format_double(st.semiaxes[2]) << ',';
                else
                    csv << ",,,";
                csv << format_double(st.product) << '\n';
            }
            emit(csv.str(), out_path);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
