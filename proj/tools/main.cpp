#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "perimetry/approx.hpp"
#include "perimetry/boundary.hpp"
#include "perimetry/demo.hpp"
#include "perimetry/density.hpp"
#include "perimetry/geometry.hpp"
#include "perimetry/grid.hpp"
#include "perimetry/io.hpp"
#include "perimetry/pushout.hpp"
#include "perimetry/verify.hpp"

using namespace perimetry;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Config {
    std::string e_path, omega_path, candidate_path;
    std::string out_path, json_path, csv_path, svg_path;
    std::string f_spec, g_spec, g_mod = "isotropic";
    std::string mode = "approx";
    std::string which;
    double eps = 0, delta = 0, grid = 0;
    double margin = kUniverseMargin;
    double g_bound = 0;
    bool bounded = false;
    int resolution = 512;
    std::uint64_t seed = 0;
};

PolygonalSet load_geometry(const std::string& path) {
    return geometry_from_json(read_file(path));
}

// density specs accept one extra form over the registry: "user-grid:PATH"
// loads a sampled field from the flat binary format
Density load_density(const std::string& spec) {
    if (spec.rfind("user-grid:", 0) == 0)
        return user_grid_density(grid_field_from_bytes(read_file(spec.substr(10))));
    return parse_density(spec);
}

DirectionalDensity load_directional(const std::string& base, const std::string& mod) {
    if (base.rfind("user-grid:", 0) == 0) {
        DirectionalDensity g = parse_directional("const:1", mod);
        g.base = load_density(base);
        return g;
    }
    return parse_directional(base, mod);
}

void print_report(const ApproxReport& rep) {
    for (const ClauseVerdict& c : rep.clauses())
        std::printf("clause %s measured %s budget %s %s\n", c.name.c_str(),
                    num(c.measured).c_str(), num(c.budget).c_str(),
                    c.ok() ? "ok" : "FAIL");
    std::printf("verdict %s\n", rep.pass() ? "pass" : "fail");
}

int write_pipeline_artifacts(const Config& cfg, const Universe& u, const PolygonalSet& e,
                             const PolygonalSet& omega, const PolygonalSet& f,
                             const ApproxReport& rep, const PushoutTrace* trace) {
    if (!cfg.out_path.empty()) write_file_atomic(cfg.out_path, geometry_to_json(f));
    if (!cfg.json_path.empty()) write_file_atomic(cfg.json_path, report_to_json(rep));
    if (!cfg.csv_path.empty()) {
        std::string csv = report_to_csv(rep);
        if (trace) csv += trace->csv();
        write_file_atomic(cfg.csv_path, csv);
    }
    if (!cfg.svg_path.empty()) write_file_atomic(cfg.svg_path, svg_figure(u, &e, &omega, &f));
    print_report(rep);
    return rep.pass() ? 0 : 1;
}

int run_measure(const Config& cfg) {
    const PolygonalSet e = load_geometry(cfg.e_path);
    std::vector<const PolygonalSet*> sets{&e};
    PolygonalSet omega;
    const bool has_omega = !cfg.omega_path.empty();
    if (has_omega) {
        omega = load_geometry(cfg.omega_path);
        sets.push_back(&omega);
    }
    const Universe u = Universe::around(sets, cfg.margin);

    std::string lines;
    lines += "area " + num(area(e)) + "\n";
    lines += "perimeter " + num(perimeter(e)) + "\n";
    if (has_omega) {
        const CommonBoundary cb = exact_common_boundary(e, omega);
        lines += "relative_perimeter " + num(relative_perimeter(e, omega)) + "\n";
        lines += "gamma_plus " + num(cb.plus_length()) + "\n";
        lines += "gamma_minus " + num(cb.minus_length()) + "\n";
    }
    if (!cfg.f_spec.empty())
        lines += "area_f " + num(weighted_area(e, load_density(cfg.f_spec))) + "\n";
    if (!cfg.g_spec.empty()) {
        const DirectionalDensity g = load_directional(cfg.g_spec, cfg.g_mod);
        lines += "perimeter_g " + num(weighted_perimeter(e, g)) + "\n";
        if (has_omega)
            lines += "relative_perimeter_g " + num(weighted_perimeter(e, g, &omega)) + "\n";
    }
    std::fputs(lines.c_str(), stdout);

    if (!cfg.json_path.empty()) {
        std::string json = "{";
        bool first = true;
        std::istringstream in(lines);
        std::string key, value;
        while (in >> key >> value) {
            json += std::string(first ? "" : ",") + "\"" + key + "\":" + value;
            first = false;
        }
        json += "}\n";
        write_file_atomic(cfg.json_path, json);
    }
    if (!cfg.svg_path.empty())
        write_file_atomic(cfg.svg_path,
                          svg_figure(u, &e, has_omega ? &omega : nullptr, nullptr));
    return 0;
}

int run_remove_boundary(const Config& cfg) {
    const PolygonalSet e = load_geometry(cfg.e_path);
    const PolygonalSet omega = load_geometry(cfg.omega_path);
    const Universe u = Universe::around({&e, &omega}, cfg.margin);
    PushoutTrace trace;
    const PolygonalSet f = remove_common_boundary(e, omega, cfg.eps, u, &trace);
    ApproxReport rep = check_clauses(e, f, omega, cfg.eps, u, CheckMode::Removal);
    rep.passes = static_cast<int>(trace.passes.size());
    return write_pipeline_artifacts(cfg, u, e, omega, f, rep, &trace);
}

// single-shot pipeline for explicit --delta / --grid: phase 1, one mollify at
// the requested resolution, the perimeter-matching level, no refinement loop
int run_single_shot(const Config& cfg, const PolygonalSet& e, const PolygonalSet& omega,
                    const Universe& u, CheckMode mode, const Density* f,
                    const DirectionalDensity* g) {
    PushoutTrace trace;
    const PolygonalSet detached =
        remove_common_boundary(e, omega, cfg.eps / 3, u, &trace);
    const double delta = cfg.delta > 0 ? cfg.delta : 5 * cfg.grid;
    const double h = cfg.grid > 0 ? cfg.grid : delta / 5;
    const GridField phi = mollify(detached, delta, h);
    const double level = choose_level(phi, detached);
    const PolygonalSet cand = detach(extract_level_set(phi, level), phi, level, omega, u);
    ApproxReport rep = check_clauses(e, cand, omega, cfg.eps, u, mode, f, g);
    rep.passes = static_cast<int>(trace.passes.size());
    std::printf("delta %s\nlevel %s\n", num(delta).c_str(), num(level).c_str());
    return write_pipeline_artifacts(cfg, u, e, omega, cand, rep, nullptr);
}

int run_approx(const Config& cfg, bool weighted) {
    const PolygonalSet e = load_geometry(cfg.e_path);
    const PolygonalSet omega = load_geometry(cfg.omega_path);
    const Universe u = Universe::around({&e, &omega}, cfg.margin);

    Density f;
    DirectionalDensity g;
    if (weighted) {
        f = load_density(cfg.f_spec.empty() ? "const:1" : cfg.f_spec);
        g = load_directional(cfg.g_spec.empty() ? "const:1" : cfg.g_spec, cfg.g_mod);
    }

    if (cfg.delta > 0 || cfg.grid > 0) {
        if (cfg.bounded)
            throw InvalidArgument("--bounded needs the adaptive pipeline; drop --delta/--grid");
        return run_single_shot(cfg, e, omega, u, weighted ? CheckMode::Weighted : CheckMode::Approx,
                               weighted ? &f : nullptr, weighted ? &g : nullptr);
    }

    ApproxResult best;
    ApproxResult res;
    bool exhausted = false;
    try {
        if (weighted) {
            WeightedOptions wopts;
            wopts.want_bounded = cfg.bounded;
            wopts.g_bound = cfg.g_bound;
            res = approximate_weighted(e, omega, f, g, cfg.eps, u, wopts, &best);
        } else {
            res = approximate_in_container(e, omega, cfg.eps, u, &best);
        }
    } catch (const BudgetExhausted& err) {
        std::fprintf(stderr, "budget exhausted: %s\n", err.what());
        res = best;
        exhausted = true;
    }
    if (!exhausted) {
        std::printf("delta %s\nlevel %s\n", num(res.delta).c_str(), num(res.level).c_str());
        if (res.radius > 0) std::printf("radius %s\n", num(res.radius).c_str());
    }
    return write_pipeline_artifacts(cfg, u, e, omega, res.f, res.report, &res.trace);
}

int run_verify(const Config& cfg) {
    const PolygonalSet e = load_geometry(cfg.e_path);
    const PolygonalSet cand = load_geometry(cfg.candidate_path);
    const PolygonalSet omega = load_geometry(cfg.omega_path);
    const Universe u = Universe::around({&e, &cand, &omega}, cfg.margin);

    CheckMode mode;
    if (cfg.mode == "removal") mode = CheckMode::Removal;
    else if (cfg.mode == "approx") mode = CheckMode::Approx;
    else if (cfg.mode == "weighted") mode = CheckMode::Weighted;
    else throw InvalidArgument("mode must be removal, approx, or weighted");

    Density f;
    DirectionalDensity g;
    if (mode == CheckMode::Weighted) {
        f = load_density(cfg.f_spec.empty() ? "const:1" : cfg.f_spec);
        g = load_directional(cfg.g_spec.empty() ? "const:1" : cfg.g_spec, cfg.g_mod);
    }
    const ApproxReport rep =
        check_clauses(e, cand, omega, cfg.eps, u, mode,
                      mode == CheckMode::Weighted ? &f : nullptr,
                      mode == CheckMode::Weighted ? &g : nullptr);
    return write_pipeline_artifacts(cfg, u, e, omega, cand, rep, nullptr);
}

int run_demo(const Config& cfg) {
    const DemoResult r = cfg.which == "example51" ? demo_example51() : demo_example52();
    std::fputs(r.csv.c_str(), stdout);
    std::printf("verdict %s\n", r.pass ? "pass" : "fail");
    if (!cfg.csv_path.empty()) write_file_atomic(cfg.csv_path, r.csv);
    if (!cfg.svg_path.empty()) write_file_atomic(cfg.svg_path, r.svg);
    return r.pass ? 0 : 1;
}

int run_oracle(const Config& cfg) {
    const PolygonalSet e = load_geometry(cfg.e_path);
    const double a = area(e), p = perimeter(e);
    const double raster = raster_area_oracle(e, cfg.resolution);
    const double a_tol = p / cfg.resolution;
    const CroftonEstimate cr = crofton_perimeter_oracle(e, 20000, cfg.seed);
    const double p_tol = 3 * cr.stderr_;

    std::string lines;
    lines += "area " + num(a) + "\n";
    lines += "raster_area " + num(raster) + "\n";
    lines += "area_tolerance " + num(a_tol) + "\n";
    lines += "perimeter " + num(p) + "\n";
    lines += "crofton_perimeter " + num(cr.estimate) + "\n";
    lines += "crofton_tolerance " + num(p_tol) + "\n";
    const bool ok = std::abs(raster - a) <= a_tol && std::abs(cr.estimate - p) <= p_tol;
    lines += std::string("verdict ") + (ok ? "pass" : "fail") + "\n";
    std::fputs(lines.c_str(), stdout);
    if (!cfg.json_path.empty()) {
        std::string json = "{";
        bool first = true;
        std::istringstream in(lines);
        std::string key, value;
        while (in >> key >> value) {
            const bool quoted = key == "verdict";
            json += std::string(first ? "" : ",") + "\"" + key +
                    "\":" + (quoted ? "\"" + value + "\"" : value);
            first = false;
        }
        json += "}\n";
        write_file_atomic(cfg.json_path, json);
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar perimeter toolkit: measure sets, detach shared container "
                 "boundary, approximate with matched perimeters, verify reports"};
    app.require_subcommand(1);
    Config cfg;

    auto add_universe = [&](CLI::App* sub) {
        sub->add_option("--universe-margin", cfg.margin,
                        "bounding-frame margin factor around the inputs");
    };
    auto add_outputs = [&](CLI::App* sub) {
        sub->add_option("--json", cfg.json_path, "write report JSON here");
        sub->add_option("--csv", cfg.csv_path, "write report CSV here");
        sub->add_option("--svg", cfg.svg_path, "write figure SVG here");
    };
    auto add_densities = [&](CLI::App* sub) {
        sub->add_option("--f", cfg.f_spec, "volume density spec, e.g. const:1");
        sub->add_option("--g", cfg.g_spec, "perimeter density spec, e.g. radial-step:1,1,2");
        sub->add_option("--g-modulation", cfg.g_mod,
                        "direction gauge: isotropic, ellipse:a,b, concave-test");
    };

    CLI::App* measure = app.add_subcommand("measure", "print measures of a set");
    measure->add_option("--e", cfg.e_path, "geometry JSON")->required();
    measure->add_option("--omega", cfg.omega_path, "container geometry JSON");
    add_densities(measure);
    add_universe(measure);
    measure->add_option("--json", cfg.json_path, "write the measures as JSON here");
    measure->add_option("--svg", cfg.svg_path, "write figure SVG here");

    CLI::App* remove = app.add_subcommand(
        "remove-boundary", "rebuild the set outside the container so no shared boundary remains");
    remove->add_option("--e", cfg.e_path, "geometry JSON")->required();
    remove->add_option("--omega", cfg.omega_path, "container geometry JSON")->required();
    remove->add_option("--eps", cfg.eps, "perimeter and volume budget")->required();
    remove->add_option("--out", cfg.out_path, "write result geometry JSON here");
    add_outputs(remove);
    add_universe(remove);

    CLI::App* approx = app.add_subcommand(
        "approx", "approximate with matched total and in-container perimeter");
    approx->add_option("--e", cfg.e_path, "geometry JSON")->required();
    approx->add_option("--omega", cfg.omega_path, "container geometry JSON")->required();
    approx->add_option("--eps", cfg.eps, "approximation budget")->required();
    approx->add_option("--delta", cfg.delta, "mollifier radius (single shot, no refinement)");
    approx->add_option("--grid", cfg.grid, "grid spacing (single shot, no refinement)");
    approx->add_option("--out", cfg.out_path, "write result geometry JSON here");
    add_outputs(approx);
    add_universe(approx);

    CLI::App* wapprox = app.add_subcommand(
        "approx-weighted", "approximation measured in density-weighted volume and perimeter");
    wapprox->add_option("--e", cfg.e_path, "geometry JSON")->required();
    wapprox->add_option("--omega", cfg.omega_path, "container geometry JSON")->required();
    wapprox->add_option("--eps", cfg.eps, "approximation budget")->required();
    add_densities(wapprox);
    wapprox->add_option("--delta", cfg.delta, "mollifier radius (single shot, no refinement)");
    wapprox->add_option("--grid", cfg.grid, "grid spacing (single shot, no refinement)");
    wapprox->add_flag("--bounded", cfg.bounded, "cut to a disk before approximating");
    wapprox->add_option("--g-bound", cfg.g_bound, "m with g <= m*f, required with --bounded");
    wapprox->add_option("--out", cfg.out_path, "write result geometry JSON here");
    add_outputs(wapprox);
    add_universe(wapprox);

    CLI::App* verify = app.add_subcommand("verify", "re-measure a candidate against a contract");
    verify->add_option("--e", cfg.e_path, "geometry JSON")->required();
    verify->add_option("--candidate", cfg.candidate_path, "candidate geometry JSON")->required();
    verify->add_option("--omega", cfg.omega_path, "container geometry JSON")->required();
    verify->add_option("--eps", cfg.eps, "budget the candidate claims")->required();
    verify->add_option("--mode", cfg.mode, "removal, approx, or weighted");
    add_densities(verify);
    add_outputs(verify);
    add_universe(verify);

    CLI::App* demo = app.add_subcommand("demo", "built-in counterexample sweeps");
    demo->add_option("which", cfg.which, "example51 or example52")
        ->required()
        ->check(CLI::IsMember({"example51", "example52"}));
    demo->add_option("--csv", cfg.csv_path, "write the sweep table here");
    demo->add_option("--svg", cfg.svg_path, "write figure SVG here");

    CLI::App* oracle = app.add_subcommand(
        "oracle", "check area and perimeter against raster and random-line estimates");
    oracle->add_option("--e", cfg.e_path, "geometry JSON")->required();
    oracle->add_option("--seed", cfg.seed, "random-line seed");
    oracle->add_option("--grid", cfg.resolution, "raster resolution in pixels");
    oracle->add_option("--json", cfg.json_path, "write the estimates as JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(measure)) return run_measure(cfg);
        if (app.got_subcommand(remove)) return run_remove_boundary(cfg);
        if (app.got_subcommand(approx)) return run_approx(cfg, false);
        if (app.got_subcommand(wapprox)) return run_approx(cfg, true);
        if (app.got_subcommand(verify)) return run_verify(cfg);
        if (app.got_subcommand(demo)) return run_demo(cfg);
        if (app.got_subcommand(oracle)) return run_oracle(cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
