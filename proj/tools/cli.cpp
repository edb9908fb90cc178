#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lumenbell/lumenbell.hpp"

namespace lumenbell::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string state = "hr_vl";
    std::optional<int> grid_n;
    double half_extent = 5.0;
    bool ideal = false;
    bool simulate = false;
    std::string engine = "analytic";
    double theta_mode = 0.0;
    double start = 0.0;
    double stop = 180.0;
    double step = 2.5;
    double purity = 1.0;
    bool strict_triple = false;
    double setting_step = 22.5;
    std::string out;
    std::string bench_file;
    std::optional<double> theta;
    std::vector<std::string> assignments;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

GridSpec grid_from(const RunConfig& cfg) {
    GridSpec g;
    if (cfg.grid_n) {
        g.n = *cfg.grid_n;
    } else if (const char* env = std::getenv("LUMENBELL_GRID_N"); env && *env) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (*end != '\0' || n <= 0 || n > 1 << 14) {
            throw UsageError(std::string("LUMENBELL_GRID_N is not a valid grid size: ") + env);
        }
        g.n = static_cast<int>(n);
    }
    g.half_extent = cfg.half_extent;
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return g;
}

BellKind state_from(const RunConfig& cfg) {
    if (auto k = parse_bell_kind(cfg.state)) return *k;
    throw UsageError("unknown state '" + cfg.state + "' (hh_vv, hv_vh, hr_vl, scalar_hr)");
}

fs::path prepare_dir(const std::string& dir) {
    const fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec || !fs::is_directory(p)) throw UsageError("cannot use output directory '" + p.string() + "'");
    return p;
}

void write_map(const fs::path& dir, const std::string& stem, const std::vector<double>& values,
               int n, ColorScale scale) {
    try {
        write_matrix(dir / (stem + ".txt"), values, n);
        write_ppm(dir / (stem + ".ppm"), values, n, scale);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

Source make_source(const RunConfig& cfg, const PureState& psi) {
    if (cfg.engine == "field") return FieldSource{synthesize(psi, grid_from(cfg))};
    return AnalyticSource{depolarize(psi, cfg.purity)};
}

void print_report(std::ostream& out, const char* label, const ViolationReport& rep) {
    out << label << ": " << to_string(rep.verdict) << ", max |S| = " << fmt("%.9g", rep.max_abs_s);
    out << " at";
    for (double a : rep.arg_deg) out << ' ' << fmt("%.12g", a);
    out << " deg (hidden-variable bound 2, Tsirelson " << fmt("%.9g", ViolationReport::tsirelson_bound)
        << ", tolerance " << fmt("%.0e", rep.tolerance) << ")\n";
    if (rep.exceeds_tsirelson) {
        out << "note: " << label
            << " exceeds the Tsirelson bound; the single-parameter form is not a valid "
               "four-setting CHSH value for this state\n";
    }
}

// ---------------------------------------------------------------------------

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
    const BellKind kind = state_from(cfg);
    const GridSpec grid = grid_from(cfg);
    if (cfg.simulate && kind != BellKind::hr_vl) {
        throw UsageError("--simulate is only available for --state hr_vl (the Sagnac generator)");
    }
    const bool simulated = cfg.simulate;
    const VectorField field =
        simulated ? generate_vector_beam(grid, false) : synthesize(bell_state(kind), grid);

    const fs::path dir = prepare_dir(cfg.out);
    const StokesMaps maps = stokes_maps(field);
    write_map(dir, "intensity", maps.s0, grid.n, ColorScale::positive);
    write_map(dir, "s1", maps.s1, grid.n, ColorScale::symmetric);
    write_map(dir, "s2", maps.s2, grid.n, ColorScale::symmetric);
    write_map(dir, "s3", maps.s3, grid.n, ColorScale::symmetric);
    write_map(dir, "dop", maps.degree_of_polarization(), grid.n, ColorScale::positive);

    const GlobalStokes g = global_stokes(field);
    out << "state " << to_string(kind) << (simulated ? " (Sagnac generator)" : " (ideal)")
        << ", grid n=" << grid.n << " half_extent=" << grid.half_extent << "\n";
    out << "global Stokes S0=" << fmt("%.9g", g.s0) << " S1=" << fmt("%.3e", g.s1)
        << " S2=" << fmt("%.3e", g.s2) << " S3=" << fmt("%.3e", g.s3) << "\n";
    out << "global DoP = " << fmt("%.3e", g.degree_of_polarization) << "\n";
    if (kind == BellKind::hr_vl) {
        const VectorField target = synthesize(bell_state(BellKind::hr_vl), grid);
        out << "fidelity with (|hR>+|vL>)/sqrt2 = " << fmt("%.9f", field_fidelity(field, target))
            << ", within |l|=1 subspace = "
            << fmt("%.9f", fidelity(project_to_state(field), bell_state(BellKind::hr_vl))) << "\n";
    }
    out << "wrote intensity, s1, s2, s3, dop (.txt, .ppm) to " << dir.string() << "\n";
    return ok;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const PureState psi = bell_state(state_from(cfg));
    if (!(cfg.purity >= 0.0 && cfg.purity <= 1.0)) throw UsageError("--purity must lie in [0, 1]");
    if (cfg.engine == "field" && cfg.purity != 1.0) {
        throw UsageError("--purity applies to the analytic engine only (fields are pure)");
    }
    const std::vector<double> thetas = angle_range(cfg.start, cfg.stop, cfg.step);
    const Source source = make_source(cfg, psi);

    std::vector<SweepRecord> records;
    try {
        records = sweep(source, Degrees(cfg.theta_mode), thetas,
                        cfg.strict_triple ? TripleAnglePolicy::require_in_grid
                                          : TripleAnglePolicy::compute_on_demand);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + "; choose a step that divides 60 or drop --strict-3theta");
    }

    const fs::path csv = cfg.out.empty() ? fs::path("sweep.csv") : fs::path(cfg.out);
    {
        std::ofstream os(csv, std::ios::binary);
        if (!os) throw UsageError("cannot write '" + csv.string() + "'");
        os << to_csv(records);
    }
    out << "wrote " << records.size() << " rows to " << csv.string() << "\n";

    print_report(out, "single-parameter S(theta)",
                 violation_report(source, SingleParameterGrid{thetas, Degrees(cfg.theta_mode)}));
    print_report(out, "four-setting CHSH",
                 violation_report(source, FourSettingGrid{optimal_setting_grid()}));
    return ok;
}

int cmd_chsh(const RunConfig& cfg, std::ostream& out) {
    const PureState psi = bell_state(state_from(cfg));
    if (!(cfg.purity >= 0.0 && cfg.purity <= 1.0)) throw UsageError("--purity must lie in [0, 1]");
    if (cfg.engine == "field" && cfg.purity != 1.0) {
        throw UsageError("--purity applies to the analytic engine only (fields are pure)");
    }
    if (!(cfg.setting_step > 0.0 && cfg.setting_step <= 90.0)) {
        throw UsageError("--step must lie in (0, 90]");
    }
    const std::vector<double> angles = angle_range(0.0, 180.0 - cfg.setting_step * 0.5, cfg.setting_step);
    const ViolationReport rep = violation_report(make_source(cfg, psi), FourSettingGrid{angles});
    out << "state " << cfg.state << ", purity " << cfg.purity << ", engine " << cfg.engine << ", "
        << angles.size() << " settings per analyser\n";
    print_report(out, "four-setting CHSH", rep);
    out << "settings (pol a, mode b, pol a', mode b') =";
    for (double a : rep.arg_deg) out << ' ' << fmt("%.12g", a);
    out << " deg\n";
    return ok;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    std::ifstream is(cfg.bench_file, std::ios::binary);
    if (!is) throw InputError("cannot read bench file '" + cfg.bench_file + "'");
    std::stringstream buf;
    buf << is.rdbuf();

    bench::BenchDescription desc;
    try {
        desc = bench::parse_bench(buf.str());
    } catch (const bench::ParseError& e) {
        throw InputError(cfg.bench_file + ": " + e.what());
    }

    std::map<std::string, double> overrides;
    if (cfg.theta) overrides["theta"] = *cfg.theta;
    for (const std::string& a : cfg.assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--set expects name=value, got '" + a + "'");
        try {
            overrides[a.substr(0, eq)] = bench::parse_expression(a.substr(eq + 1)).evaluate({});
        } catch (const std::exception&) {
            throw UsageError("--set: value of '" + a.substr(0, eq) + "' must be a constant number");
        }
    }

    const GridSpec grid = grid_from(cfg);
    bench::BenchRun run;
    try {
        run = bench::run_bench(desc, grid, overrides);
    } catch (const std::invalid_argument& e) {
        throw InputError(cfg.bench_file + ": " + e.what());
    }

    const fs::path dir = prepare_dir(cfg.out);
    const VectorField target = synthesize(bell_state(BellKind::hr_vl), grid);
    out << "input power " << fmt("%.12g", run.input_power) << "\n";
    double total = 0.0;
    for (const auto& [name, field] : run.taps) {
        try {
            write_field(dir / (name + ".field"), field);
            write_ppm(dir / (name + "_intensity.ppm"), intensity(field), grid.n, ColorScale::positive);
        } catch (const std::runtime_error& e) {
            throw UsageError(e.what());
        }
        const double p = field.power();
        total += p;
        out << "tap " << name << ": power " << fmt("%.12g", p);
        if (p > 0.0) {
            out << ", fidelity with (|hR>+|vL>)/sqrt2 " << fmt("%.9f", field_fidelity(field, target));
            try {
                out << " (|l|=1 subspace " << fmt("%.9f", fidelity(project_to_state(field), bell_state(BellKind::hr_vl)))
                    << ")";
            } catch (const std::domain_error&) {
            }
        }
        out << "\n";
    }
    out << "sum of tap powers " << fmt("%.12g", total) << ", input - sum = "
        << fmt("%.3e", run.input_power - total) << "\n";
    return ok;
}

void add_grid_options(CLI::App* app, RunConfig& cfg) {
    app->add_option("--grid-n", cfg.grid_n, "Samples per axis (default 256 or $LUMENBELL_GRID_N)");
    app->add_option("--half-extent", cfg.half_extent, "Grid half-width in waists")->capture_default_str();
}

void add_state_option(CLI::App* app, RunConfig& cfg, bool required) {
    auto* opt = app->add_option("--state", cfg.state, "hh_vv | hv_vh | hr_vl | scalar_hr")
                    ->check(CLI::IsMember({"hh_vv", "hv_vh", "hr_vl", "scalar_hr"}));
    if (required) opt->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spin-orbit correlations and CHSH tests for vector beams", "lumenbell"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* gen = app.add_subcommand("generate", "Synthesize a beam and write intensity/Stokes maps");
    add_state_option(gen, cfg, true);
    auto* ideal = gen->add_flag("--ideal", cfg.ideal, "Exact LG_{+-1} state (default)");
    gen->add_flag("--simulate", cfg.simulate, "Simulate the Sagnac generator (hr_vl only)")->excludes(ideal);
    gen->add_option("--out", cfg.out, "Output directory");
    add_grid_options(gen, cfg);

    auto* sw = app.add_subcommand("sweep", "Sweep the polarization analyser; write CSV");
    add_state_option(sw, cfg, true);
    sw->add_option("--engine", cfg.engine, "analytic | field")
        ->check(CLI::IsMember({"analytic", "field"}))
        ->capture_default_str();
    sw->add_option("--theta-mode", cfg.theta_mode, "Mode analyser angle (deg)")->capture_default_str();
    sw->add_option("--start", cfg.start, "First polarization angle (deg)")->capture_default_str();
    sw->add_option("--stop", cfg.stop, "Last polarization angle (deg)")->capture_default_str();
    sw->add_option("--step", cfg.step, "Angle step (deg)")->capture_default_str();
    sw->add_option("--purity", cfg.purity, "Depolarization purity p in [0,1] (analytic)")->capture_default_str();
    sw->add_flag("--strict-3theta", cfg.strict_triple, "Require every 3*theta (mod 180) on the grid");
    sw->add_option("--out", cfg.out, "CSV path (default sweep.csv)");
    add_grid_options(sw, cfg);

    auto* be = app.add_subcommand("bench", "Run a bench description file");
    be->add_option("file", cfg.bench_file, "Bench description")->required();
    be->add_option("--theta", cfg.theta, "Value for the bench variable $theta (deg)");
    be->add_option("--set", cfg.assignments, "Override a bench variable, name=value");
    be->add_option("--out", cfg.out, "Output directory for tapped fields");
    add_grid_options(be, cfg);

    auto* ch = app.add_subcommand("chsh", "Four-setting CHSH grid search");
    add_state_option(ch, cfg, true);
    ch->add_option("--engine", cfg.engine, "analytic | field")
        ->check(CLI::IsMember({"analytic", "field"}))
        ->capture_default_str();
    ch->add_option("--purity", cfg.purity, "Depolarization purity p in [0,1] (analytic)")->capture_default_str();
    ch->add_option("--step", cfg.setting_step, "Setting grid step (deg)")->capture_default_str();
    add_grid_options(ch, cfg);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (gen->parsed()) return cmd_generate(cfg, out);
        if (sw->parsed()) return cmd_sweep(cfg, out);
        if (be->parsed()) return cmd_bench(cfg, out);
        if (ch->parsed()) return cmd_chsh(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    return usage_error;
}

}  // namespace lumenbell::cli
