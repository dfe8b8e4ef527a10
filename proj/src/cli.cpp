#include "chlab/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

#include "chlab/report.hpp"
#include "chlab/snapshot.hpp"
#include "chlab/verify.hpp"

namespace chlab {

namespace {

RunConfig config_or_default(const std::string& path) {
    if (path.empty()) return RunConfig{};
    return load_config(path);
}

int cmd_solve(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = config_or_default(config_path);
    const Grid g = cfg.grid();
    const Field u0 = synth_initial(cfg.u0, g, cfg.sobolev_s);
    const Trajectory tr = solve(u0, cfg.model(), cfg.control());

    const std::filesystem::path dir = out_dir.empty() ? cfg.dir : out_dir;
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < tr.fields.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "snap_%04zu.chs", i);
        write_snapshot(tr.fields[i], dir / name);
    }
    emit_norm_series(tr, dir, "solve");

    std::cout << "status: " << to_string(tr.status) << "\n";
    if (tr.status != RunStatus::completed)
        std::cout << "t*: " << format_double(tr.t_star) << "\n";
    std::cout << "t_final: " << format_double(tr.t_final) << "\n"
              << "snapshots: " << tr.fields.size() << " -> " << dir.string()
              << "\n";
    // periodization diagnostic: field magnitude farthest from the peak
    const Field& last = tr.fields.back();
    double edge = std::abs(last[0]);
    for (std::size_t j = 0; j < last.size(); ++j)
        edge = std::min(edge, std::abs(last[j]));
    std::cout << "boundary_tail: " << format_double(edge) << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              int jobs) {
    const RunConfig cfg = config_or_default(config_path);
    const SweepReport rep = run_full_sweep(cfg.sweep(), jobs);
    const std::filesystem::path dir = out_dir.empty() ? cfg.dir : out_dir;
    emit_report(rep, dir, cfg.formats);
    for (const auto& v : rep.verdicts)
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << " (value "
                  << format_double(v.value) << ")\n";
    std::cout << (rep.all_pass ? "sweep OK" : "sweep FAILED") << ", reports in "
              << dir.string() << "\n";
    return rep.all_pass ? 0 : 1;
}

int cmd_norms(const std::string& snapshot_path, double s) {
    const Field f = read_snapshot(snapshot_path);
    std::cout << format_double(hs_norm(f, s)) << "\n";
    return 0;
}

int cmd_oracle(const std::string& kind, const std::string& config_path,
               const std::string& out_dir) {
    const RunConfig cfg = config_or_default(config_path);
    const Grid g = cfg.grid();
    const std::filesystem::path dir = out_dir.empty() ? cfg.dir : out_dir;
    std::filesystem::create_directories(dir);

    if (kind == "characteristics") {
        const Field u0 = synth_initial(cfg.u0, g, cfg.sobolev_s);
        const CharacteristicSolution sol = CharacteristicSolution::from_field(u0);
        std::cout << "shock_time: " << format_double(sol.shock_time()) << "\n";
        Field out = Field::from_function(
            g, [&](double x) { return sol(x, cfg.t_end); });
        out.time = cfg.t_end;
        write_snapshot(out, dir / "oracle_characteristics.chs");
        std::cout << "wrote " << (dir / "oracle_characteristics.chs").string()
                  << "\n";
        return 0;
    }
    if (kind == "peakon") {
        const Field p = peakon_field(cfg.u0.peakon_c, cfg.u0.peakon_alpha,
                                     cfg.t_end, g);
        write_snapshot(p, dir / "oracle_peakon.chs");
        double edge = std::abs(p[0]);
        for (std::size_t j = 0; j < p.size(); ++j)
            edge = std::min(edge, std::abs(p[j]));
        std::cout << "boundary_tail: " << format_double(edge / max_abs(p))
                  << "\nwrote " << (dir / "oracle_peakon.chs").string() << "\n";
        return 0;
    }
    std::cerr << "unknown oracle kind '" << kind
              << "' (characteristics | peakon)\n";
    return 2;
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"pseudospectral lab for the filtered Camassa-Holm equation "
                 "and its zero-filter Burgers limit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, suite, kind, snapshot_path;
    double s = 2.0;
    int jobs = 1;

    auto* c_solve = app.add_subcommand("solve", "single run: snapshots + norms");
    c_solve->add_option("--config", config_path, "INI config file");
    c_solve->add_option("--out", out_dir, "output directory");

    auto* c_sweep = app.add_subcommand("sweep", "zero-filter study: uniform "
                                                "bound, step2/3, convergence, "
                                                "final bound");
    c_sweep->add_option("--config", config_path, "INI config file");
    c_sweep->add_option("--out", out_dir, "output directory");
    c_sweep->add_option("--jobs", jobs, "parallel (alpha, n) cells");

    auto* c_verify = app.add_subcommand("verify", "invariant suites");
    c_verify->add_option("--suite", suite,
                         "spectral | lp | oracle | conservation")
        ->required();

    auto* c_norms = app.add_subcommand("norms", "print the H^s norm of a snapshot");
    c_norms->add_option("--snapshot", snapshot_path, "snapshot file")->required();
    c_norms->add_option("--s", s, "Sobolev index");

    auto* c_oracle = app.add_subcommand("oracle", "reference solutions");
    c_oracle->add_option("--kind", kind, "characteristics | peakon")->required();
    c_oracle->add_option("--config", config_path, "INI config file");
    c_oracle->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints usage/help
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    try {
        if (c_solve->parsed()) return cmd_solve(config_path, out_dir);
        if (c_sweep->parsed()) return cmd_sweep(config_path, out_dir, jobs);
        if (c_verify->parsed()) return run_verify_suite(suite, std::cout);
        if (c_norms->parsed()) return cmd_norms(snapshot_path, s);
        if (c_oracle->parsed()) return cmd_oracle(kind, config_path, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace chlab
