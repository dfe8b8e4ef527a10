#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "chlab/cli.hpp"
#include "chlab/config.hpp"
#include "chlab/report.hpp"
#include "chlab/snapshot.hpp"

using namespace chlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path p = fs::temp_directory_path() / "chlab_test";
    fs::create_directories(p);
    return p;
}

int run_cli(std::vector<std::string> args) {
    std::vector<char*> argv;
    args.insert(args.begin(), "chlab");
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("parse_config: defaults and validation") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.n_points == 256);
    CHECK(cfg.period == doctest::Approx(two_pi));
    CHECK(cfg.alpha == doctest::Approx(0.1));
    CHECK(cfg.sobolev_s == doctest::Approx(2.0));
    CHECK(cfg.t_end == doctest::Approx(0.1));
    CHECK(cfg.dealias);

    CHECK_THROWS_AS(parse_config("[model]\nalpha = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[sweep]\nsobolev_s = 1.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nn_points = 100\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[time]\ncfl = 1.5\n"), ConfigError);

    // unknown keys are hard errors carrying the line number
    try {
        parse_config("[model]\nnu = 0\nalfa = 0.3\n");
        CHECK(false);
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("alfa") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("alpha = 0.1\n"), ConfigError); // no section
    CHECK_THROWS_AS(parse_config("[nosuch]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\nalpha = abc\n"), ConfigError);
}

TEST_CASE("parse_config: values and round trip") {
    const std::string text =
        "# comment\n"
        "[grid]\n"
        "n_points = 512\n"
        "period = 125.66370614359172\n"
        "[model]\n"
        "alpha = 0.25   # inline comment\n"
        "nu = 0.001\n"
        "gamma = 1.5\n"
        "dealias = off\n"
        "[time]\n"
        "t_end = 0.2\n"
        "cfl = 0.25\n"
        "[data]\n"
        "u0 = rough:s=2.5,seed=9\n"
        "[sweep]\n"
        "alphas = 0.4, 0.2, 0.1\n"
        "ns = 3, 5\n"
        "sobolev_s = 2.5\n"
        "[output]\n"
        "dir = results\n"
        "formats = csv, json\n";
    const RunConfig cfg = parse_config(text);
    CHECK(cfg.n_points == 512);
    CHECK(cfg.alpha == doctest::Approx(0.25));
    CHECK(!cfg.dealias);
    CHECK(cfg.u0.kind == InitialKind::rough);
    CHECK(cfg.u0.rough_s == doctest::Approx(2.5));
    CHECK(cfg.u0.seed == 9);
    CHECK(cfg.alphas == std::vector<double>{0.4, 0.2, 0.1});
    CHECK(cfg.ns == std::vector<int>{3, 5});
    CHECK(cfg.dir == "results");

    // serialize -> parse -> serialize is a fixed point
    const std::string canon = serialize_config(cfg);
    const RunConfig cfg2 = parse_config(canon);
    CHECK(serialize_config(cfg2) == canon);

    const std::string canon_default = serialize_config(RunConfig{});
    CHECK(serialize_config(parse_config(canon_default)) == canon_default);
}

TEST_CASE("snapshot round trip is bit exact") {
    const fs::path dir = temp_dir();
    Grid g(64, two_pi);
    Field f = Field::from_function(g, [](double x) { return std::sin(3 * x) + 0.1; });
    f.time = 0.375;
    f.alpha_tag = 0.25;

    const fs::path p1 = dir / "a.chs";
    const fs::path p2 = dir / "b.chs";
    write_snapshot(f, p1);
    const Field r = read_snapshot(p1);
    CHECK(r.grid() == f.grid());
    CHECK(r.time == f.time);
    CHECK(r.alpha_tag == f.alpha_tag);
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(r[j] == f[j]);

    write_snapshot(r, p2);
    std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)),
                         std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(b)),
                         std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(sa.size() == 40 + 8 * f.size());
}

TEST_CASE("snapshot error paths") {
    const fs::path dir = temp_dir();
    Grid g(64, two_pi);
    Field f = Field::zero(g);
    const fs::path p = dir / "c.chs";
    write_snapshot(f, p);

    // truncation
    {
        std::ifstream in(p, std::ios::binary);
        std::string buf((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
        buf.resize(buf.size() - 9);
        std::ofstream out(dir / "trunc.chs", std::ios::binary);
        out << buf;
    }
    CHECK_THROWS_AS(read_snapshot(dir / "trunc.chs"), FormatError);

    // wrong magic
    {
        std::ofstream out(dir / "magic.chs", std::ios::binary);
        out << "XXXX" << std::string(60, '\0');
    }
    try {
        read_snapshot(dir / "magic.chs");
        CHECK(false);
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("CHS1") != std::string::npos);
    }

    CHECK_THROWS_AS(read_snapshot(dir / "nonexistent.chs"), FormatError);
}

TEST_CASE("format_double is shortest round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 2.5e-17, 123456.75, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("emit_report: empty sweep produces valid artifacts") {
    const fs::path dir = temp_dir() / "empty_sweep";
    SweepReport rep;
    rep.config = SweepConfig{};
    emit_report(rep, dir);

    std::ifstream csv(dir / "errors.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "alpha,n,s,sup_t_error_hs,sup_t_error_hsm1,t_end,status");
    std::string rest;
    CHECK(!std::getline(csv, rest)); // header only

    std::ifstream js(dir / "summary.json");
    const nlohmann::json j = nlohmann::json::parse(js);
    CHECK(j.contains("assertions"));
    CHECK(j["assertions"].is_array());
    CHECK(j.contains("all_pass"));

    CHECK(fs::exists(dir / "plot.gp"));
}

TEST_CASE("emit_report: one decomposition cell") {
    const fs::path dir = temp_dir() / "one_cell";
    SweepConfig cfg;
    cfg.u0.kind = InitialKind::rough;
    cfg.alphas = {0.2};
    cfg.ns = {3};
    cfg.n_points = 128;
    cfg.t_end = 0.02;

    SweepReport rep;
    rep.config = cfg;
    rep.cells.push_back(bona_smith_decompose(cfg, 0.2, 3));
    emit_report(rep, dir);

    // norms CSV row count equals the snapshot (sample) count
    std::ifstream csv(dir / "norms_a0p2_n3_sa_full.csv");
    REQUIRE(csv.good());
    std::string line;
    std::size_t rows = 0;
    std::getline(csv, line); // header
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == rep.cells[0].times.size());

    // errors.csv has exactly one data row with the assertion columns
    std::ifstream ecsv(dir / "errors.csv");
    std::getline(ecsv, line);
    std::size_t data_rows = 0;
    while (std::getline(ecsv, line))
        if (!line.empty()) ++data_rows;
    CHECK(data_rows == 1);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli({"nonsense"}) == 2);
    CHECK(run_cli({"verify", "--suite", "bogus"}) == 2);
    CHECK(run_cli({"norms", "--snapshot", "/nonexistent/file.chs"}) == 2);

    // norms on a snapshot of sin(x): printed value is 2 sqrt(pi) at s = 2
    const fs::path dir = temp_dir();
    Grid g(256, two_pi);
    write_snapshot(Field::from_function(g, [](double x) { return std::sin(x); }),
                   dir / "sin.chs");
    CHECK(hs_norm(read_snapshot(dir / "sin.chs"), 2.0) ==
          doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-12));
    CHECK(run_cli({"norms", "--snapshot", (dir / "sin.chs").string(),
                   "--s", "2"}) == 0);
}
