#pragma once

#include <filesystem>

#include "chlab/experiments.hpp"

namespace chlab {

// INI-style run configuration. Every key has a default; unknown keys are a
// hard error carrying the offending line number.
struct RunConfig {
    // [grid]
    std::size_t n_points = 256;
    double period = two_pi;

    // [model]
    double alpha = 0.1;
    double nu = 0.0;
    double gamma = 2.0;
    bool dealias = true;

    // [time]
    double t_end = 0.1;
    double cfl = 0.3;
    double dt_max = 0.05;
    std::size_t save_every = 10;

    // [data]  u0 = band_limited | rough:s=<v>,seed=<int> | peakon:c=<v>,alpha=<v>
    InitialSpec u0;

    // [sweep]
    std::vector<double> alphas = {0.2, 0.1, 0.05, 0.025, 0.0125};
    std::vector<int> ns = {2, 3, 4, 5, 6};
    double sobolev_s = 2.0;

    // [output]
    std::string dir = "out";
    std::vector<std::string> formats = {"csv", "json", "gp"};

    Grid grid() const { return Grid(n_points, period); }
    ModelParams model() const;
    StepControl control() const;
    SweepConfig sweep() const;
};

// Parse `key = value` lines under [section] headers; '#' starts a comment.
// Throws ConfigError with a line number on unknown keys, malformed values,
// or constraint violations.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& file);

// Canonical INI rendering; parse(serialize(cfg)) is key-equivalent to cfg.
std::string serialize_config(const RunConfig& cfg);

} // namespace chlab
