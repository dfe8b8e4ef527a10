#pragma once

#include <filesystem>

#include "chlab/config.hpp"

namespace chlab {

// Shortest round-trip decimal rendering of a double (std::to_chars).
std::string format_double(double v);

// Sweep artifacts written under `dir`:
//   errors.csv            alpha,n,s,sup_t_error_hs,sup_t_error_hsm1,t_end,status
//   summary.json          fits, implied constants, assertion verdicts
//   norms_<runid>.csv     t,hs_norm,hsm1_norm,min_slope,energy per member run
//   plot.gp               gnuplot script referencing the CSVs (format "gp")
void emit_report(const SweepReport& rep, const std::filesystem::path& dir,
                 const std::vector<std::string>& formats = {"csv", "json", "gp"});

// Norm series of a solo run.
void emit_norm_series(const Trajectory& tr, const std::filesystem::path& dir,
                      const std::string& runid);

} // namespace chlab
