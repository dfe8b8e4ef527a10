#include "chlab/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>

namespace chlab {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, p);
}

namespace {

void open_or_throw(std::ofstream& out, const std::filesystem::path& p) {
    out.open(p);
    if (!out) throw FormatError("emit_report: cannot open " + p.string());
}

std::string cell_runid(const DecompositionTerms& cell, std::size_t member) {
    static const char* tags[4] = {"sa_full", "sa_cut", "s0_cut", "s0_full"};
    std::string a = format_double(cell.alpha);
    std::replace(a.begin(), a.end(), '.', 'p');
    return "a" + a + "_n" + std::to_string(cell.n) + "_" + tags[member];
}

void write_member_norms(const DecompositionTerms& cell, std::size_t member,
                        const std::filesystem::path& dir) {
    std::ofstream out;
    open_or_throw(out, dir / ("norms_" + cell_runid(cell, member) + ".csv"));
    out << "t,hs_norm,hsm1_norm,min_slope,energy\n";
    for (std::size_t i = 0; i < cell.times.size(); ++i) {
        out << format_double(cell.times[i]) << ','
            << format_double(cell.member_hs[member][i]) << ','
            << format_double(cell.member_hs_m1[member][i]) << ','
            << format_double(cell.member_slope[member][i]) << ','
            << format_double(cell.member_energy[member][i]) << '\n';
    }
}

json verdicts_json(const std::vector<Verdict>& vs) {
    json arr = json::array();
    for (const auto& v : vs)
        arr.push_back({{"name", v.name},
                       {"pass", v.pass},
                       {"value", v.value},
                       {"detail", v.detail}});
    return arr;
}

json fit_json(const FitResult& f) {
    return {{"p_alpha", f.p_alpha},
            {"p_n", f.p_n},
            {"log_c", f.log_c},
            {"implied_constant", f.implied_constant},
            {"r_squared", f.r_squared},
            {"residual_max", f.residual_max},
            {"conclusive", f.conclusive}};
}

} // namespace

void emit_report(const SweepReport& rep, const std::filesystem::path& dir,
                 const std::vector<std::string>& formats) {
    std::filesystem::create_directories(dir);
    const bool want_csv =
        std::find(formats.begin(), formats.end(), "csv") != formats.end();
    const bool want_json =
        std::find(formats.begin(), formats.end(), "json") != formats.end();
    const bool want_gp =
        std::find(formats.begin(), formats.end(), "gp") != formats.end();

    if (want_csv) {
        std::ofstream out;
        open_or_throw(out, dir / "errors.csv");
        out << "alpha,n,s,sup_t_error_hs,sup_t_error_hsm1,t_end,status\n";
        for (const auto& cell : rep.cells) {
            out << format_double(cell.alpha) << ',' << cell.n << ','
                << format_double(rep.config.s) << ','
                << format_double(cell.total.sup(1)) << ','
                << format_double(cell.total.sup(0)) << ','
                << format_double(rep.config.t_end) << ','
                << to_string(cell.status) << '\n';
        }
        for (const auto& cell : rep.cells)
            for (std::size_t m = 0; m < 4; ++m)
                write_member_norms(cell, m, dir);
    }

    if (want_json) {
        json j;
        j["s"] = rep.config.s;
        j["t_end"] = rep.config.t_end;
        j["grid"] = {{"n_points", rep.config.n_points},
                     {"period", rep.config.period}};

        j["uniform_bound"] = {{"alphas", rep.uniform.alphas},
                              {"sup_hs", rep.uniform.sup_hs},
                              {"sup_hs_hi", rep.uniform.sup_hs_hi},
                              {"ratio", rep.uniform.ratio},
                              {"ratio_hi", rep.uniform.ratio_hi},
                              {"trend_slope", rep.uniform.trend_slope}};

        json s2rows = json::array();
        for (const auto& [key, c] : rep.step2.constant) {
            s2rows.push_back({{"alpha", key.first},
                              {"n", key.second},
                              {"constant", c},
                              {"constant_zero", rep.step2.constant_zero.at(key)},
                              {"constant_t0", rep.step2.constant_t0.at(key)}});
        }
        json spread;
        for (const auto& [n, v] : rep.step2.alpha_spread)
            spread[std::to_string(n)] = v;
        j["step2"] = {{"constants", s2rows},
                      {"alpha_spread", spread},
                      {"low_index_bound", rep.step2.aux_low_bound}};

        json s3rows = json::array();
        for (const auto& [key, e] : rep.step3.sup_w_hsm1)
            s3rows.push_back({{"alpha", key.first},
                              {"n", key.second},
                              {"sup_w_hsm1", e},
                              {"sup_w_hs", rep.step3.sup_w_hs.at(key)}});
        json fits_n;
        for (const auto& [n, f] : rep.step3.fit_fixed_n)
            fits_n[std::to_string(n)] = fit_json(f);
        j["step3"] = {{"rows", s3rows},
                      {"fit_grid", fit_json(rep.step3.fit_grid)},
                      {"fit_fixed_n", fits_n},
                      {"min_interp_deficit", rep.step3.min_interp_deficit},
                      {"max_w0", rep.step3.max_w0}};

        j["convergence"] = {{"alphas", rep.convergence.alphas},
                            {"errors", rep.convergence.errors},
                            {"ratios", rep.convergence.ratios},
                            {"fitted_order", rep.convergence.fitted_order},
                            {"monotone", rep.convergence.monotone}};

        json envrows = json::array();
        for (const auto& [key, r] : rep.envelope.ratio)
            envrows.push_back(
                {{"alpha", key.first}, {"n", key.second}, {"ratio", r}});
        j["final_bound"] = {{"c1", rep.envelope.c1},
                            {"c2", rep.envelope.c2},
                            {"worst_ratio", rep.envelope.worst_ratio},
                            {"ratios", envrows}};

        j["assertions"] = verdicts_json(rep.verdicts);
        j["all_pass"] = rep.all_pass;

        std::ofstream out;
        open_or_throw(out, dir / "summary.json");
        out << j.dump(2) << '\n';
    }

    if (want_gp) {
        std::ofstream out;
        open_or_throw(out, dir / "plot.gp");
        out << "# gnuplot script for the zero-filter sweep artifacts\n"
            << "set datafile separator ','\n"
            << "set logscale xy\n"
            << "set xlabel 'alpha'\n"
            << "set ylabel 'sup_t ||S^a(u0) - S^0(u0)||_{H^s}'\n"
            << "set key outside\n"
            << "plot ";
        bool first = true;
        for (int n : rep.config.ns) {
            if (!first) out << ", \\\n     ";
            first = false;
            out << "'errors.csv' using 1:($2==" << n
                << "?$4:1/0) with linespoints title 'n=" << n << "'";
        }
        out << "\n";
    }
}

void emit_norm_series(const Trajectory& tr, const std::filesystem::path& dir,
                      const std::string& runid) {
    std::filesystem::create_directories(dir);
    std::ofstream out;
    open_or_throw(out, dir / ("norms_" + runid + ".csv"));
    out << "t,hs_norm,hsm1_norm,min_slope,energy\n";
    for (std::size_t i = 0; i < tr.sample_times.size(); ++i) {
        out << format_double(tr.sample_times[i]) << ','
            << format_double(tr.norm_series.empty() ? 0.0
                                                    : tr.norm_series[0][i])
            << ','
            << format_double(tr.norm_series.size() > 1 ? tr.norm_series[1][i]
                                                       : 0.0)
            << ',' << format_double(tr.min_slope_series[i]) << ','
            << format_double(tr.energy_series[i]) << '\n';
    }
}

} // namespace chlab
