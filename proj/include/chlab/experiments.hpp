#pragma once

#include <array>
#include <map>
#include <tuple>

#include "chlab/oracles.hpp"

namespace chlab {

enum class InitialKind { band_limited, rough, peakon_smoothed };

struct InitialSpec {
    InitialKind kind = InitialKind::band_limited;
    double rough_s = 2.0;        // Sobolev index of the rough recipe
    std::uint64_t seed = 1;      // phase seed
    double peakon_c = 1.0;       // peakon speed/height
    double peakon_alpha = 0.2;   // peakon width
};

struct SweepConfig {
    InitialSpec u0;
    double s = 2.0;                                    // analysis index, > 3/2
    std::vector<double> alphas = {0.2, 0.1, 0.05, 0.025, 0.0125};
    std::vector<int> ns = {2, 3, 4, 5, 6};
    std::size_t n_points = 512;
    double period = two_pi;
    double t_end = 0.1;
    StepControl control;                                // cfl, dt_max, caps
    CutoffMode cutoff_mode = CutoffMode::sharp;

    void validate() const;
    Grid grid() const { return Grid(n_points, period); }
};

// One named assertion outcome, aggregated into summary.json.
struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

// Time series of the three Bona-Smith terms and the total, each at the
// Sobolev indices s-1, s, s+1.
struct TermSeries {
    std::vector<double> hs_m1, hs, hs_p1;
    double sup(int which) const; // 0 -> s-1, 1 -> s, 2 -> s+1
};

struct DecompositionTerms {
    double alpha = 0.0;
    int n = 0;
    std::vector<double> times;
    TermSeries outer_alpha; // S^a(u0) - S^a(S_n u0)      ("v")
    TermSeries middle;      // S^a(S_n u0) - S^0(S_n u0)  ("w")
    TermSeries outer_zero;  // S^0(S_n u0) - S^0(u0)
    TermSeries total;       // S^a(u0) - S^0(u0)
    double tail_hs = 0.0;   // ||(Id - S_n) u0||_{H^s}
    double tail_hs_m1 = 0.0;
    RunStatus status = RunStatus::completed;

    // per-member norm series for reporting: [member][time]
    std::array<std::vector<double>, 4> member_hs;
    std::array<std::vector<double>, 4> member_hs_m1;
    std::array<std::vector<double>, 4> member_slope;
    std::array<std::vector<double>, 4> member_energy;
};

struct FitResult {
    double p_alpha = 0.0;
    double p_n = 0.0;
    double log_c = 0.0;           // least-squares intercept (natural log)
    double implied_constant = 0.0; // max over grid of error / model
    double r_squared = 0.0;
    double residual_max = 0.0;
    bool conclusive = true;
};

struct UniformBoundReport {
    std::vector<double> alphas;
    std::vector<double> sup_hs;    // sup_t ||S^a(u0)||_{H^s}
    std::vector<double> sup_hs_hi; // same at index s+1
    double ratio = 0.0;            // max/min over the alpha grid
    double ratio_hi = 0.0;
    double trend_slope = 0.0;      // d sup / d log(1/alpha), least squares
    std::vector<Verdict> verdicts;
};

struct Step2Report {
    // implied constants C(alpha, n) = sup_t ||v||_{H^s} / ||(Id-S_n)u0||_{H^s}
    std::map<std::pair<double, int>, double> constant;
    std::map<std::pair<double, int>, double> constant_zero; // alpha = 0 outer
    std::map<std::pair<double, int>, double> constant_t0;   // must be 1
    std::map<int, double> alpha_spread;  // max/min over alpha at fixed n
    std::vector<double> aux_low_bound;   // ||v||_{H^{s-1}} 2^n / tail_hs per n
    std::vector<Verdict> verdicts;
};

struct Step3Report {
    std::map<std::pair<double, int>, double> sup_w_hsm1;
    std::map<std::pair<double, int>, double> sup_w_hs;
    FitResult fit_grid;              // both exponents over the (alpha, n) grid
    std::map<int, FitResult> fit_fixed_n;
    double min_interp_deficit = 0.0; // over every sample of every cell
    double max_w0 = 0.0;             // ||w(0)||, must vanish
    std::vector<Verdict> verdicts;
};

struct ConvergenceReport {
    std::vector<double> alphas;
    std::vector<double> errors;    // E(a) = sup_t ||S^a(u0) - S^0(u0)||_{H^s}
    std::vector<double> ratios;    // E(a_i) / E(a_{i+1}) on a halving grid
    double fitted_order = 0.0;
    bool monotone = false;
    std::vector<Verdict> verdicts;
};

struct EnvelopeReport {
    double c1 = 0.0; // tail-term constant from step 2
    double c2 = 0.0; // alpha 2^{3n/2} constant from step 3
    std::map<std::pair<double, int>, double> ratio; // total / model
    double worst_ratio = 0.0;
    std::vector<Verdict> verdicts;
};

struct SweepReport {
    SweepConfig config;
    std::vector<DecompositionTerms> cells;
    UniformBoundReport uniform;
    Step2Report step2;
    Step3Report step3;
    ConvergenceReport convergence; // band-limited or rough, per config
    EnvelopeReport envelope;
    std::vector<Verdict> verdicts; // flattened
    bool all_pass = false;
};

// --- operations --------------------------------------------------------------

// Named initial data. band_limited: sin(2 pi x / L) + 0.5 cos(4 pi x / L).
// rough: the (1+|xi|)^{-(s+0.6)} recipe scaled to ||u0||_{H^s} = 1.
// peakon_smoothed: periodized peakon mollified by exp(-(xi/xi_c)^2),
// xi_c = max_freq / 4.
Field synth_initial(const InitialSpec& spec, const Grid& g, double s);

// Step 1 analogue: sup_t ||S^a_t(u0)||_{H^s} uniformly bounded over the
// alpha grid (max/min <= 2, no growth trend towards alpha -> 0), repeated at
// index s+1.
UniformBoundReport uniform_bound_probe(const SweepConfig& cfg);

// Runs the four solutions S^a(u0), S^a(S_n u0), S^0(S_n u0), S^0(u0) in
// lockstep and returns every inter-solution norm series.
DecompositionTerms bona_smith_decompose(const SweepConfig& cfg, double alpha,
                                        int n);

// All (alpha, n) cells, optionally in parallel.
std::vector<DecompositionTerms> run_cells(const SweepConfig& cfg, int jobs = 1);

Step2Report step2_probe(const SweepConfig& cfg,
                        const std::vector<DecompositionTerms>& cells);
Step3Report step3_probe(const SweepConfig& cfg,
                        const std::vector<DecompositionTerms>& cells);

ConvergenceReport zero_filter_convergence(const SweepConfig& cfg);

EnvelopeReport final_bound_check(const SweepConfig& cfg,
                                 const std::vector<DecompositionTerms>& cells,
                                 const Step2Report& s2, const Step3Report& s3);

// Ordinary least squares of log e ~ log C + p_alpha log a + p_n n log 2.
// Points are (error, alpha, n); pass fit_alpha/fit_n = false to pin an
// exponent at zero. Throws FitError on a rank-deficient design.
FitResult fit_scaling(
    const std::vector<std::tuple<double, double, int>>& points,
    bool fit_alpha = true, bool fit_n = true);

// Everything: cells, probes, convergence, envelope.
SweepReport run_full_sweep(const SweepConfig& cfg, int jobs = 1);

} // namespace chlab
