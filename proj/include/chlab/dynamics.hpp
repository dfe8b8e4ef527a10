#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "chlab/lp.hpp"

namespace chlab {

enum class Equation { camassa_holm, burgers };

struct ModelParams {
    double alpha = 0.1;   // Helmholtz filter width
    double nu = 0.0;      // dissipation coefficient
    double gamma = 2.0;   // dissipation order, Lambda^gamma
    bool dealias = true;  // 2/3-rule masking of quadratic products
    Equation equation = Equation::camassa_holm;

    void validate() const;
};

struct StepControl {
    double cfl = 0.3;
    double dt_max = 0.05;
    double t_end = 0.1;
    std::size_t save_every = 10;  // snapshot stride in accepted steps
    double breaking_slope_threshold = -1e4;
    double norm_cap = 1e6;
    std::vector<double> norm_indices = {2.0, 1.0}; // recorded H^s indices
    std::size_t norm_stride = 1;  // diagnostic sampling stride in steps

    void validate() const;
};

enum class RunStatus { completed, breaking_detected, norm_cap_exceeded, unstable };

std::string to_string(RunStatus s);

struct Trajectory {
    std::vector<double> times;   // snapshot times (strictly increasing from 0)
    std::vector<Field> fields;   // one snapshot per recorded time

    std::vector<double> sample_times;              // diagnostic times
    std::vector<std::vector<double>> norm_series;  // one row per norm index
    std::vector<double> min_slope_series;          // min_x du/dx
    std::vector<double> energy_series;             // int u^2 + alpha^2 u_x^2

    RunStatus status = RunStatus::completed;
    double t_star = std::numeric_limits<double>::quiet_NaN(); // trigger time
    double t_final = 0.0;
};

// Right-hand sides ----------------------------------------------------------

// Filtered Camassa-Holm in velocity form:
//   u_t = -u u_x - nu Lambda^gamma u
//         - d/dx (1 - alpha^2 dxx)^{-1} (u^2 + (alpha^2/2) u_x^2).
// alpha = 0 collapses to Burgers written as -u u_x - d/dx(u^2).
Field rhs_ch(const Field& u, const ModelParams& p);

// Burgers: u_t = -3 u u_x - nu Lambda^gamma u. p.alpha is ignored.
Field rhs_burgers(const Field& u, const ModelParams& p);

// Algebraically identical rewriting of rhs_ch (nu = 0):
//   -3 u u_x - alpha^2 dxxx (1-alpha^2 dxx)^{-1}(u^2)
//            - (alpha^2/2) dx (1-alpha^2 dxx)^{-1}(u_x^2).
Field rhs_equivalent_form(const Field& u, const ModelParams& p);

// Filter source term
//   I = alpha^2 dx (1-alpha^2 dxx)^{-1} [ dxx(u^2) + (1/2) u_x^2 ],
// the O(alpha^2) forcing that separates the filtered flow from Burgers.
Field source_term_I(const Field& u_alpha, const ModelParams& p);

// Dispatch on p.equation.
Field rhs(const Field& u, const ModelParams& p);

// Time stepping --------------------------------------------------------------

// Advective CFL bound with caps; when nu > 0 and no integrating factor is in
// use, also enforces nu |xi_max|^gamma dt <= 2.
double cfl_dt(const Field& u, const StepControl& c, const ModelParams& p,
              bool integrating_factor = false);

// One classical RK4 step of u' = rhs(u). Throws InstabilityError (with the
// provided base time) if a stage goes non-finite.
Field step_rk4(const Field& u, double dt,
               const std::function<Field(const Field&)>& rhs_fn,
               double t_base = 0.0);

// Integrating-factor RK4: the dissipative part -nu Lambda^gamma is advanced
// exactly by the multiplier exp(-nu |xi|^gamma dt); identical to step_rk4
// when nu = 0.
Field step_if_rk4(const Field& u, double dt, const ModelParams& p,
                  double t_base = 0.0);

// Same scheme with an explicit nonlinear part (lets tests drive the exact
// decay factor with a zero nonlinearity).
Field step_if_rk4(const Field& u, double dt, const ModelParams& p,
                  const std::function<Field(const Field&)>& nonlinear,
                  double t_base);

// True when explicit stepping would be dissipation-limited, i.e. the
// integrating factor pays off.
bool use_integrating_factor(const Field& u, const StepControl& c,
                            const ModelParams& p);

// Breaking detection ----------------------------------------------------------

struct StateCheck {
    bool triggered = false;
    RunStatus reason = RunStatus::completed;
    double min_slope = 0.0;
    double norm = 0.0;
    double tail_fraction = 0.0;
};

// Flags wave breaking: slope below threshold, H^s norm above cap, or more
// than 10% of spectral energy in the top third of the live band.
StateCheck detect_breaking(const Field& u, const StepControl& c,
                           const ModelParams& p, double norm_index);

// Solve ------------------------------------------------------------------------

// Advance u0 with adaptive dt to c.t_end; snapshots, norm/slope/energy series
// and breaking status are recorded along the way. Deterministic for fixed
// inputs.
Trajectory solve(const Field& u0, const ModelParams& p, const StepControl& c);

// Several runs advanced in lockstep: one shared dt sequence (the minimum of
// the members' CFL proposals) and one sample schedule, so inter-solution
// norms never see time-interpolation error. The observer fires at t = 0,
// every norm_stride-th step and at the end.
struct LockstepMember {
    Field state;
    ModelParams params;
};

struct LockstepResult {
    RunStatus status = RunStatus::completed;
    double t_star = std::numeric_limits<double>::quiet_NaN();
    std::size_t failed_member = 0; // valid when status != completed
    double t_final = 0.0;
};

using LockstepObserver =
    std::function<void(double t, const std::vector<LockstepMember>&)>;

LockstepResult run_lockstep(std::vector<LockstepMember>& members,
                            const StepControl& c,
                            const LockstepObserver& observe);

} // namespace chlab
