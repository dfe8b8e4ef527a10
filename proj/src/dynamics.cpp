#include "chlab/dynamics.hpp"

#include <cmath>

namespace chlab {

void ModelParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ConfigError("model: alpha must lie in [0, 1]");
    if (!(nu >= 0.0))
        throw ConfigError("model: nu must be >= 0");
    if (!(gamma >= 0.0 && gamma <= 2.0))
        throw ConfigError("model: gamma must lie in [0, 2]");
}

void StepControl::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw ConfigError("time: cfl must lie in (0, 1]");
    if (!(t_end > 0.0))
        throw ConfigError("time: t_end must be positive");
    if (!(dt_max > 0.0))
        throw ConfigError("time: dt_max must be positive");
    if (save_every == 0 || norm_stride == 0)
        throw ConfigError("time: strides must be >= 1");
}

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::breaking_detected: return "breaking-detected";
        case RunStatus::norm_cap_exceeded: return "norm-cap-exceeded";
        case RunStatus::unstable: return "unstable";
    }
    return "unknown";
}

namespace {

Spectrum masked_product_spectrum(const Field& a, const Field& b, bool mask) {
    Spectrum s = transform_forward(pointwise_product(a, b));
    return mask ? dealias(s) : s;
}

// iota xi with the Nyquist mode zeroed, matching derivative().
cplx dx_symbol(double xi, double xi_nyq) {
    if (xi == -xi_nyq) return {0.0, 0.0};
    return {0.0, xi};
}

} // namespace

Field rhs_ch(const Field& u, const ModelParams& p) {
    const Grid& g = u.grid();
    const double a2 = p.alpha * p.alpha;
    const double xi_nyq = g.max_freq();

    const Spectrum su = transform_forward(u);
    const Field ux = transform_inverse(derivative(su, 1));

    const Spectrum s_uux = masked_product_spectrum(u, ux, p.dealias);
    const Spectrum s_u2 = masked_product_spectrum(u, u, p.dealias);
    const Spectrum s_ux2 = masked_product_spectrum(ux, ux, p.dealias);

    std::vector<cplx> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double xi = g.freq_slot(i);
        cplx r = -s_uux.coeffs()[i];
        if (p.nu > 0.0 && xi != 0.0)
            r -= p.nu * std::pow(std::abs(xi), p.gamma) * su.coeffs()[i];
        const cplx quad = s_u2.coeffs()[i] + 0.5 * a2 * s_ux2.coeffs()[i];
        r -= dx_symbol(xi, xi_nyq) / (1.0 + a2 * xi * xi) * quad;
        out[i] = r;
    }
    return transform_inverse(Spectrum(g, std::move(out)));
}

Field rhs_burgers(const Field& u, const ModelParams& p) {
    const Grid& g = u.grid();
    const Spectrum su = transform_forward(u);
    const Field ux = transform_inverse(derivative(su, 1));
    const Spectrum s_uux = masked_product_spectrum(u, ux, p.dealias);

    std::vector<cplx> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double xi = g.freq_slot(i);
        cplx r = -3.0 * s_uux.coeffs()[i];
        if (p.nu > 0.0 && xi != 0.0)
            r -= p.nu * std::pow(std::abs(xi), p.gamma) * su.coeffs()[i];
        out[i] = r;
    }
    return transform_inverse(Spectrum(g, std::move(out)));
}

Field rhs_equivalent_form(const Field& u, const ModelParams& p) {
    const Grid& g = u.grid();
    const double a2 = p.alpha * p.alpha;
    const double xi_nyq = g.max_freq();

    const Spectrum su = transform_forward(u);
    const Field ux = transform_inverse(derivative(su, 1));

    const Spectrum s_uux = masked_product_spectrum(u, ux, p.dealias);
    const Spectrum s_u2 = masked_product_spectrum(u, u, p.dealias);
    const Spectrum s_ux2 = masked_product_spectrum(ux, ux, p.dealias);

    std::vector<cplx> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double xi = g.freq_slot(i);
        const double helm = 1.0 / (1.0 + a2 * xi * xi);
        const cplx dx = dx_symbol(xi, xi_nyq);
        cplx r = -3.0 * s_uux.coeffs()[i];
        r -= a2 * dx * dx * dx * helm * s_u2.coeffs()[i];
        r -= 0.5 * a2 * dx * helm * s_ux2.coeffs()[i];
        out[i] = r;
    }
    return transform_inverse(Spectrum(g, std::move(out)));
}

Field source_term_I(const Field& u_alpha, const ModelParams& p) {
    if (!(p.alpha > 0.0))
        throw ConfigError("source_term_I: alpha must be positive");
    const Grid& g = u_alpha.grid();
    const double a2 = p.alpha * p.alpha;
    const double xi_nyq = g.max_freq();

    const Spectrum su = transform_forward(u_alpha);
    const Field ux = transform_inverse(derivative(su, 1));
    const Spectrum s_u2 = masked_product_spectrum(u_alpha, u_alpha, p.dealias);
    const Spectrum s_ux2 = masked_product_spectrum(ux, ux, p.dealias);

    std::vector<cplx> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double xi = g.freq_slot(i);
        const double helm = 1.0 / (1.0 + a2 * xi * xi);
        const cplx inner = -xi * xi * s_u2.coeffs()[i] + 0.5 * s_ux2.coeffs()[i];
        out[i] = a2 * dx_symbol(xi, xi_nyq) * helm * inner;
    }
    return transform_inverse(Spectrum(g, std::move(out)));
}

Field rhs(const Field& u, const ModelParams& p) {
    return p.equation == Equation::camassa_holm ? rhs_ch(u, p) : rhs_burgers(u, p);
}

double cfl_dt(const Field& u, const StepControl& c, const ModelParams& p,
              bool integrating_factor) {
    constexpr double eps = 1e-8;
    const double speed = std::max(eps, 3.0 * max_abs(u));
    double dt = std::min(c.dt_max, c.cfl * u.grid().spacing() / speed);
    if (p.nu > 0.0 && !integrating_factor) {
        const double diss = 2.0 / (p.nu * std::pow(u.grid().max_freq(), p.gamma));
        dt = std::min(dt, diss);
    }
    return dt;
}

bool use_integrating_factor(const Field& u, const StepControl& c,
                            const ModelParams& p) {
    if (!(p.nu > 0.0)) return false;
    constexpr double eps = 1e-8;
    const double speed = std::max(eps, 3.0 * max_abs(u));
    const double adv = std::min(c.dt_max, c.cfl * u.grid().spacing() / speed);
    const double diss = 2.0 / (p.nu * std::pow(u.grid().max_freq(), p.gamma));
    return diss < adv;
}

Field step_rk4(const Field& u, double dt,
               const std::function<Field(const Field&)>& rhs_fn,
               double t_base) {
    try {
        const Field k1 = rhs_fn(u);
        const Field k2 = rhs_fn(axpy(u, 0.5 * dt, k1));
        const Field k3 = rhs_fn(axpy(u, 0.5 * dt, k2));
        const Field k4 = rhs_fn(axpy(u, dt, k3));
        std::vector<double> s(u.size());
        const double w = dt / 6.0;
        for (std::size_t j = 0; j < u.size(); ++j)
            s[j] = u[j] + w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        Field out(u.grid(), std::move(s));
        if (!out.finite())
            throw InstabilityError("step_rk4: non-finite update", t_base);
        return out;
    } catch (const InvalidFieldError&) {
        throw InstabilityError("step_rk4: non-finite stage", t_base);
    }
}

namespace {

// exp(-nu |xi|^gamma tau) applied spectrally; mean mode untouched.
Field decay_apply(const Field& f, const ModelParams& p, double tau) {
    Spectrum s = transform_forward(f);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double xi = s.grid().freq_slot(i);
        if (xi == 0.0) continue;
        s.coeffs()[i] *= std::exp(-p.nu * std::pow(std::abs(xi), p.gamma) * tau);
    }
    return transform_inverse(s);
}

} // namespace

Field step_if_rk4(const Field& u, double dt, const ModelParams& p,
                  const std::function<Field(const Field&)>& nonlinear,
                  double t_base) {
    if (!(p.nu > 0.0)) return step_rk4(u, dt, nonlinear, t_base);

    try {
        const Field a = decay_apply(u, p, 0.5 * dt);
        const Field k1 = nonlinear(u);
        const Field k2 = nonlinear(axpy(a, 0.5 * dt, decay_apply(k1, p, 0.5 * dt)));
        const Field k3 = nonlinear(axpy(a, 0.5 * dt, k2));
        const Field k4 = nonlinear(axpy(decay_apply(a, p, 0.5 * dt), dt,
                                        decay_apply(k3, p, 0.5 * dt)));
        const Field acc = decay_apply(k1, p, dt);
        const Field mid_decayed = decay_apply(k2 + k3, p, 0.5 * dt);
        const Field base = decay_apply(u, p, dt);
        std::vector<double> s(u.size());
        const double w = dt / 6.0;
        for (std::size_t j = 0; j < u.size(); ++j)
            s[j] = base[j] + w * (acc[j] + 2.0 * mid_decayed[j] + k4[j]);
        Field out(u.grid(), std::move(s));
        if (!out.finite())
            throw InstabilityError("step_if_rk4: non-finite update", t_base);
        return out;
    } catch (const InvalidFieldError&) {
        throw InstabilityError("step_if_rk4: non-finite stage", t_base);
    }
}

Field step_if_rk4(const Field& u, double dt, const ModelParams& p,
                  double t_base) {
    ModelParams nl = p;
    nl.nu = 0.0;
    return step_if_rk4(u, dt, p,
                       [&nl](const Field& v) { return rhs(v, nl); }, t_base);
}

StateCheck detect_breaking(const Field& u, const StepControl& c,
                           const ModelParams& p, double norm_index) {
    StateCheck chk;
    if (!u.finite()) {
        chk.triggered = true;
        chk.reason = RunStatus::unstable;
        return chk;
    }
    const Spectrum s = transform_forward(u);
    chk.min_slope = min_value(transform_inverse(derivative(s, 1)));
    chk.norm = hs_norm(s, norm_index);

    // spectral energy in the top third of the live (post-dealias) band
    const int k_live = p.dealias ? s.grid().dealias_limit()
                                 : static_cast<int>(s.grid().n() / 2);
    const double cut = 2.0 / 3.0 * static_cast<double>(k_live);
    double top = 0.0, total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int k = std::abs(s.grid().mode(i));
        if (k == 0 || k > k_live) continue;
        const double e = std::norm(s.coeffs()[i]);
        total += e;
        if (static_cast<double>(k) > cut) top += e;
    }
    chk.tail_fraction = total > 1e-300 ? top / total : 0.0;

    if (chk.min_slope < c.breaking_slope_threshold || chk.tail_fraction > 0.1) {
        chk.triggered = true;
        chk.reason = RunStatus::breaking_detected;
    } else if (chk.norm > c.norm_cap) {
        chk.triggered = true;
        chk.reason = RunStatus::norm_cap_exceeded;
    }
    return chk;
}

LockstepResult run_lockstep(std::vector<LockstepMember>& members,
                            const StepControl& c,
                            const LockstepObserver& observe) {
    c.validate();
    if (members.empty()) throw ConfigError("run_lockstep: no members");
    const Grid& g = members.front().state.grid();
    for (auto& m : members) {
        m.params.validate();
        if (!(m.state.grid() == g))
            throw ConfigError("run_lockstep: members must share one grid");
        if (m.params.dealias) m.state = dealias(m.state);
    }

    LockstepResult res;
    double t = 0.0;
    std::size_t step = 0;
    const double primary_s = c.norm_indices.empty() ? 2.0 : c.norm_indices[0];
    if (observe) observe(t, members);

    const double t_eps = 1e-14 * c.t_end;
    while (t < c.t_end - t_eps) {
        double dt = c.t_end - t;
        std::vector<bool> use_if(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            use_if[i] = use_integrating_factor(members[i].state, c,
                                               members[i].params);
            dt = std::min(dt, cfl_dt(members[i].state, c, members[i].params,
                                     use_if[i]));
        }

        try {
            for (std::size_t i = 0; i < members.size(); ++i) {
                const ModelParams& p = members[i].params;
                if (use_if[i]) {
                    members[i].state = step_if_rk4(members[i].state, dt, p, t);
                } else {
                    members[i].state = step_rk4(
                        members[i].state, dt,
                        [&p](const Field& v) { return rhs(v, p); }, t);
                }
            }
        } catch (const InstabilityError& e) {
            res.status = RunStatus::unstable;
            res.t_star = e.time;
            res.t_final = t;
            return res;
        }

        t += dt;
        ++step;

        bool stop = false;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const StateCheck chk =
                detect_breaking(members[i].state, c, members[i].params, primary_s);
            if (chk.triggered) {
                res.status = chk.reason;
                res.t_star = t;
                res.failed_member = i;
                stop = true;
                break;
            }
        }

        const bool last = stop || t >= c.t_end - t_eps;
        if (observe && (step % c.norm_stride == 0 || last)) observe(t, members);
        if (stop) break;
    }
    res.t_final = t;
    return res;
}

Trajectory solve(const Field& u0, const ModelParams& p, const StepControl& c) {
    std::vector<LockstepMember> members;
    members.push_back({u0, p});

    Trajectory tr;
    tr.norm_series.resize(c.norm_indices.size());
    const double e_alpha = p.equation == Equation::camassa_holm ? p.alpha : 0.0;

    std::size_t observed = 0;
    const std::size_t snap_calls = std::max<std::size_t>(
        1, c.save_every / std::max<std::size_t>(1, c.norm_stride));

    auto observer = [&](double t, const std::vector<LockstepMember>& ms) {
        const Field& u = ms[0].state;
        const Spectrum s = transform_forward(u);
        tr.sample_times.push_back(t);
        for (std::size_t i = 0; i < c.norm_indices.size(); ++i)
            tr.norm_series[i].push_back(hs_norm(s, c.norm_indices[i]));
        tr.min_slope_series.push_back(
            min_value(transform_inverse(derivative(s, 1))));
        double e = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double xi = s.grid().freq_slot(i);
            e += (1.0 + e_alpha * e_alpha * xi * xi) * std::norm(s.coeffs()[i]);
        }
        tr.energy_series.push_back(s.grid().length() * e);

        if (observed % snap_calls == 0 &&
            (tr.times.empty() || t > tr.times.back())) {
            Field snap = u;
            snap.time = t;
            snap.alpha_tag = e_alpha;
            tr.times.push_back(t);
            tr.fields.push_back(std::move(snap));
        }
        ++observed;
    };

    const LockstepResult res = run_lockstep(members, c, observer);
    tr.status = res.status;
    tr.t_star = res.t_star;
    tr.t_final = res.t_final;

    // always keep the final state as a snapshot
    if (!tr.sample_times.empty() &&
        (tr.times.empty() || tr.times.back() < tr.sample_times.back())) {
        Field snap = members[0].state;
        snap.time = res.t_final;
        snap.alpha_tag = e_alpha;
        tr.times.push_back(tr.sample_times.back());
        tr.fields.push_back(std::move(snap));
    }
    return tr;
}

} // namespace chlab
