#include <doctest.h>

#include <cmath>
#include <random>

#include "chlab/dynamics.hpp"
#include "chlab/oracles.hpp"

using namespace chlab;

namespace {

Field band_field(const Grid& g, int kmax, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    Spectrum s = Spectrum::zero(g);
    for (int k = 1; k <= kmax; ++k) {
        const double mag = std::exp(-0.4 * k);
        const double phase = two_pi * unit();
        const cplx c = mag * cplx(std::cos(phase), std::sin(phase));
        s.set_coeff(k, c);
        s.set_coeff(-k, std::conj(c));
    }
    return transform_inverse(s);
}

ModelParams ch_params(double alpha, double nu = 0.0, double gamma = 2.0) {
    ModelParams p;
    p.alpha = alpha;
    p.nu = nu;
    p.gamma = gamma;
    p.equation = Equation::camassa_holm;
    return p;
}

ModelParams burgers_params(double nu = 0.0, double gamma = 2.0) {
    ModelParams p;
    p.alpha = 0.0;
    p.nu = nu;
    p.gamma = gamma;
    p.equation = Equation::burgers;
    return p;
}

} // namespace

TEST_CASE("model params validation") {
    CHECK_THROWS_AS(ch_params(-0.1).validate(), ConfigError);
    CHECK_THROWS_AS(ch_params(1.5).validate(), ConfigError);
    CHECK_THROWS_AS(ch_params(0.5, -1.0).validate(), ConfigError);
    CHECK_THROWS_AS(ch_params(0.5, 1.0, 2.5).validate(), ConfigError);
    CHECK_NOTHROW(ch_params(1.0).validate()); // peakon case
    CHECK_NOTHROW(ch_params(0.0).validate());
}

TEST_CASE("rhs_ch frozen values") {
    Grid g(128, two_pi);

    // constants are equilibria for nu = 0
    const Field c = Field::from_function(g, [](double) { return 1.7; });
    CHECK(max_abs(rhs_ch(c, ch_params(0.5))) < 1e-13);

    // u = sin(x), alpha = 1: closed-form Fourier modes give -0.6 sin(2x)
    //   -sin cos = -sin(2x)/2
    //   u^2 + u_x^2/2 = 3/4 - cos(2x)/4, Helmholtz eigenvalue 1/5 at |xi| = 2,
    //   d/dx -> sin(2x)/10, total -0.5 - 0.1 = -0.6
    const Field sinx = Field::from_function(g, [](double x) { return std::sin(x); });
    const Field expect = Field::from_function(
        g, [](double x) { return -0.6 * std::sin(2.0 * x); });
    CHECK(max_abs_diff(rhs_ch(sinx, ch_params(1.0)), expect) < 1e-12);

    // alpha = 0 collapses to the Burgers form
    const Field f = band_field(g, 20, 61);
    CHECK(max_abs_diff(rhs_ch(f, ch_params(0.0)), rhs_burgers(f, burgers_params()))
          < 1e-12);
}

TEST_CASE("rhs_burgers frozen values") {
    Grid g(128, two_pi);
    const Field c = Field::from_function(g, [](double) { return 2.0; });
    CHECK(max_abs(rhs_burgers(c, burgers_params(1.0, 0.7))) < 1e-13);

    const Field sinx = Field::from_function(g, [](double x) { return std::sin(x); });
    const Field m3sincos = Field::from_function(
        g, [](double x) { return -1.5 * std::sin(2.0 * x); });
    CHECK(max_abs_diff(rhs_burgers(sinx, burgers_params()), m3sincos) < 1e-12);

    const Field cosx = Field::from_function(g, [](double x) { return std::cos(x); });
    const Field expect = Field::from_function(g, [](double x) {
        return 1.5 * std::sin(2.0 * x) - std::cos(x);
    });
    CHECK(max_abs_diff(rhs_burgers(cosx, burgers_params(1.0, 2.0)), expect) < 1e-12);
}

TEST_CASE("equivalent form matches rhs_ch") {
    Grid g(128, two_pi);
    for (double a : {0.0, 0.1, 0.5, 0.9}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Field u = band_field(g, 20, 100 + seed);
            CHECK(max_abs_diff(rhs_equivalent_form(u, ch_params(a)),
                               rhs_ch(u, ch_params(a))) < 1e-11);
        }
    }

    // alpha = 0: exactly -3 u u_x
    const Field u = band_field(g, 20, 3);
    CHECK(max_abs_diff(rhs_equivalent_form(u, ch_params(0.0)),
                       rhs_burgers(u, burgers_params())) < 1e-12);

    // u = sin(x), alpha = 1: -3 sin cos + 0.8 sin 2x + 0.1 sin 2x = -0.6 sin 2x
    const Field sinx = Field::from_function(g, [](double x) { return std::sin(x); });
    const Field expect = Field::from_function(
        g, [](double x) { return -0.6 * std::sin(2.0 * x); });
    CHECK(max_abs_diff(rhs_equivalent_form(sinx, ch_params(1.0)), expect) < 1e-12);
}

TEST_CASE("source term I") {
    Grid g(128, two_pi);
    const Field c = Field::from_function(g, [](double) { return 1.2; });
    CHECK(max_abs(source_term_I(c, ch_params(0.5))) < 1e-13);
    CHECK_THROWS_AS(source_term_I(c, ch_params(0.0)), ConfigError);

    // ||I||_{H^{s-1}} scales as alpha^2 on fixed u = sin(x)
    const Field sinx = Field::from_function(g, [](double x) { return std::sin(x); });
    const double n1 = hs_norm(source_term_I(sinx, ch_params(0.02)), 1.0);
    const double n2 = hs_norm(source_term_I(sinx, ch_params(0.01)), 1.0);
    CHECK(n1 / n2 == doctest::Approx(4.0).epsilon(0.01));

    // definition chase: rhs_equivalent_form + 3 u u_x = -I
    for (double a : {0.1, 0.5, 0.9}) {
        const Field u = band_field(g, 15, 9);
        const Field uux = transform_inverse(
            dealias(transform_forward(pointwise_product(u, derivative(u, 1)))));
        const Field lhs = rhs_equivalent_form(u, ch_params(a)) + 3.0 * uux;
        const Field rhs_v = -1.0 * source_term_I(u, ch_params(a));
        CHECK(max_abs_diff(lhs, rhs_v) < 1e-11);
    }
}

TEST_CASE("cfl_dt") {
    Grid g(256, two_pi);
    StepControl c;
    c.dt_max = 0.05;
    c.cfl = 0.3;

    const Field zero = Field::zero(g);
    CHECK(cfl_dt(zero, c, ch_params(0.1)) == doctest::Approx(c.dt_max));

    const Field u = band_field(g, 10, 5);
    const Field u2 = 2.0 * u;
    const double dt1 = cfl_dt(u, c, ch_params(0.1));
    const double dt2 = cfl_dt(u2, c, ch_params(0.1));
    CHECK(dt1 == doctest::Approx(2.0 * dt2).epsilon(1e-12));

    // explicit dissipation bound: nu = 1, gamma = 2, N = 256 -> dt <= 2/128^2
    const double dt_nu = cfl_dt(zero, c, ch_params(0.1, 1.0, 2.0), false);
    CHECK(dt_nu <= 2.0 / (128.0 * 128.0) + 1e-15);
    // integrating factor removes that bound
    CHECK(cfl_dt(zero, c, ch_params(0.1, 1.0, 2.0), true) ==
          doctest::Approx(c.dt_max));
}

TEST_CASE("step_rk4 order") {
    Grid g(64, two_pi);
    const Field u = Field::from_function(g, [](double) { return 1.0; });

    // rhs = 0 keeps the state
    const Field same = step_rk4(u, 0.1, [](const Field& v) { return 0.0 * v; });
    CHECK(max_abs_diff(same, u) == 0.0);

    // linear decay u' = -u: one step matches exp(-dt) to O(dt^5)
    auto decay = [](const Field& v) { return -1.0 * v; };
    for (double dt : {0.1, 0.05}) {
        const Field stepped = step_rk4(u, dt, decay);
        const double err = std::abs(stepped[0] - std::exp(-dt));
        CHECK(err < dt * dt * dt * dt * dt / 100.0);
    }
    const double e1 = std::abs(step_rk4(u, 0.1, decay)[0] - std::exp(-0.1));
    const double e2 = std::abs(step_rk4(u, 0.05, decay)[0] - std::exp(-0.05));
    CHECK(e1 / e2 == doctest::Approx(32.0).epsilon(0.2));
}

TEST_CASE("solver self-convergence is fourth order") {
    Grid g(256, two_pi);
    const Field u0 = Field::from_function(g, [](double x) { return std::sin(x); });
    const ModelParams p = burgers_params();

    auto run_fixed = [&](double dt) {
        Field u = dealias(u0);
        const int steps = static_cast<int>(std::round(0.1 / dt));
        for (int i = 0; i < steps; ++i)
            u = step_rk4(u, dt, [&p](const Field& v) { return rhs(v, p); });
        return u;
    };

    const Field a = run_fixed(4e-3);
    const Field b = run_fixed(2e-3);
    const Field c = run_fixed(1e-3);
    const double e1 = max_abs_diff(a, b);
    const double e2 = max_abs_diff(b, c);
    const double order = std::log2(e1 / e2);
    CHECK(order == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("integrating factor stepping") {
    Grid g(128, two_pi);
    const Field u = band_field(g, 20, 77);

    // pure dissipation: exact per-mode decay
    ModelParams p = ch_params(0.3, 0.7, 1.4);
    auto zero_nl = [](const Field& v) { return 0.0 * v; };
    const double dt = 0.05;
    const Field decayed = step_if_rk4(u, dt, p, zero_nl, 0.0);
    const Spectrum su = transform_forward(u);
    const Spectrum sd = transform_forward(decayed);
    for (int k = 1; k <= 20; ++k) {
        const double factor =
            std::exp(-p.nu * std::pow(std::abs(g.freq(k)), p.gamma) * dt);
        CHECK(std::abs(sd.coeff(k) - factor * su.coeff(k)) < 1e-14);
    }

    // nu = 0: identical to the explicit step
    ModelParams p0 = ch_params(0.3, 0.0);
    const Field expl = step_rk4(u, dt, [&p0](const Field& v) { return rhs(v, p0); });
    CHECK(max_abs_diff(step_if_rk4(u, dt, p0), expl) == 0.0);

    // viscous Burgers: IF and explicit agree at small dt
    ModelParams pv = burgers_params(0.1, 2.0);
    Field a = u, b = u;
    const double dts = 2e-5;
    for (int i = 0; i < 50; ++i) {
        a = step_if_rk4(a, dts, pv);
        b = step_rk4(b, dts, [&pv](const Field& v) { return rhs(v, pv); });
    }
    CHECK(max_abs_diff(a, b) < 1e-9);
}

TEST_CASE("breaking detection") {
    Grid g(256, two_pi);
    StepControl c;
    c.breaking_slope_threshold = -25.0;

    // frozen smooth state never flags
    const Field sinx = Field::from_function(g, [](double x) { return std::sin(x); });
    const StateCheck chk = detect_breaking(sinx, c, burgers_params(), 2.0);
    CHECK(!chk.triggered);
    CHECK(chk.min_slope == doctest::Approx(-1.0).epsilon(1e-10));

    // inviscid Burgers from sin(x) breaks near T* = 1/3
    c.t_end = 0.5;
    const Trajectory tr = solve(sinx, burgers_params(), c);
    CHECK(tr.status == RunStatus::breaking_detected);
    CHECK(tr.t_star > 0.95 / 3.0);
    CHECK(tr.t_star < 1.05 / 3.0);

    // CH with small smooth data completes
    StepControl cs;
    cs.t_end = 0.1;
    const Field small = 0.3 * sinx;
    const Trajectory ts = solve(small, ch_params(0.5), cs);
    CHECK(ts.status == RunStatus::completed);
}

TEST_CASE("solve basics") {
    Grid g(128, two_pi);
    StepControl c;
    c.t_end = 0.1;

    // zero datum stays zero
    const Trajectory tz = solve(Field::zero(g), ch_params(0.3), c);
    CHECK(tz.status == RunStatus::completed);
    CHECK(max_abs(tz.fields.back()) == 0.0);
    CHECK(tz.times.front() == 0.0);
    for (std::size_t i = 1; i < tz.times.size(); ++i)
        CHECK(tz.times[i] > tz.times[i - 1]);

    // deterministic
    const Field u0 = band_field(g, 10, 123);
    const Trajectory a = solve(u0, ch_params(0.2), c);
    const Trajectory b = solve(u0, ch_params(0.2), c);
    CHECK(max_abs_diff(a.fields.back(), b.fields.back()) == 0.0);
    CHECK(a.t_final == doctest::Approx(c.t_end));
}

TEST_CASE("conservation laws") {
    Grid g(512, two_pi);
    const Field u0 = Field::from_function(g, [](double x) {
        return 0.25 * std::sin(x) + 0.1 * std::cos(2.0 * x);
    });
    StepControl c;
    c.t_end = 0.5;
    c.norm_stride = 5;

    // CH energy int u^2 + alpha^2 u_x^2 conserved to 1e-8 relative
    const Trajectory tr = solve(u0, ch_params(0.5), c);
    REQUIRE(tr.status == RunStatus::completed);
    double emin = tr.energy_series[0], emax = emin;
    for (double e : tr.energy_series) {
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    CHECK((emax - emin) / emax < 1e-8);

    // mean conserved: all RHS terms are exact x-derivatives
    const Spectrum s0 = transform_forward(dealias(u0));
    const Spectrum sT = transform_forward(tr.fields.back());
    CHECK(std::abs(sT.coeff(0).real() - s0.coeff(0).real()) < 1e-10 * c.t_end);

    // Burgers L^2 conserved pre-breaking
    const Trajectory tb = solve(u0, burgers_params(), c);
    REQUIRE(tb.status == RunStatus::completed);
    double bmin = tb.energy_series[0], bmax = bmin;
    for (double e : tb.energy_series) {
        bmin = std::min(bmin, e);
        bmax = std::max(bmax, e);
    }
    CHECK((bmax - bmin) / bmax < 1e-8);
}

TEST_CASE("lockstep shares one dt sequence") {
    Grid g(128, two_pi);
    const Field u0 = band_field(g, 8, 17);
    std::vector<LockstepMember> ms;
    ms.push_back({u0, ch_params(0.2)});
    ms.push_back({u0, burgers_params()});

    StepControl c;
    c.t_end = 0.05;
    std::vector<double> times;
    const LockstepResult res = run_lockstep(
        ms, c, [&](double t, const std::vector<LockstepMember>&) {
            times.push_back(t);
        });
    CHECK(res.status == RunStatus::completed);
    CHECK(times.front() == 0.0);
    CHECK(times.back() == doctest::Approx(0.05));
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
}
