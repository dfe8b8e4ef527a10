#include "chlab/verify.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "chlab/experiments.hpp"

namespace chlab {

namespace {

Field random_band_field(const Grid& g, int kmax, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    Spectrum s = Spectrum::zero(g);
    for (int k = 1; k <= kmax; ++k) {
        const double mag = std::exp(-0.3 * k);
        const double phase = two_pi * unit();
        const cplx c = mag * cplx(std::cos(phase), std::sin(phase));
        s.set_coeff(k, c);
        s.set_coeff(-k, std::conj(c));
    }
    return transform_inverse(s);
}

double rel_l2_diff(const Field& a, const Field& b) {
    const double den = std::max(1e-300, hs_norm(b, 0.0));
    return hs_norm(a - b, 0.0) / den;
}

void add(std::vector<Check>& out, const std::string& name, double value,
         double threshold, bool larger_is_fail = true) {
    Check c;
    c.name = name;
    c.value = value;
    c.threshold = threshold;
    c.pass = larger_is_fail ? value <= threshold : value >= threshold;
    out.push_back(c);
}

} // namespace

std::vector<Check> verify_spectral() {
    std::vector<Check> out;
    const Grid g(256, two_pi);
    const Field f = random_band_field(g, 40, 7);

    add(out, "round_trip",
        rel_l2_diff(transform_inverse(transform_forward(f)), f), 1e-13);

    {
        const Spectrum s = transform_forward(f);
        double grid_sum = 0.0;
        for (double v : f.samples()) grid_sum += v * v;
        grid_sum *= g.spacing();
        double spec_sum = 0.0;
        for (const cplx& c : s.coeffs()) spec_sum += std::norm(c);
        spec_sum *= g.length();
        add(out, "parseval", std::abs(grid_sum - spec_sum) / spec_sum, 1e-13);
    }

    {
        double prev = 0.0;
        for (std::size_t n : {32u, 64u, 128u}) {
            const Grid gn(n, two_pi);
            const Field u = Field::from_function(
                gn, [](double x) { return std::exp(std::sin(x)); });
            const Field du_exact = Field::from_function(gn, [](double x) {
                return std::cos(x) * std::exp(std::sin(x));
            });
            const double err = max_abs_diff(derivative(u, 1), du_exact);
            if (n == 32) {
                add(out, "deriv_spectral_accuracy_n32", err, 1e-6);
            } else {
                add(out, "deriv_spectral_accuracy_n" + std::to_string(n), err,
                    std::max(prev / 100.0, 1e-12));
            }
            prev = err;
        }
    }

    for (double a : {0.0, 0.1, 0.5}) {
        const Field back = helmholtz_apply(helmholtz_inverse(f, a), a);
        add(out, "helmholtz_identity_a" + std::to_string(a),
            rel_l2_diff(back, f), 1e-12);
    }

    for (double a : {0.05, 0.1, 0.3, 0.5, 0.9}) {
        const Field gre = green_convolve(f, a);
        const Field spe = helmholtz_inverse(f, a);
        add(out, "green_vs_helmholtz_a" + std::to_string(a),
            rel_l2_diff(gre, spe), 1e-10);
    }

    {
        const Field ab = js_operator(fractional_laplacian(f, 1.3), 0.7);
        const Field ba = fractional_laplacian(js_operator(f, 0.7), 1.3);
        add(out, "multipliers_commute", rel_l2_diff(ab, ba), 1e-12);
    }

    {
        Spectrum s = Spectrum::zero(g);
        s.set_coeff(static_cast<int>(g.n() / 2) - 1, cplx(0.5, 0.0));
        s.set_coeff(-(static_cast<int>(g.n() / 2) - 1), cplx(0.5, 0.0));
        const Spectrum d = dealias(s);
        add(out, "dealias_kills_top_mode", d.max_abs(), 0.0);
        const Spectrum dd = dealias(dealias(transform_forward(f)));
        const Spectrum d1 = dealias(transform_forward(f));
        double diff = 0.0;
        for (std::size_t i = 0; i < dd.size(); ++i)
            diff = std::max(diff, std::abs(dd.coeffs()[i] - d1.coeffs()[i]));
        add(out, "dealias_idempotent", diff, 0.0);
    }
    return out;
}

std::vector<Check> verify_lp() {
    std::vector<Check> out;
    for (std::size_t n : {64u, 256u}) {
        for (double L : {two_pi, 40.0 * pi}) {
            const Grid g(n, L);
            const DyadicPartition part(g);
            add(out,
                "partition_of_unity_n" + std::to_string(n) + "_L" +
                    std::to_string(static_cast<int>(L)),
                part.partition_deviation(), 1e-12);
        }
    }

    const Grid g(256, two_pi);
    const DyadicPartition part(g);

    {
        // cos(8x) lives at |xi| = 8; blocks with 8 outside the annulus vanish
        const Field f = Field::from_function(
            g, [](double x) { return std::cos(8.0 * x); });
        double leak = 0.0;
        for (int q = -1; q <= part.q_max(); ++q) {
            const double lo = q == -1 ? 0.0 : 0.75 * std::ldexp(1.0, q);
            const double hi =
                q == -1 ? 4.0 / 3.0 : (8.0 / 3.0) * std::ldexp(1.0, q);
            const bool inside = 8.0 >= lo && 8.0 <= hi;
            if (!inside) leak = std::max(leak, max_abs(lp_block(f, part, q)));
        }
        add(out, "block_support", leak, 1e-15);
    }

    {
        const Field f = random_band_field(g, 80, 11);
        Field sum = lp_block(f, part, -1);
        for (int q = 0; q <= part.q_max(); ++q) sum = sum + lp_block(f, part, q);
        add(out, "blocks_sum_to_identity", rel_l2_diff(sum, f), 1e-12);
    }

    {
        const Field f = rough_field(g, 2.0, 3);
        const Field once = low_cutoff(f, 3, CutoffMode::sharp);
        const Field twice = low_cutoff(once, 3, CutoffMode::sharp);
        add(out, "sharp_cutoff_idempotent", max_abs_diff(once, twice), 1e-15);
        add(out, "sharp_cutoff_nonexpansive",
            hs_norm(once, 2.0) - hs_norm(f, 2.0) , 1e-13);

        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        for (int n = 0; n <= 8; ++n) {
            const double tail = hs_norm(f - low_cutoff(f, n, CutoffMode::sharp), 2.0);
            monotone = monotone && tail <= prev + 1e-14;
            prev = tail;
        }
        add(out, "cutoff_tail_monotone", monotone ? 0.0 : 1.0, 0.5);
        add(out, "cutoff_tail_vanishes", prev, 1e-13);
    }

    {
        const Field f = random_band_field(g, 60, 5);
        double min_deficit = 0.0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const Field h = random_band_field(g, 60, 1000 + seed);
            min_deficit = std::min(min_deficit, interpolation_check(h, 2.0));
        }
        min_deficit = std::min(min_deficit, interpolation_check(f, 2.0));
        add(out, "interpolation_deficit", min_deficit, -1e-12, false);
    }

    {
        // pointwise product vs folded spectral convolution
        const Field u = random_band_field(g, 30, 21);
        const Field v = random_band_field(g, 30, 22);
        const Spectrum su = transform_forward(u);
        const Spectrum sv = transform_forward(v);
        Spectrum conv = Spectrum::zero(g);
        const int n = static_cast<int>(g.n());
        for (int i = 0; i < n; ++i) {
            cplx acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                const int k = ((i - j) % n + n) % n;
                acc += su.coeffs()[static_cast<std::size_t>(j)] *
                       sv.coeffs()[static_cast<std::size_t>(k)];
            }
            conv.coeffs()[static_cast<std::size_t>(i)] = acc;
        }
        const Spectrum direct = transform_forward(pointwise_product(u, v));
        double diff = 0.0;
        for (std::size_t i = 0; i < conv.size(); ++i)
            diff = std::max(diff, std::abs(conv.coeffs()[i] - direct.coeffs()[i]));
        add(out, "product_two_routes", diff, 1e-12);
    }

    {
        // corpus maxima stable under refinement
        double max_coarse = 0.0, max_fine = 0.0;
        const Grid g2(512, two_pi);
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const Field u1 = rough_field(g, 2.0, 100 + seed);
            const Field v1 = rough_field(g, 2.0, 200 + seed);
            max_coarse = std::max(max_coarse, product_probe(u1, v1, 2.0));
            const Field u2 = rough_field(g2, 2.0, 100 + seed);
            const Field v2 = rough_field(g2, 2.0, 200 + seed);
            max_fine = std::max(max_fine, product_probe(u2, v2, 2.0));
        }
        add(out, "product_corpus_stable",
            std::abs(std::log(max_fine / max_coarse)), std::log(2.0));

        max_coarse = max_fine = 0.0;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const Field u1 = rough_field(g, 2.0, 300 + seed);
            const Field v1 = rough_field(g, 2.0, 400 + seed);
            max_coarse = std::max(max_coarse, commutator_probe(u1, v1, 2.0));
            const Field u2 = rough_field(g2, 2.0, 300 + seed);
            const Field v2 = rough_field(g2, 2.0, 400 + seed);
            max_fine = std::max(max_fine, commutator_probe(u2, v2, 2.0));
        }
        add(out, "commutator_corpus_stable",
            std::abs(std::log(max_fine / max_coarse)), std::log(2.0));
    }

    {
        const Field f = rough_field(g, 2.0, 77);
        const double base = bernstein_probe(f, 2, 1.0, 2.0);
        double worst = 0.0;
        for (int n = 2; n <= 7; ++n)
            worst = std::max(worst, bernstein_probe(f, n, 1.0, 2.0));
        add(out, "bernstein_bounded", worst, 1.2 * base);
    }
    return out;
}

std::vector<Check> verify_oracle() {
    std::vector<Check> out;
    const Grid g(256, two_pi);

    {
        CharacteristicSolution sol([](double x) { return std::sin(x); },
                                   [](double x) { return std::cos(x); }, two_pi);
        double err0 = 0.0;
        for (std::size_t j = 0; j < g.n(); ++j)
            err0 = std::max(err0,
                            std::abs(sol(g.node(j), 0.0) - std::sin(g.node(j))));
        add(out, "characteristics_t0_identity", err0, 1e-14);
        add(out, "characteristics_shock_time",
            std::abs(sol.shock_time() - 1.0 / 3.0), 1e-6);

        // brute-force inversion of x0 + 3 t u0(x0) = x on a dense scan
        const double t = 0.2, x = 0.5 * pi;
        double best_x0 = 0.0, best = 1e300;
        const std::size_t m = 1 << 20;
        for (std::size_t j = 0; j <= m; ++j) {
            const double x0 = -two_pi + 4.0 * two_pi * j / m;
            const double r = std::abs(x0 + 3.0 * t * std::sin(x0) - x);
            if (r < best) {
                best = r;
                best_x0 = x0;
            }
        }
        for (int it = 0; it < 200; ++it) { // bisection refinement
            const double lo = best_x0 - two_pi / m, hi = best_x0 + two_pi / m;
            const double mid = 0.5 * (lo + hi);
            auto eval = [&](double y) { return y + 3.0 * t * std::sin(y) - x; };
            best_x0 = eval(mid) * eval(lo) <= 0.0 ? 0.5 * (lo + mid)
                                                  : 0.5 * (mid + hi);
        }
        add(out, "characteristics_vs_bruteforce",
            std::abs(sol(x, t) - std::sin(best_x0)), 1e-10);
    }

    {
        const Field u0 = Field::from_function(
            g, [](double x) { return std::sin(x); });
        add(out, "shock_time_sin", std::abs(shock_time(u0) - 1.0 / 3.0), 1e-6);
        const Field u2 = 2.0 * u0;
        add(out, "shock_time_homogeneous",
            std::abs(shock_time(u2) - shock_time(u0) / 2.0), 1e-8);
        const Field c = Field::from_function(g, [](double) { return 0.7; });
        add(out, "shock_time_constant_inf",
            std::isinf(shock_time(c)) ? 0.0 : 1.0, 0.5);
    }

    {
        const Grid gp(4096, 40.0 * pi);
        const Field p0 = peakon_field(1.0, 1.0, 0.0, gp);
        // shift by an exact number of grid cells: traveling wave is a sample shift
        const std::size_t shift = 100;
        const double t = static_cast<double>(shift) * gp.spacing();
        const Field pt = peakon_field(1.0, 1.0, t, gp);
        double err = 0.0;
        for (std::size_t j = 0; j < gp.n(); ++j) {
            const std::size_t j0 = (j + gp.n() - shift) % gp.n();
            err = std::max(err, std::abs(pt[j] - p0[j0]));
        }
        add(out, "peakon_translation", err, 1e-12);
        add(out, "peakon_h1_energy",
            std::abs(peakon_energy_closed_form(1.0, 1.0, 40.0 * pi) - 2.0),
            1e-10);
    }

    {
        const Field u0 = Field::from_function(
            g, [](double x) { return std::sin(x); });
        ModelParams pb;
        pb.alpha = 0.0;
        pb.equation = Equation::burgers;
        StepControl c;
        c.t_end = 0.1;
        Trajectory tr = solve(u0, pb, c);
        const Field ref = fd_reference(u0, pb, 0.1);
        add(out, "fd_vs_spectral_burgers",
            max_abs_diff(tr.fields.back(), ref), 1e-4);

        ModelParams pc;
        pc.alpha = 0.5;
        pc.equation = Equation::camassa_holm;
        Trajectory tc = solve(u0, pc, c);
        const Field refc = fd_reference(u0, pc, 0.1);
        add(out, "fd_vs_spectral_ch", max_abs_diff(tc.fields.back(), refc), 1e-3);
    }
    return out;
}

std::vector<Check> verify_conservation() {
    std::vector<Check> out;
    const Grid g(512, two_pi);
    const Field u0 = Field::from_function(g, [](double x) {
        return 0.25 * std::sin(x) + 0.1 * std::cos(2.0 * x);
    });

    StepControl c;
    c.t_end = 0.5;
    c.norm_stride = 5;

    {
        ModelParams p;
        p.alpha = 0.5;
        p.equation = Equation::camassa_holm;
        const Trajectory tr = solve(u0, p, c);

        const Spectrum s0 = transform_forward(dealias(u0));
        const double mean0 = s0.coeffs()[0].real();
        const Spectrum sT = transform_forward(tr.fields.back());
        add(out, "ch_mean_drift",
            std::abs(sT.coeffs()[0].real() - mean0) / c.t_end, 1e-10);

        double emin = tr.energy_series[0], emax = emin;
        for (double e : tr.energy_series) {
            emin = std::min(emin, e);
            emax = std::max(emax, e);
        }
        add(out, "ch_energy_drift", (emax - emin) / emax, 1e-8);
    }

    {
        ModelParams p;
        p.alpha = 0.0;
        p.equation = Equation::burgers;
        const Trajectory tr = solve(u0, p, c);
        double emin = tr.energy_series[0], emax = emin;
        for (double e : tr.energy_series) {
            emin = std::min(emin, e);
            emax = std::max(emax, e);
        }
        add(out, "burgers_l2_drift", (emax - emin) / emax, 1e-8);
    }

    {
        ModelParams p;
        p.alpha = 0.3;
        p.equation = Equation::camassa_holm;
        StepControl cs = c;
        cs.t_end = 0.1;
        const Trajectory a = solve(u0, p, cs);
        const Trajectory b = solve(u0, p, cs);
        double diff = 0.0;
        for (std::size_t j = 0; j < a.fields.back().size(); ++j)
            diff = std::max(diff, std::abs(a.fields.back()[j] -
                                           b.fields.back()[j]));
        add(out, "solve_deterministic", diff, 0.0);
    }
    return out;
}

int run_verify_suite(const std::string& suite, std::ostream& out) {
    std::vector<Check> checks;
    if (suite == "spectral")
        checks = verify_spectral();
    else if (suite == "lp")
        checks = verify_lp();
    else if (suite == "oracle")
        checks = verify_oracle();
    else if (suite == "conservation")
        checks = verify_conservation();
    else {
        out << "unknown suite '" << suite
            << "' (spectral | lp | oracle | conservation)\n";
        return 2;
    }

    bool all = true;
    for (const Check& c : checks) {
        all = all && c.pass;
        out << (c.pass ? "PASS " : "FAIL ") << c.name << " (value "
            << c.value << ", bound " << c.threshold << ")\n";
    }
    out << (all ? "suite OK" : "suite FAILED") << " (" << checks.size()
        << " checks)\n";
    return all ? 0 : 1;
}

} // namespace chlab
