#include <doctest.h>

#include <cmath>
#include <random>

#include "chlab/lp.hpp"
#include "chlab/operators.hpp"

using namespace chlab;

namespace {

Field band_field(const Grid& g, int kmax, std::uint64_t seed) {
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

double rel_l2(const Field& a, const Field& b) {
    return hs_norm(a - b, 0.0) / hs_norm(b, 0.0);
}

} // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid(100, two_pi), ConfigError); // not a power of two
    CHECK_THROWS_AS(Grid(4, two_pi), ConfigError);   // too small
    CHECK_THROWS_AS(Grid(64, -1.0), ConfigError);

    Grid g(64, two_pi);
    CHECK(g.spacing() == doctest::Approx(two_pi / 64));
    const auto x = g.nodes();
    for (std::size_t j = 1; j < x.size(); ++j) CHECK(x[j] > x[j - 1]);
    CHECK(x.back() < g.length()); // half-open domain

    // ladder symmetric except the unpaired Nyquist mode
    CHECK(g.mode(0) == 0);
    CHECK(g.mode(32) == -32);
    CHECK(g.mode(63) == -1);
    CHECK(g.freq(1) == doctest::Approx(1.0));
    CHECK(g.slot(-1) == 63);
}

TEST_CASE("forward transform: constant and single mode") {
    Grid g(64, two_pi);
    const Spectrum c1 = transform_forward(
        Field::from_function(g, [](double) { return 1.0; }));
    CHECK(std::abs(c1.coeff(0) - cplx(1.0, 0.0)) < 1e-15);
    for (int k = 1; k < 32; ++k) {
        CHECK(std::abs(c1.coeff(k)) < 1e-15);
        CHECK(std::abs(c1.coeff(-k)) < 1e-15);
    }

    const Spectrum cs = transform_forward(
        Field::from_function(g, [](double x) { return std::sin(x); }));
    CHECK(std::abs(cs.coeff(1) - cplx(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(cs.coeff(-1) - cplx(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(cs.coeff(2)) < 1e-15);
}

TEST_CASE("round trip and Parseval") {
    Grid g(256, two_pi);
    const Field f = band_field(g, 40, 1);
    CHECK(rel_l2(transform_inverse(transform_forward(f)), f) < 1e-13);

    const Spectrum s = transform_forward(f);
    double grid_sum = 0.0;
    for (double v : f.samples()) grid_sum += v * v;
    grid_sum *= g.spacing();
    double spec_sum = 0.0;
    for (const cplx& c : s.coeffs()) spec_sum += std::norm(c);
    spec_sum *= g.length();
    CHECK(std::abs(grid_sum - spec_sum) < 1e-13 * spec_sum);

    // Hermitian symmetry of a real field's spectrum
    CHECK(s.hermitian_deviation() < 1e-15);
}

TEST_CASE("transform error paths") {
    Grid g(64, two_pi);
    std::vector<double> bad(g.n(), 0.0);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(transform_forward(Field(g, bad)), InvalidFieldError);

    Spectrum s = Spectrum::zero(g);
    s.set_coeff(2, cplx(1.0, 0.0));
    s.set_coeff(-2, cplx(0.5, 0.0)); // badly asymmetric
    CHECK_THROWS_AS(transform_inverse(s), SpectrumError);

    // small asymmetry is symmetrized away
    Spectrum ok = Spectrum::zero(g);
    ok.set_coeff(2, cplx(1.0, 0.0));
    ok.set_coeff(-2, cplx(1.0, 1e-13));
    const Field f = transform_inverse(ok);
    CHECK(f.finite());
}

TEST_CASE("apply_multiplier basics") {
    Grid g(64, two_pi);
    const Field f = band_field(g, 10, 2);
    const Spectrum s = transform_forward(f);

    const Spectrum id = apply_multiplier(s, [](double) { return cplx(1.0, 0.0); });
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(std::abs(id.coeffs()[i] - s.coeffs()[i]) == 0.0);

    // i xi on sin(x) gives cos(x)
    const Field sinx = Field::from_function(g, [](double x) { return std::sin(x); });
    const Spectrum ds = apply_multiplier(transform_forward(sinx),
                                         [](double xi) { return cplx(0.0, xi); });
    const Field cosx = Field::from_function(g, [](double x) { return std::cos(x); });
    CHECK(max_abs_diff(transform_inverse(ds), cosx) < 1e-13);

    // eigenfunction of (1+xi^2)^{-1}
    const Field cos2 = Field::from_function(g, [](double x) { return std::cos(2 * x); });
    const Spectrum h = apply_multiplier(transform_forward(cos2), [](double xi) {
        return cplx(1.0 / (1.0 + xi * xi), 0.0);
    });
    CHECK(max_abs_diff(transform_inverse(h), (1.0 / 5.0) * cos2) < 1e-14);
}

TEST_CASE("derivative: exact modes and spectral accuracy") {
    Grid g(64, two_pi);
    const Field sinx = Field::from_function(g, [](double x) { return std::sin(x); });
    const Field cosx = Field::from_function(g, [](double x) { return std::cos(x); });
    CHECK(max_abs_diff(derivative(sinx, 1), cosx) < 1e-12);

    const Field cos3 = Field::from_function(g, [](double x) { return std::cos(3 * x); });
    CHECK(max_abs_diff(derivative(cos3, 2), -9.0 * cos3) < 1e-11);

    const Field c = Field::from_function(g, [](double) { return 4.2; });
    CHECK(max_abs(derivative(c, 1)) < 1e-14);

    // error on exp(sin x) decays faster than any fixed power of 1/N
    double prev = 0.0;
    for (std::size_t n : {32u, 64u, 128u}) {
        Grid gn(n, two_pi);
        const Field u = Field::from_function(
            gn, [](double x) { return std::exp(std::sin(x)); });
        const Field du = Field::from_function(gn, [](double x) {
            return std::cos(x) * std::exp(std::sin(x));
        });
        const double err = max_abs_diff(derivative(u, 1), du);
        if (n == 32) {
            CHECK(err < 1e-6);
        } else {
            CHECK(err < std::max(prev / 100.0, 1e-12));
        }
        prev = err;
    }
}

TEST_CASE("helmholtz inverse") {
    Grid g(128, two_pi);
    const Field f = band_field(g, 20, 3);
    CHECK(max_abs_diff(helmholtz_inverse(f, 0.0), f) == 0.0);

    const Field cosk = Field::from_function(g, [](double x) { return std::cos(3 * x); });
    CHECK(max_abs_diff(helmholtz_inverse(cosk, 0.5),
                       (1.0 / (1.0 + 9.0 / 4.0)) * cosk) < 1e-14);

    for (double a : {0.0, 0.1, 0.5})
        CHECK(rel_l2(helmholtz_apply(helmholtz_inverse(f, a), a), f) < 1e-12);
}

TEST_CASE("green_convolve agrees with the multiplier route") {
    // unit kernel mass: constants map to themselves
    Grid g(256, two_pi);
    const Field c = Field::from_function(g, [](double) { return 2.5; });
    CHECK(max_abs_diff(green_convolve(c, 0.3), c) < 1e-10);

    // eigenvalue on cos(4x), the N = 1024 cross-check
    Grid g1k(1024, two_pi);
    const Field cos4 = Field::from_function(g1k, [](double x) { return std::cos(4 * x); });
    const Field expect = (1.0 / (1.0 + 0.09 * 16.0)) * cos4;
    CHECK(rel_l2(green_convolve(cos4, 0.3), expect) < 1e-10);

    // band-limited random data across the alpha range
    const Field f = band_field(g, 8, 4);
    for (double a : {0.05, 0.1, 0.3, 0.5, 0.9})
        CHECK(rel_l2(green_convolve(f, a), helmholtz_inverse(f, a)) < 1e-10);

    // alpha -> 0: kernel tends to the identity, error O(alpha^2)
    const double e1 = max_abs_diff(green_convolve(f, 0.02), f);
    const double e2 = max_abs_diff(green_convolve(f, 0.01), f);
    CHECK(e1 / e2 > 3.7);
    CHECK(e1 / e2 < 4.3);

    CHECK_THROWS_AS(green_convolve(f, 0.0), ConfigError);
}

TEST_CASE("fractional laplacian") {
    Grid g(64, two_pi);
    const Field cosx = Field::from_function(g, [](double x) { return std::cos(x); });
    CHECK(max_abs_diff(fractional_laplacian(cosx, 2.0), cosx) < 1e-12);

    const Field sin2 = Field::from_function(g, [](double x) { return std::sin(2 * x); });
    CHECK(max_abs_diff(fractional_laplacian(sin2, 1.0), 2.0 * sin2) < 1e-12);

    const Field c = Field::from_function(g, [](double) { return 3.0; });
    CHECK(max_abs(fractional_laplacian(c, 0.0)) < 1e-15); // 0^0 = 0 convention

    CHECK_THROWS_AS(fractional_laplacian(c, 2.5), ConfigError);
}

TEST_CASE("J^s operator") {
    Grid g(128, two_pi);
    const Field f = band_field(g, 20, 5);
    CHECK(max_abs_diff(js_operator(f, 0.0), f) < 1e-14);

    const Field cos2 = Field::from_function(g, [](double x) { return std::cos(2 * x); });
    CHECK(max_abs_diff(js_operator(cos2, 2.0), 5.0 * cos2) < 1e-12);

    CHECK(rel_l2(js_operator(js_operator(f, 1.7), -1.7), f) < 1e-12);
}

TEST_CASE("dealias: 2/3 rule") {
    Grid g(64, two_pi); // keeps |k| <= 21
    const Field f = band_field(g, 21, 6);
    CHECK(max_abs_diff(dealias(f), f) < 1e-13);

    Spectrum top = Spectrum::zero(g);
    top.set_coeff(31, cplx(0.5, 0.0));
    top.set_coeff(-31, cplx(0.5, 0.0));
    CHECK(max_abs(transform_inverse(dealias(top))) < 1e-15);

    const Spectrum d1 = dealias(transform_forward(band_field(g, 31, 7)));
    const Spectrum d2 = dealias(d1);
    for (std::size_t i = 0; i < d1.size(); ++i)
        CHECK(std::abs(d1.coeffs()[i] - d2.coeffs()[i]) == 0.0);
}

TEST_CASE("multiplier operators commute") {
    Grid g(128, two_pi);
    const Field f = band_field(g, 30, 8);
    const Field ab = js_operator(fractional_laplacian(f, 1.3), 0.7);
    const Field ba = fractional_laplacian(js_operator(f, 0.7), 1.3);
    CHECK(rel_l2(ab, ba) < 1e-12);

    const Field cd = helmholtz_inverse(derivative(f, 1), 0.4);
    const Field dc = derivative(helmholtz_inverse(f, 0.4), 1);
    CHECK(rel_l2(cd, dc) < 1e-12);
}

TEST_CASE("spectral interpolation and refinement") {
    Grid g(64, two_pi);
    const Field f = band_field(g, 10, 9);
    const Spectrum s = transform_forward(f);
    // interpolant reproduces samples
    for (std::size_t j = 0; j < g.n(); j += 7)
        CHECK(std::abs(eval_interpolant(s, g.node(j)) - f[j]) < 1e-12);
    // refinement keeps the original nodes
    const Field fine = refine_field(f, 4);
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(std::abs(fine[4 * j] - f[j]) < 1e-12);
}
