#include "chlab/operators.hpp"

#include <algorithm>
#include <cmath>

namespace chlab {

namespace {

// i^order for integer order.
cplx i_power(int order) {
    switch (((order % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace

Spectrum derivative(const Spectrum& s, int order) {
    if (order < 1)
        throw ConfigError("derivative: order must be >= 1");
    const cplx ip = i_power(order);
    std::vector<cplx> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double xi = s.grid().freq_slot(i);
        out[i] = ip * std::pow(xi, order) * s.coeffs()[i];
    }
    if (order % 2 == 1) out[s.size() / 2] = 0.0; // unpaired Nyquist mode
    return Spectrum(s.grid(), std::move(out));
}

Field derivative(const Field& f, int order) {
    return transform_inverse(derivative(transform_forward(f), order));
}

Spectrum helmholtz_inverse(const Spectrum& s, double alpha) {
    if (alpha < 0.0)
        throw ConfigError("helmholtz_inverse: alpha must be >= 0");
    const double a2 = alpha * alpha;
    return apply_multiplier(s, [a2](double xi) {
        return cplx(1.0 / (1.0 + a2 * xi * xi), 0.0);
    });
}

Field helmholtz_inverse(const Field& f, double alpha) {
    if (alpha == 0.0) return f; // identity, exactly
    return transform_inverse(helmholtz_inverse(transform_forward(f), alpha));
}

Field helmholtz_apply(const Field& f, double alpha) {
    Spectrum s = transform_forward(f);
    Spectrum sxx = derivative(s, 2);
    std::vector<cplx> out(s.size());
    const double a2 = alpha * alpha;
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = s.coeffs()[i] - a2 * sxx.coeffs()[i];
    return transform_inverse(Spectrum(s.grid(), std::move(out)));
}

Spectrum fractional_laplacian(const Spectrum& s, double gamma) {
    if (gamma < 0.0 || gamma > 2.0)
        throw ConfigError("fractional_laplacian: gamma must lie in [0, 2]");
    return apply_multiplier(s, [gamma](double xi) {
        if (xi == 0.0) return cplx(0.0, 0.0); // 0^0 = 0 convention
        return cplx(std::pow(std::abs(xi), gamma), 0.0);
    });
}

Field fractional_laplacian(const Field& f, double gamma) {
    return transform_inverse(fractional_laplacian(transform_forward(f), gamma));
}

Spectrum js_operator(const Spectrum& s, double order) {
    return apply_multiplier(s, [order](double xi) {
        return cplx(std::pow(1.0 + xi * xi, 0.5 * order), 0.0);
    });
}

Field js_operator(const Field& f, double order) {
    return transform_inverse(js_operator(transform_forward(f), order));
}

Spectrum dealias(const Spectrum& s) {
    const int kmax = s.grid().dealias_limit();
    std::vector<cplx> out(s.coeffs());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (std::abs(s.grid().mode(i)) > kmax) out[i] = 0.0;
    }
    return Spectrum(s.grid(), std::move(out));
}

Field dealias(const Field& f) {
    return transform_inverse(dealias(transform_forward(f)));
}

// --- trigonometric interpolation -------------------------------------------

double eval_interpolant(const Spectrum& s, double x) {
    const std::size_t n = s.size();
    double v = s.coeffs()[0].real();
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double xi = s.grid().freq(static_cast<int>(k));
        const cplx c = s.coeffs()[k];
        v += 2.0 * (c.real() * std::cos(xi * x) - c.imag() * std::sin(xi * x));
    }
    // symmetric (cosine) extension of the unpaired Nyquist mode
    v += s.coeffs()[n / 2].real() * std::cos(s.grid().max_freq() * x);
    return v;
}

double eval_interpolant_derivative(const Spectrum& s, double x) {
    const std::size_t n = s.size();
    double v = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double xi = s.grid().freq(static_cast<int>(k));
        const cplx c = s.coeffs()[k];
        v += 2.0 * xi * (-c.real() * std::sin(xi * x) - c.imag() * std::cos(xi * x));
    }
    const double xin = s.grid().max_freq();
    v -= s.coeffs()[n / 2].real() * xin * std::sin(xin * x);
    return v;
}

Field refine_field(const Field& f, std::size_t factor) {
    if (factor == 1) return f;
    Spectrum s = transform_forward(f);
    const std::size_t n = f.size();
    const Grid fine(n * factor, f.grid().length());
    Spectrum out = Spectrum::zero(fine);
    for (std::size_t k = 0; k < n / 2; ++k)
        out.coeffs()[k] = s.coeffs()[k];
    for (std::size_t k = 1; k < n / 2; ++k)
        out.coeffs()[fine.n() - k] = s.coeffs()[n - k];
    // split the coarse Nyquist mode symmetrically
    const cplx ny = 0.5 * s.coeffs()[n / 2];
    out.set_coeff(static_cast<int>(n / 2), ny);
    out.set_coeff(-static_cast<int>(n / 2), std::conj(ny));
    return transform_inverse(out);
}

// --- Green kernel convolution ----------------------------------------------

namespace {

// 16-point Gauss-Legendre rule on [-1, 1] (positive half; rule is symmetric).
constexpr int gl_half = 8;
constexpr double gl_x[gl_half] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
    0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
    0.94457502307323258, 0.98940093499164993};
constexpr double gl_w[gl_half] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
    0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
    0.06225352393864789, 0.02715245941175409};

struct TrigModes {
    std::vector<double> xi, re, im; // k >= 1 modes, coefficients doubled
    double c0 = 0.0;
    double nyq = 0.0;
    double xi_nyq = 0.0;
    double xi_max = 0.0;

    explicit TrigModes(const Spectrum& s) {
        const std::size_t n = s.size();
        const double floor_mag = 1e-17 * std::max(1.0, s.max_abs());
        c0 = s.coeffs()[0].real();
        nyq = s.coeffs()[n / 2].real();
        xi_nyq = s.grid().max_freq();
        if (std::abs(nyq) > floor_mag) xi_max = xi_nyq;
        for (std::size_t k = 1; k < n / 2; ++k) {
            const cplx c = s.coeffs()[k];
            if (std::abs(c) <= floor_mag) continue;
            const double x = s.grid().freq(static_cast<int>(k));
            xi.push_back(x);
            re.push_back(2.0 * c.real());
            im.push_back(-2.0 * c.imag());
            xi_max = std::max(xi_max, x);
        }
    }

    double eval(double x) const {
        double v = c0;
        for (std::size_t m = 0; m < xi.size(); ++m)
            v += re[m] * std::cos(xi[m] * x) + im[m] * std::sin(xi[m] * x);
        if (nyq != 0.0) v += nyq * std::cos(xi_nyq * x);
        return v;
    }
};

} // namespace

Field green_convolve(const Field& f, double alpha, bool* truncation_warning) {
    if (!(alpha > 0.0))
        throw ConfigError("green_convolve: alpha must be positive");
    if (truncation_warning) *truncation_warning = false;

    const Spectrum spec = transform_forward(f);
    const TrigModes modes(spec);

    // Integration half-range: e^{-U/alpha} < 1e-16 of the kernel mass.
    double half_range = alpha * std::log(1e16);
    // Panel width resolves both the kernel decay and the fastest mode of f.
    double width = 0.5 * alpha;
    if (modes.xi_max > 0.0) width = std::min(width, 1.5 / modes.xi_max);
    std::size_t panels = static_cast<std::size_t>(std::ceil(half_range / width));
    constexpr std::size_t panel_cap = 50000;
    if (panels > panel_cap) {
        panels = panel_cap;
        const double used = static_cast<double>(panels) * width;
        if (std::exp(-used / alpha) > 1e-12 && truncation_warning)
            *truncation_warning = true;
        half_range = used;
    }
    width = half_range / static_cast<double>(panels);

    // Quadrature nodes u > 0 and kernel weights, shared by every x_j.
    std::vector<double> u_nodes, k_weights;
    u_nodes.reserve(panels * 2 * gl_half);
    k_weights.reserve(panels * 2 * gl_half);
    const double inv2a = 0.5 / alpha;
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = static_cast<double>(p) * width;
        const double mid = a + 0.5 * width;
        const double hw = 0.5 * width;
        for (int q = 0; q < gl_half; ++q) {
            for (double sgn : {-1.0, 1.0}) {
                const double u = mid + sgn * hw * gl_x[q];
                u_nodes.push_back(u);
                k_weights.push_back(hw * gl_w[q] * inv2a * std::exp(-u / alpha));
            }
        }
    }

    const Grid& g = f.grid();
    std::vector<double> out(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double xj = g.node(j);
        double acc = 0.0;
        for (std::size_t q = 0; q < u_nodes.size(); ++q)
            acc += k_weights[q] * (modes.eval(xj - u_nodes[q]) +
                                   modes.eval(xj + u_nodes[q]));
        out[j] = acc;
    }
    return Field(g, std::move(out));
}

} // namespace chlab
