#include "chlab/lp.hpp"

#include <cmath>
#include <random>

namespace chlab {

double smooth_transition(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double lp_chi(double xi) {
    const double a = std::abs(xi);
    if (a <= 1.0) return 1.0;
    if (a >= 4.0 / 3.0) return 0.0;
    return 1.0 - smooth_transition(3.0 * (a - 1.0));
}

double lp_phi(double xi) {
    return lp_chi(0.5 * xi) - lp_chi(xi);
}

DyadicPartition::DyadicPartition(const Grid& grid) : grid_(grid), q_max_(0) {
    const double xi_max = grid.max_freq();
    // smallest q with 2^{q+1} >= xi_max, so the telescoped sum closes exactly
    while (std::ldexp(1.0, q_max_ + 1) < xi_max) ++q_max_;
}

double DyadicPartition::block_profile(int q, double xi) const {
    if (q < -1 || q > q_max_)
        throw ConfigError("lp_block: block index " + std::to_string(q) +
                          " outside [-1, " + std::to_string(q_max_) + "]");
    if (q == -1) return lp_chi(xi);
    return lp_phi(std::ldexp(xi, -q));
}

double DyadicPartition::partition_deviation() const {
    double dev = 0.0;
    for (std::size_t i = 0; i < grid_.n(); ++i) {
        const double xi = grid_.freq_slot(i);
        double sum = lp_chi(xi);
        for (int q = 0; q <= q_max_; ++q) sum += lp_phi(std::ldexp(xi, -q));
        dev = std::max(dev, std::abs(sum - 1.0));
    }
    return dev;
}

Field lp_block(const Field& f, const DyadicPartition& part, int q) {
    if (q < -1 || q > part.q_max())
        throw ConfigError("lp_block: block index " + std::to_string(q) +
                          " outside [-1, " + std::to_string(part.q_max()) + "]");
    Spectrum s = transform_forward(f);
    return transform_inverse(apply_multiplier(s, [&](double xi) {
        return cplx(part.block_profile(q, xi), 0.0);
    }));
}

double sharp_cutoff_freq(int n) {
    return (4.0 / 3.0) * std::ldexp(1.0, n - 1);
}

Spectrum low_cutoff(const Spectrum& s, int n, CutoffMode mode) {
    if (n < 0)
        throw ConfigError("low_cutoff: n must be >= 0");
    if (mode == CutoffMode::smooth) {
        return apply_multiplier(s, [n](double xi) {
            return cplx(lp_chi(std::ldexp(xi, -n)), 0.0);
        });
    }
    const double edge = sharp_cutoff_freq(n);
    return apply_multiplier(s, [edge](double xi) {
        return cplx(std::abs(xi) >= edge ? 0.0 : 1.0, 0.0);
    });
}

Field low_cutoff(const Field& f, int n, CutoffMode mode) {
    return transform_inverse(low_cutoff(transform_forward(f), n, mode));
}

double hs_norm(const Spectrum& spec, double s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double xi = spec.grid().freq_slot(i);
        sum += std::pow(1.0 + xi * xi, s) * std::norm(spec.coeffs()[i]);
    }
    return std::sqrt(spec.grid().length() * sum);
}

double hs_norm(const Field& f, double s) {
    return hs_norm(transform_forward(f), s);
}

NormReport norm_report(const Field& f, double s, const DyadicPartition& part) {
    NormReport rep;
    rep.s = s;
    const Spectrum spec = transform_forward(f);
    rep.value = hs_norm(spec, s);
    const double L = f.grid().length();
    for (int q = -1; q <= part.q_max(); ++q) {
        double sum = 0.0;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const double xi = spec.grid().freq_slot(i);
            const double m = part.block_profile(q, xi);
            sum += m * m * std::norm(spec.coeffs()[i]);
        }
        rep.block_l2.push_back(std::sqrt(L * sum));
    }
    return rep;
}

double product_probe(const Field& u, const Field& v, double s) {
    const double nu = hs_norm(u, s);
    const double nv = hs_norm(v, s);
    if (nu == 0.0 || nv == 0.0)
        throw ProbeError("product_probe: zero denominator");
    return hs_norm(pointwise_product(u, v), s) / (nu * nv);
}

double commutator_probe(const Field& f, const Field& g, double s) {
    const Field fg = pointwise_product(f, g);
    const Field commutator = js_operator(fg, s) -
                             pointwise_product(f, js_operator(g, s));
    const double den = max_abs(derivative(f, 1)) * hs_norm(g, s - 1.0) +
                       hs_norm(f, s) * max_abs(g);
    if (den == 0.0)
        throw ProbeError("commutator_probe: zero denominator");
    return hs_norm(commutator, 0.0) / den;
}

double interpolation_check(const Field& f, double s) {
    const Spectrum spec = transform_forward(f);
    const double lo = hs_norm(spec, s - 1.0);
    const double hi = hs_norm(spec, s + 1.0);
    return std::sqrt(lo) * std::sqrt(hi) - hs_norm(spec, s);
}

double bernstein_probe(const Field& f, int n, double k, double s,
                       CutoffMode mode) {
    const double den = std::pow(2.0, k * n) * hs_norm(f, s);
    if (den == 0.0)
        throw ProbeError("bernstein_probe: zero denominator");
    return hs_norm(low_cutoff(f, n, mode), s + k) / den;
}

double rough_magnitude(double xi, double s) {
    return std::pow(1.0 + std::abs(xi), -(s + 0.6));
}

Field rough_field(const Grid& g, double s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
        // top 53 bits -> [0, 1); avoids the implementation-defined
        // distribution adapters so the corpus is identical everywhere
        return static_cast<double>(rng() >> 11) * 0x1p-53;
    };
    Spectrum spec = Spectrum::zero(g);
    spec.set_coeff(0, cplx(rough_magnitude(0.0, s), 0.0));
    const int kmax = g.dealias_limit();
    for (int k = 1; k <= kmax; ++k) {
        const double mag = rough_magnitude(g.freq(k), s);
        const double phase = two_pi * unit();
        const cplx c = mag * cplx(std::cos(phase), std::sin(phase));
        spec.set_coeff(k, c);
        spec.set_coeff(-k, std::conj(c));
    }
    return transform_inverse(spec);
}

} // namespace chlab
