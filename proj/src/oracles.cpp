#include "chlab/oracles.hpp"

#include <cmath>
#include <memory>

namespace chlab {

void CharacteristicSolution::scan_profile() {
    // dense scan for the extrema of u0 and of -u0'
    const std::size_t m = 1 << 16;
    const double h = period_ / static_cast<double>(m);
    u_min_ = u0_(0.0);
    u_max_ = u_min_;
    double steepest = -du0_(0.0);
    for (std::size_t j = 1; j < m; ++j) {
        const double x = static_cast<double>(j) * h;
        const double v = u0_(x);
        u_min_ = std::min(u_min_, v);
        u_max_ = std::max(u_max_, v);
        steepest = std::max(steepest, -du0_(x));
    }
    t_star_ = steepest > 0.0 ? 1.0 / (3.0 * steepest)
                             : std::numeric_limits<double>::infinity();
}

CharacteristicSolution::CharacteristicSolution(std::function<double(double)> u0,
                                               std::function<double(double)> du0,
                                               double period)
    : u0_(std::move(u0)), du0_(std::move(du0)), period_(period) {
    if (!(period_ > 0.0))
        throw ConfigError("characteristics: period must be positive");
    scan_profile();
}

CharacteristicSolution CharacteristicSolution::from_field(const Field& u0) {
    auto spec = std::make_shared<Spectrum>(transform_forward(u0));
    auto f = [spec](double x) { return eval_interpolant(*spec, x); };
    auto df = [spec](double x) { return eval_interpolant_derivative(*spec, x); };
    return CharacteristicSolution(f, df, u0.grid().length());
}

double CharacteristicSolution::operator()(double x, double t) const {
    if (t < 0.0 || t >= 0.95 * t_star_)
        throw ConfigError("characteristics: t outside the validity window "
                          "[0, 0.95 T*)");
    if (t == 0.0) return u0_(x);

    // x0 + 3 t u0(x0) = x is strictly increasing in x0 for t < T*,
    // so [x - 3t max u0, x - 3t min u0] brackets the root.
    double lo = x - 3.0 * t * u_max_;
    double hi = x - 3.0 * t * u_min_;
    auto g = [&](double x0) { return x0 + 3.0 * t * u0_(x0) - x; };

    double x0 = 0.5 * (lo + hi);
    const double tol = 1e-13 * std::max(1.0, std::abs(x));
    for (int it = 0; it < 100; ++it) {
        const double gv = g(x0);
        if (std::abs(gv) <= tol) return u0_(x0);
        if (gv > 0.0) hi = x0; else lo = x0;
        const double slope = 1.0 + 3.0 * t * du0_(x0);
        double next = slope > 0.0 ? x0 - gv / slope : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi); // bisect
        x0 = next;
    }
    throw RootFindError("characteristics: Newton did not converge in 100 "
                        "iterations");
}

double shock_time(const Field& u0) {
    if (!u0.finite())
        throw InvalidFieldError("shock_time: field has non-finite samples");
    const Field slope = transform_inverse(derivative(transform_forward(u0), 1));
    const Field fine = refine_field(slope, 16);
    const double steepest = -min_value(fine);
    return steepest > 0.0 ? 1.0 / (3.0 * steepest)
                          : std::numeric_limits<double>::infinity();
}

Field peakon_field(double c, double alpha, double t, const Grid& grid) {
    if (!(alpha > 0.0))
        throw ConfigError("peakon_field: alpha must be positive");
    const double L = grid.length();
    std::vector<double> s(grid.n());
    for (std::size_t j = 0; j < grid.n(); ++j) {
        double y = grid.node(j) - c * t;
        y -= L * std::round(y / L); // wrap to [-L/2, L/2]
        double sum = std::exp(-std::abs(y) / alpha);
        for (int m = 1;; ++m) {
            const double left = std::exp(-std::abs(y - m * L) / alpha);
            const double right = std::exp(-std::abs(y + m * L) / alpha);
            sum += left + right;
            if (left + right < 1e-16) break;
        }
        s[j] = c * sum;
    }
    Field out(grid, std::move(s));
    out.time = t;
    out.alpha_tag = alpha;
    return out;
}

double peakon_energy_closed_form(double c, double alpha, double period) {
    // u_per(x) = c cosh((L/2 - |x|)/alpha) / sinh(L/(2 alpha)) on [-L/2, L/2];
    // both integrals reduce to hyperbolic antiderivatives and combine to
    // E = 2 c^2 alpha coth(L / (2 alpha)).
    const double y = period / (2.0 * alpha);
    return 2.0 * c * c * alpha / std::tanh(y);
}

namespace {

struct FdWorkspace {
    std::size_t n;
    double h;
    double beta; // alpha^2 / h^2

    std::vector<double> d1(const std::vector<double>& v) const {
        std::vector<double> out(n);
        const double w = 0.5 / h;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jp = j + 1 == n ? 0 : j + 1;
            const std::size_t jm = j == 0 ? n - 1 : j - 1;
            out[j] = w * (v[jp] - v[jm]);
        }
        return out;
    }

    std::vector<double> d2(const std::vector<double>& v) const {
        std::vector<double> out(n);
        const double w = 1.0 / (h * h);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jp = j + 1 == n ? 0 : j + 1;
            const std::size_t jm = j == 0 ? n - 1 : j - 1;
            out[j] = w * (v[jp] - 2.0 * v[j] + v[jm]);
        }
        return out;
    }

    // Solve (I - alpha^2 D2) w = b: cyclic tridiagonal with diagonal
    // 1 + 2 beta and off-diagonals -beta, via Sherman-Morrison.
    std::vector<double> helmholtz(const std::vector<double>& b) const {
        if (beta == 0.0) return b;
        const double diag = 1.0 + 2.0 * beta;
        const double off = -beta;

        auto thomas = [&](std::vector<double> rhs, double d0) {
            // plain tridiagonal solve, diagonal `diag` except d0 at both ends
            std::vector<double> d(n, diag);
            d[0] = d0;
            d[n - 1] = d0;
            for (std::size_t j = 1; j < n; ++j) {
                const double m = off / d[j - 1];
                d[j] -= m * off;
                rhs[j] -= m * rhs[j - 1];
            }
            rhs[n - 1] /= d[n - 1];
            for (std::size_t j = n - 1; j-- > 0;)
                rhs[j] = (rhs[j] - off * rhs[j + 1]) / d[j];
            return rhs;
        };

        // Sherman-Morrison: A_cyc = A + gamma u v^T with u = v = e_0 + e_{n-1}
        const double gamma = off;
        const double d0 = diag - gamma;
        std::vector<double> y = thomas(b, d0);
        std::vector<double> u(n, 0.0);
        u[0] = 1.0;
        u[n - 1] = 1.0;
        std::vector<double> z = thomas(u, d0);
        const double vy = y[0] + y[n - 1];
        const double vz = z[0] + z[n - 1];
        const double factor = gamma * vy / (1.0 + gamma * vz);
        std::vector<double> out(n);
        for (std::size_t j = 0; j < n; ++j) out[j] = y[j] - factor * z[j];
        return out;
    }
};

} // namespace

Field fd_reference(const Field& u0, const ModelParams& p, double t_end) {
    p.validate();
    if (p.nu > 0.0 && p.gamma != 2.0)
        throw ConfigError("fd_reference: dissipation supported for gamma = 2 only");
    if (!(t_end >= 0.0))
        throw ConfigError("fd_reference: t_end must be >= 0");

    const std::size_t refine = 4;
    const Field fine0 = refine_field(u0, refine);
    const std::size_t n = fine0.size();
    FdWorkspace ws{n, fine0.grid().spacing(),
                   p.alpha * p.alpha / (fine0.grid().spacing() *
                                        fine0.grid().spacing())};
    const bool ch = p.equation == Equation::camassa_holm;
    const double a2 = ch ? p.alpha * p.alpha : 0.0;

    auto rhs_fd = [&](const std::vector<double>& v) {
        const std::vector<double> vx = ws.d1(v);
        std::vector<double> out(n);
        if (ch) {
            std::vector<double> quad(n);
            for (std::size_t j = 0; j < n; ++j)
                quad[j] = v[j] * v[j] + 0.5 * a2 * vx[j] * vx[j];
            const std::vector<double> w = ws.helmholtz(quad);
            const std::vector<double> wx = ws.d1(w);
            for (std::size_t j = 0; j < n; ++j)
                out[j] = -v[j] * vx[j] - wx[j];
        } else {
            for (std::size_t j = 0; j < n; ++j)
                out[j] = -3.0 * v[j] * vx[j];
        }
        if (p.nu > 0.0) {
            const std::vector<double> vxx = ws.d2(v);
            for (std::size_t j = 0; j < n; ++j) out[j] += p.nu * vxx[j];
        }
        return out;
    };

    // ~10x below the advective bound of the spectral run this checks
    constexpr double eps = 1e-8;
    const double coarse_dx = u0.grid().spacing();
    double dt = 0.03 * coarse_dx / std::max(eps, 3.0 * max_abs(u0));
    if (p.nu > 0.0) dt = std::min(dt, 0.25 * ws.h * ws.h / p.nu);
    const std::size_t steps =
        t_end > 0.0 ? static_cast<std::size_t>(std::ceil(t_end / dt)) : 0;
    if (steps > 0) dt = t_end / static_cast<double>(steps);

    std::vector<double> v = fine0.samples();
    std::vector<double> tmp(n);
    for (std::size_t it = 0; it < steps; ++it) {
        const std::vector<double> k1 = rhs_fd(v);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = v[j] + 0.5 * dt * k1[j];
        const std::vector<double> k2 = rhs_fd(tmp);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = v[j] + 0.5 * dt * k2[j];
        const std::vector<double> k3 = rhs_fd(tmp);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = v[j] + dt * k3[j];
        const std::vector<double> k4 = rhs_fd(tmp);
        bool finite = true;
        for (std::size_t j = 0; j < n; ++j) {
            v[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            finite = finite && std::isfinite(v[j]);
        }
        if (!finite)
            throw InstabilityError("fd_reference: non-finite update",
                                   static_cast<double>(it) * dt);
    }

    std::vector<double> out(u0.size());
    for (std::size_t j = 0; j < u0.size(); ++j) out[j] = v[j * refine];
    Field res(u0.grid(), std::move(out));
    res.time = t_end;
    res.alpha_tag = ch ? p.alpha : 0.0;
    return res;
}

double energy_ch(const Field& u, double alpha) {
    const Spectrum s = transform_forward(u);
    double e = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double xi = s.grid().freq_slot(i);
        e += (1.0 + alpha * alpha * xi * xi) * std::norm(s.coeffs()[i]);
    }
    return s.grid().length() * e;
}

} // namespace chlab
