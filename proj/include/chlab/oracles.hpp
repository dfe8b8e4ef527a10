#pragma once

#include "chlab/dynamics.hpp"

namespace chlab {

// Exact pre-shock solution of u_t + 3 u u_x = 0 by characteristics:
// u(x, t) = u0(x0) where x0 + 3 t u0(x0) = x. Valid for t < T* with
// T* = 1 / (3 max_x(-u0')).
class CharacteristicSolution {
public:
    // Analytic profile and its derivative, L-periodic.
    CharacteristicSolution(std::function<double(double)> u0,
                           std::function<double(double)> du0, double period);

    // Spectral interpolant of a sampled initial field.
    static CharacteristicSolution from_field(const Field& u0);

    double shock_time() const { return t_star_; }
    double period() const { return period_; }

    // Evaluate u(x, t). Refuses t >= 0.95 T*; Newton with a bisection
    // safeguard on the monotone bracket, tolerance 1e-13.
    double operator()(double x, double t) const;

private:
    std::function<double(double)> u0_, du0_;
    double period_;
    double t_star_;
    double u_min_, u_max_;

    void scan_profile();
};

// T* = 1 / (3 max_x(-u0')) with the derivative evaluated spectrally and
// maximized over a 16x-refined interpolation grid; +inf when u0' >= 0.
double shock_time(const Field& u0);

// Samples of the periodized peakon sum_m c exp(-|x - c t + m L| / alpha),
// images truncated below 1e-16.
Field peakon_field(double c, double alpha, double t, const Grid& grid);

// Closed-form int_0^L (u^2 + alpha^2 u_x^2) dx of the periodized peakon
// (independent of any grid). Approaches 2 c^2 alpha as L/alpha -> inf.
double peakon_energy_closed_form(double c, double alpha, double period);

// Independent low-order reference solver: 2nd-order central differences,
// cyclic tridiagonal Helmholtz solve, fixed-step RK4 on a 4x finer grid with
// ~10x smaller steps. Result restricted back to u0's grid. Supports nu = 0
// or gamma = 2 dissipation.
Field fd_reference(const Field& u0, const ModelParams& p, double t_end);

// Discrete E(u) = int u^2 + alpha^2 u_x^2 dx via Parseval,
// L sum_k (1 + alpha^2 xi_k^2) |c_k|^2; exact for trigonometric polynomials.
double energy_ch(const Field& u, double alpha);

} // namespace chlab
