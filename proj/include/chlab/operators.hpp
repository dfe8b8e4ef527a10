#pragma once

#include "chlab/fft.hpp"

namespace chlab {

// Apply a Fourier-multiplier symbol pointwise on the frequency ladder.
// If symbol(-xi) == conj(symbol(xi)) the output stays Hermitian.
template <class SymbolFn>
Spectrum apply_multiplier(const Spectrum& s, SymbolFn&& symbol) {
    std::vector<cplx> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const cplx m = symbol(s.grid().freq_slot(i));
        out[i] = m * s.coeffs()[i];
    }
    return Spectrum(s.grid(), std::move(out));
}

// d^order/dx^order via the symbol (i xi)^order. Odd orders zero the
// unpaired Nyquist mode.
Spectrum derivative(const Spectrum& s, int order);
Field derivative(const Field& f, int order = 1);

// (1 - alpha^2 dxx)^{-1}: symbol 1/(1 + alpha^2 xi^2). Identity for alpha = 0.
Spectrum helmholtz_inverse(const Spectrum& s, double alpha);
Field helmholtz_inverse(const Field& f, double alpha);

// (1 - alpha^2 dxx), composed as u - alpha^2 u_xx with the spectral second
// derivative; exact inverse of helmholtz_inverse.
Field helmholtz_apply(const Field& f, double alpha);

// Lambda^gamma: symbol |xi|^gamma with the convention 0^0 = 0, so the zero
// mode is annihilated for every gamma (the mean never feels dissipation).
Spectrum fractional_laplacian(const Spectrum& s, double gamma);
Field fractional_laplacian(const Field& f, double gamma);

// Bessel potential J^s = (1 - dxx)^{s/2}: symbol (1 + xi^2)^{s/2}.
Spectrum js_operator(const Spectrum& s, double order);
Field js_operator(const Field& f, double order);

// 2/3-rule dealiasing: zero every coefficient with |k| > N/3.
Spectrum dealias(const Spectrum& s);
Field dealias(const Field& f);

// Direct quadrature of the periodized Helmholtz kernel:
//   (g * f)(x_j),   g(x) = (1/(2 alpha)) exp(-|x|/alpha),
// integrating g against the periodic extension of f over |u| <= U with the
// truncation e^{-U/alpha} < 1e-16 (equivalent to summing kernel images until
// e^{-mL/alpha} drops below 1e-16). Panels are split at the kernel kink and
// integrated with 16-point Gauss-Legendre so the quadrature error sits at
// round-off; plain trapezoid stalls at O((dx/alpha)^2) because of the slope
// jump at u = 0. Independent cross-check for helmholtz_inverse.
// Sets *truncation_warning when the panel cap forces more than 1e-12 of the
// kernel mass to be dropped.
Field green_convolve(const Field& f, double alpha,
                     bool* truncation_warning = nullptr);

// Evaluate the trigonometric interpolant of a sampled field (and its
// derivative) at an arbitrary point. O(N) per evaluation.
double eval_interpolant(const Spectrum& s, double x);
double eval_interpolant_derivative(const Spectrum& s, double x);

// Spectral interpolation onto a refinement of the grid (zero padding).
Field refine_field(const Field& f, std::size_t factor);

} // namespace chlab
