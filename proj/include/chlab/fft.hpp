#pragma once

#include "chlab/field.hpp"

namespace chlab {

// Forward transform, c_k = (1/N) sum_j u_j exp(-i xi_k x_j).
// Throws InvalidFieldError on non-finite samples.
Spectrum transform_forward(const Field& f);

// Inverse transform. The spectrum must be Hermitian within `sym_tol`
// (relative to max(1, max|c|)); it is symmetrized before inversion.
// Throws SpectrumError beyond tolerance.
Field transform_inverse(const Spectrum& s, double sym_tol = 1e-12);

// Unnormalized complex transforms used internally (and by the zero-padding
// interpolation helpers). Input size selects the cached plan.
void fft_complex_forward(std::vector<cplx>& data);
void fft_complex_backward(std::vector<cplx>& data);

} // namespace chlab
