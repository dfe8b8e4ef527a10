#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab {

using cplx = std::complex<double>;

// Real function sampled at the grid nodes. Immutable after construction
// apart from the metadata tags.
class Field {
public:
    Field(Grid grid, std::vector<double> samples)
        : grid_(grid), samples_(std::move(samples)) {
        if (samples_.size() != grid_.n())
            throw ConfigError("field: sample count does not match grid");
    }

    static Field zero(const Grid& g) {
        return Field(g, std::vector<double>(g.n(), 0.0));
    }

    template <class F>
    static Field from_function(const Grid& g, F&& f) {
        std::vector<double> s(g.n());
        for (std::size_t j = 0; j < g.n(); ++j) s[j] = f(g.node(j));
        return Field(g, std::move(s));
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return samples_.size(); }
    const std::vector<double>& samples() const { return samples_; }
    std::vector<double>& samples() { return samples_; }
    double operator[](std::size_t j) const { return samples_[j]; }
    double& operator[](std::size_t j) { return samples_[j]; }

    bool finite() const {
        for (double v : samples_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // Optional metadata carried through snapshots.
    double time = 0.0;
    double alpha_tag = 0.0;

private:
    Grid grid_;
    std::vector<double> samples_;
};

// Fourier coefficients c_k = (1/N) sum_j u_j exp(-i xi_k x_j), stored in FFT
// slot order (see Grid::mode / Grid::slot).
class Spectrum {
public:
    Spectrum(Grid grid, std::vector<cplx> coeffs)
        : grid_(grid), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != grid_.n())
            throw ConfigError("spectrum: coefficient count does not match grid");
    }

    static Spectrum zero(const Grid& g) {
        return Spectrum(g, std::vector<cplx>(g.n(), cplx(0.0, 0.0)));
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    std::vector<cplx>& coeffs() { return coeffs_; }

    cplx coeff(int k) const { return coeffs_[grid_.slot(k)]; }
    void set_coeff(int k, cplx v) { coeffs_[grid_.slot(k)] = v; }

    // Largest deviation from Hermitian symmetry, |c_{-k} - conj(c_k)|.
    // Includes the imaginary part of the (self-paired) Nyquist mode.
    double hermitian_deviation() const {
        const std::size_t n = grid_.n();
        double dev = 2.0 * std::abs(coeffs_[n / 2].imag());
        dev = std::max(dev, std::abs(coeffs_[0].imag()));
        for (std::size_t k = 1; k < n / 2; ++k) {
            dev = std::max(dev, std::abs(coeffs_[n - k] - std::conj(coeffs_[k])));
        }
        return dev;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

private:
    Grid grid_;
    std::vector<cplx> coeffs_;
};

// --- elementwise field arithmetic -----------------------------------------

inline void check_same_grid(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid()))
        throw ConfigError("field arithmetic: grids differ");
}

inline Field operator+(const Field& a, const Field& b) {
    check_same_grid(a, b);
    std::vector<double> s(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
    return Field(a.grid(), std::move(s));
}

inline Field operator-(const Field& a, const Field& b) {
    check_same_grid(a, b);
    std::vector<double> s(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] - b[j];
    return Field(a.grid(), std::move(s));
}

inline Field operator*(double c, const Field& a) {
    std::vector<double> s(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) s[j] = c * a[j];
    return Field(a.grid(), std::move(s));
}

inline Field pointwise_product(const Field& a, const Field& b) {
    check_same_grid(a, b);
    std::vector<double> s(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] * b[j];
    return Field(a.grid(), std::move(s));
}

// a + c*b, the RK stage workhorse.
inline Field axpy(const Field& a, double c, const Field& b) {
    check_same_grid(a, b);
    std::vector<double> s(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] + c * b[j];
    return Field(a.grid(), std::move(s));
}

inline double max_abs(const Field& a) {
    double m = 0.0;
    for (double v : a.samples()) m = std::max(m, std::abs(v));
    return m;
}

inline double min_value(const Field& a) {
    double m = a[0];
    for (double v : a.samples()) m = std::min(m, v);
    return m;
}

inline double max_abs_diff(const Field& a, const Field& b) {
    check_same_grid(a, b);
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

} // namespace chlab
