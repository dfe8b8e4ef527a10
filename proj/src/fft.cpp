#include "chlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace chlab {

namespace {

// Plan cache keyed by transform size. Plans are created with FFTW_UNALIGNED
// so they can execute on any caller buffer via the new-array interface;
// creation is serialized (the FFTW planner is not thread-safe), execution is
// concurrent-safe on distinct arrays.
struct PlanCache {
    std::mutex mtx;
    std::map<std::size_t, std::pair<fftw_plan, fftw_plan>> plans;

    std::pair<fftw_plan, fftw_plan> get(std::size_t n) {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = plans.find(n);
        if (it != plans.end()) return it->second;
        std::vector<cplx> tmp(n);
        auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
        fftw_plan fwd = fftw_plan_dft_1d(static_cast<int>(n), p, p,
                                         FFTW_FORWARD,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_plan bwd = fftw_plan_dft_1d(static_cast<int>(n), p, p,
                                         FFTW_BACKWARD,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans.emplace(n, std::make_pair(fwd, bwd));
        return {fwd, bwd};
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

void fft_complex_forward(std::vector<cplx>& data) {
    auto [fwd, bwd] = cache().get(data.size());
    (void)bwd;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(fwd, p, p);
}

void fft_complex_backward(std::vector<cplx>& data) {
    auto [fwd, bwd] = cache().get(data.size());
    (void)fwd;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(bwd, p, p);
}

Spectrum transform_forward(const Field& f) {
    if (!f.finite())
        throw InvalidFieldError("transform_forward: field has non-finite samples");
    const std::size_t n = f.size();
    std::vector<cplx> buf(n);
    for (std::size_t j = 0; j < n; ++j) buf[j] = cplx(f[j], 0.0);
    fft_complex_forward(buf);
    const double scale = 1.0 / static_cast<double>(n);
    for (cplx& c : buf) c *= scale;
    return Spectrum(f.grid(), std::move(buf));
}

Field transform_inverse(const Spectrum& s, double sym_tol) {
    const std::size_t n = s.size();
    const double dev = s.hermitian_deviation();
    const double scale = std::max(1.0, s.max_abs());
    if (dev > sym_tol * scale)
        throw SpectrumError("transform_inverse: spectrum is not Hermitian "
                            "(deviation " + std::to_string(dev) + ")");

    // Symmetrize: average paired modes, force mean and Nyquist real.
    std::vector<cplx> buf(n);
    buf[0] = cplx(s.coeffs()[0].real(), 0.0);
    buf[n / 2] = cplx(s.coeffs()[n / 2].real(), 0.0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        cplx avg = 0.5 * (s.coeffs()[k] + std::conj(s.coeffs()[n - k]));
        buf[k] = avg;
        buf[n - k] = std::conj(avg);
    }
    fft_complex_backward(buf);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = buf[j].real();
    return Field(s.grid(), std::move(out));
}

} // namespace chlab
