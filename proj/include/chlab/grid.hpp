#pragma once

#include <cstddef>
#include <vector>

#include "chlab/errors.hpp"

namespace chlab {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

// Uniform periodic grid on [0, L): nodes x_j = j L / N, j = 0..N-1, and the
// standard FFT frequency ladder xi_k = 2 pi k / L for k = -N/2 .. N/2-1.
// N must be a power of two, at least 8.
class Grid {
public:
    Grid(std::size_t n_points, double period)
        : n_(n_points), length_(period) {
        if (n_ < 8 || (n_ & (n_ - 1)) != 0)
            throw ConfigError("grid: n_points must be a power of two >= 8");
        if (!(period > 0.0))
            throw ConfigError("grid: period must be positive");
    }

    std::size_t n() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return length_ / static_cast<double>(n_); }
    double node(std::size_t j) const { return static_cast<double>(j) * spacing(); }

    std::vector<double> nodes() const {
        std::vector<double> x(n_);
        for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
        return x;
    }

    // Signed mode index stored in slot i (FFT ordering: 0,1,..,N/2-1,-N/2,..,-1).
    int mode(std::size_t i) const {
        return i < n_ / 2 ? static_cast<int>(i)
                          : static_cast<int>(i) - static_cast<int>(n_);
    }

    // Storage slot of signed mode k, k in [-N/2, N/2-1].
    std::size_t slot(int k) const {
        return k >= 0 ? static_cast<std::size_t>(k)
                      : n_ - static_cast<std::size_t>(-k);
    }

    double freq(int k) const { return two_pi * static_cast<double>(k) / length_; }
    double freq_slot(std::size_t i) const { return freq(mode(i)); }

    // Largest frequency magnitude on the ladder (the Nyquist mode -N/2).
    double max_freq() const { return two_pi * static_cast<double>(n_ / 2) / length_; }

    // Largest retained mode index after 2/3-rule dealiasing.
    int dealias_limit() const { return static_cast<int>(n_ / 3); }

    bool operator==(const Grid&) const = default;

private:
    std::size_t n_;
    double length_;
};

} // namespace chlab
