#pragma once

#include <cstdint>

#include "chlab/operators.hpp"

namespace chlab {

// C-infinity step: 0 for t <= 0, 1 for t >= 1, h(t)/(h(t)+h(1-t)) between,
// with h(t) = exp(-1/t).
double smooth_transition(double t);

// Low-pass profile chi: 1 on |xi| <= 1, 0 on |xi| >= 4/3, smooth ramp between.
double lp_chi(double xi);

// Annulus profile phi(xi) = chi(xi/2) - chi(xi), supported in 3/4 <= |xi| <= 8/3.
double lp_phi(double xi);

// Dyadic Littlewood-Paley partition attached to a grid. Block q = -1 carries
// the multiplier chi(xi); block q >= 0 carries phi(2^{-q} xi). q_max is the
// smallest index at which chi(2^{-(q_max+1)} xi) == 1 over the whole ladder,
// so the blocks sum to one exactly.
class DyadicPartition {
public:
    explicit DyadicPartition(const Grid& grid);

    const Grid& grid() const { return grid_; }
    int q_max() const { return q_max_; }

    // Multiplier value of block q at frequency xi. q in [-1, q_max].
    double block_profile(int q, double xi) const;

    // Deviation of chi + sum_q phi(2^{-q} xi) from 1, maximized over the ladder.
    double partition_deviation() const;

private:
    Grid grid_;
    int q_max_;
};

// Delta_q f.
Field lp_block(const Field& f, const DyadicPartition& part, int q);

enum class CutoffMode { smooth, sharp };

// Frequency edge killed by the sharp cutoff S_n: |xi| >= (4/3) 2^{n-1}.
double sharp_cutoff_freq(int n);

// Low-frequency cutoff S_n = sum_{-1 <= q <= n-1} Delta_q. Smooth mode is the
// telescoped multiplier chi(2^{-n} xi); sharp mode zeroes |xi| >= (4/3) 2^{n-1}
// and is an idempotent H^s contraction.
Field low_cutoff(const Field& f, int n, CutoffMode mode = CutoffMode::sharp);
Spectrum low_cutoff(const Spectrum& s, int n, CutoffMode mode = CutoffMode::sharp);

// Sobolev norm ||f||_{H^s}, discretized as sqrt(L sum_k (1+xi_k^2)^s |c_k|^2).
double hs_norm(const Field& f, double s);
double hs_norm(const Spectrum& spec, double s);

struct NormReport {
    double s = 0.0;
    double value = 0.0;
    std::vector<double> block_l2; // ||Delta_q f||_{L^2}, q = -1 .. q_max
};

NormReport norm_report(const Field& f, double s, const DyadicPartition& part);

// ||uv||_{H^s} / (||u||_{H^s} ||v||_{H^s}); boundedness of corpus maxima is
// the discrete analogue of the product estimate.
double product_probe(const Field& u, const Field& v, double s);

// ||[J^s, f] g||_{L^2} / (||f_x||_inf ||g||_{H^{s-1}} + ||f||_{H^s} ||g||_inf).
double commutator_probe(const Field& f, const Field& g, double s);

// ||f||^{1/2}_{H^{s-1}} ||f||^{1/2}_{H^{s+1}} - ||f||_{H^s}; Cauchy-Schwarz in
// frequency makes this >= 0 up to round-off.
double interpolation_check(const Field& f, double s);

// ||S_n f||_{H^{s+k}} / (2^{kn} ||f||_{H^s}).
double bernstein_probe(const Field& f, int n, double k, double s,
                       CutoffMode mode = CutoffMode::sharp);

// Deterministic synthetic rough field: |c_k| = (1+|xi_k|)^{-(s+0.6)} with
// seeded pseudorandom phases, band-limited to the dealias zone so the datum
// is exactly representable by the solver pipeline. Lies in H^s but barely.
Field rough_field(const Grid& g, double s, std::uint64_t seed);

// Magnitude of the rough_field recipe at frequency xi (before any scaling);
// lets tests reproduce tail sums analytically.
double rough_magnitude(double xi, double s);

} // namespace chlab
