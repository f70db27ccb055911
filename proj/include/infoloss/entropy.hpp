#ifndef INFOLOSS_ENTROPY_HPP
#define INFOLOSS_ENTROPY_HPP

#include "infoloss/distribution.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace infoloss {

/// -sum p log2 p with the 0 log 0 = 0 convention. The pmf must be
/// nonnegative and sum to 1 within 1e-6.
double discrete_entropy(std::span<const double> pmf);

/// Entropy of an unnormalized, already-validated weight vector (helper for
/// internal use; skips the pmf gate).
double entropy_bits(std::span<const double> pmf);

/// H2(p) = -p log2 p - (1-p) log2(1-p); p must lie in [0, 1].
double binary_entropy(double p);

/// Gaussian tail probability Q(x) = 1 - Phi(x).
double q_function(double x);

struct DifferentialEntropyResult {
    double value_bits;
    double abserr;
};

/// -Int f log2 f for an absolutely continuous law. Unbounded supports are
/// clipped where the cdf mass outside is below tail_mass. Requested absolute
/// accuracy is 1e-4; failure to converge throws ToleranceError.
DifferentialEntropyResult differential_entropy(const ScalarDistribution& d,
                                               double tail_mass = 1e-10);

/// Uniform quantization at resolution n: cell k covers [k 2^-n, (k+1) 2^-n).
struct QuantizedView {
    int resolution = 0;
    // Scalar cells keyed by the integer cell index; vector cells by the tuple.
    std::map<std::vector<std::int64_t>, double> cells;
    bool undersampled = false; // >= 1% singleton cells in empirical mode

    double entropy() const;
};

/// Analytic quantization of a scalar law from cdf differences. Unbounded
/// support requires the default tail-truncation policy (tail_mass > 0);
/// passing tail_mass <= 0 with unbounded support is a configuration error.
QuantizedView quantize(const ScalarDistribution& d, int n, double tail_mass = 1e-10);

/// Empirical quantization from samples (scalar).
QuantizedView quantize_empirical(const ScalarDistribution& d, int n, std::size_t samples,
                                 std::uint64_t seed);

/// Empirical quantization from samples (vector).
QuantizedView quantize_empirical(const VectorDistribution& d, int n, std::size_t samples,
                                 std::uint64_t seed);

struct DimensionEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    bool undersampled = false;                 // resolution-too-fine warning
    std::vector<double> entropies;             // H(X_hat_n) over the window
};

/// Information dimension as the least-squares slope of H(X_hat_n) against n
/// over [n_lo, n_hi]. With samples == 0 the cell masses are computed
/// analytically from the cdf; otherwise they are estimated empirically
/// (samples must then be at least 1e5).
DimensionEstimate information_dimension(const ScalarDistribution& d, int n_lo, int n_hi,
                                        std::size_t samples = 0, std::uint64_t seed = 1);

DimensionEstimate information_dimension(const VectorDistribution& d, int n_lo, int n_hi,
                                        std::size_t samples, std::uint64_t seed = 1);

/// Plug-in entropy of empirical counts, with optional Miller-Madow bias
/// correction (off by default).
double empirical_entropy(const std::map<std::vector<std::int64_t>, double>& cells,
                         bool miller_madow = false, std::size_t sample_count = 0);

} // namespace infoloss

#endif
