#include "infoloss/entropy.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace infoloss {

namespace {

inline double plogp(double p) {
    return (p > 0.0) ? -p * std::log2(p) : 0.0;
}

/// Least-squares slope with residual-based standard error.
struct SlopeFit {
    double slope;
    double stderr_;
};

SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t m = xs.size();
    const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - ybar - slope * (xs[i] - xbar);
        rss += r * r;
    }
    const double se = (m > 2) ? std::sqrt(rss / (m - 2) / sxx) : 0.0;
    return {slope, se};
}

} // namespace

double entropy_bits(std::span<const double> pmf) {
    double h = 0.0;
    for (double p : pmf) h += plogp(p);
    return h;
}

double discrete_entropy(std::span<const double> pmf) {
    double sum = 0.0;
    for (double p : pmf) {
        if (p < 0.0) throw InvalidInputError("discrete_entropy: negative mass");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw InvalidInputError("discrete_entropy: pmf sums to " + std::to_string(sum));
    return entropy_bits(pmf);
}

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("binary_entropy: p outside [0, 1]");
    return plogp(p) + plogp(1.0 - p);
}

double q_function(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

DifferentialEntropyResult differential_entropy(const ScalarDistribution& d, double tail_mass) {
    if (d.kind != DistKind::AbsolutelyContinuous)
        throw InvalidInputError("differential_entropy: input must be absolutely continuous");
    const Interval s = d.truncated_support(tail_mass);
    const auto integrand = [&d](double x) {
        const double f = d.pdf(x);
        return (f > 1e-300) ? -f * std::log2(f) : 0.0;
    };
    IntegralResult r =
        integrate_with_breakpoints(integrand, s.lo, s.hi, d.pdf_breakpoints, 1e-6, 1e-7);
    if (r.abserr > 1e-4)
        throw ToleranceError("differential_entropy: accuracy 1e-4 not met", r.value, r.abserr);
    return {r.value, r.abserr};
}

double QuantizedView::entropy() const {
    double h = 0.0;
    for (const auto& [key, p] : cells) h += plogp(p);
    return h;
}

QuantizedView quantize(const ScalarDistribution& d, int n, double tail_mass) {
    if (n < 0) throw InvalidInputError("quantize: resolution must be nonnegative");
    if (!d.support.bounded() && !(tail_mass > 0.0))
        throw ConfigError("quantize: unbounded support needs a tail-truncation policy");
    const Interval s = d.truncated_support(tail_mass);
    const double scale = std::ldexp(1.0, n); // 2^n
    const auto k_lo = static_cast<std::int64_t>(std::floor(s.lo * scale));
    const auto k_hi = static_cast<std::int64_t>(std::floor(s.hi * scale));

    QuantizedView q;
    q.resolution = n;
    double total = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const double a = static_cast<double>(k) / scale;
        const double b = static_cast<double>(k + 1) / scale;
        const double mass = std::max(0.0, d.cdf_left(b) - d.cdf_left(a));
        if (mass > 0.0) {
            q.cells[{k}] = mass;
            total += mass;
        }
    }
    // Renormalize away the truncated tails so cell masses form a pmf.
    if (total > 0.0 && std::abs(total - 1.0) > 1e-15)
        for (auto& [key, p] : q.cells) p /= total;
    return q;
}

namespace {

QuantizedView quantize_from_counts(std::map<std::vector<std::int64_t>, double>&& counts,
                                   std::size_t samples, int n) {
    QuantizedView q;
    q.resolution = n;
    std::size_t singletons = 0;
    for (auto& [key, c] : counts) {
        if (c == 1.0) ++singletons;
        c /= static_cast<double>(samples);
    }
    q.cells = std::move(counts);
    q.undersampled = !q.cells.empty() && singletons * 100 >= q.cells.size();
    return q;
}

} // namespace

QuantizedView quantize_empirical(const ScalarDistribution& d, int n, std::size_t samples,
                                 std::uint64_t seed) {
    Rng rng(seed);
    const double scale = std::ldexp(1.0, n);
    std::map<std::vector<std::int64_t>, double> counts;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = d.sample(rng);
        counts[{static_cast<std::int64_t>(std::floor(x * scale))}] += 1.0;
    }
    return quantize_from_counts(std::move(counts), samples, n);
}

QuantizedView quantize_empirical(const VectorDistribution& d, int n, std::size_t samples,
                                 std::uint64_t seed) {
    Rng rng(seed);
    const double scale = std::ldexp(1.0, n);
    std::map<std::vector<std::int64_t>, double> counts;
    std::vector<std::int64_t> key(d.dimension);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::vector<double> x = d.sample(rng);
        for (int j = 0; j < d.dimension; ++j)
            key[j] = static_cast<std::int64_t>(std::floor(x[j] * scale));
        counts[key] += 1.0;
    }
    return quantize_from_counts(std::move(counts), samples, n);
}

double empirical_entropy(const std::map<std::vector<std::int64_t>, double>& cells,
                         bool miller_madow, std::size_t sample_count) {
    double h = 0.0;
    for (const auto& [key, p] : cells) h += plogp(p);
    if (miller_madow && sample_count > 0)
        h += static_cast<double>(cells.size() - 1) / (2.0 * sample_count * std::log(2.0));
    return h;
}

namespace {

DimensionEstimate dimension_from_entropies(const std::vector<double>& ns,
                                           const std::vector<double>& hs, bool undersampled) {
    DimensionEstimate est;
    est.entropies = hs;
    est.undersampled = undersampled;
    const SlopeFit fit = fit_slope(ns, hs);
    est.estimate = fit.slope;
    est.stderr_ = fit.stderr_;
    return est;
}

template <class Dist, class QuantizeFn>
DimensionEstimate dimension_impl(const Dist& d, int n_lo, int n_hi, std::size_t samples,
                                 QuantizeFn&& make_view) {
    if (!(n_hi > n_lo && n_lo >= 4))
        throw InvalidInputError("information_dimension: need n_hi > n_lo >= 4");
    if (samples > 0 && samples < 100000)
        throw InvalidInputError("information_dimension: empirical mode needs >= 1e5 samples");
    std::vector<double> ns, hs;
    bool undersampled = false;
    for (int n = n_lo; n <= n_hi; ++n) {
        const QuantizedView v = make_view(d, n);
        undersampled = undersampled || v.undersampled;
        ns.push_back(n);
        hs.push_back(v.entropy());
    }
    return dimension_from_entropies(ns, hs, undersampled);
}

} // namespace

DimensionEstimate information_dimension(const ScalarDistribution& d, int n_lo, int n_hi,
                                        std::size_t samples, std::uint64_t seed) {
    if (samples == 0)
        return dimension_impl(d, n_lo, n_hi, samples,
                              [](const ScalarDistribution& dd, int n) { return quantize(dd, n); });
    // One empirical pass at n_hi; coarser resolutions follow by shifting the
    // cell indices, so every level sees the identical sample set.
    if (samples < 100000)
        throw InvalidInputError("information_dimension: empirical mode needs >= 1e5 samples");
    if (!(n_hi > n_lo && n_lo >= 4))
        throw InvalidInputError("information_dimension: need n_hi > n_lo >= 4");
    const QuantizedView fine = quantize_empirical(d, n_hi, samples, seed);
    std::vector<double> ns, hs;
    for (int n = n_lo; n <= n_hi; ++n) {
        const int shift = n_hi - n;
        std::map<std::vector<std::int64_t>, double> coarse;
        for (const auto& [key, p] : fine.cells) {
            const std::int64_t k = key[0];
            // floor division by 2^shift, correct for negatives
            coarse[{k >> shift}] += p;
        }
        ns.push_back(n);
        hs.push_back(empirical_entropy(coarse));
    }
    return dimension_from_entropies(ns, hs, fine.undersampled);
}

DimensionEstimate information_dimension(const VectorDistribution& d, int n_lo, int n_hi,
                                        std::size_t samples, std::uint64_t seed) {
    return dimension_impl(d, n_lo, n_hi, samples, [&](const VectorDistribution& dd, int n) {
        return quantize_empirical(dd, n, samples, seed);
    });
}

} // namespace infoloss
