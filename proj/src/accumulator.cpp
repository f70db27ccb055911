#include "infoloss/accumulator.hpp"
#include "infoloss/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace infoloss {

namespace {

using cd = std::complex<double>;

constexpr double kPmfTol = 1e-12;

void validate_pmf(const std::vector<double>& p) {
    if (p.size() < 2) throw InvalidInputError("accumulator: pmf needs at least two entries");
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw InvalidInputError("accumulator: negative pmf entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kPmfTol)
        throw InvalidInputError("accumulator: pmf must sum to 1 within 1e-12");
}

std::vector<cd> dft_impl(const std::vector<cd>& x, double sign) {
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            const double ang = sign * 2.0 * M_PI * static_cast<double>(k * m % n) / n;
            acc += x[m] * cd(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

} // namespace

std::vector<cd> dft(const std::vector<cd>& x) { return dft_impl(x, -1.0); }

std::vector<cd> idft(const std::vector<cd>& x) {
    std::vector<cd> out = dft_impl(x, +1.0);
    for (cd& v : out) v /= static_cast<double>(x.size());
    return out;
}

std::vector<cd> dft_real(const std::vector<double>& x) {
    std::vector<cd> cx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) cx[i] = cd(x[i], 0.0);
    return dft(cx);
}

std::vector<double> circular_convolution(const std::vector<double>& a,
                                         const std::vector<double>& b) {
    if (a.size() != b.size())
        throw InvalidInputError("circular_convolution: length mismatch");
    const std::size_t n = a.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[(i + j) % n] += a[i] * b[j];
    return out;
}

AccumulatorState make_accumulator(std::vector<double> pmf) {
    validate_pmf(pmf);
    if (pmf.size() % 2 != 0)
        throw InvalidInputError("accumulator: field size must be even");
    AccumulatorState s;
    s.n = static_cast<int>(pmf.size());
    s.base_pmf = pmf;
    s.current_pmf = pmf;
    s.step = 1;
    s.spectrum = dft_real(pmf);
    // Structural spectrum invariants: unit mass bin, Hermitian circular
    // symmetry, real mid bin.
    if (std::abs(s.spectrum[0] - cd(1.0, 0.0)) > 1e-12)
        throw NumericError("accumulator: spectrum bin 0 must equal 1");
    for (int k = 1; k < s.n; ++k)
        if (std::abs(s.spectrum[k] - std::conj(s.spectrum[s.n - k])) > 1e-10)
            throw NumericError("accumulator: spectrum is not Hermitian symmetric");
    if (std::abs(s.spectrum[s.n / 2].imag()) > 1e-10)
        throw NumericError("accumulator: mid spectrum bin must be real");
    return s;
}

std::vector<double> accumulator_pmf_at(const std::vector<double>& pmf, int i) {
    validate_pmf(pmf);
    if (i < 1) throw InvalidInputError("accumulator_pmf_at: need i >= 1");
    const std::vector<cd> f = dft_real(pmf);
    std::vector<cd> fi(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) fi[k] = std::pow(f[k], i);
    const std::vector<cd> p = idft(fi);
    std::vector<double> out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) out[k] = p[k].real();
    return out;
}

AccumulatorState accumulator_step(const AccumulatorState& s) {
    AccumulatorState next = s;
    next.step = s.step + 1;
    next.current_pmf = circular_convolution(s.current_pmf, s.base_pmf);

    const std::vector<double> spectral = accumulator_pmf_at(s.base_pmf, next.step);
    double dev = 0.0;
    for (std::size_t k = 0; k < spectral.size(); ++k)
        dev = std::max(dev, std::abs(spectral[k] - next.current_pmf[k]));
    next.last_consistency_dev = dev;
    if (dev > 1e-8)
        throw NumericError("accumulator_step: convolution and spectral routes disagree by " +
                           std::to_string(dev));
    return next;
}

double accumulator_loss_bound(int n, int i) {
    if (n < 2 || n % 2 != 0)
        throw InvalidInputError("accumulator_loss_bound: N must be even and >= 2");
    if (i < 1) throw InvalidInputError("accumulator_loss_bound: need i >= 1");
    const double complex_bins = n / 2 - 1;
    const double real_bin = (i % 2 == 0) ? 1.0 : 0.0; // cos^2(i pi / 2)
    return complex_bins * std::log2(static_cast<double>(i)) + real_bin;
}

int accumulator_preimage_count(int n, int i, const std::vector<double>& p_target) {
    if (n < 2 || n % 2 != 0)
        throw InvalidInputError("accumulator_preimage_count: N must be even");
    if (static_cast<int>(p_target.size()) != n)
        throw InvalidInputError("accumulator_preimage_count: pmf size mismatch");
    if (i < 1) throw InvalidInputError("accumulator_preimage_count: need i >= 1");
    validate_pmf(p_target);

    const std::vector<cd> ft = dft_real(p_target);
    for (int k = 1; k < n; ++k)
        if (std::abs(ft[k]) < 1e-12)
            throw NumericError("accumulator_preimage_count: zero spectral magnitude, "
                               "roots are ambiguous");

    const int half = n / 2;
    const int complex_bins = half - 1;
    // candidate phases per complex bin: i choices; real mid bin: + or -
    // (even i only)
    long long candidates = 1;
    for (int b = 0; b < complex_bins; ++b) candidates *= i;
    const int mid_choices = (i % 2 == 0) ? 2 : 1;
    candidates *= mid_choices;
    if (candidates > 2000000)
        throw InvalidInputError("accumulator_preimage_count: candidate space too large");

    // Real i-th roots of the mid bin.
    std::vector<double> mid_roots;
    const double mid = ft[half].real();
    if (i % 2 == 0) {
        if (mid < -1e-12)
            throw NumericError("accumulator_preimage_count: negative mid bin with even power");
        const double r = std::pow(std::max(mid, 0.0), 1.0 / i);
        mid_roots = {r, -r};
    } else {
        mid_roots = {std::copysign(std::pow(std::abs(mid), 1.0 / i), mid)};
    }

    int count = 0;
    std::vector<int> phase_idx(std::max(complex_bins, 1), 0);
    for (long long c = 0; c < candidates; ++c) {
        long long rem = c;
        for (int b = 0; b < complex_bins; ++b) {
            phase_idx[b] = static_cast<int>(rem % i);
            rem /= i;
        }
        const auto mid_choice = static_cast<int>(rem % mid_choices);

        std::vector<cd> g(n);
        g[0] = cd(1.0, 0.0);
        for (int b = 0; b < complex_bins; ++b) {
            const int k = b + 1;
            const double mag = std::pow(std::abs(ft[k]), 1.0 / i);
            const double phase = (std::arg(ft[k]) + 2.0 * M_PI * phase_idx[b]) / i;
            g[k] = std::polar(mag, phase);
            g[n - k] = std::conj(g[k]);
        }
        g[half] = cd(mid_roots[static_cast<std::size_t>(mid_choice)], 0.0);

        const std::vector<cd> p = idft(g);
        bool valid = true;
        for (const cd& v : p) {
            if (std::abs(v.imag()) > 1e-9 || v.real() < -1e-9) {
                valid = false;
                break;
            }
        }
        if (valid) ++count;
    }
    return count;
}

} // namespace infoloss
