#ifndef INFOLOSS_ACCUMULATOR_HPP
#define INFOLOSS_ACCUMULATOR_HPP

#include <complex>
#include <vector>

namespace infoloss {

/// State of a modulo-sum accumulator over the field {0..N-1}: the input pmf,
/// the pmf of the running sum after `step` additions, and the input spectrum.
struct AccumulatorState {
    int n = 0;                                   // field size, even
    std::vector<double> base_pmf;                // pmf of one summand
    std::vector<double> current_pmf;             // pmf of the i-fold sum
    int step = 1;                                // number of summands so far
    std::vector<std::complex<double>> spectrum;  // DFT of base_pmf
    double last_consistency_dev = 0.0;           // conv-vs-spectral deviation
};

/// Direct O(N^2) DFT / inverse DFT; the unnormalized forward convention puts
/// the total mass in bin 0.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x);
std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& x);
std::vector<std::complex<double>> dft_real(const std::vector<double>& x);

std::vector<double> circular_convolution(const std::vector<double>& a,
                                         const std::vector<double>& b);

/// Validates the pmf and builds the i = 1 state. N must be even.
AccumulatorState make_accumulator(std::vector<double> pmf);

/// One more modulo addition: the sum pmf advances by circular convolution
/// with the base pmf and is cross-checked against the element-wise spectral
/// power route; disagreement beyond 1e-8 throws NumericError.
AccumulatorState accumulator_step(const AccumulatorState& s);

/// pmf of the i-fold sum straight from the spectral route.
std::vector<double> accumulator_pmf_at(const std::vector<double>& pmf, int i);

/// (N/2 - 1) log2 i + cos^2(i pi / 2): the loss cap from per-bin root
/// counting. N must be even.
double accumulator_loss_bound(int n, int i);

/// Exhaustively enumerates the input spectra whose element-wise i-th power
/// reproduces the spectrum of p_target, filtered to valid pmfs. Requires all
/// spectral magnitudes of p_target to be bounded away from zero.
int accumulator_preimage_count(int n, int i, const std::vector<double>& p_target);

} // namespace infoloss

#endif
