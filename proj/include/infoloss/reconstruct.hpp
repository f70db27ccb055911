#ifndef INFOLOSS_RECONSTRUCT_HPP
#define INFOLOSS_RECONSTRUCT_HPP

#include "infoloss/distribution.hpp"
#include "infoloss/pbf.hpp"

#include <cstdint>
#include <functional>

namespace infoloss {

enum class ReconKind { MAP, Suboptimal, Custom };

/// Bounds that hold for reconstructors that may leave the preimage
/// (cardinality enters unreduced).
struct ExtraBounds {
    double binent_ess_sup = 0.0; // H2(Pe) + Pe log2(ess sup card)
    double binent_card = 0.0;    // H2(Pe) + Pe log2(branch count)
    double fano_type_e_card = 0.0;
};

struct ReconResult {
    ReconKind kind = ReconKind::MAP;
    double error_prob = 0.0;
    std::function<double(double)> per_y_error; // P_e(y)
    std::function<double(double)> reconstruct; // y -> x
    double fano_type_bound = 0.0;
    double classic_fano_bound = 0.0;
    double feder_merhav_lower = 0.0; // NaN for non-MAP reconstructors
    double suboptimal_bound = 0.0;   // only meaningful for kind == Suboptimal
    ExtraBounds extra;
};

/// MAP point estimate: the preimage point with the largest posterior weight
/// f_X(g_i^-1(y)) / |g_i'|; ties resolve to the lowest branch index.
double map_reconstruct(const Pbf& f, const ScalarDistribution& d, double y);

/// P_e of the MAP reconstructor: 1 - integral of max_i w_i(y) over the image.
double map_error_probability(const Pbf& f, const ScalarDistribution& d);

/// min{1-Pb, H2(Pe)} - Pe log2 Pe + Pe log2(E[card] - 1); e_card is the
/// expected preimage cardinality and must be >= 1.
double fano_type_bound(double p_e, double p_b, double e_card);

/// H2(Pe) + Pe log2(cap - 1); cap is a preimage-cardinality cap >= 2.
double classic_fano_bound(double p_e, double cardinality_cap);

/// Piecewise linear lower bound on conditional entropy as a function of the
/// MAP error probability; defined on [0, 1).
double feder_merhav_phi(double x);

/// Full MAP analysis with every bound evaluated.
ReconResult map_reconstruction_analysis(const Pbf& f, const ScalarDistribution& d);

/// The mass-greedy reconstructor: answers within the branch of largest
/// P_X(X_i union X_b) unless y identifies the input exactly. For this kind
/// the fano_type/classic fields hold the unreduced-cardinality variants.
ReconResult suboptimal_reconstructor(const Pbf& f, const ScalarDistribution& d);

struct EmpiricalError {
    double error_prob = 0.0;
    double stderr_ = 0.0;
};

/// Fraction of draws with r(g(X)) != X, exact-match semantics with relative
/// tolerance 1e-8 (branch inverses are numeric).
EmpiricalError empirical_error_probability(const Pbf& f, const ScalarDistribution& d,
                                           const std::function<double(double)>& reconstructor,
                                           std::size_t samples, std::uint64_t seed);

} // namespace infoloss

#endif
