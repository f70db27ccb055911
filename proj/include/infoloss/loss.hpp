#ifndef INFOLOSS_LOSS_HPP
#define INFOLOSS_LOSS_HPP

#include "infoloss/distribution.hpp"
#include "infoloss/pbf.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace infoloss {

enum class LossMethod { DiffEntropyFormula, PartitionIntegral, MonteCarlo };

/// The ordered upper-bound chain on the loss of a PBF, plus H(W).
/// All members are exact up to cdf/inversion accuracy (no quadrature).
/// For truncated infinite families the cardinality-based members are +inf
/// and h_of_w is the partial sum over the represented branches.
struct BoundChain {
    double e_log_card = 0.0;       // E[log2 card g^-1(Y)]
    double log_e_card = 0.0;       // log2 E[card g^-1(Y)]
    double ess_sup_log_card = 0.0; // ess sup log2 card
    double log_k = 0.0;            // log2 (number of branches)
    double h_of_w = 0.0;           // entropy of the branch indicator
    double e_card = 1.0;           // E[card g^-1(Y)] (raw)
    double ess_sup_card = 1.0;     // ess sup card (raw)
};

struct LossFlags {
    bool infinite = false;
    std::string reason;
};

struct LossReport {
    double loss_bits = 0.0;
    LossMethod method = LossMethod::PartitionIntegral;
    double numeric_error = 0.0;
    BoundChain bound_chain;
    LossFlags flags;
};

BoundChain bound_chain(const Pbf& f, const ScalarDistribution& d);

/// h(X) - h(Y) + E[log2 |g'(X)|].
LossReport loss_via_differential_entropy(const Pbf& f, const ScalarDistribution& d);

/// Integral of H(W | Y = y) against f_Y.
LossReport loss_via_partition(const Pbf& f, const ScalarDistribution& d);

/// Sample mean of H(W | Y = g(X_j)); numeric_error is the standard error.
/// Batched with per-batch derived seeds so the result does not depend on how
/// batches are scheduled.
LossReport loss_monte_carlo(const Pbf& f, const ScalarDistribution& d, std::size_t samples,
                            std::uint64_t seed);

struct EqualityCheck {
    bool holds = true;
    double max_deviation = 0.0;
};

/// Tests the almost-sure condition under which the first bound of the chain
/// is tight: the normalized preimage weight sum must equal the preimage
/// cardinality at every probe point.
EqualityCheck equality_condition_check(const Pbf& f, const ScalarDistribution& d,
                                       std::size_t probes = 200, std::uint64_t seed = 7);

struct CascadeLoss {
    double sum = 0.0;    // L(X->Y) + L(Y->Z)
    double direct = 0.0; // loss of the composed map
    double numeric_error = 0.0;
};

CascadeLoss cascade_loss(const Pbf& f, const Pbf& h, const ScalarDistribution& d);

// --- structural probe for infinite loss ---

enum class PieceClass { Bijective, Constant, Submersion, Unknown };

struct MapPiece {
    Interval domain;
    PieceClass cls = PieceClass::Unknown;
    int in_dim = 1;
    int out_dim = 1; // manifold dimension of the piece image (Submersion only)
};

struct MapDescriptor {
    std::vector<MapPiece> pieces;
};

enum class LossClassification { NotFlagged, Infinite, Undeterminable };

struct InfiniteLossProbe {
    LossClassification result = LossClassification::NotFlagged;
    std::string reason;
};

/// Declarative probe: flags infinite loss when the input has an absolutely
/// continuous component and some piece is constant with positive AC mass, or
/// some piece has uncountable fibers (dimension-reducing submersion) with
/// positive mass. Unknown piece classes make the probe undeterminable.
InfiniteLossProbe infinite_loss_probe(const MapDescriptor& m, const ScalarDistribution& d);

} // namespace infoloss

#endif
