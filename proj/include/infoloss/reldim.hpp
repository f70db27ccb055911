#ifndef INFOLOSS_RELDIM_HPP
#define INFOLOSS_RELDIM_HPP

#include "infoloss/distribution.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace infoloss {

enum class RelProvenance { DimensionRatio, Structural, Mixed, Empirical };

/// Relative loss and its complement; rel_loss + rel_transfer == 1 exactly
/// (rel_transfer is derived, never stored independently).
struct RelLossResult {
    double rel_loss = 0.0;
    double rel_transfer = 1.0;
    RelProvenance provenance = RelProvenance::DimensionRatio;
    double d_x = 0.0;         // recorded inputs where applicable
    double d_x_given_y = 0.0;
};

RelLossResult make_rel_loss(double l, RelProvenance prov);

/// l = d(X|Y) / d(X).
RelLossResult rel_loss_from_dimensions(double d_x, double d_x_given_y);

/// t = d(Y) / d(X); valid when the map is Lipschitz (asserted by the caller).
RelLossResult rel_transfer_lipschitz(double d_x, double d_y);

enum class DimPieceClass { Submersion, Injective, Constant };

struct DimensionPiece {
    double mass = 0.0;
    int output_dim = 0; // manifold dimension of the piece image
    DimPieceClass cls = DimPieceClass::Submersion;
};

/// Structural description of a piecewise dimension-reducing map.
struct DimensionPieceSpec {
    int input_dim = 1;
    std::vector<DimensionPiece> pieces;

    void validate() const; // masses sum to 1 within 1e-12, 0 <= M_i <= N
};

/// l = sum_i mass_i (N - M_i) / N for submersion pieces (constants count as
/// submersions onto points). Injective pieces are rejected.
RelLossResult rel_loss_structural(const DimensionPieceSpec& spec);

/// Mixed scalar law through a piecewise injective-or-constant map:
/// l = P_ac(A) / P_ac(domain), A the union of constant pieces.
RelLossResult rel_loss_mixed(double p_ac_constant_region, double p_ac_total);

struct RelCascade {
    double rel_transfer = 0.0;
    double rel_loss = 0.0;
    double rel_loss_incl_excl = 0.0; // l1 + l2 - l1 l2, for cross-checking
};

RelCascade cascade_relative(double t1, double t2);

struct RelTransferBound {
    double raw_sum = 0.0; // may exceed 1 when outputs share information
    double bound = 0.0;   // min(1, raw_sum)
};

RelTransferBound ub_rel_transfer(std::span<const double> per_output_transfers);

/// Mean of the per-coordinate relative losses.
double ub_rel_loss(std::span<const double> per_coordinate_losses);

struct RelFanoBound {
    double raw = 0.0;
    double bound = 0.0; // clipped to 1
};

/// l <= Pe d_B(support) / d(X) for compactly supported laws.
RelFanoBound fano_relative_bound(double p_e, double minkowski_dim, double info_dim);

/// Minimum rate of a Lipschitz encoder at block error epsilon:
/// max(0, d(X) - epsilon).
double compression_converse(double d_x, double epsilon);

struct RelLossEmpirical {
    double estimate = 0.0; // extrapolated ratio (regression against 1/n)
    double stderr_ = 0.0;
    std::vector<int> ns;
    std::vector<double> ratios; // H(X_hat_n | Y_hat_n) / H(X_hat_n)
    bool undersampled = false;
};

/// Finite-n evaluation of the defining ratio, binning Y at the same
/// resolution as X.
RelLossEmpirical rel_loss_empirical(const ScalarDistribution& d,
                                    const std::function<double(double)>& map, int n_lo, int n_hi,
                                    std::size_t samples, std::uint64_t seed);

enum class AbsLossClass { Infinite, Inconclusive };

/// Positive relative loss with infinite input entropy forces infinite
/// absolute loss; everything else is inconclusive (the converse fails).
AbsLossClass positive_rel_implies_infinite_abs(double rel_loss, bool h_x_infinite);

} // namespace infoloss

#endif
