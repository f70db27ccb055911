#ifndef INFOLOSS_GALLERY_HPP
#define INFOLOSS_GALLERY_HPP

#include "infoloss/distribution.hpp"
#include "infoloss/loss.hpp"
#include "infoloss/pbf.hpp"
#include "infoloss/reldim.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace infoloss {

/// Reference value attached to a gallery system, tagged with how it was
/// obtained ("closed-form", "exact", "formula").
struct ReferenceValue {
    std::string key;
    double value = 0.0;
    std::string provenance;
    double tolerance = 1e-9;
};

/// A named example system: map + default input law + reference values.
struct GallerySystem {
    std::string name;
    std::string summary;
    std::optional<Pbf> pbf;
    std::optional<ScalarDistribution> input;
    std::optional<VectorDistribution> vector_input;
    MapDescriptor descriptor;
    std::function<double(double)> scalar_map;      // empty for vector systems
    std::optional<DimensionPieceSpec> dim_spec;    // structural relative loss
    bool h_w_divergent = false;                    // branch-indicator entropy diverges
    double declared_rel_transfer = -1.0;           // vector systems; <0 if n/a
    std::vector<ReferenceValue> references;
};

std::vector<std::string> gallery_names();

/// Throws InvalidInputError listing the available names on a bad lookup.
GallerySystem gallery(const std::string& name);

/// One row of a reference-vs-computed comparison.
struct GalleryRunRow {
    std::string quantity;
    double computed = 0.0;
    double reference = 0.0;
    std::string provenance;
    double tolerance = 0.0;
    bool pass = false;
};

std::vector<GalleryRunRow> gallery_run(const GallerySystem& sys, std::uint64_t seed = 20240901);

// --- information-flow pattern (finite/infinite/0/1/in-between) ---

enum class FlowClass { FiniteConstant, Infinite, Zero, One, Between };

struct FlowPattern {
    FlowClass mutual_information = FlowClass::FiniteConstant;
    FlowClass abs_loss = FlowClass::FiniteConstant;
    FlowClass rel_transfer = FlowClass::One;
    FlowClass rel_loss = FlowClass::Zero;
};

/// Classifies the four flow measures from the system's declared structure:
/// the infinite-loss probe, the constant-piece mass ratio, and the
/// finite-loss-forces-zero-relative-loss implication.
FlowPattern flow_pattern(const GallerySystem& sys);

std::string to_string(FlowClass c);

// --- cubic system (third-order polynomial) ---

Pbf make_cubic_pbf();
ScalarDistribution cubic_input(double sigma);
double cubic_p_b(double sigma);     // 2 Q(20 / (sqrt(3) sigma))
double cubic_p_e_map(double sigma); // 2 Q(10/(sqrt3 s)) - 2 Q(20/(sqrt3 s))

struct FigureCubicRow {
    double sigma;
    double numeric_loss;
    double fano;
    double fano_type;
    double feder_merhav_lower;
    double ordered_ub; // (1 - P_b) log2 3
};

std::vector<FigureCubicRow> figure_cubic(const std::vector<double>& sigma_grid);

/// CSV with header sigma,numeric_loss,fano,fano_type,feder_merhav_lower,ordered_ub.
std::string figure_cubic_csv(const std::vector<FigureCubicRow>& rows);

// --- other named builders (exposed for tests) ---

Pbf make_identity_pbf();
Pbf make_square_law_pbf();
Pbf make_rectifier_pbf();
/// Self-similar dyadic ramp family truncated to `pieces` branches.
Pbf make_staircase_pbf(int pieces);
ScalarDistribution staircase_input(int pieces);
double staircase_piece_mass(std::int64_t n);
/// Partial sum of the branch-indicator entropy series over the first k pieces.
double staircase_hw_partial_sum(std::int64_t k);
/// Pairs of slope-1 pieces a distance delta apart mapped onto each other
/// (1/(2 delta) pairs on [0, 1)); loss is one bit regardless of delta.
Pbf make_interleaved_pairs_pbf(double delta);

} // namespace infoloss

#endif
