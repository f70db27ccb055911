#ifndef INFOLOSS_DISTRIBUTION_HPP
#define INFOLOSS_DISTRIBUTION_HPP

#include "infoloss/rng.hpp"

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace infoloss {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval on the extended real line.
struct Interval {
    double lo = -kInf;
    double hi = kInf;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double length() const { return hi - lo; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

struct Atom {
    double location;
    double mass;
};

enum class DistKind { AbsolutelyContinuous, Discrete, Mixed };

/// One-dimensional input law. Immutable after construction; all members are
/// plain values or pure callables, so concurrent use is safe.
///
/// For the Mixed variant, pdf/cdf describe the full measure: pdf is the
/// density of the AC part scaled by ac_weight (atoms live in `atoms`), while
/// cdf includes atom masses.
class ScalarDistribution {
public:
    DistKind kind = DistKind::AbsolutelyContinuous;
    std::function<double(double)> pdf;       // density of the AC component (weighted)
    std::function<double(double)> cdf;       // P(X <= x), atoms included
    std::function<double(double)> quantile;  // generalized inverse of cdf
    Interval support;
    double ac_weight = 1.0;                  // mass of the AC component
    std::vector<Atom> atoms;                 // sorted by location
    std::vector<double> pdf_breakpoints;     // kinks/jumps of the density, if any
    std::string name;

    /// P(X < x): cdf minus any atom exactly at x.
    double cdf_left(double x) const;

    /// Mass of the closed interval [a, b].
    double prob(double a, double b) const;

    /// Inverse-cdf sampling; deterministic for a fixed Rng stream.
    double sample(Rng& rng) const;

    /// Pushforward through x -> a*x + b (a != 0). AC and Mixed supported.
    ScalarDistribution affine_transform(double a, double b) const;

    /// Support truncated so that at most tail_mass cdf mass lies outside
    /// on each side. Identity for bounded supports.
    Interval truncated_support(double tail_mass = 1e-10) const;

    /// Validates the structural invariants (mass normalization, cdf
    /// monotonicity and quantile consistency at probe points). Throws
    /// InvalidInputError on violation.
    void validate() const;

    // --- factories ---
    static ScalarDistribution gaussian(double mean, double stddev);
    static ScalarDistribution uniform(double a, double b);
    /// Gaussian conditioned on [a, b].
    static ScalarDistribution truncated_gaussian(double mean, double stddev, double a, double b);
    static ScalarDistribution discrete(std::vector<Atom> atoms);
    static ScalarDistribution mixed(double ac_weight, ScalarDistribution ac_part,
                                    std::vector<Atom> atoms);
    /// Piecewise-constant density: value levels[i] on [edges[i], edges[i+1]).
    static ScalarDistribution piecewise_constant(std::vector<double> edges,
                                                 std::vector<double> levels);
};

enum class Dependence { IndependentProduct, Pushforward };

/// N-dimensional input law. Only product laws and named pushforwards are
/// representable; the joint pdf is synthesized for products.
class VectorDistribution {
public:
    int dimension = 0;
    std::vector<ScalarDistribution> marginals;
    std::function<std::vector<double>(Rng&)> sampler;
    std::function<double(const std::vector<double>&)> joint_pdf; // may be empty
    Dependence dependence = Dependence::IndependentProduct;
    std::string pushforward_name;

    std::vector<double> sample(Rng& rng) const { return sampler(rng); }

    static VectorDistribution independent_product(std::vector<ScalarDistribution> marginals);
    static VectorDistribution pushforward(
        VectorDistribution base, std::string map_name,
        std::function<std::vector<double>(const std::vector<double>&)> map);
};

} // namespace infoloss

#endif
