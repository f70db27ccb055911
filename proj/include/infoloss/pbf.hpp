#ifndef INFOLOSS_PBF_HPP
#define INFOLOSS_PBF_HPP

#include "infoloss/distribution.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace infoloss {

/// One strictly monotone bijective piece of a piecewise bijective function.
class Branch {
public:
    Interval domain;
    std::function<double(double)> fwd;
    std::function<double(double)> deriv;
    std::optional<std::function<double(double)>> inverse_fn; // analytic inverse if supplied
    Interval image;
    bool increasing = true;

    /// g^-1(y) for y in the image interval; analytic when supplied, bracketed
    /// Brent otherwise. y is clamped to the image to absorb roundoff at the
    /// endpoints.
    double invert(double y) const;
};

/// Builds a branch, deriving orientation and (for bounded domains) the image
/// from endpoint evaluations. Unbounded domains must supply the image.
Branch make_branch(Interval domain, std::function<double(double)> fwd,
                   std::function<double(double)> deriv,
                   std::optional<std::function<double(double)>> inverse = std::nullopt,
                   std::optional<Interval> image = std::nullopt);

/// Piecewise bijective function: ordered monotone branches with pairwise
/// disjoint domain interiors. Immutable once built.
class Pbf {
public:
    std::vector<Branch> branches;

    // A countably infinite branch family represented by its first branches.
    // tail_mass is reported relative to the default input law of the system
    // that built this object.
    bool truncated_family = false;
    double tail_mass = 0.0;
    bool unbounded_branch_count = false; // ess sup preimage cardinality is infinite

    int branch_count() const { return static_cast<int>(branches.size()); }
    Interval domain_hull() const;
    Interval image_hull() const;
};

Pbf make_pbf(std::vector<Branch> branches);

/// Index of the branch owning x; boundary points resolve to the lowest index.
/// Returns -1 when x lies in no branch domain.
int branch_of(const Pbf& f, double x);

/// The discrete variable W = index of the branch containing X.
struct PartitionIndicator {
    const Pbf* pbf;
    int operator()(double x) const { return branch_of(*pbf, x); }
};

double evaluate(const Pbf& f, double x);

struct PreimagePoint {
    int branch;
    double x;
};

/// All solutions of g(x) = y, one per branch whose image contains y.
std::vector<PreimagePoint> preimage(const Pbf& f, double y);

/// Number of branches whose image interval contains y.
int preimage_cardinality(const Pbf& f, double y);

/// f_Y(y) = sum over preimage points of f_X(x_i) / |g'(x_i)|.
double output_pdf(const Pbf& f, const ScalarDistribution& d, double y);

/// Unnormalized posterior weights w_i(y) = f_X(g_i^-1(y)) / |g_i'| per branch
/// (0 when y is outside branch i's image). Their sum is f_Y(y).
std::vector<double> posterior_weights(const Pbf& f, const ScalarDistribution& d, double y);

/// P(W = i | Y = y) over all branch indices; requires f_Y(y) > 0.
std::vector<double> branch_posterior(const Pbf& f, const ScalarDistribution& d, double y);

/// h after f: returns the PBF computing x -> h(f(x)). Branches are the
/// refinement of f's branches by the preimages of h's domains.
Pbf compose(const Pbf& f, const Pbf& h);

struct BijectivePart {
    std::vector<Interval> x_intervals; // where the preimage of g(x) is a single point
    double mass = 0.0;                 // P_b
};

BijectivePart bijective_part(const Pbf& f, const ScalarDistribution& d);

/// Elementary interval of the image with its covering branch set.
struct ImageCell {
    Interval y;
    std::vector<int> covering; // branch indices whose image contains the cell
};

/// Partition of the image hull into maximal intervals of constant preimage
/// cardinality (boundary points ignored).
std::vector<ImageCell> decompose_image(const Pbf& f);

/// Mass of branch i's domain under d.
double branch_mass(const Pbf& f, const ScalarDistribution& d, int i);

/// P_Y of a y-interval, computed exactly from cdf differences of d.
double image_mass(const Pbf& f, const ScalarDistribution& d, const Interval& y_range);

/// Distribution of Y = f(X). pdf/cdf/quantile all exact up to branch
/// inversion accuracy.
ScalarDistribution pushforward(const ScalarDistribution& d, const Pbf& f);

/// Checks that the branch domains cover the support of d except for a set of
/// mass below tol. Truncated families are exempt (their tail is reported via
/// Pbf::tail_mass instead). Throws InvalidInputError otherwise.
void check_covers(const Pbf& f, const ScalarDistribution& d, double tol = 1e-9);

} // namespace infoloss

#endif
