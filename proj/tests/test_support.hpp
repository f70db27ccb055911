#ifndef INFOLOSS_TEST_SUPPORT_HPP
#define INFOLOSS_TEST_SUPPORT_HPP

#include "infoloss/distribution.hpp"
#include "infoloss/pbf.hpp"
#include "infoloss/rng.hpp"

#include <cmath>
#include <vector>

namespace infoloss::testing {

struct RandomSystem {
    Pbf pbf;
    ScalarDistribution input;
};

/// Random finite-K piecewise bijective function with overlapping branch
/// images (so the loss is generically positive), paired with an input law
/// supported exactly on the branch domains. With unit_square = true both
/// domain and image stay inside [0, 1], which makes systems composable.
inline RandomSystem make_random_system(Rng& rng, bool unit_square = false) {
    const int k = 1 + static_cast<int>(rng.uniform01() * 4); // 1..4 branches
    const double x_lo = unit_square ? 0.0 : rng.uniform(-2.0, -0.5);
    const double x_hi = unit_square ? 1.0 : rng.uniform(0.5, 2.0);

    std::vector<double> cuts{x_lo};
    for (int i = 1; i < k; ++i)
        cuts.push_back(rng.uniform(x_lo + 0.05, x_hi - 0.05));
    cuts.push_back(x_hi);
    std::sort(cuts.begin(), cuts.end());
    // keep pieces from degenerating
    for (int i = 1; i <= k; ++i)
        if (cuts[i] - cuts[i - 1] < 0.02) cuts[i] = cuts[i - 1] + 0.02;
    const double span = cuts[k] - x_lo;
    for (int i = 1; i <= k; ++i) cuts[i] = x_lo + (cuts[i] - x_lo) / span * (x_hi - x_lo);

    const double window_lo = unit_square ? 0.0 : -1.0;
    const double window_hi = 1.0;

    std::vector<Branch> branches;
    for (int i = 0; i < k; ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const double w = rng.uniform(0.25, 1.0) * (window_hi - window_lo);
        const double c = rng.uniform(window_lo, window_hi - w);
        const bool flip = rng.uniform01() < 0.4;
        const bool quadratic = rng.uniform01() < 0.35;
        if (!quadratic) {
            const double slope = (flip ? -1.0 : 1.0) * w / (b - a);
            const double inter = flip ? (c + w - slope * a) : (c - slope * a);
            branches.push_back(make_branch(
                {a, b}, [slope, inter](double x) { return slope * x + inter; },
                [slope](double) { return slope; },
                [slope, inter](double y) { return (y - inter) / slope; }));
        } else {
            // monotone on [a, b] with the vertex at a; optionally flipped
            const double len = b - a;
            const double sgn = flip ? -1.0 : 1.0;
            const double base = flip ? c + w : c;
            branches.push_back(make_branch(
                {a, b},
                [base, sgn, w, a, len](double x) {
                    const double u = (x - a) / len;
                    return base + sgn * w * u * u;
                },
                [sgn, w, a, len](double x) { return sgn * 2.0 * w * (x - a) / (len * len); },
                [base, sgn, w, a, len](double y) {
                    const double u2 = (y - base) / (sgn * w);
                    return a + len * std::sqrt(std::max(0.0, u2));
                }));
        }
    }
    Pbf f = make_pbf(std::move(branches));

    ScalarDistribution input;
    if (rng.uniform01() < 0.5) {
        input = ScalarDistribution::uniform(x_lo, x_hi);
    } else {
        const double mean = rng.uniform(x_lo, x_hi);
        const double sd = rng.uniform(0.2, 1.0) * (x_hi - x_lo);
        input = ScalarDistribution::truncated_gaussian(mean, sd, x_lo, x_hi);
    }
    return {std::move(f), std::move(input)};
}

} // namespace infoloss::testing

#endif
