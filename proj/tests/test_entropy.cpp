#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "infoloss/entropy.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/gallery.hpp"

#include <cmath>
#include <vector>

using namespace infoloss;

TEST_CASE("discrete entropy basics") {
    const std::vector<double> degenerate{1.0};
    CHECK(discrete_entropy(degenerate) == 0.0);
    const std::vector<double> coin{0.5, 0.5};
    CHECK(discrete_entropy(coin) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<double> bad{0.5, 0.6};
    CHECK_THROWS_AS(discrete_entropy(bad), InvalidInputError);
    const std::vector<double> neg{-0.1, 1.1};
    CHECK_THROWS_AS(discrete_entropy(neg), InvalidInputError);
}

TEST_CASE("slowly decaying piece masses have divergent entropy partial sums") {
    // partial sums of -p_n log2 p_n strictly increase without plateau
    double prev = 0.0;
    for (int k = 1; k <= 4000; ++k) {
        const double s = staircase_hw_partial_sum(k);
        CHECK(s > prev);
        prev = s;
    }
    // still growing far out
    CHECK(staircase_hw_partial_sum(4000) - staircase_hw_partial_sum(2000) > 0.01);
}

TEST_CASE("binary entropy endpoints, symmetry, frozen midpoint value") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-15));
    // high-precision reference value
    CHECK(binary_entropy(0.11) == doctest::Approx(0.4999159581645280).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.01), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.01), DomainError);
}

TEST_CASE("q function values") {
    CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q_function(40.0) <= 1e-300);
    // erfc(1/sqrt 2)/2 at high precision
    CHECK(q_function(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-14));
    CHECK(q_function(-1.0) == doctest::Approx(1.0 - 0.15865525393145705).epsilon(1e-14));
}

TEST_CASE("differential entropy of the reference laws") {
    const auto unit = differential_entropy(ScalarDistribution::uniform(0.0, 1.0));
    CHECK(unit.value_bits == doctest::Approx(0.0).epsilon(1e-6));

    const auto gauss = differential_entropy(ScalarDistribution::gaussian(0.0, 1.0));
    CHECK(gauss.value_bits == doctest::Approx(2.047095585180641).epsilon(1e-5));

    CHECK_THROWS_AS(differential_entropy(ScalarDistribution::discrete({{0.0, 1.0}})),
                    InvalidInputError);
}

TEST_CASE("differential entropy shifts by log2|a| under affine maps") {
    const ScalarDistribution d = ScalarDistribution::gaussian(0.3, 1.2);
    const double base = differential_entropy(d).value_bits;
    for (double a : {2.0, 0.5, -3.0}) {
        const double t = differential_entropy(d.affine_transform(a, 0.7)).value_bits;
        CHECK(t == doctest::Approx(base + std::log2(std::abs(a))).epsilon(2e-4));
    }
}

TEST_CASE("quantize from cdf differences") {
    const QuantizedView q = quantize(ScalarDistribution::uniform(0.0, 1.0), 1);
    REQUIRE(q.cells.size() == 2);
    CHECK(q.cells.at({0}) == doctest::Approx(0.5));
    CHECK(q.cells.at({1}) == doctest::Approx(0.5));

    const QuantizedView atom = quantize(ScalarDistribution::discrete({{0.3, 1.0}}), 0);
    REQUIRE(atom.cells.size() == 1);
    CHECK(atom.cells.at({0}) == doctest::Approx(1.0));

    const ScalarDistribution mixed =
        ScalarDistribution::mixed(0.6, ScalarDistribution::uniform(0.0, 1.0), {{0.25, 0.4}});
    const QuantizedView qm = quantize(mixed, 2);
    CHECK(qm.cells.at({1}) == doctest::Approx(0.55).epsilon(1e-12)); // [0.25, 0.5)
}

TEST_CASE("refining the resolution never decreases entropy") {
    const std::vector<ScalarDistribution> laws{
        ScalarDistribution::uniform(-0.7, 2.3), ScalarDistribution::gaussian(0.1, 0.8),
        ScalarDistribution::mixed(0.5, ScalarDistribution::uniform(0.0, 2.0), {{0.5, 0.5}})};
    for (const auto& d : laws) {
        double prev = -1.0;
        for (int n = 0; n <= 8; ++n) {
            const double h = quantize(d, n).entropy();
            CHECK(h >= prev - 1e-12);
            prev = h;
        }
    }
}

TEST_CASE("information dimension, analytic route") {
    const auto unif = information_dimension(ScalarDistribution::uniform(0.0, 1.0), 6, 14);
    CHECK(unif.estimate == doctest::Approx(1.0).epsilon(0.001));

    const auto atom = information_dimension(ScalarDistribution::discrete({{0.3, 1.0}}), 6, 14);
    CHECK(atom.estimate == doctest::Approx(0.0).epsilon(1e-12));

    const auto mix = information_dimension(
        ScalarDistribution::mixed(0.6, ScalarDistribution::uniform(0.0, 1.0), {{0.25, 0.4}}), 6,
        14);
    CHECK(mix.estimate == doctest::Approx(0.6).epsilon(0.01));

    CHECK_THROWS_AS(information_dimension(ScalarDistribution::uniform(0.0, 1.0), 3, 2),
                    InvalidInputError);
}

TEST_CASE("information dimension, empirical route") {
    const auto unif =
        information_dimension(ScalarDistribution::uniform(0.0, 1.0), 6, 12, 200000, 11);
    CHECK(unif.estimate == doctest::Approx(1.0).epsilon(0.05));
    CHECK(unif.stderr_ < 0.05);

    // undersampling at a too-fine resolution is reported, not fatal
    const auto fine =
        information_dimension(ScalarDistribution::gaussian(0.0, 1.0), 6, 22, 100000, 11);
    CHECK(fine.undersampled);
}

TEST_CASE("vector dimension bounded by coordinate count") {
    const VectorDistribution v = VectorDistribution::independent_product(
        {ScalarDistribution::uniform(0.0, 1.0), ScalarDistribution::uniform(0.0, 1.0)});
    const auto est = information_dimension(v, 5, 9, 300000, 3);
    CHECK(est.estimate > 1.6);
    CHECK(est.estimate < 2.2);
}
