#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "infoloss/errors.hpp"
#include "infoloss/reldim.hpp"

#include <cmath>

using namespace infoloss;

TEST_CASE("relative loss from dimension ratios") {
    CHECK(rel_loss_from_dimensions(1.0, 0.0).rel_loss == 0.0);
    CHECK(rel_loss_from_dimensions(2.0, 1.0).rel_loss == doctest::Approx(0.5)); // adder
    CHECK(rel_loss_from_dimensions(0.6, 0.6).rel_loss == doctest::Approx(1.0));
    CHECK_THROWS_AS(rel_loss_from_dimensions(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(rel_loss_from_dimensions(1.0, 2.0), DomainError);
}

TEST_CASE("relative transfer for Lipschitz maps") {
    const int n = 8;
    CHECK(rel_transfer_lipschitz(2.0 * n, 2.0 * n - 1.0).rel_transfer ==
          doctest::Approx((2.0 * n - 1.0) / (2.0 * n)));
    CHECK(rel_transfer_lipschitz(4.0, 4.0).rel_transfer == doctest::Approx(1.0));
    CHECK(rel_transfer_lipschitz(2.0 * n - 1.0, 2.0).rel_transfer ==
          doctest::Approx(2.0 / (2.0 * n - 1.0)));
    CHECK_THROWS_AS(rel_transfer_lipschitz(2.0, 3.0), DomainError);
}

TEST_CASE("loss plus transfer is exactly one") {
    for (double l : {0.0, 0.3, 1.0 / 3.0, 0.9999999, 1e-300}) {
        const RelLossResult r = make_rel_loss(l, RelProvenance::DimensionRatio);
        CHECK(r.rel_loss + r.rel_transfer == 1.0); // bitwise
    }
}

TEST_CASE("structural rule for piecewise submersions") {
    // projection of 4 coordinates onto 1
    const DimensionPieceSpec proj{4, {{1.0, 1, DimPieceClass::Submersion}}};
    CHECK(rel_loss_structural(proj).rel_loss == doctest::Approx(0.75));

    // constant on a set of mass 0.35, identity elsewhere
    const DimensionPieceSpec constant_set{
        1, {{0.35, 0, DimPieceClass::Constant}, {0.65, 1, DimPieceClass::Submersion}}};
    CHECK(rel_loss_structural(constant_set).rel_loss == doctest::Approx(0.35));

    const DimensionPieceSpec full_rank{
        2, {{0.5, 2, DimPieceClass::Submersion}, {0.5, 2, DimPieceClass::Submersion}}};
    CHECK(rel_loss_structural(full_rank).rel_loss == 0.0);

    const DimensionPieceSpec inj{1, {{1.0, 1, DimPieceClass::Injective}}};
    CHECK_THROWS_AS(rel_loss_structural(inj), InvalidInputError);

    DimensionPieceSpec bad{1, {{0.7, 1, DimPieceClass::Submersion}}};
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
}

TEST_CASE("mixed-law rule") {
    CHECK(rel_loss_mixed(0.3, 0.6).rel_loss == doctest::Approx(0.5));
    CHECK(rel_loss_mixed(0.4, 1.0).rel_loss == doctest::Approx(0.4)); // pure-AC special case
    CHECK(rel_loss_mixed(0.0, 0.7).rel_loss == 0.0);
    CHECK_THROWS_AS(rel_loss_mixed(0.1, 0.0), DomainError);
    CHECK_THROWS_AS(rel_loss_mixed(0.8, 0.6), DomainError);
}

TEST_CASE("relative cascade") {
    const RelCascade pass = cascade_relative(1.0, 0.7);
    CHECK(pass.rel_transfer == doctest::Approx(0.7));
    CHECK(pass.rel_loss == doctest::Approx(0.3));

    // receiver stages: (2N-1)/2N then 2/(2N-1) composes to 1/N
    const int n = 8;
    const RelCascade acr =
        cascade_relative((2.0 * n - 1.0) / (2.0 * n), 2.0 / (2.0 * n - 1.0));
    CHECK(acr.rel_transfer == doctest::Approx(1.0 / n).epsilon(1e-15));

    const RelCascade both = cascade_relative(0.5, 0.5);
    CHECK(both.rel_transfer == doctest::Approx(0.25));
    CHECK(both.rel_loss == doctest::Approx(0.75));
    CHECK(both.rel_loss_incl_excl == doctest::Approx(both.rel_loss).epsilon(1e-15));
    CHECK(both.rel_transfer + both.rel_loss == 1.0);
}

TEST_CASE("joint transfer bound") {
    const std::vector<double> three(3, 1.0 / 8.0);
    const RelTransferBound b = ub_rel_transfer(three);
    CHECK(b.raw_sum == doctest::Approx(3.0 / 8.0));
    CHECK(b.bound == doctest::Approx(3.0 / 8.0));

    const std::vector<double> big(5, 0.4);
    const RelTransferBound clipped = ub_rel_transfer(big);
    CHECK(clipped.raw_sum == doctest::Approx(2.0));
    CHECK(clipped.bound == 1.0);

    const std::vector<double> none;
    CHECK(ub_rel_transfer(none).bound == 0.0);
}

TEST_CASE("coordinate-mean loss bound") {
    // projection keeping M of N coordinates: per-coordinate losses 0 and 1
    const std::vector<double> proj{0.0, 1.0, 1.0, 1.0};
    CHECK(ub_rel_loss(proj) == doctest::Approx(0.75));
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(ub_rel_loss(zeros) == 0.0);
    const std::vector<double> ones{1.0, 1.0, 1.0};
    CHECK(ub_rel_loss(ones) == 1.0);
    const std::vector<double> empty;
    CHECK_THROWS_AS(ub_rel_loss(empty), InvalidInputError);
}

TEST_CASE("error-probability bound on relative loss") {
    const RelFanoBound eq = fano_relative_bound(0.3, 1.0, 0.6);
    CHECK(eq.bound == doctest::Approx(0.5)); // matches the mixed-rule value exactly
    CHECK(eq.raw == doctest::Approx(0.5));

    // a fully lossy map with AC input needs unit error probability
    const RelFanoBound quant = fano_relative_bound(1.0, 1.0, 1.0);
    CHECK(quant.bound == doctest::Approx(1.0));

    CHECK(fano_relative_bound(0.0, 2.0, 1.5).bound == 0.0);
    const RelFanoBound over = fano_relative_bound(0.9, 2.0, 0.5);
    CHECK(over.raw == doctest::Approx(3.6));
    CHECK(over.bound == 1.0);
    CHECK_THROWS_AS(fano_relative_bound(0.5, 0.5, 1.0), DomainError);
}

TEST_CASE("compression converse") {
    CHECK(compression_converse(1.0, 0.0) == 1.0);
    CHECK(compression_converse(0.6, 0.1) == doctest::Approx(0.5));
    CHECK(compression_converse(0.5, 0.5) == 0.0);
    CHECK_THROWS_AS(compression_converse(1.5, 0.0), DomainError);
}

TEST_CASE("empirical ratio: quantizer, clipper, bijection") {
    const ScalarDistribution u01 = ScalarDistribution::uniform(0.0, 1.0);
    const auto quant = rel_loss_empirical(
        u01, [](double x) { return std::floor(x); }, 4, 12, 150000, 21);
    CHECK(quant.ratios.back() >= 0.95);
    CHECK(quant.estimate >= 0.95);

    const ScalarDistribution wide = ScalarDistribution::uniform(-2.0, 2.0);
    const auto clip = rel_loss_empirical(
        wide, [](double x) { return std::abs(x) > 1.0 ? x : 0.0; }, 4, 12, 400000, 22);
    CHECK(clip.estimate == doctest::Approx(0.5).epsilon(0.1)); // P([-1,1]) = 0.5, within 0.05
    CHECK(std::abs(clip.estimate - 0.5) < 0.05);

    const auto mono = rel_loss_empirical(
        u01, [](double x) { return 0.9 * x + 0.05; }, 4, 12, 150000, 23);
    CHECK(mono.estimate < 0.05);
    CHECK(mono.ratios.back() < 0.05);

    CHECK_THROWS_AS(rel_loss_empirical(u01, [](double x) { return x; }, 4, 12, 100, 1),
                    InvalidInputError);
}

TEST_CASE("positive relative loss with infinite input entropy") {
    CHECK(positive_rel_implies_infinite_abs(0.5, true) == AbsLossClass::Infinite);
    CHECK(positive_rel_implies_infinite_abs(0.0, true) == AbsLossClass::Inconclusive);
    CHECK(positive_rel_implies_infinite_abs(0.0, false) == AbsLossClass::Inconclusive);
    CHECK(positive_rel_implies_infinite_abs(0.5, false) == AbsLossClass::Inconclusive);
}
