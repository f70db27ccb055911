#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "infoloss/errors.hpp"
#include "infoloss/gallery.hpp"
#include "infoloss/loss.hpp"
#include "infoloss/reconstruct.hpp"

#include "test_support.hpp"

#include <cmath>

using namespace infoloss;
using infoloss::testing::make_random_system;

TEST_CASE("map reconstructor picks the heaviest preimage, ties to lower index") {
    const ScalarDistribution gauss = ScalarDistribution::gaussian(0.0, 1.0);
    CHECK(map_reconstruct(make_square_law_pbf(), gauss, 4.0) ==
          doctest::Approx(-2.0).epsilon(1e-12));

    // middle branch below the extremum level, outer branch above
    const Pbf cubic = make_cubic_pbf();
    const ScalarDistribution d10 = cubic_input(10.0);
    const double y_ext = 2000.0 / (3.0 * std::sqrt(3.0));
    for (double y : {0.0, 100.0, -250.0, 0.9 * y_ext}) {
        const double x = map_reconstruct(cubic, d10, y);
        CHECK(std::abs(x) < 10.0 / std::sqrt(3.0) + 1e-6);
    }
    for (double y : {1.1 * y_ext, 500.0}) {
        const double x = map_reconstruct(cubic, d10, y);
        CHECK(x > 20.0 / std::sqrt(3.0) - 1e-6);
    }
    CHECK_THROWS_AS(map_reconstruct(make_square_law_pbf(), gauss, -1.0), DomainError);
}

TEST_CASE("staircase: every output reconstructs into the first branch") {
    const Pbf st = make_staircase_pbf(40);
    const ScalarDistribution d = staircase_input(40);
    for (double y : {0.05, 0.31, 0.72, 0.99}) {
        const double x = map_reconstruct(st, d, y);
        CHECK(x == doctest::Approx(0.5 * y + 0.5).epsilon(1e-12)); // branch n = 1 inverse
    }
}

TEST_CASE("map error probability") {
    const ScalarDistribution gauss = ScalarDistribution::gaussian(0.0, 1.0);
    CHECK(map_error_probability(make_square_law_pbf(), gauss) ==
          doctest::Approx(0.5).epsilon(1e-6));
    CHECK(map_error_probability(make_identity_pbf(), gauss) ==
          doctest::Approx(0.0).epsilon(1e-8));

    for (double sigma : {2.0, 10.0, 24.0})
        CHECK(map_error_probability(make_cubic_pbf(), cubic_input(sigma)) ==
              doctest::Approx(cubic_p_e_map(sigma)).epsilon(1e-5));

    // the truncated dyadic family: constant posterior, winner is piece one
    CHECK(map_error_probability(make_staircase_pbf(40), staircase_input(40)) ==
          doctest::Approx(1.0 / std::log2(3.0)).epsilon(1e-9));
}

TEST_CASE("fano-type bound evaluations") {
    CHECK(fano_type_bound(0.0, 0.3, 1.7) == 0.0);
    // two equiprobable preimages everywhere: min{1,1} + 0.5 + 0.5 log2(1)
    CHECK(fano_type_bound(0.5, 0.0, 2.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(fano_type_bound(0.5, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(fano_type_bound(1.5, 0.0, 2.0), DomainError);

    const double sigma = 10.0;
    const double loss = loss_via_partition(make_cubic_pbf(), cubic_input(sigma)).loss_bits;
    const double bound =
        fano_type_bound(cubic_p_e_map(sigma), cubic_p_b(sigma), 3.0 - 2.0 * cubic_p_b(sigma));
    CHECK(bound >= loss - 1e-6);
}

TEST_CASE("classic fano bound") {
    CHECK(classic_fano_bound(0.5, 2.0) == doctest::Approx(1.0).epsilon(1e-12)); // tight here
    CHECK(classic_fano_bound(0.0, 5.0) == 0.0);
    CHECK_THROWS_AS(classic_fano_bound(0.5, 1.5), DomainError);

    // neither bound family dominates the other across the sigma range
    bool classic_wins = false, fano_type_wins = false;
    for (double sigma = 2.0; sigma <= 30.0; sigma += 2.0) {
        const double pe = cubic_p_e_map(sigma);
        const double pb = cubic_p_b(sigma);
        const double classic = classic_fano_bound(pe, 3.0);
        const double ft = fano_type_bound(pe, pb, 3.0 - 2.0 * pb);
        if (classic < ft - 1e-12) classic_wins = true;
        if (ft < classic - 1e-12) fano_type_wins = true;
    }
    CHECK(classic_wins);
    CHECK(fano_type_wins);
}

TEST_CASE("feder-merhav piecewise linear lower bound") {
    CHECK(feder_merhav_phi(0.0) == 0.0);
    CHECK(feder_merhav_phi(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(feder_merhav_phi(2.0 / 3.0) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(feder_merhav_phi(1.0), DomainError);
    CHECK_THROWS_AS(feder_merhav_phi(-0.1), DomainError);

    // continuous and nondecreasing
    double prev = -1.0;
    for (int i = 0; i <= 900; ++i) {
        const double x = i / 1000.0;
        const double v = feder_merhav_phi(x);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    for (int seg = 1; seg <= 6; ++seg) {
        const double edge = static_cast<double>(seg) / (seg + 1);
        CHECK(feder_merhav_phi(edge - 1e-9) ==
              doctest::Approx(feder_merhav_phi(edge + 1e-9)).epsilon(1e-6));
    }
}

TEST_CASE("suboptimal reconstructor") {
    const ScalarDistribution gauss = ScalarDistribution::gaussian(0.0, 1.0);

    const ReconResult id = suboptimal_reconstructor(make_identity_pbf(), gauss);
    CHECK(id.error_prob == 0.0);
    CHECK(id.suboptimal_bound == doctest::Approx(0.0));

    const ReconResult sq = suboptimal_reconstructor(make_square_law_pbf(), gauss);
    CHECK(sq.error_prob == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sq.suboptimal_bound == doctest::Approx(1.0).epsilon(1e-12)); // 1 - 0 + 0.5 log2(1)

    const ReconResult st = suboptimal_reconstructor(make_staircase_pbf(40), staircase_input(40));
    CHECK(st.error_prob == doctest::Approx(1.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(std::isinf(st.suboptimal_bound)); // unbounded preimage cardinality

    const ReconResult cu = suboptimal_reconstructor(make_cubic_pbf(), cubic_input(10.0));
    const double pe_map = cubic_p_e_map(10.0);
    CHECK(cu.error_prob >= pe_map - 1e-9);
}

TEST_CASE("empirical error probability") {
    const ScalarDistribution gauss = ScalarDistribution::gaussian(0.0, 1.0);
    const Pbf id = make_identity_pbf();
    const auto id_rec = map_reconstruction_analysis(id, gauss);
    CHECK(empirical_error_probability(id, gauss, id_rec.reconstruct, 10000, 3).error_prob == 0.0);

    const Pbf cubic = make_cubic_pbf();
    const ScalarDistribution d10 = cubic_input(10.0);
    const auto map_rec = map_reconstruction_analysis(cubic, d10);
    const EmpiricalError emp = empirical_error_probability(cubic, d10, map_rec.reconstruct,
                                                           100000, 9);
    CHECK(std::abs(emp.error_prob - cubic_p_e_map(10.0)) <= 3.0 * emp.stderr_);

    const Pbf sq = make_square_law_pbf();
    const auto sub = suboptimal_reconstructor(sq, gauss);
    const EmpiricalError sub_emp =
        empirical_error_probability(sq, gauss, sub.reconstruct, 50000, 4);
    CHECK(std::abs(sub_emp.error_prob - 0.5) <= 3.0 * sub_emp.stderr_);
}

TEST_CASE("per-output error vanishes on the bijective image") {
    const Pbf cubic = make_cubic_pbf();
    const ScalarDistribution d10 = cubic_input(10.0);
    const auto rec = map_reconstruction_analysis(cubic, d10);
    CHECK(rec.per_y_error(500.0) == 0.0);
    CHECK(rec.per_y_error(0.0) > 0.0);
}

TEST_CASE("property: sandwich and dominance on random systems") {
    Rng rng(31337);
    int nontrivial = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const auto sys = make_random_system(rng);
        const LossReport rep = loss_via_partition(sys.pbf, sys.input);
        const ReconResult rec = map_reconstruction_analysis(sys.pbf, sys.input);
        CAPTURE(trial);
        const double tol = rep.numeric_error + 1e-6;
        CHECK(rec.feder_merhav_lower <= rep.loss_bits + tol);
        CHECK(rep.loss_bits <= std::min(rec.fano_type_bound, rec.classic_fano_bound) + tol);
        CHECK(rep.loss_bits <= rec.extra.binent_ess_sup + tol);
        CHECK(rep.loss_bits <= rec.extra.binent_card + tol);
        CHECK(rep.loss_bits <= rec.extra.fano_type_e_card + tol);

        // MAP empirical error never beats another reconstructor
        const ReconResult sub = suboptimal_reconstructor(sys.pbf, sys.input);
        const EmpiricalError map_emp =
            empirical_error_probability(sys.pbf, sys.input, rec.reconstruct, 20000, trial + 1);
        const EmpiricalError sub_emp =
            empirical_error_probability(sys.pbf, sys.input, sub.reconstruct, 20000, trial + 1);
        CHECK(map_emp.error_prob <=
              sub_emp.error_prob + 3.0 * (map_emp.stderr_ + sub_emp.stderr_) + 1e-9);
        if (rep.loss_bits > 0.05) ++nontrivial;
    }
    CHECK(nontrivial > 3); // the generator must exercise lossy systems
}
