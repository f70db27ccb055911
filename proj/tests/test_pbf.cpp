#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "infoloss/entropy.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/gallery.hpp"
#include "infoloss/pbf.hpp"
#include "infoloss/quadrature.hpp"
#include "infoloss/rng.hpp"

#include <cmath>

using namespace infoloss;

namespace {

// chi^2 with one degree of freedom
double chi2_1_pdf(double y) {
    return std::exp(-0.5 * y) / std::sqrt(2.0 * M_PI * y);
}

} // namespace

TEST_CASE("evaluate picks the owning branch") {
    CHECK(evaluate(make_square_law_pbf(), -2.0) == doctest::Approx(4.0));
    CHECK(evaluate(make_cubic_pbf(), 0.0) == doctest::Approx(0.0));
    CHECK(evaluate(make_staircase_pbf(10), 0.75) == doctest::Approx(0.5));
    CHECK_THROWS_AS(evaluate(make_staircase_pbf(10), -1.0), DomainError);
}

TEST_CASE("boundary points resolve to the lower branch index") {
    const Pbf f = make_square_law_pbf();
    CHECK(branch_of(f, 0.0) == 0);
    const PartitionIndicator w{&f};
    CHECK(w(0.0) == 0);
    CHECK(w(1.0) == 1);
    CHECK(w(-1.0) == 0);
}

TEST_CASE("preimage enumerates one solution per covering branch") {
    const Pbf sq = make_square_law_pbf();
    const auto pts = preimage(sq, 4.0);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].branch == 0);
    CHECK(pts[0].x == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(pts[1].branch == 1);
    CHECK(pts[1].x == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(preimage(sq, -1.0).empty());

    const auto roots = preimage(make_cubic_pbf(), 0.0);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].x == doctest::Approx(-10.0).epsilon(1e-9));
    CHECK(roots[1].x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(roots[2].x == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("numeric inversion agrees with analytic inverses") {
    // same branches but with the analytic inverse dropped
    Pbf f = make_cubic_pbf();
    for (Branch& b : f.branches) b.inverse_fn.reset();
    const Pbf g = make_cubic_pbf();
    for (double y : {-350.0, -42.0, 0.0, 17.5, 120.0, 384.0}) {
        const auto numeric = preimage(f, y);
        const auto analytic = preimage(g, y);
        REQUIRE(numeric.size() == analytic.size());
        for (std::size_t i = 0; i < numeric.size(); ++i)
            CHECK(numeric[i].x == doctest::Approx(analytic[i].x).epsilon(1e-9));
    }
}

TEST_CASE("output pdf is the weighted preimage sum") {
    const ScalarDistribution gauss = ScalarDistribution::gaussian(0.0, 1.0);

    // identity keeps the density
    CHECK(output_pdf(make_identity_pbf(), gauss, 0.7) ==
          doctest::Approx(gauss.pdf(0.7)).epsilon(1e-12));

    // square law on a standard Gaussian gives the one-degree chi-square law
    const Pbf sq = make_square_law_pbf();
    for (double y : {0.1, 0.5, 1.0, 2.5, 7.0})
        CHECK(output_pdf(sq, gauss, y) == doctest::Approx(chi2_1_pdf(y)).epsilon(1e-10));

    // the dyadic ramp family flattens its input to the uniform law
    const Pbf st = make_staircase_pbf(40);
    const ScalarDistribution sin = staircase_input(40);
    for (double y : {0.1, 0.37, 0.52, 0.9}) {
        const double tail = 1.0 / std::log2(42.0);
        CHECK(output_pdf(st, sin, y) == doctest::Approx(1.0 - tail).epsilon(1e-9));
    }
}

TEST_CASE("output pdf integrates to one") {
    const ScalarDistribution gauss = ScalarDistribution::gaussian(0.0, 1.0);
    for (const Pbf& f : {make_square_law_pbf(), make_rectifier_pbf(), make_cubic_pbf()}) {
        const ScalarDistribution d = (f.branch_count() == 3)
                                         ? ScalarDistribution::gaussian(0.0, 10.0)
                                         : gauss;
        const ScalarDistribution y = pushforward(d, f);
        const Interval s = y.truncated_support();
        const IntegralResult r =
            integrate_with_breakpoints([&](double t) { return y.pdf(t); }, s.lo, s.hi,
                                       y.pdf_breakpoints, 1e-7, 1e-7);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("pushforward cdf matches the closed form for the square law") {
    const ScalarDistribution y =
        pushforward(ScalarDistribution::gaussian(0.0, 1.0), make_square_law_pbf());
    for (double t : {0.25, 1.0, 4.0})
        CHECK(y.cdf(t) == doctest::Approx(1.0 - 2.0 * q_function(std::sqrt(t))).epsilon(1e-10));
    CHECK(y.quantile(y.cdf(1.7)) == doctest::Approx(1.7).epsilon(1e-8));
}

TEST_CASE("branch posterior") {
    const ScalarDistribution gauss = ScalarDistribution::gaussian(0.0, 1.0);
    const auto p = branch_posterior(make_square_law_pbf(), gauss, 1.0);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));

    const auto one = branch_posterior(make_identity_pbf(), gauss, 0.3);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == doctest::Approx(1.0));

    // frozen reference: weights exp(-x^2/200)/|3x^2-100| at x = -10, 0, 10
    const auto cubic = branch_posterior(make_cubic_pbf(), cubic_input(10.0), 0.0);
    REQUIRE(cubic.size() == 3);
    CHECK(cubic[1] == doctest::Approx(0.6224593312018546).epsilon(1e-12));
    CHECK(cubic[0] == doctest::Approx(0.1887703343990727).epsilon(1e-12));
    CHECK(cubic[2] == doctest::Approx(0.1887703343990727).epsilon(1e-12));

    CHECK_THROWS_AS(branch_posterior(make_square_law_pbf(), gauss, -2.0), DomainError);
}

TEST_CASE("posterior concentrates where a single image covers y") {
    const ScalarDistribution d = ScalarDistribution::gaussian(0.0, 10.0);
    const auto p = branch_posterior(make_cubic_pbf(), d, 500.0); // above the extremum level
    CHECK(p[2] == doctest::Approx(1.0));
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 0.0);
}

TEST_CASE("compose refines branches and evaluates the composition") {
    const Pbf sq = make_square_law_pbf();
    const Pbf id = make_identity_pbf();

    const Pbf same = compose(id, sq);
    for (double x : {-2.0, -0.5, 0.3, 1.7})
        CHECK(evaluate(same, x) == doctest::Approx(evaluate(sq, x)).epsilon(1e-12));

    const Pbf quartic = compose(sq, sq);
    CHECK(quartic.branch_count() == 2);
    for (double x : {-1.5, -0.2, 0.4, 2.0})
        CHECK(evaluate(quartic, x) == doctest::Approx(std::pow(x, 4)).epsilon(1e-12));

    const Pbf cubic_sq = compose(make_cubic_pbf(), sq);
    for (int i = 0; i <= 100; ++i) {
        const double x = -25.0 + 0.5 * i;
        const double expect = std::pow(x * x * x - 100.0 * x, 2);
        CHECK(evaluate(cubic_sq, x) ==
              doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("compose is associative pointwise") {
    const Pbf a = make_rectifier_pbf();
    const Pbf b = make_square_law_pbf();
    Branch affine = make_branch({0.0, kInf}, [](double x) { return 0.5 * x + 1.0; },
                                [](double) { return 0.5; },
                                [](double y) { return 2.0 * (y - 1.0); }, Interval{1.0, kInf});
    const Pbf c = make_pbf({affine});
    const Pbf left = compose(compose(a, b), c);
    const Pbf right = compose(a, compose(b, c));
    for (double x : {-3.0, -1.0, -0.2, 0.0, 0.7, 2.5})
        CHECK(evaluate(left, x) == doctest::Approx(evaluate(right, x)).epsilon(1e-9));
}

TEST_CASE("compose rejects escaping images") {
    Branch unit = make_branch({0.0, 1.0}, [](double x) { return x; },
                              [](double) { return 1.0; }, [](double y) { return y; });
    const Pbf narrow = make_pbf({unit});
    CHECK_THROWS_AS(compose(make_square_law_pbf(), narrow), DomainError);
}

TEST_CASE("bijective part") {
    const ScalarDistribution gauss = ScalarDistribution::gaussian(0.0, 1.0);
    CHECK(bijective_part(make_square_law_pbf(), gauss).mass == doctest::Approx(0.0));
    CHECK(bijective_part(make_identity_pbf(), gauss).mass == doctest::Approx(1.0));

    for (double sigma : {2.0, 10.0, 25.0}) {
        const auto bp = bijective_part(make_cubic_pbf(), cubic_input(sigma));
        CHECK(bp.mass == doctest::Approx(cubic_p_b(sigma)).epsilon(1e-10));
        REQUIRE(bp.x_intervals.size() == 2);
        CHECK(bp.x_intervals[0].hi == doctest::Approx(-20.0 / std::sqrt(3.0)).epsilon(1e-9));
        CHECK(bp.x_intervals[1].lo == doctest::Approx(20.0 / std::sqrt(3.0)).epsilon(1e-9));
    }
}

TEST_CASE("preimage cardinality matches the image-overlap combinatorics") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        // random interleaved family: K branches mapping onto overlapping windows
        const int k = 2 + static_cast<int>(rng.uniform01() * 3);
        std::vector<Branch> branches;
        for (int j = 0; j < k; ++j) {
            const double lo = j, hi = j + 1.0;
            const double a = rng.uniform(0.5, 2.0);
            const double c = rng.uniform(-0.5, 0.5);
            branches.push_back(make_branch(
                {lo, hi}, [a, c, lo](double x) { return a * (x - lo) + c; },
                [a](double) { return a; }, [a, c, lo](double y) { return (y - c) / a + lo; }));
        }
        const Pbf f = make_pbf(std::move(branches));
        int max_card = 0;
        for (const ImageCell& cell : decompose_image(f))
            max_card = std::max(max_card, static_cast<int>(cell.covering.size()));
        // probe pointwise
        int probed = 0;
        for (int i = 0; i < 500; ++i) {
            const double y = rng.uniform(f.image_hull().lo, f.image_hull().hi);
            probed = std::max(probed, preimage_cardinality(f, y));
            CHECK(preimage_cardinality(f, y) <= k);
        }
        CHECK(probed == max_card);
    }
}

TEST_CASE("truncated family bookkeeping") {
    const Pbf st = make_staircase_pbf(40);
    CHECK(st.truncated_family);
    CHECK(st.unbounded_branch_count);
    CHECK(st.tail_mass == doctest::Approx(1.0 / std::log2(42.0)).epsilon(1e-12));
    // branch masses reproduce the piece-mass formula exactly
    const ScalarDistribution d = staircase_input(40);
    for (int n = 1; n <= 40; n += 7)
        CHECK(branch_mass(st, d, n - 1) ==
              doctest::Approx(staircase_piece_mass(n)).epsilon(1e-12));
}
