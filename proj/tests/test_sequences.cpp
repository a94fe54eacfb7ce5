#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpde/sequences.hpp"

#include <cmath>
#include <vector>

using namespace mpde;

TEST_CASE("gevrey sequence values") {
    auto g1 = StronglyRegularSequence::gevrey(1);
    CHECK(g1.exact());
    CHECK(g1.exact_value(0) == 1);
    CHECK(g1.exact_value(5) == 120);
    CHECK(g1.exact_value(10) == 3628800);

    auto g2 = StronglyRegularSequence::gevrey(2);
    CHECK(g2.exact_value(4) == 576);  // (4!)^2

    auto gh = StronglyRegularSequence::gevrey(Rational(1, 2));
    CHECK(!gh.exact());
    CHECK(to_double(gh.value(4)) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-12));

    // log_value uses the closed form, the table the recurrence
    for (int p : {1, 7, 23, 60})
        CHECK(g1.log_value(p) == doctest::Approx(to_double(log(g1.value(p)))).epsilon(1e-12));

    CHECK_THROWS_AS(StronglyRegularSequence::gevrey(0), InvalidParameterError);
    CHECK_THROWS_AS(g1.value(-1), InvalidParameterError);
}

TEST_CASE("power and custom sequences") {
    auto g1 = StronglyRegularSequence::gevrey(1);
    auto sq = StronglyRegularSequence::power(g1, 2);
    CHECK(sq.exact());
    CHECK(sq.exact_value(3) == 36);

    auto half = StronglyRegularSequence::power(g1, Rational(1, 2));
    CHECK(!half.exact());
    CHECK(to_double(half.value(4)) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-12));

    auto c = StronglyRegularSequence::custom_exact({Rational(1), Rational(2), Rational(8)});
    CHECK(c.max_index() == 2);
    CHECK(c.exact_value(2) == 8);
    CHECK_THROWS_AS(c.value(3), TruncationError);

    CHECK_THROWS_AS(StronglyRegularSequence::custom({Real(2)}), InvalidParameterError);
    CHECK_THROWS_AS(StronglyRegularSequence::custom_exact({Rational(1), Rational(-1)}),
                    InvalidParameterError);
}

TEST_CASE("moment sequence values") {
    auto m1 = MomentSequence::gevrey_moments(1);
    CHECK(m1.exact());
    CHECK(m1.exact_value(6) == 720);

    auto m2 = MomentSequence::gevrey_moments(2);
    CHECK(m2.exact_value(3) == 720);  // (2*3)!

    // fractional order goes through the gamma function
    auto mh = MomentSequence::gevrey_moments(Rational(1, 2));
    CHECK(to_double(mh.value(2)) == doctest::Approx(1.0).epsilon(1e-12));       // Gamma(2)
    CHECK(to_double(mh.value(3)) == doctest::Approx(1.32934038817914).epsilon(1e-12));

    auto q = MomentSequence::q_factorial(Rational(1, 2));
    CHECK(q.exact());
    CHECK(q.exact_value(3) == Rational(21, 8));        // 1 * 3/2 * 7/4
    CHECK(q.exact_value(5) == Rational(9765, 1024));   // * 15/8 * 31/16
    CHECK_THROWS_AS(MomentSequence::q_factorial(Rational(3, 2)), InvalidParameterError);

    auto prod = MomentSequence::product(m1, q);
    CHECK(prod.exact());
    CHECK(prod.exact_value(3) == Rational(6) * Rational(21, 8));

    auto c = MomentSequence::custom_exact({Rational(1), Rational(3), Rational(12)});
    CHECK(c.exact_value(2) == 12);
    CHECK_THROWS_AS(c.exact_value(5), TruncationError);
}

TEST_CASE("claimed orders") {
    auto m1 = MomentSequence::gevrey_moments(1);
    REQUIRE(m1.claimed_order());
    CHECK(m1.claimed_order()->s == doctest::Approx(1.0));

    auto m32 = MomentSequence::gevrey_moments(Rational(3, 2));
    CHECK(m32.claimed_order()->s == doctest::Approx(1.5));

    auto prod = MomentSequence::product(m1, m32);
    REQUIRE(prod.claimed_order());
    CHECK(prod.claimed_order()->s == doctest::Approx(2.5));

    auto q = MomentSequence::q_factorial(Rational(1, 2));
    CHECK(!q.claimed_order());
    auto qc = q.with_claimed_order(StronglyRegularSequence::gevrey(1), 0.0);
    REQUIRE(qc.claimed_order());
    CHECK(qc.claimed_order()->s == doctest::Approx(0.0));
}

TEST_CASE("prefix audits on gevrey scales") {
    for (auto alpha : {Rational(1), Rational(2), Rational(1, 2)}) {
        auto seq = StronglyRegularSequence::gevrey(alpha);
        CheckReport lc = check_lc(seq, 120);
        CHECK(lc.holds);
        CHECK(!lc.violation_index);

        CheckReport mg = check_mg(seq, 60);
        CHECK(mg.holds);
        CHECK(mg.witness > 0.0);
        // for p! the mg constant is 2: M_{p+q} <= 2^{p+q} M_p M_q
        if (alpha == 1) CHECK(mg.witness <= 2.0 + 1e-12);

        CheckReport snq = check_snq(seq, 120);
        CHECK(snq.prefix_evidence_only);
        CHECK(snq.witness > 0.0);
    }

    // a log-concave table violates lc and reports the index
    auto bad = StronglyRegularSequence::custom_exact(
        {Rational(1), Rational(2), Rational(8), Rational(16)});
    CheckReport lc = check_lc(bad, 3);
    CHECK(!lc.holds);
    REQUIRE(lc.violation_index);
    CHECK(*lc.violation_index == 2);  // 8^2 > 2*16
}

TEST_CASE("order audit") {
    // m(p) = p! against M_p = p! claimed order 1: ratios identically 1
    auto m1 = MomentSequence::gevrey_moments(1);
    CheckReport r = check_order(m1, 40);
    CHECK(r.holds);
    CHECK(r.witness == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.witness_hi == doctest::Approx(1.0).epsilon(1e-10));

    // Gamma(1 + p/2) vs (p!)^{1/2}: ratios stay in a narrow band
    auto mh = MomentSequence::gevrey_moments(Rational(1, 2));
    CheckReport rh = check_order(mh, 200);
    CHECK(rh.holds);
    CHECK(rh.witness > 0.5);
    CHECK(rh.witness_hi < 1.5);
    CHECK(rh.prefix_evidence_only);

    auto q = MomentSequence::q_factorial(Rational(1, 2));
    CHECK_THROWS_AS(check_order(q, 40), ConfigError);
    // q-factorials are bounded, order 0 over the Gevrey scale
    CheckReport rq = check_order(q.with_claimed_order(StronglyRegularSequence::gevrey(1), 0.0), 200);
    CHECK(rq.holds);
    CHECK(rq.witness_hi < 2.0);
}

TEST_CASE("growth function M") {
    auto g1 = StronglyRegularSequence::gevrey(1);
    CHECK(growth_function_M(g1, 0.0) == 0.0);

    // reference: direct scan of log(t^p/p!)
    auto ref = [&](double t) {
        double best = 0.0;
        double lf = 0.0;
        for (int p = 1; p <= 400; ++p) {
            lf += std::log(static_cast<double>(p));
            best = std::max(best, p * std::log(t) - lf);
        }
        return best;
    };
    for (double t : {0.3, 1.0, 2.5, 10.0, 40.0})
        CHECK(growth_function_M(g1, t) == doctest::Approx(ref(t)).epsilon(1e-9));
    CHECK(growth_function_M(g1, 10.0) == doctest::Approx(7.92144).epsilon(1e-5));

    // monotone nondecreasing on a fine grid
    double prev = 0.0;
    for (int i = 1; i <= 150; ++i) {
        double t = 0.1 * i;
        double cur = growth_function_M(g1, t);
        CHECK(cur >= prev - 1e-14);
        prev = cur;
    }

    CHECK_THROWS_AS(growth_function_M(g1, -1.0), InvalidParameterError);
}

TEST_CASE("omega estimate") {
    for (auto alpha : {Rational(1), Rational(2), Rational(1, 2)}) {
        auto seq = StronglyRegularSequence::gevrey(alpha);
        double est = omega_estimate(seq, 400);
        CHECK(est == doctest::Approx(to_double(alpha)).epsilon(2e-3));
    }
    CHECK_THROWS_AS(omega_estimate(StronglyRegularSequence::gevrey(1), 5),
                    InvalidParameterError);
}
