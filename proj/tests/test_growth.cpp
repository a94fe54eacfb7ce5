#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpde/growth.hpp"
#include "mpde/solver.hpp"

#include <cmath>
#include <vector>

using namespace mpde;

namespace {

std::vector<Real> model_norms(double C, double H, double sigma, int N) {
    StronglyRegularSequence base = StronglyRegularSequence::gevrey(1);
    std::vector<Real> s;
    s.reserve(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        s.push_back(Real(C) * pow(Real(H), n) * exp(Real(sigma) * Real(base.log_value(n))));
    return s;
}

}  // namespace

TEST_CASE("predicted order") {
    CHECK(predicted_order(1, 2, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(predicted_order(2, 3, 2.0, 1.0) == doctest::Approx(0.0));   // 3/2 - 2 < 0
    CHECK(predicted_order(1, 2, 1.0, 2.0) == doctest::Approx(3.0));
    CHECK(predicted_order(2, 3, 0.0, 1.0) == doctest::Approx(1.5));
    CHECK_THROWS_AS(predicted_order(2, 2, 1.0, 1.0), InvalidParameterError);
    CHECK_THROWS_AS(predicted_order(1, 2, std::nan(""), 1.0), ConfigError);
}

TEST_CASE("fit recovers synthetic parameters") {
    StronglyRegularSequence base = StronglyRegularSequence::gevrey(1);
    struct Case { double C, H, sigma; };
    for (Case c : {Case{2.0, 3.0, 0.5}, Case{1.0, 0.5, 1.0}, Case{0.3, 2.0, 0.0},
                   Case{5.0, 1.0, 2.0}}) {
        GrowthReport r = fit_moment_order(model_norms(c.C, c.H, c.sigma, 60), base);
        CHECK(!r.degenerate);
        CHECK(r.fitted_C == doctest::Approx(c.C).epsilon(1e-6));
        CHECK(r.fitted_H == doctest::Approx(c.H).epsilon(1e-6));
        CHECK(r.fitted_sigma == doctest::Approx(c.sigma).epsilon(1e-6));
        CHECK(r.fit_residual < 1e-8);
    }
}

TEST_CASE("fit windows and degeneracy") {
    StronglyRegularSequence base = StronglyRegularSequence::gevrey(1);
    std::vector<Real> norms = model_norms(1.0, 2.0, 1.0, 40);
    GrowthReport r = fit_moment_order(norms, base, std::make_pair(20, 40));
    CHECK(r.window_lo == 20);
    CHECK(r.window_hi == 40);
    CHECK(r.fitted_sigma == doctest::Approx(1.0).epsilon(1e-6));

    // zero rows are skipped
    norms[17] = 0;
    norms[23] = 0;
    r = fit_moment_order(norms, base);
    CHECK(r.fitted_sigma == doctest::Approx(1.0).epsilon(1e-6));

    std::vector<Real> zeros(30, Real(0));
    GrowthReport d = fit_moment_order(zeros, base);
    CHECK(d.degenerate);
    CHECK(d.fitted_sigma == 0.0);

    CHECK_THROWS_AS(fit_moment_order(std::vector<Real>(5, Real(1)), base), ConfigError);
}

TEST_CASE("radius estimates") {
    // s_n = 2^n: geometric, radius 1/2
    std::vector<Real> geo;
    for (int n = 0; n <= 40; ++n) geo.push_back(pow(Real(2), n));
    CHECK(radius_estimate(geo) == doctest::Approx(0.5).epsilon(1e-6));

    // s_n = 1/n!: entire; the tail slope keeps steepening, so the finite-N
    // estimate is large and grows with N
    std::vector<Real> ent;
    Real f = 1;
    for (int n = 0; n <= 40; ++n) {
        ent.push_back(Real(1) / f);
        f *= (n + 1);
    }
    CHECK(radius_estimate(ent) > 10.0);

    // decay fast enough to hit the sentinel
    std::vector<Real> fast;
    for (int n = 0; n <= 40; ++n) fast.push_back(exp(Real(-25) * n));
    CHECK(std::isinf(radius_estimate(fast)));

    // s_n = n!: divergent, radius 0
    CHECK(radius_estimate(model_norms(1.0, 1.0, 1.0, 40)) == 0.0);

    CHECK_THROWS_AS(radius_estimate(std::vector<Real>(6, Real(1))), ConfigError);
}

TEST_CASE("heat family has order one") {
    CauchyProblem<Rational> prob;
    prob.k = 1;
    prob.p = 2;
    prob.m1 = MomentSequence::gevrey_moments(1);
    prob.m2 = MomentSequence::gevrey_moments(1);
    const int nt = 30;
    const int nz = 2 * nt + 20;  // headroom keeps the top-row norms unbiased
    prob.a = Series1<Rational>::constant(Rational(1), nz);
    prob.phi = {Series1<Rational>(std::vector<Rational>(static_cast<size_t>(nz) + 1, Rational(1)))};
    prob.f_hat = Series2<Rational>::zero(0, nz);

    FormalSolution<Rational> sol = solve_formal(prob, nt, nz);
    std::vector<Real> norms = coefficient_norms(sol.plain(), Real(1) / 10);
    GrowthReport r = fit_moment_order(norms, StronglyRegularSequence::gevrey(1));
    r.predicted_sigma = predicted_order(prob.k, prob.p, prob.s1, prob.s2);
    CHECK(r.predicted_sigma == doctest::Approx(1.0));
    CHECK(r.fitted_sigma > 0.9);
    CHECK(r.fitted_sigma < 1.1);
    CHECK(radius_estimate(norms) == 0.0);
}

TEST_CASE("gevrey base rescaling shifts sigma consistently") {
    // fitting against (p!)^2 halves the fitted order of (n!)^1 data
    std::vector<Real> norms = model_norms(1.0, 2.0, 1.0, 50);
    GrowthReport r2 = fit_moment_order(norms, StronglyRegularSequence::gevrey(2));
    CHECK(r2.fitted_sigma == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("order grows with p on the heat family") {
    // k=1, phi = 1/(1-z), a=1: sigma tracks p-1
    double prev = 0.0;
    for (int p = 2; p <= 4; ++p) {
        CauchyProblem<Rational> prob;
        prob.k = 1;
        prob.p = p;
        prob.m1 = MomentSequence::gevrey_moments(1);
        prob.m2 = MomentSequence::gevrey_moments(1);
        const int nt = 24;
        const int nz = p * nt + 4 * p + 12;
        prob.a = Series1<Rational>::constant(Rational(1), nz);
        prob.phi = {
            Series1<Rational>(std::vector<Rational>(static_cast<size_t>(nz) + 1, Rational(1)))};
        prob.f_hat = Series2<Rational>::zero(0, nz);
        FormalSolution<Rational> sol = solve_formal(prob, nt, nz);
        std::vector<Real> norms = coefficient_norms(sol.plain(), Real(1) / 10);
        GrowthReport r = fit_moment_order(norms, StronglyRegularSequence::gevrey(1));
        CHECK(r.fitted_sigma == doctest::Approx(p - 1.0).epsilon(0.12));
        CHECK(r.fitted_sigma > prev);
        prev = r.fitted_sigma;
    }
}
