#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpde/pade.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace mpde;

namespace {

using cd = std::complex<double>;

std::vector<cd> geometric_coeffs(cd pole, int n) {
    // 1/(1 - z/pole) = sum (1/pole)^p z^p
    std::vector<cd> c(static_cast<size_t>(n) + 1);
    cd w = 1.0;
    for (auto& v : c) {
        v = w;
        w /= pole;
    }
    return c;
}

double binom(int n, int k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

TEST_CASE("geometric series pole") {
    cd pole(1.0, 0.0);
    PadeApproximant pa = pade_approximant(geometric_coeffs(pole, 8), 4, 4);
    REQUIRE(!pa.poles.empty());
    // smallest pole sits at z = 1
    cd nearest = pa.poles[0];
    for (cd p : pa.poles)
        if (std::abs(p) < std::abs(nearest)) nearest = p;
    CHECK(std::abs(nearest - pole) < 1e-8);
    CHECK(std::abs(pade_eval(pa, cd(0.3, 0.0)) - cd(1.0 / 0.7, 0.0)) < 1e-10);

    // continuation beyond the circle of convergence
    CHECK(std::abs(pade_eval(pa, cd(3.0, 0.0)) - cd(-0.5, 0.0)) < 1e-8);
}

TEST_CASE("complex pole pair") {
    // 1/(1 + z^2): poles at +-i
    std::vector<cd> c(13, cd(0.0, 0.0));
    for (size_t p = 0; p < c.size(); p += 2) c[p] = (p % 4 == 0) ? 1.0 : -1.0;
    PadeApproximant pa = pade_approximant(c, 6, 6);
    std::vector<double> dirs = singular_directions(pa);
    REQUIRE(dirs.size() == 2);
    CHECK(dirs[0] == doctest::Approx(-M_PI / 2).epsilon(1e-8));
    CHECK(dirs[1] == doctest::Approx(M_PI / 2).epsilon(1e-8));
}

TEST_CASE("central binomials cluster on the positive axis") {
    // sum binom(2n,n) tau^n = 1/sqrt(1-4 tau): branch point at 1/4
    std::vector<cd> c;
    for (int n = 0; n <= 36; ++n) c.push_back(cd(binom(2 * n, n), 0.0));
    PadeApproximant pa = pade_approximant(c, 18, 18);
    std::vector<double> dirs = singular_directions(pa);
    REQUIRE(!dirs.empty());
    for (double d : dirs) CHECK(std::abs(d) < 0.05);

    // the innermost pole approximates the branch point
    cd nearest = pa.poles[0];
    for (cd p : pa.poles)
        if (std::abs(p) < std::abs(nearest)) nearest = p;
    CHECK(std::abs(nearest - cd(0.25, 0.0)) < 5e-3);
}

TEST_CASE("polynomial input") {
    std::vector<cd> c = {cd(1, 0), cd(2, 0), cd(3, 0), cd(0, 0), cd(0, 0)};
    PadeApproximant pa = pade_approximant(c, 4, 0);
    CHECK(pa.poles.empty());
    CHECK(std::abs(pade_eval(pa, cd(2.0, 0.0)) - cd(17.0, 0.0)) < 1e-12);
    CHECK(singular_directions(pa).empty());
}

TEST_CASE("euler series singular direction") {
    // Borel transform of sum (-1)^n n! t^n is 1/(1+tau): pole at -1
    std::vector<cd> c;
    double sign = 1.0;
    for (int n = 0; n <= 16; ++n) {
        c.push_back(cd(sign, 0.0));
        sign = -sign;
    }
    PadeApproximant pa = pade_approximant(c, 8, 8);
    std::vector<double> dirs = singular_directions(pa);
    REQUIRE(dirs.size() == 1);
    CHECK(std::abs(dirs[0]) == doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("entire function yields no stable directions") {
    // exp(z): Pade poles carry negligible residue structure far out; any
    // detected pole must sit well outside the sampled disc
    std::vector<cd> c;
    double f = 1.0;
    for (int n = 0; n <= 16; ++n) {
        c.push_back(cd(1.0 / f, 0.0));
        f *= (n + 1);
    }
    PadeApproximant pa = pade_approximant(c, 8, 8);
    for (cd p : pa.poles) CHECK(std::abs(p) > 2.0);
}

TEST_CASE("degenerate systems reduce the denominator degree") {
    // rational function of low degree given with a generous M
    std::vector<cd> c = geometric_coeffs(cd(2.0, 0.0), 12);
    PadeApproximant pa = pade_approximant(c, 6, 6);
    // approximant still reproduces the function
    CHECK(std::abs(pade_eval(pa, cd(1.0, 0.0)) - cd(2.0, 0.0)) < 1e-8);
    int close = 0;
    for (cd p : pa.poles)
        if (std::abs(p - cd(2.0, 0.0)) < 1e-6) ++close;
    CHECK(close == 1);
}
