#include "mpde/kernels.hpp"

#include "mpde/errors.hpp"
#include "mpde/quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace mpde {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw InvalidParameterError("kernel order alpha must lie in (0, 2)");
}

// lgamma(1 + alpha p) tables, cached per alpha.
const std::vector<double>& lgamma_table_d(double alpha, int need) {
    static std::mutex mtx;
    static std::map<double, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& tab = cache[alpha];
    while (static_cast<int>(tab.size()) <= need)
        tab.push_back(std::lgamma(1.0 + alpha * static_cast<double>(tab.size())));
    return tab;
}

const std::vector<Real>& lgamma_table_mp(double alpha, int need) {
    static std::mutex mtx;
    static std::map<double, std::vector<Real>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& tab = cache[alpha];
    while (static_cast<int>(tab.size()) <= need)
        tab.push_back(boost::math::lgamma(Real(1) + Real(alpha) * static_cast<int>(tab.size())));
    return tab;
}

int series_term_cap(double alpha, double x) {
    return std::max(300, static_cast<int>(8.0 * x / alpha) + 50);
}

// Taylor sum with the term recurrence t_{p+1} = t_p z Gamma(1+ap)/Gamma(1+a(p+1));
// the ratio keeps every intermediate near the peak magnitude e^x.
template <class C, class Mag>
C ml_series_generic(double alpha, const C& z, double x, const Mag& tail_eps,
                    const std::function<Mag(int)>& lgamma_ratio) {
    C term(1);
    C sum(1);
    Mag peak(1);
    int cap = series_term_cap(alpha, std::max(x, 1.0));
    for (int p = 0; p < cap; ++p) {
        term *= z;
        term *= lgamma_ratio(p);
        sum += term;
        Mag mag = abs(term);
        if (peak < mag) peak = mag;
        if (mag < tail_eps * peak && p > 4) return sum;
    }
    throw NumericalError("Mittag-Leffler series did not converge within the term budget");
}

std::complex<double> ml_series_double(double alpha, std::complex<double> z, double x) {
    const auto& tab = lgamma_table_d(alpha, series_term_cap(alpha, std::max(x, 1.0)) + 1);
    std::function<double(int)> ratio = [&](int p) {
        return std::exp(tab[static_cast<size_t>(p)] - tab[static_cast<size_t>(p) + 1]);
    };
    return ml_series_generic<std::complex<double>, double>(alpha, z, x, 1e-20, ratio);
}

std::complex<long double> ml_series_ld(double alpha, std::complex<long double> z, double x) {
    static std::mutex mtx;
    static std::map<double, std::vector<long double>> cache;
    int need = series_term_cap(alpha, std::max(x, 1.0)) + 1;
    std::vector<long double>* tab;
    {
        std::lock_guard<std::mutex> lock(mtx);
        tab = &cache[alpha];
        while (static_cast<int>(tab->size()) <= need)
            tab->push_back(lgammal(1.0L + static_cast<long double>(alpha) *
                                              static_cast<long double>(tab->size())));
    }
    std::function<long double(int)> ratio = [&](int p) {
        return expl((*tab)[static_cast<size_t>(p)] - (*tab)[static_cast<size_t>(p) + 1]);
    };
    return ml_series_generic<std::complex<long double>, long double>(alpha, z, x, 1e-24L, ratio);
}

CReal ml_series_mp(double alpha, const CReal& z, double x) {
    const auto& tab = lgamma_table_mp(alpha, series_term_cap(alpha, std::max(x, 1.0)) + 1);
    std::function<Real(int)> ratio = [&](int p) {
        return exp(tab[static_cast<size_t>(p)] - tab[static_cast<size_t>(p) + 1]);
    };
    return ml_series_generic<CReal, Real>(alpha, z, x, Real(1e-60), ratio);
}

// Exponential branches on the principal sheet of s^alpha = z.
std::vector<double> branch_args(double alpha, double theta) {
    std::vector<double> phis;
    for (int j = -2; j <= 2; ++j) {
        double phi = (theta + 2.0 * M_PI * j) / alpha;
        if (phi > -M_PI - 1e-14 && phi <= M_PI + 1e-14) phis.push_back(phi);
    }
    return phis;
}

}  // namespace

std::complex<double> kernel_e(double alpha, std::complex<double> z) {
    require_alpha(alpha);
    if (z == 0.0) throw DomainError("kernel e_alpha is undefined at z = 0");
    if (std::abs(std::arg(z)) >= alpha * M_PI - 1e-15)
        throw DomainError("kernel e_alpha evaluated outside the sector |arg z| < alpha pi");
    std::complex<double> w = std::pow(z, 1.0 / alpha);
    return w * std::exp(-w) / alpha;
}

std::complex<double> kernel_E_series(double alpha, std::complex<double> z) {
    require_alpha(alpha);
    if (z == 0.0) return 1.0;
    double x = std::pow(std::abs(z), 1.0 / alpha);
    if (x > 120.0)
        throw NumericalError("Mittag-Leffler series path is limited to |z|^{1/alpha} <= 120");
    CReal zz(Real(z.real()), Real(z.imag()));
    return to_complex(ml_series_mp(alpha, zz, x));
}

std::complex<double> kernel_E_asymptotic(double alpha, std::complex<double> z) {
    require_alpha(alpha);
    if (z == 0.0) throw DomainError("asymptotic Mittag-Leffler expansion needs z != 0");
    double x = std::pow(std::abs(z), 1.0 / alpha);
    double theta = std::arg(z);

    std::complex<double> result = 0.0;
    for (double phi : branch_args(alpha, theta)) {
        long double re = static_cast<long double>(x) * std::cos(phi);
        long double mag = expl(re) / static_cast<long double>(alpha);
        double ph = x * std::sin(phi);
        result += std::complex<double>(static_cast<double>(mag * cosl(ph)),
                                       static_cast<double>(mag * sinl(ph)));
    }

    // Algebraic tail - sum_k z^{-k}/Gamma(1 - alpha k) with the reflection
    // 1/Gamma(1 - w) = sin(pi w) Gamma(w)/pi, optimally truncated.
    double log_az = std::log(std::abs(z));
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 400; ++k) {
        double w = alpha * k;
        double log_mag = std::lgamma(w) - k * log_az - std::log(M_PI);
        double mag = std::exp(log_mag);
        if (mag > prev_mag) break;  // past the optimal truncation point
        prev_mag = mag;
        double s = std::sin(M_PI * w);
        if (s != 0.0) {
            double ph = -k * theta;
            result -= (mag * s) * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        if (mag < 1e-18 * std::max(1.0, std::abs(result))) break;
    }
    return result;
}

std::complex<double> kernel_E_contour(double alpha, std::complex<double> z) {
    require_alpha(alpha);
    double x = (z == 0.0) ? 0.0 : std::pow(std::abs(z), 1.0 / alpha);
    double theta = std::arg(z);

    std::vector<std::complex<double>> poles;
    if (z != 0.0)
        for (double phi : branch_args(alpha, theta))
            poles.push_back(std::polar(x, phi));

    // A tight contour keeps e^s of modest size (a wide one would bury the
    // answer under cancellation of e^mu-sized terms); poles it leaves to its
    // right contribute explicit residues e^{s_j}/alpha.
    double mu = 2.0;

    auto contour_re = [&](double im) { return mu - im * im / (4.0 * mu); };
    auto clearance = [&]() {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : poles)
            best = std::min(best, std::abs(s.real() - contour_re(s.imag())));
        return best;
    };
    for (int tries = 0; tries < 12 && clearance() < 0.4; ++tries) mu += 0.37;

    std::complex<double> result = 0.0;
    for (const auto& s : poles)
        if (s.real() > contour_re(s.imag())) result += std::exp(s) / alpha;

    double u_max = std::sqrt(1.0 + 46.0 / mu);
    const int n_points = 1600;
    double h = 2.0 * u_max / n_points;
    std::complex<double> acc = 0.0;
    const std::complex<double> i_unit(0.0, 1.0);
    for (int j = 0; j < n_points; ++j) {
        double u = -u_max + (j + 0.5) * h;
        std::complex<double> one_iu = 1.0 + i_unit * u;
        std::complex<double> s = mu * one_iu * one_iu;
        std::complex<double> ds = 2.0 * i_unit * mu * one_iu;
        std::complex<double> sa = std::pow(s, alpha);
        acc += std::exp(s) * std::pow(s, alpha - 1.0) / (sa - z) * ds;
    }
    result += acc * h / (2.0 * M_PI * i_unit);
    return result;
}

std::complex<double> kernel_E(double alpha, std::complex<double> z) {
    require_alpha(alpha);
    if (z == 0.0) return 1.0;
    double x = std::pow(std::abs(z), 1.0 / alpha);
    if (x <= 14.0) return ml_series_double(alpha, z, x);
    // Long-double Taylor summation tolerates the e^x-sized cancellation up to
    // x ~ 22; past that the optimally truncated asymptotic expansion is both
    // cheaper and more accurate (its tail error is ~ sqrt(x) e^{-x}).
    if (x <= 22.0) {
        std::complex<long double> zz(z.real(), z.imag());
        std::complex<long double> r = ml_series_ld(alpha, zz, x);
        return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
    }
    return kernel_E_asymptotic(alpha, z);
}

MomentCheckResult moment_check(double alpha, int p) {
    require_alpha(alpha);
    if (p < 0) throw InvalidParameterError("moment index must be nonnegative");
    // Substituting t = v^alpha turns int t^{p-1} e_alpha(t) dt into
    // int v^{alpha p} e^{-v} dv; the extra v = w^2 step clears the
    // endpoint singularity when alpha p is a half-integer.
    double ap = alpha * p;
    Integrand f = [ap](double w) {
        double val = (w <= 0.0) ? 0.0 : 2.0 * std::exp((2.0 * ap + 1.0) * std::log(w) - w * w);
        return std::complex<double>(val, 0.0);
    };
    QuadratureOptions opts;
    opts.max_refine = 9;
    QuadratureResult q = integrate_halfline(f, std::sqrt(ap) + 6.0, opts);
    MomentCheckResult r;
    r.integral = q.value.real();
    r.expected = std::exp(std::lgamma(1.0 + ap));
    r.rel_err = std::abs(r.integral - r.expected) / r.expected;
    r.panels = q.panels;
    r.converged = q.converged;
    return r;
}

}  // namespace mpde
