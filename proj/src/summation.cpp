#include "mpde/summation.hpp"

#include "mpde/errors.hpp"
#include "mpde/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace mpde {

namespace {

using CD = std::complex<double>;

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw InvalidParameterError("kernel order alpha must lie in (0, 2)");
}

}  // namespace

double angle_diff(double tau, double theta) {
    double d = std::fmod(tau - theta, 2.0 * M_PI);
    if (d > M_PI) d -= 2.0 * M_PI;
    if (d <= -M_PI) d += 2.0 * M_PI;
    return d;
}

QuadratureResult laplace_along(double alpha, double tau, const AnalyticFn& g, CD z,
                               const QuadratureOptions& opts) {
    require_alpha(alpha);
    if (z == CD(0.0)) throw DomainError("Laplace transform is undefined at z = 0");
    double gap = angle_diff(tau, std::arg(z));
    if (std::abs(gap) >= alpha * M_PI / 2.0)
        throw DomainError("z lies outside the kernel decay sector for direction tau");

    // Substituting u = v^alpha e^{i tau} flattens the kernel to
    // w1 exp(-v w1) with w1 = e^{i(tau - arg z)/alpha} / |z|^{1/alpha};
    // the further v = w^2 step keeps fractional powers of the integrand
    // smooth at the endpoint.
    CD w1 = std::polar(std::pow(std::abs(z), -1.0 / alpha), gap / alpha);
    Integrand f = [&](double w) {
        double v = w * w;
        CD u = std::polar(std::pow(v, alpha), tau);
        return 2.0 * w * w1 * std::exp(-v * w1) * g(u);
    };
    double rate = w1.real();
    double scale = std::sqrt(6.0 / rate);
    return integrate_halfline(f, scale, opts);
}

std::vector<double> series_singular_directions(double alpha, const std::vector<CD>& coeffs,
                                               int L, int M) {
    require_alpha(alpha);
    int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 4) throw ConfigError("singular-direction detection needs at least 5 coefficients");
    if (M < 0) M = n / 2;
    if (L < 0) L = n - M;
    std::vector<CD> borel(coeffs.size());
    for (size_t p = 0; p < coeffs.size(); ++p)
        borel[p] = coeffs[p] * std::exp(-std::lgamma(1.0 + alpha * static_cast<double>(p)));
    return singular_directions(pade_approximant(borel, L, M));
}

SummationResult sum_series(double alpha, const std::vector<CD>& coeffs, CD z,
                           const SummationOptions& opts) {
    require_alpha(alpha);
    int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 6) throw ConfigError("Borel summation needs at least 7 series coefficients");
    int M = opts.pade_M >= 0 ? opts.pade_M : n / 2;
    int L = opts.pade_L >= 0 ? opts.pade_L : n - M;
    if (L + M > n) throw ConfigError("Pade degrees exceed the available series orders");

    std::vector<CD> borel(coeffs.size());
    for (size_t p = 0; p < coeffs.size(); ++p)
        borel[p] = coeffs[p] * std::exp(-std::lgamma(1.0 + alpha * static_cast<double>(p)));

    SummationResult result;
    result.borel_pade = pade_approximant(borel, L, M);
    result.singular_dirs = singular_directions(result.borel_pade);

    if (z == CD(0.0)) {
        result.value = coeffs[0];
        result.converged = true;
        return result;
    }
    double tau = opts.direction;
    if (std::abs(angle_diff(tau, std::arg(z))) >= opts.sector_safety * alpha * M_PI / 2.0)
        throw DomainError("z lies outside the summability sector for the requested direction");
    // Refuse only poles the Laplace path actually meets: beyond
    // |u| ~ 46^alpha |z| the kernel weight is below double noise, so far
    // spurious poles (Pade artifacts of an entire Borel transform) are
    // harmless.
    double reach = std::pow(46.0, alpha) * std::abs(z);
    for (const CD& pole : result.borel_pade.poles)
        if (pole != CD(0.0) && std::abs(pole) <= reach &&
            std::abs(angle_diff(tau, std::arg(pole))) < opts.direction_guard)
            throw DomainError("requested direction is singular for this series");

    const PadeApproximant& pa = result.borel_pade;
    AnalyticFn g = [&pa](CD u) { return pade_eval(pa, u); };
    QuadratureResult q = laplace_along(alpha, tau, g, z, opts.quad);
    result.value = q.value;
    result.converged = q.converged;

    // Stability estimate: redo the Laplace transform with the next-smaller
    // Pade approximant and compare.
    double pade_err = 0.0;
    if (L > 1 && M > 1) {
        PadeApproximant pa2 = pade_approximant(borel, L - 1, M - 1);
        AnalyticFn g2 = [&pa2](CD u) { return pade_eval(pa2, u); };
        QuadratureResult q2 = laplace_along(alpha, tau, g2, z, opts.quad);
        pade_err = std::abs(q.value - q2.value);
    }
    result.err_estimate = q.err_estimate + pade_err;
    return result;
}

std::complex<double> borel_transform_along(double alpha, double tau, const AnalyticFn& f, CD u,
                                           double eps, double arc_factor,
                                           const QuadratureOptions& opts) {
    require_alpha(alpha);
    if (u == CD(0.0)) throw DomainError("Borel transform path needs u != 0");
    if (!(eps > 0.0)) throw InvalidParameterError("path opening eps must be positive");
    double beta = alpha * (M_PI + eps) / 2.0;
    if (beta >= M_PI)
        throw InvalidParameterError("path opening alpha(pi+eps)/2 must stay below pi");
    // The kernel decays along both rays only while u sits within the inner
    // eps-wedge of the path direction.
    if (std::abs(angle_diff(std::arg(u), tau)) >= alpha * eps / 2.0)
        throw DomainError("u lies outside the wedge |arg u - tau| < alpha eps / 2");
    double R = arc_factor * std::abs(u);

    // Legs in the variable rho = R e^{-s}: the measure d rho / rho becomes ds,
    // and the endpoint oscillation of E(u/zeta) near rho = 0 is stretched out
    // to a decaying half-line tail the panel sweep can resolve.
    auto leg = [&](double angle) {
        CD dir = std::polar(1.0, angle);
        Integrand h = [&, dir](double s) {
            CD zeta = (R * std::exp(-s)) * dir;
            return kernel_E(alpha, u / zeta) * f(zeta);
        };
        return integrate_halfline(h, 4.0, opts).value;
    };
    CD in_leg = leg(tau + beta);
    CD out_leg = leg(tau - beta);

    const CD i_unit(0.0, 1.0);
    Integrand arc = [&](double phi) {
        CD zeta = std::polar(R, phi);
        return kernel_E(alpha, u / zeta) * f(zeta) * i_unit;
    };
    // Clockwise from tau+beta through tau to tau-beta.
    CD arc_val = integrate_interval(arc, tau + beta, tau - beta, opts).value;

    return -(in_leg + arc_val - out_leg) / (2.0 * M_PI * i_unit);
}

std::complex<double> moment_derivative_integral_disc(double alpha, const AnalyticFn& phi, int n,
                                                     CD z, double r1) {
    require_alpha(alpha);
    if (n < 0) throw InvalidParameterError("derivative order must be nonnegative");
    if (!(r1 > 0.0)) throw InvalidParameterError("disc radius must be positive");
    if (std::abs(z) > 0.25 * r1)
        throw DomainError("moment derivative integral needs |z| <= r1/4");

    QuadratureOptions inner_opts;
    inner_opts.abs_tol = 1e-12;
    inner_opts.rel_tol = 1e-10;
    inner_opts.max_refine = 5;

    const int n_circle = 64;
    const CD i_unit(0.0, 1.0);
    CD acc = 0.0;
    for (int j = 0; j < n_circle; ++j) {
        CD w = std::polar(r1, 2.0 * M_PI * j / n_circle);
        double tau = -std::arg(w);
        CD zdir = z * std::polar(1.0, tau) / r1;
        // Inner ray integral after xi = (v^alpha / |w|) e^{i tau}, which turns
        // e(xi w) into v^alpha e^{-v} exactly.
        Integrand h = [&](double v) {
            double va = std::pow(v, alpha);
            return std::pow(v, alpha * n) * std::exp(-v) * kernel_E(alpha, zdir * va);
        };
        QuadratureResult q = integrate_halfline(h, alpha * n + 8.0, inner_opts);
        CD inner = std::polar(1.0, n * tau) / (w * std::pow(r1, n)) * q.value;
        acc += phi(w) * inner * w;
    }
    return acc / static_cast<double>(n_circle);
}

}  // namespace mpde
