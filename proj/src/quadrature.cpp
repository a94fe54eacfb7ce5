#include "mpde/quadrature.hpp"

#include "mpde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace mpde {

namespace {

struct GLRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Nodes from Newton iteration on P_n, seeded with the Chebyshev estimate.
GLRule build_rule(int n) {
    GLRule rule;
    rule.x.resize(static_cast<size_t>(n));
    rule.w.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[static_cast<size_t>(i)] = x;
        rule.w[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GLRule& gl_rule(int n) {
    static std::mutex mtx;
    static std::map<int, GLRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

std::complex<double> gl_panel(const Integrand& f, double a, double b, const GLRule& rule) {
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    std::complex<double> acc = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i)
        acc += rule.w[i] * f(mid + half * rule.x[i]);
    return half * acc;
}

std::complex<double> composite(const Integrand& f, double a, double b, int panels,
                               const GLRule& rule) {
    std::complex<double> acc = 0.0;
    double h = (b - a) / panels;
    for (int j = 0; j < panels; ++j) acc += gl_panel(f, a + j * h, a + (j + 1) * h, rule);
    return acc;
}

}  // namespace

QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts) {
    const GLRule& rule = gl_rule(opts.panel_points);
    QuadratureResult result;
    int panels = 1;
    std::complex<double> prev = composite(f, a, b, panels, rule);
    for (int refine = 0; refine < opts.max_refine; ++refine) {
        panels *= 2;
        std::complex<double> cur = composite(f, a, b, panels, rule);
        double diff = std::abs(cur - prev);
        result.value = cur;
        result.err_estimate = diff;
        result.panels = panels;
        if (diff < std::max(opts.abs_tol, opts.rel_tol * std::abs(cur))) {
            result.converged = true;
            return result;
        }
        prev = cur;
    }
    return result;
}

namespace {

// One sweep over [0, inf) with a fixed panel width; stops once recent panel
// contributions drop below cutoff_ratio of the largest one seen.
std::complex<double> sweep_halfline(const Integrand& f, double dv, const QuadratureOptions& opts,
                                    const GLRule& rule, int* panels_out) {
    std::complex<double> acc = 0.0;
    double max_contrib = 0.0;
    int quiet = 0;
    int growing = 0;
    double prev_mag = 0.0;
    int j = 0;
    for (; j < opts.max_panels; ++j) {
        std::complex<double> contrib = gl_panel(f, j * dv, (j + 1) * dv, rule);
        acc += contrib;
        double mag = std::abs(contrib);
        if (!std::isfinite(mag))
            throw NumericalError("integrand overflow on the half-line at radius " +
                                 std::to_string(j * dv));
        max_contrib = std::max(max_contrib, mag);
        quiet = (mag <= opts.cutoff_ratio * max_contrib) ? quiet + 1 : 0;
        if (quiet >= 3) break;
        growing = (j > 0 && mag > prev_mag) ? growing + 1 : 0;
        if (growing >= 200 && mag > 1e6 * std::abs(acc))
            throw NumericalError("half-line integrand is not decaying; integral diverges");
        prev_mag = mag;
    }
    if (j >= opts.max_panels)
        throw NumericalError("half-line integrand did not decay within the panel budget");
    if (panels_out) *panels_out = j + 1;
    return acc;
}

}  // namespace

QuadratureResult integrate_halfline(const Integrand& f, double scale,
                                    const QuadratureOptions& opts) {
    if (!(scale > 0)) throw InvalidParameterError("half-line quadrature scale must be positive");
    const GLRule& rule = gl_rule(opts.panel_points);
    QuadratureResult result;
    double dv = 0.5 * scale;
    int panels = 0;
    std::complex<double> prev = sweep_halfline(f, dv, opts, rule, &panels);
    for (int refine = 0; refine < opts.max_refine; ++refine) {
        dv *= 0.5;
        std::complex<double> cur = sweep_halfline(f, dv, opts, rule, &panels);
        double diff = std::abs(cur - prev);
        result.value = cur;
        result.err_estimate = diff;
        result.panels = panels;
        if (diff < std::max(opts.abs_tol, opts.rel_tol * std::abs(cur))) {
            result.converged = true;
            return result;
        }
        prev = cur;
    }
    return result;
}

}  // namespace mpde
