#pragma once

#include <complex>
#include <functional>

namespace mpde {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double cutoff_ratio = 1e-18;  // tail cut relative to the running max panel
    int panel_points = 16;
    int max_panels = 40000;
    int max_refine = 6;
};

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double err_estimate = 0.0;
    int panels = 0;
    bool converged = false;
};

using Integrand = std::function<std::complex<double>(double)>;

/// Composite Gauss-Legendre on [a,b] with panel-count doubling until two
/// successive estimates agree to tolerance.
QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts = {});

/// Composite Gauss-Legendre on [0, inf) with panels of width ~scale/2,
/// truncated where the integrand falls below cutoff_ratio of its running
/// maximum, then refined by panel halving.  Throws NumericalError when the
/// integrand fails to decay within the panel budget.
QuadratureResult integrate_halfline(const Integrand& f, double scale,
                                    const QuadratureOptions& opts = {});

}  // namespace mpde
