#pragma once

#include "mpde/pade.hpp"
#include "mpde/quadrature.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace mpde {

using AnalyticFn = std::function<std::complex<double>(std::complex<double>)>;

/// Difference tau - theta wrapped to (-pi, pi].
double angle_diff(double tau, double theta);

/// Moment Laplace transform int_0^{infty(tau)} e_alpha(u/z) g(u) du/u along
/// the ray arg u = tau.  Requires |tau - arg z| < alpha pi / 2 so the kernel
/// decays along the ray.
QuadratureResult laplace_along(double alpha, double tau, const AnalyticFn& g,
                               std::complex<double> z, const QuadratureOptions& opts = {});

struct SummationOptions {
    double direction = 0.0;        // Laplace direction tau
    int pade_L = -1;               // default: split the available orders evenly
    int pade_M = -1;
    double sector_safety = 0.9;    // fraction of the half-opening alpha pi/2 allowed
    double direction_guard = 0.1;  // min angular gap (rad) to a singular direction
    QuadratureOptions quad;
};

struct SummationResult {
    std::complex<double> value{0.0, 0.0};
    double err_estimate = 0.0;               // quadrature + Pade-stability estimate
    std::vector<double> singular_dirs;       // from Borel-plane pole clusters
    PadeApproximant borel_pade;
    bool converged = false;
};

/// Borel-Laplace sum of sum c_p t^p with respect to the moments
/// m_alpha(p) = Gamma(1 + alpha p): formal Borel transform, Pade continuation
/// in the Borel plane, kernel Laplace transform along opts.direction.
/// Refuses directions that hit a detected singular direction or put z outside
/// the summability sector.
SummationResult sum_series(double alpha, const std::vector<std::complex<double>>& coeffs,
                           std::complex<double> z, const SummationOptions& opts = {});

/// Singular directions of the Borel transform of the series, via Pade poles.
std::vector<double> series_singular_directions(double alpha,
                                               const std::vector<std::complex<double>>& coeffs,
                                               int L = -1, int M = -1);

/// Kernel Borel transform (T^-_{e,tau} f)(u): the integral over the path
/// delta_alpha(tau) made of two rays at angles tau +- alpha(pi+eps)/2 joined
/// by an arc of radius arc_factor |u|, with the -1/(2 pi i) prefactor.
std::complex<double> borel_transform_along(double alpha, double tau, const AnalyticFn& f,
                                           std::complex<double> u, double eps = M_PI / 8,
                                           double arc_factor = 1.5,
                                           const QuadratureOptions& opts = {});

/// Moment derivative of an analytic germ by the integral representation
/// (1/2 pi i) oint_{|w|=r1} phi(w) int_0^{infty(tau)} xi^n E(xi z)
/// e(xi w)/(xi w) dxi dw with tau = -arg(w).  Valid for |z| <= r1/4.
std::complex<double> moment_derivative_integral_disc(double alpha, const AnalyticFn& phi, int n,
                                                     std::complex<double> z, double r1 = 0.5);

}  // namespace mpde
