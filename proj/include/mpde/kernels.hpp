#pragma once

#include "mpde/numbers.hpp"

#include <complex>

namespace mpde {

/// Gevrey kernel function e_alpha(z) = (1/alpha) z^{1/alpha} exp(-z^{1/alpha}),
/// defined on the sector |arg z| < alpha pi.  Requires 0 < alpha < 2.
std::complex<double> kernel_e(double alpha, std::complex<double> z);

/// Entire dual kernel E_alpha(z) = sum_p z^p / Gamma(1 + alpha p)
/// (Mittag-Leffler).  Dispatches on x = |z|^{1/alpha}: plain Taylor for small
/// x, high-precision Taylor through the cancellation regime, exponential-plus-
/// algebraic asymptotics for large x.
std::complex<double> kernel_E(double alpha, std::complex<double> z);

/// Taylor sum evaluated in 50-digit arithmetic (reference path; accurate for
/// moderate x, slow).
std::complex<double> kernel_E_series(double alpha, std::complex<double> z);

/// Large-|z| expansion: exponential branches exp(z^{1/alpha} rotations)/alpha
/// on the principal sheet minus the optimally truncated algebraic tail
/// sum z^{-k}/Gamma(1 - alpha k).
std::complex<double> kernel_E_asymptotic(double alpha, std::complex<double> z);

/// Independent evaluation from the inverse-Mellin integral
/// (1/2 pi i) int e^s s^{alpha-1}/(s^alpha - z) ds over a parabolic Hankel
/// contour, with explicit residues for poles crossed by the contour.
std::complex<double> kernel_E_contour(double alpha, std::complex<double> z);

struct MomentCheckResult {
    double integral = 0.0;       // computed int_0^inf t^{p-1} e_alpha(t) dt
    double expected = 0.0;       // Gamma(1 + alpha p)
    double rel_err = 0.0;
    int panels = 0;
    bool converged = false;
};

/// Quadrature verification that the Mellin moments of e_alpha reproduce
/// m_alpha(p) = Gamma(1 + alpha p).
MomentCheckResult moment_check(double alpha, int p);

}  // namespace mpde
