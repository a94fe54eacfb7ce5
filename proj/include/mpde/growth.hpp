#pragma once

#include "mpde/numbers.hpp"
#include "mpde/sequences.hpp"
#include "mpde/series.hpp"

#include <optional>
#include <vector>

namespace mpde {

/// Result of fitting log s_n ~ log C + n log H + sigma log M_n(base)
/// + delta log n; the log n term absorbs algebraic prefactors that would
/// otherwise bleed into sigma.
struct GrowthReport {
    std::vector<Real> norms;
    double fitted_C = 0.0;
    double fitted_H = 0.0;
    double fitted_sigma = 0.0;
    double fitted_power = 0.0;  // delta, exponent of the n^delta prefactor
    double predicted_sigma = std::numeric_limits<double>::quiet_NaN();
    double fit_residual = 0.0;   // rms residual of the log fit
    double r_prime = 0.0;
    int window_lo = 0;
    int window_hi = 0;
    bool degenerate = false;     // all usable norms were zero
};

/// Newton-polygon summability level 1/k1 = max{0, s2 p/k - s1}.
double predicted_order(int k, int p, double s1, double s2);

/// s_n = ||u_n||_{r'} for the plain t-coefficients.
template <class T>
std::vector<Real> coefficient_norms(const Series2<T>& u, const Real& r_prime) {
    std::vector<Real> s;
    s.reserve(u.rows.size());
    for (const auto& row : u.rows) s.push_back(norm_r(row, r_prime));
    return s;
}

/// Least-squares fit of (C, H, sigma) over a window of usable rows.
/// Zero rows are excluded; an all-zero input yields a flagged degenerate
/// report with sigma = 0.  The window defaults to [N/3, N] to suppress
/// transient small-n behavior.
GrowthReport fit_moment_order(const std::vector<Real>& norms,
                              const StronglyRegularSequence& base,
                              std::optional<std::pair<int, int>> window = {});

/// Cauchy-Hadamard radius from tail regression of log s_n; 0 in the
/// divergent regime (fitted sigma above the configured threshold), +inf
/// sentinel for super-convergent rows.
double radius_estimate(const std::vector<Real>& norms, double divergent_sigma_threshold = 0.2);

}  // namespace mpde
