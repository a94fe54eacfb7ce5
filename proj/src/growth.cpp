#include "mpde/growth.hpp"

#include "mpde/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace mpde {

double predicted_order(int k, int p, double s1, double s2) {
    if (k < 1 || p <= k) throw InvalidParameterError("predicted order needs 1 <= k < p");
    if (!std::isfinite(s1) || !std::isfinite(s2))
        throw ConfigError("claimed orders s1, s2 are required for the order prediction");
    return std::max(0.0, s2 * p / k - s1);
}

GrowthReport fit_moment_order(const std::vector<Real>& norms,
                              const StronglyRegularSequence& base,
                              std::optional<std::pair<int, int>> window) {
    GrowthReport report;
    report.norms = norms;
    int n_rows = static_cast<int>(norms.size());
    if (n_rows < 12) throw ConfigError("growth fit needs at least 12 rows");

    int lo = window ? window->first : n_rows / 3;
    int hi = window ? window->second : n_rows - 1;
    lo = std::max(lo, 1);
    hi = std::min(hi, n_rows - 1);
    report.window_lo = lo;
    report.window_hi = hi;

    std::vector<int> idx;
    for (int n = lo; n <= hi; ++n)
        if (norms[static_cast<size_t>(n)] > 0) idx.push_back(n);

    if (idx.size() < 5) {
        report.degenerate = true;
        report.fitted_sigma = 0.0;
        report.fitted_C = 0.0;
        report.fitted_H = 0.0;
        return report;
    }

    Eigen::MatrixXd A(static_cast<Eigen::Index>(idx.size()), 4);
    Eigen::VectorXd b(static_cast<Eigen::Index>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i) {
        int n = idx[i];
        A(static_cast<Eigen::Index>(i), 0) = 1.0;
        A(static_cast<Eigen::Index>(i), 1) = static_cast<double>(n);
        A(static_cast<Eigen::Index>(i), 2) = base.log_value(n);
        A(static_cast<Eigen::Index>(i), 3) = std::log(static_cast<double>(n));
        b(static_cast<Eigen::Index>(i)) = to_double(log(norms[static_cast<size_t>(n)]));
    }
    Eigen::Vector4d x = A.colPivHouseholderQr().solve(b);
    report.fitted_C = std::exp(x(0));
    report.fitted_H = std::exp(x(1));
    report.fitted_sigma = x(2);
    report.fitted_power = x(3);
    Eigen::VectorXd resid = A * x - b;
    report.fit_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(idx.size()));
    return report;
}

double radius_estimate(const std::vector<Real>& norms, double divergent_sigma_threshold) {
    int n_rows = static_cast<int>(norms.size());
    std::vector<int> nonzero;
    for (int n = 1; n < n_rows; ++n)
        if (norms[static_cast<size_t>(n)] > 0) nonzero.push_back(n);
    if (static_cast<int>(nonzero.size()) < 8)
        throw ConfigError("radius estimate needs at least 8 nonzero rows");

    if (n_rows >= 12) {
        GrowthReport fit = fit_moment_order(norms, StronglyRegularSequence::gevrey(1));
        if (!fit.degenerate && fit.fitted_sigma > divergent_sigma_threshold) return 0.0;
    }

    // Tail regression: slope of log s_n over the last half of the nonzero rows.
    size_t start = nonzero.size() / 2;
    size_t count = nonzero.size() - start;
    double sn = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = start; i < nonzero.size(); ++i) {
        double xn = nonzero[i];
        double yn = to_double(log(norms[static_cast<size_t>(nonzero[i])]));
        sn += 1;
        sx += xn;
        sy += yn;
        sxx += xn * xn;
        sxy += xn * yn;
    }
    (void)count;
    double slope = (sn * sxy - sx * sy) / (sn * sxx - sx * sx);
    double radius = std::exp(-slope);
    if (radius > 1e9) return std::numeric_limits<double>::infinity();
    return radius;
}

}  // namespace mpde
