#include "mpde/pade.hpp"

#include "mpde/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace mpde {

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using CD = std::complex<double>;

// Roots of a polynomial sum a_j x^j via the companion matrix, after stripping
// negligible leading coefficients.
std::vector<CD> poly_roots(const std::vector<CD>& a) {
    double scale = 0.0;
    for (const CD& c : a) scale = std::max(scale, std::abs(c));
    int deg = static_cast<int>(a.size()) - 1;
    while (deg > 0 && std::abs(a[static_cast<size_t>(deg)]) < 1e-14 * scale) --deg;
    if (deg < 1) return {};
    CMat comp = CMat::Zero(deg, deg);
    CD lead = a[static_cast<size_t>(deg)];
    for (int i = 0; i < deg; ++i) {
        comp(i, deg - 1) = -a[static_cast<size_t>(i)] / lead;
        if (i > 0) comp(i, i - 1) = 1.0;
    }
    Eigen::ComplexEigenSolver<CMat> es(comp);
    std::vector<CD> roots;
    for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

CD poly_eval(const std::vector<CD>& a, CD z) {
    CD acc = 0.0;
    for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) acc = acc * z + a[static_cast<size_t>(j)];
    return acc;
}

std::vector<CD> poly_derivative(const std::vector<CD>& a) {
    std::vector<CD> d;
    for (size_t j = 1; j < a.size(); ++j) d.push_back(static_cast<double>(j) * a[j]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

}  // namespace

PadeApproximant pade_approximant(const std::vector<CD>& c, int L, int M) {
    if (L < 0 || M < 0) throw InvalidParameterError("Pade degrees must be nonnegative");
    if (static_cast<int>(c.size()) < L + M + 1)
        throw InvalidParameterError("Pade [" + std::to_string(L) + "/" + std::to_string(M) +
                                    "] needs " + std::to_string(L + M + 1) + " coefficients");

    auto coeff = [&](int idx) { return idx >= 0 ? c[static_cast<size_t>(idx)] : CD(0.0); };

    PadeApproximant pa;
    pa.L = L;
    int m = M;
    std::vector<CD> q;
    while (true) {
        if (m == 0) {
            q = {CD(1.0)};
            break;
        }
        CMat A(m, m);
        CVec b(m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) A(i, j) = coeff(L + 1 + i - (j + 1));
            b(i) = -coeff(L + 1 + i);
        }
        Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        double smax = svd.singularValues()(0);
        double smin = svd.singularValues()(m - 1);
        if (smax > 0 && smin > 1e-13 * smax) {
            CVec sol = svd.solve(b);
            q.assign(static_cast<size_t>(m) + 1, CD(0.0));
            q[0] = 1.0;
            for (int j = 0; j < m; ++j) q[static_cast<size_t>(j) + 1] = sol(j);
            break;
        }
        // Singular Toeplitz block: the [L/m] problem is degenerate, step down.
        --m;
        pa.reduced = true;
    }
    pa.M = m;
    pa.den = q;

    pa.num.assign(static_cast<size_t>(L) + 1, CD(0.0));
    for (int l = 0; l <= L; ++l)
        for (int j = 0; j <= std::min(l, m); ++j)
            pa.num[static_cast<size_t>(l)] += q[static_cast<size_t>(j)] * coeff(l - j);

    pa.poles = poly_roots(pa.den);
    std::vector<CD> dq = poly_derivative(pa.den);
    for (const CD& tau : pa.poles) pa.residues.push_back(poly_eval(pa.num, tau) / poly_eval(dq, tau));
    return pa;
}

CD pade_eval(const PadeApproximant& pa, CD z) {
    CD den = poly_eval(pa.den, z);
    if (den == CD(0.0)) throw NumericalError("Pade approximant evaluated at a pole");
    return poly_eval(pa.num, z) / den;
}

std::vector<double> singular_directions(const PadeApproximant& pa, double cluster_tol,
                                        double residue_floor) {
    double res_scale = 0.0;
    for (const CD& r : pa.residues) res_scale = std::max(res_scale, std::abs(r));
    struct Entry {
        double arg;
        double mod;
    };
    std::vector<Entry> keep;
    for (size_t i = 0; i < pa.poles.size(); ++i) {
        if (std::abs(pa.residues[i]) < residue_floor * res_scale) continue;
        keep.push_back({std::arg(pa.poles[i]), std::abs(pa.poles[i])});
    }
    std::sort(keep.begin(), keep.end(), [](const Entry& a, const Entry& b) { return a.arg < b.arg; });

    std::vector<double> dirs;
    size_t i = 0;
    while (i < keep.size()) {
        size_t j = i;
        double best_mod = keep[i].mod;
        double best_arg = keep[i].arg;
        while (j + 1 < keep.size() && keep[j + 1].arg - keep[j].arg < cluster_tol) {
            ++j;
            if (keep[j].mod < best_mod) {
                best_mod = keep[j].mod;
                best_arg = keep[j].arg;
            }
        }
        dirs.push_back(best_arg);
        i = j + 1;
    }
    return dirs;
}

}  // namespace mpde
