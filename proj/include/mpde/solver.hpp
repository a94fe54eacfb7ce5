#pragma once

#include "mpde/errors.hpp"
#include "mpde/series.hpp"
#include "mpde/sequences.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace mpde {

/// Cauchy problem (d_{m1,t}^k - a(z) d_{m2,z}^p) u = f with data
/// d_{m1,t}^j u(0,z) = phi_j, j < k.  Requires 1 <= k < p and a(0) != 0.
template <class T>
struct CauchyProblem {
    int k = 1;
    int p = 2;
    MomentSequence m1 = MomentSequence::gevrey_moments(1);
    MomentSequence m2 = MomentSequence::gevrey_moments(1);
    double s1 = 1.0;  // claimed order of m1 (NaN when absent)
    double s2 = 1.0;  // claimed order of m2
    Series1<T> a = Series1<T>::constant(T(1), 0);
    std::vector<Series1<T>> phi;     // phi_0 .. phi_{k-1}
    Series2<T> f_hat;                // plain coefficients of t^n z^j
    double radius = 0.5;

    void validate() const {
        if (k < 1) throw InvalidParameterError("k must be >= 1");
        if (p <= k) throw InvalidParameterError("k < p required");
        if (static_cast<int>(phi.size()) != k)
            throw ConfigError("expected exactly k = " + std::to_string(k) + " initial data phi_j");
        if (a[0] == T(0)) throw NonInvertibleError("a(0) must be nonzero");
        if (radius <= 0) throw InvalidParameterError("radius must be positive");
    }
};

enum class SolveMethod { Recurrence, FixedPoint };

/// Formal solution in starred form: u(t,z) = sum_n u_star[n](z) / m1(n) t^n.
/// Each row carries its valid z-order (every recurrence block spends p orders).
template <class T>
struct FormalSolution {
    std::vector<Series1<T>> u_star;
    SolveMethod method = SolveMethod::Recurrence;
    MomentSequence m1 = MomentSequence::gevrey_moments(1);
    int nt = 0;
    int nz = 0;

    /// Plain t-coefficients u_n = u_star[n] / m1(n).
    Series2<T> plain() const {
        Series2<T> s;
        s.rows.reserve(u_star.size());
        for (size_t n = 0; n < u_star.size(); ++n) {
            Series1<T> row = series_scale(u_star[n], T(1) / moment_as<T>(m1, static_cast<int>(n)));
            row.set_valid(u_star[n].valid());
            s.rows.push_back(std::move(row));
        }
        return s;
    }
};

namespace detail {

/// f_star rows: f(t,z) = sum f_star[n](z)/m1(n) t^n, from plain coefficients.
template <class T>
Series1<T> f_star_row(const CauchyProblem<T>& problem, int n, int nz) {
    if (n > problem.f_hat.t_order()) return Series1<T>::zero(nz);
    Series1<T> row = truncate(problem.f_hat.rows[n], nz);
    return series_scale(row, moment_as<T>(problem.m1, n));
}

template <class T>
int required_z_budget(const CauchyProblem<T>& problem, int nt) {
    return problem.p * (nt / problem.k);
}

}  // namespace detail

/// Direct recurrence u_{n+k,*} = a d_{m2,z}^p u_{n,*} + f_{n,*}, seeded with
/// u_{j,*} = m1(0) phi_j.  Throws a truncation-budget error when nz cannot
/// cover the p orders consumed per block.
template <class T>
FormalSolution<T> solve_formal(const CauchyProblem<T>& problem, int nt, int nz) {
    problem.validate();
    int needed = detail::required_z_budget(problem, nt);
    if (nz < needed)
        throw TruncationError("z-truncation budget too small: solving to t-order " +
                              std::to_string(nt) + " with k=" + std::to_string(problem.k) +
                              ", p=" + std::to_string(problem.p) + " needs nz >= " +
                              std::to_string(needed) + " (got " + std::to_string(nz) + ")");

    FormalSolution<T> sol;
    sol.method = SolveMethod::Recurrence;
    sol.m1 = problem.m1;
    sol.nt = nt;
    sol.nz = nz;
    sol.u_star.reserve(static_cast<size_t>(nt) + 1);

    Series1<T> a = truncate(problem.a, nz);
    T m1_0 = moment_as<T>(problem.m1, 0);
    for (int j = 0; j < problem.k && j <= nt; ++j) {
        Series1<T> row = series_scale(truncate(problem.phi[static_cast<size_t>(j)], nz), m1_0);
        sol.u_star.push_back(std::move(row));
    }
    for (int n = 0; n + problem.k <= nt; ++n) {
        Series1<T> d = moment_derivative(sol.u_star[static_cast<size_t>(n)], problem.m2, problem.p);
        Series1<T> row = series_add(series_mul(a, truncate(d, nz)),
                                    detail::f_star_row(problem, n, nz));
        sol.u_star.push_back(std::move(row));
    }
    return sol;
}

/// One step of the fixed-point construction: the boundary data psi_j(t)
/// (starred t-coefficients), by default extracted from a bootstrap
/// recurrence solve.
template <class T>
struct BoundaryData {
    // psi[j][n] is the starred t^n coefficient of psi_j, j = 0..p-1.
    std::vector<std::vector<T>> psi;
};

template <class T>
BoundaryData<T> extract_boundary_data(const CauchyProblem<T>& problem,
                                      const FormalSolution<T>& sol) {
    BoundaryData<T> bd;
    bd.psi.assign(static_cast<size_t>(problem.p), {});
    for (int j = 0; j < problem.p; ++j) {
        auto& col = bd.psi[static_cast<size_t>(j)];
        col.reserve(sol.u_star.size());
        for (const auto& row : sol.u_star)
            col.push_back(j <= row.valid() ? row[j] : T(0));
    }
    return bd;
}

/// Fixed-point series solution: builds g from the boundary data, iterates
/// w_q = (1/a) d_{m1,t}^k d_{m2,z}^{-p} w_{q-1}, sums q <= Q and reconstructs
/// u = sum_{j<p} psi_j(t) z^j + d_{m2,z}^{-p} w.  In starred t-coefficients
/// the t-derivative is a pure row shift, so the construction is exact.
template <class T>
FormalSolution<T> fixed_point_solution(const CauchyProblem<T>& problem, int Q, int nt, int nz,
                                       const std::optional<BoundaryData<T>>& boundary = {}) {
    problem.validate();
    if (Q < 1) throw InvalidParameterError("fixed-point iteration count must be >= 1");
    if (problem.a[0] == T(0)) throw NonInvertibleError("a(0) must be nonzero");

    BoundaryData<T> bd;
    if (boundary) {
        bd = *boundary;
    } else {
        // Bootstrap: psi_j from a recurrence solve over the same rectangle.
        bd = extract_boundary_data(problem, solve_formal(problem, nt, nz));
    }
    for (const auto& col : bd.psi)
        if (static_cast<int>(col.size()) <= nt)
            throw ConfigError("boundary data must cover t-orders 0..nt");

    Series1<T> inv_a = series_reciprocal(truncate(problem.a, nz), nz);

    // g star rows, defined for n with n + k <= nt.
    int g_rows = nt - problem.k + 1;
    if (g_rows <= 0) throw TruncationError("nt too small for one fixed-point block");
    std::vector<Series1<T>> g(static_cast<size_t>(g_rows));
    for (int n = 0; n < g_rows; ++n) {
        Series1<T> acc = Series1<T>::zero(nz);
        for (int j = 0; j < problem.p; ++j)
            acc.at(j) = bd.psi[static_cast<size_t>(j)][static_cast<size_t>(n + problem.k)];
        acc = series_sub(acc, detail::f_star_row(problem, n, nz));
        g[static_cast<size_t>(n)] = series_mul(inv_a, acc);
    }

    // w = sum_{q<=Q} w_q with w_0 = g, w_q = (1/a) shift_k antider_p w_{q-1}.
    std::vector<Series1<T>> w_sum = g;
    std::vector<Series1<T>> w_prev = g;
    for (int q = 1; q <= Q; ++q) {
        int rows = g_rows - q * problem.k;
        if (rows <= 0) break;
        std::vector<Series1<T>> w_next(static_cast<size_t>(rows));
        for (int n = 0; n < rows; ++n) {
            Series1<T> ad =
                moment_antiderivative(w_prev[static_cast<size_t>(n + problem.k)], problem.m2, problem.p);
            w_next[static_cast<size_t>(n)] = series_mul(inv_a, truncate(ad, nz));
        }
        for (int n = 0; n < rows; ++n)
            w_sum[static_cast<size_t>(n)] =
                series_add(w_sum[static_cast<size_t>(n)], w_next[static_cast<size_t>(n)]);
        w_prev = std::move(w_next);
    }

    FormalSolution<T> sol;
    sol.method = SolveMethod::FixedPoint;
    sol.m1 = problem.m1;
    sol.nt = g_rows - 1;
    sol.nz = nz;
    sol.u_star.resize(static_cast<size_t>(g_rows));
    for (int n = 0; n < g_rows; ++n) {
        Series1<T> row = Series1<T>::zero(nz);
        for (int j = 0; j < problem.p; ++j)
            row.at(j) = bd.psi[static_cast<size_t>(j)][static_cast<size_t>(n)];
        Series1<T> tail =
            truncate(moment_antiderivative(w_sum[static_cast<size_t>(n)], problem.m2, problem.p), nz);
        row = series_add(row, tail);
        // Row n only receives the iterates w_q with n + qk <= g_rows - 1;
        // the first dropped one has z-valuation p(q_max + 1), so after the
        // final antiderivative the row is exact through p(q_max + 2) - 1.
        int q_max = std::min(Q, (g_rows - 1 - n) / problem.k);
        int exact = problem.p * (q_max + 2) - 1;
        row.set_valid(std::min({nz, w_sum[static_cast<size_t>(n)].valid() + problem.p, exact}));
        sol.u_star[static_cast<size_t>(n)] = std::move(row);
    }
    return sol;
}

/// Formal residual (d_{m1,t}^k - a d_{m2,z}^p) u - f on the valid rectangle;
/// identically zero for correct solutions.  Row n of the result corresponds
/// to the starred t^n coefficient of the defect.
template <class T>
Series2<T> residual(const CauchyProblem<T>& problem, const FormalSolution<T>& sol) {
    problem.validate();
    Series2<T> res;
    int nt = static_cast<int>(sol.u_star.size()) - 1;
    Series1<T> a = truncate(problem.a, sol.nz);
    for (int n = 0; n + problem.k <= nt; ++n) {
        const Series1<T>& u_n = sol.u_star[static_cast<size_t>(n)];
        const Series1<T>& u_nk = sol.u_star[static_cast<size_t>(n + problem.k)];
        Series1<T> d = truncate(moment_derivative(u_n, problem.m2, problem.p), sol.nz);
        Series1<T> row =
            series_sub(series_sub(truncate(u_nk, sol.nz), series_mul(a, d)),
                       detail::f_star_row(problem, n, sol.nz));
        int v = std::min(u_nk.valid(), u_n.valid() - problem.p);
        row.set_valid(v);
        res.rows.push_back(std::move(row));
    }
    return res;
}

/// True when every residual row vanishes through its valid order.
template <class T>
bool residual_is_zero(const Series2<T>& res) {
    for (const auto& row : res.rows)
        for (int p = 0; p <= row.valid(); ++p)
            if (row[p] != T(0)) return false;
    return true;
}

}  // namespace mpde
