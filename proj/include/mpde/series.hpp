#pragma once

#include "mpde/errors.hpp"
#include "mpde/numbers.hpp"
#include "mpde/sequences.hpp"

#include <complex>
#include <vector>

namespace mpde {

/// Truncated power series with exact-or-high-precision coefficients.
/// `order()` is the truncation order N (coefficients c_0..c_N are stored);
/// `valid()` tracks through how many orders the coefficients are actually
/// trustworthy after truncating operations (moment derivatives eat orders,
/// products cap at the weaker factor).  Immutable-by-convention value type.
template <class T>
class Series1 {
public:
    Series1() : coeff_(1, T(0)), valid_(0) {}
    explicit Series1(std::vector<T> coeff)
        : coeff_(std::move(coeff)), valid_(static_cast<int>(coeff_.size()) - 1) {
        if (coeff_.empty()) coeff_.assign(1, T(0));
    }

    static Series1 zero(int order) {
        Series1 s;
        s.coeff_.assign(static_cast<size_t>(order) + 1, T(0));
        s.valid_ = order;
        return s;
    }

    static Series1 constant(const T& c, int order) {
        Series1 s = zero(order);
        s.coeff_[0] = c;
        return s;
    }

    static Series1 monomial(int degree, const T& c, int order) {
        if (degree > order) throw TruncationError("monomial degree exceeds truncation order");
        Series1 s = zero(order);
        s.coeff_[degree] = c;
        return s;
    }

    int order() const { return static_cast<int>(coeff_.size()) - 1; }
    int valid() const { return valid_; }
    void set_valid(int v) { valid_ = std::min(v, order()); }

    const T& operator[](int p) const { return coeff_[p]; }
    T& at(int p) { return coeff_[p]; }
    const std::vector<T>& coefficients() const { return coeff_; }

    bool is_zero() const {
        for (const T& c : coeff_)
            if (c != T(0)) return false;
        return true;
    }

    friend bool operator==(const Series1& a, const Series1& b) {
        return a.coeff_ == b.coeff_;
    }

private:
    std::vector<T> coeff_;
    int valid_;
};

template <class T>
Series1<T> truncate(const Series1<T>& f, int order) {
    std::vector<T> c(static_cast<size_t>(order) + 1, T(0));
    for (int p = 0; p <= std::min(order, f.order()); ++p) c[p] = f[p];
    Series1<T> r(std::move(c));
    r.set_valid(std::min(order, f.valid()));
    return r;
}

template <class T>
Series1<T> series_add(const Series1<T>& f, const Series1<T>& g) {
    int order = std::min(f.order(), g.order());
    Series1<T> r = Series1<T>::zero(order);
    for (int p = 0; p <= order; ++p) r.at(p) = f[p] + g[p];
    r.set_valid(std::min(f.valid(), g.valid()));
    return r;
}

template <class T>
Series1<T> series_sub(const Series1<T>& f, const Series1<T>& g) {
    int order = std::min(f.order(), g.order());
    Series1<T> r = Series1<T>::zero(order);
    for (int p = 0; p <= order; ++p) r.at(p) = f[p] - g[p];
    r.set_valid(std::min(f.valid(), g.valid()));
    return r;
}

template <class T>
Series1<T> series_scale(const Series1<T>& f, const T& c) {
    Series1<T> r = f;
    for (int p = 0; p <= r.order(); ++p) r.at(p) = f[p] * c;
    return r;
}

/// Truncated Cauchy product; the result order is the weaker of the two.
template <class T>
Series1<T> series_mul(const Series1<T>& f, const Series1<T>& g) {
    int order = std::min(f.order(), g.order());
    Series1<T> r = Series1<T>::zero(order);
    for (int i = 0; i <= order; ++i) {
        if (f[i] == T(0)) continue;
        for (int j = 0; i + j <= order; ++j) {
            if (g[j] == T(0)) continue;
            r.at(i + j) += f[i] * g[j];
        }
    }
    r.set_valid(std::min(f.valid(), g.valid()));
    return r;
}

/// Power-series reciprocal to the requested order; c_0 must be nonzero.
/// Division by a small-but-nonzero constant term is allowed; conditioning is
/// the caller's concern.
template <class T>
Series1<T> series_reciprocal(const Series1<T>& f, int order) {
    if (f[0] == T(0)) throw NonInvertibleError("series has zero constant term");
    Series1<T> r = Series1<T>::zero(order);
    T inv0 = T(1) / f[0];
    r.at(0) = inv0;
    for (int n = 1; n <= order; ++n) {
        T acc = T(0);
        for (int j = 1; j <= std::min(n, f.order()); ++j) acc += f[j] * r[n - j];
        r.at(n) = -inv0 * acc;
    }
    r.set_valid(std::min(order, f.valid()));
    return r;
}

/// Horner evaluation over the coefficient field.
template <class T>
T series_eval(const Series1<T>& f, const T& z) {
    T acc = T(0);
    for (int p = f.order(); p >= 0; --p) acc = acc * z + f[p];
    return acc;
}

/// Horner evaluation at a complex point (coefficients demoted to double).
template <class T>
std::complex<double> series_eval_c(const Series1<T>& f, const std::complex<double>& z) {
    std::complex<double> acc = 0.0;
    for (int p = f.order(); p >= 0; --p) acc = acc * z + to_complex(f[p]);
    return acc;
}

/// Truncated weighted l1 norm: sum |c_p| r^p, p <= valid().
template <class T>
Real norm_r(const Series1<T>& f, const Real& r) {
    if (r < 0) throw InvalidParameterError("norm radius must be nonnegative");
    Real acc = 0;
    Real rp = 1;
    for (int p = 0; p <= f.valid(); ++p) {
        acc += abs(to_real(f[p])) * rp;
        rp *= r;
    }
    return acc;
}

/// Coefficient-shift moment derivative: with f = sum (a_p/m(p)) z^p the
/// result is sum (a_{p+n}/m(p)) z^p, i.e. c_p <- c_{p+n} m(p+n)/m(p).
template <class T>
Series1<T> moment_derivative(const Series1<T>& f, const MomentSequence& m, int n = 1) {
    if (n < 0) throw InvalidParameterError("derivative order must be nonnegative");
    if (n > f.order())
        throw TruncationError("moment derivative of order " + std::to_string(n) +
                              " underflows truncation order " + std::to_string(f.order()));
    int order = f.order() - n;
    Series1<T> r = Series1<T>::zero(order);
    for (int p = 0; p <= order; ++p)
        r.at(p) = f[p + n] * moment_as<T>(m, p + n) / moment_as<T>(m, p);
    r.set_valid(f.valid() - n);
    return r;
}

/// Inverse operator, applied k times via the monomial rule
/// z^j -> (m(j)/m(j+1)) z^{j+1}.  Output truncation grows by k.
template <class T>
Series1<T> moment_antiderivative(const Series1<T>& f, const MomentSequence& m, int k = 1) {
    if (k < 0) throw InvalidParameterError("antiderivative order must be nonnegative");
    int order = f.order() + k;
    Series1<T> r = Series1<T>::zero(order);
    for (int p = 0; p <= f.order(); ++p)
        r.at(p + k) = f[p] * moment_as<T>(m, p) / moment_as<T>(m, p + k);
    r.set_valid(std::min(order, f.valid() + k));
    return r;
}

/// Formal moment Borel transform: c_p <- c_p / m(p).
template <class T>
Series1<T> formal_borel(const Series1<T>& f, const MomentSequence& m) {
    Series1<T> r = f;
    for (int p = 0; p <= f.order(); ++p) r.at(p) = f[p] / moment_as<T>(m, p);
    return r;
}

/// Coefficientwise inverse of the formal Borel transform: c_p <- c_p * m(p).
template <class T>
Series1<T> formal_laplace(const Series1<T>& f, const MomentSequence& m) {
    Series1<T> r = f;
    for (int p = 0; p <= f.order(); ++p) r.at(p) = f[p] * moment_as<T>(m, p);
    return r;
}

/// Rectangular (t,z) truncation: rows[n] is the z-series coefficient of t^n.
template <class T>
struct Series2 {
    std::vector<Series1<T>> rows;

    int t_order() const { return static_cast<int>(rows.size()) - 1; }
    int z_order() const { return rows.empty() ? -1 : rows[0].order(); }

    static Series2 zero(int nt, int nz) {
        Series2 s;
        s.rows.assign(static_cast<size_t>(nt) + 1, Series1<T>::zero(nz));
        return s;
    }

    bool is_zero() const {
        for (const auto& row : rows)
            if (!row.is_zero()) return false;
        return true;
    }
};

/// Coefficientwise |f_p| <= g_p comparison on the shared valid range
/// (test utility for majorant-style arguments).
template <class T>
bool majorized_by(const Series1<T>& f, const Series1<T>& g) {
    int n = std::min(f.valid(), g.valid());
    for (int p = 0; p <= n; ++p)
        if (abs(to_real(f[p])) > to_real(g[p])) return false;
    return true;
}

}  // namespace mpde
