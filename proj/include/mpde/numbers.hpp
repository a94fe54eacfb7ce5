#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <complex>
#include <string>

namespace mpde {

/// Exact arbitrary-precision rational.
using Rational = boost::multiprecision::cpp_rational;
/// 50-significant-digit binary float.  All Gamma-valued tables live here.
using Real = boost::multiprecision::cpp_bin_float_50;
/// 50-digit complex, used where double cancellation would be fatal.
using CReal = boost::multiprecision::cpp_complex_50;

using BigInt = boost::multiprecision::cpp_int;

inline Real to_real(const Rational& q) { return Real(q); }
inline Real to_real(const Real& x) { return x; }
inline Real to_real(double x) { return Real(x); }

inline double to_double(const Rational& q) { return static_cast<double>(q); }
inline double to_double(const Real& x) { return static_cast<double>(x); }
inline double to_double(double x) { return x; }

inline std::complex<double> to_complex(const Rational& q) { return {to_double(q), 0.0}; }
inline std::complex<double> to_complex(const Real& x) { return {to_double(x), 0.0}; }
inline std::complex<double> to_complex(double x) { return {x, 0.0}; }
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }
inline std::complex<double> to_complex(const CReal& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline Real real_gamma(const Real& x) { return boost::math::tgamma(x); }
inline Real real_lgamma(const Real& x) { return boost::math::lgamma(x); }

/// Exact p! as a big integer.
inline BigInt factorial_int(int p) {
    BigInt f = 1;
    for (int i = 2; i <= p; ++i) f *= i;
    return f;
}

/// Decimal rendering used by the JSON writers: full 50-digit precision,
/// locale-independent, deterministic.
inline std::string real_to_string(const Real& x) {
    return x.str(50, std::ios_base::scientific);
}

inline std::string rational_to_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace mpde
