#pragma once

#include <complex>
#include <vector>

namespace mpde {

/// Rational [L/M] approximant P/Q with Q(0) = 1, plus its pole data.
struct PadeApproximant {
    std::vector<std::complex<double>> num;       // P, degree <= L
    std::vector<std::complex<double>> den;       // Q, degree <= M, den[0] = 1
    std::vector<std::complex<double>> poles;     // roots of Q
    std::vector<std::complex<double>> residues;  // P(tau)/Q'(tau)
    int L = 0;
    int M = 0;
    bool reduced = false;  // denominator degree was lowered to fix conditioning
};

/// Build the [L/M] Pade approximant from Taylor coefficients c_0..c_{L+M}.
/// The Toeplitz system for Q is solved directly; if it is numerically
/// singular the degree is reduced until it is well posed.
PadeApproximant pade_approximant(const std::vector<std::complex<double>>& c, int L, int M);

std::complex<double> pade_eval(const PadeApproximant& pa, std::complex<double> z);

/// Arguments (radians, in (-pi, pi]) of pole clusters, one representative per
/// cluster, sorted.  Poles with negligible residues (Froissart artifacts) are
/// ignored.
std::vector<double> singular_directions(const PadeApproximant& pa,
                                        double cluster_tol = 0.05,
                                        double residue_floor = 1e-10);

}  // namespace mpde
