#pragma once

#include "mpde/errors.hpp"
#include "mpde/numbers.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mpde {

/// A positive sequence M_0=1, M_1, ... used as a weight scale: Gevrey (p!)^a,
/// a power M_p^s of another sequence, or a user table.  Values are memoized;
/// tables are safe for concurrent readers.
class StronglyRegularSequence {
public:
    enum class Kind { Gevrey, Power, Custom };

    static StronglyRegularSequence gevrey(const Rational& alpha);
    static StronglyRegularSequence power(const StronglyRegularSequence& base, const Rational& s);
    static StronglyRegularSequence custom(std::vector<Real> table);
    static StronglyRegularSequence custom_exact(std::vector<Rational> table);

    Kind kind() const;
    Real value(int p) const;
    /// log M_p, computed without forming M_p when a closed form exists.
    double log_value(int p) const;

    /// True when exact rational values are available (integer Gevrey order,
    /// integer powers of exact bases, rational tables).
    bool exact() const;
    Rational exact_value(int p) const;

    /// Largest index for Custom tables, or a large cap otherwise.
    int max_index() const;

    std::string describe() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit StronglyRegularSequence(std::shared_ptr<const Impl> impl);
};

/// Moment sequence m(p) > 0 with provenance.  GevreyMoments(alpha) is
/// m(p) = Gamma(1 + alpha p); QFactorial(q) is [p]!_q; Product multiplies
/// two moment sequences exactly.
class MomentSequence {
public:
    enum class Kind { GevreyMoments, QFactorial, Product, Custom };

    struct ClaimedOrder {
        StronglyRegularSequence base;
        double s;
    };

    static MomentSequence gevrey_moments(const Rational& alpha);
    static MomentSequence q_factorial(const Rational& q);
    static MomentSequence product(const MomentSequence& m1, const MomentSequence& m2);
    static MomentSequence custom(std::vector<Real> table);
    static MomentSequence custom_exact(std::vector<Rational> table);

    Kind kind() const;
    Real value(int p) const;
    double log_value(int p) const;

    bool exact() const;
    Rational exact_value(int p) const;

    const std::optional<ClaimedOrder>& claimed_order() const;
    MomentSequence with_claimed_order(const StronglyRegularSequence& base, double s) const;

    std::string describe() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit MomentSequence(std::shared_ptr<const Impl> impl);
};

/// Helper for templated series code: fetch m(p) in the coefficient field.
template <class T>
T moment_as(const MomentSequence& m, int p);

template <>
inline Real moment_as<Real>(const MomentSequence& m, int p) { return m.value(p); }
template <>
inline double moment_as<double>(const MomentSequence& m, int p) { return to_double(m.value(p)); }
template <>
inline Rational moment_as<Rational>(const MomentSequence& m, int p) { return m.exact_value(p); }

/// Result of a prefix audit of (lc) / (mg) / (snq) / the order bounds.
/// snq (and any check on a truncated sum) is prefix evidence, not a proof;
/// prefix_evidence_only records that.
struct CheckReport {
    std::string property;
    int prefix = 0;
    bool holds = false;
    double witness = 0.0;       // smallest admissible constant found on the prefix
    double witness_hi = 0.0;    // second constant for two-sided bounds (order check)
    std::optional<int> violation_index;
    bool prefix_evidence_only = false;
};

CheckReport check_lc(const StronglyRegularSequence& seq, int prefix);
CheckReport check_mg(const StronglyRegularSequence& seq, int prefix);
CheckReport check_snq(const StronglyRegularSequence& seq, int prefix);

/// Audits m(p) against A3^p M_p^s <= m(p) <= A4^p M_p^s for the claimed
/// order; witness/witness_hi report the per-p extremes of (m(p)/M_p^s)^{1/p}.
CheckReport check_order(const MomentSequence& m, int prefix);

/// M(t) = sup_p log(t^p / M_p), by unimodal scan; M(0) = 0.
double growth_function_M(const StronglyRegularSequence& seq, double t);

/// Finite-P estimate of the index omega(M): log(M_{P+1}/M_P)/log(P).
double omega_estimate(const StronglyRegularSequence& seq, int P);

}  // namespace mpde
