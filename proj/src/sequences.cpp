#include "mpde/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace mpde {

namespace {

constexpr int kMaxIndexCap = 2'000'000;

Rational rational_pow(const Rational& base, unsigned e) {
    Rational r = 1;
    Rational b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

bool is_positive_integer(const Rational& q) {
    return q > 0 && denominator(q) == 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// StronglyRegularSequence

struct StronglyRegularSequence::Impl {
    Kind kind;
    Rational param;                                   // Gevrey alpha or Power exponent s
    std::shared_ptr<const Impl> base;                 // Power
    std::vector<Real> table;                          // Custom
    std::vector<Rational> exact_table;                // Custom with rational entries
    bool exact = false;

    mutable std::mutex mu;
    mutable std::vector<Real> memo;
    mutable std::vector<Rational> exact_memo;

    Real value(int p) const;
    Rational exact_value(int p) const;
    double log_value(int p) const;
    int max_index() const;
};

Real StronglyRegularSequence::Impl::value(int p) const {
    if (p < 0) throw InvalidParameterError("sequence index must be nonnegative");
    switch (kind) {
        case Kind::Gevrey: {
            std::lock_guard<std::mutex> lock(mu);
            while (static_cast<int>(memo.size()) <= p) {
                int n = static_cast<int>(memo.size());
                if (n == 0) {
                    memo.push_back(Real(1));
                } else {
                    // M_n = M_{n-1} * n^alpha
                    memo.push_back(memo.back() * pow(Real(n), Real(param)));
                }
            }
            return memo[p];
        }
        case Kind::Power:
            return pow(base->value(p), Real(param));
        case Kind::Custom:
            if (p >= static_cast<int>(table.size()))
                throw TruncationError("custom sequence table has no entry for p=" + std::to_string(p));
            return table[p];
    }
    throw Error("unreachable");
}

Rational StronglyRegularSequence::Impl::exact_value(int p) const {
    if (!exact) throw Error("sequence has no exact rational values");
    switch (kind) {
        case Kind::Gevrey: {
            std::lock_guard<std::mutex> lock(mu);
            while (static_cast<int>(exact_memo.size()) <= p) {
                int n = static_cast<int>(exact_memo.size());
                if (n == 0) {
                    exact_memo.push_back(Rational(1));
                } else {
                    exact_memo.push_back(exact_memo.back() *
                                         rational_pow(Rational(n), static_cast<unsigned>(numerator(param))));
                }
            }
            return exact_memo[p];
        }
        case Kind::Power:
            return rational_pow(base->exact_value(p), static_cast<unsigned>(numerator(param)));
        case Kind::Custom:
            if (p >= static_cast<int>(exact_table.size()))
                throw TruncationError("custom sequence table has no entry for p=" + std::to_string(p));
            return exact_table[p];
    }
    throw Error("unreachable");
}

double StronglyRegularSequence::Impl::log_value(int p) const {
    switch (kind) {
        case Kind::Gevrey:
            return to_double(Real(param)) * std::lgamma(static_cast<double>(p) + 1.0);
        case Kind::Power:
            return to_double(Real(param)) * base->log_value(p);
        case Kind::Custom:
            return to_double(log(value(p)));
    }
    throw Error("unreachable");
}

int StronglyRegularSequence::Impl::max_index() const {
    if (kind == Kind::Custom)
        return static_cast<int>((exact ? exact_table.size() : table.size())) - 1;
    if (kind == Kind::Power) return base->max_index();
    return kMaxIndexCap;
}

StronglyRegularSequence::StronglyRegularSequence(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

StronglyRegularSequence StronglyRegularSequence::gevrey(const Rational& alpha) {
    if (alpha <= 0) throw InvalidParameterError("gevrey order must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Gevrey;
    impl->param = alpha;
    impl->exact = is_positive_integer(alpha);
    return StronglyRegularSequence(impl);
}

StronglyRegularSequence StronglyRegularSequence::power(const StronglyRegularSequence& base,
                                                       const Rational& s) {
    if (s <= 0) throw InvalidParameterError("power exponent must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Power;
    impl->param = s;
    impl->base = base.impl_;
    impl->exact = base.exact() && is_positive_integer(s);
    return StronglyRegularSequence(impl);
}

StronglyRegularSequence StronglyRegularSequence::custom(std::vector<Real> table) {
    if (table.empty() || table[0] != 1)
        throw InvalidParameterError("custom sequence must start with M_0 = 1");
    for (const Real& v : table)
        if (v <= 0) throw InvalidParameterError("custom sequence entries must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Custom;
    impl->table = std::move(table);
    return StronglyRegularSequence(impl);
}

StronglyRegularSequence StronglyRegularSequence::custom_exact(std::vector<Rational> table) {
    if (table.empty() || table[0] != 1)
        throw InvalidParameterError("custom sequence must start with M_0 = 1");
    std::vector<Real> real_table;
    real_table.reserve(table.size());
    for (const Rational& v : table) {
        if (v <= 0) throw InvalidParameterError("custom sequence entries must be positive");
        real_table.push_back(to_real(v));
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Custom;
    impl->table = std::move(real_table);
    impl->exact_table = std::move(table);
    impl->exact = true;
    return StronglyRegularSequence(impl);
}

StronglyRegularSequence::Kind StronglyRegularSequence::kind() const { return impl_->kind; }
Real StronglyRegularSequence::value(int p) const { return impl_->value(p); }
double StronglyRegularSequence::log_value(int p) const { return impl_->log_value(p); }
bool StronglyRegularSequence::exact() const { return impl_->exact; }
Rational StronglyRegularSequence::exact_value(int p) const { return impl_->exact_value(p); }
int StronglyRegularSequence::max_index() const { return impl_->max_index(); }

std::string StronglyRegularSequence::describe() const {
    switch (impl_->kind) {
        case Kind::Gevrey:
            return "gevrey(" + impl_->param.str() + ")";
        case Kind::Power:
            return "power(" + StronglyRegularSequence(impl_->base).describe() + "," + impl_->param.str() + ")";
        case Kind::Custom:
            return "custom[" + std::to_string(impl_->table.size()) + "]";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// MomentSequence

struct MomentSequence::Impl {
    Kind kind;
    Rational param;                      // alpha or q
    std::shared_ptr<const Impl> lhs, rhs;
    std::vector<Real> table;
    std::vector<Rational> exact_table;
    bool exact = false;
    std::optional<ClaimedOrder> claimed;

    mutable std::mutex mu;
    mutable std::vector<Real> memo;
    mutable std::vector<Rational> exact_memo;

    Impl() = default;
    Impl(const Impl& other)
        : kind(other.kind),
          param(other.param),
          lhs(other.lhs),
          rhs(other.rhs),
          table(other.table),
          exact_table(other.exact_table),
          exact(other.exact),
          claimed(other.claimed) {}

    Real value(int p) const;
    Rational exact_value(int p) const;
};

Real MomentSequence::Impl::value(int p) const {
    if (p < 0) throw InvalidParameterError("moment index must be nonnegative");
    switch (kind) {
        case Kind::GevreyMoments:
            return real_gamma(Real(1) + Real(param) * p);
        case Kind::QFactorial:
            return to_real(exact_value(p));
        case Kind::Product:
            return lhs->value(p) * rhs->value(p);
        case Kind::Custom:
            if (p >= static_cast<int>(table.size()))
                throw TruncationError("custom moment table has no entry for p=" + std::to_string(p));
            return table[p];
    }
    throw Error("unreachable");
}

Rational MomentSequence::Impl::exact_value(int p) const {
    if (!exact) throw Error("moment sequence has no exact rational values");
    switch (kind) {
        case Kind::GevreyMoments: {
            // alpha integer: m(p) = (alpha p)!
            std::lock_guard<std::mutex> lock(mu);
            int a = static_cast<int>(numerator(param));
            while (static_cast<int>(exact_memo.size()) <= p) {
                int n = static_cast<int>(exact_memo.size());
                if (n == 0) {
                    exact_memo.push_back(Rational(1));
                } else {
                    Rational step = 1;
                    for (int i = a * (n - 1) + 1; i <= a * n; ++i) step *= i;
                    exact_memo.push_back(exact_memo.back() * step);
                }
            }
            return exact_memo[p];
        }
        case Kind::QFactorial: {
            std::lock_guard<std::mutex> lock(mu);
            while (static_cast<int>(exact_memo.size()) <= p) {
                int n = static_cast<int>(exact_memo.size());
                if (n == 0) {
                    exact_memo.push_back(Rational(1));
                } else {
                    // [n]_q = 1 + q + ... + q^{n-1}
                    Rational bracket = 0;
                    Rational qpow = 1;
                    for (int j = 0; j < n; ++j) {
                        bracket += qpow;
                        qpow *= param;
                    }
                    exact_memo.push_back(exact_memo.back() * bracket);
                }
            }
            return exact_memo[p];
        }
        case Kind::Product:
            return lhs->exact_value(p) * rhs->exact_value(p);
        case Kind::Custom:
            if (p >= static_cast<int>(exact_table.size()))
                throw TruncationError("custom moment table has no entry for p=" + std::to_string(p));
            return exact_table[p];
    }
    throw Error("unreachable");
}

MomentSequence::MomentSequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

MomentSequence MomentSequence::gevrey_moments(const Rational& alpha) {
    if (alpha <= 0) throw InvalidParameterError("gevrey moment order must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::GevreyMoments;
    impl->param = alpha;
    impl->exact = is_positive_integer(alpha);
    impl->claimed = ClaimedOrder{StronglyRegularSequence::gevrey(1), to_double(alpha)};
    return MomentSequence(impl);
}

MomentSequence MomentSequence::q_factorial(const Rational& q) {
    if (!(q > 0 && q < 1)) throw InvalidParameterError("q must lie in (0,1)");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::QFactorial;
    impl->param = q;
    impl->exact = true;
    return MomentSequence(impl);
}

MomentSequence MomentSequence::product(const MomentSequence& m1, const MomentSequence& m2) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Product;
    impl->lhs = m1.impl_;
    impl->rhs = m2.impl_;
    impl->exact = m1.exact() && m2.exact();
    // Orders add when both factors claim one against a Gevrey(1) base.
    const auto& c1 = m1.claimed_order();
    const auto& c2 = m2.claimed_order();
    if (c1 && c2 && c1->base.kind() == StronglyRegularSequence::Kind::Gevrey &&
        c2->base.kind() == StronglyRegularSequence::Kind::Gevrey) {
        impl->claimed = ClaimedOrder{c1->base, c1->s + c2->s};
    }
    return MomentSequence(impl);
}

MomentSequence MomentSequence::custom(std::vector<Real> table) {
    for (const Real& v : table)
        if (v <= 0) throw InvalidParameterError("moment values must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Custom;
    impl->table = std::move(table);
    return MomentSequence(impl);
}

MomentSequence MomentSequence::custom_exact(std::vector<Rational> table) {
    std::vector<Real> real_table;
    real_table.reserve(table.size());
    for (const Rational& v : table) {
        if (v <= 0) throw InvalidParameterError("moment values must be positive");
        real_table.push_back(to_real(v));
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Custom;
    impl->table = std::move(real_table);
    impl->exact_table = std::move(table);
    impl->exact = true;
    return MomentSequence(impl);
}

MomentSequence::Kind MomentSequence::kind() const { return impl_->kind; }
Real MomentSequence::value(int p) const { return impl_->value(p); }
bool MomentSequence::exact() const { return impl_->exact; }
Rational MomentSequence::exact_value(int p) const { return impl_->exact_value(p); }
const std::optional<MomentSequence::ClaimedOrder>& MomentSequence::claimed_order() const {
    return impl_->claimed;
}

double MomentSequence::log_value(int p) const {
    if (impl_->kind == Kind::GevreyMoments)
        return std::lgamma(1.0 + to_double(Real(impl_->param)) * p);
    return to_double(log(value(p)));
}

MomentSequence MomentSequence::with_claimed_order(const StronglyRegularSequence& base,
                                                 double s) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->claimed = ClaimedOrder{base, s};
    return MomentSequence(impl);
}

std::string MomentSequence::describe() const {
    switch (impl_->kind) {
        case Kind::GevreyMoments:
            return "gevrey(" + impl_->param.str() + ")";
        case Kind::QFactorial:
            return "qfact(" + impl_->param.str() + ")";
        case Kind::Product:
            return "product(" + MomentSequence(impl_->lhs).describe() + "," +
                   MomentSequence(impl_->rhs).describe() + ")";
        case Kind::Custom:
            return "custom[" + std::to_string(impl_->table.size()) + "]";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Prefix audits

CheckReport check_lc(const StronglyRegularSequence& seq, int prefix) {
    if (prefix < 2) throw InvalidParameterError("lc check needs prefix >= 2");
    CheckReport r;
    r.property = "lc";
    r.prefix = prefix;
    r.holds = true;
    r.witness = 1.0;
    if (seq.exact()) {
        for (int p = 1; p + 1 <= prefix; ++p) {
            if (seq.exact_value(p) * seq.exact_value(p) >
                seq.exact_value(p - 1) * seq.exact_value(p + 1)) {
                r.holds = false;
                r.violation_index = p;
                break;
            }
        }
    } else {
        for (int p = 1; p + 1 <= prefix; ++p) {
            if (seq.value(p) * seq.value(p) > seq.value(p - 1) * seq.value(p + 1)) {
                r.holds = false;
                r.violation_index = p;
                break;
            }
        }
    }
    return r;
}

CheckReport check_mg(const StronglyRegularSequence& seq, int prefix) {
    if (prefix < 2) throw InvalidParameterError("mg check needs prefix >= 2");
    CheckReport r;
    r.property = "mg";
    r.prefix = prefix;
    r.holds = true;
    Real a1 = 0;
    for (int p = 0; p <= prefix; ++p) {
        for (int q = p; p + q <= prefix; ++q) {
            if (p + q == 0) continue;
            Real ratio = seq.value(p + q) / (seq.value(p) * seq.value(q));
            Real root = pow(ratio, Real(1) / (p + q));
            a1 = std::max(a1, root, [](const Real& x, const Real& y) { return x < y; });
        }
    }
    r.witness = to_double(a1);
    return r;
}

CheckReport check_snq(const StronglyRegularSequence& seq, int prefix) {
    if (prefix < 2) throw InvalidParameterError("snq check needs prefix >= 2");
    CheckReport r;
    r.property = "snq";
    r.prefix = prefix;
    r.holds = true;
    r.prefix_evidence_only = true;  // the condition is an infinite sum
    // Partial sums truncated at the prefix: tail from q=p to prefix-1.
    Real a2 = 0;
    Real tail = 0;
    std::vector<Real> terms(prefix);
    for (int q = 0; q < prefix; ++q)
        terms[q] = seq.value(q) / ((q + 1) * seq.value(q + 1));
    for (int p = prefix - 1; p >= 0; --p) {
        tail += terms[p];
        Real bound = seq.value(p) / seq.value(p + 1);
        a2 = std::max(a2, tail / bound, [](const Real& x, const Real& y) { return x < y; });
    }
    r.witness = to_double(a2);
    return r;
}

CheckReport check_order(const MomentSequence& m, int prefix) {
    if (!m.claimed_order()) throw ConfigError("moment sequence carries no claimed order");
    if (prefix < 2) throw InvalidParameterError("order check needs prefix >= 2");
    const auto& claim = *m.claimed_order();
    CheckReport r;
    r.property = "order";
    r.prefix = prefix;
    r.holds = true;
    r.prefix_evidence_only = true;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int p = 1; p <= prefix; ++p) {
        // (m(p) / M_p^s)^{1/p} computed in logs
        double lr = (m.log_value(p) - claim.s * claim.base.log_value(p)) / p;
        double ratio = std::exp(lr);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    if (!(lo > 0.0) || !std::isfinite(hi)) r.holds = false;
    r.witness = lo;
    r.witness_hi = hi;
    return r;
}

double growth_function_M(const StronglyRegularSequence& seq, double t) {
    if (t < 0) throw InvalidParameterError("growth function argument must be nonnegative");
    if (t == 0) return 0.0;
    double logt = std::log(t);
    double best = 0.0;  // p = 0 term
    double prev = 0.0;
    int decreases = 0;
    int cap = seq.max_index();
    for (int p = 1; p <= cap; ++p) {
        double cur = p * logt - seq.log_value(p);
        best = std::max(best, cur);
        if (cur < prev) {
            // lc makes p -> t^p/M_p unimodal; stop shortly after the peak
            if (++decreases >= 3) break;
        } else {
            decreases = 0;
        }
        prev = cur;
    }
    return best;
}

double omega_estimate(const StronglyRegularSequence& seq, int P) {
    if (P < 10) throw InvalidParameterError("omega estimate needs P >= 10");
    return (seq.log_value(P + 1) - seq.log_value(P)) / std::log(static_cast<double>(P));
}

}  // namespace mpde
