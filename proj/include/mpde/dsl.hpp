#pragma once

#include "mpde/errors.hpp"
#include "mpde/numbers.hpp"
#include "mpde/sequences.hpp"
#include "mpde/solver.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace mpde {

/// Expression tree for the DSL: rational constants, the variables t and z,
/// the constant pi (angle-valued options only), and + - * / ^ neg.
struct Expr {
    enum class Kind { Number, Var, Pi, Add, Sub, Mul, Div, Pow, Neg };
    Kind kind = Kind::Number;
    Rational value;   // Number
    char var = 0;     // 't' or 'z'
    int exponent = 0; // Pow
    std::shared_ptr<const Expr> lhs, rhs;
    int line = 0, column = 0;
};
using ExprPtr = std::shared_ptr<const Expr>;

struct MomentSpec {
    enum class Kind { Gevrey, QFact, Product };
    Kind kind = Kind::Gevrey;
    Rational arg = 1;
    std::shared_ptr<const MomentSpec> lhs, rhs;

    MomentSequence build() const;
    /// Claimed order s relative to the Gevrey scale M_p = p!.
    Rational order() const;
    std::string print() const;
};

struct PipelineOptions {
    int nt = 24;
    int nz = -1;    // -1: required z budget plus headroom
    int qiters = -1;
    Rational rprime{1, 10};
    Rational zpoint{0};
    Rational tpoint{1, 10};
    Rational radius{1, 2};
    double direction = 0.0;
    std::optional<double> alpha;   // summation kernel override
    ExprPtr direction_expr;        // retained for canonical printing
    ExprPtr alpha_expr;
};

/// Parsed problem file: the raw fields plus source positions for the
/// constraint diagnostics, expandable into an exact CauchyProblem.
struct ProblemFile {
    int k = 0;
    int p = 0;
    MomentSpec m1, m2;
    std::optional<Rational> s1_override, s2_override;
    ExprPtr a;
    std::map<int, ExprPtr> phi;
    ExprPtr f;  // null means 0
    PipelineOptions options;

    // positions for diagnostics
    int pos_line = 1, pos_col = 1;        // problem block
    int p_line = 1, p_col = 1;            // "p = ..." entry
    int a_line = 1, a_col = 1;            // "a = ..." entry

    double s1() const;
    double s2() const;

    /// Expand the rational-function data to an exact truncated problem.
    CauchyProblem<Rational> expand(int nt, int nz) const;

    /// Canonical rendering; reparsing it reproduces the same problem.
    std::string pretty_print() const;
};

/// Parse a problem file.  Total: every failure throws ParseError with a
/// line/column position, including the constraint checks (k < p, a(0) != 0,
/// contiguous phi data).
ProblemFile parse_problem(const std::string& text);

std::string print_expr(const ExprPtr& e);

/// Parse a standalone moment-sequence spec like "gevrey(1/2)" (used by the
/// sequence-audit CLI).
MomentSpec parse_moment_spec_text(const std::string& text);

}  // namespace mpde
