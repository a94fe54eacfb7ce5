#include "mpde/dsl.hpp"

#include "mpde/series.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace mpde {

namespace {

struct Token {
    enum class Type { Ident, Number, Sym, End };
    Type type = Type::End;
    std::string text;
    Rational num;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }
    Token next() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space();
        cur_ = Token();
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= text_.size()) {
            cur_.type = Token::Type::End;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            cur_.type = Token::Type::Ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                cur_.text += take();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur_.type = Token::Type::Number;
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits += take();
            if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                take();
                std::string frac;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    frac += take();
                Rational den = 1;
                for (size_t i = 0; i < frac.size(); ++i) den *= 10;
                cur_.num = Rational(BigInt(digits)) + Rational(BigInt(frac)) / den;
                cur_.text = digits + "." + frac;
            } else {
                cur_.num = Rational(BigInt(digits));
                cur_.text = digits;
            }
            return;
        }
        cur_.type = Token::Type::Sym;
        cur_.text = std::string(1, take());
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token cur_;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
}

ExprPtr make_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    MomentSpec parse_spec_only() {
        MomentSpec spec = parse_moment_spec();
        if (lex_.peek().type != Token::Type::End)
            fail(lex_.peek(), "unexpected trailing input after moment spec");
        return spec;
    }

    ProblemFile parse() {
        ProblemFile pf;
        bool saw_problem = false;
        bool saw_k = false, saw_p = false, saw_m1 = false, saw_m2 = false, saw_a = false;
        while (lex_.peek().type != Token::Type::End) {
            Token head = expect_ident();
            if (head.text == "problem") {
                saw_problem = true;
                pf.pos_line = head.line;
                pf.pos_col = head.col;
                expect_sym("{");
                while (!try_sym("}")) {
                    Token key = expect_ident();
                    if (key.text == "k") {
                        pf.k = parse_int_entry();
                        saw_k = true;
                    } else if (key.text == "p") {
                        pf.p_line = key.line;
                        pf.p_col = key.col;
                        pf.p = parse_int_entry();
                        saw_p = true;
                    } else if (key.text == "m1") {
                        expect_sym("=");
                        pf.m1 = parse_moment_spec();
                        expect_sym(";");
                        saw_m1 = true;
                    } else if (key.text == "m2") {
                        expect_sym("=");
                        pf.m2 = parse_moment_spec();
                        expect_sym(";");
                        saw_m2 = true;
                    } else if (key.text == "s1") {
                        pf.s1_override = parse_rational_entry();
                    } else if (key.text == "s2") {
                        pf.s2_override = parse_rational_entry();
                    } else if (key.text == "a") {
                        pf.a_line = key.line;
                        pf.a_col = key.col;
                        expect_sym("=");
                        pf.a = parse_expr("z");
                        expect_sym(";");
                        saw_a = true;
                    } else if (key.text == "f") {
                        expect_sym("=");
                        pf.f = parse_expr("tz");
                        expect_sym(";");
                    } else if (key.text == "phi") {
                        expect_sym("[");
                        Token idx = expect_number();
                        int j = rational_to_int(idx);
                        expect_sym("]");
                        expect_sym("=");
                        pf.phi[j] = parse_expr("z");
                        expect_sym(";");
                    } else {
                        fail(key, "unknown problem key '" + key.text + "'");
                    }
                }
            } else if (head.text == "options") {
                expect_sym("{");
                while (!try_sym("}")) {
                    Token key = expect_ident();
                    if (key.text == "nt") {
                        pf.options.nt = parse_int_entry();
                    } else if (key.text == "nz") {
                        pf.options.nz = parse_int_entry();
                    } else if (key.text == "qiters") {
                        pf.options.qiters = parse_int_entry();
                    } else if (key.text == "rprime") {
                        pf.options.rprime = parse_rational_entry();
                    } else if (key.text == "zpoint") {
                        pf.options.zpoint = parse_rational_entry();
                    } else if (key.text == "tpoint") {
                        pf.options.tpoint = parse_rational_entry();
                    } else if (key.text == "radius") {
                        pf.options.radius = parse_rational_entry();
                    } else if (key.text == "direction") {
                        expect_sym("=");
                        pf.options.direction_expr = parse_expr("", true);
                        expect_sym(";");
                        pf.options.direction = eval_double(pf.options.direction_expr);
                    } else if (key.text == "alpha") {
                        expect_sym("=");
                        pf.options.alpha_expr = parse_expr("", true);
                        expect_sym(";");
                        pf.options.alpha = eval_double(pf.options.alpha_expr);
                    } else {
                        fail(key, "unknown options key '" + key.text + "'");
                    }
                }
            } else {
                fail(head, "expected a 'problem' or 'options' section");
            }
        }
        if (!saw_problem) throw ParseError(1, 1, "missing problem section");
        Token at{Token::Type::End, "", 0, pf.pos_line, pf.pos_col};
        if (!saw_k) fail(at, "missing k");
        if (!saw_p) fail(at, "missing p");
        if (!saw_m1) fail(at, "missing m1");
        if (!saw_m2) fail(at, "missing m2");
        if (!saw_a) fail(at, "missing a");
        if (pf.k < 1) throw ParseError(pf.p_line, pf.p_col, "k must be >= 1");
        if (pf.k >= pf.p) throw ParseError(pf.p_line, pf.p_col, "k<p required");
        for (int j = 0; j < pf.k; ++j)
            if (!pf.phi.count(j))
                throw ParseError(pf.pos_line, pf.pos_col,
                                 "missing phi[" + std::to_string(j) + "]");
        for (const auto& [j, e] : pf.phi)
            if (j < 0 || j >= pf.k)
                throw ParseError(e->line, e->column,
                                 "phi index " + std::to_string(j) + " outside 0..k-1");
        check_a_nonzero(pf);
        return pf;
    }

    static Rational eval_rational(const ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::Number: return e->value;
            case Expr::Kind::Neg: return -eval_rational(e->lhs);
            case Expr::Kind::Add: return eval_rational(e->lhs) + eval_rational(e->rhs);
            case Expr::Kind::Sub: return eval_rational(e->lhs) - eval_rational(e->rhs);
            case Expr::Kind::Mul: return eval_rational(e->lhs) * eval_rational(e->rhs);
            case Expr::Kind::Div: {
                Rational d = eval_rational(e->rhs);
                if (d == 0) throw ParseError(e->line, e->column, "division by zero");
                return eval_rational(e->lhs) / d;
            }
            case Expr::Kind::Pow: {
                Rational b = eval_rational(e->lhs);
                Rational r = 1;
                for (int i = 0; i < e->exponent; ++i) r *= b;
                return r;
            }
            default:
                throw ParseError(e->line, e->column, "expected a constant expression");
        }
    }

    static double eval_double(const ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::Number: return to_double(e->value);
            case Expr::Kind::Pi: return M_PI;
            case Expr::Kind::Neg: return -eval_double(e->lhs);
            case Expr::Kind::Add: return eval_double(e->lhs) + eval_double(e->rhs);
            case Expr::Kind::Sub: return eval_double(e->lhs) - eval_double(e->rhs);
            case Expr::Kind::Mul: return eval_double(e->lhs) * eval_double(e->rhs);
            case Expr::Kind::Div: return eval_double(e->lhs) / eval_double(e->rhs);
            case Expr::Kind::Pow: return std::pow(eval_double(e->lhs), e->exponent);
            default:
                throw ParseError(e->line, e->column, "expected a constant expression");
        }
    }

private:
    Token expect_ident() {
        Token t = lex_.next();
        if (t.type != Token::Type::Ident) fail(t, "expected an identifier");
        return t;
    }

    Token expect_number() {
        Token t = lex_.next();
        if (t.type != Token::Type::Number) fail(t, "expected a number");
        return t;
    }

    void expect_sym(const std::string& s) {
        Token t = lex_.next();
        if (t.type != Token::Type::Sym || t.text != s)
            fail(t, "expected '" + s + "'");
    }

    bool try_sym(const std::string& s) {
        if (lex_.peek().type == Token::Type::Sym && lex_.peek().text == s) {
            lex_.next();
            return true;
        }
        if (lex_.peek().type == Token::Type::End)
            fail(lex_.peek(), "unexpected end of input, expected '" + s + "'");
        return false;
    }

    static int rational_to_int(const Token& t) {
        if (denominator(t.num) != 1) fail(t, "expected an integer");
        return static_cast<int>(numerator(t.num));
    }

    int parse_int_entry() {
        expect_sym("=");
        bool neg = try_sym("-");
        Token t = expect_number();
        expect_sym(";");
        int v = rational_to_int(t);
        return neg ? -v : v;
    }

    Rational parse_rational_entry() {
        expect_sym("=");
        ExprPtr e = parse_expr("");
        expect_sym(";");
        return eval_rational(e);
    }

    MomentSpec parse_moment_spec() {
        Token name = expect_ident();
        MomentSpec spec;
        if (name.text == "gevrey" || name.text == "qfact") {
            spec.kind = name.text == "gevrey" ? MomentSpec::Kind::Gevrey : MomentSpec::Kind::QFact;
            expect_sym("(");
            ExprPtr e = parse_expr("");
            expect_sym(")");
            spec.arg = eval_rational(e);
            if (spec.kind == MomentSpec::Kind::Gevrey && spec.arg <= 0)
                fail(name, "gevrey order must be positive");
            if (spec.kind == MomentSpec::Kind::QFact && (spec.arg <= 0 || spec.arg >= 1))
                fail(name, "qfact parameter must lie in (0,1)");
        } else if (name.text == "product") {
            spec.kind = MomentSpec::Kind::Product;
            expect_sym("(");
            spec.lhs = std::make_shared<const MomentSpec>(parse_moment_spec());
            expect_sym(",");
            spec.rhs = std::make_shared<const MomentSpec>(parse_moment_spec());
            expect_sym(")");
        } else {
            fail(name, "unknown moment sequence '" + name.text + "'");
        }
        return spec;
    }

    // vars: allowed variable letters; allow_pi: accept the pi constant.
    ExprPtr parse_expr(const std::string& vars, bool allow_pi = false) {
        ExprPtr lhs = parse_term(vars, allow_pi);
        while (lex_.peek().type == Token::Type::Sym &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            Token op = lex_.next();
            ExprPtr rhs = parse_term(vars, allow_pi);
            Expr e;
            e.kind = op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
            e.lhs = lhs;
            e.rhs = rhs;
            e.line = op.line;
            e.column = op.col;
            lhs = make_expr(std::move(e));
        }
        return lhs;
    }

    ExprPtr parse_term(const std::string& vars, bool allow_pi) {
        ExprPtr lhs = parse_factor(vars, allow_pi);
        while (lex_.peek().type == Token::Type::Sym &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            Token op = lex_.next();
            ExprPtr rhs = parse_factor(vars, allow_pi);
            Expr e;
            e.kind = op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
            e.lhs = lhs;
            e.rhs = rhs;
            e.line = op.line;
            e.column = op.col;
            lhs = make_expr(std::move(e));
        }
        return lhs;
    }

    ExprPtr parse_factor(const std::string& vars, bool allow_pi) {
        if (lex_.peek().type == Token::Type::Sym && lex_.peek().text == "-") {
            Token op = lex_.next();
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.lhs = parse_factor(vars, allow_pi);
            e.line = op.line;
            e.column = op.col;
            return make_expr(std::move(e));
        }
        ExprPtr base = parse_base(vars, allow_pi);
        if (lex_.peek().type == Token::Type::Sym && lex_.peek().text == "^") {
            Token op = lex_.next();
            Token exp = expect_number();
            Expr e;
            e.kind = Expr::Kind::Pow;
            e.lhs = base;
            e.exponent = rational_to_int(exp);
            if (e.exponent < 0) fail(exp, "exponent must be nonnegative");
            e.line = op.line;
            e.column = op.col;
            return make_expr(std::move(e));
        }
        return base;
    }

    ExprPtr parse_base(const std::string& vars, bool allow_pi) {
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Number) {
            Token n = lex_.next();
            Expr e;
            e.kind = Expr::Kind::Number;
            e.value = n.num;
            e.line = n.line;
            e.column = n.col;
            return make_expr(std::move(e));
        }
        if (t.type == Token::Type::Ident) {
            Token id = lex_.next();
            if (id.text == "pi") {
                if (!allow_pi) fail(id, "'pi' is not allowed in this expression");
                Expr e;
                e.kind = Expr::Kind::Pi;
                e.line = id.line;
                e.column = id.col;
                return make_expr(std::move(e));
            }
            if (id.text.size() == 1 && vars.find(id.text[0]) != std::string::npos) {
                Expr e;
                e.kind = Expr::Kind::Var;
                e.var = id.text[0];
                e.line = id.line;
                e.column = id.col;
                return make_expr(std::move(e));
            }
            fail(id, "unknown variable '" + id.text + "'");
        }
        if (t.type == Token::Type::Sym && t.text == "(") {
            lex_.next();
            ExprPtr inner = parse_expr(vars, allow_pi);
            expect_sym(")");
            return inner;
        }
        fail(t, "expected a number, variable, or parenthesized expression");
    }

    // a(0) != 0, evaluated exactly on the constant term.
    void check_a_nonzero(const ProblemFile& pf) {
        Rational a0;
        try {
            a0 = eval_at_zero(pf.a);
        } catch (const ParseError&) {
            throw ParseError(pf.a_line, pf.a_col, "a(z) is not analytic at z = 0");
        }
        if (a0 == 0) throw ParseError(pf.a_line, pf.a_col, "a(0) must be nonzero");
    }

    static Rational eval_at_zero(const ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::Number: return e->value;
            case Expr::Kind::Var: return 0;
            case Expr::Kind::Neg: return -eval_at_zero(e->lhs);
            case Expr::Kind::Add: return eval_at_zero(e->lhs) + eval_at_zero(e->rhs);
            case Expr::Kind::Sub: return eval_at_zero(e->lhs) - eval_at_zero(e->rhs);
            case Expr::Kind::Mul: return eval_at_zero(e->lhs) * eval_at_zero(e->rhs);
            case Expr::Kind::Div: {
                Rational d = eval_at_zero(e->rhs);
                if (d == 0) throw ParseError(e->line, e->column, "denominator vanishes at 0");
                return eval_at_zero(e->lhs) / d;
            }
            case Expr::Kind::Pow: {
                Rational b = eval_at_zero(e->lhs);
                Rational r = 1;
                for (int i = 0; i < e->exponent; ++i) r *= b;
                return r;
            }
            default:
                throw ParseError(e->line, e->column, "unexpected constant");
        }
    }

    Lexer lex_;
};

// --- exact expansion ------------------------------------------------------

using ZSeries = Series1<Rational>;

ZSeries expand_z(const ExprPtr& e, int nz) {
    switch (e->kind) {
        case Expr::Kind::Number: return ZSeries::constant(e->value, nz);
        case Expr::Kind::Var: return ZSeries::monomial(1, Rational(1), nz);
        case Expr::Kind::Neg: return series_scale(expand_z(e->lhs, nz), Rational(-1));
        case Expr::Kind::Add: return series_add(expand_z(e->lhs, nz), expand_z(e->rhs, nz));
        case Expr::Kind::Sub: return series_sub(expand_z(e->lhs, nz), expand_z(e->rhs, nz));
        case Expr::Kind::Mul: return series_mul(expand_z(e->lhs, nz), expand_z(e->rhs, nz));
        case Expr::Kind::Div: {
            ZSeries den = expand_z(e->rhs, nz);
            if (den[0] == 0)
                throw ParseError(e->line, e->column, "division by a series vanishing at 0");
            return series_mul(expand_z(e->lhs, nz), series_reciprocal(den, nz));
        }
        case Expr::Kind::Pow: {
            ZSeries r = ZSeries::constant(Rational(1), nz);
            ZSeries b = expand_z(e->lhs, nz);
            for (int i = 0; i < e->exponent; ++i) r = series_mul(r, b);
            return r;
        }
        default:
            throw ParseError(e->line, e->column, "constant not allowed here");
    }
}

// Bivariate helpers: rows are z-series coefficients of powers of t.
using TZSeries = std::vector<ZSeries>;

TZSeries tz_constant(const Rational& c, int nt, int nz) {
    TZSeries s(static_cast<size_t>(nt) + 1, ZSeries::zero(nz));
    s[0] = ZSeries::constant(c, nz);
    return s;
}

TZSeries tz_add(const TZSeries& a, const TZSeries& b, Rational sign) {
    TZSeries r = a;
    for (size_t n = 0; n < r.size(); ++n)
        r[n] = series_add(r[n], series_scale(b[n], sign));
    return r;
}

TZSeries tz_mul(const TZSeries& a, const TZSeries& b) {
    int nt = static_cast<int>(a.size()) - 1;
    int nz = a[0].order();
    TZSeries r(a.size(), ZSeries::zero(nz));
    for (int i = 0; i <= nt; ++i) {
        if (a[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; i + j <= nt; ++j)
            r[static_cast<size_t>(i + j)] = series_add(
                r[static_cast<size_t>(i + j)],
                series_mul(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]));
    }
    return r;
}

TZSeries tz_reciprocal(const TZSeries& a, int line, int col) {
    int nt = static_cast<int>(a.size()) - 1;
    int nz = a[0].order();
    if (a[0][0] == 0)
        throw ParseError(line, col, "division by a series vanishing at the origin");
    TZSeries r(a.size(), ZSeries::zero(nz));
    ZSeries inv0 = series_reciprocal(a[0], nz);
    r[0] = inv0;
    for (int n = 1; n <= nt; ++n) {
        ZSeries acc = ZSeries::zero(nz);
        for (int i = 1; i <= n; ++i)
            acc = series_add(acc, series_mul(a[static_cast<size_t>(i)],
                                             r[static_cast<size_t>(n - i)]));
        r[static_cast<size_t>(n)] = series_scale(series_mul(inv0, acc), Rational(-1));
    }
    return r;
}

TZSeries expand_tz(const ExprPtr& e, int nt, int nz) {
    switch (e->kind) {
        case Expr::Kind::Number: return tz_constant(e->value, nt, nz);
        case Expr::Kind::Var: {
            TZSeries s(static_cast<size_t>(nt) + 1, ZSeries::zero(nz));
            if (e->var == 'z') {
                s[0] = ZSeries::monomial(1, Rational(1), nz);
            } else if (nt >= 1) {
                s[1] = ZSeries::constant(Rational(1), nz);
            }
            return s;
        }
        case Expr::Kind::Neg: {
            TZSeries s = expand_tz(e->lhs, nt, nz);
            for (auto& row : s) row = series_scale(row, Rational(-1));
            return s;
        }
        case Expr::Kind::Add:
            return tz_add(expand_tz(e->lhs, nt, nz), expand_tz(e->rhs, nt, nz), Rational(1));
        case Expr::Kind::Sub:
            return tz_add(expand_tz(e->lhs, nt, nz), expand_tz(e->rhs, nt, nz), Rational(-1));
        case Expr::Kind::Mul:
            return tz_mul(expand_tz(e->lhs, nt, nz), expand_tz(e->rhs, nt, nz));
        case Expr::Kind::Div:
            return tz_mul(expand_tz(e->lhs, nt, nz),
                          tz_reciprocal(expand_tz(e->rhs, nt, nz), e->line, e->column));
        case Expr::Kind::Pow: {
            TZSeries r = tz_constant(Rational(1), nt, nz);
            TZSeries b = expand_tz(e->lhs, nt, nz);
            for (int i = 0; i < e->exponent; ++i) r = tz_mul(r, b);
            return r;
        }
        default:
            throw ParseError(e->line, e->column, "constant not allowed here");
    }
}

int prec(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

std::string rat_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

void print_rec(const ExprPtr& e, std::string& out) {
    auto child = [&](const ExprPtr& c, int min_prec) {
        if (prec(c->kind) < min_prec) {
            out += "(";
            print_rec(c, out);
            out += ")";
        } else {
            print_rec(c, out);
        }
    };
    switch (e->kind) {
        case Expr::Kind::Number:
            if (e->value < 0) {
                out += "(" + rat_str(e->value) + ")";
            } else if (denominator(e->value) != 1) {
                out += "(" + rat_str(e->value) + ")";
            } else {
                out += rat_str(e->value);
            }
            break;
        case Expr::Kind::Var: out += e->var; break;
        case Expr::Kind::Pi: out += "pi"; break;
        case Expr::Kind::Add:
            child(e->lhs, 1);
            out += " + ";
            child(e->rhs, 2);
            break;
        case Expr::Kind::Sub:
            child(e->lhs, 1);
            out += " - ";
            child(e->rhs, 2);
            break;
        case Expr::Kind::Mul:
            child(e->lhs, 2);
            out += "*";
            child(e->rhs, 3);
            break;
        case Expr::Kind::Div:
            child(e->lhs, 2);
            out += "/";
            child(e->rhs, 3);
            break;
        case Expr::Kind::Neg:
            out += "-";
            child(e->lhs, 3);
            break;
        case Expr::Kind::Pow:
            child(e->lhs, 5);
            out += "^" + std::to_string(e->exponent);
            break;
    }
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_rec(e, out);
    return out;
}

MomentSequence MomentSpec::build() const {
    switch (kind) {
        case Kind::Gevrey: {
            MomentSequence m = MomentSequence::gevrey_moments(arg);
            return m.with_claimed_order(StronglyRegularSequence::gevrey(1), to_double(arg));
        }
        case Kind::QFact: {
            MomentSequence m = MomentSequence::q_factorial(arg);
            return m.with_claimed_order(StronglyRegularSequence::gevrey(1), 0.0);
        }
        case Kind::Product: {
            MomentSequence m = MomentSequence::product(lhs->build(), rhs->build());
            return m.with_claimed_order(StronglyRegularSequence::gevrey(1),
                                        to_double(lhs->order() + rhs->order()));
        }
    }
    throw ConfigError("unreachable moment spec kind");
}

Rational MomentSpec::order() const {
    switch (kind) {
        case Kind::Gevrey: return arg;
        case Kind::QFact: return 0;
        case Kind::Product: return lhs->order() + rhs->order();
    }
    throw ConfigError("unreachable moment spec kind");
}

std::string MomentSpec::print() const {
    switch (kind) {
        case Kind::Gevrey: return "gevrey(" + rat_str(arg) + ")";
        case Kind::QFact: return "qfact(" + rat_str(arg) + ")";
        case Kind::Product: return "product(" + lhs->print() + ", " + rhs->print() + ")";
    }
    throw ConfigError("unreachable moment spec kind");
}

double ProblemFile::s1() const {
    return s1_override ? to_double(*s1_override) : to_double(m1.order());
}

double ProblemFile::s2() const {
    return s2_override ? to_double(*s2_override) : to_double(m2.order());
}

CauchyProblem<Rational> ProblemFile::expand(int nt, int nz) const {
    CauchyProblem<Rational> prob;
    prob.k = k;
    prob.p = p;
    prob.m1 = m1.build();
    prob.m2 = m2.build();
    prob.s1 = s1();
    prob.s2 = s2();
    prob.a = expand_z(a, nz);
    for (int j = 0; j < k; ++j) prob.phi.push_back(expand_z(phi.at(j), nz));
    if (f) {
        TZSeries rows = expand_tz(f, nt, nz);
        prob.f_hat.rows.assign(rows.begin(), rows.end());
    } else {
        prob.f_hat = Series2<Rational>::zero(nt, nz);
    }
    prob.radius = to_double(options.radius);
    prob.validate();
    return prob;
}

std::string ProblemFile::pretty_print() const {
    std::ostringstream os;
    os << "problem {\n";
    os << "  k = " << k << ";\n";
    os << "  p = " << p << ";\n";
    os << "  m1 = " << m1.print() << ";\n";
    os << "  m2 = " << m2.print() << ";\n";
    if (s1_override) os << "  s1 = " << rat_str(*s1_override) << ";\n";
    if (s2_override) os << "  s2 = " << rat_str(*s2_override) << ";\n";
    os << "  a = " << print_expr(a) << ";\n";
    for (const auto& [j, e] : phi) os << "  phi[" << j << "] = " << print_expr(e) << ";\n";
    if (f) os << "  f = " << print_expr(f) << ";\n";
    os << "}\n";
    os << "options {\n";
    os << "  nt = " << options.nt << ";\n";
    if (options.nz >= 0) os << "  nz = " << options.nz << ";\n";
    if (options.qiters >= 0) os << "  qiters = " << options.qiters << ";\n";
    os << "  rprime = " << rat_str(options.rprime) << ";\n";
    os << "  zpoint = " << rat_str(options.zpoint) << ";\n";
    os << "  tpoint = " << rat_str(options.tpoint) << ";\n";
    os << "  radius = " << rat_str(options.radius) << ";\n";
    if (options.direction_expr)
        os << "  direction = " << print_expr(options.direction_expr) << ";\n";
    if (options.alpha_expr) os << "  alpha = " << print_expr(options.alpha_expr) << ";\n";
    os << "}\n";
    return os.str();
}

ProblemFile parse_problem(const std::string& text) {
    Parser parser(text);
    return parser.parse();
}

MomentSpec parse_moment_spec_text(const std::string& text) {
    Parser parser(text);
    return parser.parse_spec_only();
}

}  // namespace mpde
