#include "blochlab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace blochlab {

Expr Expr::make(Op op, cplx value, unsigned exponent, std::vector<Expr> args) {
    return Expr(std::make_shared<const Node>(Node{op, value, exponent, std::move(args)}));
}

Expr Expr::var() { return make(Op::Var, {}, 0, {}); }
Expr Expr::lit(cplx value) { return make(Op::Lit, value, 0, {}); }
Expr Expr::neg(Expr e) { return make(Op::Neg, {}, 0, {std::move(e)}); }
Expr Expr::add(Expr a, Expr b) { return make(Op::Add, {}, 0, {std::move(a), std::move(b)}); }
Expr Expr::sub(Expr a, Expr b) { return make(Op::Sub, {}, 0, {std::move(a), std::move(b)}); }
Expr Expr::mul(Expr a, Expr b) { return make(Op::Mul, {}, 0, {std::move(a), std::move(b)}); }
Expr Expr::div(Expr a, Expr b) { return make(Op::Div, {}, 0, {std::move(a), std::move(b)}); }
Expr Expr::pow(Expr base, unsigned exponent) { return make(Op::Pow, {}, exponent, {std::move(base)}); }
Expr Expr::exp(Expr e) { return make(Op::Exp, {}, 0, {std::move(e)}); }
Expr Expr::log(Expr e) { return make(Op::Log, {}, 0, {std::move(e)}); }
Expr Expr::mobius(cplx a) { return make(Op::Mobius, a, 0, {}); }

ParseError::ParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError(0, "empty expression");
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) lhs = Expr::add(lhs, term());
            else if (accept('-')) lhs = Expr::sub(lhs, term());
            else return lhs;
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            if (accept('*')) lhs = Expr::mul(lhs, factor());
            else if (accept('/')) lhs = Expr::div(lhs, factor());
            else return lhs;
        }
    }

    Expr factor() {
        if (accept('-')) return Expr::neg(factor());
        Expr base = atom();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            unsigned n = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, n);
            if (start == pos_ || ec != std::errc{} || ptr != text_.data() + pos_) {
                pos_ = start;
                fail("expected unsigned integer exponent");
            }
            base = Expr::pow(base, n);
        }
        return base;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (is_ident_start(c)) return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                pos_ = p;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc{} || ptr != text_.data() + pos_ || !std::isfinite(v)) {
            pos_ = start;
            fail("malformed number");
        }
        // "2i" is an imaginary literal; "2in" would be a syntax error later.
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 == text_.size() || !is_ident_char(text_[pos_ + 1]))) {
            ++pos_;
            return Expr::lit({0.0, v});
        }
        return Expr::lit({v, 0.0});
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "z") return Expr::var();
        if (name == "i") return Expr::lit({0.0, 1.0});
        if (name != "exp" && name != "log" && name != "mobius" && name != "complex") {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        expect('(');
        std::vector<std::pair<std::size_t, Expr>> args;
        skip_ws();
        if (!accept(')')) {
            do {
                skip_ws();
                const std::size_t at = pos_;
                args.emplace_back(at, expr());
            } while (accept(','));
            expect(')');
        }
        const std::size_t want = name == "complex" ? 2 : 1;
        if (args.size() != want) {
            pos_ = start;
            fail("'" + std::string(name) + "' takes " + std::to_string(want) + " argument(s), got " +
                 std::to_string(args.size()));
        }
        if (name == "exp") return Expr::exp(args[0].second);
        if (name == "log") return Expr::log(args[0].second);
        if (name == "mobius") return Expr::mobius(constant(args[0]));
        const cplx re = constant(args[0]);
        const cplx im = constant(args[1]);
        if (re.imag() != 0.0 || im.imag() != 0.0) {
            pos_ = start;
            fail("complex() arguments must be real");
        }
        return Expr::lit({re.real(), im.real()});
    }

    cplx constant(const std::pair<std::size_t, Expr>& arg) {
        if (contains_var(arg.second)) {
            pos_ = arg.first;
            fail("argument must not depend on z");
        }
        return evaluate(arg.second, 0.0);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_complex(cplx v) { return "complex(" + fmt_real(v.real()) + "," + fmt_real(v.imag()) + ")"; }

void print_into(const Expr& e, std::string& out) {
    auto binary = [&](char sym) {
        out += '(';
        print_into(e.arg(0), out);
        out += sym;
        print_into(e.arg(1), out);
        out += ')';
    };
    switch (e.op()) {
        case Op::Var: out += 'z'; break;
        case Op::Lit: {
            const cplx v = e.value();
            if (v.imag() == 0.0 && !std::signbit(v.imag()) && !std::signbit(v.real()))
                out += fmt_real(v.real());
            else
                out += fmt_complex(v);
            break;
        }
        case Op::Neg:
            out += "(-";
            print_into(e.arg(0), out);
            out += ')';
            break;
        case Op::Add: binary('+'); break;
        case Op::Sub: binary('-'); break;
        case Op::Mul: binary('*'); break;
        case Op::Div: binary('/'); break;
        case Op::Pow:
            out += '(';
            print_into(e.arg(0), out);
            out += '^';
            out += std::to_string(e.exponent());
            out += ')';
            break;
        case Op::Exp:
        case Op::Log:
            out += e.op() == Op::Exp ? "exp(" : "log(";
            print_into(e.arg(0), out);
            out += ')';
            break;
        case Op::Mobius:
            out += "mobius(" + fmt_complex(e.value()) + ")";
            break;
    }
}

}  // namespace

std::string print_expr(const Expr& e) {
    std::string out;
    print_into(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

cplx evaluate(const Expr& e, cplx z) {
    switch (e.op()) {
        case Op::Var: return z;
        case Op::Lit: return e.value();
        case Op::Neg: return -evaluate(e.arg(0), z);
        case Op::Add: return evaluate(e.arg(0), z) + evaluate(e.arg(1), z);
        case Op::Sub: return evaluate(e.arg(0), z) - evaluate(e.arg(1), z);
        case Op::Mul: return evaluate(e.arg(0), z) * evaluate(e.arg(1), z);
        case Op::Div: return evaluate(e.arg(0), z) / evaluate(e.arg(1), z);
        case Op::Pow: {
            const cplx b = evaluate(e.arg(0), z);
            if (e.exponent() == 0) return 1.0;
            cplx r = b;
            for (unsigned k = 1; k < e.exponent(); ++k) r *= b;
            return r;
        }
        case Op::Exp: return std::exp(evaluate(e.arg(0), z));
        case Op::Log: return std::log(evaluate(e.arg(0), z));
        case Op::Mobius: {
            const cplx a = e.value();
            return (a - z) / (1.0 - std::conj(a) * z);
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

bool is_zero(const Expr& e) { return e.is_literal(0.0); }
bool is_one(const Expr& e) { return e.is_literal(1.0); }

Expr s_neg(Expr a) {
    if (is_zero(a)) return a;
    if (a.op() == Op::Lit) return Expr::lit(-a.value());
    return Expr::neg(std::move(a));
}
Expr s_add(Expr a, Expr b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    return Expr::add(std::move(a), std::move(b));
}
Expr s_sub(Expr a, Expr b) {
    if (is_zero(b)) return a;
    if (is_zero(a)) return s_neg(std::move(b));
    return Expr::sub(std::move(a), std::move(b));
}
Expr s_mul(Expr a, Expr b) {
    if (is_zero(a) || is_zero(b)) return Expr::lit(0.0);
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    if (a.op() == Op::Lit && b.op() == Op::Lit) return Expr::lit(a.value() * b.value());
    return Expr::mul(std::move(a), std::move(b));
}
Expr s_div(Expr a, Expr b) {
    if (is_zero(a)) return a;
    if (is_one(b)) return a;
    return Expr::div(std::move(a), std::move(b));
}
Expr s_pow(Expr a, unsigned n) {
    if (n == 0) return Expr::lit(1.0);
    if (n == 1) return a;
    return Expr::pow(std::move(a), n);
}

}  // namespace

Expr differentiate(const Expr& e) {
    switch (e.op()) {
        case Op::Var: return Expr::lit(1.0);
        case Op::Lit: return Expr::lit(0.0);
        case Op::Neg: return s_neg(differentiate(e.arg(0)));
        case Op::Add: return s_add(differentiate(e.arg(0)), differentiate(e.arg(1)));
        case Op::Sub: return s_sub(differentiate(e.arg(0)), differentiate(e.arg(1)));
        case Op::Mul: {
            const Expr& u = e.arg(0);
            const Expr& v = e.arg(1);
            return s_add(s_mul(differentiate(u), v), s_mul(u, differentiate(v)));
        }
        case Op::Div: {
            const Expr& u = e.arg(0);
            const Expr& v = e.arg(1);
            Expr du = differentiate(u);
            Expr dv = differentiate(v);
            if (is_zero(dv)) return s_div(du, v);
            // (u'v - uv') / v^2
            return s_div(s_sub(s_mul(du, v), s_mul(u, dv)), s_pow(v, 2));
        }
        case Op::Pow: {
            const unsigned n = e.exponent();
            if (n == 0) return Expr::lit(0.0);
            return s_mul(s_mul(Expr::lit(static_cast<double>(n)), s_pow(e.arg(0), n - 1)),
                         differentiate(e.arg(0)));
        }
        case Op::Exp: return s_mul(e, differentiate(e.arg(0)));
        case Op::Log: return s_div(differentiate(e.arg(0)), e.arg(0));
        case Op::Mobius: {
            // -(1 - |a|^2) / (1 - conj(a) z)^2
            const cplx a = e.value();
            Expr denom = Expr::sub(Expr::lit(1.0), Expr::mul(Expr::lit(std::conj(a)), Expr::var()));
            return Expr::neg(Expr::div(Expr::lit(1.0 - std::norm(a)), Expr::pow(denom, 2)));
        }
    }
    return Expr::lit(0.0);
}

// ---------------------------------------------------------------------------
// Structural utilities

Expr substitute(const Expr& outer, const Expr& inner) {
    switch (outer.op()) {
        case Op::Var: return inner;
        case Op::Lit: return outer;
        case Op::Neg: return Expr::neg(substitute(outer.arg(0), inner));
        case Op::Add: return Expr::add(substitute(outer.arg(0), inner), substitute(outer.arg(1), inner));
        case Op::Sub: return Expr::sub(substitute(outer.arg(0), inner), substitute(outer.arg(1), inner));
        case Op::Mul: return Expr::mul(substitute(outer.arg(0), inner), substitute(outer.arg(1), inner));
        case Op::Div: return Expr::div(substitute(outer.arg(0), inner), substitute(outer.arg(1), inner));
        case Op::Pow: return Expr::pow(substitute(outer.arg(0), inner), outer.exponent());
        case Op::Exp: return Expr::exp(substitute(outer.arg(0), inner));
        case Op::Log: return Expr::log(substitute(outer.arg(0), inner));
        case Op::Mobius: {
            const cplx a = outer.value();
            return Expr::div(Expr::sub(Expr::lit(a), inner),
                             Expr::sub(Expr::lit(1.0), Expr::mul(Expr::lit(std::conj(a)), inner)));
        }
    }
    return outer;
}

bool contains_var(const Expr& e) {
    if (e.op() == Op::Var || e.op() == Op::Mobius) return true;
    for (std::size_t i = 0; i < e.arity(); ++i)
        if (contains_var(e.arg(i))) return true;
    return false;
}

bool is_automorphism_form(const Expr& e) {
    auto unimodular = [](const Expr& x) {
        return x.op() == Op::Lit && std::abs(std::abs(x.value()) - 1.0) <= 1e-15;
    };
    switch (e.op()) {
        case Op::Var: return true;
        case Op::Mobius: return std::abs(e.value()) < 1.0;
        case Op::Neg: return is_automorphism_form(e.arg(0));
        case Op::Mul:
            return (unimodular(e.arg(0)) && is_automorphism_form(e.arg(1))) ||
                   (unimodular(e.arg(1)) && is_automorphism_form(e.arg(0)));
        default: return false;
    }
}

std::size_t node_count(const Expr& e) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < e.arity(); ++i) n += node_count(e.arg(i));
    return n;
}

}  // namespace blochlab
