#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blochlab {

using cplx = std::complex<double>;

enum class Op { Var, Lit, Neg, Add, Sub, Mul, Div, Pow, Exp, Log, Mobius };

/// Immutable expression tree in the single variable z. Copies share nodes.
///
/// Mobius(a) is the disk automorphism (a - z) / (1 - conj(a) z) applied to z
/// itself; composition with other maps goes through substitute().
class Expr {
public:
    static Expr var();
    static Expr lit(cplx value);
    static Expr neg(Expr e);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr pow(Expr base, unsigned exponent);
    static Expr exp(Expr e);
    static Expr log(Expr e);
    static Expr mobius(cplx a);

    Op op() const { return node_->op; }
    /// Literal value for Lit, parameter a for Mobius.
    cplx value() const { return node_->value; }
    unsigned exponent() const { return node_->exponent; }
    std::size_t arity() const { return node_->args.size(); }
    const Expr& arg(std::size_t i) const { return node_->args[i]; }

    bool is_literal(cplx v) const { return op() == Op::Lit && value() == v; }

private:
    struct Node {
        Op op;
        cplx value{};
        unsigned exponent = 0;
        std::vector<Expr> args;
    };
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make(Op op, cplx value, unsigned exponent, std::vector<Expr> args);

    std::shared_ptr<const Node> node_;
};

/// Syntax error, unknown identifier or arity mismatch; offset is the byte
/// position in the input where the problem was detected.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

Expr parse(std::string_view text);

/// Fully parenthesised form; parse(print_expr(e)) rebuilds the same tree,
/// literals included bit for bit.
std::string print_expr(const Expr& e);

Expr differentiate(const Expr& e);

/// Reference tree-walking evaluator.
cplx evaluate(const Expr& e, cplx z);

/// Replace every occurrence of z by `inner` (Mobius nodes are expanded).
Expr substitute(const Expr& outer, const Expr& inner);

bool contains_var(const Expr& e);

/// True for z, Mobius(a), and products/negations of these with unimodular
/// literals. No numerical detection.
bool is_automorphism_form(const Expr& e);

std::size_t node_count(const Expr& e);

}  // namespace blochlab
