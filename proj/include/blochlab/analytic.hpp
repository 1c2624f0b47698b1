#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "blochlab/expr.hpp"

namespace blochlab {

/// Postfix program compiled from an Expr. Evaluation performs exactly the
/// same floating-point operations, in the same order, as evaluate(Expr).
class Program {
public:
    explicit Program(const Expr& e);
    cplx operator()(cplx z) const;

private:
    struct Instr {
        Op op;
        cplx value;
        unsigned exponent;
    };
    void emit(const Expr& e, std::size_t depth);

    std::vector<Instr> code_;
    std::size_t max_depth_ = 0;
};

/// A holomorphic function given by an expression tree, with its symbolic
/// derivative. Cheap to copy.
class AnalyticFn {
public:
    explicit AnalyticFn(Expr e);
    static AnalyticFn parse(std::string_view text);

    cplx operator()(cplx z) const { return state_->f(z); }
    cplx deriv(cplx z) const { return state_->df(z); }

    const Expr& expr() const { return state_->expr; }
    const Expr& derivative_expr() const { return state_->dexpr; }
    AnalyticFn derivative() const { return AnalyticFn(state_->dexpr); }
    std::string text() const { return print_expr(state_->expr); }

private:
    struct State {
        Expr expr;
        Expr dexpr;
        Program f;
        Program df;
    };
    std::shared_ptr<const State> state_;
};

}  // namespace blochlab
