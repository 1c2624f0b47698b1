#include "blochlab/analytic.hpp"

#include <array>

namespace blochlab {

Program::Program(const Expr& e) { emit(e, 1); }

void Program::emit(const Expr& e, std::size_t depth) {
    max_depth_ = std::max(max_depth_, depth);
    for (std::size_t i = 0; i < e.arity(); ++i) emit(e.arg(i), depth + i);
    code_.push_back({e.op(), e.value(), e.exponent()});
}

namespace {

template <class Stack>
cplx run(const auto& code, cplx z, Stack& st) {
    std::size_t sp = 0;
    for (const auto& in : code) {
        switch (in.op) {
            case Op::Var: st[sp++] = z; break;
            case Op::Lit: st[sp++] = in.value; break;
            case Op::Neg: st[sp - 1] = -st[sp - 1]; break;
            case Op::Add: --sp; st[sp - 1] = st[sp - 1] + st[sp]; break;
            case Op::Sub: --sp; st[sp - 1] = st[sp - 1] - st[sp]; break;
            case Op::Mul: --sp; st[sp - 1] = st[sp - 1] * st[sp]; break;
            case Op::Div: --sp; st[sp - 1] = st[sp - 1] / st[sp]; break;
            case Op::Pow: {
                const cplx b = st[sp - 1];
                if (in.exponent == 0) {
                    st[sp - 1] = 1.0;
                } else {
                    cplx r = b;
                    for (unsigned k = 1; k < in.exponent; ++k) r *= b;
                    st[sp - 1] = r;
                }
                break;
            }
            case Op::Exp: st[sp - 1] = std::exp(st[sp - 1]); break;
            case Op::Log: st[sp - 1] = std::log(st[sp - 1]); break;
            case Op::Mobius: {
                const cplx a = in.value;
                st[sp++] = (a - z) / (1.0 - std::conj(a) * z);
                break;
            }
        }
    }
    return st[0];
}

}  // namespace

cplx Program::operator()(cplx z) const {
    if (max_depth_ <= 32) {
        std::array<cplx, 32> st;
        return run(code_, z, st);
    }
    std::vector<cplx> st(max_depth_);
    return run(code_, z, st);
}

AnalyticFn::AnalyticFn(Expr e) {
    Expr de = differentiate(e);
    Program pf(e);
    Program pdf(de);
    state_ = std::make_shared<const State>(State{std::move(e), std::move(de), std::move(pf), std::move(pdf)});
}

AnalyticFn AnalyticFn::parse(std::string_view text) { return AnalyticFn(blochlab::parse(text)); }

}  // namespace blochlab
