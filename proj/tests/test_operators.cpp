#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "blochlab/operators.hpp"
#include "blochlab/series.hpp"
#include "blochlab/testfns.hpp"

using namespace blochlab;

namespace {

const DiskGrid& grid() {
    static const DiskGrid g = make_grid();
    return g;
}

SelfMap map(const char* text) { return validate_self_map(AnalyticFn::parse(text), grid()); }
AnalyticFn fn(const char* text) { return AnalyticFn::parse(text); }

TaylorSeries random_poly(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> c(n + 1);
    for (auto& x : c) x = {u(rng), u(rng)};
    return TaylorSeries(c);
}

AnalyticFn as_fn(const TaylorSeries& s) {
    Expr e = Expr::lit(s[0]);
    for (std::size_t n = 1; n <= s.degree_bound(); ++n)
        e = Expr::add(e, Expr::mul(Expr::lit(s[n]), Expr::pow(Expr::var(), static_cast<unsigned>(n))));
    return AnalyticFn(e);
}

cplx random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    return std::polar(0.95 * std::sqrt(u(rng)), 6.283185307179586 * u(rng));
}

}  // namespace

TEST_CASE("J_g and I_g on monomials") {
    const cplx z(0.3, 0.5);
    CHECK(std::abs(apply_Jg(fn("z"), fn("1"), z) - z) < 1e-15);
    CHECK(std::abs(apply_Jg(fn("z^2/2"), fn("z"), z) - z * z * z / 3.0) < 1e-15);
    CHECK(std::abs(apply_Ig(fn("1"), fn("z"), z) - z) < 1e-15);
    const AnalyticFn f = fn("exp(z)+z^3");
    CHECK(std::abs(apply_Ig(fn("complex(2,-1)"), f, z) - cplx(2, -1) * (f(z) - f(0.0))) < 1e-14);
    CHECK_THROWS_AS(apply_Jg(fn("z"), fn("1"), 1.0), std::domain_error);
}

TEST_CASE("J_g and I_g against the series oracle") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const TaylorSeries gs = random_poly(rng, 5), fs = random_poly(rng, 6);
        const AnalyticFn g = as_fn(gs), f = as_fn(fs);
        const TaylorSeries j = antiderivative(mul(fs, derivative(gs)));
        const TaylorSeries i = antiderivative(mul(derivative(fs), gs));
        for (int k = 0; k < 100; ++k) {
            const cplx z = random_point(rng);
            CHECK(std::abs(apply_Jg(g, f, z) - j(z)) < 1e-10);
            CHECK(std::abs(apply_Ig(g, f, z) - i(z)) < 1e-10);
        }
    }
}

TEST_CASE("commutator values and derivatives") {
    const SelfMap id = map("z"), half = map("z/2"), mob = map("mobius(complex(0.3,0.4))");
    const AnalyticFn g = fn("log(2/(1-0.9*z))"), f = fn("z^3-z");
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.7, 0.5), cplx(0.9, 0)}) {
        for (auto kind : {OperatorKind::CommutatorI, OperatorKind::CommutatorJ}) {
            CHECK(std::abs(commutator_value(kind, id, g, f, z)) < 1e-13);
            CHECK(commutator_derivative(kind, id, g, f, z) == cplx(0));
        }
        CHECK(std::abs(commutator_value(OperatorKind::CommutatorI, half, fn("complex(1,2)"), f, z)) < 1e-14);
        CHECK(std::abs(commutator_derivative(OperatorKind::CommutatorJ, half, fn("z"), fn("1"), z) - (-0.5)) < 1e-15);
        CHECK(std::abs(commutator_derivative(OperatorKind::CommutatorI, half, fn("z"), fn("z"), z) - (-z / 4.0)) <
              1e-15);
    }
    // Finite-difference consistency.
    const double h = 1e-5;
    for (auto kind : {OperatorKind::CommutatorI, OperatorKind::CommutatorJ})
        for (cplx z : {cplx(0.2, -0.3), cplx(0.6, 0.6)}) {
            const cplx fd =
                (commutator_value(kind, mob, g, f, z + h) - commutator_value(kind, mob, g, f, z - h)) / (2 * h);
            const cplx d = commutator_derivative(kind, mob, g, f, z);
            CHECK(std::abs(fd - d) / (1 + std::abs(d)) < 1e-6);
        }
    CHECK_THROWS_AS(commutator_derivative(OperatorKind::VolterraJ, mob, g, f, 0.0), std::invalid_argument);
}

TEST_CASE("Bloch seminorm and norm") {
    const auto z = bloch_seminorm(fn("z"), grid());
    CHECK(z.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(z.arg) < 1e-12);
    for (cplx a : {cplx(0.5), cplx(-0.3, 0.6), cplx(0.85, -0.2), cplx(0.0)}) {
        const auto s = bloch_seminorm(make_test_fn(TestFamily::mobius_alpha(a)), grid());
        CHECK(std::abs(s.value - 1.0) < 1e-6);
        CHECK(std::abs(s.arg - a) < 1e-3);
    }
    CHECK(bloch_seminorm(make_test_fn(TestFamily::peak_h(0.9)), grid()).value <= 1.0 + 1e-9);
    CHECK(bloch_norm(fn("z"), grid()) == doctest::Approx(1.0));
    CHECK(bloch_norm(fn("1"), grid()) == 1.0);
    CHECK(std::abs(bloch_norm(fn("mobius(0.5)"), grid()) - 1.5) < 1e-6);
    // Without refinement the value is a plain grid maximum.
    CHECK(bloch_seminorm(fn("mobius(0.5)"), grid(), false).value <= 1.0);
}

TEST_CASE("sup norm") {
    CHECK(hinf_norm(fn("complex(3,4)"), grid()).value == doctest::Approx(5.0));
    CHECK(hinf_norm(fn("z"), grid()).value >= 0.9999);
    const double h = hinf_norm(make_test_fn(TestFamily::peak_h(0.9)), grid()).value;
    CHECK(h >= 1.0);
    CHECK(h <= 2.0);
}

TEST_CASE("commutator seminorm") {
    const SelfMap id = map("z"), mob = map("mobius(0.5)");
    const AnalyticFn g = fn("z^2"), f = fn("exp(z)");
    CHECK(commutator_seminorm(OperatorKind::CommutatorI, id, g, f, grid()).value == 0.0);
    // Kernel and direct evaluation perform the same operations.
    for (auto kind : {OperatorKind::CommutatorI, OperatorKind::CommutatorJ}) {
        const CommutatorKernel k(kind, mob, g, grid());
        const auto a = k.seminorm(f);
        const auto b = commutator_seminorm(kind, mob, g, f, grid());
        CHECK(a.value == b.value);
        double direct = 0;
        for (cplx z : grid().points)
            direct = std::max(direct, one_minus_sq(z) * std::abs(commutator_derivative(kind, mob, g, f, z)));
        CHECK(a.value == direct);
    }
    // Lower bound through Mobius test functions at sampled w.
    const CommutatorKernel k(OperatorKind::CommutatorI, mob, g, grid());
    for (std::size_t i = 0; i < grid().size(); i += 397) {
        const cplx w = grid().points[i];
        const double val = k.seminorm(make_test_fn(TestFamily::mobius_alpha(mob(w)))).value;
        CHECK(val >= std::abs(schwarz_derivative(mob, w)) * std::abs(g(mob(w)) - g(w)) - 1e-6);
    }
}
