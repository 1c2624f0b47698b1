#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blochlab/diskgeom.hpp"

using namespace blochlab;

TEST_CASE("grid layout") {
    const DiskGrid g = make_grid(4, 64);
    CHECK(g.size() == 960);
    CHECK(g.shell_count() == 5);
    for (int k = 0; k < g.shell_count(); ++k) {
        CHECK(g.angular_counts[k] >= 64);
        CHECK(g.shell_begin[k + 1] - g.shell_begin[k] == g.angular_counts[k]);
        if (k > 0) CHECK(g.radii[k] > g.radii[k - 1]);
        CHECK(g.radii[k] >= 1.0 - std::exp2(-k));
        CHECK(g.radii[k] < 1.0 - std::exp2(-(k + 1)));
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(g.points[i]) < 1.0);
        CHECK(shell_of_modulus(std::abs(g.points[i]), g.max_shell) == g.shell[i]);
    }
    CHECK(make_grid().size() == 7680);
    CHECK_THROWS_AS(make_grid(3, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(6, 32), std::invalid_argument);
}

TEST_CASE("shell_of_modulus") {
    CHECK(shell_of_modulus(0.0, 14) == 0);
    CHECK(shell_of_modulus(0.49, 14) == 0);
    CHECK(shell_of_modulus(0.5, 14) == 1);
    CHECK(shell_of_modulus(0.75, 14) == 2);
    CHECK(shell_of_modulus(0.9999999, 14) == 14);
    CHECK(shell_of_modulus(1.0, 14) == 14);
}

TEST_CASE("pseudo-hyperbolic distance") {
    CHECK(std::abs(pseudo_hyperbolic(0.9, -0.9) - 1.8 / 1.81) < 1e-15);
    CHECK(pseudo_hyperbolic(cplx(0.3, 0.2), cplx(0.3, 0.2)) == 0.0);
    CHECK(one_minus_sq(cplx(0.6, 0.8)) < 1e-15);
}

TEST_CASE("validate_self_map") {
    const DiskGrid g = make_grid();
    const SelfMap half = validate_self_map(AnalyticFn::parse("z/2"), g);
    CHECK(half.sup_modulus_estimate() >= 0.5 * g.radii.back());
    CHECK(half.sup_modulus_estimate() < 0.5 + 1e-4);
    CHECK_FALSE(half.is_automorphism());

    try {
        validate_self_map(AnalyticFn::parse("2*z"), g);
        FAIL("2z accepted");
    } catch (const NotASelfMap& e) {
        CHECK(std::abs(e.value()) >= 1.0);
        CHECK(std::abs(e.witness()) < 1.0);
    }

    double prev = 0.0;
    for (int k : {6, 10, 14}) {
        const SelfMap m = validate_self_map(AnalyticFn::parse("mobius(0.3)"), make_grid(k, 64));
        CHECK(m.is_automorphism());
        CHECK(m.sup_modulus_estimate() >= prev);
        prev = m.sup_modulus_estimate();
    }
    CHECK(prev > 0.9999);
}

TEST_CASE("Schwarz derivative") {
    const DiskGrid g = make_grid(6, 64);
    const SelfMap id = validate_self_map(AnalyticFn::parse("z"), g);
    for (cplx z : g.points) CHECK(std::abs(schwarz_derivative(id, z) - 1.0) < 1e-15);
    const SelfMap half = validate_self_map(AnalyticFn::parse("z/2"), g);
    CHECK(schwarz_derivative(half, 0.0) == cplx(0.5));
    const SelfMap mob = validate_self_map(AnalyticFn::parse("mobius(complex(0.2,-0.6))"), g);
    for (cplx z : g.points) CHECK(std::abs(std::abs(schwarz_derivative(mob, z)) - 1.0) < 1e-9);
}

TEST_CASE("modulus bound") {
    const DiskGrid g = make_grid(6, 64);
    const SelfMap sq = validate_self_map(AnalyticFn::parse("z^2/2"), g);
    CHECK(schwarz_pick_modulus_bound(sq, cplx(0.3, 0.4)) == doctest::Approx(0.5));
    const SelfMap sh = validate_self_map(AnalyticFn::parse("(z+0.3)/2"), g);
    CHECK(schwarz_pick_modulus_bound(sh, 0.0) == doctest::Approx(0.15));
    const SelfMap mob = validate_self_map(AnalyticFn::parse("mobius(0.5)"), g);
    CHECK(schwarz_pick_modulus_bound(mob, 0.5) == doctest::Approx(0.8));
    CHECK(std::abs(mob(0.5)) == 0.0);
}
