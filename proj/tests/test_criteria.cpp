#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blochlab/criteria.hpp"

using namespace blochlab;

namespace {

const DiskGrid& grid() {
    static const DiskGrid g = make_grid();
    return g;
}

SelfMap map(const char* text) { return validate_self_map(AnalyticFn::parse(text), grid()); }
AnalyticFn fn(const char* text) { return AnalyticFn::parse(text); }

// max of r(1 - r^2)/(4 - r^2) on [0, 1], 10^6-point radial grid.
constexpr double kHalfMapSup = 0.10558219419811865;

}  // namespace

TEST_CASE("names") {
    CHECK(all_theorems().size() == 11);
    for (TheoremId t : all_theorems()) CHECK(theorem_from_string(to_string(t)) == t);
    CHECK(to_string(TheoremId::T4_1b) == "T4.1b");
    CHECK_FALSE(theorem_from_string("T9.9").has_value());
    CHECK(criterion_from_string("KJlog") == CriterionKind::KJlog);
    CHECK_FALSE(criterion_from_string("KX").has_value());
}

TEST_CASE("pointwise criterion values") {
    const SelfMap id = map("z"), half = map("z/2");
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.9, 0.3)}) CHECK(criterion_value(CriterionKind::KI, &id, fn("exp(z)"), z) == 0);
    const double r = 0.61361;
    CHECK(criterion_value(CriterionKind::KI, &half, fn("z"), r) == doctest::Approx(r * (1 - r * r) / (4 - r * r)));
    CHECK(criterion_value(CriterionKind::KI, &half, fn("z"), r) == doctest::Approx(0.10559).epsilon(1e-4));
    double prev = 1.0;
    for (int k = 2; k <= 40; k += 2) {
        const double v = criterion_value(CriterionKind::Lg, nullptr, fn("z"), 1.0 - std::exp2(-k));
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-10);
    CHECK_THROWS_AS(criterion_value(CriterionKind::KJ, nullptr, fn("z"), 0.5), std::invalid_argument);
}

TEST_CASE("report invariants") {
    const SelfMap half = map("z/2"), rot = map("complex(0,1)*z"), mob = map("mobius(0.5)");
    const auto ki = evaluate_criterion(CriterionKind::KI, &half, fn("z"), grid());
    CHECK(std::abs(ki.sup_value - kHalfMapSup) < 1e-3);
    CHECK(ki.vacuous_boundary);
    CHECK(ki.boundary_limsup_estimate == 0.0);
    CHECK(ki.by_phi);

    const auto kj = evaluate_criterion(CriterionKind::KJ, &rot, fn("log(2/(1-z))"), grid());
    CHECK(kj.boundary_limsup_estimate >= 1.9);
    CHECK(kj.boundary_limsup_estimate <= kj.sup_value);
    CHECK_FALSE(kj.vacuous_boundary);

    const auto lg = evaluate_criterion(CriterionKind::Lg, nullptr, fn("log(2/(1-z))"), grid());
    CHECK_FALSE(lg.by_phi);
    CHECK(trend::strictly_increasing(lg.last_shells(3)));
    CHECK(trend::divergent(lg, 10.0));
    CHECK_FALSE(trend::divergent(lg, 1e3));

    for (const auto& rep : {ki, kj, lg, evaluate_criterion(CriterionKind::KJlog, &mob, fn("z^2"), grid())}) {
        double m = 0;
        for (const auto& s : rep.shell_sups) {
            m = std::max(m, s.sup);
            CHECK(s.count > 0);
        }
        CHECK(m == rep.sup_value);
        CHECK(rep.boundary_limsup_estimate <= rep.sup_value);
    }
    const auto by_z = evaluate_criterion(CriterionKind::KI, &mob, fn("z"), grid(), Bucketing::ByZ);
    CHECK_FALSE(by_z.by_phi);
    CHECK(by_z.shell_sups.size() == static_cast<std::size_t>(grid().shell_count()));
}

TEST_CASE("trend rules") {
    CHECK(trend::nonincreasing({3, 2, 2}));
    CHECK_FALSE(trend::nonincreasing({3, 2, 2.5}));
    CHECK(trend::decaying({1, 0.5, 0.25}));
    CHECK_FALSE(trend::decaying({1, 0.95, 0.5}));
    CHECK(trend::strictly_increasing({1, 2, 3}));
    CHECK_FALSE(trend::strictly_increasing({1, 2, 2}));
}

TEST_CASE("classify examples") {
    const SelfMap half = map("z/2"), mob = map("mobius(0.5)");
    const Verdict v = classify(TheoremId::T3_2, &half, fn("z"), grid());
    CHECK(v.conclusion == Conclusion::Compact);
    const Verdict n = classify(TheoremId::T3_2, &mob, fn("z"), grid());
    CHECK(n.conclusion == Conclusion::NotCompactEvidence);
    REQUIRE(n.witness.has_value());
    double lim = 0;
    for (const auto& r : n.evidence)
        if (r.kind == CriterionKind::KI) lim = r.boundary_limsup_estimate;
    CHECK(lim > 1.9);

    CHECK(classify(TheoremId::T3_1, &mob, fn("z"), grid()).conclusion == Conclusion::Bounded);
    CHECK(classify(TheoremId::T4_9, nullptr, fn("z"), grid()).conclusion == Conclusion::Compact);
    for (const char* m : {"z", "z/2", "mobius(0.5)", "complex(0,1)*mobius(0.2)", "z^2/2"}) {
        const SelfMap phi = map(m);
        CHECK(classify(TheoremId::T4_9, &phi, fn("z"), grid()).conclusion == Conclusion::Compact);
    }
    CHECK_THROWS_AS(classify(TheoremId::T3_2, nullptr, fn("z"), grid()), std::invalid_argument);
}

TEST_CASE("preconditions") {
    const SelfMap mob = map("mobius(0.5)");
    Thresholds low;
    low.divergence = 10.0;
    CHECK_THROWS_AS(classify(TheoremId::T4_9, &mob, fn("log(2/(1-z))"), grid(), low), PreconditionFailed);
    CHECK_THROWS_AS(classify(TheoremId::C4_3, &mob, fn("log(2/(1-z))"), grid()), PreconditionFailed);
    CHECK(classify(TheoremId::C4_3, &mob, fn("z^2"), grid()).conclusion == Conclusion::Compact);
    // Unbounded symbol for the H-infinity hypothesis.
    const DiskGrid fine = make_grid(14, 64);
    const SelfMap half = validate_self_map(fn("z/2"), fine);
    CHECK_THROWS_AS(classify(TheoremId::T3_2, &half, fn("1/(1-z)^4"), fine), PreconditionFailed);
}

TEST_CASE("rotation symbol is not compact for T4.1b") {
    const SelfMap rot = map("complex(0,1)*z");
    CHECK(classify(TheoremId::T4_1b, &rot, fn("log(2/(1-z))"), grid()).conclusion ==
          Conclusion::NotCompactEvidence);
    CHECK(classify(TheoremId::C4_2, &rot, fn("z^3"), grid()).conclusion == Conclusion::Compact);
}

TEST_CASE("little Bloch membership") {
    const auto poly = little_bloch_membership(fn("z^3-2*z+1"), grid());
    CHECK(poly.status == B0Membership::InB0);
    const auto lg = little_bloch_membership(fn("log(2/(1-z))"), grid());
    CHECK(lg.status == B0Membership::NotInB0Evidence);
    REQUIRE(lg.witness.has_value());
    CHECK(std::abs(lg.witness->imag()) < 1e-12);
    CHECK(lg.witness->real() > 0.99);
    const auto c = little_bloch_membership(fn("complex(2,3)"), grid());
    CHECK(c.status == B0Membership::InB0);
    for (const auto& s : c.field.shell_sups) CHECK(s.sup == 0.0);
}
