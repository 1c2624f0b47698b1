#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "blochlab/checks.hpp"
#include "blochlab/harness.hpp"

using namespace blochlab;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("panels") {
    CHECK(automorphism_panel().size() == 8);
    CHECK(shrinker_panel().size() == 3);
    CHECK(rotation_panel().size() == 15);
    CHECK(mixed_panel().size() == 10);
    const auto angles = rotation_angles();
    CHECK(angles.front() > 0);
    CHECK(angles.back() < 2 * 3.141592653589793);
    for (const auto& list : {automorphism_panel(), shrinker_panel(), rotation_panel(), mixed_panel(), g_corpus(),
                              bloch_f_corpus(), hinf_f_corpus()})
        for (const auto& t : list) CHECK_NOTHROW(AnalyticFn::parse(t));
}

TEST_CASE("spec parsing") {
    const json j = json::parse(R"js({"phi": ["z/2"], "g": ["z"], "theorems": ["T3.2"],
                                   "grid": {"max_shell": 8}, "format": "csv"})js");
    const ExperimentSpec s = spec_from_json(j);
    CHECK(s.grid.max_shell == 8);
    CHECK(s.grid.base_angular == 64);
    CHECK(s.format == OutputFormat::Csv);
    CHECK(s.theorem_ids == std::vector<TheoremId>{TheoremId::T3_2});

    CHECK_THROWS_AS(spec_from_json(json::parse(R"js({"phi": ["z"], "g": ["z"], "theorems": []})js")), SpecError);
    CHECK_THROWS_AS(spec_from_json(json::parse(R"js({"phi": ["z"], "g": ["z"], "theorems": ["T7"]})js")), SpecError);
    CHECK_THROWS_AS(spec_from_json(json::parse(R"js({"phi": ["z"], "theorems": ["T3.1"]})js")), SpecError);
    CHECK_THROWS_AS(spec_from_json(json::parse(R"js({"phi": ["z"], "g": [1], "theorems": ["T3.1"]})js")), SpecError);
    CHECK_THROWS_AS(
        spec_from_json(json::parse(R"js({"phi": ["z"], "g": ["z"], "theorems": ["T3.1"], "grid": {"max_shell": 2}})js")),
        SpecError);
    CHECK_THROWS_AS(spec_from_json(json::parse("[1, 2]")), SpecError);
}

TEST_CASE("classification runs") {
    ExperimentSpec spec;
    spec.phi_exprs = {"z/2"};
    spec.g_exprs = {"z"};
    spec.theorem_ids = {TheoremId::T3_2};
    const SuiteReport one = run_classification(spec);
    REQUIRE(one.cases.size() == 1);
    REQUIRE(one.cases[0].verdict.has_value());
    CHECK(one.cases[0].verdict->conclusion == Conclusion::Compact);
    CHECK_FALSE(one.has_errors());

    spec.phi_exprs = {"z/2", "2*z", "mobius(0.5)"};
    spec.g_exprs = {"z", "z^2+", "log(2/(1-z))"};
    spec.theorem_ids = {TheoremId::T3_2, TheoremId::C4_3};
    const SuiteReport rep = run_classification(spec);
    CHECK(rep.cases.size() == 18);
    CHECK(rep.has_errors());
    std::size_t parse_errors = 0, map_errors = 0, precondition = 0;
    for (const auto& c : rep.cases) {
        if (c.verdict) continue;
        if (c.error.find("parse error in g") != std::string::npos) ++parse_errors;
        if (c.error.find("not a self-map") != std::string::npos || c.phi == "2*z") ++map_errors;
        if (c.error.find("precondition") != std::string::npos) ++precondition;
    }
    CHECK(map_errors == 6);
    CHECK(parse_errors >= 4);
    CHECK(precondition >= 1);

    const json j = report_to_json(rep);
    CHECK(j["schema"] == 1);
    CHECK(j["cases"].size() == 18);
    CHECK(j.contains("timing"));
    CHECK_FALSE(report_to_json(rep, false).contains("timing"));
    CHECK(dump_json(report_to_json(rep, false)) == dump_json(report_to_json(run_classification(spec), false)));

    const std::string csv = report_to_csv(rep);
    CHECK(csv.rfind("phi,g,theorem,sup,limsup,verdict\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 19);
    CHECK(csv.find("\"z/2\",\"z\",T3.2,") != std::string::npos);
    CHECK(csv.find(",Error") != std::string::npos);

    spec.theorem_ids.clear();
    CHECK_THROWS_AS(run_classification(spec), SpecError);
}

TEST_CASE("JSON numbers use 17 significant digits") {
    const std::string s = dump_json(json{{"x", 0.1}, {"n", std::nan("")}, {"k", 3}}, 0);
    CHECK(s == R"js({"k":3,"n":null,"x":0.10000000000000001})js");
}

TEST_CASE("rotation averaging") {
    const DiskGrid grid = make_grid();
    const auto sq = rotation_average_check(AnalyticFn::parse("z^2"), 32, grid);
    CHECK(sq.outcome == RotationOutcome::ConsistentWithB0);
    CHECK(sq.membership == B0Membership::InB0);
    CHECK(std::abs(sq.coefficients[2] - 1.0) < 1e-12);
    CHECK(sq.rotations.size() == 15);

    const auto lg = rotation_average_check(AnalyticFn::parse("log(2/(1-z))"), 32, grid);
    CHECK(lg.outcome == RotationOutcome::Witness);
    REQUIRE(lg.witness_t.has_value());
    CHECK(*lg.witness_t > 0);
    for (const auto& r : lg.rotations)
        if (r.t == *lg.witness_t) CHECK(r.field.boundary_limsup_estimate >= 1.9);
    CHECK(lg.averaging_residual < 1e-9);

    const auto c = rotation_average_check(AnalyticFn::parse("7"), 32, grid);
    CHECK(c.outcome == RotationOutcome::ConsistentWithB0);
    for (const auto& r : c.rotations) CHECK(r.field.sup_value == 0.0);

    CHECK_THROWS_AS(rotation_average_check(AnalyticFn::parse("z"), 65, grid), std::invalid_argument);
}

TEST_CASE("log ratio") {
    const DiskGrid grid = make_grid();
    const auto id = hospital_ratio_check(validate_self_map(AnalyticFn::parse("z"), grid), grid);
    CHECK(id.passed);
    for (const auto& s : id.shells) CHECK(s.max_ratio == 1.0);
    const auto half = hospital_ratio_check(validate_self_map(AnalyticFn::parse("z/2"), grid), grid);
    for (std::size_t i = 1; i < half.shells.size(); ++i) CHECK(half.shells[i].max_ratio < 1.0);
    CHECK(half.passed);
    // The ratio tends to 1 only logarithmically for automorphisms moving 0.
    const DiskGrid fine = make_grid(16, 64);
    const auto mob = hospital_ratio_check(validate_self_map(AnalyticFn::parse("mobius(0.5)"), fine), fine);
    CHECK(mob.outer_max_ratio > 0.9);
    CHECK(mob.outer_max_ratio < 1.1);
    CHECK_FALSE(mob.passed);
}

TEST_CASE("configuration") {
    const std::string ok = temp_file("blochlab_ok.ini",
                                     "# comment\n[grid]\nmax_shell = 10\nbase_angular = 96\n"
                                     "[thresholds]\ncompact_tol = 0.005\n; another\n[quadrature]\ntol = 1e-11\n");
    const Config c = load_config(ok);
    CHECK(c.grid.max_shell == 10);
    CHECK(c.grid.base_angular == 96);
    CHECK(c.thresholds.compact_tol == 0.005);
    CHECK(c.thresholds.divergence == 1e3);
    CHECK(c.quadrature.abs_tol == 1e-11);

    CHECK_THROWS_AS(load_config(temp_file("blochlab_bad.ini", "[grid]\nmax_shels = 3\n")), ConfigError);
    CHECK_THROWS_AS(load_config(temp_file("blochlab_bad2.ini", "[grid]\nmax_shell = 2\n")), ConfigError);
    CHECK_THROWS_AS(load_config(temp_file("blochlab_bad3.ini", "[grid]\nmax_shell = many\n")), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/blochlab.ini"), ConfigError);

    ::setenv("BLOCHLAB_CONFIG", ok.c_str(), 1);
    CHECK(resolve_config(std::nullopt).grid.max_shell == 10);
    ::unsetenv("BLOCHLAB_CONFIG");
    CHECK(resolve_config(std::nullopt).grid.max_shell == 14);
}

TEST_CASE("check registry") {
    std::set<std::string> names;
    for (const auto& c : invariant_checks()) {
        CHECK(names.insert(c.name).second);
        CHECK((c.suite == "identities" || c.suite == "bounds" || c.suite == "theorems"));
    }
    CHECK(names.size() >= 25);
    CHECK_THROWS_AS(run_check("no.such.check"), std::out_of_range);
    CHECK_THROWS_AS(run_checks("misc"), std::invalid_argument);
    const auto r = run_checks("identities", "series.");
    CHECK(r.size() == 3);
    for (const auto& x : r) CHECK(x.passed);
    CHECK(random_self_maps(5, 1).size() == 5);
}
