#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "blochlab/harness.hpp"

namespace blochlab {

/// A named invariant check. Suites: "identities", "bounds", "theorems".
struct InvariantCheck {
    std::string name;
    std::string suite;
    std::string description;
    std::function<InvariantResult()> run;
};

/// Every invariant of every module, in a fixed order.
const std::vector<InvariantCheck>& invariant_checks();

/// Runs the checks of `suite` ("all" selects every suite) whose name contains
/// `filter`. Throws std::invalid_argument for an unknown suite.
std::vector<InvariantResult> run_checks(std::string_view suite, std::string_view filter = {});

/// Runs one check by exact name; throws std::out_of_range when unknown.
InvariantResult run_check(std::string_view name);

/// DSL expressions covering every operator, used by the round-trip checks.
std::vector<std::string> expression_corpus();

/// Reproducible self-maps built by composing rotations, Mobius factors and
/// shrinking factors rho z^m (rho in [0.3, 0.95], m in {1, 2}).
std::vector<Expr> random_self_maps(std::size_t count, unsigned seed);

}  // namespace blochlab
