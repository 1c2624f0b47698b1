#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blochlab/config.hpp"
#include "blochlab/criteria.hpp"
#include "blochlab/report.hpp"
#include "blochlab/series.hpp"

namespace blochlab {

// ---------------------------------------------------------------------------
// Built-in panels (DSL strings)

std::vector<std::string> automorphism_panel();  // 8 disk automorphisms
std::vector<std::string> shrinker_panel();      // z/2, z^2/2, (z+0.3)/2
std::vector<std::string> rotation_panel();      // e^{2 pi i k/16} z, k = 1..15
std::vector<double> rotation_angles();          // 2 pi k / 16, k = 1..15
/// Identity, shrinkers, automorphisms and rotations mixed; 10 maps.
std::vector<std::string> mixed_panel();
/// Constants, polynomials, Mobius-based and log(2/(1 - c z)), c in {0.5, 0.9, 0.999}.
std::vector<std::string> g_corpus();
/// Test functions f with finite Bloch seminorm.
std::vector<std::string> bloch_f_corpus();
/// Bounded test functions f.
std::vector<std::string> hinf_f_corpus();

std::string rotation_expr(double t);

// ---------------------------------------------------------------------------
// Classification runs

enum class OutputFormat { Json, Csv };

struct ExperimentSpec {
    std::vector<std::string> phi_exprs;
    std::vector<std::string> g_exprs;
    std::vector<TheoremId> theorem_ids;
    GridParams grid;
    Thresholds thresholds;
    OutputFormat format = OutputFormat::Json;
};

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Keys: phi, g, theorems (lists), grid.{max_shell,base_angular},
/// thresholds.{divergence,compact_tol}, format ("json" | "csv"). Missing
/// grid/threshold keys fall back to `defaults`.
ExperimentSpec spec_from_json(const json& j, const Config& defaults = {});

struct CaseResult {
    std::size_t phi_index, g_index;
    std::string phi, g;
    TheoremId theorem;
    std::optional<Verdict> verdict;
    std::string error;  // empty when verdict is set
};

struct InvariantResult {
    std::string name;
    std::string suite;
    bool passed;
    double slack;  // measured margin; >= 0 when passed
    std::string detail;
};

struct SuiteReport {
    json config;
    std::vector<CaseResult> cases;
    std::vector<InvariantResult> invariants;
    double elapsed_seconds = 0.0;

    bool has_errors() const;
};

/// Throws SpecError for empty lists or out-of-range grid parameters; per-case
/// parse and validation failures are recorded in the report.
SuiteReport run_classification(const ExperimentSpec& spec);

/// {schema, config, cases[], invariants[]} plus a separate timing object when
/// include_timing is set.
json report_to_json(const SuiteReport& report, bool include_timing = true);

/// One row per (phi, g, theorem): phi,g,theorem,sup,limsup,verdict.
std::string report_to_csv(const SuiteReport& report);

// ---------------------------------------------------------------------------
// Rotation averaging (little Bloch space via rotations)

enum class RotationOutcome { ConsistentWithB0, Witness, Inconsistent };

std::string_view to_string(RotationOutcome o);

struct RotationEntry {
    double t;
    CriterionReport field;  // (1-|z|^2)|g'(e^{it} z) e^{it} - g'(z)| by |z|
    bool zero_trend;
    bool nonzero_trend;
};

struct RotationCheck {
    RotationOutcome outcome;
    std::optional<double> witness_t;
    std::vector<RotationEntry> rotations;
    B0Membership membership;
    TaylorSeries coefficients;
    /// max |rotation average - aliased series prediction| on |z| = 0.4.
    double averaging_residual;
};

RotationCheck rotation_average_check(const AnalyticFn& g, std::size_t degree, const DiskGrid& grid,
                                     const Thresholds& thresholds = {});

// ---------------------------------------------------------------------------
// Log-ratio check

struct HospitalShell {
    int shell;
    double max_ratio;
    double slack;
    bool within;
};

struct HospitalReport {
    std::vector<HospitalShell> shells;
    bool passed;
    double outer_max_ratio;  // maximum on the outermost shell
};

/// Per |z|-shell maximum of
///   (ln 2 - ln(1 - |phi(z)|^2)) / (ln 2 - ln(1 - |z|^2))
/// with slack(k) = 0.1 * 2^(-k/2).
HospitalReport hospital_ratio_check(const SelfMap& phi, const DiskGrid& grid);

}  // namespace blochlab
