#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blochlab/analytic.hpp"
#include "blochlab/config.hpp"
#include "blochlab/diskgeom.hpp"

namespace blochlab {

/// Pointwise criterion fields.
///   KI               |phi^#(z)| |g(phi(z)) - g(z)|
///   KJ               (1 - |z|^2) |g'(phi(z)) phi'(z) - g'(z)|
///   KJlog            KJ * ln(2 / (1 - |phi(z)|^2))
///   Lg, LgLogBoundedness
///                    (1 - |z|^2) |g'(z)| ln(2 / (1 - |z|^2))
enum class CriterionKind { KI, KJ, KJlog, Lg, LgLogBoundedness };

std::string_view to_string(CriterionKind k);
std::optional<CriterionKind> criterion_from_string(std::string_view s);

/// Which modulus decides the shell a sample is filed under.
enum class Bucketing { Default, ByZ, ByPhi };

struct ShellSup {
    int shell;
    double sup;
    cplx arg;
    std::size_t count;  // samples filed in this shell
};

struct CriterionReport {
    std::string name;  // criterion name, or a field label
    std::optional<CriterionKind> kind;
    bool by_phi = false;
    double sup_value = 0.0;
    cplx arg_sup{};
    std::vector<ShellSup> shell_sups;  // nonempty shells, increasing index
    double boundary_limsup_estimate = 0.0;
    bool vacuous_boundary = false;

    /// Sups of the last n nonempty shells, innermost first.
    std::vector<double> last_shells(std::size_t n = 3) const;
};

/// Requires phi for KI, KJ and KJlog.
double criterion_value(CriterionKind kind, const SelfMap* phi, const AnalyticFn& g, cplx z);

/// Throws std::invalid_argument on an empty grid or a missing phi.
CriterionReport evaluate_criterion(CriterionKind kind, const SelfMap* phi, const AnalyticFn& g, const DiskGrid& grid,
                                   Bucketing bucketing = Bucketing::Default);

enum class TheoremId { T3_1, T3_2, C3_3, C3_4, T4_1a, T4_1b, C4_2, C4_3, P4_6, P4_7, T4_9 };

std::string_view to_string(TheoremId t);
std::optional<TheoremId> theorem_from_string(std::string_view s);
const std::vector<TheoremId>& all_theorems();

enum class Conclusion { Bounded, NotBoundedEvidence, Compact, NotCompactEvidence, Inconclusive };

std::string_view to_string(Conclusion c);

struct Verdict {
    TheoremId theorem;
    Conclusion conclusion;
    std::vector<CriterionReport> evidence;
    Thresholds thresholds;
    std::optional<cplx> witness;
    std::string note;
};

/// The input pair does not satisfy the theorem's standing hypothesis
/// (e.g. J_g unbounded on the Bloch space for T4.9).
class PreconditionFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reduce the theorem's criterion reports to a three-state verdict.
/// phi may be null only for T4.9.
Verdict classify(TheoremId theorem, const SelfMap* phi, const AnalyticFn& g, const DiskGrid& grid,
                 const Thresholds& thresholds = {});

enum class B0Membership { InB0, NotInB0Evidence, Inconclusive };

std::string_view to_string(B0Membership m);

struct B0Report {
    B0Membership status;
    CriterionReport field;  // shells of (1 - |z|^2)|g'(z)| by |z|
    std::optional<cplx> witness;
};

B0Report little_bloch_membership(const AnalyticFn& g, const DiskGrid& grid, const Thresholds& thresholds = {});

// Trend rules shared by classify and the harness.
namespace trend {
/// Non-increasing up to a relative 1e-12.
bool nonincreasing(const std::vector<double>& s);
/// Each value at most 0.9 of its predecessor.
bool decaying(const std::vector<double>& s);
bool strictly_increasing(const std::vector<double>& s);
/// Zero-limit evidence: limsup below tol with a non-increasing tail.
bool zero_limit(const CriterionReport& r, double compact_tol);
/// Non-zero-limit evidence: the whole tail at or above tol and not decaying.
bool nonzero_limit(const CriterionReport& r, double compact_tol);
/// Divergence evidence: strictly increasing tail ending above the threshold.
bool divergent(const CriterionReport& r, double divergence);
}  // namespace trend

/// Generic shell report for a scalar field; bucket(z) gives the modulus used
/// to pick the shell.
template <class Field, class Bucket>
CriterionReport shell_report(std::string name, const Field& field, const Bucket& bucket, const DiskGrid& grid) {
    CriterionReport rep;
    rep.name = std::move(name);
    std::vector<ShellSup> shells(static_cast<std::size_t>(grid.shell_count()));
    for (int k = 0; k < grid.shell_count(); ++k) shells[k] = {k, -1.0, {}, 0};
    rep.sup_value = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx z = grid.points[i];
        const double v = field(z);
        const int k = shell_of_modulus(bucket(z), grid.max_shell);
        auto& s = shells[static_cast<std::size_t>(k)];
        ++s.count;
        if (v > s.sup) {
            s.sup = v;
            s.arg = z;
        }
        if (v > rep.sup_value) {
            rep.sup_value = v;
            rep.arg_sup = z;
        }
    }
    for (const auto& s : shells)
        if (s.count > 0) rep.shell_sups.push_back(s);
    if (rep.sup_value < 0.0) rep.sup_value = 0.0;
    double lim = 0.0;
    for (double v : rep.last_shells(3)) lim = std::max(lim, v);
    rep.boundary_limsup_estimate = lim;
    return rep;
}

}  // namespace blochlab
