#include "blochlab/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace blochlab {

std::string_view to_string(CriterionKind k) {
    switch (k) {
        case CriterionKind::KI: return "KI";
        case CriterionKind::KJ: return "KJ";
        case CriterionKind::KJlog: return "KJlog";
        case CriterionKind::Lg: return "Lg";
        case CriterionKind::LgLogBoundedness: return "LgLogBoundedness";
    }
    return "?";
}

std::optional<CriterionKind> criterion_from_string(std::string_view s) {
    for (auto k : {CriterionKind::KI, CriterionKind::KJ, CriterionKind::KJlog, CriterionKind::Lg,
                   CriterionKind::LgLogBoundedness})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::vector<double> CriterionReport::last_shells(std::size_t n) const {
    std::vector<double> out;
    const std::size_t start = shell_sups.size() > n ? shell_sups.size() - n : 0;
    for (std::size_t i = start; i < shell_sups.size(); ++i) out.push_back(shell_sups[i].sup);
    return out;
}

namespace {

bool needs_phi(CriterionKind k) {
    return k == CriterionKind::KI || k == CriterionKind::KJ || k == CriterionKind::KJlog;
}

// ln(2 / (1 - |w|^2)) >= ln 2 > 0 on the disk.
double log_weight(cplx w) { return std::log(2.0 / one_minus_sq(w)); }

}  // namespace

double criterion_value(CriterionKind kind, const SelfMap* phi, const AnalyticFn& g, cplx z) {
    if (needs_phi(kind) && phi == nullptr)
        throw std::invalid_argument(std::string(to_string(kind)) + " requires a self-map");
    switch (kind) {
        case CriterionKind::KI: {
            const cplx w = (*phi)(z);
            return std::abs(schwarz_derivative(*phi, z)) * std::abs(g(w) - g(z));
        }
        case CriterionKind::KJ: {
            const cplx w = (*phi)(z);
            return one_minus_sq(z) * std::abs(g.deriv(w) * phi->deriv(z) - g.deriv(z));
        }
        case CriterionKind::KJlog: {
            const cplx w = (*phi)(z);
            return one_minus_sq(z) * std::abs(g.deriv(w) * phi->deriv(z) - g.deriv(z)) * log_weight(w);
        }
        case CriterionKind::Lg:
        case CriterionKind::LgLogBoundedness:
            return one_minus_sq(z) * std::abs(g.deriv(z)) * log_weight(z);
    }
    return 0.0;
}

CriterionReport evaluate_criterion(CriterionKind kind, const SelfMap* phi, const AnalyticFn& g, const DiskGrid& grid,
                                   Bucketing bucketing) {
    if (grid.size() == 0) throw std::invalid_argument("evaluate_criterion: empty grid");
    if (needs_phi(kind) && phi == nullptr)
        throw std::invalid_argument(std::string(to_string(kind)) + " requires a self-map");

    const bool by_phi = bucketing == Bucketing::ByPhi || (bucketing == Bucketing::Default && needs_phi(kind));
    if (by_phi && phi == nullptr) throw std::invalid_argument("bucketing by |phi(z)| requires a self-map");

    auto field = [&](cplx z) { return criterion_value(kind, phi, g, z); };
    CriterionReport rep =
        by_phi ? shell_report(std::string(to_string(kind)), field, [&](cplx z) { return std::abs((*phi)(z)); }, grid)
               : shell_report(std::string(to_string(kind)), field, [](cplx z) { return std::abs(z); }, grid);
    rep.kind = kind;
    rep.by_phi = by_phi;
    if (by_phi) {
        // Empty limit set |phi(z)| -> 1 when phi stays a resolution step inside.
        const double resolution = std::ldexp(1.0, -grid.max_shell);
        rep.vacuous_boundary = phi->sup_modulus_estimate() < 1.0 - resolution;
        if (rep.vacuous_boundary) rep.boundary_limsup_estimate = 0.0;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Trend rules

namespace trend {

bool nonincreasing(const std::vector<double>& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] > s[i - 1] * (1.0 + 1e-12) + 1e-300) return false;
    return true;
}

bool decaying(const std::vector<double>& s) {
    if (s.size() < 2) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] > 0.9 * s[i - 1]) return false;
    return true;
}

bool strictly_increasing(const std::vector<double>& s) {
    if (s.size() < 2) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i] > s[i - 1])) return false;
    return true;
}

bool zero_limit(const CriterionReport& r, double compact_tol) {
    if (r.vacuous_boundary) return true;
    return r.boundary_limsup_estimate < compact_tol && nonincreasing(r.last_shells(3));
}

bool nonzero_limit(const CriterionReport& r, double compact_tol) {
    if (r.vacuous_boundary) return false;
    const auto tail = r.last_shells(3);
    if (tail.empty()) return false;
    return *std::min_element(tail.begin(), tail.end()) >= compact_tol && !decaying(tail);
}

bool divergent(const CriterionReport& r, double divergence) {
    const auto tail = r.last_shells(3);
    return tail.size() == 3 && strictly_increasing(tail) && tail.back() > divergence;
}

}  // namespace trend

// ---------------------------------------------------------------------------
// Verdicts

std::string_view to_string(TheoremId t) {
    switch (t) {
        case TheoremId::T3_1: return "T3.1";
        case TheoremId::T3_2: return "T3.2";
        case TheoremId::C3_3: return "C3.3";
        case TheoremId::C3_4: return "C3.4";
        case TheoremId::T4_1a: return "T4.1a";
        case TheoremId::T4_1b: return "T4.1b";
        case TheoremId::C4_2: return "C4.2";
        case TheoremId::C4_3: return "C4.3";
        case TheoremId::P4_6: return "P4.6";
        case TheoremId::P4_7: return "P4.7";
        case TheoremId::T4_9: return "T4.9";
    }
    return "?";
}

const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids = {TheoremId::T3_1,  TheoremId::T3_2,  TheoremId::C3_3, TheoremId::C3_4,
                                               TheoremId::T4_1a, TheoremId::T4_1b, TheoremId::C4_2, TheoremId::C4_3,
                                               TheoremId::P4_6,  TheoremId::P4_7,  TheoremId::T4_9};
    return ids;
}

std::optional<TheoremId> theorem_from_string(std::string_view s) {
    for (TheoremId t : all_theorems())
        if (to_string(t) == s) return t;
    return std::nullopt;
}

std::string_view to_string(Conclusion c) {
    switch (c) {
        case Conclusion::Bounded: return "Bounded";
        case Conclusion::NotBoundedEvidence: return "NotBoundedEvidence";
        case Conclusion::Compact: return "Compact";
        case Conclusion::NotCompactEvidence: return "NotCompactEvidence";
        case Conclusion::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string_view to_string(B0Membership m) {
    switch (m) {
        case B0Membership::InB0: return "InB0";
        case B0Membership::NotInB0Evidence: return "NotInB0Evidence";
        case B0Membership::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

constexpr const char* kNote =
    "suprema are grid maxima (lower bounds of the true suprema); boundary limits are estimated from the last three "
    "nonempty shells";

std::optional<cplx> outer_witness(const CriterionReport& r) {
    if (r.shell_sups.empty()) return std::nullopt;
    const std::size_t start = r.shell_sups.size() > 3 ? r.shell_sups.size() - 3 : 0;
    auto it = std::max_element(r.shell_sups.begin() + static_cast<std::ptrdiff_t>(start), r.shell_sups.end(),
                               [](const ShellSup& a, const ShellSup& b) { return a.sup < b.sup; });
    return it->arg;
}

// Boundedness: sup below the divergence threshold.
Verdict boundedness(TheoremId id, CriterionReport rep, const Thresholds& th) {
    Verdict v{id, Conclusion::Inconclusive, {}, th, std::nullopt, kNote};
    if (rep.sup_value < th.divergence) {
        v.conclusion = Conclusion::Bounded;
    } else if (trend::divergent(rep, th.divergence)) {
        v.conclusion = Conclusion::NotBoundedEvidence;
        v.witness = rep.arg_sup;
    }
    v.evidence.push_back(std::move(rep));
    return v;
}

// Compactness: bounded first, then the boundary limit of the same field.
Verdict compactness(TheoremId id, CriterionReport rep, const Thresholds& th) {
    Verdict v = boundedness(id, std::move(rep), th);
    if (v.conclusion != Conclusion::Bounded) return v;
    const CriterionReport& r = v.evidence.back();
    if (trend::zero_limit(r, th.compact_tol)) {
        v.conclusion = Conclusion::Compact;
    } else if (trend::nonzero_limit(r, th.compact_tol)) {
        v.conclusion = Conclusion::NotCompactEvidence;
        v.witness = outer_witness(r);
    } else {
        v.conclusion = Conclusion::Inconclusive;
    }
    return v;
}

const SelfMap& need(const SelfMap* phi, TheoremId id) {
    if (phi == nullptr) throw std::invalid_argument(std::string(to_string(id)) + " requires a self-map");
    return *phi;
}

}  // namespace

Verdict classify(TheoremId theorem, const SelfMap* phi, const AnalyticFn& g, const DiskGrid& grid,
                 const Thresholds& th) {
    switch (theorem) {
        case TheoremId::T3_1:
            return boundedness(theorem, evaluate_criterion(CriterionKind::KI, &need(phi, theorem), g, grid), th);
        case TheoremId::T3_2: {
            // Standing hypothesis g in H-infinity.
            CriterionReport hinf = shell_report("HinfModulus", [&](cplx z) { return std::abs(g(z)); },
                                                [](cplx z) { return std::abs(z); }, grid);
            if (hinf.sup_value >= th.divergence && trend::divergent(hinf, th.divergence))
                throw PreconditionFailed("T3.2 requires g in H-infinity; sampled |g| diverges");
            Verdict v = compactness(theorem, evaluate_criterion(CriterionKind::KI, &need(phi, theorem), g, grid), th);
            v.evidence.push_back(std::move(hinf));
            return v;
        }
        case TheoremId::C3_3:
            return compactness(theorem, evaluate_criterion(CriterionKind::KI, &need(phi, theorem), g, grid), th);
        case TheoremId::C3_4:
            return compactness(theorem,
                               evaluate_criterion(CriterionKind::KI, &need(phi, theorem), g, grid, Bucketing::ByZ), th);
        case TheoremId::T4_1a:
            return boundedness(theorem, evaluate_criterion(CriterionKind::KJ, &need(phi, theorem), g, grid), th);
        case TheoremId::T4_1b:
            return compactness(theorem, evaluate_criterion(CriterionKind::KJ, &need(phi, theorem), g, grid), th);
        case TheoremId::C4_2:
            return compactness(theorem,
                               evaluate_criterion(CriterionKind::KJ, &need(phi, theorem), g, grid, Bucketing::ByZ), th);
        case TheoremId::C4_3: {
            B0Report b0 = little_bloch_membership(g, grid, th);
            if (b0.status == B0Membership::NotInB0Evidence)
                throw PreconditionFailed("C4.3 requires g in the little Bloch space; sampled evidence says otherwise");
            Verdict v = compactness(theorem, evaluate_criterion(CriterionKind::KJ, &need(phi, theorem), g, grid), th);
            v.evidence.push_back(std::move(b0.field));
            if (b0.status == B0Membership::Inconclusive && v.conclusion == Conclusion::Compact)
                v.conclusion = Conclusion::Inconclusive;
            return v;
        }
        case TheoremId::P4_6:
            return boundedness(theorem, evaluate_criterion(CriterionKind::KJlog, &need(phi, theorem), g, grid), th);
        case TheoremId::P4_7:
            return compactness(theorem, evaluate_criterion(CriterionKind::KJlog, &need(phi, theorem), g, grid), th);
        case TheoremId::T4_9: {
            // J_g must be bounded on the Bloch space.
            CriterionReport pre = evaluate_criterion(CriterionKind::LgLogBoundedness, nullptr, g, grid);
            if (pre.sup_value >= th.divergence)
                throw PreconditionFailed("T4.9 requires J_g bounded on the Bloch space; LgLogBoundedness sup " +
                                         std::to_string(pre.sup_value) + " exceeds the divergence threshold");
            Verdict v = compactness(theorem, evaluate_criterion(CriterionKind::Lg, nullptr, g, grid), th);
            v.evidence.push_back(std::move(pre));
            return v;
        }
    }
    throw std::invalid_argument("unknown theorem id");
}

B0Report little_bloch_membership(const AnalyticFn& g, const DiskGrid& grid, const Thresholds& th) {
    CriterionReport field = shell_report(
        "BlochDensity", [&](cplx z) { return one_minus_sq(z) * std::abs(g.deriv(z)); },
        [](cplx z) { return std::abs(z); }, grid);
    B0Report out{B0Membership::Inconclusive, std::move(field), std::nullopt};
    if (trend::zero_limit(out.field, th.compact_tol)) {
        out.status = B0Membership::InB0;
    } else if (trend::nonzero_limit(out.field, th.compact_tol)) {
        out.status = B0Membership::NotInB0Evidence;
        out.witness = outer_witness(out.field);
    }
    return out;
}

}  // namespace blochlab
