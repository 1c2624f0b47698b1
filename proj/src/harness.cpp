#include "blochlab/harness.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "blochlab/operators.hpp"

namespace blochlab {

// ---------------------------------------------------------------------------
// Panels

std::vector<std::string> automorphism_panel() {
    return {"mobius(0.5)",
            "mobius(-0.3)",
            "mobius(complex(0,0.6))",
            "complex(0,1)*mobius(0.2)",
            "mobius(complex(0.4,-0.4))",
            "-mobius(0.7)",
            "complex(0.6,0.8)*mobius(complex(-0.5,0.3))",
            "mobius(complex(0.3,0.3))*complex(-0.8,0.6)"};
}

std::vector<std::string> shrinker_panel() { return {"z/2", "z^2/2", "(z+0.3)/2"}; }

std::vector<double> rotation_angles() {
    std::vector<double> t;
    for (int k = 1; k <= 15; ++k) t.push_back(2.0 * std::numbers::pi * k / 16.0);
    return t;
}

std::string rotation_expr(double t) {
    const cplx u = std::polar(1.0, t);
    return "complex(" + fmt17(u.real()) + "," + fmt17(u.imag()) + ")*z";
}

std::vector<std::string> rotation_panel() {
    std::vector<std::string> out;
    for (double t : rotation_angles()) out.push_back(rotation_expr(t));
    return out;
}

std::vector<std::string> mixed_panel() {
    const auto rot = rotation_angles();
    return {"z",
            "z/2",
            "z^2/2",
            "(z+0.3)/2",
            "mobius(0.5)",
            "-mobius(0.7)",
            "complex(0,1)*mobius(0.2)",
            "mobius(complex(0,0.6))",
            rotation_expr(rot[2]),
            rotation_expr(rot[9])};
}

std::vector<std::string> g_corpus() {
    return {"1",
            "complex(0.5,-2)",
            "z",
            "z^2",
            "z^3-2*z+1",
            "mobius(0.5)",
            "z*mobius(complex(0,0.3))",
            "log(2/(1-0.5*z))",
            "log(2/(1-0.9*z))",
            "log(2/(1-0.999*z))"};
}

std::vector<std::string> bloch_f_corpus() {
    return {"z",
            "z^2",
            "z^3-z",
            "exp(z)",
            "mobius(0.5)",
            "mobius(complex(-0.3,0.6))",
            "(1-0.81)/(1-0.9*z)",
            "log(2/(1-0.9*z))",
            "log(2/(1-complex(0,0.7)*z))"};
}

std::vector<std::string> hinf_f_corpus() {
    return {"1",
            "z",
            "z^3",
            "mobius(0.5)",
            "exp(z)/3",
            "(1-0.36)/(1-0.6*z)",
            "(1-0.64)/(1-0.8*z)*mobius(0.8)",
            "1-mobius(complex(0.2,0.5))"};
}

// ---------------------------------------------------------------------------
// Classification runs

namespace {

OutputFormat format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    throw SpecError("format must be \"json\" or \"csv\", got \"" + s + "\"");
}

std::vector<std::string> string_list(const json& j, const char* key) {
    if (!j.contains(key)) throw SpecError(std::string("missing key \"") + key + "\"");
    const json& arr = j.at(key);
    if (!arr.is_array()) throw SpecError(std::string("\"") + key + "\" must be a list of strings");
    std::vector<std::string> out;
    for (const auto& el : arr) {
        if (!el.is_string()) throw SpecError(std::string("\"") + key + "\" must be a list of strings");
        out.push_back(el.get<std::string>());
    }
    return out;
}

void validate(const ExperimentSpec& spec) {
    if (spec.phi_exprs.empty()) throw SpecError("phi list is empty");
    if (spec.g_exprs.empty()) throw SpecError("g list is empty");
    if (spec.theorem_ids.empty()) throw SpecError("theorem list is empty");
    if (spec.grid.max_shell < 4 || spec.grid.base_angular < 64)
        throw SpecError("grid.max_shell must be >= 4 and grid.base_angular >= 64");
}

}  // namespace

ExperimentSpec spec_from_json(const json& j, const Config& defaults) {
    if (!j.is_object()) throw SpecError("experiment spec must be a JSON object");
    ExperimentSpec spec;
    spec.grid = defaults.grid;
    spec.thresholds = defaults.thresholds;
    try {
        spec.phi_exprs = string_list(j, "phi");
        spec.g_exprs = string_list(j, "g");
        for (const auto& id : string_list(j, "theorems")) {
            auto t = theorem_from_string(id);
            if (!t) throw SpecError("unknown theorem id \"" + id + "\"");
            spec.theorem_ids.push_back(*t);
        }
        if (j.contains("grid")) {
            spec.grid.max_shell = j.at("grid").value("max_shell", spec.grid.max_shell);
            spec.grid.base_angular = j.at("grid").value("base_angular", spec.grid.base_angular);
        }
        if (j.contains("thresholds")) {
            spec.thresholds.divergence = j.at("thresholds").value("divergence", spec.thresholds.divergence);
            spec.thresholds.compact_tol = j.at("thresholds").value("compact_tol", spec.thresholds.compact_tol);
        }
        if (j.contains("format")) spec.format = format_from_string(j.at("format").get<std::string>());
    } catch (const json::exception& e) {
        throw SpecError(std::string("malformed experiment spec: ") + e.what());
    }
    validate(spec);
    return spec;
}

bool SuiteReport::has_errors() const {
    for (const auto& c : cases)
        if (!c.verdict) return true;
    for (const auto& inv : invariants)
        if (!inv.passed) return true;
    return false;
}

SuiteReport run_classification(const ExperimentSpec& spec) {
    validate(spec);
    const auto start = std::chrono::steady_clock::now();
    const DiskGrid grid = make_grid(spec.grid.max_shell, spec.grid.base_angular);

    SuiteReport report;
    json theorems = json::array();
    for (TheoremId t : spec.theorem_ids) theorems.push_back(to_string(t));
    report.config = {{"grid", {{"max_shell", spec.grid.max_shell}, {"base_angular", spec.grid.base_angular}}},
                     {"thresholds", to_json(spec.thresholds)},
                     {"phi", spec.phi_exprs},
                     {"g", spec.g_exprs},
                     {"theorems", theorems}};

    std::vector<std::optional<AnalyticFn>> gs;
    std::vector<std::string> g_errors;
    for (const auto& text : spec.g_exprs) {
        try {
            gs.emplace_back(AnalyticFn::parse(text));
            g_errors.emplace_back();
        } catch (const ParseError& e) {
            gs.emplace_back();
            g_errors.push_back(std::string("parse error in g: ") + e.what());
        }
    }

    for (std::size_t pi = 0; pi < spec.phi_exprs.size(); ++pi) {
        std::optional<SelfMap> phi;
        std::string phi_error;
        try {
            phi = validate_self_map(AnalyticFn::parse(spec.phi_exprs[pi]), grid);
        } catch (const ParseError& e) {
            phi_error = std::string("parse error in phi: ") + e.what();
        } catch (const NotASelfMap& e) {
            phi_error = e.what();
        }
        for (std::size_t gi = 0; gi < spec.g_exprs.size(); ++gi) {
            for (TheoremId t : spec.theorem_ids) {
                CaseResult c{pi, gi, spec.phi_exprs[pi], spec.g_exprs[gi], t, std::nullopt, {}};
                if (!phi_error.empty()) {
                    c.error = phi_error;
                } else if (!g_errors[gi].empty()) {
                    c.error = g_errors[gi];
                } else {
                    try {
                        c.verdict = classify(t, &*phi, *gs[gi], grid, spec.thresholds);
                    } catch (const PreconditionFailed& e) {
                        c.error = std::string("precondition failed: ") + e.what();
                    } catch (const std::exception& e) {
                        c.error = e.what();
                    }
                }
                report.cases.push_back(std::move(c));
            }
        }
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

json report_to_json(const SuiteReport& report, bool include_timing) {
    json cases = json::array();
    for (const auto& c : report.cases) {
        json jc = {{"phi", c.phi}, {"g", c.g}, {"theorem", to_string(c.theorem)}};
        if (c.verdict) {
            const Verdict& v = *c.verdict;
            jc["conclusion"] = to_string(v.conclusion);
            jc["verdict"] = to_json(v);
        } else {
            jc["conclusion"] = nullptr;
            jc["error"] = c.error;
        }
        cases.push_back(std::move(jc));
    }
    json invariants = json::array();
    for (const auto& inv : report.invariants)
        invariants.push_back({{"name", inv.name},
                              {"suite", inv.suite},
                              {"passed", inv.passed},
                              {"slack", inv.slack},
                              {"detail", inv.detail}});
    json out = {{"schema", 1}, {"config", report.config}, {"cases", cases}, {"invariants", invariants}};
    if (include_timing) out["timing"] = {{"elapsed_seconds", report.elapsed_seconds}};
    return out;
}

namespace {
std::string csv_field(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}
}  // namespace

std::string report_to_csv(const SuiteReport& report) {
    std::ostringstream os;
    os << "phi,g,theorem,sup,limsup,verdict\n";
    for (const auto& c : report.cases) {
        os << csv_field(c.phi) << ',' << csv_field(c.g) << ',' << to_string(c.theorem) << ',';
        if (c.verdict && !c.verdict->evidence.empty()) {
            const CriterionReport& r = c.verdict->evidence.front();
            os << fmt17(r.sup_value) << ',' << fmt17(r.boundary_limsup_estimate) << ','
               << to_string(c.verdict->conclusion);
        } else {
            os << ",,Error";
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Rotation averaging

std::string_view to_string(RotationOutcome o) {
    switch (o) {
        case RotationOutcome::ConsistentWithB0: return "ConsistentWithB0";
        case RotationOutcome::Witness: return "Witness";
        case RotationOutcome::Inconsistent: return "Inconsistent";
    }
    return "?";
}

RotationCheck rotation_average_check(const AnalyticFn& g, std::size_t degree, const DiskGrid& grid,
                                     const Thresholds& th) {
    if (degree > kDefaultSeriesCap) throw std::invalid_argument("rotation_average_check: degree exceeds series cap");
    RotationCheck out{RotationOutcome::ConsistentWithB0, std::nullopt, {}, B0Membership::Inconclusive,
                      coeffs_from_samples([&](cplx z) { return g(z); }, degree), 0.0};

    // Averaging g'(e^{it} z) e^{it} over the 16 rotations t = 2 pi k/16 (k = 0
    // contributes zero) keeps only the powers z^{n-1} with 16 | n, so the
    // average equals sum_{16|n} n a_n z^{n-1} - g'(z).
    const TaylorSeries dg = derivative(out.coefficients);
    const auto angles = rotation_angles();
    for (int m = 0; m < 32; ++m) {
        const cplx z = std::polar(0.4, 2.0 * std::numbers::pi * m / 32.0);
        cplx avg{};
        for (double t : angles) {
            const cplx u = std::polar(1.0, t);
            avg += g.deriv(u * z) * u - g.deriv(z);
        }
        avg /= 16.0;
        cplx predicted = -g.deriv(z);
        for (std::size_t n = 16; n < dg.degree_bound() + 1; n += 16) {
            // dg[n-1] = n a_n
            predicted += dg[n - 1] * std::pow(z, static_cast<double>(n - 1));
        }
        out.averaging_residual = std::max(out.averaging_residual, std::abs(avg - predicted));
    }

    bool all_zero = true;
    for (double t : angles) {
        const SelfMap rot = validate_self_map(AnalyticFn::parse(rotation_expr(t)), grid);
        RotationEntry e{t, evaluate_criterion(CriterionKind::KJ, &rot, g, grid, Bucketing::ByZ), false, false};
        e.field.name = "RotationDifference";
        e.zero_trend = trend::zero_limit(e.field, th.compact_tol);
        e.nonzero_trend = trend::nonzero_limit(e.field, th.compact_tol);
        all_zero = all_zero && e.zero_trend;
        if (e.nonzero_trend && !out.witness_t) out.witness_t = t;
        out.rotations.push_back(std::move(e));
    }

    out.membership = little_bloch_membership(g, grid, th).status;
    if (out.witness_t) {
        out.outcome = out.membership == B0Membership::InB0 ? RotationOutcome::Inconsistent : RotationOutcome::Witness;
    } else if (all_zero && out.membership == B0Membership::NotInB0Evidence) {
        out.outcome = RotationOutcome::Inconsistent;
    } else {
        out.outcome = RotationOutcome::ConsistentWithB0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Log-ratio check

HospitalReport hospital_ratio_check(const SelfMap& phi, const DiskGrid& grid) {
    auto weight = [](cplx w) { return std::log(2.0 / one_minus_sq(w)); };
    CriterionReport rep = shell_report(
        "HospitalRatio", [&](cplx z) { return weight(phi(z)) / weight(z); }, [](cplx z) { return std::abs(z); }, grid);

    HospitalReport out{{}, true, 0.0};
    for (const auto& s : rep.shell_sups) {
        const double slack = 0.1 * std::exp2(-0.5 * s.shell);
        const bool within = s.sup <= 1.0 + slack;
        out.shells.push_back({s.shell, s.sup, slack, within});
        out.passed = out.passed && within;
    }
    if (!out.shells.empty()) out.outer_max_ratio = out.shells.back().max_ratio;
    return out;
}

}  // namespace blochlab
