#include "blochlab/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blochlab/checks.hpp"
#include "blochlab/harness.hpp"
#include "blochlab/operators.hpp"

namespace blochlab {

namespace {

// Failure carrying the exit code and the error kind printed on stderr.
struct CliFailure {
    int code;
    std::string kind;
    std::string message;
};

[[noreturn]] void fail(int code, std::string kind, std::string message) {
    throw CliFailure{code, std::move(kind), std::move(message)};
}

AnalyticFn parse_fn(const std::string& what, const std::string& text) {
    try {
        return AnalyticFn::parse(text);
    } catch (const ParseError& e) {
        fail(2, "parse", what + " at offset " + std::to_string(e.offset()) + ": " + e.what());
    }
}

SelfMap parse_map(const std::string& text, const DiskGrid& grid) {
    const AnalyticFn phi = parse_fn("--phi", text);
    try {
        return validate_self_map(phi, grid);
    } catch (const NotASelfMap& e) {
        fail(2, "self-map", e.what());
    }
}

GridParams parse_grid(const std::string& text, GridParams fallback) {
    if (text.empty()) return fallback;
    int k = 0, a = 0;
    char comma = 0;
    std::istringstream is(text);
    if (!(is >> k >> comma >> a) || comma != ',' || !is.eof())
        fail(2, "usage", "--grid expects K,A (e.g. 14,64), got \"" + text + "\"");
    if (k < 4 || a < 64) fail(2, "usage", "--grid needs K >= 4 and A >= 64");
    return {k, a};
}

json sup_json(const SupEstimate& s) { return {{"value", s.value}, {"arg", to_json(s.arg)}, {"refined", s.refined}}; }

void print_sup(std::ostream& out, const char* label, const SupEstimate& s) {
    out << label << " " << fmt17(s.value) << "\n"
        << "arg " << fmt17(s.arg.real()) << " " << fmt17(s.arg.imag()) << "\n";
}

void print_report(std::ostream& out, const CriterionReport& r) {
    out << "criterion " << r.name << (r.by_phi ? " (by |phi|)" : "") << "\n"
        << "sup " << fmt17(r.sup_value) << "\n"
        << "arg " << fmt17(r.arg_sup.real()) << " " << fmt17(r.arg_sup.imag()) << "\n"
        << "limsup " << fmt17(r.boundary_limsup_estimate) << "\n"
        << "vacuous " << (r.vacuous_boundary ? "true" : "false") << "\n"
        << "shell sup count\n";
    for (const auto& s : r.shell_sups) out << s.shell << " " << fmt17(s.sup) << " " << s.count << "\n";
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical criteria for commutators of composition and integral operators on the Bloch space",
                 "blochlab"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "INI configuration file (falls back to $BLOCHLAB_CONFIG)");

    std::string f_text, g_text, phi_text, grid_text, kind_text, thm_text, suite = "all", filter, spec_path,
        out_path;
    bool as_json = false;

    auto* seminorm = app.add_subcommand("seminorm", "Bloch seminorm of f");
    seminorm->add_option("--f", f_text, "expression for f")->required();
    seminorm->add_option("--grid", grid_text, "grid as K,A");
    seminorm->add_flag("--json", as_json);

    auto* hinf = app.add_subcommand("hinf", "sampled sup norm of f");
    hinf->add_option("--f", f_text, "expression for f")->required();
    hinf->add_option("--grid", grid_text, "grid as K,A");
    hinf->add_flag("--json", as_json);

    auto* criterion = app.add_subcommand("criterion", "shell report of a criterion field");
    criterion->add_option("--kind", kind_text, "KI, KJ, KJlog, Lg or LgLogBoundedness")->required();
    criterion->add_option("--phi", phi_text, "self-map");
    criterion->add_option("--g", g_text, "symbol g")->required();
    criterion->add_option("--grid", grid_text, "grid as K,A");
    criterion->add_flag("--json", as_json);

    auto* classify_cmd = app.add_subcommand("classify", "classify (phi, g) under a theorem criterion");
    classify_cmd->add_option("--thm", thm_text, "theorem id, e.g. T3.2")->required();
    classify_cmd->add_option("--phi", phi_text, "self-map (optional for T4.9)");
    classify_cmd->add_option("--g", g_text, "symbol g")->required();
    classify_cmd->add_option("--grid", grid_text, "grid as K,A");
    classify_cmd->add_flag("--json", as_json, "JSON output (the default)");

    auto* commutator = app.add_subcommand("commutator", "seminorm of C_phi T_g f - T_g C_phi f");
    commutator->add_option("--kind", kind_text, "I or J")->required();
    commutator->add_option("--phi", phi_text, "self-map")->required();
    commutator->add_option("--g", g_text, "symbol g")->required();
    commutator->add_option("--f", f_text, "test function f")->required();
    commutator->add_option("--grid", grid_text, "grid as K,A");
    commutator->add_flag("--json", as_json);

    auto* verify = app.add_subcommand("verify", "run invariant checks");
    verify->add_option("--suite", suite, "identities, bounds, theorems or all");
    verify->add_option("--filter", filter, "only checks whose name contains this text");
    verify->add_flag("--json", as_json);
    auto* list = verify->add_flag("--list", "list check names and exit");

    auto* sweep = app.add_subcommand("sweep", "classify every (phi, g, theorem) of a JSON spec");
    sweep->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    sweep->add_option("--out", out_path, "output file; .json selects JSON, otherwise CSV")->required();

    std::vector<std::string> storage{"blochlab"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::ParseError& e) {
            fail(2, "usage", e.what());
        }

        Config cfg;
        try {
            cfg = resolve_config(config_path.empty() ? std::nullopt : std::optional<std::string>(config_path));
        } catch (const ConfigError& e) {
            fail(2, "config", e.what());
        }
        const GridParams gp = parse_grid(grid_text, cfg.grid);
        auto grid = [&] { return make_grid(gp.max_shell, gp.base_angular); };

        if (seminorm->parsed()) {
            const AnalyticFn f = parse_fn("--f", f_text);
            const SupEstimate s = bloch_seminorm(f, grid());
            if (as_json)
                out << dump_json({{"schema", 1}, {"f", f_text}, {"seminorm", sup_json(s)}}) << "\n";
            else
                print_sup(out, "seminorm", s);
            return 0;
        }
        if (hinf->parsed()) {
            const AnalyticFn f = parse_fn("--f", f_text);
            const SupEstimate s = hinf_norm(f, grid());
            if (as_json)
                out << dump_json({{"schema", 1}, {"f", f_text}, {"hinf", sup_json(s)}}) << "\n";
            else
                print_sup(out, "hinf", s);
            return 0;
        }
        if (criterion->parsed()) {
            const auto kind = criterion_from_string(kind_text);
            if (!kind) fail(2, "usage", "unknown criterion kind \"" + kind_text + "\"");
            const DiskGrid gr = grid();
            const AnalyticFn g = parse_fn("--g", g_text);
            std::optional<SelfMap> phi;
            if (!phi_text.empty()) phi = parse_map(phi_text, gr);
            const bool needs_phi = *kind == CriterionKind::KI || *kind == CriterionKind::KJ ||
                                   *kind == CriterionKind::KJlog;
            if (needs_phi && !phi) fail(2, "usage", "criterion " + kind_text + " needs --phi");
            const auto rep = evaluate_criterion(*kind, phi ? &*phi : nullptr, g, gr);
            if (as_json)
                out << dump_json({{"schema", 1}, {"phi", phi_text}, {"g", g_text}, {"report", to_json(rep)}}) << "\n";
            else
                print_report(out, rep);
            return 0;
        }
        if (classify_cmd->parsed()) {
            const auto thm = theorem_from_string(thm_text);
            if (!thm) fail(2, "usage", "unknown theorem id \"" + thm_text + "\"");
            const DiskGrid gr = grid();
            const AnalyticFn g = parse_fn("--g", g_text);
            std::optional<SelfMap> phi;
            if (!phi_text.empty()) phi = parse_map(phi_text, gr);
            if (!phi && *thm != TheoremId::T4_9) fail(2, "usage", "theorem " + thm_text + " needs --phi");
            Verdict v;
            try {
                v = classify(*thm, phi ? &*phi : nullptr, g, gr, cfg.thresholds);
            } catch (const PreconditionFailed& e) {
                fail(1, "precondition", e.what());
            }
            out << dump_json({{"schema", 1},
                              {"theorem", to_string(*thm)},
                              {"phi", phi_text},
                              {"g", g_text},
                              {"conclusion", to_string(v.conclusion)},
                              {"verdict", to_json(v)}})
                << "\n";
            return 0;
        }
        if (commutator->parsed()) {
            OperatorKind kind;
            if (kind_text == "I")
                kind = OperatorKind::CommutatorI;
            else if (kind_text == "J")
                kind = OperatorKind::CommutatorJ;
            else
                fail(2, "usage", "--kind must be I or J");
            const DiskGrid gr = grid();
            const SelfMap phi = parse_map(phi_text, gr);
            const AnalyticFn g = parse_fn("--g", g_text), f = parse_fn("--f", f_text);
            const SupEstimate s = commutator_seminorm(kind, phi, g, f, gr);
            cplx value;
            try {
                value = commutator_value(kind, phi, g, f, s.arg, cfg.quadrature);
            } catch (const QuadratureError& e) {
                fail(1, "quadrature", e.what());
            }
            if (as_json) {
                out << dump_json({{"schema", 1},
                                  {"kind", to_string(kind)},
                                  {"seminorm", sup_json(s)},
                                  {"value_at_arg", to_json(value)}})
                    << "\n";
            } else {
                print_sup(out, "seminorm", s);
                out << "value_at_arg " << fmt17(value.real()) << " " << fmt17(value.imag()) << "\n";
            }
            return 0;
        }
        if (verify->parsed()) {
            if (list->count() > 0) {
                for (const auto& c : invariant_checks())
                    out << c.name << " [" << c.suite << "] " << c.description << "\n";
                return 0;
            }
            std::vector<InvariantResult> results;
            try {
                results = run_checks(suite, filter);
            } catch (const std::invalid_argument& e) {
                fail(2, "usage", e.what());
            }
            if (results.empty()) fail(2, "usage", "no check matches --filter \"" + filter + "\"");
            std::size_t failed = 0;
            for (const auto& r : results) failed += r.passed ? 0 : 1;
            if (as_json) {
                SuiteReport rep;
                rep.config = {{"suite", suite}, {"filter", filter}};
                rep.invariants = results;
                out << dump_json(report_to_json(rep, false)) << "\n";
            } else {
                for (const auto& r : results)
                    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  slack=" << fmt17(r.slack) << "  "
                        << r.detail << "\n";
                out << results.size() - failed << "/" << results.size() << " checks passed\n";
            }
            return failed == 0 ? 0 : 1;
        }
        if (sweep->parsed()) {
            std::ifstream in(spec_path);
            if (!in) fail(2, "io", "cannot read " + spec_path);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::parse_error& e) {
                fail(2, "spec", std::string("invalid JSON: ") + e.what());
            }
            ExperimentSpec spec;
            try {
                spec = spec_from_json(j, cfg);
            } catch (const SpecError& e) {
                fail(2, "spec", e.what());
            }
            if (!j.contains("format"))
                spec.format = std::filesystem::path(out_path).extension() == ".json" ? OutputFormat::Json
                                                                                     : OutputFormat::Csv;
            const SuiteReport rep = run_classification(spec);
            std::ofstream os(out_path);
            if (!os) fail(2, "io", "cannot write " + out_path);
            os << (spec.format == OutputFormat::Json ? dump_json(report_to_json(rep)) + "\n" : report_to_csv(rep));
            std::size_t errors = 0;
            for (const auto& c : rep.cases)
                if (!c.verdict) {
                    ++errors;
                    err << "blochlab: error: case: phi=" << c.phi << " g=" << c.g << " " << to_string(c.theorem)
                        << ": " << c.error << "\n";
                }
            out << rep.cases.size() << " cases, " << errors << " errors, written to " << out_path << "\n";
            return errors == 0 ? 0 : 1;
        }
        fail(2, "usage", "no subcommand");
    } catch (const CliFailure& f) {
        err << "blochlab: error: " << f.kind << ": " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        err << "blochlab: error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace blochlab
