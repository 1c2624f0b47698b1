#include "blochlab/checks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "blochlab/operators.hpp"
#include "blochlab/testfns.hpp"

namespace blochlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collects margins (bound - measured, >= 0 when the sample satisfies the
// invariant) and remembers the first violation.
struct Tally {
    double slack = kInf;
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::string first;

    template <class Describe>
    void add(double margin, const Describe& describe) {
        ++samples;
        slack = std::min(slack, margin);
        if (!(margin >= 0.0)) {
            if (violations == 0) first = describe();
            ++violations;
        }
    }
    void require(bool ok, const std::string& what) {
        add(ok ? 0.0 : -1.0, [&] { return what; });
    }
};

InvariantResult finish(std::string name, std::string suite, const Tally& t, std::string extra = {}) {
    std::ostringstream os;
    os << t.samples << " samples, " << t.violations << " violations";
    if (!t.first.empty()) os << "; first: " << t.first;
    if (!extra.empty()) os << "; " << extra;
    return {std::move(name), std::move(suite), t.violations == 0 && t.samples > 0,
            t.samples > 0 ? t.slack : 0.0, os.str()};
}

std::string str(cplx z) { return "(" + fmt17(z.real()) + "," + fmt17(z.imag()) + ")"; }

const DiskGrid& default_grid() {
    static const DiskGrid g = make_grid();
    return g;
}

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
    std::vector<std::string> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// Automorphisms, shrinkers and rotations.
std::vector<std::string> full_panel() { return concat({automorphism_panel(), shrinker_panel(), rotation_panel()}); }

std::vector<SelfMap> self_maps(const std::vector<std::string>& texts, const DiskGrid& grid) {
    std::vector<SelfMap> out;
    for (const auto& t : texts) out.push_back(validate_self_map(AnalyticFn::parse(t), grid));
    return out;
}

std::vector<AnalyticFn> fns(const std::vector<std::string>& texts) {
    std::vector<AnalyticFn> out;
    for (const auto& t : texts) out.push_back(AnalyticFn::parse(t));
    return out;
}

cplx random_disk_point(std::mt19937_64& rng, double rmax) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = rmax * std::sqrt(u(rng));
    return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

bool same_bits(cplx a, cplx b) {
    return std::bit_cast<std::uint64_t>(a.real()) == std::bit_cast<std::uint64_t>(b.real()) &&
           std::bit_cast<std::uint64_t>(a.imag()) == std::bit_cast<std::uint64_t>(b.imag());
}

// ---------------------------------------------------------------------------
// series

TaylorSeries dyadic_series(std::mt19937_64& rng, std::size_t degree, double scale_by_index) {
    std::uniform_int_distribution<int> k(-16, 16);
    std::vector<cplx> c(degree + 1);
    for (std::size_t n = 0; n <= degree; ++n) {
        const double m = scale_by_index > 0 ? static_cast<double>(n + 1) : 1.0;
        c[n] = m * cplx(k(rng) / 8.0, k(rng) / 8.0);
    }
    return TaylorSeries(std::move(c));
}

InvariantResult check_series_algebra() {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> deg(0, 12);
    Tally t;
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = dyadic_series(rng, deg(rng), 0);
        const auto b = dyadic_series(rng, deg(rng), 0);
        const auto c = dyadic_series(rng, deg(rng), 0);
        const std::string at = "trial " + std::to_string(trial);
        t.require(add(a, b) == add(b, a), at + ": add not commutative");
        t.require(add(add(a, b), c) == add(a, add(b, c)), at + ": add not associative");
        t.require(mul(a, b) == mul(b, a), at + ": mul not commutative");
        t.require(mul(mul(a, b), c) == mul(a, mul(b, c)), at + ": mul not associative");
    }
    return finish("series.add_mul_exact", "identities", t, "dyadic coefficients k/8");
}

InvariantResult check_series_roundtrip() {
    std::mt19937_64 rng(12);
    Tally t;
    for (std::size_t n = 0; n <= 64; ++n) {
        const auto a = dyadic_series(rng, n, 1);
        t.require(derivative(antiderivative(a)) == a, "degree " + std::to_string(n));
    }
    return finish("series.derivative_antiderivative", "identities", t,
                  "coefficients (n+1) times dyadic, degree 0..64");
}

InvariantResult check_series_recovery() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Tally t;
    for (std::size_t d = 1; d <= 8; ++d) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<cplx> c(d + 1);
            for (auto& x : c) x = {u(rng), u(rng)};
            const TaylorSeries p(c);
            const auto rec = coeffs_from_samples([&](cplx z) { return p(z); }, 0.5, 4 * d, d);
            double err = 0.0;
            for (std::size_t n = 0; n <= d; ++n) err = std::max(err, std::abs(rec[n] - c[n]));
            t.add(1e-10 - err, [&] { return "degree " + std::to_string(d) + " error " + fmt17(err); });
        }
    }
    return finish("series.coefficient_recovery", "identities", t, "radius 0.5, count 4d");
}

// ---------------------------------------------------------------------------
// exprdsl

InvariantResult check_expr_roundtrip() {
    std::mt19937_64 rng(21);
    Tally t;
    for (const auto& text : expression_corpus()) {
        const Expr e = parse(text);
        const Expr back = parse(print_expr(e));
        t.require(print_expr(back) == print_expr(e), text + ": printing not idempotent");
        for (int m = 0; m < 100; ++m) {
            const cplx z = random_disk_point(rng, 0.9);
            const cplx a = evaluate(e, z), b = evaluate(back, z);
            t.require(same_bits(a, b), text + " at z = " + str(z));
        }
    }
    return finish("exprdsl.print_parse_roundtrip", "identities", t);
}

InvariantResult check_expr_derivative() {
    std::mt19937_64 rng(22);
    const double h = 1e-5;
    Tally t;
    for (const auto& text : expression_corpus()) {
        const AnalyticFn f = AnalyticFn::parse(text);
        for (int m = 0; m < 100; ++m) {
            const cplx z = random_disk_point(rng, 0.5);
            const cplx fd = (f(z + h) - f(z - h)) / (2.0 * h);
            const cplx d = f.deriv(z);
            const double rel = std::abs(fd - d) / std::max(1.0, std::abs(d));
            t.add(1e-6 - rel, [&] { return text + " at z = " + str(z) + " rel " + fmt17(rel); });
        }
    }
    return finish("exprdsl.derivative_vs_finite_difference", "identities", t, "step 1e-5, |z| <= 0.5");
}

// ---------------------------------------------------------------------------
// diskgeom

InvariantResult check_schwarz_pick_random() {
    const DiskGrid& grid = default_grid();
    Tally t;
    for (const Expr& e : random_self_maps(100, 31)) {
        const SelfMap phi = validate_self_map(AnalyticFn(e), grid);
        double worst = 0.0;
        cplx at{};
        for (cplx z : grid.points) {
            const double v = std::abs(schwarz_derivative(phi, z));
            if (v > worst) worst = v, at = z;
        }
        t.add(1.0 + 1e-12 - worst, [&] { return print_expr(e) + " at z = " + str(at) + ": " + fmt17(worst); });
    }
    return finish("diskgeom.schwarz_pick_random_maps", "bounds", t, "100 composed self-maps, full grid");
}

InvariantResult check_automorphism_unimodular() {
    const DiskGrid& grid = default_grid();
    Tally t;
    for (const auto& text : automorphism_panel()) {
        const SelfMap phi = validate_self_map(AnalyticFn::parse(text), grid);
        for (cplx z : grid.points) {
            const double dev = std::abs(std::abs(schwarz_derivative(phi, z)) - 1.0);
            t.add(1e-9 - dev, [&] { return text + " at z = " + str(z) + ": deviation " + fmt17(dev); });
        }
    }
    return finish("diskgeom.automorphism_schwarz_unimodular", "bounds", t);
}

InvariantResult check_lemma48() {
    const DiskGrid& grid = default_grid();
    std::vector<Expr> maps = random_self_maps(100, 31);
    for (const auto& text : concat({full_panel(), mixed_panel()})) maps.push_back(parse(text));
    Tally t;
    for (const Expr& e : maps) {
        const SelfMap phi = validate_self_map(AnalyticFn(e), grid);
        double slack = kInf;
        cplx at{};
        for (cplx z : grid.points) {
            const double m = schwarz_pick_modulus_bound(phi, z) + 1e-12 - std::abs(phi(z));
            if (m < slack) slack = m, at = z;
        }
        t.add(slack, [&] { return print_expr(e) + " at z = " + str(at); });
    }
    return finish("diskgeom.modulus_bound", "bounds", t, "random, panel and mixed maps");
}

// ---------------------------------------------------------------------------
// operators

InvariantResult check_derivative_identity() {
    const DiskGrid grid = make_grid(4, 67);
    const auto phis = concat({automorphism_panel(), shrinker_panel(), {rotation_panel()[2], rotation_panel()[9]}});
    const auto gs = g_corpus();
    const auto fs = bloch_f_corpus();
    const double h = 1e-5;
    Tally t;
    std::size_t triples = 0;
    for (std::size_t i = 0; i < 20; ++i, ++triples) {
        const SelfMap phi = validate_self_map(AnalyticFn::parse(phis[i % phis.size()]), grid);
        const AnalyticFn g = AnalyticFn::parse(gs[(3 * i + 2) % gs.size()]);
        const AnalyticFn f = AnalyticFn::parse(fs[(5 * i + 1) % fs.size()]);
        const OperatorKind kind = i % 2 ? OperatorKind::CommutatorJ : OperatorKind::CommutatorI;
        for (cplx z : grid.points) {
            const cplx fd =
                (commutator_value(kind, phi, g, f, z + h) - commutator_value(kind, phi, g, f, z - h)) / (2.0 * h);
            const cplx d = commutator_derivative(kind, phi, g, f, z);
            const double rel = std::abs(fd - d) / (1.0 + std::abs(d));
            t.add(1e-6 - rel, [&] {
                return std::string(to_string(kind)) + " phi=" + phi.phi().text() + " g=" + g.text() +
                       " f=" + f.text() + " at z = " + str(z) + " rel " + fmt17(rel);
            });
        }
    }
    return finish("operators.derivative_identity", "identities", t,
                  std::to_string(triples) + " triples on " + std::to_string(grid.size()) + " points");
}

InvariantResult check_linearity() {
    const DiskGrid& grid = default_grid();
    const auto phis = self_maps({"mobius(0.5)", "z^2/2", rotation_panel()[4]}, grid);
    const auto gs = fns({"z^2", "log(2/(1-0.9*z))"});
    const auto fs = bloch_f_corpus();
    const cplx c(0.3, -1.2);
    Tally t;
    for (const auto& phi : phis)
        for (const auto& g : gs)
            for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
                const AnalyticFn f1 = AnalyticFn::parse(fs[i]), f2 = AnalyticFn::parse(fs[i + 1]);
                const AnalyticFn comb(Expr::add(f1.expr(), Expr::mul(Expr::lit(c), f2.expr())));
                for (auto kind : {OperatorKind::CommutatorI, OperatorKind::CommutatorJ})
                    for (std::size_t k = 0; k < grid.size(); k += 37) {
                        const cplx z = grid.points[k];
                        const cplx d1 = commutator_derivative(kind, phi, g, f1, z);
                        const cplx d2 = commutator_derivative(kind, phi, g, f2, z);
                        const cplx dc = commutator_derivative(kind, phi, g, comb, z);
                        const double scale = 1.0 + std::abs(d1) + std::abs(c) * std::abs(d2);
                        const double err = std::abs(dc - (d1 + c * d2));
                        t.add(1e-12 * scale - err, [&] { return "f1=" + fs[i] + " at z = " + str(z); });
                    }
            }
    return finish("operators.linearity_in_f", "identities", t);
}

// (1 - |w|^2)|f'(w)| maximised over the refined seminorm and the given points.
double bloch_estimate(const AnalyticFn& f, double refined, std::span<const cplx> points) {
    double m = refined;
    for (cplx w : points) m = std::max(m, one_minus_sq(w) * std::abs(f.deriv(w)));
    return m;
}

InvariantResult upper_chain_I(const char* name, const char* suite, bool only_bounded) {
    const DiskGrid& grid = default_grid();
    const auto phis = self_maps(full_panel(), grid);
    const auto gs = fns(g_corpus());
    const auto fs = fns(bloch_f_corpus());
    std::vector<double> refined;
    for (const auto& f : fs) refined.push_back(bloch_seminorm(f, grid).value);
    Tally t;
    std::size_t pairs = 0;
    for (const auto& phi : phis)
        for (const auto& g : gs) {
            if (only_bounded && classify(TheoremId::T3_1, &phi, g, grid).conclusion != Conclusion::Bounded) continue;
            ++pairs;
            const double ki = evaluate_criterion(CriterionKind::KI, &phi, g, grid).sup_value;
            const CommutatorKernel kernel(OperatorKind::CommutatorI, phi, g, grid);
            for (std::size_t i = 0; i < fs.size(); ++i) {
                const double lhs = kernel.seminorm(fs[i]).value;
                const double rhs = ki * bloch_estimate(fs[i], refined[i], kernel.images()) + 1e-9;
                t.add(rhs - lhs, [&] {
                    return "phi=" + phi.phi().text() + " g=" + g.text() + " f=" + fs[i].text() + ": " + fmt17(lhs) +
                           " > " + fmt17(rhs);
                });
            }
        }
    return finish(name, suite, t, std::to_string(pairs) + " (phi, g) pairs");
}

InvariantResult check_upper_chain_J() {
    const DiskGrid& grid = default_grid();
    const auto phis = self_maps(full_panel(), grid);
    const auto gs = fns(g_corpus());
    const auto fs = fns(hinf_f_corpus());
    std::vector<double> sampled;
    for (const auto& f : fs) sampled.push_back(hinf_norm(f, grid).value);
    Tally t;
    for (const auto& phi : phis)
        for (const auto& g : gs) {
            const double kj = evaluate_criterion(CriterionKind::KJ, &phi, g, grid).sup_value;
            const CommutatorKernel kernel(OperatorKind::CommutatorJ, phi, g, grid);
            for (std::size_t i = 0; i < fs.size(); ++i) {
                const double lhs = kernel.seminorm(fs[i]).value;
                const double norm = std::max(sampled[i], hinf_norm(fs[i], kernel.images()).value);
                const double rhs = kj * norm + 1e-9;
                t.add(rhs - lhs, [&] {
                    return "phi=" + phi.phi().text() + " g=" + g.text() + " f=" + fs[i].text() + ": " + fmt17(lhs) +
                           " > " + fmt17(rhs);
                });
            }
        }
    return finish("operators.upper_bound_J", "bounds", t);
}

// ---------------------------------------------------------------------------
// criteria

InvariantResult check_grid_monotone() {
    struct Case {
        TheoremId thm;
        const char* phi;
        const char* g;
    };
    const std::vector<Case> cases = {
        {TheoremId::T3_2, "z/2", "z"},
        {TheoremId::T3_2, "mobius(0.5)", "z^2"},
        {TheoremId::T3_1, "mobius(0.5)", "log(2/(1-0.9*z))"},
        {TheoremId::C3_4, "z^2/2", "z"},
        {TheoremId::T4_1b, "complex(0,1)*z", "log(2/(1-z))"},
        {TheoremId::T4_1b, "mobius(-0.3)", "z^3-2*z+1"},
        {TheoremId::C4_2, "(z+0.3)/2", "mobius(0.5)"},
        {TheoremId::P4_7, "z/2", "z"},
        {TheoremId::T4_9, "z", "z"},
    };
    const DiskGrid grids[] = {make_grid(10, 64), make_grid(12, 64), make_grid(14, 64)};
    Tally t;
    for (const auto& c : cases) {
        const AnalyticFn g = AnalyticFn::parse(c.g);
        std::vector<Verdict> vs;
        for (const auto& grid : grids) {
            const SelfMap phi = validate_self_map(AnalyticFn::parse(c.phi), grid);
            vs.push_back(classify(c.thm, &phi, g, grid));
        }
        const std::string label = std::string(to_string(c.thm)) + " phi=" + c.phi + " g=" + c.g;
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
            const auto& a = vs[i];
            const auto& b = vs[i + 1];
            for (std::size_t r = 0; r < std::min(a.evidence.size(), b.evidence.size()); ++r) {
                const double m = b.evidence[r].sup_value - a.evidence[r].sup_value;
                t.add(m, [&] { return label + ": sup decreased under refinement"; });
            }
            const bool flip = (a.conclusion == Conclusion::Compact && b.conclusion == Conclusion::NotCompactEvidence) ||
                              (a.conclusion == Conclusion::NotCompactEvidence && b.conclusion == Conclusion::Compact);
            t.require(!flip, label + ": verdict flipped under refinement");
        }
    }
    return finish("criteria.grid_refinement_monotone", "theorems", t, "K = 10, 12, 14");
}

InvariantResult check_t32_necessity() {
    const DiskGrid grid = make_grid(6, 64);
    const auto phis = self_maps(full_panel(), grid);
    const auto gs = fns(g_corpus());
    Tally t;
    for (const auto& phi : phis)
        for (const auto& g : gs) {
            const auto rep = evaluate_criterion(CriterionKind::KI, &phi, g, grid, Bucketing::ByPhi);
            const int outer = rep.shell_sups.back().shell;
            const CommutatorKernel kernel(OperatorKind::CommutatorI, phi, g, grid);
            for (cplx w : grid.points) {
                const cplx a = phi(w);
                if (shell_of_modulus(std::abs(a), grid.max_shell) != outer) continue;
                const double bound = std::abs(a) * criterion_value(CriterionKind::KI, &phi, g, w) - 1e-6;
                const double lhs = kernel.seminorm(make_test_fn(TestFamily::peak_h(a))).value;
                t.add(lhs - bound, [&] {
                    return "phi=" + phi.phi().text() + " g=" + g.text() + " w = " + str(w) + ": " + fmt17(lhs) +
                           " < " + fmt17(bound);
                });
            }
        }
    return finish("criteria.necessity_lower_bound", "theorems", t, "outermost phi-shell points, K = 6");
}

InvariantResult check_rigidity() {
    const DiskGrid& grid = default_grid();
    const auto autos = self_maps(automorphism_panel(), grid);
    const auto all = self_maps(full_panel(), grid);
    Tally t;
    for (const auto& text : g_corpus()) {
        const AnalyticFn g = AnalyticFn::parse(text);
        if (!contains_var(g.expr())) {
            for (const auto& phi : all)
                for (cplx z : grid.points)
                    t.require(criterion_value(CriterionKind::KI, &phi, g, z) == 0.0,
                              "constant g=" + text + " has nonzero K_I");
            continue;
        }
        bool found = false;
        for (const auto& phi : autos)
            if (classify(TheoremId::T3_2, &phi, g, grid).conclusion == Conclusion::NotCompactEvidence) {
                found = true;
                break;
            }
        t.require(found, "g=" + text + ": no automorphism gives NotCompactEvidence");
    }
    return finish("criteria.rigidity", "theorems", t);
}

InvariantResult check_c43_sufficiency() {
    const DiskGrid& grid = default_grid();
    const auto phis = self_maps(full_panel(), grid);
    auto texts = g_corpus();
    for (const char* p : {"z^4", "3*z^4-z^2+complex(0,1)*z", "(z-0.5)^3"}) texts.push_back(p);
    // Cases missed on the default grid are re-run two shells further out;
    // that result is reported but does not change the outcome.
    const DiskGrid finer = make_grid(grid.max_shell + 2, grid.base_angular);
    Tally t;
    std::size_t in_b0 = 0, not_compact = 0, missed = 0, resolved = 0;
    for (const auto& text : texts) {
        const AnalyticFn g = AnalyticFn::parse(text);
        if (little_bloch_membership(g, grid).status != B0Membership::InB0) continue;
        ++in_b0;
        for (const auto& phi : phis) {
            const auto v = classify(TheoremId::T4_1b, &phi, g, grid);
            t.require(v.conclusion == Conclusion::Compact,
                      "phi=" + phi.phi().text() + " g=" + text + ": " + std::string(to_string(v.conclusion)));
            if (v.conclusion == Conclusion::Compact) continue;
            ++missed;
            not_compact += v.conclusion == Conclusion::NotCompactEvidence ? 1 : 0;
            const SelfMap fine_phi = validate_self_map(phi.phi(), finer);
            resolved += classify(TheoremId::T4_1b, &fine_phi, g, finer).conclusion == Conclusion::Compact ? 1 : 0;
        }
    }
    return finish("criteria.little_bloch_sufficiency", "theorems", t,
                  std::to_string(in_b0) + " symbols in B0; " + std::to_string(missed) + " not Compact (" +
                      std::to_string(not_compact) + " NotCompactEvidence), " + std::to_string(resolved) +
                      " of those Compact at K = " + std::to_string(finer.max_shell));
}

InvariantResult check_lemma44_direction() {
    const DiskGrid& grid = default_grid();
    const AnalyticFn g = AnalyticFn::parse("log(2/(1-z))");
    Tally t;
    std::optional<std::string> witness;
    for (const auto& text : rotation_panel()) {
        const SelfMap phi = validate_self_map(AnalyticFn::parse(text), grid);
        if (classify(TheoremId::T4_1b, &phi, g, grid).conclusion == Conclusion::NotCompactEvidence) {
            witness = text;
            break;
        }
    }
    t.require(witness.has_value(), "no rotation gives NotCompactEvidence for log(2/(1-z))");
    return finish("criteria.rotation_witness", "theorems", t, witness ? "witness " + *witness : "");
}

// ---------------------------------------------------------------------------
// testfns

InvariantResult check_mobius_norm() {
    const DiskGrid& grid = default_grid();
    std::mt19937_64 rng(41);
    Tally t;
    for (int i = 0; i < 20; ++i) {
        const cplx a = random_disk_point(rng, 0.9);
        const double v = bloch_seminorm(make_test_fn(TestFamily::mobius_alpha(a)), grid).value;
        t.add(1e-6 - std::abs(v - 1.0), [&] { return "a = " + str(a) + ": " + fmt17(v); });
    }
    return finish("testfns.mobius_seminorm", "bounds", t, "20 random a, |a| <= 0.9");
}

InvariantResult check_peak_norm() {
    const DiskGrid& grid = default_grid();
    std::mt19937_64 rng(42);
    Tally t;
    for (int i = 0; i < 20; ++i) {
        const cplx a = random_disk_point(rng, 0.99);
        const double v = bloch_seminorm(make_test_fn(TestFamily::peak_h(a)), grid).value;
        t.add(1.0 + 1e-9 - v, [&] { return "a = " + str(a) + ": " + fmt17(v); });
    }
    // Uniform decay on |z| <= 0.5 as a -> 1.
    std::vector<cplx> inner;
    for (double r : {0.0, 0.125, 0.25, 0.375, 0.5})
        for (int m = 0; m < 256; ++m) inner.push_back(std::polar(r, 2.0 * std::numbers::pi * m / 256.0));
    double prev = kInf;
    for (double a : {0.9, 0.99, 0.999}) {
        const double m = hinf_norm(make_test_fn(TestFamily::peak_h(a)), inner).value;
        t.add(prev - m, [&] { return "max on |z| <= 0.5 did not decrease at a = " + fmt17(a); });
        prev = m;
    }
    return finish("testfns.peak_seminorm_and_decay", "bounds", t);
}

InvariantResult check_logfw_norm() {
    const DiskGrid& grid = default_grid();
    std::mt19937_64 rng(43);
    Tally t;
    for (int i = 0; i < 20; ++i) {
        const cplx w = random_disk_point(rng, 0.999);
        const double v = bloch_seminorm(make_test_fn(TestFamily::log_fw(w)), grid).value;
        t.add(2.0 + 1e-9 - v, [&] { return "w = " + str(w) + ": " + fmt17(v); });
    }
    return finish("testfns.logfw_seminorm", "bounds", t);
}

InvariantResult check_product_f() {
    const DiskGrid& grid = default_grid();
    std::mt19937_64 rng(44);
    Tally t;
    for (int i = 0; i < 20; ++i) {
        const cplx a = random_disk_point(rng, 0.99);
        const AnalyticFn f = make_test_fn(TestFamily::product_f(a));
        t.add(1e-15 - std::abs(f(a)), [&] { return "a = " + str(a) + ": f(a) != 0"; });
        const double m = hinf_norm(f, grid).value;
        t.add(2.0 - m, [&] { return "a = " + str(a) + ": sup " + fmt17(m); });
    }
    return finish("testfns.product_vanishes_and_bounded", "bounds", t);
}

InvariantResult check_interpolation() {
    std::vector<cplx> radial;
    for (int k = 1; k <= 10; ++k) radial.push_back(1.0 - std::exp2(-k));
    const double d = 0.3;
    const std::vector<cplx> nodes = select_separated_subsequence(radial, d);
    const DiskGrid coarse = make_grid(12, 64), fine = make_grid(14, 128);
    const auto fam = build_interpolation_family(nodes, d, coarse);
    const auto fam_fine = build_interpolation_family(nodes, d, fine);
    Tally t;
    t.require(nodes.size() == 5, std::to_string(nodes.size()) + " nodes selected");
    t.add(separation_constant(nodes) - d, [&] { return std::string("selected nodes not separated"); });
    for (std::size_t k = 0; k < nodes.size(); ++k)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double err = std::abs(fam.peaks[k](nodes[j]) - (k == j ? 1.0 : 0.0));
            t.add(1e-10 - err, [&] { return "h_" + std::to_string(k) + "(x_" + std::to_string(j) + ")"; });
        }
    const double m1 = fam.sum_bound_estimate, m2 = fam_fine.sum_bound_estimate;
    const double rel = std::abs(m2 - m1) / m2;
    t.add(0.05 - rel, [&] { return "M moved by " + fmt17(rel) + " under refinement"; });
    return finish("testfns.interpolation_family", "bounds", t,
                  "separation " + fmt17(separation_constant(nodes)) + ", M = " + fmt17(m1) + " (K=12), " + fmt17(m2) +
                      " (K=14, A=128)");
}

// ---------------------------------------------------------------------------
// harness

InvariantResult check_determinism() {
    ExperimentSpec spec;
    spec.phi_exprs = {"z/2", "mobius(0.5)", "complex(0,1)*z"};
    spec.g_exprs = {"z", "log(2/(1-0.9*z))", "z^2+"};
    spec.theorem_ids = {TheoremId::T3_2, TheoremId::T4_1b, TheoremId::T4_9};
    const std::string a = dump_json(report_to_json(run_classification(spec), false));
    const std::string b = dump_json(report_to_json(run_classification(spec), false));
    Tally t;
    t.require(a == b, "reports differ between runs");
    return finish("harness.determinism", "identities", t, std::to_string(a.size()) + " bytes");
}

InvariantResult check_panels() {
    const DiskGrid& grid = default_grid();
    Tally t;
    t.require(automorphism_panel().size() == 8, "automorphism panel size");
    t.require(shrinker_panel().size() == 3, "shrinker panel size");
    t.require(rotation_panel().size() == 15, "rotation panel size");
    t.require(mixed_panel().size() == 10, "mixed panel size");
    for (const auto& m : self_maps(automorphism_panel(), grid))
        t.require(m.is_automorphism(), m.phi().text() + " not recognised as automorphism");
    for (const auto& m : self_maps(shrinker_panel(), grid))
        t.require(!m.is_automorphism() && m.sup_modulus_estimate() < 1.0, m.phi().text() + " is not a shrinker");
    for (const auto& m : self_maps(rotation_panel(), grid))
        t.require(m.is_automorphism(), m.phi().text() + " not recognised as rotation");
    const auto gc = g_corpus();
    auto has = [&](const std::string& s) { return std::find(gc.begin(), gc.end(), s) != gc.end(); };
    for (const char* s : {"1", "z", "z^2", "mobius(0.5)", "log(2/(1-0.5*z))", "log(2/(1-0.9*z))",
                          "log(2/(1-0.999*z))"})
        t.require(has(s), std::string("g corpus lacks ") + s);
    return finish("harness.panels", "identities", t);
}

InvariantResult check_rotation_average() {
    const DiskGrid& grid = default_grid();
    Tally t;
    const auto quad = rotation_average_check(AnalyticFn::parse("z^2"), 32, grid);
    t.require(quad.outcome == RotationOutcome::ConsistentWithB0 && !quad.witness_t, "z^2 not ConsistentWithB0");
    const auto cst = rotation_average_check(AnalyticFn::parse("complex(0.5,-2)"), 32, grid);
    bool zero = cst.outcome == RotationOutcome::ConsistentWithB0;
    for (const auto& r : cst.rotations) zero = zero && r.field.sup_value == 0.0;
    t.require(zero, "constant g: rotation fields not identically zero");
    const auto lg = rotation_average_check(AnalyticFn::parse("log(2/(1-z))"), 32, grid);
    double lim = 0.0;
    for (const auto& r : lg.rotations)
        if (lg.witness_t && r.t == *lg.witness_t) lim = r.field.boundary_limsup_estimate;
    t.require(lg.outcome == RotationOutcome::Witness, "log(2/(1-z)): no witness rotation");
    t.add(lim - 1.9, [&] { return "witness limsup " + fmt17(lim) + " below 1.9"; });
    double residual = std::max({quad.averaging_residual, cst.averaging_residual, lg.averaging_residual});
    for (const auto& text : g_corpus()) {
        const auto rc = rotation_average_check(AnalyticFn::parse(text), 32, grid);
        t.require(rc.outcome != RotationOutcome::Inconsistent, "g=" + text + ": rotations contradict membership");
        residual = std::max(residual, rc.averaging_residual);
    }
    t.add(1e-9 - residual, [&] { return "averaging residual " + fmt17(residual); });
    return finish("harness.rotation_average", "theorems", t,
                  "log(2/(1-z)) witness limsup " + fmt17(lim) + ", max residual " + fmt17(residual));
}

InvariantResult check_hospital() {
    const DiskGrid& grid = default_grid();
    Tally t;
    std::ostringstream outer;
    for (const auto& text : mixed_panel()) {
        const SelfMap phi = validate_self_map(AnalyticFn::parse(text), grid);
        const HospitalReport rep = hospital_ratio_check(phi, grid);
        for (const auto& s : rep.shells)
            t.add(1.0 + s.slack - s.max_ratio, [&] {
                return text + " shell " + std::to_string(s.shell) + ": ratio " + fmt17(s.max_ratio) + " > 1 + " +
                       fmt17(s.slack);
            });
        outer << text << " -> " << fmt17(rep.outer_max_ratio) << "; ";
    }
    return finish("harness.log_ratio_slack", "theorems", t, "outer maxima: " + outer.str());
}

std::vector<InvariantCheck> build_registry() {
    auto I = [](std::string n, std::string s, std::string d, std::function<InvariantResult()> f) {
        return InvariantCheck{std::move(n), std::move(s), std::move(d), std::move(f)};
    };
    return {
        I("series.add_mul_exact", "identities", "add/mul commutative and associative exactly", check_series_algebra),
        I("series.derivative_antiderivative", "identities", "derivative of antiderivative is the identity",
          check_series_roundtrip),
        I("series.coefficient_recovery", "identities", "sampled coefficients of degree-d polynomials within 1e-10",
          check_series_recovery),
        I("exprdsl.print_parse_roundtrip", "identities", "print/parse round trip is bit-exact in value",
          check_expr_roundtrip),
        I("exprdsl.derivative_vs_finite_difference", "identities", "symbolic derivative matches central differences",
          check_expr_derivative),
        I("operators.derivative_identity", "identities", "derivative of the commutator image matches closed form",
          check_derivative_identity),
        I("operators.linearity_in_f", "identities", "commutator derivative is linear in f", check_linearity),
        I("harness.determinism", "identities", "identical specs give identical reports", check_determinism),
        I("harness.panels", "identities", "built-in panel composition", check_panels),
        I("diskgeom.schwarz_pick_random_maps", "bounds", "|phi^#| <= 1 for random self-maps",
          check_schwarz_pick_random),
        I("diskgeom.automorphism_schwarz_unimodular", "bounds", "|phi^#| = 1 for automorphisms",
          check_automorphism_unimodular),
        I("diskgeom.modulus_bound", "bounds", "|phi(z)| <= (|z| + |phi(0)|)/(1 + |z||phi(0)|)", check_lemma48),
        I("operators.upper_bound_I", "bounds", "I-commutator seminorm <= sup K_I * |f|_*",
          [] { return upper_chain_I("operators.upper_bound_I", "bounds", false); }),
        I("operators.upper_bound_J", "bounds", "J-commutator seminorm <= sup K_J * |f|_inf", check_upper_chain_J),
        I("testfns.mobius_seminorm", "bounds", "Mobius seminorm equals 1", check_mobius_norm),
        I("testfns.peak_seminorm_and_decay", "bounds", "peak seminorm <= 1 and decay on compacts",
          check_peak_norm),
        I("testfns.logfw_seminorm", "bounds", "log(2/(1 - conj(w) z)) seminorm <= 2", check_logfw_norm),
        I("testfns.product_vanishes_and_bounded", "bounds", "peak times Mobius vanishes at a, modulus <= 2",
          check_product_f),
        I("testfns.interpolation_family", "bounds", "Kronecker values and stable sum bound", check_interpolation),
        I("criteria.grid_refinement_monotone", "theorems", "refinement never lowers sups or flips verdicts",
          check_grid_monotone),
        I("criteria.bounded_implies_bound", "theorems", "T3.1 Bounded implies the operator bound",
          [] { return upper_chain_I("criteria.bounded_implies_bound", "theorems", true); }),
        I("criteria.necessity_lower_bound", "theorems", "peak test functions attain |phi(w)| K_I(w)",
          check_t32_necessity),
        I("criteria.rigidity", "theorems", "only constant symbols commute with every automorphism",
          check_rigidity),
        I("criteria.little_bloch_sufficiency", "theorems", "g in B0 gives T4.1b Compact for panel maps",
          check_c43_sufficiency),
        I("criteria.rotation_witness", "theorems", "log(2/(1-z)) has a rotation with NotCompactEvidence",
          check_lemma44_direction),
        I("harness.rotation_average", "theorems", "rotation averaging agrees with little Bloch membership",
          check_rotation_average),
        I("harness.log_ratio_slack", "theorems", "log-weight ratio within 1 + 0.1 * 2^(-k/2) per shell",
          check_hospital),
    };
}

}  // namespace

const std::vector<InvariantCheck>& invariant_checks() {
    static const std::vector<InvariantCheck> registry = build_registry();
    return registry;
}

std::vector<InvariantResult> run_checks(std::string_view suite, std::string_view filter) {
    if (suite != "all" && suite != "identities" && suite != "bounds" && suite != "theorems")
        throw std::invalid_argument("unknown suite \"" + std::string(suite) + "\"");
    std::vector<InvariantResult> out;
    for (const auto& c : invariant_checks()) {
        if (suite != "all" && c.suite != suite) continue;
        if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
        try {
            out.push_back(c.run());
        } catch (const std::exception& e) {
            out.push_back({c.name, c.suite, false, 0.0, std::string("exception: ") + e.what()});
        }
    }
    return out;
}

InvariantResult run_check(std::string_view name) {
    for (const auto& c : invariant_checks())
        if (c.name == name) {
            try {
                return c.run();
            } catch (const std::exception& e) {
                return {c.name, c.suite, false, 0.0, std::string("exception: ") + e.what()};
            }
        }
    throw std::out_of_range("unknown check \"" + std::string(name) + "\"");
}

std::vector<std::string> expression_corpus() {
    return {"z",
            "1",
            "2i",
            "i*z",
            "-z",
            "z+1",
            "z-complex(0.5,-0.25)",
            "3*z^2",
            "z^3-z",
            "(z+0.3)/2",
            "1/(1-0.9*z)",
            "exp(z)",
            "exp(-z^2)/3",
            "log(2/(1-z))",
            "log(2/(1-0.999*z))",
            "mobius(0.5)",
            "mobius(complex(0,0.6))",
            "mobius(-0.3)*complex(0.6,0.8)",
            "-mobius(0.7)",
            "z*mobius(complex(0,0.3))",
            "(1-0.81)/(1-0.9*z)",
            "mobius(0.8)*(1-0.64)/(1-0.8*z)",
            "1-mobius(complex(0.2,0.5))",
            "z^2/2",
            "1e-3*z^4+2.5e2*z",
            "complex(1e-17,-0)*z",
            "exp(log(1+z/2))",
            "(z-0.1)^5",
            "0.1+0.2*z+0.3*z^2-0.4i*z^3",
            "log(1+z*exp(z)/4)"};
}

std::vector<Expr> random_self_maps(std::size_t count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Expr> out;
    for (std::size_t i = 0; i < count; ++i) {
        const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
        Expr e = Expr::mul(Expr::lit(rot), Expr::mobius(random_disk_point(rng, 0.8)));
        const double rho = 0.3 + 0.65 * u(rng);
        const unsigned m = u(rng) < 0.5 ? 1u : 2u;
        e = substitute(Expr::mul(Expr::lit(rho), Expr::pow(Expr::var(), m)), e);
        if (u(rng) < 0.5) e = substitute(Expr::mobius(random_disk_point(rng, 0.8)), e);
        out.push_back(e);
    }
    return out;
}

}  // namespace blochlab
