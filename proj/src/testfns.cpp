#include "blochlab/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace blochlab {

namespace {

void require_disk(cplx a) {
    if (!(std::abs(a) < 1.0)) throw std::domain_error("test-function parameter must satisfy |a| < 1");
}

Expr peak_expr(cplx a) {
    return Expr::div(Expr::lit(1.0 - std::norm(a)),
                     Expr::sub(Expr::lit(1.0), Expr::mul(Expr::lit(std::conj(a)), Expr::var())));
}

}  // namespace

AnalyticFn make_test_fn(const TestFamily& family) {
    const cplx a = family.param;
    switch (family.kind) {
        case TestFamilyKind::MobiusAlpha:
            require_disk(a);
            return AnalyticFn(Expr::mobius(a));
        case TestFamilyKind::PeakH:
            require_disk(a);
            return AnalyticFn(peak_expr(a));
        case TestFamilyKind::ProductF:
            require_disk(a);
            return AnalyticFn(Expr::mul(peak_expr(a), Expr::mobius(a)));
        case TestFamilyKind::OneMinusMobius:
            require_disk(a);
            return AnalyticFn(Expr::sub(Expr::lit(1.0), Expr::mobius(a)));
        case TestFamilyKind::LogFw:
            require_disk(a);
            return AnalyticFn(Expr::log(
                Expr::div(Expr::lit(2.0), Expr::sub(Expr::lit(1.0), Expr::mul(Expr::lit(std::conj(a)), Expr::var())))));
        case TestFamilyKind::Rotation: {
            const double t = a.real();
            if (a.imag() != 0.0 || !(t >= 0.0 && t < 2.0 * std::numbers::pi))
                throw std::domain_error("rotation angle must lie in [0, 2 pi)");
            return AnalyticFn(Expr::mul(Expr::lit(std::polar(1.0, t)), Expr::var()));
        }
    }
    throw std::invalid_argument("unknown test family");
}

double separation_constant(const std::vector<cplx>& nodes) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        double prod = 1.0;
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (j != k) prod *= pseudo_hyperbolic(nodes[j], nodes[k]);
        worst = std::min(worst, prod);
    }
    return worst;
}

std::vector<cplx> select_separated_subsequence(const std::vector<cplx>& points, double d) {
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("separation d must lie in (0, 1)");
    std::vector<cplx> kept;
    for (const cplx p : points) {
        kept.push_back(p);
        if (kept.size() > 1 && separation_constant(kept) < d) kept.pop_back();
    }
    return kept;
}

double interpolation_sum_bound(const std::vector<AnalyticFn>& peaks, const std::vector<cplx>& nodes,
                               const DiskGrid& grid) {
    auto sum_at = [&](cplx z) {
        double s = 0.0;
        for (const auto& h : peaks) s += std::abs(h(z));
        return s;
    };
    double m = 0.0;
    for (const cplx z : grid.points) m = std::max(m, sum_at(z));
    for (const cplx z : nodes) m = std::max(m, sum_at(z));
    return m;
}

InterpolationFamily build_interpolation_family(const std::vector<cplx>& nodes, double d, const DiskGrid& grid) {
    if (nodes.empty()) throw std::invalid_argument("interpolation needs at least one node");
    for (const cplx x : nodes) require_disk(x);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        double prod = 1.0;
        std::size_t closest = k;
        double closest_rho = 2.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == k) continue;
            const double rho = pseudo_hyperbolic(nodes[j], nodes[k]);
            prod *= rho;
            if (rho < closest_rho) {
                closest_rho = rho;
                closest = j;
            }
        }
        if (prod < d)
            throw SeparationError(std::min(k, closest), std::max(k, closest),
                                  "nodes " + std::to_string(std::min(k, closest)) + " and " +
                                      std::to_string(std::max(k, closest)) + " violate separation " +
                                      std::to_string(d) + " (product " + std::to_string(prod) + ")");
    }

    InterpolationFamily fam;
    fam.nodes = nodes;
    fam.separation = d;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        Expr h = Expr::lit(1.0);
        bool first = true;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == k) continue;
            const cplx bk = (nodes[j] - nodes[k]) / (1.0 - std::conj(nodes[j]) * nodes[k]);
            Expr factor = Expr::div(Expr::mobius(nodes[j]), Expr::lit(bk));
            h = first ? factor : Expr::mul(h, factor);
            first = false;
        }
        fam.peaks.emplace_back(std::move(h));
    }
    fam.sum_bound_estimate = interpolation_sum_bound(fam.peaks, fam.nodes, grid);
    return fam;
}

}  // namespace blochlab
