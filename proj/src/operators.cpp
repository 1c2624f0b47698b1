#include "blochlab/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blochlab {

std::string_view to_string(OperatorKind k) {
    switch (k) {
        case OperatorKind::Composition: return "Composition";
        case OperatorKind::VolterraJ: return "VolterraJ";
        case OperatorKind::IntegralI: return "IntegralI";
        case OperatorKind::CommutatorJ: return "CommutatorJ";
        case OperatorKind::CommutatorI: return "CommutatorI";
    }
    return "?";
}

namespace {

void require_commutator(OperatorKind kind) {
    if (kind != OperatorKind::CommutatorI && kind != OperatorKind::CommutatorJ)
        throw std::invalid_argument("expected CommutatorI or CommutatorJ, got " + std::string(to_string(kind)));
}

void require_inside(cplx z) {
    if (!(std::abs(z) < 1.0)) throw std::domain_error("point outside the open unit disk");
}

}  // namespace

cplx apply_Jg(const AnalyticFn& g, const AnalyticFn& f, cplx z, const QuadratureOptions& opts) {
    require_inside(z);
    return integrate_segment_or_throw([&](cplx s) { return f(s) * g.deriv(s); }, 0.0, z, opts);
}

cplx apply_Ig(const AnalyticFn& g, const AnalyticFn& f, cplx z, const QuadratureOptions& opts) {
    require_inside(z);
    return integrate_segment_or_throw([&](cplx s) { return f.deriv(s) * g(s); }, 0.0, z, opts);
}

cplx commutator_value(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, const AnalyticFn& f, cplx z,
                      const QuadratureOptions& opts) {
    require_commutator(kind);
    require_inside(z);
    const cplx w = phi(z);
    if (kind == OperatorKind::CommutatorI) {
        // int_0^{phi(z)} f' g  -  int_0^z (f o phi)' g
        const cplx outer = integrate_segment_or_throw([&](cplx s) { return f.deriv(s) * g(s); }, 0.0, w, opts);
        const cplx inner = integrate_segment_or_throw(
            [&](cplx s) { return f.deriv(phi(s)) * phi.deriv(s) * g(s); }, 0.0, z, opts);
        return outer - inner;
    }
    // int_0^{phi(z)} f g'  -  int_0^z f(phi) g'
    const cplx outer = integrate_segment_or_throw([&](cplx s) { return f(s) * g.deriv(s); }, 0.0, w, opts);
    const cplx inner = integrate_segment_or_throw([&](cplx s) { return f(phi(s)) * g.deriv(s); }, 0.0, z, opts);
    return outer - inner;
}

namespace {

// The commutator derivative factors as (pre * F(phi(z))) * post with F = f'
// for kind I and F = f for kind J.
struct Factors {
    cplx image, pre, post;
};

Factors factors(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, cplx z) {
    const cplx w = phi(z);
    if (kind == OperatorKind::CommutatorI) return {w, phi.deriv(z), g(w) - g(z)};
    return {w, 1.0, g.deriv(w) * phi.deriv(z) - g.deriv(z)};
}

cplx combine(OperatorKind kind, const Factors& fa, const AnalyticFn& f) {
    const cplx F = kind == OperatorKind::CommutatorI ? f.deriv(fa.image) : f(fa.image);
    return fa.pre * F * fa.post;
}

}  // namespace

cplx commutator_derivative(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, const AnalyticFn& f,
                           cplx z) {
    require_commutator(kind);
    require_inside(z);
    return combine(kind, factors(kind, phi, g, z), f);
}

// ---------------------------------------------------------------------------
// Sampled suprema

namespace {

template <class Field>
SupEstimate grid_max(const Field& field, std::span<const cplx> points) {
    SupEstimate best;
    best.value = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double v = field(points[i]);
        if (v > best.value) best = {v, points[i], i, false};
    }
    if (best.value < 0.0) best.value = 0.0;
    return best;
}

// Deterministic compass search for a local maximum of `field` inside the
// disk, started at z0 with initial step h.
template <class Field>
std::pair<double, cplx> compass_search(const Field& field, cplx z0, double h) {
    constexpr double kR = std::numbers::sqrt2 / 2.0;
    static constexpr std::array<cplx, 8> dirs = {
        cplx{1, 0}, cplx{-1, 0}, cplx{0, 1}, cplx{0, -1},
        cplx{kR, kR}, cplx{-kR, kR}, cplx{kR, -kR}, cplx{-kR, -kR}};
    cplx z = z0;
    double v = field(z);
    for (int iter = 0; iter < 4000 && h > 1e-13; ++iter) {
        bool moved = false;
        for (const cplx d : dirs) {
            const cplx c = z + h * d;
            if (!(std::abs(c) < 1.0)) continue;
            const double vc = field(c);
            if (vc > v) {
                v = vc;
                z = c;
                moved = true;
                break;
            }
        }
        if (!moved) h *= 0.5;
    }
    return {v, z};
}

template <class Field>
SupEstimate refined_max(const Field& field, const DiskGrid& grid) {
    SupEstimate best = grid_max(field, grid.points);
    // Start from the best sample of every shell among the top few shells.
    std::vector<std::pair<double, std::size_t>> seeds;
    for (int k = 0; k < grid.shell_count(); ++k) {
        double sv = -1.0;
        std::size_t si = 0;
        for (std::size_t i = grid.shell_begin[k]; i < grid.shell_begin[k + 1]; ++i) {
            const double v = field(grid.points[i]);
            if (v > sv) {
                sv = v;
                si = i;
            }
        }
        seeds.emplace_back(sv, si);
    }
    seeds.emplace_back(field(cplx{0.0}), grid.size());  // the origin is not a grid point
    std::stable_sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    seeds.resize(std::min<std::size_t>(seeds.size(), 4));

    for (const auto& [sv, si] : seeds) {
        const cplx z0 = si < grid.size() ? grid.points[si] : cplx{0.0};
        const int k = si < grid.size() ? grid.shell[si] : 0;
        const double gap = 1.0 - std::abs(z0);
        const double angular = 2.0 * std::numbers::pi * std::abs(z0) / static_cast<double>(grid.base_angular * (k + 1));
        const double h = std::max(std::min(0.5 * gap, angular), 1e-9);
        const auto [v, z] = compass_search(field, z0, h);
        if (v > best.value) {
            best.value = v;
            best.arg = z;
            best.refined = true;
        }
    }
    return best;
}

}  // namespace

SupEstimate bloch_seminorm(const AnalyticFn& f, const DiskGrid& grid, bool refine) {
    auto field = [&](cplx z) { return one_minus_sq(z) * std::abs(f.deriv(z)); };
    return refine ? refined_max(field, grid) : grid_max(field, grid.points);
}

double bloch_norm(const AnalyticFn& f, const DiskGrid& grid) {
    return std::abs(f(0.0)) + bloch_seminorm(f, grid).value;
}

SupEstimate hinf_norm(const AnalyticFn& f, const DiskGrid& grid) { return hinf_norm(f, grid.points); }

SupEstimate hinf_norm(const AnalyticFn& f, std::span<const cplx> points) {
    return grid_max([&](cplx z) { return std::abs(f(z)); }, points);
}

CommutatorKernel::CommutatorKernel(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, const DiskGrid& grid)
    : kind_(kind), points_(grid.points) {
    require_commutator(kind);
    images_.reserve(points_.size());
    weights_.reserve(points_.size() * 2);
    for (const cplx z : points_) {
        const Factors fa = factors(kind, phi, g, z);
        images_.push_back(fa.image);
        weights_.push_back(fa.pre);
        weights_.push_back(fa.post);
    }
}

SupEstimate CommutatorKernel::seminorm(const AnalyticFn& f) const {
    SupEstimate best;
    best.value = -1.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const cplx F = kind_ == OperatorKind::CommutatorI ? f.deriv(images_[i]) : f(images_[i]);
        const double v = one_minus_sq(points_[i]) * std::abs(weights_[2 * i] * F * weights_[2 * i + 1]);
        if (v > best.value) best = {v, points_[i], i, false};
    }
    if (best.value < 0.0) best.value = 0.0;
    return best;
}

SupEstimate commutator_seminorm(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, const AnalyticFn& f,
                                const DiskGrid& grid) {
    return CommutatorKernel(kind, phi, g, grid).seminorm(f);
}

}  // namespace blochlab
