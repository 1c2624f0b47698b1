#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "blochlab/analytic.hpp"
#include "blochlab/diskgeom.hpp"
#include "blochlab/quadrature.hpp"

namespace blochlab {

enum class OperatorKind { Composition, VolterraJ, IntegralI, CommutatorJ, CommutatorI };

std::string_view to_string(OperatorKind k);

/// J_g f(z) = int_0^z f g' along the radial segment.
cplx apply_Jg(const AnalyticFn& g, const AnalyticFn& f, cplx z, const QuadratureOptions& opts = {});

/// I_g f(z) = int_0^z f' g along the radial segment.
cplx apply_Ig(const AnalyticFn& g, const AnalyticFn& f, cplx z, const QuadratureOptions& opts = {});

/// (C_phi T_g - T_g C_phi) f at z by two quadratures (T = J or I).
cplx commutator_value(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, const AnalyticFn& f, cplx z,
                      const QuadratureOptions& opts = {});

/// Closed-form derivative of the commutator image:
///   CommutatorI: phi'(z) f'(phi(z)) (g(phi(z)) - g(z))
///   CommutatorJ: f(phi(z)) ((g o phi)'(z) - g'(z))
cplx commutator_derivative(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, const AnalyticFn& f,
                           cplx z);

/// Maximum of a sampled field with its location. Grid maxima are lower
/// bounds of the true supremum.
struct SupEstimate {
    double value = 0.0;
    cplx arg{};
    std::size_t index = 0;  // grid index of the best grid sample
    bool refined = false;   // true when local search improved on the grid
};

/// max over the grid of (1 - |z|^2)|f'(z)|, then polished by a local compass
/// search started from the best grid samples.
SupEstimate bloch_seminorm(const AnalyticFn& f, const DiskGrid& grid, bool refine = true);

/// |f(0)| + bloch_seminorm(f).
double bloch_norm(const AnalyticFn& f, const DiskGrid& grid);

/// max sampled |f(z)|; a lower estimate of the true sup norm.
SupEstimate hinf_norm(const AnalyticFn& f, const DiskGrid& grid);
SupEstimate hinf_norm(const AnalyticFn& f, std::span<const cplx> points);

/// Precomputed pieces of the commutator seminorm for fixed (kind, phi, g) on a
/// grid. The derivative of the image is pre(z) F(phi(z)) post(z) with F = f'
/// (kind I) or F = f (kind J), so each new f costs one evaluation per point.
class CommutatorKernel {
public:
    CommutatorKernel(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, const DiskGrid& grid);

    /// max over the grid of (1 - |z|^2)|commutator_derivative(z)|.
    SupEstimate seminorm(const AnalyticFn& f) const;

    OperatorKind kind() const { return kind_; }
    std::span<const cplx> images() const { return images_; }

private:
    OperatorKind kind_;
    std::vector<cplx> points_;
    std::vector<cplx> images_;
    std::vector<cplx> weights_;  // (pre, post) interleaved
};

SupEstimate commutator_seminorm(OperatorKind kind, const SelfMap& phi, const AnalyticFn& g, const AnalyticFn& f,
                                const DiskGrid& grid);

}  // namespace blochlab
