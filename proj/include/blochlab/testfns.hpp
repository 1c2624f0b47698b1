#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blochlab/analytic.hpp"
#include "blochlab/diskgeom.hpp"

namespace blochlab {

enum class TestFamilyKind { MobiusAlpha, PeakH, ProductF, OneMinusMobius, LogFw, Rotation };

/// One member of a test-function family. `param` is the point a (or w) for the
/// disk-parametrised families and the angle t for Rotation.
struct TestFamily {
    TestFamilyKind kind;
    cplx param;

    static TestFamily mobius_alpha(cplx a) { return {TestFamilyKind::MobiusAlpha, a}; }
    static TestFamily peak_h(cplx a) { return {TestFamilyKind::PeakH, a}; }
    static TestFamily product_f(cplx a) { return {TestFamilyKind::ProductF, a}; }
    static TestFamily one_minus_mobius(cplx a) { return {TestFamilyKind::OneMinusMobius, a}; }
    static TestFamily log_fw(cplx w) { return {TestFamilyKind::LogFw, w}; }
    static TestFamily rotation(double t) { return {TestFamilyKind::Rotation, t}; }
};

/// Expression for the family member:
///   MobiusAlpha(a)     (a - z) / (1 - conj(a) z)
///   PeakH(a)           (1 - |a|^2) / (1 - conj(a) z)
///   ProductF(a)        PeakH(a) * MobiusAlpha(a)
///   OneMinusMobius(a)  1 - MobiusAlpha(a)
///   LogFw(w)           log(2 / (1 - conj(w) z))
///   Rotation(t)        e^{it} z
/// Throws std::domain_error when |a| >= 1 or t is outside [0, 2 pi).
AnalyticFn make_test_fn(const TestFamily& family);

/// Greedy subsequence: a point is kept when, together with the points already
/// kept, every node's product of pseudo-hyperbolic distances to the others is
/// still >= d.
std::vector<cplx> select_separated_subsequence(const std::vector<cplx>& points, double d);

/// min over k of prod_{j != k} rho(x_j, x_k).
double separation_constant(const std::vector<cplx>& nodes);

class SeparationError : public std::invalid_argument {
public:
    SeparationError(std::size_t i, std::size_t j, const std::string& what)
        : std::invalid_argument(what), pair_(i, j) {}
    std::pair<std::size_t, std::size_t> offending_pair() const { return pair_; }

private:
    std::pair<std::size_t, std::size_t> pair_;
};

/// Peak functions h_k(x_j) = delta_kj for a finite separated node set, built
/// as Blaschke quotients h_k(z) = prod_{j != k} b_{x_j}(z) / b_{x_j}(x_k).
struct InterpolationFamily {
    std::vector<cplx> nodes;
    double separation = 0.0;  // the requested d
    std::vector<AnalyticFn> peaks;
    double sum_bound_estimate = 0.0;  // max sampled sum_k |h_k(z)|
};

/// Throws SeparationError (with the index pair of the closest nodes) when the
/// nodes violate the separation d.
InterpolationFamily build_interpolation_family(const std::vector<cplx>& nodes, double d, const DiskGrid& grid);

/// max over grid points and nodes of sum_k |h_k(z)|.
double interpolation_sum_bound(const std::vector<AnalyticFn>& peaks, const std::vector<cplx>& nodes,
                               const DiskGrid& grid);

}  // namespace blochlab
