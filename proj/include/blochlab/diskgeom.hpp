#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "blochlab/analytic.hpp"

namespace blochlab {

/// Sample points in the open unit disk arranged in annular shells
/// 1 - 2^-k <= |z| < 1 - 2^-(k+1), k = 0..max_shell. Shell k is the circle of
/// radius 1 - 0.75 * 2^-k sampled at base_angular*(k+1) equispaced angles.
struct DiskGrid {
    std::vector<cplx> points;
    std::vector<int> shell;              // shell index per point
    std::vector<double> radii;           // per shell
    std::vector<std::size_t> angular_counts;
    std::vector<std::size_t> shell_begin;  // first point index of each shell, plus end
    int max_shell = 0;
    int base_angular = 0;

    std::size_t size() const { return points.size(); }
    int shell_count() const { return max_shell + 1; }
};

DiskGrid make_grid(int max_shell = 14, int base_angular = 64);

/// Shell index of a modulus, clamped to [0, max_shell].
int shell_of_modulus(double r, int max_shell);

/// 1 - |z|^2 computed as (1 - |z|)(1 + |z|).
double one_minus_sq(cplx z);

/// Pseudo-hyperbolic distance |a - b| / |1 - conj(a) b|.
double pseudo_hyperbolic(cplx a, cplx b);

class NotASelfMap : public std::runtime_error {
public:
    NotASelfMap(cplx witness, cplx value);
    cplx witness() const { return witness_; }
    cplx value() const { return value_; }

private:
    cplx witness_, value_;
};

/// A holomorphic self-map of the disk that passed sample-based validation.
/// Validation is not a certificate: a map leaving the disk only between
/// samples is accepted.
class SelfMap {
public:
    const AnalyticFn& phi() const { return phi_; }
    AnalyticFn phi_prime() const { return phi_.derivative(); }
    cplx operator()(cplx z) const { return phi_(z); }
    cplx deriv(cplx z) const { return phi_.deriv(z); }

    double sup_modulus_estimate() const { return sup_modulus_; }
    bool is_automorphism() const { return automorphism_; }
    /// Resolution of the grid used for validation (2^-max_shell).
    double resolution() const { return resolution_; }

private:
    friend SelfMap validate_self_map(const AnalyticFn&, const DiskGrid&);
    SelfMap(AnalyticFn phi, double sup_modulus, bool automorphism, double resolution)
        : phi_(std::move(phi)), sup_modulus_(sup_modulus), automorphism_(automorphism), resolution_(resolution) {}

    AnalyticFn phi_;
    double sup_modulus_;
    bool automorphism_;
    double resolution_;
};

/// Throws NotASelfMap at the first sample with |phi(z)| >= 1 (or non-finite).
SelfMap validate_self_map(const AnalyticFn& phi, const DiskGrid& grid);

/// phi^#(z) = (1 - |z|^2) / (1 - |phi(z)|^2) * phi'(z).
cplx schwarz_derivative(const SelfMap& phi, cplx z);

/// (|z| + |phi(0)|) / (1 + |z| |phi(0)|), an upper bound for |phi(z)|.
double schwarz_pick_modulus_bound(const SelfMap& phi, cplx z);

}  // namespace blochlab
