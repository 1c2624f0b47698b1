#include "blochlab/diskgeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace blochlab {

DiskGrid make_grid(int max_shell, int base_angular) {
    if (max_shell < 4) throw std::invalid_argument("make_grid: max_shell must be >= 4");
    if (base_angular < 64) throw std::invalid_argument("make_grid: base_angular must be >= 64");

    DiskGrid g;
    g.max_shell = max_shell;
    g.base_angular = base_angular;
    for (int k = 0; k <= max_shell; ++k) {
        const double r = 1.0 - 0.75 * std::ldexp(1.0, -k);
        const std::size_t n = static_cast<std::size_t>(base_angular) * static_cast<std::size_t>(k + 1);
        g.radii.push_back(r);
        g.angular_counts.push_back(n);
        g.shell_begin.push_back(g.points.size());
        for (std::size_t j = 0; j < n; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            g.points.push_back(std::polar(r, theta));
            g.shell.push_back(k);
        }
    }
    g.shell_begin.push_back(g.points.size());
    return g;
}

int shell_of_modulus(double r, int max_shell) {
    if (!(r >= 0.5)) return 0;
    if (r >= 1.0) return max_shell;
    const int k = static_cast<int>(std::floor(-std::log2(1.0 - r)));
    return std::clamp(k, 0, max_shell);
}

double one_minus_sq(cplx z) {
    const double r = std::abs(z);
    return (1.0 - r) * (1.0 + r);
}

double pseudo_hyperbolic(cplx a, cplx b) { return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b); }

namespace {
std::string describe(cplx w, cplx v) {
    std::ostringstream os;
    os.precision(17);
    os << "not a self-map: |phi(" << w.real() << (w.imag() < 0 ? "" : "+") << w.imag() << "i)| = " << std::abs(v)
       << " >= 1";
    return os.str();
}
}  // namespace

NotASelfMap::NotASelfMap(cplx witness, cplx value)
    : std::runtime_error(describe(witness, value)), witness_(witness), value_(value) {}

SelfMap validate_self_map(const AnalyticFn& phi, const DiskGrid& grid) {
    double max_mod = std::abs(phi(0.0));
    if (!(max_mod < 1.0)) throw NotASelfMap(0.0, phi(0.0));
    for (const cplx z : grid.points) {
        const cplx w = phi(z);
        const double m = std::abs(w);
        if (!(m < 1.0)) throw NotASelfMap(z, w);
        max_mod = std::max(max_mod, m);
    }
    // Margin for the unsampled band outside the last shell.
    const double margin = std::ldexp(1.0, -(grid.max_shell + 1));
    const double estimate = std::min(1.0, max_mod + margin);
    return SelfMap(phi, estimate, is_automorphism_form(phi.expr()), std::ldexp(1.0, -grid.max_shell));
}

cplx schwarz_derivative(const SelfMap& phi, cplx z) {
    return one_minus_sq(z) / one_minus_sq(phi(z)) * phi.deriv(z);
}

double schwarz_pick_modulus_bound(const SelfMap& phi, cplx z) {
    const double r = std::abs(z);
    const double p0 = std::abs(phi(0.0));
    return (r + p0) / (1.0 + r * p0);
}

}  // namespace blochlab
