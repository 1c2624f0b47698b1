#include "blochlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace blochlab {

namespace {

// Positive nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<std::array<double, 2>, 8> kGauss16 = {{
    {0.989400934991649932596, 0.0271524594117540948518},
    {0.944575023073232576078, 0.0622535239386478928628},
    {0.865631202387831743880, 0.0951585116824927848099},
    {0.755404408355003033895, 0.124628971255533872052},
    {0.617876244402643748447, 0.149595988816576732082},
    {0.458016777657227386342, 0.169156519395002538189},
    {0.281603550779258913230, 0.182603415044923588867},
    {0.0950125098376374401853, 0.189450610455068496285},
}};

struct PanelSum {
    cplx value;
    double magnitude;  // sum of |w f| for the round-off floor
};

PanelSum gauss16(const std::function<cplx(cplx)>& f, cplx a, cplx b) {
    const cplx mid = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    cplx acc{};
    double mag = 0.0;
    for (const auto& [x, w] : kGauss16) {
        const cplx fp = f(mid + half * x);
        const cplx fm = f(mid - half * x);
        acc += w * (fp + fm);
        mag += w * (std::abs(fp) + std::abs(fm));
    }
    return {acc * half, mag * std::abs(half)};
}

struct Panel {
    cplx a, b;
    PanelSum coarse;
    PanelSum left, right;
    double err;
};

Panel make_panel(const std::function<cplx(cplx)>& f, cplx a, cplx b, PanelSum coarse) {
    const cplx m = 0.5 * (a + b);
    Panel p{a, b, coarse, gauss16(f, a, m), gauss16(f, m, b), 0.0};
    p.err = std::abs(p.coarse.value - (p.left.value + p.right.value));
    return p;
}

}  // namespace

QuadratureError::QuadratureError(const QuadratureResult& r)
    : std::runtime_error("quadrature did not converge: error estimate " + std::to_string(r.error_estimate) +
                         " after " + std::to_string(r.panels) + " panels"),
      result_(r) {}

QuadratureResult integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                   const QuadratureOptions& opts) {
    std::vector<Panel> panels;
    panels.push_back(make_panel(f, a, b, gauss16(f, a, b)));

    auto totals = [&] {
        cplx value{};
        double err = 0.0, mag = 0.0;
        for (const auto& p : panels) {
            value += p.left.value + p.right.value;
            err += p.err;
            mag += p.left.magnitude + p.right.magnitude;
        }
        return std::tuple{value, err, mag};
    };

    for (;;) {
        auto [value, err, mag] = totals();
        // Below this the panel differences are rounding noise.
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * mag;
        const bool converged = err <= std::max(opts.abs_tol, floor);
        if (converged || static_cast<int>(panels.size()) >= opts.max_panels)
            return {value, err, static_cast<int>(panels.size()), converged};

        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const Panel& x, const Panel& y) { return x.err < y.err; });
        const Panel p = *worst;
        const cplx m = 0.5 * (p.a + p.b);
        *worst = make_panel(f, p.a, m, p.left);
        panels.push_back(make_panel(f, m, p.b, p.right));
    }
}

cplx integrate_segment_or_throw(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                const QuadratureOptions& opts) {
    const QuadratureResult r = integrate_segment(f, a, b, opts);
    if (!r.converged) throw QuadratureError(r);
    return r.value;
}

}  // namespace blochlab
