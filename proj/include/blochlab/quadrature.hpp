#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace blochlab {

using cplx = std::complex<double>;

struct QuadratureOptions {
    double abs_tol = 1e-12;
    int max_panels = 40;
};

struct QuadratureResult {
    cplx value;
    double error_estimate;
    int panels;
    bool converged;
};

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const QuadratureResult& r);
    const QuadratureResult& result() const { return result_; }

private:
    QuadratureResult result_;
};

/// Contour integral of `f` along the straight segment [a, b] by globally
/// adaptive bisection with 16-point Gauss-Legendre panels. The panel with the
/// largest error estimate is split until the summed estimate meets the
/// tolerance or the panel budget runs out.
QuadratureResult integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                   const QuadratureOptions& opts = {});

/// Same as integrate_segment but throws QuadratureError on non-convergence.
cplx integrate_segment_or_throw(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                const QuadratureOptions& opts = {});

}  // namespace blochlab
