#include "blochlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blochlab {

TaylorSeries::TaylorSeries(std::size_t degree_bound) : coeffs_(degree_bound + 1) {}

TaylorSeries::TaylorSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.emplace_back();
}

TaylorSeries::TaylorSeries(std::initializer_list<cplx> coeffs)
    : TaylorSeries(std::vector<cplx>(coeffs)) {}

cplx TaylorSeries::operator()(cplx z) const {
    cplx acc = coeffs_.back();
    for (std::size_t n = coeffs_.size() - 1; n-- > 0;) acc = acc * z + coeffs_[n];
    return acc;
}

TaylorSeries add(const TaylorSeries& a, const TaylorSeries& b) {
    std::vector<cplx> out(std::max(a.degree_bound(), b.degree_bound()) + 1);
    for (std::size_t n = 0; n <= a.degree_bound(); ++n) out[n] += a[n];
    for (std::size_t n = 0; n <= b.degree_bound(); ++n) out[n] += b[n];
    return TaylorSeries(std::move(out));
}

TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b, std::size_t cap) {
    const std::size_t deg = std::min(a.degree_bound() + b.degree_bound(), cap);
    std::vector<cplx> out(deg + 1);
    for (std::size_t n = 0; n <= deg; ++n) {
        const std::size_t lo = n > b.degree_bound() ? n - b.degree_bound() : 0;
        const std::size_t hi = std::min(n, a.degree_bound());
        cplx acc{};
        for (std::size_t i = lo; i <= hi; ++i) acc += a[i] * b[n - i];
        out[n] = acc;
    }
    return TaylorSeries(std::move(out));
}

TaylorSeries derivative(const TaylorSeries& a) {
    if (a.degree_bound() == 0) return TaylorSeries(0);
    std::vector<cplx> out(a.degree_bound());
    for (std::size_t n = 1; n <= a.degree_bound(); ++n)
        out[n - 1] = static_cast<double>(n) * a[n];
    return TaylorSeries(std::move(out));
}

TaylorSeries antiderivative(const TaylorSeries& a) {
    std::vector<cplx> out(a.degree_bound() + 2);
    for (std::size_t n = 0; n <= a.degree_bound(); ++n)
        out[n + 1] = a[n] / static_cast<double>(n + 1);
    return TaylorSeries(std::move(out));
}

TaylorSeries coeffs_from_samples(const std::function<cplx(cplx)>& evaluate, double radius,
                                 std::size_t count, std::size_t degree) {
    if (!(radius > 0.0 && radius < 1.0))
        throw std::invalid_argument("coeffs_from_samples: radius must lie in (0, 1)");
    if (count < 2 * degree + 2)
        throw std::invalid_argument("coeffs_from_samples: count must be >= 2*degree + 2");

    std::vector<cplx> samples(count);
    for (std::size_t m = 0; m < count; ++m) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(count);
        samples[m] = evaluate(std::polar(radius, theta));
    }

    std::vector<cplx> out(degree + 1);
    double scale = 1.0;  // radius^n
    for (std::size_t n = 0; n <= degree; ++n) {
        cplx acc{};
        for (std::size_t m = 0; m < count; ++m) {
            // (m*n) mod count keeps the twiddle angle small.
            const std::size_t k = (m * n) % count;
            const double theta = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
            acc += samples[m] * std::polar(1.0, theta);
        }
        out[n] = acc / (static_cast<double>(count) * scale);
        scale *= radius;
    }
    return TaylorSeries(std::move(out));
}

TaylorSeries coeffs_from_samples(const std::function<cplx(cplx)>& evaluate, std::size_t degree) {
    return coeffs_from_samples(evaluate, 0.5, 4 * (degree + 1), degree);
}

}  // namespace blochlab
