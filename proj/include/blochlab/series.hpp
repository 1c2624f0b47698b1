#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace blochlab {

using cplx = std::complex<double>;

/// Default truncation cap for products.
inline constexpr std::size_t kDefaultSeriesCap = 64;

/// Truncated power series a_0 + a_1 z + ... + a_N z^N with exactly N+1
/// stored coefficients. Trailing zeros are kept so that the degree bound is
/// part of the value.
class TaylorSeries {
public:
    /// Zero series of the given degree bound.
    explicit TaylorSeries(std::size_t degree_bound = 0);
    explicit TaylorSeries(std::vector<cplx> coeffs);
    TaylorSeries(std::initializer_list<cplx> coeffs);

    std::size_t degree_bound() const { return coeffs_.size() - 1; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    const cplx& operator[](std::size_t n) const { return coeffs_[n]; }

    /// Horner evaluation; at z = 0 this returns a_0 exactly.
    cplx operator()(cplx z) const;

    friend bool operator==(const TaylorSeries&, const TaylorSeries&) = default;

private:
    std::vector<cplx> coeffs_;
};

TaylorSeries add(const TaylorSeries& a, const TaylorSeries& b);

/// Cauchy product truncated to min(deg a + deg b, cap).
TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b,
                 std::size_t cap = kDefaultSeriesCap);

/// Term-wise derivative. The degree bound drops by one (a constant stays a
/// degree-0 zero series).
TaylorSeries derivative(const TaylorSeries& a);

/// Primitive vanishing at 0; degree bound grows by one.
TaylorSeries antiderivative(const TaylorSeries& a);

/// Recover a_0..a_degree of a function analytic on a disk of radius > radius
/// by the discrete Cauchy integral over `count` equispaced points on
/// |z| = radius. Throws std::invalid_argument for radius outside (0, 1) or
/// count < 2*degree + 2.
TaylorSeries coeffs_from_samples(const std::function<cplx(cplx)>& evaluate,
                                 double radius, std::size_t count, std::size_t degree);

/// Recovery with the default radius 0.5 and count 4*(degree+1).
TaylorSeries coeffs_from_samples(const std::function<cplx(cplx)>& evaluate,
                                 std::size_t degree);

}  // namespace blochlab
