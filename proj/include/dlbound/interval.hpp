#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace dlbound {

// Closed real interval with outward rounding. Endpoints may be infinite, so
// that tails such as [T, inf) can be handled by the same arithmetic; products
// 0 * inf are taken as 0 (an unbounded endpoint is a limit, not a value).
// Sums and products round outward via error-free transforms (TwoSum, fma).
class Interval
{
public:
    static constexpr double inf = std::numeric_limits<double>::infinity();

    Interval() = default;
    Interval(double x) : lo_(x), hi_(x) {} // NOLINT(google-explicit-constructor)
    Interval(double lo, double hi) : lo_(lo), hi_(hi)
    {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
            throw std::invalid_argument("Interval: malformed endpoints");
        }
    }

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] double width() const noexcept { return hi_ - lo_; }
    [[nodiscard]] double mid() const noexcept { return lo_ + 0.5 * (hi_ - lo_); }
    [[nodiscard]] bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    [[nodiscard]] bool is_point() const noexcept { return lo_ == hi_; }

    /// Widens the interval by k units in the last place on each side.
    [[nodiscard]] Interval widened(int k = 1) const
    {
        double l = lo_, h = hi_;
        for (int i = 0; i < k; ++i) {
            l = std::nextafter(l, -inf);
            h = std::nextafter(h, inf);
        }
        return {l, h};
    }

    friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
    friend Interval operator+(const Interval& a, const Interval& b)
    {
        return {sum_rounded(a.lo_, b.lo_).first, sum_rounded(a.hi_, b.hi_).second};
    }
    friend Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

    friend Interval operator*(const Interval& a, const Interval& b)
    {
        const std::pair<double, double> p[] = {product_rounded(a.lo_, b.lo_), product_rounded(a.lo_, b.hi_),
                                               product_rounded(a.hi_, b.lo_), product_rounded(a.hi_, b.hi_)};
        double lo = inf, hi = -inf;
        for (const auto& [l, h] : p) {
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
        return {lo, hi};
    }

    /// 1/[a, b] for intervals not containing 0.
    [[nodiscard]] Interval reciprocal() const
    {
        if (lo_ <= 0.0 && hi_ >= 0.0) {
            throw std::domain_error("Interval: reciprocal of an interval containing zero");
        }
        return {reciprocal_rounded(hi_).first, reciprocal_rounded(lo_).second};
    }

    friend Interval operator/(const Interval& a, const Interval& b) { return a * b.reciprocal(); }

    friend std::ostream& operator<<(std::ostream& os, const Interval& x)
    {
        return os << '[' << x.lo_ << ", " << x.hi_ << ']';
    }

private:
    // Each helper returns (lower, upper) bounds of the exact result. An endpoint
    // moves by one ulp only when the rounded operation was inexact, so exact
    // zeros (e.g. 1/inf) keep their sign.
    static std::pair<double, double> inexact(double x)
    {
        return {std::nextafter(x, -inf), std::nextafter(x, inf)};
    }

    static std::pair<double, double> sum_rounded(double a, double b)
    {
        const double s = a + b;
        if (std::isinf(s)) {
            if (std::isfinite(a) && std::isfinite(b)) { // overflow
                return s > 0 ? std::pair(std::numeric_limits<double>::max(), inf)
                             : std::pair(-inf, -std::numeric_limits<double>::max());
            }
            return {s, s};
        }
        const double bb = s - a;
        const double err = (a - (s - bb)) + (b - bb);
        if (err < 0.0) {
            return {std::nextafter(s, -inf), s};
        }
        if (err > 0.0) {
            return {s, std::nextafter(s, inf)};
        }
        return {s, s};
    }

    static std::pair<double, double> product_rounded(double x, double y)
    {
        if (x == 0.0 || y == 0.0) {
            return {0.0, 0.0};
        }
        const double p = x * y;
        if (std::isinf(p)) {
            if (std::isfinite(x) && std::isfinite(y)) {
                return p > 0 ? std::pair(std::numeric_limits<double>::max(), inf)
                             : std::pair(-inf, -std::numeric_limits<double>::max());
            }
            return {p, p};
        }
        if (std::abs(p) < 0x1p-960) { // error term may be inexact near underflow
            if (p == 0.0) {
                const bool positive = (x > 0) == (y > 0);
                const double d = std::numeric_limits<double>::denorm_min();
                return positive ? std::pair(0.0, d) : std::pair(-d, 0.0);
            }
            return inexact(p);
        }
        const double err = std::fma(x, y, -p);
        if (err < 0.0) {
            return {std::nextafter(p, -inf), p};
        }
        if (err > 0.0) {
            return {p, std::nextafter(p, inf)};
        }
        return {p, p};
    }

    static std::pair<double, double> reciprocal_rounded(double x)
    {
        if (std::isinf(x)) {
            return {0.0, 0.0};
        }
        const double r = 1.0 / x;
        if (std::isinf(r) || std::abs(r) < 0x1p-960 || std::abs(x) < 0x1p-960) {
            return inexact(r);
        }
        return std::fma(r, x, -1.0) == 0.0 ? std::pair(r, r) : inexact(r);
    }

    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Natural log of a positive interval; libm error is covered by 4 ulp of widening.
inline Interval log(const Interval& x)
{
    if (!(x.lo() > 0.0)) {
        throw std::domain_error("Interval log: argument must be positive");
    }
    auto lo = std::log(x.lo());
    auto hi = std::log(x.hi());
    // exact at 1 and inf; elsewhere libm error is covered by 4 ulp
    const Interval w = Interval(lo, hi).widened(4);
    return {x.lo() == 1.0 || std::isinf(lo) ? lo : w.lo(), x.hi() == 1.0 || std::isinf(hi) ? hi : w.hi()};
}

inline Interval exp(const Interval& x)
{
    const double lo = std::exp(x.lo());
    const double hi = std::exp(x.hi());
    const Interval w = Interval(lo, hi).widened(4);
    auto exact = [](double a) { return a == 0.0 || std::isinf(a); };
    return {exact(x.lo()) ? lo : std::max(0.0, w.lo()), exact(x.hi()) ? hi : w.hi()};
}

namespace constants {

/// Euler-Mascheroni constant, correctly rounded double.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// An interval certainly containing the Euler-Mascheroni constant.
inline Interval euler_gamma_enclosure()
{
    return Interval(euler_gamma).widened(1);
}

} // namespace constants

} // namespace dlbound
