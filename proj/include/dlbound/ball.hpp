#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dlbound {

using cplx = std::complex<double>;

namespace rounding {

inline constexpr double unit = std::numeric_limits<double>::epsilon(); // 2^-52

/// Relative inflation charged per floating operation (4 ulp of 1).
inline constexpr double per_op = 4.0 * unit;

inline constexpr double tiny = std::numeric_limits<double>::denorm_min();

/// Nudges a nonnegative error term upwards so that the rounding of the
/// radius computation itself cannot make it too small.
inline double up(double x)
{
    return x * (1.0 + per_op) + tiny;
}

} // namespace rounding

// Midpoint-radius complex number. The represented set is the closed disc
// {z : |z - mid| <= radius}. Every operation returns a disc containing the
// image of its inputs' discs, with floating rounding folded into the radius.
class ErrorBoundedComplex
{
public:
    ErrorBoundedComplex() = default;
    ErrorBoundedComplex(cplx mid, double radius) : mid_(mid), radius_(radius)
    {
        if (!(radius >= 0.0) || !std::isfinite(radius)) {
            throw std::invalid_argument("ErrorBoundedComplex: radius must be finite and nonnegative");
        }
    }
    explicit ErrorBoundedComplex(cplx exact) : mid_(exact) {}

    [[nodiscard]] cplx mid() const noexcept { return mid_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }

    /// |mid|, rounded up, plus the radius: an upper bound on |z| over the disc.
    [[nodiscard]] double abs_upper() const { return rounding::up(std::abs(mid_) * (1.0 + rounding::per_op) + radius_); }

    [[nodiscard]] bool contains(cplx z) const { return std::abs(z - mid_) <= radius_; }

    /// Magnitude of the midpoint and a radius enclosing |z| for z in the disc.
    [[nodiscard]] std::pair<double, double> modulus() const
    {
        const double m = std::abs(mid_);
        return {m, rounding::up(radius_ + m * rounding::per_op)};
    }

    [[nodiscard]] ErrorBoundedComplex conj() const { return {std::conj(mid_), radius_}; }

    ErrorBoundedComplex& operator+=(const ErrorBoundedComplex& o)
    {
        const double scale = std::abs(mid_) + std::abs(o.mid_);
        mid_ += o.mid_;
        radius_ = rounding::up(radius_ + o.radius_ + scale * rounding::per_op);
        return *this;
    }

    ErrorBoundedComplex& operator-=(const ErrorBoundedComplex& o)
    {
        const double scale = std::abs(mid_) + std::abs(o.mid_);
        mid_ -= o.mid_;
        radius_ = rounding::up(radius_ + o.radius_ + scale * rounding::per_op);
        return *this;
    }

    ErrorBoundedComplex& operator*=(const ErrorBoundedComplex& o)
    {
        const double a = std::abs(mid_);
        const double b = std::abs(o.mid_);
        mid_ = cplx(mid_.real() * o.mid_.real() - mid_.imag() * o.mid_.imag(),
                    mid_.real() * o.mid_.imag() + mid_.imag() * o.mid_.real());
        radius_ = rounding::up(a * o.radius_ + b * radius_ + radius_ * o.radius_ + 2.0 * a * b * rounding::per_op);
        return *this;
    }

    /// Multiplication by an exactly known real.
    ErrorBoundedComplex& operator*=(double x)
    {
        mid_ *= x;
        radius_ = rounding::up(radius_ * std::abs(x) + std::abs(mid_) * rounding::per_op);
        return *this;
    }

    ErrorBoundedComplex& operator/=(const ErrorBoundedComplex& o)
    {
        const double b = std::abs(o.mid_);
        const double lower = b * (1.0 - rounding::per_op) - o.radius_;
        if (!(lower > 0.0)) {
            throw std::domain_error("ErrorBoundedComplex: divisor disc contains zero");
        }
        const cplx q = mid_ / o.mid_;
        const double qa = std::abs(q);
        // |a/b - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
        radius_ = rounding::up((radius_ + qa * (1.0 + rounding::per_op) * o.radius_) / lower + 4.0 * qa * rounding::per_op);
        mid_ = q;
        return *this;
    }

    friend ErrorBoundedComplex operator+(ErrorBoundedComplex a, const ErrorBoundedComplex& b) { return a += b; }
    friend ErrorBoundedComplex operator-(ErrorBoundedComplex a, const ErrorBoundedComplex& b) { return a -= b; }
    friend ErrorBoundedComplex operator*(ErrorBoundedComplex a, const ErrorBoundedComplex& b) { return a *= b; }
    friend ErrorBoundedComplex operator*(ErrorBoundedComplex a, double x) { return a *= x; }
    friend ErrorBoundedComplex operator*(double x, ErrorBoundedComplex a) { return a *= x; }
    friend ErrorBoundedComplex operator/(ErrorBoundedComplex a, const ErrorBoundedComplex& b) { return a /= b; }

    friend std::ostream& operator<<(std::ostream& os, const ErrorBoundedComplex& z)
    {
        return os << '(' << z.mid_.real() << (z.mid_.imag() < 0 ? " - " : " + ") << std::abs(z.mid_.imag())
                  << "i) +/- " << z.radius_;
    }

private:
    cplx mid_{};
    double radius_ = 0.0;
};

/// True when the two discs intersect.
inline bool overlaps(const ErrorBoundedComplex& a, const ErrorBoundedComplex& b)
{
    return std::abs(a.mid() - b.mid()) <= a.radius() + b.radius();
}

/// x^z for a real x > 0 that may itself carry one rounding (relative error
/// at most one unit), computed as exp(z log x).
inline ErrorBoundedComplex real_pow(double x, cplx z, double per_op = rounding::per_op)
{
    if (!(x > 0.0)) {
        throw std::domain_error("real_pow: base must be positive");
    }
    using rounding::unit;
    const double lx = std::log(x);
    const double re = z.real() * lx;
    const double im = z.imag() * lx;
    const double mag = std::exp(re);
    const cplx mid(mag * std::cos(im), mag * std::sin(im));
    // error in log x: from the base (<= 1.01 unit) and from libm (per_op relative)
    const double log_err = 1.01 * unit + std::abs(lx) * per_op;
    const double exponent_err = std::abs(z) * log_err + (std::abs(re) + std::abs(im)) * per_op;
    if (exponent_err > 1.0) {
        throw std::domain_error("real_pow: argument too large for double evaluation");
    }
    const double rel = std::expm1(exponent_err) * 1.01 + 8.0 * per_op;
    return {mid, rounding::up(mag * (1.0 + per_op) * rel)};
}

// Compensated (Neumaier) summation of discs, component-wise. The midpoint
// error is bounded once at the end by (2u + O(n u^2)) * sum |mid_i| per
// component rather than charging every addition.
class BallAccumulator
{
public:
    void add(const ErrorBoundedComplex& z) { add(z.mid(), std::abs(z.mid()), z.radius()); }

    /// Adds a term whose midpoint magnitude is already known.
    void add(cplx mid, double magnitude, double radius)
    {
        re_.add(mid.real());
        im_.add(mid.imag());
        abs_sum_ += magnitude;
        radius_sum_ += radius;
        ++count_;
    }

    [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
    [[nodiscard]] double abs_sum() const noexcept { return abs_sum_; }
    [[nodiscard]] cplx mid() const noexcept { return {re_.value(), im_.value()}; }

    [[nodiscard]] ErrorBoundedComplex result() const { return {mid(), radius_bound()}; }

    /// Radius of result(); depends only on the magnitudes and radii added.
    [[nodiscard]] double radius_bound() const
    {
        const double nu = static_cast<double>(count_ + 2) * rounding::unit;
        if (nu >= 1e-3) {
            throw std::domain_error("BallAccumulator: too many terms for the error model");
        }
        const double gamma = nu / (1.0 - nu);
        const double abs_bound = rounding::up(abs_sum_ * (1.0 + gamma));
        const double rad_bound = rounding::up(radius_sum_ * (1.0 + gamma));
        // unit = 2u; per component 2u + 2 n u^2 suffices, sqrt(2) for the modulus
        const double rel = 3.0 * rounding::unit + 3.0 * nu * rounding::unit;
        return rounding::up(rad_bound + rel * abs_bound);
    }

private:
    struct Neumaier
    {
        double sum = 0.0;
        double carry = 0.0;

        void add(double x)
        {
            const double t = sum + x;
            if (std::abs(sum) >= std::abs(x)) {
                carry += (sum - t) + x;
            } else {
                carry += (x - t) + sum;
            }
            sum = t;
        }
        [[nodiscard]] double value() const { return sum + carry; }
    };

    Neumaier re_;
    Neumaier im_;
    double abs_sum_ = 0.0;
    double radius_sum_ = 0.0;
    std::uint64_t count_ = 0;
};

} // namespace dlbound
