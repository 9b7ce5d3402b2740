#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ball.hpp"
#include "bernoulli.hpp"

namespace dlbound {

// Shift parameter c in (0, 1]. A rational a/q is kept as a fraction so that
// every node n + c is formed with a single rounding, (n q + a) / q.
class HurwitzShift
{
public:
    static HurwitzShift real(double c) { return HurwitzShift(c, 0, 0); }

    static HurwitzShift rational(std::uint64_t num, std::uint64_t den)
    {
        if (den == 0 || num == 0 || num > den) {
            throw std::invalid_argument("HurwitzShift: a/q must lie in (0, 1]");
        }
        return {static_cast<double>(num) / static_cast<double>(den), num, den};
    }

    [[nodiscard]] double value() const noexcept { return value_; }

    /// n + c, with relative error at most one rounding.
    [[nodiscard]] double node(std::uint64_t n) const
    {
        if (den_ == 0) {
            return static_cast<double>(n) + value_;
        }
        return static_cast<double>(n * den_ + num_) / static_cast<double>(den_);
    }

private:
    HurwitzShift(double c, std::uint64_t num, std::uint64_t den) : value_(c), num_(num), den_(den)
    {
        if (!(c > 0.0 && c <= 1.0)) {
            throw std::invalid_argument("HurwitzShift: c must lie in (0, 1]");
        }
    }

    double value_;
    std::uint64_t num_;
    std::uint64_t den_;
};

struct EMConfig
{
    /// Number of terms summed directly before the Euler-Maclaurin tail.
    std::uint64_t truncation = 1;
    /// Odd order k of the expansion; the remainder involves B_{k+1}.
    unsigned order = 1;
    /// Relative inflation charged per floating operation.
    double rounding_inflation = rounding::per_op;
};

namespace detail {

inline void validate_hurwitz_args(cplx s, unsigned order)
{
    if (!(s.real() > -1.0)) {
        throw std::domain_error("hurwitz_zeta_em: requires Re(s) > -1");
    }
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-6) {
        throw std::domain_error("hurwitz_zeta_em: s too close to the pole at 1");
    }
    if (order % 2 == 0 || order < 1 || order > BernoulliTable::max_order) {
        throw std::invalid_argument("hurwitz_zeta_em: order must be odd and in [1, 19]");
    }
}

/// Upper bound for x^e, x > 0 real (carrying one rounding), e real.
inline double real_pow_upper(double x, double e)
{
    const double lx = std::log(x);
    const double v = std::exp(e * lx);
    return rounding::up(v * (1.0 + rounding::per_op * (8.0 + 2.0 * std::abs(e) * (std::abs(lx) + 1.0))));
}

/// Sum of (n + c)^{-sigma} over n in [0, N), bounded above.
inline double node_power_sum_upper(double sigma, double c, double n_terms)
{
    const double b = n_terms + c;
    if (sigma < 0.0) {
        return n_terms * real_pow_upper(b, -sigma);
    }
    double integral = 0.0;
    if (std::abs(sigma - 1.0) < 1e-12) {
        integral = std::log(b / c);
    } else {
        integral = (std::pow(b, 1.0 - sigma) - std::pow(c, 1.0 - sigma)) / (1.0 - sigma);
    }
    return rounding::up((real_pow_upper(c, -sigma) + integral) * 1.01);
}

} // namespace detail

/// Bound on |integral remainder| of the order-k expansion started at X = N + c.
/// For k = 1 this is |s(s+1)| / (12 (sigma+1) X^{sigma+1}) using sup|B_2({x})| = 1/6;
/// for larger k, sup|B_{k+1}({x})| <= 4 (k+1)!/(2 pi)^{k+1} is used.
inline double em_remainder_bound(cplx s, double x, unsigned order)
{
    const double sigma = s.real();
    double poch = 1.0;
    for (unsigned i = 0; i <= order; ++i) {
        poch *= std::abs(s + static_cast<double>(i)) * (1.0 + 2.0 * rounding::per_op);
    }
    const double decay = detail::real_pow_upper(x, -(sigma + order));
    double constant = 0.0;
    if (order == 1) {
        constant = 1.0 / 12.0;
    } else {
        constant = 4.0 / std::pow(2.0 * std::numbers::pi, static_cast<double>(order + 1));
    }
    const double denom = (sigma + order) * (1.0 - rounding::per_op);
    return rounding::up(constant * (1.0 + 4.0 * rounding::per_op) * poch * decay / denom);
}

/// ζ(s, c) via Euler-Maclaurin:
///   sum_{n<N} (n+c)^{-s} + X^{1-s}/(s-1) + X^{-s}/2
///     + sum_{j=1}^{(k+1)/2} B_{2j}/(2j)! (s)_{2j-1} X^{-s-2j+1} + R_k,   X = N + c,
/// with |R_k| folded into the radius. For k = 1 the correction is s/(12 X^{s+1}).
inline ErrorBoundedComplex hurwitz_zeta_em(cplx s, const HurwitzShift& c, const EMConfig& cfg)
{
    detail::validate_hurwitz_args(s, cfg.order);
    if (cfg.truncation < 1) {
        throw std::invalid_argument("hurwitz_zeta_em: truncation N must be >= 1");
    }
    if (!(cfg.rounding_inflation >= rounding::per_op)) {
        throw std::invalid_argument("hurwitz_zeta_em: rounding inflation below the arithmetic model's floor");
    }
    const double inflation = cfg.rounding_inflation;
    const cplx minus_s = -s;

    BallAccumulator head;
    for (std::uint64_t n = 0; n < cfg.truncation; ++n) {
        head.add(real_pow(c.node(n), minus_s, inflation));
    }
    ErrorBoundedComplex result = head.result();

    const double x = c.node(cfg.truncation);
    const auto power = real_pow(x, minus_s, inflation); // X^{-s}
    // x carries one rounding; treat it as a disc when used as a factor
    const ErrorBoundedComplex x_disc(cplx(x, 0.0), x * rounding::unit);
    const ErrorBoundedComplex inv_x = ErrorBoundedComplex(cplx(1.0, 0.0)) / x_disc;
    const ErrorBoundedComplex s_minus_one(s - 1.0, std::abs(s - 1.0) * rounding::unit);

    result += power * x_disc / s_minus_one;
    result += power * 0.5;

    const BernoulliTable table(cfg.order);
    ErrorBoundedComplex poch(s, 0.0);       // (s)_{2j-1}
    ErrorBoundedComplex x_power = power * inv_x; // X^{-s-2j+1}
    double factorial = 2.0;                 // (2j)!
    for (unsigned j = 1; 2 * j <= cfg.order + 1; ++j) {
        const double coef = table.number(2 * j).to_double() / factorial;
        ErrorBoundedComplex term = poch * x_power;
        term = term * ErrorBoundedComplex(cplx(coef, 0.0), std::abs(coef) * 2.0 * rounding::unit);
        result += term;

        for (unsigned i = 2 * j - 1; i <= 2 * j; ++i) {
            const cplx factor = s + static_cast<double>(i);
            poch *= ErrorBoundedComplex(factor, std::abs(factor) * rounding::unit);
        }
        x_power *= inv_x;
        x_power *= inv_x;
        factorial *= static_cast<double>((2 * j + 1) * (2 * j + 2));
    }

    const double remainder = em_remainder_bound(s, x, cfg.order);
    return {result.mid(), rounding::up(result.radius() + remainder)};
}

inline ErrorBoundedComplex hurwitz_zeta_em(cplx s, double c, const EMConfig& cfg)
{
    return hurwitz_zeta_em(s, HurwitzShift::real(c), cfg);
}

class TruncationUnreachable : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Estimated rounding contribution of the direct head sum with N terms.
inline double em_rounding_estimate(cplx s, double c, std::uint64_t n_terms)
{
    const auto n = static_cast<double>(n_terms);
    const double log_x = std::log(n + c) + std::abs(std::log(c));
    const double per_term = rounding::per_op * (2.0 * std::abs(s) * (log_x + 1.0) + 10.0) + 4.0 * rounding::unit;
    return rounding::up(2.0 * per_term * detail::node_power_sum_upper(s.real(), c, n + 1.0));
}

/// Smallest N (doubling from max(1, ceil|Im s|)) whose remainder bound plus
/// rounding estimate stays below target_radius.
inline std::uint64_t choose_truncation(cplx s, double c, double target_radius, unsigned order = 1,
                                       std::uint64_t ceiling = 1'000'000'000ULL)
{
    detail::validate_hurwitz_args(s, order);
    if (!(target_radius > 0.0)) {
        throw std::invalid_argument("choose_truncation: target radius must be positive");
    }
    if (!(c > 0.0 && c <= 1.0)) {
        throw std::invalid_argument("choose_truncation: c must lie in (0, 1]");
    }
    auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(std::abs(s.imag()))));
    for (; n <= ceiling; n *= 2) {
        const double rnd = em_rounding_estimate(s, c, n);
        if (rnd > target_radius) {
            break;
        }
        if (em_remainder_bound(s, static_cast<double>(n) + c, order) + rnd <= target_radius) {
            return n;
        }
    }
    char target[32];
    std::snprintf(target, sizeof target, "%.3g", target_radius);
    throw TruncationUnreachable(std::string("choose_truncation: target radius ") + target + " unreachable at order " +
                                std::to_string(order) + " in double precision");
}

/// Convenience: pick N for the target radius, then evaluate.
inline ErrorBoundedComplex hurwitz_zeta(cplx s, const HurwitzShift& c, double target_radius, unsigned order = 1)
{
    EMConfig cfg;
    cfg.order = order;
    cfg.truncation = choose_truncation(s, c.value(), target_radius, order);
    return hurwitz_zeta_em(s, c, cfg);
}

} // namespace dlbound
