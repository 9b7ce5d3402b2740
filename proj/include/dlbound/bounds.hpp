#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "interval.hpp"
#include "number_theory.hpp"

namespace dlbound {

namespace detail {

template <class T>
T euler_gamma_as();

template <>
inline double euler_gamma_as<double>()
{
    return constants::euler_gamma;
}

template <>
inline Interval euler_gamma_as<Interval>()
{
    return constants::euler_gamma_enclosure();
}

/// Exact-rational constant p/r in the arithmetic T.
template <class T>
T ratio(double p, double r)
{
    return T(p) / T(r);
}

inline void require(bool ok, const char* what)
{
    if (!ok) {
        throw std::domain_error(what);
    }
}

} // namespace detail

// The bounds are written once over a numeric type T: double gives the plain
// value, Interval gives an enclosure used for rigorous comparisons.

/// (φ(q)/q) log t + log q + γ, valid for t > 50.
template <class T = double>
T theorem1_bound(std::uint64_t q, double t)
{
    using std::log;
    detail::require(q >= 3, "theorem1_bound: requires q >= 3");
    detail::require(t > 50.0, "theorem1_bound: requires t > 50");
    const T phi_ratio = T(static_cast<double>(totient(q))) / T(static_cast<double>(q));
    return phi_ratio * log(T(t)) + log(T(static_cast<double>(q))) + detail::euler_gamma_as<T>();
}

/// floor(t/m - a/q): the number of directly summed terms behind the t > 50 bound.
/// The argument needs it to be at least 1; this checks rather than assumes it.
inline std::uint64_t theorem1_truncation(double t, double m, std::uint64_t a, std::uint64_t q)
{
    detail::require(m > 0.0 && q >= 1 && a >= 1 && a <= q, "theorem1_truncation: requires m > 0, 1 <= a <= q");
    const double n = std::floor(t / m - static_cast<double>(a) / static_cast<double>(q));
    detail::require(n >= 1.0, "theorem1_truncation: truncation below 1");
    return static_cast<std::uint64_t>(n);
}

/// log(t + 14/5) + log q + 1, valid for t > 0.
template <class T = double>
T theorem2_bound(std::uint64_t q, double t)
{
    using std::log;
    detail::require(q >= 3, "theorem2_bound: requires q >= 3");
    detail::require(t > 0.0, "theorem2_bound: requires t > 0");
    return log(T(t) + detail::ratio<T>(14, 5)) + log(T(static_cast<double>(q))) + T(1.0);
}

/// log(q (e^γ t + 109/2)), valid for t > 0.
template <class T = double>
T corollary_bound(std::uint64_t q, double t)
{
    using std::exp;
    using std::log;
    detail::require(q >= 3, "corollary_bound: requires q >= 3");
    detail::require(t > 0.0, "corollary_bound: requires t > 0");
    const T inner = exp(detail::euler_gamma_as<T>()) * T(t) + detail::ratio<T>(109, 2);
    return log(T(static_cast<double>(q)) * inner);
}

/// log t + 1/c, the bound for |ζ(1+it, c)| when t > 50.
template <class T = double>
T lemma_hurwitz_bound(double c, double t)
{
    using std::log;
    detail::require(c > 0.0 && c <= 1.0, "lemma_hurwitz_bound: requires c in (0, 1]");
    detail::require(t > 50.0, "lemma_hurwitz_bound: requires t > 50");
    return log(T(t)) + T(1.0) / T(c);
}

/// Same bound with c = a/q kept exact: log t + q/a.
template <class T = double>
T lemma_hurwitz_bound(std::uint64_t a, std::uint64_t q, double t)
{
    using std::log;
    detail::require(a >= 1 && a <= q, "lemma_hurwitz_bound: requires a/q in (0, 1]");
    detail::require(t > 50.0, "lemma_hurwitz_bound: requires t > 50");
    return log(T(t)) + T(static_cast<double>(q)) / T(static_cast<double>(a));
}

/// -log m + γ + 1/t + m/(2(t-m)) + m^2 (1+t)(4+t) / (24 (t-m)^2).
template <class T = double>
T backlund_residual(double t, double m)
{
    using std::log;
    detail::require(m > 0.0 && t > m, "backlund_residual: requires t > m > 0");
    const T tt(t), mm(m);
    const T d = tt - mm;
    return -log(mm) + detail::euler_gamma_as<T>() + T(1.0) / tt + mm / (T(2.0) * d) +
           mm * mm * (T(1.0) + tt) * (T(4.0) + tt) / (T(24.0) * d * d);
}

/// -log m + (γ - 1) + m (2 + q + q t) / (2 q (t + b) - 2m).
template <class T = double>
T partial_summation_residual(double q, double t, double m, double b)
{
    using std::log;
    detail::require(m > 0.0 && q > 0.0 && t >= 0.0, "partial_summation_residual: requires m, q > 0 and t >= 0");
    detail::require(2.0 * q * (t + b) > 2.0 * m, "partial_summation_residual: requires 2q(t+b) > 2m");
    const T qq(q), tt(t), mm(m), bb(b);
    return -log(mm) + (detail::euler_gamma_as<T>() - T(1.0)) +
           mm * (T(2.0) + qq + qq * tt) / (T(2.0) * qq * (tt + bb) - T(2.0) * mm);
}

namespace detail {

struct NeumaierSum
{
    double sum = 0.0;
    double carry = 0.0;

    void add(double x)
    {
        const double s = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - s) + x : (x - s) + sum;
        sum = s;
    }
    [[nodiscard]] double value() const { return sum + carry; }
};

} // namespace detail

/// (log t + γ + 1/t) - sum_{n <= t} 1/n, which must be nonnegative for t >= 1.
inline double harmonic_bound_check(double t)
{
    detail::require(t >= 1.0 && std::isfinite(t), "harmonic_bound_check: requires t >= 1");
    const auto n_max = static_cast<std::uint64_t>(std::floor(t));
    detail::NeumaierSum h;
    // smallest terms first
    for (std::uint64_t n = n_max; n >= 1; --n) {
        h.add(1.0 / static_cast<double>(n));
    }
    detail::NeumaierSum rhs;
    rhs.add(std::log(t));
    rhs.add(constants::euler_gamma);
    rhs.add(1.0 / t);
    rhs.add(-h.value());
    return rhs.value();
}

struct CoprimeSum
{
    double sum = 0.0;
    double bound = 0.0;
};

/// sum_{a <= q, (a,q)=1} 1/a together with the bound log q + γ.
inline CoprimeSum coprime_reciprocal_sum(std::uint64_t q)
{
    detail::require(q >= 2, "coprime_reciprocal_sum: requires q >= 2");
    detail::NeumaierSum s;
    for (std::uint64_t a = q; a >= 1; --a) {
        if (std::gcd(a, q) == 1) {
            s.add(1.0 / static_cast<double>(a));
        }
    }
    return {s.value(), std::log(static_cast<double>(q)) + constants::euler_gamma};
}

/// log(e^γ + 109/(2t)) - γ, computed as log1p(109 / (2 t e^γ)).
inline double gamma_glue_check(double t)
{
    detail::require(t > 0.0, "gamma_glue_check: requires t > 0");
    return std::log1p(109.0 / (2.0 * t * std::exp(constants::euler_gamma)));
}

/// log(e^γ t + 109/2) - 1 - log(t + 14/5): the inequality that takes the theorem2
/// bound below the corollary bound for 0 < t <= 50.
inline double theorem2_glue_check(double t)
{
    detail::require(t > 0.0 && t <= 50.0, "theorem2_glue_check: requires 0 < t <= 50");
    return std::log(std::exp(constants::euler_gamma) * t + 54.5) - 1.0 - std::log(t + 2.8);
}

/// The same comparison with the right side written as log(e^γ + 109/(2t)); this
/// form is false on most of (0, 50] and is evaluated only for the record.
inline double theorem2_glue_literal(double t)
{
    detail::require(t > 0.0, "theorem2_glue_literal: requires t > 0");
    return std::log(std::exp(constants::euler_gamma) + 109.0 / (2.0 * t)) - 1.0 - std::log(t + 2.8);
}

} // namespace dlbound
