#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dlbound {

/// Exact rational with 128-bit storage; enough for B_0 .. B_20.
struct Rational
{
    __int128 num = 0;
    __int128 den = 1;

    Rational() = default;
    Rational(__int128 n, __int128 d = 1) : num(n), den(d) { normalize(); } // NOLINT(google-explicit-constructor)

    void normalize()
    {
        if (den == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const __int128 g = gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(const Rational& a, const Rational& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator-(const Rational& a) { return {-a.num, a.den}; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }

private:
    static __int128 gcd(__int128 a, __int128 b)
    {
        while (b != 0) {
            const auto r = a % b;
            a = b;
            b = r;
        }
        return a;
    }
};

// Bernoulli numbers B_0..B_{k+1} (B_1 = -1/2 convention) and the
// coefficient rows of the Bernoulli polynomials B_j(x), j <= k+1.
class BernoulliTable
{
public:
    static constexpr unsigned max_order = 19;

    explicit BernoulliTable(unsigned order) : order_(order)
    {
        if (order < 1 || order > max_order) {
            throw std::invalid_argument("BernoulliTable: order must lie in [1, 19]");
        }
        const unsigned top = order + 1;
        // sum_{j=0}^{n} C(n+1, j) B_j = 0
        numbers_.push_back(Rational(1));
        for (unsigned n = 1; n <= top; ++n) {
            Rational acc(0);
            for (unsigned j = 0; j < n; ++j) {
                acc = acc + Rational(binomial(n + 1, j)) * numbers_[j];
            }
            numbers_.push_back(acc * Rational(-1, n + 1));
        }
        // B_j(x) = sum_i C(j, i) B_i x^{j-i}; rows stored by ascending power of x
        for (unsigned j = 0; j <= top; ++j) {
            std::vector<Rational> row(j + 1);
            for (unsigned i = 0; i <= j; ++i) {
                row[j - i] = Rational(binomial(j, i)) * numbers_[i];
            }
            rows_.push_back(std::move(row));
        }
    }

    [[nodiscard]] unsigned order() const noexcept { return order_; }
    [[nodiscard]] const Rational& number(unsigned j) const { return numbers_.at(j); }
    [[nodiscard]] const std::vector<Rational>& polynomial(unsigned j) const { return rows_.at(j); }

    static __int128 binomial(unsigned n, unsigned k)
    {
        if (k > n) {
            return 0;
        }
        __int128 r = 1;
        for (unsigned i = 1; i <= k; ++i) {
            r = r * (n - k + i) / i;
        }
        return r;
    }

private:
    unsigned order_;
    std::vector<Rational> numbers_;
    std::vector<std::vector<Rational>> rows_;
};

inline BernoulliTable bernoulli_numbers(unsigned order)
{
    return BernoulliTable(order);
}

/// B_j({x}), the periodic Bernoulli polynomial.
inline double periodic_bernoulli(const BernoulliTable& table, unsigned j, double x)
{
    if (j > table.order() + 1) {
        throw std::out_of_range("periodic_bernoulli: index exceeds table order");
    }
    const double frac = x - std::floor(x);
    const auto& row = table.polynomial(j);
    double acc = 0.0;
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
        acc = acc * frac + it->to_double();
    }
    return acc;
}

} // namespace dlbound
