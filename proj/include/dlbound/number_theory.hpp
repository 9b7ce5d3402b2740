#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dlbound {

/// (prime, exponent) pairs in increasing prime order.
using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

inline Factorization factorize(std::uint64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("factorize: n must be positive");
    }
    Factorization out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) {
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        out.emplace_back(n, 1U);
    }
    return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp)
{
    std::uint64_t r = 1;
    while (exp-- > 0) {
        r *= base;
    }
    return r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    if (m == 1) {
        return 0;
    }
    std::uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) {
            r = mulmod(r, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return r;
}

inline std::uint64_t totient(const Factorization& f)
{
    std::uint64_t phi = 1;
    for (auto [p, e] : f) {
        phi *= (p - 1) * ipow(p, e - 1);
    }
    return phi;
}

/// Euler's totient, via the factorization of q.
inline std::uint64_t totient(std::uint64_t q)
{
    return totient(factorize(q));
}

/// Reduces n into [0, m) for any signed n.
inline std::uint64_t reduce_mod(std::int64_t n, std::uint64_t m)
{
    const auto sm = static_cast<std::int64_t>(m);
    auto r = n % sm;
    if (r < 0) {
        r += sm;
    }
    return static_cast<std::uint64_t>(r);
}

/// Inverse of a mod m; requires gcd(a, m) = 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const auto quot = old_r / r;
        old_r -= quot * r;
        std::swap(old_r, r);
        old_s -= quot * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) {
        throw std::invalid_argument("invmod: not invertible");
    }
    return reduce_mod(old_s, m);
}

} // namespace dlbound
