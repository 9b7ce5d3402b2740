#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ball.hpp"
#include "number_theory.hpp"

namespace dlbound {

// Exact root of unity e^{2 pi i num/den}, or the value 0 taken by a
// character on non-units. Stored reduced, with num in [0, den).
class RootOfUnity
{
public:
    static RootOfUnity zero() { return RootOfUnity(); }
    static RootOfUnity one() { return RootOfUnity(0, 1); }

    RootOfUnity(std::uint64_t num, std::uint64_t den)
    {
        if (den == 0) {
            throw std::invalid_argument("RootOfUnity: zero denominator");
        }
        num %= den;
        const auto g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
        is_zero_ = false;
    }

    [[nodiscard]] bool is_zero() const noexcept { return is_zero_; }
    [[nodiscard]] std::uint64_t num() const noexcept { return num_; }
    [[nodiscard]] std::uint64_t den() const noexcept { return den_; }

    /// Converts to a disc; the radius covers the rounding of 2*pi*num/den and of cos/sin.
    [[nodiscard]] ErrorBoundedComplex to_complex() const
    {
        if (is_zero_) {
            return ErrorBoundedComplex(cplx(0.0, 0.0));
        }
        // exact cases keep cancellation in orthogonality sums exact
        if (num_ == 0) {
            return ErrorBoundedComplex(cplx(1.0, 0.0));
        }
        if (den_ == 2) {
            return ErrorBoundedComplex(cplx(-1.0, 0.0));
        }
        if (den_ == 4) {
            return ErrorBoundedComplex(cplx(0.0, num_ == 1 ? 1.0 : -1.0));
        }
        // exact reduction to an angle phi in [0, pi/4] via the octant symmetries
        const std::uint64_t octant = 8 * num_ / den_;
        std::uint64_t rem = 8 * num_ % den_;
        if (octant % 2 == 1) {
            rem = den_ - rem;
        }
        const double phi = std::numbers::pi / 4.0 * (static_cast<double>(rem) / static_cast<double>(den_));
        const double c = std::cos(phi), s = std::sin(phi);
        cplx z;
        switch (octant) {
        case 0: z = {c, s}; break;
        case 1: z = {s, c}; break;
        case 2: z = {-s, c}; break;
        case 3: z = {-c, s}; break;
        case 4: z = {-c, -s}; break;
        case 5: z = {-s, -c}; break;
        case 6: z = {s, -c}; break;
        default: z = {c, -s}; break;
        }
        // phi carries ~1.5 ulp relative error, cos/sin one more ulp each
        return {z, 4.0 * rounding::unit};
    }

    friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b)
    {
        if (a.is_zero_ || b.is_zero_) {
            return zero();
        }
        const auto l = std::lcm(a.den_, b.den_);
        return {a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l};
    }

    friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) = default;

private:
    RootOfUnity() = default;

    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
    bool is_zero_ = true;
};

// Canonical generators of (Z/qZ)^* assembled from the prime-power parts of q:
// an odd p^e contributes its smallest primitive root, 4 contributes 3, 2^k
// (k >= 3) contributes -1 and 5. Each local generator is lifted to a residue
// that is 1 modulo the other prime-power factors.
class UnitGroupStructure
{
public:
    explicit UnitGroupStructure(std::uint64_t q) : modulus_(q), factorization_(factorize(q))
    {
        if (q > (std::uint64_t{1} << 31)) {
            throw std::invalid_argument("UnitGroupStructure: modulus too large");
        }
        for (auto [p, e] : factorization_) {
            const auto pe = ipow(p, e);
            if (p != 2) {
                add_generator(pe, smallest_primitive_root(p, pe), (p - 1) * (pe / p));
            } else if (e == 2) {
                add_generator(pe, 3, 2);
            } else if (e >= 3) {
                add_generator(pe, pe - 1, 2);
                add_generator(pe, 5, pe / 4);
            }
        }
        phi_ = totient(factorization_);
        exponent_ = 1;
        for (auto o : orders_) {
            exponent_ = std::lcm(exponent_, o);
        }
        build_log_table();
    }

    [[nodiscard]] std::uint64_t modulus() const noexcept { return modulus_; }
    [[nodiscard]] const std::vector<std::uint64_t>& generators() const noexcept { return generators_; }
    [[nodiscard]] const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
    [[nodiscard]] const Factorization& factorization() const noexcept { return factorization_; }
    [[nodiscard]] std::uint64_t phi() const noexcept { return phi_; }
    /// Least common multiple of the generator orders.
    [[nodiscard]] std::uint64_t exponent() const noexcept { return exponent_; }
    [[nodiscard]] std::size_t rank() const noexcept { return generators_.size(); }

    [[nodiscard]] bool is_unit(std::int64_t n) const { return std::gcd(reduce_mod(n, modulus_), modulus_) == 1; }

    /// Exponent vector of n against the generators; empty when n is not a unit.
    [[nodiscard]] std::vector<std::uint64_t> discrete_log(std::int64_t n) const
    {
        const auto r = reduce_mod(n, modulus_);
        if (log_table_[r * stride()] < 0) {
            return {};
        }
        std::vector<std::uint64_t> out(rank());
        for (std::size_t i = 0; i < rank(); ++i) {
            out[i] = static_cast<std::uint64_t>(log_table_[r * stride() + i + 1]);
        }
        return out;
    }

    /// Raw access for hot loops: log_entry(r, i) is the i-th exponent of residue r (r a unit).
    [[nodiscard]] bool unit_residue(std::uint64_t r) const { return log_table_[r * stride()] >= 0; }
    [[nodiscard]] std::uint64_t log_entry(std::uint64_t r, std::size_t i) const
    {
        return static_cast<std::uint64_t>(log_table_[r * stride() + i + 1]);
    }

private:
    static std::uint64_t smallest_primitive_root(std::uint64_t p, std::uint64_t pe)
    {
        const auto phi = (p - 1) * (pe / p);
        const auto phi_primes = factorize(phi);
        for (std::uint64_t g = 2; g < pe; ++g) {
            if (g % p == 0) {
                continue;
            }
            bool primitive = true;
            for (auto [l, _] : phi_primes) {
                if (powmod(g, phi / l, pe) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                return g;
            }
        }
        throw std::logic_error("no primitive root found");
    }

    void add_generator(std::uint64_t pe, std::uint64_t local, std::uint64_t order)
    {
        const auto rest = modulus_ / pe;
        std::uint64_t lifted = local % pe;
        if (rest > 1) {
            const auto k = mulmod((local + pe - 1) % pe, invmod(rest % pe, pe), pe);
            lifted = (1 + rest * k) % modulus_;
        }
        generators_.push_back(lifted);
        orders_.push_back(order);
    }

    [[nodiscard]] std::size_t stride() const noexcept { return rank() + 1; }

    void build_log_table()
    {
        log_table_.assign(modulus_ * stride(), -1);
        std::vector<std::uint64_t> e(rank(), 0);
        std::uint64_t seen = 0;
        for (;;) {
            std::uint64_t r = 1 % modulus_;
            for (std::size_t i = 0; i < rank(); ++i) {
                r = mulmod(r, powmod(generators_[i], e[i], modulus_), modulus_);
            }
            if (log_table_[r * stride()] >= 0) {
                throw std::logic_error("UnitGroupStructure: generators are not independent");
            }
            log_table_[r * stride()] = 0;
            for (std::size_t i = 0; i < rank(); ++i) {
                log_table_[r * stride() + i + 1] = static_cast<std::int32_t>(e[i]);
            }
            ++seen;
            std::size_t i = 0;
            while (i < rank() && ++e[i] == orders_[i]) {
                e[i] = 0;
                ++i;
            }
            if (i == rank()) {
                break;
            }
        }
        if (seen != phi_) {
            throw std::logic_error("UnitGroupStructure: generator orders do not multiply to phi(q)");
        }
    }

    std::uint64_t modulus_;
    Factorization factorization_;
    std::vector<std::uint64_t> generators_;
    std::vector<std::uint64_t> orders_;
    std::uint64_t phi_ = 1;
    std::uint64_t exponent_ = 1;
    // per residue: [unit flag, exponent_0, ..., exponent_{rank-1}]
    std::vector<std::int32_t> log_table_;
};

inline std::shared_ptr<const UnitGroupStructure> build_unit_group(std::uint64_t q)
{
    if (q == 0) {
        throw std::invalid_argument("build_unit_group: q must be positive");
    }
    return std::make_shared<const UnitGroupStructure>(q);
}

// A Dirichlet character mod q, given by exponents against the canonical
// generators: generator g_i maps to e^{2 pi i exponents[i]/orders[i]}.
class DirichletCharacter
{
public:
    DirichletCharacter(std::shared_ptr<const UnitGroupStructure> group, std::vector<std::uint64_t> exponents)
        : group_(std::move(group)), exponents_(std::move(exponents))
    {
        if (!group_ || exponents_.size() != group_->rank()) {
            throw std::invalid_argument("DirichletCharacter: exponent vector does not match the group rank");
        }
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            if (exponents_[i] >= group_->orders()[i]) {
                throw std::invalid_argument("DirichletCharacter: exponent out of range");
            }
        }
    }

    [[nodiscard]] std::uint64_t modulus() const noexcept { return group_->modulus(); }
    [[nodiscard]] const std::vector<std::uint64_t>& exponents() const noexcept { return exponents_; }
    [[nodiscard]] const UnitGroupStructure& group() const noexcept { return *group_; }
    [[nodiscard]] const std::shared_ptr<const UnitGroupStructure>& group_ptr() const noexcept { return group_; }

    [[nodiscard]] bool is_principal() const
    {
        return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
    }

    /// Position in the canonical (mixed-radix, first generator most significant) enumeration.
    [[nodiscard]] std::uint64_t index() const
    {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            idx = idx * group_->orders()[i] + exponents_[i];
        }
        return idx;
    }

    /// χ(n) as an index k of e^{2 pi i k/exponent}, or -1 when gcd(n, q) > 1.
    [[nodiscard]] std::int64_t turn_index(std::int64_t n) const
    {
        const auto r = reduce_mod(n, group_->modulus());
        return turn_index_of_residue(r);
    }

    [[nodiscard]] std::int64_t turn_index_of_residue(std::uint64_t r) const
    {
        if (!group_->unit_residue(r)) {
            return -1;
        }
        const auto ex = group_->exponent();
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            const auto scale = ex / group_->orders()[i];
            k = (k + mulmod(exponents_[i] * scale % ex, group_->log_entry(r, i), ex)) % ex;
        }
        return static_cast<std::int64_t>(k);
    }

    [[nodiscard]] DirichletCharacter conjugate() const
    {
        auto e = exponents_;
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = (group_->orders()[i] - e[i]) % group_->orders()[i];
        }
        return {group_, std::move(e)};
    }

    /// Exponents joined by ':' (the label used in reports).
    [[nodiscard]] std::string label() const
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            os << (i ? ":" : "") << exponents_[i];
        }
        return os.str();
    }

private:
    std::shared_ptr<const UnitGroupStructure> group_;
    std::vector<std::uint64_t> exponents_;
};

inline RootOfUnity char_eval(const DirichletCharacter& chi, std::int64_t n)
{
    const auto k = chi.turn_index(n);
    if (k < 0) {
        return RootOfUnity::zero();
    }
    return {static_cast<std::uint64_t>(k), chi.group().exponent()};
}

/// All characters mod q in canonical order (index 0 is principal).
inline std::vector<DirichletCharacter> enumerate_characters(const std::shared_ptr<const UnitGroupStructure>& group,
                                                            bool include_principal)
{
    std::vector<DirichletCharacter> out;
    const auto& orders = group->orders();
    std::vector<std::uint64_t> e(orders.size(), 0);
    for (;;) {
        DirichletCharacter chi(group, e);
        if (include_principal || !chi.is_principal()) {
            out.push_back(std::move(chi));
        }
        // last generator varies fastest so that index() is increasing
        std::size_t i = orders.size();
        while (i > 0 && ++e[i - 1] == orders[i - 1]) {
            e[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            break;
        }
    }
    return out;
}

inline std::vector<DirichletCharacter> enumerate_characters(std::uint64_t q, bool include_principal)
{
    return enumerate_characters(build_unit_group(q), include_principal);
}

/// Character with the given canonical index.
inline DirichletCharacter character_by_index(const std::shared_ptr<const UnitGroupStructure>& group,
                                             std::uint64_t index)
{
    if (index >= group->phi()) {
        throw std::out_of_range("character index exceeds phi(q)");
    }
    const auto& orders = group->orders();
    std::vector<std::uint64_t> e(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
        e[i] = index % orders[i];
        index /= orders[i];
    }
    return {group, std::move(e)};
}

/// Table of e^{2 pi i k/L} for k in [0, L) as discs, L = group exponent.
inline std::vector<ErrorBoundedComplex> roots_of_unity(std::uint64_t order)
{
    std::vector<ErrorBoundedComplex> out;
    out.reserve(order);
    for (std::uint64_t k = 0; k < order; ++k) {
        out.push_back(RootOfUnity(k, order).to_complex());
    }
    return out;
}

// Character partial sums A(N) = sum_{1 <= n <= N} χ(n) for non-principal χ.
// A is q-periodic because A(q) = 0, so one prefix table over a period
// answers every query in O(1).
class PartialSums
{
public:
    explicit PartialSums(const DirichletCharacter& chi) : q_(chi.modulus())
    {
        if (chi.is_principal()) {
            throw std::invalid_argument("partial sums of the principal character are unbounded");
        }
        const auto roots = roots_of_unity(chi.group().exponent());
        prefix_.reserve(q_);
        ErrorBoundedComplex acc(cplx(0.0, 0.0));
        prefix_.push_back(acc);
        for (std::uint64_t n = 1; n < q_; ++n) {
            const auto k = chi.turn_index_of_residue(n);
            if (k >= 0) {
                acc += roots[static_cast<std::size_t>(k)];
            }
            prefix_.push_back(acc);
        }
    }

    [[nodiscard]] std::uint64_t modulus() const noexcept { return q_; }

    /// A(N); exactly zero whenever q divides N.
    [[nodiscard]] const ErrorBoundedComplex& operator()(std::uint64_t n) const { return prefix_[n % q_]; }

    /// Upper bound on max_N |A(N)|.
    [[nodiscard]] double max_abs_upper() const
    {
        double m = 0.0;
        for (const auto& a : prefix_) {
            m = std::max(m, a.abs_upper());
        }
        return m;
    }

private:
    std::uint64_t q_;
    std::vector<ErrorBoundedComplex> prefix_;
};

inline ErrorBoundedComplex partial_sum(const DirichletCharacter& chi, std::uint64_t n)
{
    return PartialSums(chi)(n);
}

} // namespace dlbound
