#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ball.hpp"
#include "characters.hpp"
#include "hurwitz.hpp"

namespace dlbound {

enum class LMethod { hurwitz_decomposition, partial_summation };

inline std::string_view to_string(LMethod m)
{
    return m == LMethod::hurwitz_decomposition ? "hurwitz" : "psum";
}

/// L(1 + it, χ) with a certified radius, tagged by the route that produced it.
struct LPoint
{
    std::uint64_t q = 0;
    DirichletCharacter chi;
    double t = 0.0;
    ErrorBoundedComplex value;
    LMethod method = LMethod::hurwitz_decomposition;
    /// Truncation used (per-term N for Hurwitz, series length for partial summation).
    std::uint64_t truncation = 0;
};

namespace detail {

inline void require_non_principal(const DirichletCharacter& chi)
{
    if (chi.is_principal()) {
        throw std::invalid_argument("L-function evaluation requires a non-principal character");
    }
}

inline void require_positive_t(double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("L-function evaluation requires finite t > 0");
    }
}

} // namespace detail

// ζ(1+it, a/q) for every unit a mod q. These values do not depend on the
// character, so one table serves all characters mod q at a given t.
class HurwitzTable
{
public:
    /// target_radius is the radius wanted for L; each ζ(s, a/q) is evaluated to
    /// half of q/φ(q) times it, so that (1/q) * sum of radii stays below the target.
    HurwitzTable(std::shared_ptr<const UnitGroupStructure> group, double t, double target_radius, unsigned order = 1)
        : group_(std::move(group)), t_(t)
    {
        detail::require_positive_t(t);
        if (!(target_radius > 0.0)) {
            throw std::invalid_argument("HurwitzTable: target radius must be positive");
        }
        const auto q = group_->modulus();
        const cplx s(1.0, t);
        const double per_term = 0.5 * target_radius * static_cast<double>(q) / static_cast<double>(group_->phi());
        values_.resize(q);
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (!group_->unit_residue(a % q)) {
                continue;
            }
            const auto c = HurwitzShift::rational(a, q);
            EMConfig cfg;
            cfg.order = order;
            cfg.truncation = choose_truncation(s, c.value(), per_term, order);
            max_truncation_ = std::max(max_truncation_, cfg.truncation);
            values_[a % q] = hurwitz_zeta_em(s, c, cfg);
        }
        q_power_ = real_pow(static_cast<double>(q), -s);
    }

    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] std::uint64_t max_truncation() const noexcept { return max_truncation_; }

    /// ζ(s, a/q) for a unit a in [1, q].
    [[nodiscard]] const ErrorBoundedComplex& zeta(std::uint64_t a) const { return values_.at(a % group_->modulus()); }

    /// q^{-s} sum_a χ(a) ζ(s, a/q).
    [[nodiscard]] ErrorBoundedComplex combine(const DirichletCharacter& chi) const
    {
        detail::require_non_principal(chi);
        if (chi.modulus() != group_->modulus()) {
            throw std::invalid_argument("HurwitzTable: character modulus mismatch");
        }
        const auto roots = roots_of_unity(group_->exponent());
        ErrorBoundedComplex acc(cplx(0.0, 0.0));
        const auto q = group_->modulus();
        for (std::uint64_t a = 1; a <= q; ++a) {
            const auto k = chi.turn_index_of_residue(a % q);
            if (k < 0) {
                continue;
            }
            acc += roots[static_cast<std::size_t>(k)] * values_[a % q];
        }
        return q_power_ * acc;
    }

    /// (1/q) sum_{(a,q)=1} |ζ(s, a/q)|, an upper bound for |L(s, χ)| for every χ mod q.
    [[nodiscard]] double triangle_bound() const
    {
        double sum = 0.0;
        const auto q = group_->modulus();
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (group_->unit_residue(a % q)) {
                sum += values_[a % q].abs_upper();
            }
        }
        return rounding::up(sum * (1.0 + static_cast<double>(q) * rounding::unit) / static_cast<double>(q));
    }

private:
    std::shared_ptr<const UnitGroupStructure> group_;
    double t_;
    std::vector<ErrorBoundedComplex> values_;
    ErrorBoundedComplex q_power_;
    std::uint64_t max_truncation_ = 0;
};

/// L(1+it, χ) = q^{-s} sum_{1<=a<=q} χ(a) ζ(s, a/q).
inline LPoint l_eval_hurwitz(const DirichletCharacter& chi, double t, double target_radius, unsigned order = 1)
{
    detail::require_non_principal(chi);
    const HurwitzTable table(chi.group_ptr(), t, target_radius, order);
    return {chi.modulus(), chi, t, table.combine(chi), LMethod::hurwitz_decomposition, table.max_truncation()};
}

/// Upper bound for |s| q / (2N) + |A(N)|/N, the tail of the truncated Dirichlet series
/// L(s,χ) - sum_{n<=N} χ(n) n^{-s} = s int_N^inf A(x) x^{-s-1} dx - A(N) N^{-s}, |A| < q/2.
inline double partial_sum_tail_bound(std::uint64_t q, double t, std::uint64_t n, double abs_a_n)
{
    const double abs_s = std::sqrt(1.0 + t * t) * (1.0 + 2.0 * rounding::per_op);
    const auto nd = static_cast<double>(n);
    const double integral_part = static_cast<double>(q) * abs_s / (2.0 * nd);
    return rounding::up((integral_part + abs_a_n / nd) * (1.0 + 4.0 * rounding::per_op));
}

/// Series length for a partial-summation tail of at most target_radius; a multiple of q.
inline std::uint64_t partial_sum_truncation(std::uint64_t q, double t, double target_radius)
{
    if (!(target_radius > 0.0)) {
        throw std::invalid_argument("partial_sum_truncation: target radius must be positive");
    }
    const double abs_s = std::sqrt(1.0 + t * t);
    const double need = std::ceil(static_cast<double>(q) * abs_s / (2.0 * 0.9 * target_radius));
    if (need > 1e15) {
        throw TruncationUnreachable("partial_sum_truncation: series length exceeds 1e15");
    }
    const auto n = static_cast<std::uint64_t>(need);
    return std::max<std::uint64_t>(q, (n + q - 1) / q * q);
}

/// sum_{n<=N} χ(n) n^{-s} for a batch of characters sharing a modulus; n^{-s} is
/// computed once per n and the rounding radius is common to all characters.
inline std::vector<LPoint> l_eval_partial_sum_batch(const std::vector<DirichletCharacter>& chars, double t,
                                                    std::uint64_t n_terms)
{
    detail::require_positive_t(t);
    if (n_terms < 1) {
        throw std::invalid_argument("l_eval_partial_sum: N must be >= 1");
    }
    if (chars.empty()) {
        return {};
    }
    const auto& group = chars.front().group();
    const auto q = group.modulus();
    for (const auto& chi : chars) {
        detail::require_non_principal(chi);
        if (chi.modulus() != q) {
            throw std::invalid_argument("l_eval_partial_sum_batch: characters must share a modulus");
        }
    }
    const auto roots = roots_of_unity(group.exponent());
    std::vector<std::vector<std::int64_t>> turns(chars.size(), std::vector<std::int64_t>(q));
    for (std::size_t j = 0; j < chars.size(); ++j) {
        for (std::uint64_t r = 0; r < q; ++r) {
            turns[j][r] = chars[j].turn_index_of_residue(r);
        }
    }
    double root_radius = 0.0;
    for (const auto& z : roots) {
        root_radius = std::max(root_radius, z.radius());
    }

    const cplx minus_s(-1.0, -t);
    std::vector<BallAccumulator> sums(chars.size());
    BallAccumulator shared; // magnitudes and radii are identical for every character
    for (std::uint64_t n = 1; n <= n_terms; ++n) {
        const auto r = n % q;
        if (!group.unit_residue(r)) {
            continue;
        }
        const auto p = real_pow(static_cast<double>(n), minus_s);
        const double mag = std::abs(p.mid());
        // |root * p - mid(root) mid(p)| <= rad(p)(1 + rr) + |p| rr, plus the product rounding
        shared.add(cplx(), mag,
                   p.radius() * (1.0 + root_radius) + mag * (root_radius + 2.0 * rounding::per_op));
        for (std::size_t j = 0; j < chars.size(); ++j) {
            const cplx w = roots[static_cast<std::size_t>(turns[j][r])].mid();
            const cplx pm = p.mid();
            sums[j].add(cplx(w.real() * pm.real() - w.imag() * pm.imag(), w.real() * pm.imag() + w.imag() * pm.real()),
                        0.0, 0.0);
        }
    }
    const double head_radius = shared.radius_bound();

    std::vector<LPoint> out;
    out.reserve(chars.size());
    for (std::size_t j = 0; j < chars.size(); ++j) {
        double abs_a = 0.0;
        if (n_terms % q != 0) {
            abs_a = PartialSums(chars[j])(n_terms).abs_upper();
        }
        const double tail = partial_sum_tail_bound(q, t, n_terms, abs_a);
        out.push_back({q, chars[j], t, ErrorBoundedComplex(sums[j].mid(), rounding::up(head_radius + tail)),
                       LMethod::partial_summation, n_terms});
    }
    return out;
}

/// L(1+it, χ) from the first N terms of its Dirichlet series plus a partial-summation tail bound.
inline LPoint l_eval_partial_sum(const DirichletCharacter& chi, double t, std::uint64_t n_terms)
{
    return l_eval_partial_sum_batch({chi}, t, n_terms).front();
}

enum class CrossCheck { consistent, inconsistent, inconclusive };

inline std::string_view to_string(CrossCheck c)
{
    switch (c) {
    case CrossCheck::consistent: return "consistent";
    case CrossCheck::inconsistent: return "inconsistent";
    default: return "inconclusive";
    }
}

/// Two rigorous discs for the same L-value must intersect.
inline CrossCheck cross_check(const LPoint& a, const LPoint& b)
{
    if (a.q != b.q || a.chi.exponents() != b.chi.exponents() || a.t != b.t) {
        throw std::invalid_argument("cross_check: points refer to different (q, chi, t)");
    }
    const double gap = std::abs(a.value.mid() - b.value.mid());
    const double allowed = a.value.radius() + b.value.radius();
    if (std::isnan(gap) || std::isnan(allowed)) {
        return CrossCheck::inconclusive;
    }
    return gap <= allowed ? CrossCheck::consistent : CrossCheck::inconsistent;
}

} // namespace dlbound
