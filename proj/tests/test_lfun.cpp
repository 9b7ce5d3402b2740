#include <gtest/gtest.h>

#include <cmath>

#include "dlbound/bounds.hpp"
#include "dlbound/lfun.hpp"
#include "support/oracles.hpp"

using namespace dlbound;

namespace {

DirichletCharacter mod3()
{
    return enumerate_characters(3, false).at(0);
}

DirichletCharacter mod5_i()
{
    return DirichletCharacter(build_unit_group(5), {1});
}

/// Σ_{k<K} ((3k+1)^{-s} - (3k+2)^{-s}); each pair is at most |s|/((3k+1)(3k+2)),
/// so the dropped tail is below |s|/(3(3K-2)).
oracle::Bracket grouped_mod3(double t, long K)
{
    using ld = long double;
    const std::complex<ld> s(1, t);
    auto power = [&](ld x) {
        const ld lx = std::log(x);
        return std::complex<ld>(std::cos(-t * lx), std::sin(-t * lx)) / x;
    };
    std::complex<ld> sum(0, 0);
    for (long k = K - 1; k >= 0; --k) {
        sum += power(3.0L * k + 1) - power(3.0L * k + 2);
    }
    const ld tail = std::abs(s) / (3.0L * (3.0L * K - 2));
    const ld rounding = 2 * K * std::numeric_limits<ld>::epsilon() * (8 + 4 * t * std::log(3.0L * K)) * std::log(3.0L * K);
    return {sum, tail + rounding};
}

} // namespace

TEST(LFunction, FrozenValuesBothRoutes)
{
    for (const auto& f : oracle::frozen_l_mod3) {
        const auto h = l_eval_hurwitz(mod3(), f.t, 1e-10, 5);
        const cplx ref(f.re, f.im);
        EXPECT_LE(std::abs(h.value.mid() - ref), h.value.radius() + 1e-15) << "t=" << f.t;
        EXPECT_LE(h.value.radius(), 1e-10);
        const auto p = l_eval_partial_sum(mod3(), f.t, partial_sum_truncation(3, f.t, 1e-4));
        EXPECT_LE(std::abs(p.value.mid() - ref), p.value.radius());
        EXPECT_NEAR(std::abs(h.value.mid()), f.abs, h.value.radius() + 1e-15);
    }
    for (const auto& f : oracle::frozen_l_mod5) {
        const auto h = l_eval_hurwitz(mod5_i(), f.t, 1e-10, 5);
        EXPECT_LE(std::abs(h.value.mid() - cplx(f.re, f.im)), h.value.radius() + 1e-15) << "t=" << f.t;
    }
    const auto chi4 = enumerate_characters(4, false).at(0);
    for (const auto& f : oracle::frozen_l_mod4) {
        const auto h = l_eval_hurwitz(chi4, f.t, 1e-10, 5);
        const auto [m, r] = h.value.modulus();
        EXPECT_NEAR(m, f.abs, r + 1e-15) << "t=" << f.t;
    }
}

TEST(LFunction, GroupedSeriesOracleMod3)
{
    const auto ref = grouped_mod3(1.0, 2'000'000);
    const cplx v(static_cast<double>(ref.value.real()), static_cast<double>(ref.value.imag()));
    const double hw = static_cast<double>(ref.half_width);
    EXPECT_LT(hw, 1e-6);
    const auto h = l_eval_hurwitz(mod3(), 1.0, 1e-8);
    const auto p = l_eval_partial_sum(mod3(), 1.0, 3'000'000);
    EXPECT_LE(std::abs(h.value.mid() - v), h.value.radius() + hw);
    EXPECT_LE(std::abs(p.value.mid() - v), p.value.radius() + hw);
    EXPECT_LE(p.value.radius(), 1.2e-6);
}

TEST(LFunction, CrossEvaluatorAcceptanceGrid)
{
    for (std::uint64_t q = 3; q <= 30; ++q) {
        const auto group = build_unit_group(q);
        const auto chars = enumerate_characters(group, false);
        for (double t : {0.5, 5.0, 51.0, 60.0, 75.0, 100.0, 250.0, 1000.0}) {
            const HurwitzTable table(group, t, 1e-6);
            const auto psum = l_eval_partial_sum_batch(chars, t, partial_sum_truncation(q, t, t > 100 ? 1e-2 : 1e-3));
            for (std::size_t i = 0; i < chars.size(); ++i) {
                const LPoint h{q, chars[i], t, table.combine(chars[i]), LMethod::hurwitz_decomposition, 0};
                EXPECT_EQ(cross_check(h, psum[i]), CrossCheck::consistent)
                    << "q=" << q << " chi=" << chars[i].label() << " t=" << t;
            }
        }
    }
}

// L(1+it, conj χ) = conj L(1-it, χ); the right side is assembled by hand from ζ(1-it, a/q)
TEST(LFunction, ConjugationSymmetry)
{
    for (std::uint64_t q : {5ULL, 7ULL, 13ULL, 16ULL}) {
        const auto group = build_unit_group(q);
        for (const auto& chi : enumerate_characters(group, false)) {
            for (double t : {0.5, 20.0}) {
                const cplx s_bar(1.0, -t);
                ErrorBoundedComplex acc(cplx(0.0, 0.0));
                for (std::uint64_t a = 1; a <= q; ++a) {
                    const auto v = char_eval(chi, static_cast<std::int64_t>(a));
                    if (!v.is_zero()) {
                        acc += v.to_complex() * hurwitz_zeta(s_bar, HurwitzShift::rational(a, q), 1e-10, 3);
                    }
                }
                const auto reflected = (real_pow(static_cast<double>(q), -s_bar) * acc).conj();
                const auto direct = l_eval_hurwitz(chi.conjugate(), t, 1e-9).value;
                EXPECT_TRUE(overlaps(direct, reflected)) << "q=" << q << " chi=" << chi.label() << " t=" << t;
            }
        }
    }
}

TEST(LFunction, TriangleBoundDominates)
{
    const auto group = build_unit_group(12);
    const HurwitzTable table(group, 7.0, 1e-8);
    for (const auto& chi : enumerate_characters(group, false)) {
        EXPECT_LE(table.combine(chi).abs_upper(), table.triangle_bound());
    }
}

TEST(LFunction, CorollaryAtModFour)
{
    const auto chi = enumerate_characters(4, false).at(0);
    const auto v = l_eval_hurwitz(chi, 1.0, 1e-8);
    EXPECT_LT(v.value.abs_upper(), corollary_bound<Interval>(4, 1.0).lo());
}

TEST(LFunction, RejectsPrincipalAndBadT)
{
    const auto principal = enumerate_characters(5, true).at(0);
    EXPECT_THROW(l_eval_hurwitz(principal, 1.0, 1e-6), std::invalid_argument);
    EXPECT_THROW(l_eval_partial_sum(principal, 1.0, 100), std::invalid_argument);
    EXPECT_THROW(l_eval_hurwitz(mod3(), 0.0, 1e-6), std::invalid_argument);
    EXPECT_THROW(l_eval_partial_sum(mod3(), 1.0, 0), std::invalid_argument);
}

TEST(PartialSummation, RadiusFormula)
{
    // N a multiple of q: only the integral term remains
    const double r = partial_sum_tail_bound(5, 0.001, 100000, 0.0);
    const double formula = 5.0 * std::sqrt(1.0 + 1e-6) / 2e5;
    EXPECT_GE(r, formula);
    EXPECT_LE(r, formula * (1.0 + 1e-12));
    for (const auto& chi : enumerate_characters(5, false)) {
        const auto p = l_eval_partial_sum(chi, 0.001, 100000);
        EXPECT_LE(p.value.radius(), formula + 1e-9);
    }
}

TEST(PartialSummation, TruncationIsMultipleOfQ)
{
    for (std::uint64_t q : {3ULL, 7ULL, 30ULL}) {
        const auto n = partial_sum_truncation(q, 10.0, 1e-3);
        EXPECT_EQ(n % q, 0U);
        EXPECT_LE(partial_sum_tail_bound(q, 10.0, n, 0.0), 1e-3);
    }
    EXPECT_THROW(partial_sum_truncation(3, 1e6, 1e-12), TruncationUnreachable);
}

TEST(PartialSummation, OffPeriodTruncationStillConsistent)
{
    const auto chi = mod5_i();
    const auto h = l_eval_hurwitz(chi, 2.0, 1e-9);
    for (std::uint64_t n : {99'999ULL, 100'001ULL, 100'002ULL}) {
        const auto p = l_eval_partial_sum(chi, 2.0, n);
        EXPECT_EQ(cross_check(h, p), CrossCheck::consistent) << n;
    }
}

TEST(CrossCheck, Verdicts)
{
    const auto chi = mod3();
    LPoint a{3, chi, 1.0, ErrorBoundedComplex(cplx(1.0, 0.0), 0.1), LMethod::hurwitz_decomposition, 0};
    LPoint b{3, chi, 1.0, ErrorBoundedComplex(cplx(1.5, 0.0), 0.1), LMethod::partial_summation, 0};
    EXPECT_EQ(cross_check(a, a), CrossCheck::consistent);
    EXPECT_EQ(cross_check(a, b), CrossCheck::inconsistent);
    LPoint c = b;
    c.t = 2.0;
    EXPECT_THROW(cross_check(a, c), std::invalid_argument);
}
