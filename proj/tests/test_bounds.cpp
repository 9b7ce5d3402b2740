#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dlbound/bounds.hpp"

using namespace dlbound;

// high-precision reference values computed independently
namespace ref {
constexpr double theorem1_3_100 = 4.7459414108950368;
constexpr double theorem1_7_e = 3.3802686710997033;
constexpr double theorem2_3_0 = 3.1282317058492679;
constexpr double corollary_3_1 = 5.1289705757787763;
constexpr double backlund_50 = -0.0019624906746800449;
constexpr double backlund_45 = 0.015706550836597772;
constexpr double backlund_49 = 0.0012563410110166263;
constexpr double backlund_limit = -0.14639662376657683;
constexpr double psum_2_0 = -0.0048204045473013377;
constexpr double psum_2_100 = -0.11396687911617276;
constexpr double glue_50 = 1.9743949709997415e-4;
constexpr double glue_literal_50 = -3.9118255659310461;
constexpr double glue_0 = 1.9685812844880402;
constexpr double gamma_glue_1 = 3.4531426222091338;
constexpr double gamma_glue_1e9 = 3.0599541386229270e-8;
constexpr double harmonic_2_5 = 0.39350639677568795;
} // namespace ref

TEST(Bounds, Theorem1)
{
    EXPECT_NEAR(theorem1_bound(3, 100.0), ref::theorem1_3_100, 1e-14);
    const auto enc = theorem1_bound<Interval>(3, 100.0);
    EXPECT_TRUE(enc.contains(ref::theorem1_3_100));
    EXPECT_THROW(theorem1_bound(3, 50.0), std::domain_error);
    EXPECT_THROW(theorem1_bound(2, 60.0), std::domain_error);
    // the formula itself at t = e (outside the theorem's range)
    const double e = std::exp(1.0);
    EXPECT_NEAR(6.0 / 7.0 * std::log(e) + std::log(7.0) + constants::euler_gamma, ref::theorem1_7_e, 1e-14);
}

TEST(Bounds, Theorem2AndCorollary)
{
    EXPECT_NEAR(theorem2_bound(3, 1e-300), ref::theorem2_3_0, 1e-14);
    EXPECT_THROW(theorem2_bound(3, 0.0), std::domain_error);
    EXPECT_GT(theorem2_bound(3, 50.0 + 1e-9), theorem1_bound(3, 50.0 + 1e-9));
    EXPECT_NEAR(corollary_bound(3, 1.0), ref::corollary_3_1, 1e-14);
    EXPECT_TRUE(corollary_bound<Interval>(3, 1.0).contains(ref::corollary_3_1));
    for (double t : {0.01, 1.0, 77.0, 1e5}) {
        const double split = std::log(3.0) + std::log(t) + std::log(std::exp(constants::euler_gamma) + 109.0 / (2.0 * t));
        EXPECT_NEAR(corollary_bound(3, t), split, 1e-13);
        EXPECT_LT(corollary_bound(3, t), corollary_bound(4, t));
        EXPECT_LT(corollary_bound(3, t), corollary_bound(3, t * 1.01));
    }
}

TEST(Bounds, ConsistencyChainAboveFifty)
{
    for (std::uint64_t q = 3; q <= 200; ++q) {
        for (double t : {50.5, 100.0, 1e4, 1e8}) {
            const double plain = std::log(t) + std::log(static_cast<double>(q)) + constants::euler_gamma;
            EXPECT_LE(theorem1_bound(q, t), plain);
            EXPECT_LT(plain, corollary_bound(q, t));
        }
    }
}

TEST(Bounds, LemmaHurwitz)
{
    EXPECT_DOUBLE_EQ(lemma_hurwitz_bound(1.0, 60.0), std::log(60.0) + 1.0);
    EXPECT_DOUBLE_EQ(lemma_hurwitz_bound(0.2, 100.0), std::log(100.0) + 5.0);
    EXPECT_TRUE(lemma_hurwitz_bound<Interval>(1, 5, 100.0).contains(std::log(100.0) + 5.0));
    EXPECT_THROW(lemma_hurwitz_bound(0.0, 60.0), std::domain_error);
    EXPECT_THROW(lemma_hurwitz_bound(0.5, 50.0), std::domain_error);
}

TEST(Residuals, Backlund)
{
    EXPECT_NEAR(backlund_residual(50.0, 3.0), ref::backlund_50, 1e-15);
    EXPECT_NEAR(backlund_residual(45.0, 3.0), ref::backlund_45, 1e-15);
    EXPECT_NEAR(backlund_residual(49.0, 3.0), ref::backlund_49, 1e-15);
    EXPECT_NEAR(backlund_residual(1e12, 3.0), ref::backlund_limit, 1e-10);
    EXPECT_TRUE(backlund_residual<Interval>(50.0, 3.0).contains(ref::backlund_50));
    EXPECT_THROW(backlund_residual(3.0, 3.0), std::domain_error);
    for (double t = 50.0; t <= 1e6; t *= 1.01) {
        EXPECT_LT(backlund_residual(t, 3.0), 0.0) << t;
    }
}

TEST(Residuals, PartialSummation)
{
    EXPECT_NEAR(partial_summation_residual(2.0, 1e-300, 2.0, 2.8), ref::psum_2_0, 1e-15);
    EXPECT_NEAR(partial_summation_residual(2.0, 100.0, 2.0, 2.8), ref::psum_2_100, 1e-15);
    EXPECT_LT(partial_summation_residual(2.0, 100.0, 2.0, 2.8), -0.1);
    for (double t : {0.0, 1.0, 50.0}) {
        const double limit = -std::log(2.0) + constants::euler_gamma - 1.0 + (1.0 + t) / (t + 2.8);
        EXPECT_NEAR(partial_summation_residual(1e12, t, 2.0, 2.8), limit, 1e-10);
        EXPECT_LT(limit, 0.0);
    }
    for (int q = 2; q <= 100; ++q) {
        for (double t = 1e-4; t <= 1e4; t *= 1.2) {
            EXPECT_LT(partial_summation_residual(q, t, 2.0, 2.8), 0.0) << q << " " << t;
        }
    }
}

TEST(Residuals, Theorem1TruncationIsPositive)
{
    for (std::uint64_t q = 3; q <= 100; ++q) {
        for (std::uint64_t a = 1; a <= q; ++a) {
            for (double t : {50.0 + 1e-9, 51.0, 100.0}) {
                EXPECT_GE(theorem1_truncation(t, 3.0, a, q), 1U);
            }
        }
    }
    EXPECT_THROW(theorem1_truncation(3.5, 3.0, 1, 1), std::domain_error);
}

TEST(HarmonicBound, Values)
{
    EXPECT_NEAR(harmonic_bound_check(1.0), constants::euler_gamma, 1e-15);
    EXPECT_NEAR(harmonic_bound_check(2.5), ref::harmonic_2_5, 1e-15);
    const double big = harmonic_bound_check(1e6);
    EXPECT_GE(big, 0.0);
    EXPECT_NEAR(big, 1.0 / 2e6, 1e-12); // margin ~ 1/(2t)
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int i = 0; i < 10000; ++i) {
        const double t = std::pow(10.0, u(rng));
        EXPECT_GE(harmonic_bound_check(t), 0.0) << t;
    }
}

TEST(CoprimeSum, Values)
{
    EXPECT_DOUBLE_EQ(coprime_reciprocal_sum(3).sum, 1.5);
    EXPECT_NEAR(coprime_reciprocal_sum(3).bound, 1.6758279535696426, 1e-15);
    EXPECT_NEAR(coprime_reciprocal_sum(4).sum, 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(coprime_reciprocal_sum(4).bound, 1.9635100260214235, 1e-15);
    EXPECT_DOUBLE_EQ(coprime_reciprocal_sum(2).sum, 1.0);
    EXPECT_NEAR(coprime_reciprocal_sum(2).bound, 1.2703628454614782, 1e-15);
    for (std::uint64_t q = 2; q <= 10000; ++q) {
        const auto c = coprime_reciprocal_sum(q);
        ASSERT_LE(c.sum, c.bound) << q;
    }
}

TEST(Glue, GammaGlue)
{
    EXPECT_NEAR(gamma_glue_check(1.0), ref::gamma_glue_1, 1e-14);
    EXPECT_NEAR(gamma_glue_check(1e9), ref::gamma_glue_1e9, 1e-22);
    for (double t = 1e-6; t < 1e12; t *= 3.0) {
        EXPECT_GT(gamma_glue_check(t), 0.0);
    }
}

TEST(Glue, Theorem2Glue)
{
    EXPECT_NEAR(theorem2_glue_check(50.0), ref::glue_50, 1e-15);
    EXPECT_NEAR(theorem2_glue_check(1e-300), ref::glue_0, 1e-14);
    EXPECT_NEAR(theorem2_glue_literal(50.0), ref::glue_literal_50, 1e-14);
    double min_value = INFINITY, argmin = 0.0;
    for (int i = 1; i <= 10000; ++i) {
        const double t = 50.0 * i / 10000.0;
        const double g = theorem2_glue_check(t);
        EXPECT_GT(g, 0.0);
        if (g < min_value) {
            min_value = g;
            argmin = t;
        }
    }
    EXPECT_EQ(argmin, 50.0);
    EXPECT_THROW(theorem2_glue_check(50.5), std::domain_error);
}
