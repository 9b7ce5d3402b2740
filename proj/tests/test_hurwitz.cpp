#include <gtest/gtest.h>

#include <cmath>

#include "dlbound/bounds.hpp"
#include "dlbound/hurwitz.hpp"
#include "support/oracles.hpp"

using namespace dlbound;

TEST(Hurwitz, ZetaTwo)
{
    const auto z = hurwitz_zeta(cplx(2.0, 0.0), HurwitzShift::real(1.0), 1e-12);
    EXPECT_LE(z.radius(), 1e-12);
    EXPECT_TRUE(z.contains(cplx(M_PI * M_PI / 6.0, 0.0)));
}

TEST(Hurwitz, FrozenHighPrecisionValues)
{
    for (const auto& f : oracle::frozen_hurwitz) {
        const cplx s(f.s_re, f.s_im);
        const auto z = hurwitz_zeta(s, HurwitzShift::real(f.c), 1e-10);
        const cplx ref(f.re, f.im);
        // frozen values carry ~1e-16 relative error of their own
        EXPECT_LE(std::abs(z.mid() - ref), z.radius() + 4e-16 * std::abs(ref)) << s << " c=" << f.c;
        EXPECT_LE(z.radius(), 1e-10);
    }
}

class DirectOracle : public ::testing::TestWithParam<std::tuple<cplx, double>>
{};

TEST_P(DirectOracle, BracketInsideBall)
{
    const auto [s, c] = GetParam();
    const auto z = hurwitz_zeta(s, HurwitzShift::real(c), 1e-9);
    const auto br = oracle::direct_hurwitz(s, c, 200000);
    const cplx ref(static_cast<double>(br.value.real()), static_cast<double>(br.value.imag()));
    const double hw = static_cast<double>(br.half_width) + 1e-16 * std::abs(ref);
    EXPECT_LT(hw, 1e-9);
    EXPECT_LE(std::abs(z.mid() - ref), z.radius() + hw) << "s=" << s << " c=" << c;
}

INSTANTIATE_TEST_SUITE_P(Grid, DirectOracle,
                         ::testing::Combine(::testing::Values(cplx(2, 0), cplx(3, 0), cplx(1, 1), cplx(1, 10),
                                                              cplx(2, 10)),
                                            ::testing::Values(0.2, 0.5, 1.0)),
                         [](const auto& info) {
                             const cplx s = std::get<0>(info.param);
                             const double c = std::get<1>(info.param);
                             return "s" + std::to_string(static_cast<int>(s.real())) + "_" +
                                    std::to_string(static_cast<int>(s.imag())) + "i_c" +
                                    std::to_string(static_cast<int>(c * 10));
                         });

TEST(Hurwitz, RejectsInvalidArguments)
{
    EMConfig cfg;
    EXPECT_THROW(hurwitz_zeta_em(cplx(1.0, 0.0), 1.0, cfg), std::domain_error);
    EXPECT_THROW(hurwitz_zeta_em(cplx(1.0, 1e-7), 1.0, cfg), std::domain_error);
    EXPECT_THROW(hurwitz_zeta_em(cplx(-1.5, 0.0), 1.0, cfg), std::domain_error);
    EXPECT_THROW(hurwitz_zeta_em(cplx(2.0, 0.0), 0.0, cfg), std::invalid_argument);
    EXPECT_THROW(hurwitz_zeta_em(cplx(2.0, 0.0), 1.5, cfg), std::invalid_argument);
    cfg.order = 2;
    EXPECT_THROW(hurwitz_zeta_em(cplx(2.0, 0.0), 1.0, cfg), std::invalid_argument);
}

TEST(Hurwitz, OrderInvariance)
{
    for (cplx s : {cplx(1, 1), cplx(1, 10), cplx(1, 60), cplx(0.5, 3)}) {
        for (double c : {0.1, 0.5, 1.0}) {
            for (std::uint64_t n : {2ULL, 10ULL, 100ULL}) {
                EMConfig k1{n, 1};
                EMConfig k3{n, 3};
                EMConfig k7{n, 7};
                const auto a = hurwitz_zeta_em(s, c, k1);
                const auto b = hurwitz_zeta_em(s, c, k3);
                const auto d = hurwitz_zeta_em(s, c, k7);
                EXPECT_TRUE(overlaps(a, b)) << s << " " << c << " " << n;
                EXPECT_TRUE(overlaps(a, d)) << s << " " << c << " " << n;
            }
        }
    }
}

TEST(Hurwitz, TruncationInvariance)
{
    for (cplx s : {cplx(1, 1), cplx(1, 30), cplx(2, 0)}) {
        for (double c : {0.25, 1.0}) {
            for (std::uint64_t n = 1; n <= 4096; n *= 2) {
                const auto a = hurwitz_zeta_em(s, c, EMConfig{n, 1});
                const auto b = hurwitz_zeta_em(s, c, EMConfig{2 * n, 1});
                EXPECT_LE(std::abs(a.mid() - b.mid()), a.radius() + b.radius());
            }
        }
    }
}

TEST(Hurwitz, RemainderDecreasesInN)
{
    const cplx s(1.0, 40.0);
    double prev = INFINITY;
    for (double x = 1.0; x < 1e7; x *= 1.7) {
        const double r = em_remainder_bound(s, x, 1);
        EXPECT_LT(r, prev);
        prev = r;
    }
}

TEST(Hurwitz, RemainderClosedFormOrderOne)
{
    const cplx s(1.0, 5.0);
    const double x = 10.5;
    const double expected = std::abs(s * (s + 1.0)) / (12.0 * 2.0 * std::pow(x, 2.0));
    EXPECT_NEAR(em_remainder_bound(s, x, 1), expected, 1e-12 * expected);
}

TEST(Hurwitz, MultiplicationTheorem)
{
    for (cplx s : {cplx(2, 0), cplx(1, 1), cplx(1, 30)}) {
        const auto rhs = real_pow(1.0, s) * hurwitz_zeta(s, HurwitzShift::real(1.0), 1e-10);
        for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL}) {
            ErrorBoundedComplex lhs(cplx(0, 0));
            for (std::uint64_t a = 1; a <= q; ++a) {
                lhs += hurwitz_zeta(s, HurwitzShift::rational(a, q), 1e-10);
            }
            const auto scaled = real_pow(static_cast<double>(q), s) * rhs;
            EXPECT_TRUE(overlaps(lhs, scaled)) << "q=" << q << " s=" << s;
        }
    }
}

TEST(Hurwitz, HalfShiftIdentity)
{
    for (cplx s : {cplx(1, 1), cplx(2, 0), cplx(1, 25)}) {
        const auto lhs = hurwitz_zeta(s, HurwitzShift::rational(1, 2), 1e-10);
        const auto rhs = (real_pow(2.0, s) - ErrorBoundedComplex(cplx(1, 0))) *
                         hurwitz_zeta(s, HurwitzShift::real(1.0), 1e-10);
        EXPECT_TRUE(overlaps(lhs, rhs)) << s;
    }
}

TEST(Hurwitz, LemmaBoundAtSixty)
{
    const auto z = hurwitz_zeta(cplx(1, 60), HurwitzShift::real(1.0), 1e-10);
    EXPECT_LT(z.abs_upper(), std::log(60.0) + 1.0);
}

TEST(ChooseTruncation, MeetsTarget)
{
    const cplx s(1, 50);
    const auto n = choose_truncation(s, 1.0, 1e-10);
    EXPECT_GE(n, 50U);
    EXPECT_LE(em_remainder_bound(s, static_cast<double>(n) + 1.0, 1) + em_rounding_estimate(s, 1.0, n), 1e-10);
    const auto z = hurwitz_zeta_em(s, 1.0, EMConfig{n, 1});
    EXPECT_LE(z.radius(), 1e-10);
}

TEST(ChooseTruncation, LooseTargetAndFloor)
{
    EXPECT_EQ(choose_truncation(cplx(2, 0), 1.0, 10.0), 1U);
    EXPECT_THROW(choose_truncation(cplx(1, 1), 1.0, 1e-300), TruncationUnreachable);
    EXPECT_THROW(choose_truncation(cplx(1, 1e6), 1.0, 1e-10, 1, 1000), TruncationUnreachable);
}
