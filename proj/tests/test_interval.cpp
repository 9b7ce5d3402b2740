#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dlbound/interval.hpp"

using namespace dlbound;

TEST(Interval, RejectsMalformed)
{
    EXPECT_THROW(Interval(2.0, 1.0), std::invalid_argument);
    EXPECT_THROW(Interval(std::nan(""), 1.0), std::invalid_argument);
}

TEST(Interval, ExactOperationsStayPoints)
{
    EXPECT_TRUE((Interval(1.0) + Interval(2.0)).is_point());
    EXPECT_TRUE((Interval(3.0) * Interval(0.5)).is_point());
    EXPECT_TRUE(Interval(4.0).reciprocal().is_point());
    EXPECT_EQ(Interval(1e6, Interval::inf).reciprocal().lo(), 0.0);
    EXPECT_EQ(log(Interval(1.0)).lo(), 0.0);
}

TEST(Interval, InexactOperationsEncloseTruth)
{
    const auto third = Interval(1.0) / Interval(3.0);
    EXPECT_FALSE(third.is_point());
    EXPECT_LE(third.lo(), 1.0L / 3.0L);
    EXPECT_GE(third.hi(), 1.0L / 3.0L);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 5000; ++i) {
        const double a = u(rng), b = u(rng);
        const long double sum = static_cast<long double>(a) + b;
        const long double prod = static_cast<long double>(a) * b;
        const auto s = Interval(a) + Interval(b);
        const auto p = Interval(a) * Interval(b);
        EXPECT_TRUE(s.lo() <= sum && sum <= s.hi());
        EXPECT_TRUE(p.lo() <= prod && prod <= p.hi());
        if (std::abs(b) > 1e-3) {
            const long double q = static_cast<long double>(a) / b;
            const auto d = Interval(a) / Interval(b);
            EXPECT_TRUE(d.lo() <= q && q <= d.hi());
        }
        const double x = std::abs(a) + 1e-3;
        const auto l = log(Interval(x));
        EXPECT_TRUE(l.lo() <= std::log(static_cast<long double>(x)) && std::log(static_cast<long double>(x)) <= l.hi());
        const auto e = exp(Interval(a));
        EXPECT_TRUE(e.lo() <= std::exp(static_cast<long double>(a)) && std::exp(static_cast<long double>(a)) <= e.hi());
    }
}

TEST(Interval, InfiniteEndpoints)
{
    const Interval tail(50.0, Interval::inf);
    const auto r = tail.reciprocal();
    EXPECT_EQ(r.lo(), 0.0);
    const auto prod = r * Interval(0.0, 3.0);
    EXPECT_EQ(prod.lo(), 0.0);
    EXPECT_EQ((Interval(0.0) * tail).hi(), 0.0);
    EXPECT_EQ(exp(-tail).lo(), 0.0);
    EXPECT_THROW(static_cast<void>(Interval(-1.0, 1.0).reciprocal()), std::domain_error);
    EXPECT_THROW(log(Interval(0.0, 1.0)), std::domain_error);
}

TEST(Interval, GammaEnclosure)
{
    const auto g = constants::euler_gamma_enclosure();
    EXPECT_LT(g.lo(), 0.5772156649015328606L);
    EXPECT_GT(g.hi(), 0.5772156649015328606L);
}
