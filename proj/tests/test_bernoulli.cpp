#include <gtest/gtest.h>

#include "dlbound/bernoulli.hpp"

using namespace dlbound;

TEST(Bernoulli, Numbers)
{
    const auto t = bernoulli_numbers(3);
    EXPECT_EQ(t.number(1).num, -1);
    EXPECT_EQ(t.number(1).den, 2);
    EXPECT_EQ(t.number(2).num, 1);
    EXPECT_EQ(t.number(2).den, 6);
    EXPECT_EQ(t.number(3).num, 0);
    EXPECT_EQ(t.number(4).num, -1);
    EXPECT_EQ(t.number(4).den, 30);
}

TEST(Bernoulli, HighOrderAgainstKnown)
{
    const auto t = bernoulli_numbers(19);
    EXPECT_EQ(t.number(12).num, -691);
    EXPECT_EQ(t.number(12).den, 2730);
    EXPECT_EQ(t.number(20).num, -174611);
    EXPECT_EQ(t.number(20).den, 330);
    for (unsigned j = 3; j <= 19; j += 2) {
        EXPECT_EQ(t.number(j).num, 0);
    }
}

TEST(Bernoulli, RejectsOrder)
{
    EXPECT_THROW(bernoulli_numbers(0), std::invalid_argument);
    EXPECT_THROW(bernoulli_numbers(20), std::invalid_argument);
}

TEST(PeriodicBernoulli, SecondPolynomial)
{
    const auto t = bernoulli_numbers(1);
    EXPECT_DOUBLE_EQ(periodic_bernoulli(t, 2, 0.5), -1.0 / 12.0);
    EXPECT_DOUBLE_EQ(periodic_bernoulli(t, 2, 7.0), 1.0 / 6.0);
    EXPECT_DOUBLE_EQ(periodic_bernoulli(t, 2, -0.25), periodic_bernoulli(t, 2, 0.75));
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        worst = std::max(worst, std::abs(periodic_bernoulli(t, 2, i / 1000.0)));
    }
    EXPECT_DOUBLE_EQ(worst, 1.0 / 6.0);
}

TEST(PeriodicBernoulli, SupBoundHolds)
{
    const auto t = bernoulli_numbers(9);
    double fact = 1.0;
    for (unsigned n = 1; n <= 10; ++n) {
        fact *= n;
        if (n < 2) {
            continue;
        }
        const double bound = 4.0 * fact / std::pow(2.0 * M_PI, n);
        for (int i = 0; i < 2000; ++i) {
            EXPECT_LE(std::abs(periodic_bernoulli(t, n, i / 2000.0)), bound) << "n=" << n;
        }
    }
}
