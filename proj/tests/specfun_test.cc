#include "fracthermo/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace ft = fracthermo;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Gamma, HalfIntegersAndOne) {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    EXPECT_LE(rel(ft::gamma(1.5), 0.8862269254527580), 1e-13);
    EXPECT_LE(rel(ft::gamma(2.5), 1.3293403881791370), 1e-13);
    EXPECT_LE(rel(ft::gamma(1.5), sqrt_pi / 2.0), 1e-13);
    EXPECT_LE(rel(ft::gamma(0.5), sqrt_pi), 1e-13);
    EXPECT_LE(rel(ft::gamma(1.0), 1.0), 1e-15);
}

TEST(Gamma, FactorialsAreExactToRoundoff) {
    double fact = 1.0;
    for (int k = 1; k <= 9; ++k) {
        fact *= k;
        EXPECT_LE(rel(ft::gamma(k + 1.0), fact), 1e-13) << "k=" << k;
    }
}

TEST(Gamma, MatchesLibmOnWorkingRange) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> x(0.5, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const double v = x(rng);
        worst = std::max(worst, rel(ft::gamma(v), std::tgamma(v)));
    }
    EXPECT_LE(worst, 1e-13);
}

TEST(Gamma, RecurrenceHolds) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> x(0.5, 9.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = x(rng);
        const double g1 = ft::gamma(v + 1.0);
        EXPECT_LE(std::abs(g1 - v * ft::gamma(v)) / g1, 1e-12) << "x=" << v;
    }
}

TEST(Gamma, IncreasingAboveTwo) {
    double prev = ft::gamma(2.0);
    for (int i = 1; i <= 800; ++i) {
        const double v = 2.0 + 8.0 * i / 800.0;
        const double g = ft::gamma(v);
        EXPECT_GT(g, prev) << "x=" << v;
        prev = g;
    }
}

TEST(Gamma, SmallPositiveArgumentsUseShift) {
    EXPECT_LE(rel(ft::gamma(0.25), std::tgamma(0.25)), 1e-13);
    EXPECT_LE(rel(ft::gamma(1e-3), std::tgamma(1e-3)), 1e-13);
}

TEST(Gamma, RejectsNonPositiveAndNonFinite) {
    EXPECT_THROW(ft::gamma(0.0), fracthermo::DomainError);
    EXPECT_THROW(ft::gamma(-1.5), fracthermo::DomainError);
    EXPECT_THROW(ft::gamma(std::nan("")), fracthermo::DomainError);
    EXPECT_THROW(ft::gamma(INFINITY), fracthermo::DomainError);
}
