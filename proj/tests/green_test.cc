#include "fracthermo/green.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace ft = fracthermo;

namespace {

const ft::ModelParams demo{1.5, 0.8, 0.5, 3.2};

// Independent closed forms built on libm's tgamma.
double phi_oracle(double a, double b, double e, double t) {
    return b + (std::pow(e, a) - std::pow(t, a)) / std::tgamma(a + 1.0);
}

// Random admissible parameters.
ft::ModelParams draw_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a(1.0, 2.0), b(0.1, 2.0), e(0.0, 1.0);
    for (;;) {
        const double alpha = std::nextafter(a(rng), 3.0);
        const double beta = b(rng);
        const double eta = e(rng);
        if (beta * std::tgamma(alpha) - std::pow(1.0 - eta, alpha - 1.0) > 1e-3) {
            return ft::ModelParams(alpha, beta, eta);
        }
    }
}

}  // namespace

TEST(ModelParams, RejectsInadmissibleValues) {
    EXPECT_THROW(ft::ModelParams(1.0, 0.8, 0.5), ft::DomainError);
    EXPECT_THROW(ft::ModelParams(2.1, 0.8, 0.5), ft::DomainError);
    EXPECT_THROW(ft::ModelParams(1.5, 0.0, 0.5), ft::DomainError);
    EXPECT_THROW(ft::ModelParams(1.5, 0.8, -0.1), ft::DomainError);
    EXPECT_THROW(ft::ModelParams(1.5, 0.8, 1.1), ft::DomainError);
    EXPECT_THROW(ft::ModelParams(1.5, 0.8, 0.5, 0.0), ft::DomainError);
    // beta Gamma(alpha) = 0.886 * 0.5 < (1 - 0)^0.5
    EXPECT_THROW(ft::ModelParams(1.5, 0.5, 0.0), ft::DomainError);
    EXPECT_NO_THROW(ft::ModelParams(2.0, 1.0, 1.0));
}

TEST(Kernel, BranchValues) {
    // s >= eta, s >= t: G = beta
    EXPECT_DOUBLE_EQ(ft::kernel(demo, 0.2, 0.7), 0.8);
    // G(0, 0) = beta + eta^(alpha-1)/Gamma(alpha)
    EXPECT_NEAR(ft::kernel(demo, 0.0, 0.0), 1.5978845608028656, 1e-13);
    EXPECT_NEAR(ft::kernel(demo, 0.0, 0.0), 1.5981, 5e-4);
    EXPECT_DOUBLE_EQ(ft::kernel(demo, 1.0, 1.0), 0.8);

    const double g = std::tgamma(1.5);
    // s <= eta, s <= t
    EXPECT_NEAR(ft::kernel(demo, 0.6, 0.3),
                0.8 - std::pow(0.3, 0.5) / g + std::pow(0.2, 0.5) / g, 1e-14);
    // s <= eta, s >= t
    EXPECT_NEAR(ft::kernel(demo, 0.1, 0.3), 0.8 + std::pow(0.2, 0.5) / g, 1e-14);
    // s >= eta, s <= t
    EXPECT_NEAR(ft::kernel(demo, 0.9, 0.6), 0.8 - std::pow(0.3, 0.5) / g, 1e-14);
}

TEST(Kernel, RejectsOutOfRangeArguments) {
    EXPECT_THROW(ft::kernel(demo, -0.01, 0.5), ft::DomainError);
    EXPECT_THROW(ft::kernel(demo, 0.5, 1.01), ft::DomainError);
    EXPECT_THROW(ft::kernel(demo, std::nan(""), 0.5), ft::DomainError);
}

TEST(Kernel, SeamRoundingNeverProducesNaN) {
    for (double t : {0.3, 0.5, 1.0 / 3.0}) {
        const double s = std::nextafter(t, 1.0);
        EXPECT_TRUE(std::isfinite(ft::kernel(demo, t, s)));
        EXPECT_TRUE(std::isfinite(ft::kernel(demo, t, t)));
    }
}

TEST(ClosedForms, KernelIntegral) {
    EXPECT_NEAR(ft::kernel_integral_closed(demo, 0.0), phi_oracle(1.5, 0.8, 0.5, 0.0), 1e-14);
    EXPECT_NEAR(ft::kernel_integral_closed(demo, 0.0), 1.0659615, 1e-7);
    EXPECT_NEAR(ft::kernel_integral_closed(demo, 1.0), 0.3135, 1e-3);
    EXPECT_DOUBLE_EQ(ft::kernel_integral_closed(demo, 0.5), 0.8);
}

TEST(ClosedForms, BoundK) {
    EXPECT_NEAR(ft::bound_k(demo), 0.31370874220394684, 1e-13);
    EXPECT_NEAR(ft::bound_k(demo), 0.3135, 1e-3);
    EXPECT_NEAR(1.0 / ft::bound_k(demo), 3.1897, 5e-3);
    EXPECT_NEAR(1.0 / ft::bound_k(demo), 3.1876701713013937, 1e-12);
    EXPECT_DOUBLE_EQ(ft::bound_k(ft::ModelParams(2.0, 1.0, 1.0)), 1.0);
}

TEST(ClosedForms, BoundK1) {
    EXPECT_NEAR(ft::bound_k1(demo), 1.5981, 1e-3);
    EXPECT_NEAR(ft::bound_k1(ft::ModelParams(2.0, 0.8, 0.3)), 1.1, 1e-15);
    EXPECT_DOUBLE_EQ(ft::bound_k1(ft::ModelParams(1.5, 1.5, 0.0)), 1.5);
}

TEST(ClosedForms, SupIntegral) {
    EXPECT_NEAR(ft::sup_integral(demo), 1.0659615, 1e-7);
    EXPECT_DOUBLE_EQ(ft::sup_integral(ft::ModelParams(1.7, 1.2, 0.0)), 1.2);
    EXPECT_DOUBLE_EQ(ft::sup_integral(ft::ModelParams(2.0, 1.0, 1.0)), 1.5);
}

TEST(ClosedForms, ConditionValues) {
    EXPECT_NEAR(ft::condition_i_value(demo), 1.4165, 2e-3);
    EXPECT_GT(demo.wellposedness(), 0.0);
    EXPECT_NEAR(demo.wellposedness(), 0.8 * std::tgamma(1.5) - std::sqrt(0.5), 1e-14);
}

TEST(KernelProperties, ContinuousAcrossSeams) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double eps = 1e-8;
    for (int i = 0; i < 1000; ++i) {
        const ft::ModelParams p = draw_params(rng);
        const double t = u(rng);
        const double bound = 10.0 * std::pow(eps, std::min(1.0, p.alpha() - 1.0));
        for (double seam : {t, p.eta()}) {
            if (seam - eps < 0.0 || seam + eps > 1.0) continue;
            const double jump = std::abs(ft::kernel(p, t, seam - eps) - ft::kernel(p, t, seam + eps));
            EXPECT_LE(jump, bound) << "alpha=" << p.alpha() << " t=" << t << " seam=" << seam;
        }
    }
}

TEST(KernelProperties, PositiveAboveLowerBound) {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const ft::ModelParams p = draw_params(rng);
        const double t = u(rng), s = u(rng);
        const double lower = ft::kernel_lower_bound(p);
        ASSERT_GT(lower, 0.0);
        EXPECT_GE(ft::kernel(p, t, s), lower - 1e-14);
    }
}

TEST(KernelProperties, DecreasingInTAndBoundedByK1) {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const ft::ModelParams p = draw_params(rng);
        double t1 = u(rng), t2 = u(rng);
        if (t1 > t2) std::swap(t1, t2);
        const double s = u(rng);
        EXPECT_GE(ft::kernel(p, t1, s), ft::kernel(p, t2, s) - 1e-14);
        EXPECT_LE(ft::kernel(p, t1, s), ft::bound_k1(p) + 1e-12);
    }
}

TEST(KernelProperties, IntegralBoundsAreOrdered) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const ft::ModelParams p = draw_params(rng);
        double t1 = u(rng), t2 = u(rng);
        if (t1 > t2) std::swap(t1, t2);
        const double v1 = ft::kernel_integral_closed(p, t1);
        EXPECT_LE(ft::bound_k(p), v1 + 1e-15);
        EXPECT_LE(v1, ft::sup_integral(p) + 1e-15);
        if (t2 - t1 > 1e-9) {
            EXPECT_GT(v1, ft::kernel_integral_closed(p, t2));
        }
    }
}
