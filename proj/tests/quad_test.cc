#include "fracthermo/quad.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace ft = fracthermo;

namespace {

double phi_oracle(const ft::ModelParams& p, double t) {
    return p.beta() + (std::pow(p.eta(), p.alpha()) - std::pow(t, p.alpha())) /
                          std::tgamma(p.alpha() + 1.0);
}

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

const ft::ModelParams demo{1.5, 0.8, 0.5, 3.2};
const auto one = [](double) { return 1.0; };

}  // namespace

TEST(IntegrateKernel, ConstantIntegrandMatchesClosedForm) {
    EXPECT_NEAR(ft::integrate_kernel(demo, 0.3, one), phi_oracle(demo, 0.3),
                1e-7 * phi_oracle(demo, 0.3));
    EXPECT_NEAR(ft::integrate_kernel(demo, 1.0, one), phi_oracle(demo, 1.0),
                1e-7 * phi_oracle(demo, 1.0));
    EXPECT_NEAR(ft::integrate_kernel(demo, 0.0, one), phi_oracle(demo, 0.0),
                1e-7 * phi_oracle(demo, 0.0));
}

TEST(IntegrateKernel, ZeroIntegrand) {
    const ft::ModelParams p(2.0, 1.0, 0.5);
    for (double t : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        EXPECT_EQ(ft::integrate_kernel(p, t, [](double) { return 0.0; }), 0.0);
    }
}

TEST(IntegrateKernel, RandomParametersWithinTolerance) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const ft::ModelParams p = draw_params(rng);
        const double t = u(rng);
        const double exact = phi_oracle(p, t);
        EXPECT_LE(std::abs(ft::integrate_kernel(p, t, one) - exact) / std::abs(exact), 1e-7)
            << "alpha=" << p.alpha() << " beta=" << p.beta() << " eta=" << p.eta() << " t=" << t;
    }
}

TEST(IntegrateKernel, ExactForLinearIntegrandAtClassicalLimit) {
    // alpha = 2: G is piecewise linear in s, so G * (a + b s) is a piecewise
    // quadratic and 4-point Gauss is exact on every panel.
    const ft::ModelParams p(2.0, 1.0, 0.5);
    const double t = 0.7;
    // integral of (beta + (eta - s)_+ - (t - s)_+) (1 + s) ds, done by hand
    const auto prim_pos = [](double r) {
        // integral_0^r (r - s)(1 + s) ds = r^2/2 + r^3/6
        return r * r / 2.0 + r * r * r / 6.0;
    };
    const double exact = 1.0 * 1.5 + prim_pos(0.5) - prim_pos(t);
    EXPECT_NEAR(ft::integrate_kernel(p, t, [](double s) { return 1.0 + s; }), exact, 1e-14);
}

TEST(IntegrateKernel, Linearity) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0), c(-3.0, 3.0);
    const auto w1 = [](double s) { return std::cos(3.0 * s); };
    const auto w2 = [](double s) { return s * s - 0.2; };
    for (int i = 0; i < 50; ++i) {
        const double t = u(rng), a = c(rng), b = c(rng);
        const double combined =
            ft::integrate_kernel(demo, t, [&](double s) { return a * w1(s) + b * w2(s); });
        const double split =
            a * ft::integrate_kernel(demo, t, w1) + b * ft::integrate_kernel(demo, t, w2);
        EXPECT_NEAR(combined, split, 1e-12);
    }
}

TEST(IntegrateKernel, RefinementConverges) {
    // Coarse grading keeps errors well above roundoff so the ratio is visible.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ft::QuadSpec coarse{4, 4};
    ft::QuadSpec fine{8, 4};
    for (int i = 0; i < 50; ++i) {
        const ft::ModelParams p = draw_params(rng);
        const double t = u(rng);
        const double exact = phi_oracle(p, t);
        const double e1 = std::abs(ft::integrate_kernel(p, t, one, coarse) - exact);
        const double e2 = std::abs(ft::integrate_kernel(p, t, one, fine) - exact);
        if (e1 < 1e-13) continue;  // no singular panel for this (t, eta)
        EXPECT_GE(e1 / e2, 2.0) << "alpha=" << p.alpha() << " eta=" << p.eta() << " t=" << t;
    }
}

TEST(IntegrateKernel, NonnegativeIntegrandGivesNonnegativeResult) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const ft::ModelParams p = draw_params(rng);
        const double t = u(rng);
        const double c = u(rng);
        const double v = ft::integrate_kernel(p, t, [c](double s) { return std::abs(s - c); });
        EXPECT_GE(v, -1e-12);
    }
}

TEST(IntegrateKernel, NonFiniteSampleReportsAbscissa) {
    try {
        ft::integrate_kernel(demo, 0.4, [](double s) { return s > 0.8 ? NAN : 1.0; });
        FAIL() << "expected EvaluationError";
    } catch (const ft::EvaluationError& e) {
        EXPECT_GT(e.where(), 0.8);
        EXPECT_LT(e.where(), 1.0);
    }
}

TEST(IntegrateKernel, NeverSamplesSeamsOrEnds) {
    const double t = 0.3;
    ft::integrate_kernel(demo, t, [&](double s) {
        EXPECT_NE(s, t);
        EXPECT_NE(s, demo.eta());
        EXPECT_GT(s, 0.0);
        EXPECT_LT(s, 1.0);
        return 1.0;
    });
}

TEST(QuadSpec, Validation) {
    EXPECT_THROW(ft::kernel_rule(demo, 0.5, ft::QuadSpec{0, 8}), ft::DomainError);
    EXPECT_THROW(ft::kernel_rule(demo, 0.5, ft::QuadSpec{8, -1}), ft::DomainError);
    EXPECT_NO_THROW(ft::kernel_rule(demo, 0.5, ft::QuadSpec{1, 0}));
}

TEST(UniformRule, IntegratesSmoothFunctions) {
    EXPECT_NEAR(ft::integrate([](double s) { return std::exp(s); }), std::exp(1.0) - 1.0, 1e-14);
    EXPECT_NEAR(ft::integrate([](double s) { return s * s * s; }), 0.25, 1e-15);
}
