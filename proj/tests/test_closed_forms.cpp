#include "fpa/closed_forms.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fpa {
namespace {

TEST(FptLaplace, Examples) {
    EXPECT_EQ(fpt_laplace({1.0, 1.0}, 0.0), 1.0);
    EXPECT_NEAR(fpt_laplace({1.0, 1.0}, 1.5), std::exp(-1.0), 1e-15);   // sqrt(1 + 3) - 1 = 1
    EXPECT_NEAR(fpt_laplace({2.0, 0.5}, 1.875), std::exp(-3.0), 1e-15);  // sqrt(0.25 + 3.75) - 0.5 = 1.5
    EXPECT_THROW(fpt_laplace({1.0, 1.0}, -0.1), std::domain_error);
    EXPECT_THROW(fpt_laplace({0.0, 1.0}, 0.1), std::domain_error);
}

TEST(FptLaplace, DerivativeAtZeroIsMinusMean) {
    const ModelParams p{1.7, 0.6};
    const double h = 1e-6;
    const double slope = (fpt_laplace(p, 2 * h) - fpt_laplace(p, h)) / h;
    // one-sided, second-order corrected: f'(0) ~ (4 f(h) - 3 f(0) - f(2h)) / (2h)
    const double d0 = (4 * fpt_laplace(p, h) - 3.0 - fpt_laplace(p, 2 * h)) / (2 * h);
    EXPECT_NEAR(d0, -p.x / p.mu, 1e-6);
    EXPECT_LT(slope, 0.0);
}

TEST(FptLaplace, MonotoneAndLogConvex) {
    // log L(lambda) = -x (sqrt(mu^2 + 2 lambda) - mu) is convex in lambda
    const ModelParams p{1.3, 0.8};
    for (double l = 0.0; l < 20.0; l += 0.25) {
        const double a = std::log(fpt_laplace(p, l));
        const double b = std::log(fpt_laplace(p, l + 0.25));
        const double c = std::log(fpt_laplace(p, l + 0.5));
        EXPECT_GT(a, b);
        EXPECT_GE(a + c - 2 * b, -1e-14);
    }
}

TEST(FptDensity, Examples) {
    EXPECT_NEAR(fpt_density({1.0, 1.0}, 1.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
    EXPECT_GT(fpt_density({1.0, 0.0}, 1.0), 0.0);
    EXPECT_THROW(fpt_density({1.0, 1.0}, 0.0), std::domain_error);
    EXPECT_THROW(fpt_density({1.0, -1.0}, 1.0), std::domain_error);
}

TEST(FptDensity, NormalizedWithInverseGaussianMoments) {
    for (const ModelParams p : {ModelParams{1.0, 1.0}, ModelParams{2.0, 0.5}, ModelParams{0.5, 3.0}}) {
        auto f = [&](double t) { return t > 0.0 ? fpt_density(p, t) : 0.0; };
        const double upper = 40.0 * p.x / p.mu + 40.0;
        EXPECT_NEAR(oracle::simpson(f, 0.0, upper, 400000), 1.0, 1e-9);
        auto g = [&](double t) { return t * f(t); };
        EXPECT_NEAR(oracle::simpson(g, 0.0, upper, 400000), p.x / p.mu, 1e-8);
    }
}

TEST(FptDensity, MatchesSurvivalFunction) {
    const ModelParams p{1.0, 0.7};
    auto f = [&](double t) { return t > 0.0 ? fpt_density(p, t) : 0.0; };
    for (double t : {0.3, 1.0, 4.0}) {
        EXPECT_NEAR(oracle::simpson(f, 0.0, t, 100000), 1.0 - oracle::fpt_survival(p.x, p.mu, t), 1e-10);
    }
}

TEST(FpaDensityZeroDrift, NormalizedAndHeavyTailed) {
    for (double x : {0.5, 1.0, 2.0}) {
        auto f = [x](double a) { return a > 0.0 ? fpa_density_zero_drift(x, a) : 0.0; };
        // substitution a = 1/v^3 turns the a^{-4/3} tail into a smooth finite integral
        auto g = [&](double v) { return f(1.0 / (v * v * v)) * 3.0 / (v * v * v * v); };
        // g is flat to O(v^3) at 0, so [0, v0] is g(v0) v0 to well below the tolerance
        const double v0 = 1e-3;
        const double total =
            oracle::simpson(f, 0.0, 1.0, 200000) + oracle::simpson(g, v0, 1.0, 200000) + g(v0) * v0;
        EXPECT_NEAR(total, 1.0, 1e-6) << x;
    }
    const double a = 1e8;
    EXPECT_NEAR(fpa_density_zero_drift(1.0, 2 * a) / fpa_density_zero_drift(1.0, a), std::pow(2.0, -4.0 / 3.0),
                1e-6);
    EXPECT_THROW(fpa_density_zero_drift(1.0, 0.0), std::domain_error);
}

TEST(AreaMoments, Examples) {
    EXPECT_DOUBLE_EQ(mean_fpa({1.0, 1.0}), 1.0);
    EXPECT_DOUBLE_EQ(second_moment_fpa({1.0, 1.0}), 0.25 + 5.0 / 6.0 + 1.25 + 1.25);
    EXPECT_DOUBLE_EQ(var_fpa({1.0, 1.0}), 31.0 / 12.0);
    EXPECT_DOUBLE_EQ(mean_tau_a({1.0, 1.0}), 2.5);
    EXPECT_THROW(mean_fpa({1.0, 0.0}), std::domain_error);
    EXPECT_THROW(var_fpa({-1.0, 1.0}), std::domain_error);
}

TEST(AreaMoments, VarianceIdentity) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 20; ++i) {
        const ModelParams p{u(rng), u(rng)};
        const double m = mean_fpa(p);
        const double v = second_moment_fpa(p) - m * m;
        EXPECT_NEAR(var_fpa(p), v, 1e-12 * second_moment_fpa(p));
        EXPECT_GT(var_fpa(p), 0.0);
    }
}

TEST(RhoExact, Examples) {
    EXPECT_NEAR(rho_exact(5.0), std::sqrt(147.0 / 175.0), 1e-15);
    EXPECT_NEAR(rho_exact(10.0), std::sqrt(432.0 / 535.0), 1e-15);
    EXPECT_THROW(rho_exact(0.0), std::domain_error);
}

// rho^2 = (3g^2 + 12g + 12) / (4g^2 + 12g + 15) has derivative sign -(2g - 3)(g + 2):
// rising from sqrt(4/5) to its maximum sqrt(7/8) at g = 3/2, then falling to sqrt(3/4).
TEST(RhoExact, RisesToInteriorMaximumThenFalls) {
    EXPECT_NEAR(rho_exact(1e-9), kRhoZeroDrift, 1e-9);
    EXPECT_NEAR(rho_exact(1e9), kRhoLargeDrift, 1e-9);
    EXPECT_NEAR(rho_exact(1.5), std::sqrt(7.0 / 8.0), 1e-15);
    double prev = rho_exact(1e-6);
    for (double g = 1e-3; g < 1e5; g *= 1.1) {
        const double r = rho_exact(g);
        if (g < 1.5 / 1.1) {
            EXPECT_GT(r, prev) << g;
        }
        if (g > 1.5 * 1.1) {
            EXPECT_LT(r, prev) << g;
        }
        EXPECT_GT(r, kRhoLargeDrift);
        EXPECT_LE(r, std::sqrt(7.0 / 8.0));
        prev = r;
    }
    // the limits do not bracket the curve
    EXPECT_GT(rho_exact(1.5), kRhoZeroDrift);
}

TEST(WJoint, Examples) {
    for (const ModelParams p : {ModelParams{1.0, 1.0}, ModelParams{2.5, 0.3}, ModelParams{0.2, 7.0}}) {
        EXPECT_EQ(w_joint(p, 0.0), mean_fpa(p));
    }
    // r = sqrt(1 + 3) = 2: e^{-1} (1/4 + 1/8)
    EXPECT_NEAR(w_joint({1.0, 1.0}, 1.5), 0.375 * std::exp(-1.0), 1e-15);
    EXPECT_THROW(w_joint({1.0, 1.0}, -1.0), std::domain_error);
}

TEST(WJoint, DecreasingInLambdaAndDerivativeGivesMeanTauA) {
    const ModelParams p{1.2, 0.9};
    double prev = w_joint(p, 0.0);
    for (double l = 0.1; l < 5.0; l += 0.1) {
        const double w = w_joint(p, l);
        EXPECT_LT(w, prev);
        prev = w;
    }
    const double h = 1e-5;
    const double d0 = (4 * w_joint(p, h) - 3 * w_joint(p, 0.0) - w_joint(p, 2 * h)) / (2 * h);
    EXPECT_NEAR(-d0, mean_tau_a(p), 1e-6 * mean_tau_a(p));
}

TEST(TimeAverage, Examples) {
    EXPECT_NEAR(expected_time_average({1.0, 100.0}), 0.5 * (1.0 + oracle::exp_tail_integral(1.0, 100.0)), 1e-10);
    EXPECT_NEAR(expected_time_average({1.0, 100.0}), 0.50495, 1e-5);
    EXPECT_NEAR(expected_time_average({1.0, 1.0}), 0.5 * (1.0 + oracle::exp_tail_integral(1.0, 1.0)), 1e-10);
    EXPECT_THROW(expected_time_average({1.0, 0.0}), std::domain_error);
    EXPECT_THROW(expected_time_average({0.0, 1.0}), std::domain_error);
}

TEST(TimeAverage, AboveHalfXAndDecreasingInMu) {
    for (double x : {0.3, 1.0, 4.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double mu = 0.01; mu < 1e4; mu *= 2.0) {
            const double v = expected_time_average({x, mu});
            EXPECT_GE(v, x / 2.0);
            EXPECT_LT(v, prev);
            prev = v;
        }
        // excess (x/2) e^{mu x} E1(mu x) ~ 1/(2 mu)
        EXPECT_NEAR(expected_time_average({x, 1e6}) - x / 2.0, 0.5e-6, 1e-8);
    }
}

}  // namespace
}  // namespace fpa
