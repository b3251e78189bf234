#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gb2d/relations.hpp"

using gb2d::eval;
using gb2d::Index;

constexpr double pi = std::numbers::pi;

TEST(SumRules, Examples) {
    EXPECT_NEAR(gb2d::sum_rule_total(1, 2, 0, 0, 10), 0.0, 1e-15);
    EXPECT_NEAR(gb2d::sum_rule_total(1, 2, 3.0, 1.5, 60), 0.0, 1e-10);
    EXPECT_NEAR(gb2d::sum_rule_total(2, 3, 5.0, -4.0, 80), 0.0, 1e-10);

    EXPECT_NEAR(gb2d::sum_rule_squares(1, 2, 0, 0, 10), 0.0, 1e-15);
    EXPECT_NEAR(gb2d::sum_rule_squares(1, 3, 2.0, 2.0, 60), 0.0, 1e-10);
    EXPECT_NEAR(gb2d::sum_rule_squares(1, 2, 10.0, 5.0, 80), 0.0, 1e-10);

    EXPECT_NEAR(std::abs(gb2d::sum_rule_phase12(0, 0, 10)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(gb2d::sum_rule_phase12(1.0, 0.7, 60)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(gb2d::sum_rule_phase12(-2.5, 4.0, 80)), 0.0, 1e-10);
}

TEST(SumRules, TruncationTooShortIsVisible) {
    // The defaults must reach well past the last non-negligible order.
    EXPECT_GT(std::abs(gb2d::sum_rule_total(1, 5, 4.2, 9.7, 60)), 1e-3);
    EXPECT_LT(std::abs(gb2d::sum_rule_total(1, 5, 4.2, 9.7, gb2d::default_sum_K(1, 5, 4.2, 9.7))), 1e-10);
}

TEST(Kapteyn, Examples) {
    EXPECT_NEAR(gb2d::kapteyn_sum(1, 2, 0, 0).residual, 0.0, 1e-15);
    const auto a = gb2d::kapteyn_sum(1, 2, 0.1, 0.2);
    EXPECT_NEAR(a.residual, 0.0, 1e-8);
    EXPECT_GT(a.K, 0);
    EXPECT_NEAR(gb2d::kapteyn_sum(1, 3, 0.05, 0.1).residual, 0.0, 1e-8);
}

TEST(Kapteyn, DomainBoundary) {
    EXPECT_THROW(gb2d::kapteyn_sum(1, 2, 0.5, 0.25), gb2d::domain_error);
    EXPECT_THROW(gb2d::kapteyn_sum(1, 2, -0.6, 0.3), gb2d::domain_error);
    EXPECT_NO_THROW(gb2d::kapteyn_sum(1, 2, 0.3, 0.1));
}

TEST(Kapteyn, PartialSumsGrowTowardsTheBoundary) {
    long previous = 0;
    for (double r : {0.2, 0.4, 0.6, 0.8}) {
        const auto k = gb2d::kapteyn_sum(1, 2, r / 2, r / 4);
        EXPECT_NEAR(k.residual, 0.0, 1e-8);
        EXPECT_GT(k.K, previous);
        previous = k.K;
    }
}

TEST(Addition, Examples) {
    EXPECT_NEAR(gb2d::addition_residual(0, 1, 2, 1.3, -0.4, -1.3, 0.4, 60), 0.0, 1e-12);
    EXPECT_NEAR(gb2d::addition_residual(3, 1, 2, 1.0, 0.5, 0.7, -0.2, 60), 0.0, 1e-10);
    EXPECT_NEAR(gb2d::addition_residual(1, 2, 3, 0, 0, 2.0, 1.0, 60), 0.0, 1e-15);
}

TEST(Graf, Examples) {
    const auto a = gb2d::graf_residual(0, 2, 1.0, 0.5, 2.0, 1.0, pi / 3, 50);
    EXPECT_FALSE(a.branch_warning);
    EXPECT_LE(std::abs(a.residual), 1e-9);
    const auto b = gb2d::graf_residual(2, 3, 0.5, 0.2, 1.5, 0.8, pi / 4, 50);
    EXPECT_FALSE(b.branch_warning);
    EXPECT_LE(std::abs(b.residual), 1e-9);
}

TEST(Graf, ThetaZeroIsOrthogonality) {
    for (long n : {-2, 0, 1, 3}) {
        const auto r = gb2d::graf_residual(n, 2, 1.2, 0.7, 1.2, 0.7, 0.0, 60);
        EXPECT_LE(std::abs(r.residual), 1e-10) << n;
        // w(0) = 0: the prefactor base is degenerate there.
        EXPECT_TRUE(r.branch_warning);
    }
    const auto s = gb2d::graf_residual(1, 3, 0.4, 0.3, 2.0, 1.5, 0.0, 60);
    EXPECT_FALSE(s.branch_warning);
    EXPECT_LE(std::abs(s.residual), 1e-10);
}

TEST(Graf, FlagsPathsLeavingTheBranch) {
    // |x1| > x2: w winds around the origin.
    EXPECT_TRUE(gb2d::graf_residual(0, 2, 3.0, 0.5, 1.0, 1.0, 2.5, 60).branch_warning);
    EXPECT_TRUE(gb2d::graf_residual(0, 2, 0.5, 2.0, 1.0, 1.0, 1.0, 60).branch_warning);
}

TEST(Derivatives, Examples) {
    EXPECT_LE(std::abs(gb2d::derivative_residual_u(0, 1, 2, 0, 0, 1e-4)), 1e-7);
    EXPECT_LE(std::abs(gb2d::derivative_residual_u(2, 1, 3, 1.3, 0.4, 1e-4)), 1e-7);
    EXPECT_LE(std::abs(gb2d::derivative_residual_u(1, 2, 3, 0.5, 0.5, 1e-4)), 1e-7);
    EXPECT_LE(std::abs(gb2d::derivative_residual_v(0, 1, 2, 0, 0, 1e-4)), 1e-7);
    EXPECT_LE(std::abs(gb2d::derivative_residual_v(2, 1, 3, 1.3, 0.4, 1e-4)), 1e-7);
    EXPECT_LE(std::abs(gb2d::derivative_residual_v(1, 2, 3, 0.5, 0.5, 1e-4)), 1e-7);
}

TEST(Derivatives, ParamExamples) {
    for (auto [n, q, d] : {std::tuple{0L, 2L, pi / 2}, {1L, 2L, 0.3}, {2L, 3L, 1.0}}) {
        const auto r = gb2d::param_derivative_residuals(n, q, 0.9, -0.6, d, 1e-4);
        EXPECT_LE(std::abs(r.first), 1e-7);
        EXPECT_LE(std::abs(r.second), 1e-7);
    }
}

TEST(Derivatives, WrongShiftIsDetected) {
    // The v-rule shifts by q, not p.
    const double h = 1e-4, u = 1.1, v = 0.9;
    const double fd = (eval({2, 1, 3}, u, v + h) - eval({2, 1, 3}, u, v - h)) / h;
    EXPECT_GT(std::abs(fd - (eval({1, 1, 3}, u, v) - eval({3, 1, 3}, u, v))), 1e-3);
}

TEST(Recurrence, Examples) {
    EXPECT_NEAR(gb2d::recurrence_residual(0, 1, 2, 0, 0), 0.0, 1e-15);
    EXPECT_NEAR(gb2d::recurrence_residual(5, 1, 2, 3.0, 2.0), 0.0, 1e-9);
    EXPECT_NEAR(gb2d::recurrence_residual(4, 3, 5, 1.0, 1.0), 0.0, 1e-9);
}

TEST(Pde, WaveAndSchroedinger) {
    EXPECT_NEAR(gb2d::pde_residual_wave(0, 0, 0), 0.0, 1e-15);
    EXPECT_NEAR(gb2d::pde_residual_wave(3, 1.2, 0.7), 0.0, 1e-11);
    EXPECT_NEAR(gb2d::pde_residual_wave(1, -2.0, 3.0), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(gb2d::pde_residual_schroedinger(0, 0, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(gb2d::pde_residual_schroedinger(2, 1.0, 0.5)), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(gb2d::pde_residual_schroedinger(5, -1.5, 2.0)), 0.0, 1e-11);
}

TEST(Pde, CoupledAndDecoupled) {
    EXPECT_NEAR(gb2d::pde_residual_coupled(0, 1, 1, 0, 0), 0.0, 1e-15);
    EXPECT_NEAR(gb2d::pde_residual_coupled(3, 1, 2, 1.0, 0.8) / gb2d::pde_scale(3, 1, 2, 1.0, 0.8), 0.0, 1e-10);
    EXPECT_NEAR(gb2d::pde_residual_coupled(2, 2, 3, 0.6, 0.9) / gb2d::pde_scale(2, 2, 3, 0.6, 0.9), 0.0, 1e-10);
    EXPECT_NEAR(gb2d::pde_residual_decoupled_pm1(0, 1, 0, 0), 0.0, 1e-15);
    EXPECT_NEAR(gb2d::pde_residual_decoupled_pm1(2, 1, 1.0, 2.0) / gb2d::pde_scale(2, 1, 1, 1.0, 2.0), 0.0, 1e-10);
    EXPECT_NEAR(gb2d::pde_residual_decoupled_pm1(1, -1, 0.5, 0.3) / gb2d::pde_scale(1, 1, 1, 0.5, 0.3), 0.0, 1e-10);
    EXPECT_THROW(gb2d::pde_residual_decoupled_pm1(1, 2, 0.5, 0.3), gb2d::domain_error);
}

// Finite-difference left-hand side of the coupled equation, independent of the shift rules.
static double coupled_lhs_fd(long n, long p, long q, double u, double v) {
    const double h = 1e-3;
    auto f = [&](double a, double b) { return eval({n, p, q}, a, b); };
    const double f0 = f(u, v);
    const double fu = (f(u + h, v) - f(u - h, v)) / (2 * h);
    const double fv = (f(u, v + h) - f(u, v - h)) / (2 * h);
    const double fuu = (f(u + h, v) - 2 * f0 + f(u - h, v)) / (h * h);
    const double fvv = (f(u, v + h) - 2 * f0 + f(u, v - h)) / (h * h);
    const double fuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h);
    const double P = p, Q = q;
    return P * P * u * u * fuu + 2 * P * Q * u * v * fuv + Q * Q * v * v * fvv + P * P * u * fu + Q * Q * v * fv +
           (P * P * u * u + Q * Q * v * v - double(n) * n) * f0;
}

TEST(Pde, CoupledRightHandSideAgainstFiniteDifferences) {
    for (auto [n, p, q, u, v] : {std::tuple{3L, 1L, 2L, 1.0, 0.8}, {2L, 2L, 3L, 0.6, 0.9}, {1L, 1L, 3L, -1.4, 0.7}}) {
        const double lhs = coupled_lhs_fd(n, p, q, u, v);
        const double side = eval({n - p + q, p, q}, u, v) + eval({n + p - q, p, q}, u, v);
        const double corrected = -p * q * u * v * side;
        const double printed = -p * q * u * v * (side - 2.0 * eval({n, p, q}, u, v));
        EXPECT_NEAR(lhs, corrected, 1e-5);
        // The variant carrying -2 J_n inside the bracket misses by 2pq uv J_n.
        EXPECT_NEAR(lhs - printed, -2.0 * p * q * u * v * eval({n, p, q}, u, v), 1e-5);
        EXPECT_GT(std::abs(lhs - printed), 1e-2);
    }
}

TEST(Pde, DecoupledAgainstFiniteDifferences) {
    for (int sign : {1, -1})
        for (auto [n, u, v] : {std::tuple{2L, 1.0, 2.0}, {1L, 0.5, 0.3}, {4L, -2.0, 1.5}}) {
            const double h = 1e-3;
            auto f = [&](double a, double b) { return eval({n, 1, sign}, a, b); };
            const double f0 = f(u, v);
            const double fu = (f(u + h, v) - f(u - h, v)) / (2 * h), fv = (f(u, v + h) - f(u, v - h)) / (2 * h);
            const double fuu = (f(u + h, v) - 2 * f0 + f(u - h, v)) / (h * h);
            const double fvv = (f(u, v + h) - 2 * f0 + f(u, v - h)) / (h * h);
            const double fuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h);
            const double w = u + sign * v;
            const double r = u * u * fuu + 2 * u * v * fuv + v * v * fvv + u * fu + v * fv + (w * w - double(n) * n) * f0;
            EXPECT_NEAR(r, 0.0, 1e-5);
        }
}

class RelationSweep : public ::testing::Test {
protected:
    std::mt19937_64 rng{31};
    double real(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    long integer(long a, long b) { return std::uniform_int_distribution<long>(a, b)(rng); }
    std::pair<long, long> pair() {
        static const std::pair<long, long> ps[] = {{1, 2}, {1, 3}, {2, 3}, {1, 5}, {3, 5}, {3, 4}};
        return ps[integer(0, 5)];
    }
};

TEST_F(RelationSweep, AllResidualsSmall) {
    for (int k = 0; k < 200; ++k) {
        const auto [p, q] = pair();
        const long n = integer(-15, 15);
        const double u = real(-10, 10), v = real(-10, 10);
        const long K = gb2d::default_sum_K(p, q, u, v);
        EXPECT_LE(std::abs(gb2d::sum_rule_total(p, q, u, v, K)), 1e-10);
        EXPECT_LE(std::abs(gb2d::sum_rule_squares(p, q, u, v, K)), 1e-10);
        EXPECT_LE(std::abs(gb2d::sum_rule_phase12(u, v, gb2d::default_sum_K(1, 2, u, v))), 1e-10);
        EXPECT_LE(std::abs(gb2d::recurrence_residual(n, p, q, u, v)), 1e-9);
        EXPECT_LE(std::abs(gb2d::pde_residual_coupled(n, p, q, u, v)) / gb2d::pde_scale(n, p, q, u, v), 1e-10);
        const double u2 = real(-5, 5), v2 = real(-5, 5);
        EXPECT_LE(std::abs(gb2d::addition_residual(n, p, q, u / 2, v / 2, u2, v2,
                                                   gb2d::default_bilinear_K(p, q, u / 2, v / 2, u2, v2))),
                  1e-10);
    }
}

TEST_F(RelationSweep, GrafBranchSafeDraws) {
    for (int k = 0; k < 200; ++k) {
        const long q = integer(2, 5), n = integer(-6, 6);
        const double u2 = real(0.5, 5), v2 = real(0.5, 4);
        const double u1 = real(-0.8, 0.8) * u2, v1 = real(-0.8, 0.8) * v2;
        const double theta = real(-pi, pi);
        const auto r = gb2d::graf_residual(n, q, u1, v1, u2, v2, theta, gb2d::default_bilinear_K(1, q, u1, v1, u2, v2));
        ASSERT_FALSE(r.branch_warning);
        EXPECT_LE(std::abs(r.residual), 1e-9);
    }
}
