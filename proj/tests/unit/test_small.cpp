#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "gb2d/core.hpp"
#include "gb2d/small.hpp"
#include "oracles.hpp"

using gb2d::rational;

TEST(CoeffA, Examples) {
    EXPECT_EQ(gb2d::coeff_a(0, 0, 0, 1, 2), rational(1));
    EXPECT_EQ(gb2d::coeff_a(1, 1, 3, 1, 2), rational(1));
    // J_4^{1,2}(u, 0) = J_4(u) has no u^2 term.
    EXPECT_EQ(gb2d::coeff_a(2, 0, 4, 1, 2), rational(0));
    EXPECT_EQ(oracle::generating_coefficient(2, 0, 4, 1, 2), rational(0));
}

TEST(CoeffA, MatchesGeneratingFunctionEnumeration) {
    for (long p = 1; p <= 5; ++p)
        for (long q = 1; q <= 5; ++q) {
            if (std::gcd(p, q) != 1) continue;
            for (long n = -8; n <= 8; ++n)
                for (int l = 0; l <= 8; ++l)
                    for (int m = 0; l + m <= 8; ++m) {
                        const rational want = oracle::generating_coefficient(l, m, n, p, q) *
                                              rational(boost::multiprecision::cpp_int(1) << (l + m));
                        EXPECT_EQ(gb2d::coeff_a(l, m, n, p, q), want) << l << m << ' ' << n << p << q;
                    }
        }
}

TEST(Expand, LowOrderExamples) {
    const auto j3 = gb2d::expand(3, 1, 2, 2);
    ASSERT_EQ(j3.terms.size(), 1u);
    EXPECT_EQ(j3.terms[0].u_exponent, 1);
    EXPECT_EQ(j3.terms[0].v_exponent, 1);
    EXPECT_EQ(j3.terms[0].coefficient, rational(1, 4));

    const auto j0 = gb2d::expand(0, 1, 2, 0);
    ASSERT_EQ(j0.terms.size(), 1u);
    EXPECT_EQ(j0.terms[0].coefficient, rational(1));
}

// The lowest-degree term of J_4^{1,2} is v^2 times J_2(v)'s leading 1/8.
TEST(Expand, J4LeadingTermIsVSquaredOverEight) {
    const auto j4 = gb2d::expand(4, 1, 2, 2);
    ASSERT_EQ(j4.terms.size(), 1u);
    EXPECT_EQ(j4.terms[0].u_exponent, 0);
    EXPECT_EQ(j4.terms[0].v_exponent, 2);
    EXPECT_EQ(j4.terms[0].coefficient, rational(1, 8));
    const double v = 1e-3;
    EXPECT_NEAR(gb2d::eval({4, 1, 2}, 0.0, v) / (v * v), 0.125, 1e-6);
}

TEST(Expand, TermsAreUniqueNonzeroAndComplete) {
    const auto e = gb2d::expand(5, 2, 3, 12);
    std::set<std::pair<int, int>> seen;
    for (const auto& t : e.terms) {
        EXPECT_NE(t.coefficient, 0);
        EXPECT_LE(t.u_exponent + t.v_exponent, 12);
        EXPECT_TRUE(seen.insert({t.u_exponent, t.v_exponent}).second);
    }
    for (int l = 0; l <= 12; ++l)
        for (int m = 0; l + m <= 12; ++m)
            if (oracle::generating_coefficient(l, m, 5, 2, 3) != 0) EXPECT_TRUE(seen.count({l, m})) << l << ' ' << m;
}

TEST(Expand, OrderLimit) {
    EXPECT_NO_THROW(gb2d::expand(0, 1, 2, 40));
    EXPECT_THROW(gb2d::expand(0, 1, 2, 41), gb2d::domain_error);
}

// Truncation error of the order-J polynomial scales like r^(J+1).
TEST(Expand, ConvergenceOrder) {
    for (auto [n, p, q] : {std::tuple{0L, 1L, 2L}, {3L, 1L, 2L}, {2L, 2L, 3L}, {-1L, 1L, 3L}}) {
        for (int J : {4, 6, 8}) {
            const auto poly = gb2d::expand(n, p, q, J);
            auto err = [&](double r) {
                return std::abs(gb2d::eval({n, p, q}, 0.8 * r, -0.6 * r) - poly(0.8 * r, -0.6 * r));
            };
            const double r = 0.05;
            const double e1 = err(r), e2 = err(r / 2);
            if (e1 < 1e-15) continue;
            const double ratio = e1 / e2;
            EXPECT_GT(ratio, std::pow(2.0, J + 1) * 0.7) << n << ' ' << J;
        }
    }
}

TEST(Expand, TwoTermClosedFormFor23Over5) {
    // u^2 v^4 / (2^7 2! 4!) (u/3 + v/5)
    const auto e = gb2d::expand(23, 1, 5, 7);
    ASSERT_EQ(e.terms.size(), 2u);
    const rational base = rational(1, 128 * 2 * 24);
    EXPECT_EQ(e.terms[0].u_exponent, 3);
    EXPECT_EQ(e.terms[0].v_exponent, 4);
    EXPECT_EQ(e.terms[0].coefficient, base / 3);
    EXPECT_EQ(e.terms[1].u_exponent, 2);
    EXPECT_EQ(e.terms[1].v_exponent, 5);
    EXPECT_EQ(e.terms[1].coefficient, base / 5);
}

TEST(LeadingTerm, Examples) {
    const auto a = gb2d::leading_term(3, 2);
    EXPECT_EQ((std::array{a.alpha, a.beta, a.sigma, a.zeta}), (std::array{1, 0, 1, 0}));
    EXPECT_FALSE(a.two_term);
    const auto b = gb2d::leading_term(4, 2);
    EXPECT_EQ((std::array{b.alpha, b.beta, b.sigma, b.zeta}), (std::array{0, 0, 2, 0}));
    const auto c = gb2d::leading_term(23, 5);
    EXPECT_TRUE(c.two_term);
    EXPECT_EQ(c.nu, 2);
    EXPECT_EQ(c.mu, 4);
    EXPECT_THROW(gb2d::leading_term(3, 1), gb2d::domain_error);
}

// Minimal-order tuples with n = (alpha - beta) + q (sigma - zeta), by enumeration.
static std::set<std::array<int, 4>> minimal_tuples(long n, long q) {
    for (int j = 0;; ++j) {
        std::set<std::array<int, 4>> found;
        for (int a = 0; a <= j; ++a)
            for (int b = 0; a + b <= j; ++b)
                for (int s = 0; a + b + s <= j; ++s) {
                    const int z = j - a - b - s;
                    if ((a - b) + q * (s - z) == n) found.insert({a, b, s, z});
                }
        if (!found.empty()) return found;
    }
}

TEST(LeadingTerm, MatchesMinimalOrderEnumeration) {
    for (long q = 2; q <= 9; ++q)
        for (long n = 0; n <= 50; ++n) {
            const auto want = minimal_tuples(n, q);
            const auto t = gb2d::leading_term(n, q);
            std::set<std::array<int, 4>> got{{t.alpha, t.beta, t.sigma, t.zeta}};
            if (t.companion) got.insert(*t.companion);
            EXPECT_EQ(got, want) << n << ' ' << q;
            EXPECT_EQ(t.two_term, want.size() == 2) << n << ' ' << q;
            for (const auto& w : want) EXPECT_EQ(w[0] + w[1] + w[2] + w[3], t.order());
        }
}

TEST(LeadingTerm, NegativeOrderSharesExponents) {
    for (long n = 1; n <= 20; ++n) {
        const auto a = gb2d::leading_term(n, 3), b = gb2d::leading_term(-n, 3);
        EXPECT_EQ(a.order(), b.order());
        EXPECT_EQ(a.two_term, b.two_term);
    }
}

TEST(NodalSlope, Examples) {
    EXPECT_DOUBLE_EQ(*gb2d::small_nodal_slope(23, 5), -5.0 / 3.0);
    EXPECT_FALSE(gb2d::small_nodal_slope(3, 2).has_value());
    EXPECT_DOUBLE_EQ(*gb2d::small_nodal_slope(8, 5), -2.0 / 3.0);
}

// Odd nu: J_5^{1,3} ~ uv(u - v)/16, a zero line of slope +1.
TEST(NodalSlope, OddNuHasPositiveSlope) {
    EXPECT_DOUBLE_EQ(*gb2d::small_nodal_slope(5, 3), 1.0);
    const double r = 1e-3;
    EXPECT_LT(gb2d::eval({5, 1, 3}, r, 0.9 * r) * gb2d::eval({5, 1, 3}, r, 1.1 * r), 0.0);
}

// Sign of J_23^{1,5} around the circle of radius 1e-2 changes across the predicted line.
TEST(NodalSlope, SignChangeOnSmallCircle) {
    const double r = 1e-2, predicted = std::atan(-5.0 / 3.0);
    auto f = [&](double a) { return gb2d::eval({23, 1, 5}, r * std::cos(a), r * std::sin(a)); };
    // Bracket near the predicted angle in the second quadrant (u < 0, v > 0).
    const double a0 = predicted + oracle::pi;
    const double root = oracle::bisect(f, a0 - 0.2, a0 + 0.2, 1e-12);
    EXPECT_LT(std::abs(root - a0) * 180.0 / oracle::pi, 2.0);
}
