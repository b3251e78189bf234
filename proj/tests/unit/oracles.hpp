#pragma once

// Reference computations that do not go through the library's evaluators.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// (1/pi) int_0^pi cos(n t - x sin t) dt by the trapezoid rule on [0, 2 pi).
inline double bessel_quadrature(int n, double x, int nodes = 4096) {
    long double s = 0.0L;
    for (int k = 0; k < nodes; ++k) {
        const long double t = 2.0L * std::numbers::pi_v<long double> * k / nodes;
        s += std::cos(n * t - x * std::sin(t));
    }
    return static_cast<double>(s / nodes);
}

// Power series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!) in long double, for small x.
inline long double bessel_series(int n, long double x) {
    const int an = n < 0 ? -n : n;
    long double term = 1.0L;
    for (int k = 1; k <= an; ++k) term *= (x / 2.0L) / k;
    long double s = term;
    for (int k = 1; k < 200; ++k) {
        term *= -(x / 2.0L) * (x / 2.0L) / (static_cast<long double>(k) * (k + an));
        s += term;
        if (std::fabs(term) < 1e-30L * std::fabs(s)) break;
    }
    return (n < 0 && an % 2) ? -s : s;
}

// (1/2pi) int exp(i(u sin pt + v sin(qt + delta) - nt)) dt, trapezoid rule.
inline std::complex<double> gb2d_quadrature(long n, long p, long q, double u, double v, int nodes = 4096,
                                            double delta = 0.0) {
    std::complex<long double> s = 0.0L;
    for (int k = 0; k < nodes; ++k) {
        const long double t = 2.0L * std::numbers::pi_v<long double> * k / nodes;
        const long double ph = u * std::sin(p * t) + v * std::sin(q * t + delta) - n * t;
        s += std::complex<long double>(std::cos(ph), std::sin(ph));
    }
    s /= static_cast<long double>(nodes);
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

// First root of f in [a, b] by bisection.
template <class F>
double bisect(F f, double a, double b, double tol = 1e-15) {
    double fa = f(a);
    while (b - a > tol * std::max(1.0, std::abs(a))) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

using rational = boost::multiprecision::cpp_rational;

// Coefficient of z^n u^l v^m in exp(u/2 (z^p - z^-p)) exp(v/2 (z^q - z^-q)),
// from the four exponential series multiplied out term by term.
inline rational generating_coefficient(int l, int m, long n, long p, long q) {
    auto fact = [](int k) {
        boost::multiprecision::cpp_int r = 1;
        for (int i = 2; i <= k; ++i) r *= i;
        return r;
    };
    rational total = 0;
    for (int alpha = 0; alpha <= l; ++alpha) {
        const int beta = l - alpha;
        for (int sigma = 0; sigma <= m; ++sigma) {
            const int zeta = m - sigma;
            if (p * (alpha - beta) + q * (sigma - zeta) != n) continue;
            const int sign = (beta + zeta) % 2 ? -1 : 1;
            total += rational(boost::multiprecision::cpp_int(sign),
                              fact(alpha) * fact(beta) * fact(sigma) * fact(zeta) *
                                  (boost::multiprecision::cpp_int(1) << (l + m)));
        }
    }
    return total;
}

// Sign changes of f on a uniform grid of `samples` points over (-pi, pi].
template <class F>
std::vector<double> sign_changes(F f, int samples) {
    std::vector<double> out;
    const double h = 2.0 * pi / samples;
    double t0 = -pi, f0 = f(t0);
    for (int k = 1; k <= samples; ++k) {
        const double t1 = -pi + k * h, f1 = f(t1);
        if ((f0 < 0) != (f1 < 0)) out.push_back(0.5 * (t0 + t1));
        t0 = t1;
        f0 = f1;
    }
    return out;
}

}  // namespace oracle
