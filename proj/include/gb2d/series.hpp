#pragma once

// Product-series evaluation
//     J_n^{p,q}(u,v;tau) = sum_k J_{M-qk}(u) J_{N+pk}(v) tau^k,   n = pM + qN.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "gb2d/bessel.hpp"
#include "gb2d/errors.hpp"
#include "gb2d/index.hpp"

namespace gb2d {

inline constexpr double max_series_argument = 1e4;

template <class T>
struct BasicSeriesResult {
    T value{};
    long terms_used = 0;
    double tail_bound = 0.0;
};

using SeriesResult = BasicSeriesResult<double>;
using ParamSeriesResult = BasicSeriesResult<std::complex<double>>;

namespace detail {

inline void check_series_args(double u, double v, double tol) {
    if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > max_series_argument ||
        std::abs(v) > max_series_argument)
        throw domain_error("series: |u|, |v| must be <= 1e4");
    if (!(tol >= 1e-14)) throw domain_error("series: tol must be >= 1e-14");
}

template <class T>
T integer_power(T base, long e) {
    if (e < 0) return T(1) / integer_power(base, -e);
    T result(1);
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

// k-range [lo, hi] (real) where |c - s k| <= r, for s != 0.
inline void order_window(double c, double s, double r, double& lo, double& hi) {
    const double a = (c - r) / s, b = (c + r) / s;
    lo = std::min(a, b);
    hi = std::max(a, b);
}

/// Truncated product series given precomputed tables ju = J_.(u), jv = J_.(v).
///
/// The central window holds every k where both orders satisfy
/// |order| <= |arg| + 30.  Each side then extends until three consecutive
/// terms have an envelope (the Bessel factor that is past its turning point
/// and still moving away, times |tau|^k) below tol/100 and below 1e-17 of
/// the running sum.  tail_bound is 10 times the last three envelopes per side.
template <class T>
BasicSeriesResult<T> product_series(const BesselTable& ju, const BesselTable& jv, long M, long N,
                                    long p, long q, T tau, double tol) {
    const double au = std::abs(ju.argument());
    const double av = std::abs(jv.argument());
    const double abs_tau = std::abs(tau);
    const bool plain_tau = (tau == T(1));

    double lo_a, hi_a, lo_b, hi_b;
    order_window(static_cast<double>(M), static_cast<double>(q), au + 30.0, lo_a, hi_a);
    order_window(static_cast<double>(-N), static_cast<double>(-p), av + 30.0, lo_b, hi_b);
    long k_lo = static_cast<long>(std::ceil(std::max(lo_a, lo_b)));
    long k_hi = static_cast<long>(std::floor(std::min(hi_a, hi_b)));
    if (k_lo > k_hi) {
        // No common window: cover the valley between the two order-zero points.
        const double ka = static_cast<double>(M) / q;
        const double kb = -static_cast<double>(N) / p;
        k_lo = static_cast<long>(std::floor(std::min(ka, kb)));
        k_hi = static_cast<long>(std::ceil(std::max(ka, kb)));
    }

    auto order_a = [&](long k) { return M - q * k; };
    auto order_b = [&](long k) { return N + p * k; };

    BasicSeriesResult<T> out;
    T sum(0);
    T w = plain_tau ? T(1) : integer_power(tau, k_lo);
    for (long k = k_lo; k <= k_hi; ++k) {
        sum += ju(order_a(k)) * jv(order_b(k)) * w;
        if (!plain_tau) w *= tau;
        ++out.terms_used;
    }

    const long cap = 4L * (ju.limit() + jv.limit()) + 1000;
    double tail = 0.0;
    for (int dir : {+1, -1}) {
        long k = dir > 0 ? k_hi + 1 : k_lo - 1;
        T step = plain_tau ? T(1) : (dir > 0 ? tau : T(1) / tau);
        T wk = plain_tau ? T(1) : integer_power(tau, k);
        double recent[3] = {0.0, 0.0, 0.0};
        int calm = 0;
        long steps = 0;
        while (true) {
            const long a = order_a(k), b = order_b(k);
            const double fa = ju(a), fb = jv(b);
            sum += fa * fb * wk;
            ++out.terms_used;

            double env = std::numeric_limits<double>::infinity();
            const long a_next = order_a(k + dir), b_next = order_b(k + dir);
            if (std::abs(a) > au && std::labs(a_next) > std::labs(a)) env = std::min(env, std::abs(fa));
            if (std::abs(b) > av && std::labs(b_next) > std::labs(b)) env = std::min(env, std::abs(fb));
            if (!plain_tau && std::isfinite(env)) env *= std::pow(abs_tau, static_cast<double>(k));

            recent[steps % 3] = std::isfinite(env) ? env : 0.0;
            const bool quiet = std::isfinite(env) && env <= tol / 100.0 &&
                               (env <= 1e-17 * std::abs(sum) || env < 1e-300);
            calm = quiet ? calm + 1 : 0;
            ++steps;
            if (calm >= 3) break;
            if (steps > cap) {
                const double achieved = 10.0 * (recent[0] + recent[1] + recent[2]);
                throw tolerance_error("series: truncation did not settle (achieved bound " +
                                          std::to_string(achieved) + ")",
                                      achieved);
            }
            k += dir;
            if (!plain_tau) wk *= step;
        }
        tail += 10.0 * (recent[0] + recent[1] + recent[2]);
    }

    if (tail > tol)
        throw tolerance_error("series: tail bound " + std::to_string(tail) + " exceeds tolerance",
                              tail);
    out.value = sum;
    out.tail_bound = tail;
    return out;
}

}  // namespace detail

/// J_n^{p,q}(u,v) by the product series, reduced to coprime (p, q) first.
inline SeriesResult eval_series(const Index& idx, double u, double v, double tol) {
    validate(idx);
    detail::check_series_args(u, v, tol);
    const long mu = std::gcd(idx.p, idx.q);
    if (idx.n % mu != 0) return {};
    const Index red{idx.n / mu, idx.p / mu, idx.q / mu};
    const DiophantineSolution d = solve_diophantine(red);
    const BesselTable ju(u), jv(v);
    return detail::product_series<double>(ju, jv, d.M, d.N, red.p, red.q, 1.0, tol);
}

/// J_n^{p,q}(u,v;tau).  For p = 1 the representative (M,N) = (n,0) is used so
/// that tau = e^{i delta} matches the integral over exp(i(u sin t + v sin(qt+delta) - nt));
/// other p use the minimal-|M| representative.
inline ParamSeriesResult eval_param(const Index& idx, double u, double v, std::complex<double> tau,
                                    double tol) {
    validate(idx);
    detail::check_series_args(u, v, tol);
    const double r = std::abs(tau);
    const bool unimodular = std::abs(r - 1.0) <= 1e-12;
    const bool real_inside = tau.imag() == 0.0 && tau.real() != 0.0 && r <= 1.0;
    if (!std::isfinite(r) || !(unimodular || real_inside))
        throw domain_error("eval_param: tau must be unimodular or real with 0 < |tau| <= 1");
    const long mu = std::gcd(idx.p, idx.q);
    if (idx.n % mu != 0) return {};
    const Index red{idx.n / mu, idx.p / mu, idx.q / mu};
    const DiophantineSolution d = red.p == 1 ? DiophantineSolution{red.n, 0} : solve_diophantine(red);
    const BesselTable ju(u), jv(v);
    return detail::product_series<std::complex<double>>(ju, jv, d.M, d.N, red.p, red.q, tau, tol);
}

}  // namespace gb2d
