#pragma once

// Residuals of the sum rules, addition theorems, derivative rules,
// recurrence and partial differential equations satisfied by J_n^{p,q}.
// Every function returns LHS - RHS, which vanishes in exact arithmetic.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <complex>
#include <numbers>
#include <utility>

#include "gb2d/bessel.hpp"
#include "gb2d/core.hpp"
#include "gb2d/errors.hpp"

namespace gb2d {

using cplx = std::complex<double>;

namespace detail {

// Coefficients of exp(i phi(t)) fall off beyond n = max |phi'| on the Airy
// scale |phi'''|^(1/3), so the margin grows with the cube root.
inline long truncation(double width, double curvature, long pad) {
    return static_cast<long>(std::ceil(width + 8.0 * std::cbrt(curvature))) + pad;
}

}  // namespace detail

/// Suggested truncation for sums over n at a single point.
inline long default_sum_K(long p, long q, double u, double v) {
    const double P = std::abs(static_cast<double>(p)), Q = std::abs(static_cast<double>(q));
    return detail::truncation(P * std::abs(u) + Q * std::abs(v), P * P * P * std::abs(u) + Q * Q * Q * std::abs(v),
                              20);
}

/// Suggested truncation for bilinear sums over two points.
inline long default_bilinear_K(long p, long q, double u1, double v1, double u2, double v2) {
    const double P = std::abs(static_cast<double>(p)), Q = std::abs(static_cast<double>(q));
    const double U = std::abs(u1) + std::abs(u2), V = std::abs(v1) + std::abs(v2);
    return detail::truncation(P * U + Q * V, P * P * P * U + Q * Q * Q * V, 30);
}

inline double sum_rule_total(long p, long q, double u, double v, long K) {
    const PointEvaluator J(p, q, u, v);
    double s = 0.0;
    for (long n = -K; n <= K; ++n) s += J(n);
    return s - 1.0;
}

inline double sum_rule_squares(long p, long q, double u, double v, long K) {
    const PointEvaluator J(p, q, u, v);
    double s = 0.0;
    for (long n = -K; n <= K; ++n) {
        const double x = J(n);
        s += x * x;
    }
    return s - 1.0;
}

/// sum_n i^n J_n^{1,2}(u,v) - e^{iu}
inline cplx sum_rule_phase12(double u, double v, long K) {
    const PointEvaluator J(1, 2, u, v);
    static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx s = 0.0;
    for (long n = -K; n <= K; ++n) s += powers[((n % 4) + 4) % 4] * J(n);
    return s - std::exp(cplx(0.0, u));
}

struct KapteynResult {
    double residual = 0.0;
    long K = 0;
};

/// sum_n J_n^{p,q}(nu, nv) - 1/(1 - pu - qv), with K grown until max(3, p + q)
/// successive +-K pairs change the partial sum by less than 1e-10.
inline KapteynResult kapteyn_sum(long p, long q, double u, double v, long max_K = 20000) {
    validate(Index{0, p, q});
    if (std::abs(p * u) + std::abs(q * v) >= 1.0)
        throw domain_error("kapteyn_sum: requires |pu| + |qv| < 1");
    double s = 1.0;  // n = 0 term: J_0(0,0) = 1
    // Terms are quasi-periodic in K with period up to p + q, so the stop
    // window has to cover a full period.
    const long window = std::max(3L, std::labs(p) + std::labs(q));
    long calm = 0;
    long K = 0;
    while (calm < window) {
        if (K >= max_K) throw tolerance_error("kapteyn_sum: no convergence within max_K", std::abs(s));
        ++K;
        const double kd = static_cast<double>(K);
        const double change = eval(Index{K, p, q}, kd * u, kd * v) + eval(Index{-K, p, q}, -kd * u, -kd * v);
        s += change;
        calm = std::abs(change) < 1e-10 ? calm + 1 : 0;
    }
    return {s - 1.0 / (1.0 - p * u - q * v), K};
}

/// J_n(u1+u2, v1+v2) - sum_k J_{n-k}(u1,v1) J_k(u2,v2)
inline double addition_residual(long n, long p, long q, double u1, double v1, double u2, double v2,
                                long K) {
    const PointEvaluator A(p, q, u1, v1), B(p, q, u2, v2);
    double s = 0.0;
    for (long k = -K; k <= K; ++k) s += A(n - k) * B(k);
    return eval(Index{n, p, q}, u1 + u2, v1 + v2) - s;
}

struct GrafResult {
    cplx residual;
    bool branch_warning = false;
};

namespace detail {

// Argument of w(theta) = x2 - x1 e^{i m theta}, followed continuously from theta = 0.
// Sets `unsafe` if w(0) <= 0 or the ratio conj(w)/w could leave the principal
// branch (|arg w| >= pi/2) anywhere along the path.
inline double tracked_angle(double x1, double x2, long m, double theta, bool& unsafe) {
    const cplx w0 = x2 - x1;
    if (w0.real() <= 0.0) unsafe = true;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(theta * m) / 1e-2)));
    double angle = std::arg(w0);
    cplx prev = w0;
    for (int s = 1; s <= steps; ++s) {
        const double th = theta * s / steps;
        const cplx w = x2 - x1 * std::exp(cplx(0.0, m * th));
        if (w == 0.0 || prev == 0.0) {
            // The angle is undefined on a zero of w; the path is not trackable.
            unsafe = true;
            prev = w;
            continue;
        }
        angle += std::arg(w / prev);
        prev = w;
        if (std::abs(angle) >= std::numbers::pi / 2) unsafe = true;
    }
    return angle;
}

}  // namespace detail

/// Graf-type theorem for p = 1:
///   sum_l tau^l J_l(u1,v1) J_{n+l}(u2,v2)
///     = sum_l R_u^{(n-ql)/2} R_v^{l/2} J_{n-ql}(g_u) J_l(g_v),
/// with tau = e^{i theta}, R_x = (x2 - x1/t)/(x2 - x1 t), g_x = sqrt((x2 - x1 t)(x2 - x1/t)),
/// t = tau for u and tau^q for v.  For unimodular tau, R_x = e^{-2i alpha_x} with
/// alpha_x = arg(x2 - x1 t) tracked from theta = 0, and g_x = |x2 - x1 t|.
inline GrafResult graf_residual(long n, long q, double u1, double v1, double u2, double v2,
                                double theta, long K) {
    const cplx tau = std::exp(cplx(0.0, theta));
    const PointEvaluator A(1, q, u1, v1), B(1, q, u2, v2);
    cplx lhs = 0.0;
    cplx tl = detail::integer_power(tau, -K);
    for (long l = -K; l <= K; ++l) {
        lhs += tl * A(l) * B(n + l);
        tl *= tau;
    }

    GrafResult out;
    const double alpha_u = detail::tracked_angle(u1, u2, 1, theta, out.branch_warning);
    const double alpha_v = detail::tracked_angle(v1, v2, q, theta, out.branch_warning);
    const double gu = std::abs(u2 - u1 * tau);
    const double gv = std::abs(v2 - v1 * std::exp(cplx(0.0, q * theta)));
    const BesselTable Ju(gu), Jv(gv);
    cplx rhs = 0.0;
    for (long l = -K; l <= K; ++l) {
        const long m = n - q * l;
        const double bu = Ju(m), bv = Jv(l);
        if (bu == 0.0 || bv == 0.0) continue;
        const double phase = -static_cast<double>(m) * alpha_u - static_cast<double>(l) * alpha_v;
        rhs += std::exp(cplx(0.0, phase)) * bu * bv;
    }
    out.residual = lhs - rhs;
    return out;
}

/// 2 dJ/du by central difference minus (J_{n-p} - J_{n+p}).
inline double derivative_residual_u(long n, long p, long q, double u, double v, double h) {
    const double fd = (eval(Index{n, p, q}, u + h, v) - eval(Index{n, p, q}, u - h, v)) / h;
    const PointEvaluator J(p, q, u, v);
    return fd - (J(n - p) - J(n + p));
}

/// 2 dJ/dv by central difference minus (J_{n-q} - J_{n+q}).
inline double derivative_residual_v(long n, long p, long q, double u, double v, double h) {
    const double fd = (eval(Index{n, p, q}, u, v + h) - eval(Index{n, p, q}, u, v - h)) / h;
    const PointEvaluator J(p, q, u, v);
    return fd - (J(n - q) - J(n + q));
}

/// pu(J_{n-p} + J_{n+p}) + qv(J_{n-q} + J_{n+q}) - 2n J_n
inline double recurrence_residual(long n, long p, long q, double u, double v) {
    const PointEvaluator J(p, q, u, v);
    return p * u * (J(n - p) + J(n + p)) + q * v * (J(n - q) + J(n + q)) - 2.0 * n * J(n);
}

/// Residuals of 2 d_u J = J_{n-1} - J_{n+1} and 2 d_v J = e^{i delta} J_{n-q} - e^{-i delta} J_{n+q}
/// for J = J_n^{1,q}(u,v;e^{i delta}), derivatives by central difference.
inline std::pair<cplx, cplx> param_derivative_residuals(long n, long q, double u, double v,
                                                        double delta, double h) {
    const cplx tau = std::exp(cplx(0.0, delta));
    auto at = [&](double uu, double vv) {
        return eval_param(Index{n, 1, q}, uu, vv, tau, default_series_tol).value;
    };
    const ParamPointEvaluator J(1, q, u, v, tau);
    const cplx du = (at(u + h, v) - at(u - h, v)) / h;
    const cplx dv = (at(u, v + h) - at(u, v - h)) / h;
    return {du - (J(n - 1) - J(n + 1)), dv - (tau * J(n - q) - J(n + q) / tau)};
}

/// Normalization for the PDE residuals: 1 + n^2 + (p|u| + q|v|)^2.
inline double pde_scale(long n, long p, long q, double u, double v) {
    const double w = std::abs(p * u) + std::abs(q * v);
    return 1.0 + static_cast<double>(n) * n + w * w;
}

namespace detail {

// Exact partial derivatives of J_n^{p,q} through the shift rules
//   2 d_u J_n = J_{n-p} - J_{n+p},   2 d_v J_n = J_{n-q} - J_{n+q}.
template <class F>
struct ShiftDerivatives {
    double f, fu, fv, fuu, fvv, fuv;

    ShiftDerivatives(const F& J, long n, long p, long q) {
        f = J(n);
        fu = 0.5 * (J(n - p) - J(n + p));
        fv = 0.5 * (J(n - q) - J(n + q));
        fuu = 0.25 * (J(n - 2 * p) - 2.0 * f + J(n + 2 * p));
        fvv = 0.25 * (J(n - 2 * q) - 2.0 * f + J(n + 2 * q));
        fuv = 0.25 * (J(n - p - q) - J(n - p + q) - J(n + p - q) + J(n + p + q));
    }
};

}  // namespace detail

/// (d_u^2 - d_v^2) J_n^{1,1}(u,v)
inline double pde_residual_wave(long n, double u, double v) {
    const PointEvaluator J(1, 1, u, v);
    const detail::ShiftDerivatives<PointEvaluator> d(J, n, 1, 1);
    return d.fuu - d.fvv;
}

/// i d_v J - (-2 d_u^2 - 1) J for J = J_n^{1,2}(u,v;i).
inline cplx pde_residual_schroedinger(long n, double u, double v) {
    const cplx I(0.0, 1.0);
    const ParamPointEvaluator J(1, 2, u, v, I);
    const cplx f = J(n);
    const cplx fv = 0.5 * (I * J(n - 2) - J(n + 2) / I);
    const cplx fuu = 0.25 * (J(n - 2) - 2.0 * f + J(n + 2));
    return I * fv - (-2.0 * fuu - f);
}

/// With D^2 = p^2u^2 d_uu + 2pq uv d_uv + q^2v^2 d_vv:
///   [D^2 + p^2 u d_u + q^2 v d_v + p^2u^2 + q^2v^2 - n^2] J_n
///     = -pq uv (J_{n-p+q} + J_{n+p-q}).
inline double pde_residual_coupled(long n, long p, long q, double u, double v) {
    const PointEvaluator J(p, q, u, v);
    const detail::ShiftDerivatives<PointEvaluator> d(J, n, p, q);
    const double P = static_cast<double>(p), Q = static_cast<double>(q);
    const double lhs = P * P * u * u * d.fuu + 2.0 * P * Q * u * v * d.fuv + Q * Q * v * v * d.fvv +
                       P * P * u * d.fu + Q * Q * v * d.fv +
                       (P * P * u * u + Q * Q * v * v - static_cast<double>(n) * n) * d.f;
    const double rhs = -P * Q * u * v * (J(n - p + q) + J(n + p - q));
    return lhs - rhs;
}

/// [u^2 d_uu + 2uv d_uv + v^2 d_vv + u d_u + v d_v + (u +- v)^2 - n^2] J_n^{1,+-1}(u,v)
inline double pde_residual_decoupled_pm1(long n, int sign, double u, double v) {
    if (sign != 1 && sign != -1) throw domain_error("pde_residual_decoupled_pm1: sign must be +1 or -1");
    const PointEvaluator J(1, sign, u, v);
    const detail::ShiftDerivatives<PointEvaluator> d(J, n, 1, sign);
    const double w = u + sign * v;
    return u * u * d.fuu + 2.0 * u * v * d.fuv + v * v * d.fvv + u * d.fu + v * d.fv +
           (w * w - static_cast<double>(n) * n) * d.f;
}

}  // namespace gb2d
