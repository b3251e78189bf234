#pragma once

// Dispatching evaluator for J_n^{p,q}(u,v): canonical reduction, closed-form
// special cases, then the product series at tol 1e-12.

#include <cmath>
#include <complex>

#include "gb2d/bessel.hpp"
#include "gb2d/errors.hpp"
#include "gb2d/index.hpp"
#include "gb2d/quadrature.hpp"
#include "gb2d/series.hpp"

namespace gb2d {

inline constexpr double default_series_tol = 1e-12;

class Evaluator {
public:
    explicit Evaluator(const Index& idx) : c_(canonicalize(idx)) {
        if (!c_.is_zero) d_ = solve_diophantine(c_.base);
    }

    const CanonicalIndex& canonical() const { return c_; }

    /// The v at which the canonical base index is evaluated.
    double effective_v(double v) const { return c_.negate_v ? -v : v; }

    double operator()(double u, double v) const {
        detail::check_series_args(u, v, default_series_tol);
        if (c_.is_zero) return 0.0;
        const double ve = effective_v(v);
        const long n = c_.base.n, p = c_.base.p, q = c_.base.q;
        if (u == 0.0 && ve == 0.0) return n == 0 ? c_.sign : 0.0;
        if (u == 0.0) return n % q == 0 ? c_.sign * bessel_j(static_cast<int>(n / q), ve) : 0.0;
        if (ve == 0.0) return n % p == 0 ? c_.sign * bessel_j(static_cast<int>(n / p), u) : 0.0;
        if (p == 1 && q == 1) return c_.sign * bessel_j(static_cast<int>(n), u + ve);
        const BesselTable ju(u), jv(ve);
        return c_.sign * series(ju, jv);
    }

    /// Same value from tables built at u and at effective_v(v).
    double from_tables(const BesselTable& ju, const BesselTable& jv) const {
        if (c_.is_zero) return 0.0;
        const double u = ju.argument(), ve = jv.argument();
        const long n = c_.base.n, p = c_.base.p, q = c_.base.q;
        if (u == 0.0 && ve == 0.0) return n == 0 ? c_.sign : 0.0;
        if (u == 0.0) return n % q == 0 ? c_.sign * jv(n / q) : 0.0;
        if (ve == 0.0) return n % p == 0 ? c_.sign * ju(n / p) : 0.0;
        if (p == 1 && q == 1) return c_.sign * bessel_j(static_cast<int>(n), u + ve);
        return c_.sign * series(ju, jv);
    }

private:
    double series(const BesselTable& ju, const BesselTable& jv) const {
        return detail::product_series<double>(ju, jv, d_.M, d_.N, c_.base.p, c_.base.q, 1.0,
                                              default_series_tol)
            .value;
    }

    CanonicalIndex c_;
    DiophantineSolution d_;
};

inline double eval(const Index& idx, double u, double v) { return Evaluator(idx)(u, v); }

/// J_n^{p,q}(u,v) for many n at one fixed (p, q, u, v), sharing the Bessel tables.
class PointEvaluator {
public:
    PointEvaluator(long p, long q, double u, double v)
        : p_(p), q_(q), ju_(u), jv_(v), jv_neg_(-v) {
        validate(Index{0, p, q});
        detail::check_series_args(u, v, default_series_tol);
    }

    double operator()(long n) const {
        const Evaluator e(Index{n, p_, q_});
        return e.from_tables(ju_, e.canonical().negate_v ? jv_neg_ : jv_);
    }

private:
    long p_, q_;
    BesselTable ju_, jv_, jv_neg_;
};

/// J_n^{p,q}(u,v;tau) for many n at fixed (p, q, u, v, tau).
class ParamPointEvaluator {
public:
    ParamPointEvaluator(long p, long q, double u, double v, std::complex<double> tau)
        : p_(p), q_(q), tau_(tau), ju_(u), jv_(v) {
        // Validates tau and the argument ranges once.
        eval_param(Index{0, p, q}, u, v, tau, default_series_tol);
    }

    std::complex<double> operator()(long n) const {
        const long mu = std::gcd(p_, q_);
        if (n % mu != 0) return 0.0;
        const Index red{n / mu, p_ / mu, q_ / mu};
        const DiophantineSolution d =
            red.p == 1 ? DiophantineSolution{red.n, 0} : solve_diophantine(red);
        return detail::product_series<std::complex<double>>(ju_, jv_, d.M, d.N, red.p, red.q, tau_,
                                                            default_series_tol)
            .value;
    }

private:
    long p_, q_;
    std::complex<double> tau_;
    BesselTable ju_, jv_;
};

}  // namespace gb2d
