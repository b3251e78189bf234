#pragma once

// Ordinary Bessel functions J_m(x) of integer order.
//
// All values come from one downward recurrence per argument, normalized
// with J_0^2 + 2 sum_{k>=1} J_k^2 = 1.  The starting order depends on x only,
// so a single order and a whole row computed for the same x agree bitwise.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "gb2d/errors.hpp"

namespace gb2d {

inline constexpr double max_bessel_argument = 1e6;
inline constexpr int max_bessel_order = 100000;

/// J_m(x) for consecutive orders m = order_min .. order_max.
struct BesselRow {
    int order_min = 0;
    int order_max = 0;
    double argument = 0.0;
    std::vector<double> values;

    double at(int m) const { return values.at(static_cast<std::size_t>(m - order_min)); }
};

namespace detail {

// Values below this are flushed to zero.
inline constexpr double underflow_floor = 1e-300;

inline void check_bessel_domain(long order, double x) {
    if (!std::isfinite(x) || std::abs(x) > max_bessel_argument)
        throw domain_error("bessel: |x| must be finite and <= 1e6, got " + std::to_string(x));
    if (std::labs(order) > max_bessel_order)
        throw domain_error("bessel: |order| must be <= 1e5, got " + std::to_string(order));
}

// Debye exponent m(alpha - tanh alpha), cosh alpha = m/x, for m > x > 0.
inline double debye_decay(double m, double x) {
    const double a = std::acosh(m / x);
    return m * (a - std::tanh(a));
}

// Highest order whose J_m(x) can exceed the underflow floor (x > 0).
inline int significant_order_limit(double x) {
    constexpr double cutoff = 720.0;  // e^-720 ~ 1e-313
    int lo = static_cast<int>(std::floor(x));
    if (debye_decay(lo + 1.0, x) >= cutoff) return lo;
    int hi = lo + 1;
    int step = 1;
    while (debye_decay(hi, x) < cutoff) {
        lo = hi;
        step *= 2;
        hi += step;
    }
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (debye_decay(mid, x) < cutoff)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Power series for tiny x: J_m(x) = (x/2)^m/m! (1 - (x/2)^2/(m+1)) to double precision.
inline std::vector<double> tiny_argument_row(double x, int top) {
    std::vector<double> out(static_cast<std::size_t>(top) + 1, 0.0);
    const double h = 0.5 * x;
    double t = 1.0;
    for (int m = 0; m <= top; ++m) {
        if (m > 0) t *= h / m;
        if (t < underflow_floor) break;
        out[m] = t * (1.0 - h * h / (m + 1));
    }
    return out;
}

// J_0 .. J_top at x >= 0.
inline std::vector<double> nonnegative_row(double x, int top) {
    std::vector<double> out(static_cast<std::size_t>(top) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (x < 1e-8) return tiny_argument_row(x, top);

    const int limit = significant_order_limit(x);
    const int last = std::min(top, limit);
    const double alpha = std::acosh((limit + 1.0) / x);
    const int start = limit + 10 + static_cast<int>(std::ceil(20.0 / alpha));

    constexpr double big = 0x1p300;
    constexpr double shrink = 0x1p-300;

    std::vector<double> raw(static_cast<std::size_t>(last) + 1);
    std::vector<int> scale_at(static_cast<std::size_t>(last) + 1);
    int rescales = 0;
    double above = 0.0;
    double cur = 1.0;
    double norm = 0.0;
    for (int k = start; k >= 1; --k) {
        if (k <= last) {
            raw[k] = cur;
            scale_at[k] = rescales;
        }
        norm += 2.0 * cur * cur;
        const double below = (2.0 * k / x) * cur - above;
        above = cur;
        cur = below;
        if (std::abs(cur) > big) {
            cur *= shrink;
            above *= shrink;
            norm *= shrink * shrink;
            ++rescales;
        }
    }
    raw[0] = cur;
    scale_at[0] = rescales;
    norm += cur * cur;

    const double inv = 1.0 / std::sqrt(norm);
    for (int k = 0; k <= last; ++k) {
        double value = raw[k] * inv;
        const int drop = rescales - scale_at[k];
        if (drop > 0) value = std::ldexp(value, -300 * drop);
        out[k] = std::abs(value) < underflow_floor ? 0.0 : value;
    }
    return out;
}

inline double parity(long m) { return (m % 2 == 0) ? 1.0 : -1.0; }

}  // namespace detail

/// J_m(x) for every integer m at a fixed argument, with J_{-m} and
/// negative x obtained by parity.  Orders past limit() are exactly zero.
class BesselTable {
public:
    BesselTable() : BesselTable(0.0) {}

    explicit BesselTable(double x) : x_(x) {
        detail::check_bessel_domain(0, x);
        const double ax = std::abs(x);
        limit_ = (ax == 0.0) ? 0 : (ax < 1e-8 ? 64 : detail::significant_order_limit(ax));
        values_ = detail::nonnegative_row(ax, limit_);
        negative_ = x < 0.0;
    }

    double argument() const { return x_; }
    int limit() const { return limit_; }

    double operator()(long m) const {
        const long am = m < 0 ? -m : m;
        if (am > limit_) return 0.0;
        double v = values_[static_cast<std::size_t>(am)];
        if (m < 0 && (am & 1)) v = -v;
        if (negative_ && (am & 1)) v = -v;
        return v;
    }

private:
    double x_ = 0.0;
    int limit_ = 0;
    bool negative_ = false;
    std::vector<double> values_;
};

inline double bessel_j(int order, double x) {
    detail::check_bessel_domain(order, x);
    const int am = std::abs(order);
    const double ax = std::abs(x);
    const std::vector<double> row = detail::nonnegative_row(ax, am);
    double v = row[static_cast<std::size_t>(am)];
    if ((am & 1) && (order < 0) != (x < 0.0)) v = -v;
    return v;
}

inline BesselRow bessel_row(int order_min, int order_max, double x) {
    if (order_min > order_max)
        throw domain_error("bessel_row: order_min > order_max");
    detail::check_bessel_domain(order_min, x);
    detail::check_bessel_domain(order_max, x);
    const int top = std::max(std::abs(order_min), std::abs(order_max));
    const std::vector<double> row = detail::nonnegative_row(std::abs(x), top);

    BesselRow out;
    out.order_min = order_min;
    out.order_max = order_max;
    out.argument = x;
    out.values.reserve(static_cast<std::size_t>(order_max - order_min) + 1);
    for (int m = order_min; m <= order_max; ++m) {
        const int am = std::abs(m);
        double v = row[static_cast<std::size_t>(am)];
        if ((am & 1) && (m < 0) != (x < 0.0)) v = -v;
        out.values.push_back(v);
    }
    return out;
}

}  // namespace gb2d
