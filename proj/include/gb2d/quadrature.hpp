#pragma once

// Trapezoidal rule for the periodic integral representations.  The
// integrands are entire and 2pi-periodic, so the error falls geometrically
// once the node count exceeds the Fourier width of the integrand.

#include <cmath>
#include <complex>
#include <numbers>

#include "gb2d/errors.hpp"
#include "gb2d/index.hpp"

namespace gb2d {

struct QuadratureResult {
    double value = 0.0;
    double imaginary = 0.0;  // zero in exact arithmetic; diagnostic only
    long nodes = 0;
};

namespace detail {

inline void check_nodes(long nodes) {
    if (nodes < 16) throw domain_error("quadrature: nodes must be >= 16");
}

template <class Phase>
std::complex<double> periodic_trapezoid(long nodes, Phase phase) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    double re = 0.0, im = 0.0;
    for (long j = 0; j < nodes; ++j) {
        const double t = -std::numbers::pi + h * static_cast<double>(j);
        const double ph = phase(t);
        re += std::cos(ph);
        im += std::sin(ph);
    }
    return {re / static_cast<double>(nodes), im / static_cast<double>(nodes)};
}

}  // namespace detail

/// Power of two >= 8 (p|u| + q|v| + |n| + 10).
inline long auto_nodes(const Index& idx, double u, double v) {
    const double width = std::abs(static_cast<double>(idx.p)) * std::abs(u) +
                         std::abs(static_cast<double>(idx.q)) * std::abs(v) +
                         std::abs(static_cast<double>(idx.n)) + 10.0;
    long nodes = 16;
    while (static_cast<double>(nodes) < 8.0 * width) nodes *= 2;
    return nodes;
}

inline QuadratureResult eval_quadrature(const Index& idx, double u, double v, long nodes) {
    validate(idx);
    detail::check_nodes(nodes);
    const double p = static_cast<double>(idx.p), q = static_cast<double>(idx.q);
    const double n = static_cast<double>(idx.n);
    const auto z = detail::periodic_trapezoid(
        nodes, [&](double t) { return u * std::sin(p * t) + v * std::sin(q * t) - n * t; });
    return {z.real(), z.imag(), nodes};
}

inline QuadratureResult eval_quadrature(const Index& idx, double u, double v) {
    return eval_quadrature(idx, u, v, auto_nodes(idx, u, v));
}

/// (1/2pi) int exp(i(u sin t + v sin(qt + delta) - nt)) dt.
inline std::complex<double> eval_param_quadrature(long n, long q, double u, double v, double delta,
                                                  long nodes) {
    if (q == 0) throw domain_error("eval_param_quadrature: q must be nonzero");
    detail::check_nodes(nodes);
    const double qd = static_cast<double>(q), nd = static_cast<double>(n);
    return detail::periodic_trapezoid(nodes, [&](double t) {
        return u * std::sin(t) + v * std::sin(qd * t + delta) - nd * t;
    });
}

}  // namespace gb2d
