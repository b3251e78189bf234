#pragma once

// Small-argument polynomial expansion of J_n^{p,q}(u,v) with exact rational
// coefficients, leading-term selection for p = 1, and the nodal direction of
// the two-term leading case.

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gb2d/errors.hpp"
#include "gb2d/index.hpp"

namespace gb2d {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

struct PolyTerm {
    int u_exponent = 0;
    int v_exponent = 0;
    rational coefficient;
};

/// Terms ordered by total degree, then by u exponent.
struct PolyExpansion {
    std::vector<PolyTerm> terms;
    int max_total_order = 0;

    double operator()(double u, double v) const {
        double s = 0.0;
        for (const auto& t : terms)
            s += static_cast<double>(t.coefficient) * std::pow(u, t.u_exponent) *
                 std::pow(v, t.v_exponent);
        return s;
    }
};

namespace detail {

inline bigint factorial(int k) {
    bigint r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

}  // namespace detail

/// a_{l,m} = sum over f in [0,l], g in [0,m] with n = p(2f-l) + q(2g-m) of
///   (-1)^{(l-f)+(m-g)} / (f! (l-f)! g! (m-g)!).
/// l is the power of u and m the power of v; the monomial is a_{l,m} u^l v^m / 2^{l+m}.
inline rational coeff_a(int l, int m, long n, long p, long q) {
    validate(Index{n, p, q});
    if (l < 0 || m < 0) throw domain_error("coeff_a: exponents must be nonnegative");
    rational sum = 0;
    for (int f = 0; f <= l; ++f) {
        for (int g = 0; g <= m; ++g) {
            if (p * (2L * f - l) + q * (2L * g - m) != n) continue;
            const bigint den = detail::factorial(f) * detail::factorial(l - f) *
                               detail::factorial(g) * detail::factorial(m - g);
            const int sign = ((l - f) + (m - g)) % 2 == 0 ? 1 : -1;
            sum += rational(bigint(sign), den);
        }
    }
    return sum;
}

/// Every nonzero term of total degree <= max_total_order.
inline PolyExpansion expand(long n, long p, long q, int max_total_order) {
    validate(Index{n, p, q});
    if (max_total_order < 0 || max_total_order > 40)
        throw domain_error("expand: max_total_order must be in [0, 40]");
    PolyExpansion out;
    out.max_total_order = max_total_order;
    for (int total = 0; total <= max_total_order; ++total) {
        for (int l = total; l >= 0; --l) {
            const int m = total - l;
            const rational a = coeff_a(l, m, n, p, q);
            if (a == 0) continue;
            out.terms.push_back({l, m, a / rational(bigint(1) << total)});
        }
    }
    return out;
}

/// Exponent tuple (alpha, beta, sigma, zeta): u^{alpha+beta} v^{sigma+zeta} with
/// n = (alpha - beta) + q (sigma - zeta) for p = 1.
struct LeadingTerm {
    int alpha = 0, beta = 0, sigma = 0, zeta = 0;
    bool two_term = false;
    std::optional<std::array<int, 4>> companion;
    int nu = 0;  // two-term case: q = 2 nu + 1
    int mu = 0;  // two-term case: n = mu q + nu + 1

    int order() const { return alpha + beta + sigma + zeta; }
};

/// Lowest-order term of J_n^{1,q}.  Negative n is handled through
/// J_{-n}^{1,q}(u,v) = J_n^{1,q}(-u,-v), which has the same exponents.
inline LeadingTerm leading_term(long n, long q) {
    if (q < 2) throw domain_error("leading_term: q must be >= 2");
    const long an = std::labs(n);
    const long r = an % q;
    const long fl = an / q;
    LeadingTerm t;
    if (r == 0) {
        t.sigma = static_cast<int>(fl);
    } else if (2 * r < q + 1) {
        t.alpha = static_cast<int>(r);
        t.sigma = static_cast<int>(fl);
    } else if (2 * r > q + 1) {
        t.beta = static_cast<int>(q - r);
        t.sigma = static_cast<int>(fl + 1);
    } else {
        t.alpha = static_cast<int>(r);
        t.sigma = static_cast<int>(fl);
        t.two_term = true;
        t.companion = std::array<int, 4>{0, static_cast<int>(q - r), static_cast<int>(fl + 1), 0};
        t.nu = static_cast<int>((q - 1) / 2);
        t.mu = static_cast<int>(fl);
    }
    return t;
}

/// Slope dv/du of the nodal line through the origin in the two-term case:
/// the leading part is u^nu v^mu / (2^{nu+mu+1} nu! mu!) (u/(nu+1) + (-1)^nu v/(mu+1)).
inline std::optional<double> small_nodal_slope(long n, long q) {
    const LeadingTerm t = leading_term(n, q);
    if (!t.two_term) return std::nullopt;
    const double s = static_cast<double>(t.mu + 1) / static_cast<double>(t.nu + 1);
    return (t.nu % 2 == 0) ? -s : s;
}

}  // namespace gb2d
