#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "gb2d/errors.hpp"

namespace gb2d {

/// Index triple (n, p, q) of J_n^{p,q}.  p and q must be nonzero.
struct Index {
    long n = 0;
    long p = 1;
    long q = 1;

    friend bool operator==(const Index&, const Index&) = default;
};

/// Result of canonicalize().  The original function satisfies
///     J_orig(u, v) = sign * J_base(u, negate_v ? -v : v)
/// unless is_zero, in which case it vanishes identically.
struct CanonicalIndex {
    Index base;
    int sign = 1;
    bool is_zero = false;
    long reduction_factor = 1;
    bool negate_v = false;
};

struct DiophantineSolution {
    long M = 0;
    long N = 0;
};

inline void validate(const Index& idx) {
    if (idx.p == 0 || idx.q == 0)
        throw domain_error("index: p and q must be nonzero (got p=" + std::to_string(idx.p) +
                           ", q=" + std::to_string(idx.q) + ")");
}

inline CanonicalIndex canonicalize(const Index& idx) {
    validate(idx);
    CanonicalIndex c;
    const long mu = std::gcd(idx.p, idx.q);
    c.reduction_factor = mu;
    if (idx.n % mu != 0) {
        c.is_zero = true;
        c.base = {idx.n, idx.p / mu, idx.q / mu};
        return c;
    }
    long n = idx.n / mu, p = idx.p / mu, q = idx.q / mu;
    // J_n^{p,q} = J_{-n}^{-p,-q}
    if (p < 0) {
        n = -n;
        p = -p;
        q = -q;
    }
    // J_n^{p,-q}(u,v) = J_n^{p,q}(u,-v)
    if (q < 0) {
        q = -q;
        c.negate_v = true;
        // p even, q odd: J_n^{p,q}(u,-v) = (-1)^n J_n^{p,q}(u,v)
        if (p % 2 == 0) {
            c.negate_v = false;
            c.sign = (n % 2 == 0) ? 1 : -1;
        }
    }
    c.base = {n, p, q};
    return c;
}

namespace detail {

// a*x + b*y = gcd(a,b) for a, b >= 0.
inline void extended_euclid(long a, long b, long& g, long& x, long& y) {
    long old_r = a, r = b;
    long old_s = 1, s = 0;
    long old_t = 0, t = 1;
    while (r != 0) {
        const long quot = old_r / r;
        long tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
        tmp = old_t - quot * t;
        old_t = t;
        t = tmp;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

}  // namespace detail

/// Solution of n = pM + qN with the smallest |M|, ties broken toward M >= 0.
inline DiophantineSolution solve_diophantine(const Index& idx) {
    validate(idx);
    const long ap = idx.p < 0 ? -idx.p : idx.p;
    const long aq = idx.q < 0 ? -idx.q : idx.q;
    long g, x, y;
    detail::extended_euclid(ap, aq, g, x, y);
    if (g != 1) throw domain_error("solve_diophantine: p and q must be coprime");

    const std::int64_t m0 = static_cast<std::int64_t>(idx.n) * (idx.p < 0 ? -x : x);
    std::int64_t r = m0 % aq;
    if (r < 0) r += aq;
    const std::int64_t M = (r <= aq - r) ? r : r - aq;
    const std::int64_t N = (static_cast<std::int64_t>(idx.n) - idx.p * M) / idx.q;
    return {static_cast<long>(M), static_cast<long>(N)};
}

}  // namespace gb2d
