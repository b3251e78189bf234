#pragma once

// Stationary-phase and saddle-point approximations of J_n^{p,q}(u,v),
// coalescence (bifurcation) sets, sector classification for (p,q) = (1,2),
// and nodal-line estimates in the large-v, large-n regime.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gb2d/errors.hpp"
#include "gb2d/index.hpp"

namespace gb2d {

enum class PointKind { real_stationary, complex_saddle };

struct StationaryPoint {
    std::complex<double> t;                  // real part in (-pi, pi]
    std::complex<double> phase;              // phase function at t
    std::complex<double> second_derivative;  // its second derivative at t
    PointKind kind = PointKind::real_stationary;
    bool degenerate = false;  // |second derivative| < 1e-8
};

struct Line {
    double slope = 0.0;
    double intercept = 0.0;  // v = slope * u + intercept
};

struct Ellipse {
    double center_u = 0.0, center_v = 0.0;
    double semi_axis_u = 0.0, semi_axis_v = 0.0;
};

struct BifurcationSet {
    std::vector<Line> lines;
    std::optional<Ellipse> ellipse;
};

enum class Sector { I, II, III, IV, V, generic };

inline const char* sector_name(Sector s) {
    switch (s) {
        case Sector::I: return "I";
        case Sector::II: return "II";
        case Sector::III: return "III";
        case Sector::IV: return "IV";
        case Sector::V: return "V";
        default: return "generic";
    }
}

struct RegionClass {
    Sector label = Sector::generic;
    int real_stationary_count = 0;
    bool inside_ellipse = false;    // both c_+- complex
    bool near_bifurcation = false;  // within 2% of a line or of the ellipse
};

inline constexpr double divergence_zone_radius = 0.05;
inline constexpr double vn_divergence_band = 0.02;

namespace detail {

inline constexpr double pi = std::numbers::pi;

inline double wrap_angle(double t) {
    t = std::remainder(t, 2.0 * pi);  // [-pi, pi]
    if (t <= -pi) t += 2.0 * pi;
    return t;
}

template <class F>
double bisect(F f, double a, double b) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Roots of an even trigonometric polynomial d(t) on [0, pi], using `cells`
// uniform cells, with a check for root pairs hidden inside a single cell.
template <class D, class DD>
std::vector<double> even_roots(D d, DD dd, int cells) {
    std::vector<double> roots;
    auto push = [&](double t) {
        if (roots.empty() || std::abs(t - roots.back()) > 1e-12) roots.push_back(t);
    };
    const double h = pi / cells;
    for (int i = 0; i < cells; ++i) {
        const double a = i * h, b = (i + 1 == cells) ? pi : (i + 1) * h;
        const double fa = d(a), fb = d(b);
        if (fa == 0.0) {
            push(a);
            continue;
        }
        if (fb == 0.0) continue;  // picked up as the next cell's left end
        if ((fa < 0) != (fb < 0)) {
            push(bisect(d, a, b));
            continue;
        }
        const double ga = dd(a), gb = dd(b);
        if ((ga < 0) != (gb < 0)) {
            const double te = bisect(dd, a, b);
            const double fe = d(te);
            if (fe == 0.0) {
                push(te);
            } else if ((fe < 0) != (fa < 0)) {
                push(bisect(d, a, te));
                push(bisect(d, te, b));
            }
        }
    }
    if (d(pi) == 0.0) push(pi);
    return roots;
}

// Mirror roots on [0, pi] to (-pi, pi].
inline std::vector<double> mirror(const std::vector<double>& half) {
    std::vector<double> all;
    for (double t : half) {
        all.push_back(t);
        if (t > 1e-12 && t < pi - 1e-12) all.push_back(-t);
    }
    std::sort(all.begin(), all.end());
    return all;
}

inline bool coprime(long p, long q) { return std::gcd(p, q) == 1; }

}  // namespace detail

/// Real stationary points of u sin pt + v sin qt - nt in (-pi, pi].
inline std::vector<StationaryPoint> stationary_points(long p, long q, long n, double u, double v) {
    validate(Index{n, p, q});
    if (u == 0.0 && v == 0.0) throw domain_error("stationary_points: (u, v) = (0, 0) is degenerate");
    const double P = static_cast<double>(p), Q = static_cast<double>(q), N = static_cast<double>(n);
    auto d1 = [&](double t) { return P * u * std::cos(P * t) + Q * v * std::cos(Q * t) - N; };
    auto d2 = [&](double t) { return -P * P * u * std::sin(P * t) - Q * Q * v * std::sin(Q * t); };

    std::vector<double> ts;
    if (p == 1 && q == 2 && v != 0.0) {
        // 4v c^2 + u c - (2v + n) = 0 with c = cos t
        const double b = u / (8.0 * v);
        const double disc = b * b + 0.5 + N / (4.0 * v);
        std::vector<double> half;
        if (disc >= 0.0) {
            for (double c : {-b + std::sqrt(disc), -b - std::sqrt(disc)})
                if (std::abs(c) <= 1.0) half.push_back(std::acos(c));
        }
        std::sort(half.begin(), half.end());
        half.erase(std::unique(half.begin(), half.end()), half.end());
        ts = detail::mirror(half);
    } else {
        const int cells = 64 * static_cast<int>(std::max(std::labs(p), std::labs(q)));
        ts = detail::mirror(detail::even_roots(d1, d2, cells));
    }

    std::vector<StationaryPoint> out;
    for (double t : ts) {
        StationaryPoint s;
        s.t = t;
        s.phase = u * std::sin(P * t) + v * std::sin(Q * t) - N * t;
        s.second_derivative = d2(t);
        s.kind = PointKind::real_stationary;
        s.degenerate = std::abs(d2(t)) < 1e-8;
        out.push_back(s);
    }
    return out;
}

/// Real roots of pu cos(pt) + qv cos(qt) = 0 in (-pi, pi], in +- pairs.
inline std::vector<StationaryPoint> stationary_points_uv(long p, long q, double u, double v) {
    return stationary_points(p, q, 0, u, v);
}

/// Coalescence lines of the stationary points of u sin pt + v sin qt.
inline BifurcationSet bifurcation_lines(long p, long q) {
    validate(Index{0, p, q});
    if (!detail::coprime(p, q)) throw domain_error("bifurcation_lines: p and q must be coprime");
    const double P = static_cast<double>(p), Q = static_cast<double>(q);
    BifurcationSet set;
    const bool p_odd = (p % 2) != 0, q_odd = (q % 2) != 0;
    if (p_odd != q_odd) {
        set.lines = {{P / Q, 0.0}, {-P / Q, 0.0}};
    } else {
        const long j = (p - 1) / 2, k = (q - 1) / 2;
        const double s2 = -(((j + k) % 2 == 0) ? 1.0 : -1.0) * P * P / (Q * Q);
        set.lines.push_back({-P / Q, 0.0});
        if (s2 != -P / Q) set.lines.push_back({s2, 0.0});
    }
    return set;
}

/// Coalescence set of u sin t + v sin 2t - nt: lines v = (n +- u)/2 and the
/// ellipse u^2/(2n^2) + (v + n/4)^2/(n/4)^2 = 1.
inline BifurcationSet bifurcation_set_large_n(long n) {
    if (n <= 0) throw domain_error("bifurcation_set_large_n: n must be positive");
    const double N = static_cast<double>(n);
    BifurcationSet set;
    set.lines = {{0.5, 0.5 * N}, {-0.5, 0.5 * N}};
    set.ellipse = Ellipse{0.0, -0.25 * N, std::sqrt(2.0) * N, 0.25 * N};
    return set;
}

/// Sector of (u, v) for J_n^{1,2} with n > 0, from c_+- = -u/8v +- sqrt((u/8v)^2 + 1/2 + n/4v).
/// Two-point sectors are labelled by side: IV for u > 0, III for u < 0.
/// The ellipse interior (complex c_+-) is labelled V together with the
/// triangle between the ellipse and the lines.
inline RegionClass classify_region(long n, double u, double v) {
    if (n <= 0) throw domain_error("classify_region: n must be positive");
    if (v == 0.0) throw domain_error("classify_region: undefined at v = 0");
    const double N = static_cast<double>(n);
    RegionClass r;
    const double b = u / (8.0 * v);
    const double disc = b * b + 0.5 + N / (4.0 * v);
    int admissible = 0;
    if (disc < 0.0) {
        r.inside_ellipse = true;
    } else {
        const double cp = -b + std::sqrt(disc), cm = -b - std::sqrt(disc);
        admissible = (std::abs(cp) < 1.0) + (std::abs(cm) < 1.0);
    }
    r.real_stationary_count = 2 * admissible;
    if (admissible == 2)
        r.label = v > 0.0 ? Sector::I : Sector::II;
    else if (admissible == 1)
        r.label = u > 0.0 ? Sector::IV : Sector::III;
    else
        r.label = Sector::V;

    const double scale = std::max(N, std::hypot(u, v));
    const double line_gap = std::min(std::abs(v - 0.5 * (N + u)), std::abs(v - 0.5 * (N - u))) /
                            std::sqrt(1.25);
    const double e = u * u / (2.0 * N * N) + std::pow((v + 0.25 * N) / (0.25 * N), 2);
    r.near_bifurcation = line_gap < 0.02 * scale || std::abs(e - 1.0) < 0.02;
    return r;
}

/// J_n^{1,2}(u,v) ~ F_+ + F_- for large |u|, |v| at fixed n.
inline double asym_large_args_12(long n, double u, double v) {
    if (v < 0.0) return asym_large_args_12(-n, -u, -v);
    const double rho = std::hypot(u, v);
    if (rho == 0.0) throw regime_error("asym_large_args_12: undefined at the origin");
    const double zone = divergence_zone_radius * rho;
    if (std::abs(v - 0.5 * u) / std::sqrt(1.25) < zone || std::abs(v + 0.5 * u) / std::sqrt(1.25) < zone)
        throw regime_error("asym_large_args_12: (u, v) inside the divergence zone of v = +-u/2");
    const double N = static_cast<double>(n);
    if (v == 0.0) {
        // Limit v -> 0+: a single pair at t = +-pi/2.
        const double a = std::abs(u);
        const double shift = u > 0.0 ? -N * detail::pi / 2 : N * detail::pi / 2;
        return std::sqrt(2.0 / (detail::pi * a)) * std::cos(a + shift - detail::pi / 4);
    }
    const double r = u / v;
    const double root = std::sqrt(r * r + 32.0);
    double sum = 0.0;
    if (u > -2.0 * v) {
        const double c = (-r + root) / 8.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double phi = (u + 2.0 * v * c) * s;
        const double phi2 = -(u + 8.0 * v * c) * s;
        sum += std::sqrt(2.0 / (detail::pi * std::abs(phi2))) *
               std::cos(phi - N * std::acos(c) - detail::pi / 4);
    }
    if (u < 2.0 * v) {
        const double c = (-r - root) / 8.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double phi = -(u + 2.0 * v * c) * s;
        const double phi2 = (u + 8.0 * v * c) * s;
        sum += std::sqrt(2.0 / (detail::pi * std::abs(phi2))) *
               std::cos(phi + N * std::acos(c) - detail::pi / 4);
    }
    return sum;
}

/// v -> infinity limit of J_n^{1,2}(u,v).
inline double asym_limit_v_12(long n, double u, double v) {
    if (!(v > 0.0)) throw regime_error("asym_limit_v_12: requires v > 0");
    const double a = v - (static_cast<double>(n) + 1.0) * detail::pi / 4;
    const double pre = std::sqrt(2.0 / (detail::pi * v));
    if (n % 2 == 0) return pre * std::cos(a) * std::cos(u / std::sqrt(2.0));
    return -pre * std::sin(a) * std::sin(u / std::sqrt(2.0));
}

namespace detail {

inline void check_vn(long n, long q, double v, bool want_real) {
    const double qv = static_cast<double>(q) * std::abs(v);
    if (qv == 0.0) throw regime_error("large-v approximation: v must be nonzero");
    if (std::abs(static_cast<double>(n) - qv) <= vn_divergence_band * qv)
        throw regime_error("large-v approximation: n within 2% of q|v| (divergence zone)");
    if (want_real && !(static_cast<double>(n) < qv))
        throw regime_error("asym_large_vn_real: requires n < q|v|");
    if (!want_real && !(static_cast<double>(n) > qv))
        throw regime_error("asym_large_vn_complex: requires n > q|v|");
}

}  // namespace detail

/// Stationary points of g(t) = v sin qt - nt (n >= 0): real for n < q|v|,
/// otherwise the contributing saddles t = x_s - i y0 in the lower half plane.
inline std::vector<StationaryPoint> stationary_points_large_vn(long n, long q, double v) {
    if (q <= 0 || n < 0) throw domain_error("stationary_points_large_vn: needs q > 0, n >= 0");
    const double N = static_cast<double>(n), Q = static_cast<double>(q);
    const double qv = Q * std::abs(v);
    if (qv == 0.0 || N == qv) throw regime_error("stationary_points_large_vn: n = q|v| or v = 0");
    using cplx = std::complex<double>;
    auto g = [&](cplx t) { return v * std::sin(Q * t) - N * t; };
    auto g2 = [&](cplx t) { return -Q * Q * v * std::sin(Q * t); };
    std::vector<StationaryPoint> out;
    if (N < qv) {
        const double t0 = std::acos(N / (Q * v)) / Q;
        for (long s = 0; s < q; ++s) {
            for (int sign : {+1, -1}) {
                const double t = detail::wrap_angle(sign * (t0 + 2.0 * detail::pi * s / Q));
                StationaryPoint sp{t, g(t), g2(t), PointKind::real_stationary, false};
                sp.degenerate = std::abs(sp.second_derivative) < 1e-8;
                out.push_back(sp);
            }
        }
    } else {
        const double y0 = std::acosh(N / qv) / Q;
        for (long s = 0; s < q; ++s) {
            const double x = detail::wrap_angle(detail::pi * (v > 0 ? 2.0 * s : 2.0 * s + 1.0) / Q);
            const cplx t(x, -y0);
            StationaryPoint sp{t, g(t), g2(t), PointKind::complex_saddle, false};
            sp.degenerate = std::abs(sp.second_derivative) < 1e-8;
            out.push_back(sp);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const StationaryPoint& a, const StationaryPoint& b) { return a.t.real() < b.t.real(); });
    return out;
}

/// Large v and n with n < q|v|: stationary phase over the 2q real points
///   t = +-(t0 + 2 pi s/q), t0 = arccos(n/(qv))/q.
inline double asym_large_vn_real(long n, long p, long q, double u, double v) {
    validate(Index{n, p, q});
    if (q < 0) return asym_large_vn_real(n, p, -q, u, -v);
    if (n < 0) return asym_large_vn_real(-n, p, q, -u, -v);
    detail::check_vn(n, q, v, true);
    const double N = static_cast<double>(n), P = static_cast<double>(p), Q = static_cast<double>(q);
    const double t0 = std::acos(N / (Q * v)) / Q;
    const double sq = std::sin(Q * t0);
    const double sgn = v > 0 ? 1.0 : -1.0;
    const double pre = std::sqrt(2.0 / (detail::pi * Q * Q * std::abs(v) * sq));
    double sum = 0.0;
    for (long s = 0; s < q; ++s) {
        const double t = detail::wrap_angle(t0 + 2.0 * detail::pi * s / Q);
        sum += std::cos(u * std::sin(P * t) + v * sq - N * t - sgn * detail::pi / 4);
    }
    return pre * sum;
}

/// Large v and n with n > q|v|: steepest descent through the saddles
/// t_s = x_s - i y0, y0 = arccosh(n/(q|v|))/q, giving
///   e^{|v| sinh(q y0) - n y0} / sqrt(2 pi q^2 |v| sinh(q y0)) * Re sum_s e^{-i n x_s} e^{i u sin p t_s}.
inline double asym_large_vn_complex(long n, long p, long q, double u, double v) {
    validate(Index{n, p, q});
    if (q < 0) return asym_large_vn_complex(n, p, -q, u, -v);
    if (n < 0) return asym_large_vn_complex(-n, p, q, -u, -v);
    detail::check_vn(n, q, v, false);
    using cplx = std::complex<double>;
    const double N = static_cast<double>(n), P = static_cast<double>(p), Q = static_cast<double>(q);
    const double av = std::abs(v);
    const double y0 = std::acosh(N / (Q * av)) / Q;
    const double sh = std::sinh(Q * y0);
    const double pre = std::exp(av * sh - N * y0) / std::sqrt(2.0 * detail::pi * Q * Q * av * sh);
    cplx sum = 0.0;
    for (long s = 0; s < q; ++s) {
        const double x = detail::wrap_angle(detail::pi * (v > 0 ? 2.0 * s : 2.0 * s + 1.0) / Q);
        sum += std::exp(cplx(0.0, -N * x)) * std::exp(cplx(0.0, 1.0) * u * std::sin(P * cplx(x, -y0)));
    }
    return pre * sum.real();
}

/// Estimated nodal u-values of J_n^{1,2}(., v) with |u| <= 50, s = sqrt(1/2 - n/4v):
///   n < 2|v|:        u s = (2j+1) pi/2 (n even), j pi (n odd)
///   n > 2|v|, v < 0: u s = (2j+n+1) pi/2.
inline std::vector<double> nodal_lines_large_vn(long n, double v) {
    if (n < 0) {
        n = -n;
        v = -v;
    }
    const double N = static_cast<double>(n);
    const double tv = 2.0 * std::abs(v);
    if (N == tv) throw regime_error("nodal_lines_large_vn: n = 2|v|");
    if (N > tv && v > 0.0)
        throw regime_error("nodal_lines_large_vn: no nodal estimate for n > 2|v| with v > 0");
    const double s = std::sqrt(0.5 - N / (4.0 * v));
    const double step = detail::pi / s;
    // Both branches put the zeros at odd multiples of pi/(2s) for even n and
    // at multiples of pi/s for odd n.
    const double offset = (n % 2 == 0) ? 0.5 * step : 0.0;
    std::vector<double> out;
    const double limit = 50.0;
    const long jmax = static_cast<long>(std::ceil(limit / step)) + 1;
    for (long j = -jmax; j <= jmax; ++j) {
        const double u = offset + j * step;
        if (std::abs(u) <= limit) out.push_back(u);
    }
    return out;
}

}  // namespace gb2d
