#pragma once

// Rectangular sampling of J over (u, v) with CSV / PGM export and
// method-comparison atlases.  Points are evaluated concurrently; output
// order is fixed by the sample index, so results do not depend on the
// number of workers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "gb2d/asymptotic.hpp"
#include "gb2d/bessel.hpp"
#include "gb2d/core.hpp"
#include "gb2d/errors.hpp"
#include "gb2d/quadrature.hpp"
#include "gb2d/series.hpp"
#include "gb2d/small.hpp"

namespace gb2d {

enum class Method { exact, series, quadrature, asym_large_args, asym_large_vn, asym_limit_v, small_poly };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::series: return "series";
        case Method::quadrature: return "quadrature";
        case Method::asym_large_args: return "asym_large_args";
        case Method::asym_large_vn: return "asym_large_vn";
        case Method::asym_limit_v: return "asym_limit_v";
        case Method::small_poly: return "small_poly";
    }
    return "?";
}

inline std::optional<Method> parse_method(const std::string& s) {
    for (Method m : {Method::exact, Method::series, Method::quadrature, Method::asym_large_args,
                     Method::asym_large_vn, Method::asym_limit_v, Method::small_poly})
        if (s == method_name(m)) return m;
    return std::nullopt;
}

struct GridSpec {
    double u_min = -1.0, u_max = 1.0;
    double v_min = -1.0, v_max = 1.0;
    int nu = 2, nv = 2;
    Index index;
    Method method = Method::exact;
    std::optional<double> delta;
    int poly_order = 12;  // small_poly truncation
    double tol = default_series_tol;

    /// An axis with a single sample (min == max) is a slice.
    void validate() const {
        auto axis_ok = [](double lo, double hi, int n) {
            if (n == 1) return lo == hi && std::isfinite(lo);
            return n >= 2 && std::isfinite(lo) && std::isfinite(hi) && lo < hi;
        };
        if (!axis_ok(u_min, u_max, nu)) throw domain_error("grid: need u_min < u_max and nu >= 2");
        if (!axis_ok(v_min, v_max, nv)) throw domain_error("grid: need v_min < v_max and nv >= 2");
        gb2d::validate(index);
        if (delta && method != Method::exact && method != Method::quadrature)
            throw domain_error(std::string("grid: --delta is not supported by method ") + method_name(method));
        if (delta && method == Method::quadrature && index.p != 1)
            throw domain_error("grid: quadrature with --delta requires p = 1");
    }

    // Symmetric about the range center, so mirrored ranges give mirrored samples.
    static double sample(double lo, double hi, int n, int i) {
        if (n == 1) return lo;
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        return c + h * static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
    }
    double u(int i) const { return sample(u_min, u_max, nu, i); }
    double v(int j) const { return sample(v_min, v_max, nv, j); }
};

/// values[j * nu + i] is the field at (u(i), v(j)).  NaN marks a point
/// outside the validity regime of an asymptotic method.
struct FieldGrid {
    GridSpec spec;
    std::vector<double> values;
    double max_abs = 0.0;

    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * spec.nu + i]; }
};

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs body(k) for k in [0, count) on `workers` threads with a static
/// interleaved partition.  The first exception (by index) is rethrown.
template <class Body>
void parallel_for(long count, int workers, Body body) {
    workers = std::max(1, std::min<int>(resolve_workers(workers), static_cast<int>(std::max(1L, count))));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<long> error_at(static_cast<std::size_t>(workers), -1);
    auto run = [&](int w) {
        for (long k = w; k < count; k += workers) {
            try {
                body(k);
            } catch (...) {
                errors[w] = std::current_exception();
                error_at[w] = k;
                return;
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    int first = -1;
    for (int w = 0; w < workers; ++w)
        if (errors[w] && (first < 0 || error_at[w] < error_at[first])) first = w;
    if (first >= 0) std::rethrow_exception(errors[first]);
}

namespace detail {

// Point evaluator for every method except the table-driven exact path.
inline std::function<double(double, double)> point_function(const GridSpec& s) {
    const Index idx = s.index;
    const double tol = s.tol;
    if (s.delta) {
        const double delta = *s.delta;
        if (s.method == Method::quadrature)
            return [idx, delta](double u, double v) {
                const long nodes = auto_nodes(Index{idx.n, 1, idx.q}, u, v);
                return eval_param_quadrature(idx.n, idx.q, u, v, delta, nodes).real();
            };
        const std::complex<double> tau = std::exp(std::complex<double>(0.0, delta));
        return [idx, tau, tol](double u, double v) { return eval_param(idx, u, v, tau, tol).value.real(); };
    }
    auto require_12 = [&](const char* what) {
        if (!(idx.p == 1 && idx.q == 2))
            throw domain_error(std::string(what) + " is only available for (p, q) = (1, 2)");
    };
    switch (s.method) {
        case Method::exact: return [idx](double u, double v) { return eval(idx, u, v); };
        case Method::series: return [idx, tol](double u, double v) { return eval_series(idx, u, v, tol).value; };
        case Method::quadrature: return [idx](double u, double v) { return eval_quadrature(idx, u, v).value; };
        case Method::asym_large_args:
            require_12("asym_large_args");
            return [idx](double u, double v) { return asym_large_args_12(idx.n, u, v); };
        case Method::asym_large_vn:
            return [idx](double u, double v) {
                const long an = std::labs(idx.n);
                const double qv = std::abs(static_cast<double>(idx.q) * v);
                return static_cast<double>(an) < qv ? asym_large_vn_real(idx.n, idx.p, idx.q, u, v)
                                                    : asym_large_vn_complex(idx.n, idx.p, idx.q, u, v);
            };
        case Method::asym_limit_v:
            require_12("asym_limit_v");
            return [idx](double u, double v) { return asym_limit_v_12(idx.n, u, v); };
        case Method::small_poly: {
            const PolyExpansion poly = expand(idx.n, idx.p, idx.q, s.poly_order);
            return [poly](double u, double v) { return poly(u, v); };
        }
    }
    throw domain_error("grid: unknown method");
}

}  // namespace detail

/// Single point by any method; regime errors propagate.
inline double evaluate_point(const GridSpec& s, double u, double v) {
    return detail::point_function(s)(u, v);
}

inline FieldGrid evaluate_grid(const GridSpec& spec, int workers = 1) {
    spec.validate();
    FieldGrid g;
    g.spec = spec;
    g.values.assign(static_cast<std::size_t>(spec.nu) * spec.nv, 0.0);
    const long total = static_cast<long>(spec.nu) * spec.nv;

    if (spec.method == Method::exact && !spec.delta) {
        // One Bessel table per distinct u and per distinct (effective) v.
        const Evaluator ev(spec.index);
        std::vector<BesselTable> tu(static_cast<std::size_t>(spec.nu)), tv(static_cast<std::size_t>(spec.nv));
        for (int i = 0; i < spec.nu; ++i) detail::check_series_args(spec.u(i), 0.0, default_series_tol);
        for (int j = 0; j < spec.nv; ++j) detail::check_series_args(0.0, spec.v(j), default_series_tol);
        parallel_for(spec.nu + spec.nv, workers, [&](long k) {
            if (k < spec.nu)
                tu[k] = BesselTable(spec.u(static_cast<int>(k)));
            else
                tv[k - spec.nu] = BesselTable(ev.effective_v(spec.v(static_cast<int>(k - spec.nu))));
        });
        parallel_for(total, workers, [&](long k) {
            const long i = k % spec.nu, j = k / spec.nu;
            g.values[k] = ev.from_tables(tu[i], tv[j]);
        });
    } else {
        const auto f = detail::point_function(spec);
        parallel_for(total, workers, [&](long k) {
            const int i = static_cast<int>(k % spec.nu), j = static_cast<int>(k / spec.nu);
            try {
                g.values[k] = f(spec.u(i), spec.v(j));
            } catch (const regime_error&) {
                g.values[k] = std::numeric_limits<double>::quiet_NaN();
            }
        });
    }
    for (double x : g.values)
        if (std::isfinite(x)) g.max_abs = std::max(g.max_abs, std::abs(x));
    return g;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_csv(std::ostream& os, const FieldGrid& g) {
    os << "u,v,value\n";
    for (int j = 0; j < g.spec.nv; ++j)
        for (int i = 0; i < g.spec.nu; ++i)
            os << format_double(g.spec.u(i)) << ',' << format_double(g.spec.v(j)) << ','
               << format_double(g.at(i, j)) << '\n';
}

/// Gray level round(127.5 (1 + value/max_abs)); NaN and an all-zero field map to 128.
inline unsigned char pgm_level(double value, double max_abs) {
    if (!std::isfinite(value) || max_abs == 0.0) return 128;
    const double x = std::round(127.5 * (1.0 + value / max_abs));
    return static_cast<unsigned char>(std::clamp(x, 0.0, 255.0));
}

/// Binary P5, maxval 255, top row = v_max.
inline void write_pgm(std::ostream& os, const FieldGrid& g) {
    os << "P5\n" << g.spec.nu << ' ' << g.spec.nv << "\n255\n";
    std::vector<char> row(static_cast<std::size_t>(g.spec.nu));
    for (int j = g.spec.nv - 1; j >= 0; --j) {
        for (int i = 0; i < g.spec.nu; ++i) row[i] = static_cast<char>(pgm_level(g.at(i, j), g.max_abs));
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

struct CompareSummary {
    long points = 0;
    long excluded = 0;  // approximation undefined (divergence zone / regime)
    double max_abs_err = 0.0;
    double median_abs_err = 0.0;
    long rel_points = 0;  // points with |reference| > rel_floor
    double max_rel_err = 0.0;
    double median_rel_err = 0.0;
};

struct CompareResult {
    FieldGrid reference;
    FieldGrid approx;
    CompareSummary summary;
};

namespace detail {

inline double median(std::vector<double> xs) {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace detail

/// Evaluates `spec` with the reference method and with spec.method.
/// Relative errors are summarized over points with |reference| > rel_floor.
inline CompareResult compare_grid(const GridSpec& spec, Method reference, double rel_floor, int workers = 1) {
    GridSpec ref = spec;
    ref.method = reference;
    CompareResult r;
    r.reference = evaluate_grid(ref, workers);
    r.approx = evaluate_grid(spec, workers);
    std::vector<double> abs_errs, rel_errs;
    for (std::size_t k = 0; k < r.reference.values.size(); ++k) {
        ++r.summary.points;
        const double e = r.reference.values[k], a = r.approx.values[k];
        if (!std::isfinite(a) || !std::isfinite(e)) {
            ++r.summary.excluded;
            continue;
        }
        abs_errs.push_back(std::abs(a - e));
        if (std::abs(e) > rel_floor) rel_errs.push_back(std::abs(a - e) / std::abs(e));
    }
    auto max_of = [](const std::vector<double>& xs) {
        return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
    };
    r.summary.max_abs_err = max_of(abs_errs);
    r.summary.median_abs_err = abs_errs.empty() ? 0.0 : detail::median(abs_errs);
    r.summary.rel_points = static_cast<long>(rel_errs.size());
    r.summary.max_rel_err = max_of(rel_errs);
    r.summary.median_rel_err = rel_errs.empty() ? 0.0 : detail::median(rel_errs);
    return r;
}

inline std::string format_compare_summary(const CompareSummary& m, double rel_floor) {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "# summary points=%ld excluded=%ld max_abs_err=%.6e median_abs_err=%.6e "
                  "rel_floor=%g rel_points=%ld max_rel_err=%.6e median_rel_err=%.6e\n",
                  m.points, m.excluded, m.max_abs_err, m.median_abs_err, rel_floor, m.rel_points,
                  m.max_rel_err, m.median_rel_err);
    return buf;
}

inline void write_compare_csv(std::ostream& os, const CompareResult& r, double rel_floor) {
    const GridSpec& s = r.reference.spec;
    os << "u,v,exact,approx,abs_err,rel_err\n";
    for (int j = 0; j < s.nv; ++j) {
        for (int i = 0; i < s.nu; ++i) {
            const double e = r.reference.at(i, j), a = r.approx.at(i, j);
            const double ae = std::abs(a - e);
            const double re = e != 0.0 ? ae / std::abs(e) : (ae == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
            os << format_double(s.u(i)) << ',' << format_double(s.v(j)) << ',' << format_double(e) << ','
               << format_double(a) << ',' << format_double(ae) << ',' << format_double(re) << '\n';
        }
    }
    os << format_compare_summary(r.summary, rel_floor);
}

}  // namespace gb2d
