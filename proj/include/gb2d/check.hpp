#pragma once

// Randomized identity suite.  Each identity draws its parameters from its own
// seeded stream, so the report depends only on the seed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gb2d/core.hpp"
#include "gb2d/grid.hpp"
#include "gb2d/quadrature.hpp"
#include "gb2d/relations.hpp"
#include "gb2d/series.hpp"

namespace gb2d {

struct IdentityResult {
    std::string name;
    int draws = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool scaled = false;  // residual divided by pde_scale / stated scale
    bool passed = false;
};

struct CheckReport {
    std::uint64_t seed = 0;
    std::vector<IdentityResult> results;

    bool all_passed() const {
        return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.passed; });
    }
};

namespace detail {

using Rng = std::mt19937_64;

struct Draw {
    Rng& rng;
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(integer(0, static_cast<long>(xs.size()) - 1))];
    }
};

using PQ = std::pair<long, long>;
inline const std::vector<PQ>& coprime_pairs() {
    static const std::vector<PQ> pairs = {{1, 2}, {1, 3}, {2, 3}, {1, 5}, {3, 5}, {2, 5}, {3, 4}, {1, 4}};
    return pairs;
}

struct IdentitySpec {
    std::string name;
    int draws;
    double tolerance;
    bool scaled;
    std::function<double(Draw&)> residual;  // one draw -> |residual| (scaled if flagged)
};

inline std::vector<IdentitySpec> identity_specs() {
    using std::abs;
    const double pi = std::numbers::pi;
    std::vector<IdentitySpec> s;

    s.push_back({"series_vs_quadrature", 200, 1e-10, false, [](Draw& d) {
                     const std::vector<PQ> pairs = {{1, 2}, {1, 3}, {2, 3}, {1, 5}, {3, 5}};
                     const auto [p, q] = d.pick(pairs);
                     const Index idx{d.integer(-40, 40), p, q};
                     const double u = d.real(-30, 30), v = d.real(-30, 30);
                     return abs(eval_series(idx, u, v, 1e-12).value - eval_quadrature(idx, u, v).value);
                 }});
    s.push_back({"sum_rule_total", 200, 1e-10, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const double u = d.real(-10, 10), v = d.real(-10, 10);
                     return abs(sum_rule_total(p, q, u, v, default_sum_K(p, q, u, v)));
                 }});
    s.push_back({"sum_rule_squares", 200, 1e-10, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const double u = d.real(-10, 10), v = d.real(-10, 10);
                     return abs(sum_rule_squares(p, q, u, v, default_sum_K(p, q, u, v)));
                 }});
    s.push_back({"sum_rule_phase12", 200, 1e-10, false, [](Draw& d) {
                     const double u = d.real(-10, 10), v = d.real(-10, 10);
                     return abs(sum_rule_phase12(u, v, default_sum_K(1, 2, u, v)));
                 }});
    s.push_back({"kapteyn", 200, 1e-8, false, [first = true](Draw& d) mutable {
                     if (first) {
                         first = false;
                         return abs(kapteyn_sum(1, 2, 0.1, 0.2).residual);
                     }
                     const auto [p, q] = d.pick(coprime_pairs());
                     // |pu| + |qv| <= 0.6
                     const double share = d.real(0.0, 1.0), radius = d.real(0.0, 0.6);
                     const double u = (d.integer(0, 1) ? 1 : -1) * share * radius / p;
                     const double v = (d.integer(0, 1) ? 1 : -1) * (1.0 - share) * radius / q;
                     return abs(kapteyn_sum(p, q, u, v).residual);
                 }});
    s.push_back({"addition", 200, 1e-10, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const long n = d.integer(-10, 10);
                     const double u1 = d.real(-5, 5), v1 = d.real(-5, 5), u2 = d.real(-5, 5), v2 = d.real(-5, 5);
                     return abs(addition_residual(n, p, q, u1, v1, u2, v2, default_bilinear_K(p, q, u1, v1, u2, v2)));
                 }});
    s.push_back({"graf", 200, 1e-9, false, [pi](Draw& d) {
                     // Branch-safe draws: u2 > |u1|, v2 > |v1|.
                     const long q = d.pick(std::vector<long>{2, 3, 5});
                     const long n = d.integer(-6, 6);
                     const double u2 = d.real(0.5, 5.0), v2 = d.real(0.5, 4.0);
                     const double u1 = d.real(-0.8, 0.8) * u2, v1 = d.real(-0.8, 0.8) * v2;
                     const double theta = d.real(-pi, pi);
                     const GrafResult g = graf_residual(n, q, u1, v1, u2, v2, theta,
                                                        default_bilinear_K(1, q, u1, v1, u2, v2));
                     if (g.branch_warning) return std::numeric_limits<double>::infinity();
                     return abs(g.residual);
                 }});
    s.push_back({"recurrence", 200, 1e-9, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     return abs(recurrence_residual(d.integer(-20, 20), p, q, d.real(-10, 10), d.real(-10, 10)));
                 }});
    s.push_back({"derivative_u", 200, 1e-7, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     return abs(derivative_residual_u(d.integer(-8, 8), p, q, d.real(-5, 5), d.real(-5, 5), 1e-4));
                 }});
    s.push_back({"derivative_v", 200, 1e-7, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     return abs(derivative_residual_v(d.integer(-8, 8), p, q, d.real(-5, 5), d.real(-5, 5), 1e-4));
                 }});
    s.push_back({"param_derivatives", 200, 1e-7, false, [pi](Draw& d) {
                     const long q = d.pick(std::vector<long>{2, 3, 5});
                     const auto r = param_derivative_residuals(d.integer(-8, 8), q, d.real(-5, 5), d.real(-5, 5),
                                                               d.real(-pi, pi), 1e-4);
                     return std::max(abs(r.first), abs(r.second));
                 }});
    s.push_back({"symmetry_swap", 200, 1e-12, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const long n = d.integer(-40, 40);
                     const double u = d.real(-30, 30), v = d.real(-30, 30);
                     return abs(eval(Index{n, p, q}, u, v) - eval(Index{n, q, p}, v, u));
                 }});
    s.push_back({"symmetry_negate_n", 200, 1e-12, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const long n = d.integer(-40, 40);
                     const double u = d.real(-30, 30), v = d.real(-30, 30);
                     return abs(eval(Index{-n, p, q}, u, v) - eval(Index{n, p, q}, -u, -v));
                 }});
    s.push_back({"symmetry_q_even", 200, 1e-12, false, [](Draw& d) {
                     const std::vector<PQ> pairs = {{1, 2}, {1, 4}, {3, 2}, {3, 4}, {5, 2}, {1, 6}};
                     const auto [p, q] = d.pick(pairs);
                     const long n = d.integer(-40, 40);
                     const double u = d.real(-30, 30), v = d.real(-30, 30);
                     const double sign = (n % 2 == 0) ? 1.0 : -1.0;
                     return abs(eval(Index{n, p, q}, -u, v) - sign * eval(Index{n, p, q}, u, v));
                 }});
    s.push_back({"symmetry_pq_odd", 200, 1e-12, false, [](Draw& d) {
                     const std::vector<PQ> pairs = {{1, 3}, {1, 5}, {3, 5}, {1, 7}, {3, 7}, {5, 7}};
                     const auto [p, q] = d.pick(pairs);
                     const long n = d.integer(-40, 40);
                     const double u = d.real(-30, 30), v = d.real(-30, 30);
                     const double sign = (n % 2 == 0) ? 1.0 : -1.0;
                     return abs(eval(Index{n, p, q}, -u, -v) - sign * eval(Index{n, p, q}, u, v));
                 }});
    s.push_back({"reduction", 200, 1e-12, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const long mu = d.integer(2, 3);
                     const long n = d.integer(-30, 30);
                     const double u = d.real(-20, 20), v = d.real(-20, 20);
                     const double reduced = (n % mu == 0) ? eval(Index{n / mu, p, q}, u, v) : 0.0;
                     return abs(eval(Index{n, mu * p, mu * q}, u, v) - reduced);
                 }});
    s.push_back({"param_tau_one", 200, 1e-12, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const Index idx{d.integer(-30, 30), p, q};
                     const double u = d.real(-20, 20), v = d.real(-20, 20);
                     return abs(eval_param(idx, u, v, 1.0, default_series_tol).value - eval(idx, u, v));
                 }});
    s.push_back({"bounds", 200, 1e-12, false, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const long n = d.integer(-20, 20);
                     const double J = abs(eval(Index{n, p, q}, d.real(-30, 30), d.real(-30, 30)));
                     return std::max(0.0, J - (n == 0 ? 1.0 : 1.0 / std::sqrt(2.0)));
                 }});
    s.push_back({"pde_wave", 200, 1e-11, false, [](Draw& d) {
                     return abs(pde_residual_wave(d.integer(-20, 20), d.real(-20, 20), d.real(-20, 20)));
                 }});
    s.push_back({"pde_schroedinger", 200, 1e-11, false, [](Draw& d) {
                     return abs(pde_residual_schroedinger(d.integer(-20, 20), d.real(-20, 20), d.real(-20, 20)));
                 }});
    s.push_back({"pde_coupled", 200, 1e-10, true, [](Draw& d) {
                     const auto [p, q] = d.pick(coprime_pairs());
                     const long n = d.integer(-20, 20);
                     const double u = d.real(-10, 10), v = d.real(-10, 10);
                     return abs(pde_residual_coupled(n, p, q, u, v)) / pde_scale(n, p, q, u, v);
                 }});
    s.push_back({"pde_decoupled_plus", 200, 1e-10, true, [](Draw& d) {
                     const long n = d.integer(-20, 20);
                     const double u = d.real(-10, 10), v = d.real(-10, 10);
                     return abs(pde_residual_decoupled_pm1(n, 1, u, v)) / pde_scale(n, 1, 1, u, v);
                 }});
    s.push_back({"pde_decoupled_minus", 200, 1e-10, true, [](Draw& d) {
                     const long n = d.integer(-20, 20);
                     const double u = d.real(-10, 10), v = d.real(-10, 10);
                     return abs(pde_residual_decoupled_pm1(n, -1, u, v)) / pde_scale(n, 1, 1, u, v);
                 }});
    return s;
}

}  // namespace detail

inline std::vector<std::string> identity_names() {
    std::vector<std::string> names;
    for (const auto& s : detail::identity_specs()) names.push_back(s.name);
    return names;
}

/// Runs the identities in `only` (all when empty).  Unknown names throw domain_error.
inline CheckReport run_check(std::uint64_t seed, const std::vector<std::string>& only = {}, int workers = 1) {
    auto specs = detail::identity_specs();
    for (const auto& name : only) {
        if (std::none_of(specs.begin(), specs.end(), [&](const auto& s) { return s.name == name; }))
            throw domain_error("check: unknown identity '" + name + "'");
    }
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < specs.size(); ++k)
        if (only.empty() || std::find(only.begin(), only.end(), specs[k].name) != only.end()) chosen.push_back(k);

    CheckReport report;
    report.seed = seed;
    report.results.resize(chosen.size());
    parallel_for(static_cast<long>(chosen.size()), workers, [&](long c) {
        const auto& spec = specs[chosen[c]];
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chosen[c])};
        detail::Rng rng(seq);
        detail::Draw d{rng};
        auto residual = spec.residual;  // each run gets its own copy of any state
        IdentityResult r{spec.name, spec.draws, 0.0, spec.tolerance, spec.scaled, false};
        for (int k = 0; k < spec.draws; ++k) {
            const double x = residual(d);
            if (!(x <= r.max_residual)) r.max_residual = std::isnan(x) ? std::numeric_limits<double>::infinity() : x;
        }
        r.passed = r.max_residual <= spec.tolerance;
        report.results[c] = r;
    });
    return report;
}

inline std::string format_report(const CheckReport& rep) {
    std::string out;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-22s %6s %13s %10s %-6s %s\n", "identity", "draws", "max_residual", "tolerance",
                  "norm", "status");
    out += buf;
    int passed = 0;
    for (const auto& r : rep.results) {
        std::snprintf(buf, sizeof buf, "%-22s %6d %13.3e %10.1e %-6s %s\n", r.name.c_str(), r.draws, r.max_residual,
                      r.tolerance, r.scaled ? "scaled" : "abs", r.passed ? "PASS" : "FAIL");
        out += buf;
        passed += r.passed;
    }
    std::snprintf(buf, sizeof buf, "%d/%zu identities passed (seed %llu)\n", passed, rep.results.size(),
                  static_cast<unsigned long long>(rep.seed));
    out += buf;
    return out;
}

}  // namespace gb2d
