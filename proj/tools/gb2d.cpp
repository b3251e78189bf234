// gb2d: command-line front end for the two-dimensional Bessel library.
//
//   gb2d eval    --n N --p P --q Q --u U --v V [--method M] [--delta D]
//   gb2d grid    ... --u-range A B --v-range C D --nu NU --nv NV --out PREFIX --format csv|pgm|both
//   gb2d compare ... --method M [--reference R] [--rel-floor F]
//   gb2d nodal   ... --u-range A B --v-range C D [--out PREFIX]
//   gb2d check   [--seed S] [--only NAME]... [--workers W]
//
// Exit codes: 0 ok, 1 usage, 2 domain/tolerance, 3 regime, 4 check failure, 5 I/O.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gb2d/gb2d.hpp"

namespace {

enum Exit { ok = 0, usage = 1, domain = 2, regime = 3, check_failed = 4, io = 5 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 15 significant digits, exponent without sign padding: 1.00000000000000e0
std::string format_value(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.14e", x);
    std::string s = buf;
    const auto e = s.find('e');
    const int exponent = std::stoi(s.substr(e + 1));
    return s.substr(0, e + 1) + std::to_string(exponent);
}

struct Options {
    long n = 0, p = 1, q = 2;
    std::optional<double> u, v;
    std::vector<double> u_range, v_range;
    int nu = 101, nv = 101;
    std::string method = "exact";
    std::string reference = "exact";
    std::optional<double> tol;
    std::optional<double> delta;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int workers = 1;
    std::vector<std::string> only;
    int order = 12;
    long nodes = 0;
    double rel_floor = 0.02;
};

void add_index(CLI::App* c, Options& o) {
    c->add_option("--n", o.n, "order n")->required();
    c->add_option("--p", o.p, "first frequency p")->required();
    c->add_option("--q", o.q, "second frequency q")->required();
}

void add_grid(CLI::App* c, Options& o) {
    add_index(c, o);
    auto* u = c->add_option("--u", o.u, "fixed u (slice)");
    auto* v = c->add_option("--v", o.v, "fixed v (slice)");
    c->add_option("--u-range", o.u_range, "u_min u_max")->expected(2)->excludes(u);
    c->add_option("--v-range", o.v_range, "v_min v_max")->expected(2)->excludes(v);
    c->add_option("--nu", o.nu, "samples along u");
    c->add_option("--nv", o.nv, "samples along v");
    c->add_option("--delta", o.delta, "phase of the parameterized variant");
    c->add_option("--tol", o.tol, "series tolerance");
    c->add_option("--order", o.order, "small_poly truncation order");
    c->add_option("--workers", o.workers, "worker threads (0 = all cores)");
}

gb2d::Method method_from(const std::string& name) {
    auto m = gb2d::parse_method(name);
    if (!m) throw UsageError("unknown method '" + name + "'");
    return *m;
}

gb2d::GridSpec grid_spec(const Options& o) {
    gb2d::GridSpec s;
    s.index = gb2d::Index{o.n, o.p, o.q};
    if (o.u) {
        s.u_min = s.u_max = *o.u;
        s.nu = 1;
    } else if (!o.u_range.empty()) {
        s.u_min = o.u_range[0];
        s.u_max = o.u_range[1];
        s.nu = o.nu;
    } else {
        throw UsageError("one of --u or --u-range is required");
    }
    if (o.v) {
        s.v_min = s.v_max = *o.v;
        s.nv = 1;
    } else if (!o.v_range.empty()) {
        s.v_min = o.v_range[0];
        s.v_max = o.v_range[1];
        s.nv = o.nv;
    } else {
        throw UsageError("one of --v or --v-range is required");
    }
    s.method = method_from(o.method);
    s.delta = o.delta;
    s.poly_order = o.order;
    if (o.tol) s.tol = *o.tol;
    s.validate();
    return s;
}

// Writes through `body` to path, or to stdout when path is empty.
template <class Body>
void emit(const std::string& path, bool binary, Body body) {
    if (path.empty()) {
        body(std::cout);
        std::cout.flush();
        if (!std::cout) throw IoError("cannot write to standard output");
        return;
    }
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    body(f);
    f.close();
    if (!f) throw IoError("write failed for '" + path + "'");
}

int cmd_eval(const Options& o) {
    const gb2d::Index idx{o.n, o.p, o.q};
    if (!o.u || !o.v) throw UsageError("eval needs --u and --v");
    const double u = *o.u, v = *o.v;
    const gb2d::Method m = method_from(o.method);
    const double tol = o.tol.value_or(gb2d::default_series_tol);

    if (o.delta) {
        std::complex<double> value;
        std::string extra;
        if (m == gb2d::Method::quadrature) {
            if (o.p != 1) throw gb2d::domain_error("eval: quadrature with --delta requires p = 1");
            const long nodes = o.nodes > 0 ? o.nodes : gb2d::auto_nodes(idx, u, v);
            value = gb2d::eval_param_quadrature(o.n, o.q, u, v, *o.delta, nodes);
            extra = "# nodes " + std::to_string(nodes);
        } else if (m == gb2d::Method::exact || m == gb2d::Method::series) {
            const auto r = gb2d::eval_param(idx, u, v, std::exp(std::complex<double>(0.0, *o.delta)), tol);
            value = r.value;
            extra = "# terms " + std::to_string(r.terms_used) + " tail_bound " + format_value(r.tail_bound);
        } else {
            throw gb2d::domain_error(std::string("eval: --delta is not supported by method ") + gb2d::method_name(m));
        }
        std::cout << format_value(value.real()) << ' ' << format_value(value.imag()) << '\n' << extra << '\n';
        return ok;
    }

    switch (m) {
        case gb2d::Method::series: {
            const auto r = gb2d::eval_series(idx, u, v, tol);
            std::cout << format_value(r.value) << "\n# terms " << r.terms_used << " tail_bound "
                      << format_value(r.tail_bound) << '\n';
            return ok;
        }
        case gb2d::Method::quadrature: {
            const auto r = o.nodes > 0 ? gb2d::eval_quadrature(idx, u, v, o.nodes) : gb2d::eval_quadrature(idx, u, v);
            std::cout << format_value(r.value) << "\n# nodes " << r.nodes << '\n';
            return ok;
        }
        default: {
            gb2d::GridSpec s;
            s.index = idx;
            s.method = m;
            s.poly_order = o.order;
            s.tol = tol;
            std::cout << format_value(gb2d::evaluate_point(s, u, v)) << '\n';
            return ok;
        }
    }
}

int cmd_grid(const Options& o) {
    const gb2d::GridSpec s = grid_spec(o);
    const bool csv = o.format == "csv" || o.format == "both";
    const bool pgm = o.format == "pgm" || o.format == "both";
    if (!csv && !pgm) throw UsageError("--format must be csv, pgm or both");
    if (o.out.empty() && csv && pgm) throw UsageError("--format both needs --out");
    const gb2d::FieldGrid g = gb2d::evaluate_grid(s, o.workers);
    if (csv) emit(o.out.empty() ? "" : o.out + ".csv", false, [&](std::ostream& os) { gb2d::write_csv(os, g); });
    if (pgm) emit(o.out.empty() ? "" : o.out + ".pgm", true, [&](std::ostream& os) { gb2d::write_pgm(os, g); });
    return ok;
}

int cmd_compare(const Options& o) {
    const gb2d::GridSpec s = grid_spec(o);
    const gb2d::CompareResult r = gb2d::compare_grid(s, method_from(o.reference), o.rel_floor, o.workers);
    emit(o.out.empty() ? "" : o.out + ".csv", false,
         [&](std::ostream& os) { gb2d::write_compare_csv(os, r, o.rel_floor); });
    if (!o.out.empty()) std::cout << gb2d::format_compare_summary(r.summary, o.rel_floor);
    return ok;
}

int cmd_nodal(const Options& o) {
    gb2d::GridSpec s = grid_spec(o);
    if (s.method != gb2d::Method::exact) throw UsageError("nodal traces the exact field only");
    if (s.nu < 2 || s.nv < 2) throw UsageError("nodal needs --u-range and --v-range");
    const gb2d::FieldGrid g = gb2d::evaluate_grid(s, o.workers);
    const gb2d::Evaluator ev(s.index);
    const auto lines = gb2d::trace_zero_contours(g, [&](double u, double v) { return ev(u, v); });
    const auto notes = gb2d::predicted_nodal_annotations(s);
    emit(o.out.empty() ? "" : o.out + ".txt", false,
         [&](std::ostream& os) { gb2d::write_polylines(os, lines, notes); });
    return ok;
}

int cmd_check(const Options& o) {
    const gb2d::CheckReport rep = gb2d::run_check(o.seed, o.only, o.workers);
    std::cout << gb2d::format_report(rep);
    return rep.all_passed() ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-dimensional Bessel functions J_n^{p,q}(u,v)"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "evaluate at one point");
    add_index(eval, o);
    eval->add_option("--u", o.u, "u")->required();
    eval->add_option("--v", o.v, "v")->required();
    eval->add_option("--method", o.method, "exact, series, quadrature, asym_large_args, asym_large_vn, "
                                           "asym_limit_v, small_poly");
    eval->add_option("--delta", o.delta, "phase of the parameterized variant");
    eval->add_option("--tol", o.tol, "series tolerance");
    eval->add_option("--nodes", o.nodes, "quadrature nodes (default automatic)");
    eval->add_option("--order", o.order, "small_poly truncation order");

    auto* grid = app.add_subcommand("grid", "sample a rectangle to CSV and/or PGM");
    add_grid(grid, o);
    grid->add_option("--method", o.method, "evaluation method");
    grid->add_option("--out", o.out, "output prefix (stdout when omitted)");
    grid->add_option("--format", o.format, "csv, pgm or both");

    auto* compare = app.add_subcommand("compare", "compare a method against a reference");
    add_grid(compare, o);
    compare->add_option("--method", o.method, "method under test")->required();
    compare->add_option("--reference", o.reference, "reference method");
    compare->add_option("--rel-floor", o.rel_floor, "relative errors only where |reference| exceeds this");
    compare->add_option("--out", o.out, "output prefix (stdout when omitted)");

    auto* nodal = app.add_subcommand("nodal", "trace zero contours of the exact field");
    add_grid(nodal, o);
    nodal->add_option("--out", o.out, "output prefix (stdout when omitted)");

    auto* check = app.add_subcommand("check", "run the randomized identity suite");
    check->add_option("--seed", o.seed, "random seed");
    check->add_option("--only", o.only, "restrict to these identities")->delimiter(',');
    check->add_option("--workers", o.workers, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*eval) return cmd_eval(o);
        if (*grid) return cmd_grid(o);
        if (*compare) return cmd_compare(o);
        if (*nodal) return cmd_nodal(o);
        if (*check) return cmd_check(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return io;
    } catch (const gb2d::regime_error& e) {
        std::cerr << "regime error: " << e.what() << '\n';
        return regime;
    } catch (const gb2d::tolerance_error& e) {
        std::cerr << "tolerance error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return domain;
    }
    return usage;
}
