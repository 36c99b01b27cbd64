#include "cli.hpp"
#include "conic/conditions.hpp"
#include "conic/counting.hpp"
#include "conic/elliptic.hpp"
#include "conic/lame.hpp"
#include "conic/oracle/oracles.hpp"
#include "conic/scan.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace conic;
using nlohmann::ordered_json;

namespace
{

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            if (pass) {
                detail = what;
            }
            pass = false;
        }
    }
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void partitions(std::int64_t total, const std::function<void(const std::vector<std::int64_t> &)> &visit)
{
    std::vector<std::int64_t> parts;
    std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t left, std::int64_t max_part) {
        if (left == 0) {
            visit(parts);
            return;
        }
        for (std::int64_t p = std::min(left, max_part); p >= 1; --p) {
            parts.push_back(p);
            rec(left - p, p);
            parts.pop_back();
        }
    };
    rec(total, total);
}

AngleVector random_vector(std::mt19937_64 &rng, int n_max, int den_max, int genus)
{
    std::uniform_int_distribution<int> nd(1, n_max), dd(1, den_max), num(1, 4 * den_max);
    std::vector<Rational> v;
    const int n = nd(rng);
    for (int i = 0; i < n; ++i) {
        v.emplace_back(num(rng), dd(rng));
    }
    return AngleVector(std::move(v), genus);
}

std::string cli_out(std::vector<std::string> args, int &code)
{
    args.insert(args.begin(), "conic");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

Outcome counting()
{
    Outcome o;
    int code = 0;
    const auto j = nlohmann::json::parse(cli_out({"count", "--angles", "2,2,2,2"}, code));
    o.require(code == 0 && j["kostka"] == 2, "count 2,2,2,2 != 2");

    const auto t0 = clock_type::now();
    int contents = 0;
    for (std::int64_t d = 1; d <= 7; ++d) {
        partitions(2 * d - 2, [&](const std::vector<std::int64_t> &c) {
            ++contents;
            o.require(two_row_kostka(c, d - 1) == oracle::kostka_enumerate(c, d - 1), "tableau count differs from enumeration");
        });
    }
    const double t = seconds_since(t0);
    o.require(t < 5.0, "enumeration over 5 s");

    for (std::int64_t d = 2; d <= 8; ++d) {
        std::vector<Rational> v(static_cast<std::size_t>(2 * d - 2), Rational(2));
        o.require(kostka_count(AngleVector(v)).value == catalan(d - 1), "all-simple count differs from Catalan");
    }
    if (o.pass) {
        o.detail = fmt("%d contents with d <= 7 in %.2f s; Catalan d <= 8", contents, t);
    }
    return o;
}

Outcome degree()
{
    Outcome o;
    for (int m = 1; m <= 10; ++m) {
        const auto r = chen_lin_degree(AngleVector({Rational(2 * m)}, 1));
        o.require(r.value == m, fmt("degree(%d) != %d", 2 * m, m));
        o.require(r.value == *torus_moduli_topology(Rational(2 * m)).torus->forgetful_degree, "forgetful degree mismatch");
    }
    std::mt19937_64 rng(14);
    int holds = 0;
    for (int i = 0; i < 500; ++i) {
        const auto a = random_vector(rng, 5, 4, static_cast<int>(rng() % 3));
        const bool con = chen_lin_con(a).verdict == Verdict::holds;
        holds += con ? 1 : 0;
        o.require(con == (nonbubbling(a).value > Rational(0)), "con and NB > 0 disagree");
    }
    if (o.pass) {
        o.detail = fmt("m = 1..10 exact; con <=> NB > 0 on 500 vectors (%d hold)", holds);
    }
    return o;
}

Outcome closure()
{
    Outcome o;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_vector(rng, 6, 7, 0);
        o.require(closure_distance(a) == oracle::closure_distance_box(a), "fast distance differs from box search");
    }
    o.require(closure_distance(AngleVector::parse("1/2,1/2,1/2,3/2", 0)) == Rational(2), "(1/2,1/2,1/2,3/2) != 2");
    if (o.pass) {
        o.detail = "1000 vectors exact; (1/2,1/2,1/2,3/2) -> 2";
    }
    return o;
}

Outcome elliptic()
{
    Outcome o;
    const auto t0 = clock_type::now();
    const cplx I(0.0, 1.0);
    double worst_identity = 0.0;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (const cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.1), cplx(-0.45, 0.62), cplx(0.5, 0.8660254037844386), cplx(0.1, 3.5)}) {
        const auto ctx = EllipticContext::from_tau(tau);
        worst_identity = std::max(worst_identity, std::abs(ctx.eta2() * ctx.omega1() - ctx.eta1() * ctx.omega2() - std::numbers::pi * I / 2.0));
        worst_identity = std::max(worst_identity, std::abs(ctx.e1() + ctx.e2() + ctx.e3()));
        for (int i = 0; i < 25; ++i) {
            const cplx z = u(rng) + u(rng) * ctx.tau();
            if (ctx.distance_to_lattice(z) < 0.05 * ctx.min_period()) {
                continue;
            }
            const cplx p = ctx.wp(z), dp = ctx.wp_prime(z);
            const cplx rhs = 4.0 * p * p * p - ctx.g2() * p - ctx.g3();
            worst_identity = std::max(worst_identity, std::abs(dp * dp - rhs) / std::max(1.0, std::abs(rhs)));
            for (int k = 1; k <= 3; ++k) {
                const cplx w = ctx.omega(k);
                const cplx expect = -std::exp(2.0 * ctx.eta(k) * (z + w)) * ctx.sigma(z);
                worst_identity = std::max(worst_identity, std::abs(ctx.sigma(z + 2.0 * w) - expect) / std::max(1.0, std::abs(expect)));
            }
        }
    }
    worst_identity = std::max(worst_identity, std::abs(EllipticContext::from_tau(I).wp((1.0 + I) / 2.0)));
    o.require(worst_identity < 1e-9, fmt("identity residual %.3g", worst_identity));

    double worst_oracle = 0.0;
    for (const cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.1), cplx(-0.45, 0.62)}) {
        const auto ctx = EllipticContext::from_tau(tau);
        const oracle::LatticeSums ls(tau);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                const cplx z = -0.4 + 0.2 * i + 0.013 + (-0.4 + 0.2 * j + 0.021) * tau;
                for (const auto &[x, y] : {std::pair{ctx.wp(z), ls.wp(z)}, std::pair{ctx.zeta(z), ls.zeta(z)}, std::pair{ctx.sigma(z), ls.sigma(z)}}) {
                    worst_oracle = std::max(worst_oracle, std::abs(x - y) / std::max(1.0, std::abs(y)));
                }
            }
        }
    }
    o.require(worst_oracle < 1e-7, fmt("oracle deviation %.3g", worst_oracle));
    const double t = seconds_since(t0);
    o.require(t < 10.0, "over 10 s");
    if (o.pass) {
        o.detail = fmt("identities %.2g, oracle %.2g (3 lattices x 25 points), %.2f s", worst_identity, worst_oracle, t);
    }
    return o;
}

Outcome solver(const ScanGrid &grid, double scan_seconds)
{
    Outcome o;
    const auto t0 = clock_type::now();
    double worst_trivial = 0.0, worst_mult = 0.0, worst_lambda = 0.0;
    int exists = 0, empty = 0;
    for (const auto &c : grid.cells) {
        o.require(c.error.empty(), "solver failed at a cell: " + c.error);
        if (!c.error.empty()) {
            continue;
        }
        worst_trivial = std::max(worst_trivial, c.max_trivial_residual);
        o.require(std::abs(c.winding_count) == (c.exists ? 2 : 0), "winding count disagrees with Newton outcome");
        if (!c.exists) {
            ++empty;
            continue;
        }
        ++exists;
        const auto ctx = EllipticContext::from_tau(c.tau);
        const auto res = find_solutions(ctx);
        o.require(res.solutions.size() == 2, "existence cell without exactly two roots");
        if (res.solutions.size() != 2) {
            continue;
        }
        o.require(ctx.distance_to_lattice(res.solutions[0].a + res.solutions[1].a) < 1e-9, "roots are not a +- pair");
        worst_lambda = std::max(worst_lambda, std::abs(res.solutions[0].lambda - res.solutions[1].lambda));
        for (const auto &s : res.solutions) {
            for (const cplx m : s.multipliers) {
                worst_mult = std::max(worst_mult, std::abs(std::abs(m) - 1.0));
            }
        }
    }
    o.require(worst_trivial < 1e-10, fmt("trivial residual %.3g", worst_trivial));
    o.require(worst_mult < 1e-8, fmt("multiplier deviation %.3g", worst_mult));
    o.require(worst_lambda < 1e-9, fmt("lambda mismatch %.3g", worst_lambda));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(grid.rect.re_min, grid.rect.re_max), im(grid.rect.im_min, grid.rect.im_max);
    for (int i = 0; i < 10; ++i) {
        const cplx tau(re(rng), im(rng));
        const bool v = region_by_solver(tau);
        o.require(region_by_solver(tau + 1.0) == v, "verdict changes under tau + 1");
        o.require(region_by_solver(-1.0 / tau) == v, "verdict changes under -1/tau");
    }
    o.require(exists > 0 && empty > 0, "region is not a nonempty proper subset");
    const double t = scan_seconds + seconds_since(t0);
    o.require(t < 120.0, "over 2 min");
    if (o.pass) {
        o.detail = fmt("%d exist / %d empty; trivial %.1g, |mult|-1 %.1g, lambda %.1g; %.2f s", exists, empty, worst_trivial, worst_mult,
                       worst_lambda, t);
    }
    return o;
}

Outcome identities(const ScanGrid &grid)
{
    Outcome o;
    double ode = 0.0, schw = 0.0, even = 0.0, period = 0.0, curv = 0.0, curv_fine = 0.0, exponent = 0.0;
    double ratio_min = 1e300, ratio_max = 0.0;
    int solutions = 0;
    for (const auto &c : grid.cells) {
        if (!c.solution) {
            continue;
        }
        ++solutions;
        const auto ctx = EllipticContext::from_tau(c.tau);
        const auto &s = *c.solution;
        const double m = ctx.min_period();
        std::vector<cplx> pts;
        for (const cplx z : interior_grid(ctx, 6, 0.1)) {
            if (ctx.distance_to_lattice(z - s.a) > 0.1 * m && ctx.distance_to_lattice(z + s.a) > 0.1 * m) {
                pts.push_back(z);
            }
        }
        for (const cplx z : pts) {
            const auto r = lame_ode_residual(ctx, s, z);
            ode = std::max({ode, r[0], r[1]});
            schw = std::max(schw, schwarzian_check(ctx, s, z));
            const double rho = metric_density(ctx, s, z);
            even = std::max(even, std::abs(metric_density(ctx, s, -z) - rho));
            period = std::max(period, std::abs(metric_density(ctx, s, z + 2.0 * ctx.omega1()) - rho));
            period = std::max(period, std::abs(metric_density(ctx, s, z + 2.0 * ctx.omega2()) - rho));
        }
        const auto grid_pts = interior_grid(ctx, 8);
        const double coarse = curvature_residual(ctx, s, grid_pts, 2e-2);
        const double fine = curvature_residual(ctx, s, grid_pts, 1e-2);
        ratio_min = std::min(ratio_min, coarse / fine);
        ratio_max = std::max(ratio_max, coarse / fine);
        curv = std::max(curv, curvature_residual(ctx, s, grid_pts, 1e-3));
        curv_fine = std::max(curv_fine, curvature_residual(ctx, s, grid_pts, 2.5e-5));
        for (int ray = 0; ray < 4; ++ray) {
            const cplx dir = std::polar(1.0, 0.3 + ray * std::numbers::pi / 2.0);
            const double l1 = std::log(metric_density(ctx, s, 1e-2 * m * dir));
            const double l2 = std::log(metric_density(ctx, s, 1e-3 * m * dir));
            exponent = std::max(exponent, std::abs((l1 - l2) / std::log(10.0) - 2.0));
        }
    }
    o.require(solutions > 0, "no solution to test");
    o.require(ode < 1e-5, fmt("ODE residual %.3g", ode));
    o.require(schw < 1e-4, fmt("Schwarzian residual %.3g", schw));
    o.require(even < 1e-8, fmt("evenness %.3g", even));
    o.require(period < 1e-8, fmt("periodicity %.3g", period));
    o.require(curv < 1e-3, fmt("curvature residual %.3g at h = 1e-3", curv));
    o.require(ratio_min >= 3.5 && ratio_max <= 4.5, fmt("curvature ratio in [%.3g, %.3g]", ratio_min, ratio_max));
    o.require(exponent < 0.05, fmt("exponent off by %.3g", exponent));
    const std::string summary = fmt("%d solutions; ODE %.1g, Schwarzian %.1g, even %.1g, periodic %.1g, curvature %.2g at h = 1e-3 "
                                    "(%.1g at h = 2.5e-5, ratio %.2f..%.2f), exponent %.1g",
                                    solutions, ode, schw, even, period, curv, curv_fine, ratio_min, ratio_max, exponent);
    o.detail = o.pass ? summary : o.detail + "; " + summary;
    return o;
}

Outcome audit(const ScanGrid &grid, const std::filesystem::path &dir)
{
    Outcome o;
    const auto rep = inequality_agreement(grid, 2);
    const ordered_json j = {{"rect", {grid.rect.re_min, grid.rect.re_max, grid.rect.im_min, grid.rect.im_max}},
                            {"resolution", {grid.nx, grid.ny}},
                            {"band", 2},
                            {"exists_cells", rep.exists_cells},
                            {"empty_cells", rep.empty_cells},
                            {"failed_cells", rep.failed_cells},
                            {"band_cells", rep.band_cells},
                            {"ineq_thm", {{"compared", rep.theorem.compared}, {"agree", rep.theorem.agree}, {"agree_percent", rep.theorem.percent()}}},
                            {"ineq_proof", {{"compared", rep.proof.compared}, {"agree", rep.proof.agree}, {"agree_percent", rep.proof.percent()}}}};
    const auto csv_path = dir / "acceptance_scan.csv";
    const auto report_path = dir / "acceptance_report.json";
    {
        std::ofstream csv(csv_path);
        write_scan_csv(csv, grid);
        std::ofstream report(report_path);
        report << j.dump(2) << '\n';
        o.require(csv.good() && report.good(), "could not write the report");
    }
    if (o.pass) {
        o.detail = fmt("theorem variant %.1f%% of %d cells, proof variant %.1f%% of %d cells; written to %s", rep.theorem.percent(),
                       rep.theorem.compared, rep.proof.percent(), rep.proof.compared, report_path.string().c_str());
    }
    return o;
}

}

int main(int argc, char **argv)
{
    const std::filesystem::path dir = argc > 1 ? argv[1] : ".";
    int failures = 0;
    const auto print = [&](int n, const char *name, const Outcome &o) {
        std::printf("criterion %d %-22s %s  %s\n", n, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    };
    print(1, "counting", counting());
    print(2, "degree", degree());
    print(3, "closure", closure());
    print(4, "elliptic", elliptic());

    const auto t0 = clock_type::now();
    const auto grid = region_scan(ScanRect{-0.5, 0.5, 0.5, 2.0}, 20, 20, 4);
    const double scan_seconds = seconds_since(t0);
    print(5, "lame-solver", solver(grid, scan_seconds));
    print(6, "analytic-identities", identities(grid));
    print(7, "inequality-audit", audit(grid, dir));
    std::printf("%s: %d of 7 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
    return failures == 0 ? 0 : 1;
}
