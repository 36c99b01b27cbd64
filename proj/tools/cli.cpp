#include "cli.hpp"

#include "conic/angles.hpp"
#include "conic/conditions.hpp"
#include "conic/counting.hpp"
#include "conic/elliptic.hpp"
#include "conic/errors.hpp"
#include "conic/lame.hpp"
#include "conic/oracle/oracles.hpp"
#include "conic/scan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace conic::cli
{

using nlohmann::ordered_json;

namespace
{

double parse_double(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
        throw DomainError("malformed number '" + std::string(s) + "'");
    }
    return v;
}

ordered_json cjson(cplx z)
{
    return ordered_json::array({z.real(), z.imag()});
}

ordered_json rjson(const Rational &r)
{
    return r.str();
}

ordered_json verdict_json(const std::optional<Verdict> &v)
{
    return v ? std::string(to_string(*v)) : std::string("n/a");
}

ordered_json angles_json(const AngleVector &a)
{
    ordered_json arr = ordered_json::array();
    for (const auto &x : a.angles()) {
        arr.push_back(rjson(x));
    }
    return arr;
}

template <class T>
ordered_json list_json(const std::vector<T> &v)
{
    ordered_json arr = ordered_json::array();
    for (const auto &x : v) {
        arr.push_back(x);
    }
    return arr;
}

ordered_json report_json(const AngleVector &a, const ConditionReport &rep)
{
    ordered_json j;
    j["genus"] = a.genus();
    j["angles"] = angles_json(a);
    ordered_json v;
    for (const auto &[name, entry] : rep.verdicts) {
        v[name] = {{"verdict", verdict_json(entry.verdict)}, {"detail", entry.detail}};
    }
    j["verdicts"] = v;
    j["gauss_bonnet"] = rjson(rep.gauss_bonnet_value);
    if (rep.closure_distance) {
        j["closure_distance"] = rjson(*rep.closure_distance);
    }
    if (rep.sphere_class) {
        j["sphere_class"] = std::string(to_string(*rep.sphere_class));
    }
    if (rep.coaxial_witness) {
        const auto &w = *rep.coaxial_witness;
        ordered_json c = ordered_json::array();
        for (const auto &x : w.c) {
            c.push_back(rjson(x));
        }
        j["coaxial_witness"] = {{"signs", list_json(w.signs)},
                                {"k_prime", w.k_prime},
                                {"k_double_prime", w.k_double_prime},
                                {"c", c},
                                {"b", list_json(w.b)},
                                {"b_l1", w.b_l1},
                                {"max_integer_angle", w.max_integer_angle}};
    }
    if (rep.luo_tian) {
        j["luo_tian"] = {{"value", rjson(rep.luo_tian->value)},
                         {"bound", rjson(rep.luo_tian->bound)},
                         {"on_boundary", rep.luo_tian->on_boundary},
                         {"unique", rep.luo_tian->unique}};
    }
    if (rep.three_nonint) {
        j["three_nonint"] = {{"value", rep.three_nonint->value},
                             {"sigma", rep.three_nonint->sigma},
                             {"class_bound", rep.three_nonint->class_bound},
                             {"non_integer", list_json(rep.three_nonint->non_integer)}};
    }
    if (rep.nonbubbling) {
        j["nonbubbling"] = {{"value", rjson(rep.nonbubbling->value)},
                            {"subset", list_json(rep.nonbubbling->subset)},
                            {"b", rep.nonbubbling->b},
                            {"nearest", rjson(rep.nonbubbling->nearest)}};
    }
    if (rep.chen_lin) {
        ordered_json c = {{"verdict", verdict_json(rep.chen_lin->verdict)},
                          {"holds_for_all_integer_k", rep.chen_lin->holds_for_all_integer_k}};
        if (rep.chen_lin->subset) {
            c["subset"] = list_json(*rep.chen_lin->subset);
            c["k"] = *rep.chen_lin->k;
        }
        j["chen_lin_con"] = c;
    }
    return j;
}

ordered_json count_json(const CountResult &r)
{
    ordered_json j;
    j["kind"] = std::string(to_string(r.kind));
    j["value"] = r.value;
    const auto &d = r.derivation;
    if (d.map_degree) {
        j["map_degree"] = *d.map_degree;
    }
    if (!d.content.empty()) {
        j["content"] = list_json(d.content);
    }
    if (d.threshold) {
        j["threshold"] = rjson(*d.threshold);
    }
    if (!d.series.empty()) {
        ordered_json s = ordered_json::array();
        for (const auto &t : d.series) {
            s.push_back({{"exponent", rjson(t.exponent)}, {"coefficient", t.coefficient}});
        }
        j["series"] = s;
    }
    if (d.selected_k) {
        j["selected_k"] = *d.selected_k;
    }
    if (r.torus) {
        const auto &t = *r.torus;
        ordered_json tj = {{"m", t.m}, {"odd_integer", t.odd_integer}, {"even_integer", t.even_integer}};
        if (t.genus) {
            tj["genus"] = *t.genus;
        }
        if (t.punctures) {
            tj["punctures"] = *t.punctures;
        }
        if (t.components) {
            tj["components"] = *t.components;
        }
        if (t.forgetful_degree) {
            tj["forgetful_degree"] = *t.forgetful_degree;
        }
        j["torus"] = tj;
    }
    return j;
}

ordered_json solution_json(const LameSolution &s)
{
    return {{"a", cjson(s.a)},
            {"lambda", cjson(s.lambda)},
            {"residual_main", s.residual_main},
            {"unitarity_residuals", {s.unitarity_residuals[0], s.unitarity_residuals[1]}},
            {"multipliers", {cjson(s.multipliers[0]), cjson(s.multipliers[1])}},
            {"multiplier_moduli", {std::abs(s.multipliers[0]), std::abs(s.multipliers[1])}},
            {"newton_iters", s.newton_iters}};
}

ordered_json solve_json(const EllipticContext &ctx, const SolveResult &res)
{
    ordered_json j;
    j["tau"] = cjson(ctx.tau());
    j["swapped"] = ctx.swapped();
    j["exists"] = res.exists();
    if (res.exists()) {
        j["solution"] = solution_json(res.solutions[0]);
        j["partner"] = solution_json(res.solutions[1]);
        const auto &s = res.solutions[0];
        const auto pts = interior_grid(ctx, 6, 0.1);
        j["identities"] = {{"lambda_pair_difference", std::abs(s.lambda - res.solutions[1].lambda)},
                           {"curvature_residual_h1e-3", curvature_residual(ctx, s, pts, 1e-3)},
                           {"schwarzian_residual", schwarzian_check(ctx, s, cplx(0.31, 0.17))},
                           {"lame_ode_residual", std::max(lame_ode_residual(ctx, s, cplx(0.31, 0.17))[0],
                                                          lame_ode_residual(ctx, s, cplx(0.31, 0.17))[1])}};
    }
    const auto &d = res.diagnostics;
    j["diagnostics"] = {{"seeds", d.seeds},
                        {"converged", d.converged},
                        {"trivial_hits", d.trivial_hits},
                        {"max_trivial_residual", d.max_trivial_residual},
                        {"pole_winding", d.pole_winding},
                        {"trivial_winding", {d.trivial_winding[0], d.trivial_winding[1], d.trivial_winding[2]}},
                        {"trivial_index", {d.trivial_index[0], d.trivial_index[1], d.trivial_index[2]}},
                        {"cell_winding", d.cell_winding},
                        {"winding_count", d.winding_count}};
    j["coefficients"] = {{"A", cjson(res.coeffs.A)},
                         {"B", cjson(res.coeffs.B)},
                         {"A_printed", cjson(res.coeffs.A_printed)},
                         {"B_printed", cjson(res.coeffs.B_printed)},
                         {"printed_discrepancy", res.coeffs.printed_discrepancy}};
    for (auto [name, variant] : {std::pair("ineq_thm", IneqVariant::theorem), std::pair("ineq_proof", IneqVariant::proof)}) {
        try {
            const auto r = region_by_inequalities(ctx, variant);
            j[name] = {{"holds", r.holds}, {"im_values", {r.im_values[0], r.im_values[1], r.im_values[2]}}};
        } catch (const DomainError &e) {
            j[name] = {{"holds", nullptr}, {"error", e.what()}};
        }
    }
    return j;
}

struct SuiteTally
{
    int checked = 0;
    int failed = 0;
    void add(bool ok)
    {
        ++checked;
        failed += !ok;
    }
};

AngleVector random_angles(std::mt19937_64 &rng, int n_max, int den_max, int genus)
{
    std::uniform_int_distribution<int> nd(1, n_max), dd(1, den_max), num(1, 4 * den_max);
    std::vector<Rational> v;
    const int n = nd(rng);
    for (int i = 0; i < n; ++i) {
        v.emplace_back(num(rng), dd(rng));
    }
    return AngleVector(std::move(v), genus);
}

ordered_json selftest()
{
    std::mt19937_64 rng(20240611);
    ordered_json suites;

    SuiteTally closure;
    for (int i = 0; i < 300; ++i) {
        const auto a = random_angles(rng, 5, 6, 0);
        closure.add(closure_distance(a) == oracle::closure_distance_box(a));
    }
    suites["closure_distance"] = {{"checked", closure.checked}, {"failed", closure.failed}};

    SuiteTally kostka;
    for (std::int64_t d = 2; d <= 5; ++d) {
        // Every content vector with entries in 1..d-1 summing to 2d-2, in sorted order.
        std::vector<std::int64_t> c;
        std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t left, std::int64_t max_part) {
            if (left == 0) {
                kostka.add(two_row_kostka(c, d - 1) == oracle::kostka_enumerate(c, d - 1));
                return;
            }
            for (std::int64_t p = std::min(left, max_part); p >= 1; --p) {
                c.push_back(p);
                rec(left - p, p);
                c.pop_back();
            }
        };
        rec(2 * d - 2, d - 1);
    }
    suites["kostka"] = {{"checked", kostka.checked}, {"failed", kostka.failed}};

    SuiteTally nb;
    for (int i = 0; i < 200; ++i) {
        const auto a = random_angles(rng, 5, 4, static_cast<int>(rng() % 3));
        nb.add(nonbubbling(a).value == oracle::nonbubbling_scan(a));
    }
    suites["nonbubbling"] = {{"checked", nb.checked}, {"failed", nb.failed}};

    SuiteTally degree;
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<int> nd(1, 4), val(1, 7);
        std::vector<Rational> v;
        const int n = nd(rng);
        for (int k = 0; k < n; ++k) {
            v.emplace_back(val(rng));
        }
        const AngleVector a(std::move(v), 1 + static_cast<int>(rng() % 2));
        if (chen_lin_con(a).verdict != Verdict::holds) {
            continue;
        }
        degree.add(chen_lin_degree(a).value == oracle::chen_lin_degree_dense(a));
    }
    suites["chen_lin_degree"] = {{"checked", degree.checked}, {"failed", degree.failed}};

    SuiteTally elliptic;
    for (cplx tau : {cplx(0.0, 1.0), cplx(0.3, 0.8), cplx(-0.45, 0.62)}) {
        const auto ctx = EllipticContext::from_tau(tau);
        const oracle::LatticeSums ls(tau);
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        for (int i = 0; i < 10; ++i) {
            const cplx z = u(rng) + u(rng) * tau;
            if (ctx.distance_to_lattice(z) < 0.05) {
                continue;
            }
            auto rel = [](cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); };
            elliptic.add(rel(ctx.wp(z), ls.wp(z)) < 1e-9 && rel(ctx.zeta(z), ls.zeta(z)) < 1e-9
                         && rel(ctx.wp_prime(z), ls.wp_prime(z)) < 1e-9 && rel(ctx.sigma(z), ls.sigma(z)) < 1e-9);
        }
    }
    suites["elliptic"] = {{"checked", elliptic.checked}, {"failed", elliptic.failed}};

    SuiteTally lame;
    const cplx hex = std::exp(cplx(0.0, std::numbers::pi / 3.0));
    lame.add(region_by_solver(hex));
    lame.add(!region_by_solver(cplx(0.0, 1.0)));
    suites["lame"] = {{"checked", lame.checked}, {"failed", lame.failed}};

    bool passed = true;
    for (const auto &[name, s] : suites.items()) {
        passed = passed && s["failed"].get<int>() == 0;
    }
    return {{"suites", suites}, {"passed", passed}};
}

std::array<double, 4> parse_rect(const std::string &text)
{
    std::array<double, 4> r{};
    std::size_t start = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t end = text.find(',', start);
        if ((end == std::string::npos) != (i == 3)) {
            throw DomainError("--rect expects four comma-separated numbers");
        }
        r[i] = parse_double(std::string_view(text).substr(start, end == std::string::npos ? std::string::npos : end - start));
        start = end + 1;
    }
    return r;
}

std::pair<int, int> parse_res(const std::string &text)
{
    const std::size_t x = text.find_first_of("xX");
    const auto one = [](std::string_view s) {
        int v = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || p != s.data() + s.size() || v <= 0) {
            throw DomainError("--res expects positive integers NxM");
        }
        return v;
    };
    if (x == std::string::npos) {
        const int n = one(text);
        return {n, n};
    }
    return {one(std::string_view(text).substr(0, x)), one(std::string_view(text).substr(x + 1))};
}

std::ofstream open_out(const std::string &path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw DomainError("cannot open '" + path + "' for writing");
    }
    return f;
}

}

std::complex<double> parse_complex(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (c != ' ') {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw DomainError("empty complex number");
    }
    if (const auto comma = s.find(','); comma != std::string::npos) {
        return {parse_double(std::string_view(s).substr(0, comma)), parse_double(std::string_view(s).substr(comma + 1))};
    }
    if (s.back() != 'i' && s.back() != 'j') {
        return {parse_double(s), 0.0};
    }
    s.pop_back();
    // Split at the last sign that does not belong to an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_part = [](std::string_view t) {
        if (t.empty() || t == "+") {
            return 1.0;
        }
        if (t == "-") {
            return -1.0;
        }
        return parse_double(t);
    };
    if (split == std::string::npos) {
        return {0.0, imag_part(s)};
    }
    return {parse_double(std::string_view(s).substr(0, split)), imag_part(std::string_view(s).substr(split))};
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Cone metrics: admissibility conditions, counts, and the Lame accessory-parameter solver"};
    app.require_subcommand(1);

    int genus = 0;
    std::string angles, tau_text, rect_text = "-0.5,0.5,0.5,2.0", res_text = "20x20", out_path, report_path;
    int jobs = 1;
    int metric_res = 64;

    auto *check = app.add_subcommand("check-angles", "Evaluate every applicable existence condition");
    check->add_option("--genus", genus, "Genus of the surface")->check(CLI::NonNegativeNumber);
    check->add_option("--angles", angles, "Comma-separated angles in turns (p/q or decimal)")->required();

    auto *count = app.add_subcommand("count", "Count metrics or developing maps");
    count->add_option("--genus", genus, "Genus of the surface")->check(CLI::NonNegativeNumber);
    count->add_option("--angles", angles, "Comma-separated angles")->required();

    auto *degree = app.add_subcommand("degree", "Leray-Schauder degree of the curvature equation");
    degree->add_option("--genus", genus, "Genus of the surface")->check(CLI::NonNegativeNumber);
    degree->add_option("--angles", angles, "Comma-separated angles")->required();

    auto *solve = app.add_subcommand("lame-solve", "Unitarizable accessory parameter for one torus");
    solve->add_option("--tau", tau_text, "Modulus, e.g. 0.3+0.8i or 0.3,0.8")->required();

    auto *scan = app.add_subcommand("lame-scan", "Existence region over a rectangle of moduli");
    scan->add_option("--rect", rect_text, "re_min,re_max,im_min,im_max");
    scan->add_option("--res", res_text, "Cells NxM (re x im)");
    scan->add_option("--out", out_path, "CSV output path")->required();
    scan->add_option("--report", report_path, "Also write the agreement report (JSON) here");
    scan->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto *metric = app.add_subcommand("lame-metric", "Metric density on the period cell");
    metric->add_option("--tau", tau_text, "Modulus")->required();
    metric->add_option("--res", metric_res, "Grid points per side")->check(CLI::PositiveNumber);
    metric->add_option("--out", out_path, "CSV output path")->required();

    auto *self = app.add_subcommand("selftest", "Compare fast routines against the reference oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }

    try {
        if (check->parsed()) {
            const auto a = AngleVector::parse(angles, genus);
            out << report_json(a, check_conditions(a)).dump(2) << '\n';
        } else if (count->parsed()) {
            const auto a = AngleVector::parse(angles, genus);
            ordered_json j = {{"genus", a.genus()}, {"angles", angles_json(a)}};
            const std::size_t nonint = a.non_integer_indices().size();
            if (a.genus() == 1 && a.size() == 1) {
                j["count"] = count_json(torus_moduli_topology(a[0]));
            } else if (a.genus() != 0) {
                throw UnsupportedQuery("counts are available on the sphere and on the torus with one cone point");
            } else if (nonint == 0) {
                const auto r = kostka_count(a);
                j["count"] = count_json(r);
                j["kostka"] = r.value;
                if (r.kind != CountKind::kostka) {
                    j[std::string(to_string(r.kind))] = r.value;
                }
            } else if (nonint == 3) {
                const auto r = three_nonint_bound(a);
                j["count"] = count_json(r);
                j["class_bound"] = r.value;
            } else if (nonint == 2) {
                two_nonint_count(a);
            } else {
                throw UnsupportedQuery("no count is available for " + std::to_string(nonint) + " non-integer angles");
            }
            out << j.dump(2) << '\n';
        } else if (degree->parsed()) {
            const auto a = AngleVector::parse(angles, genus);
            ordered_json j = {{"genus", a.genus()}, {"angles", angles_json(a)}};
            const auto r = chen_lin_degree(a);
            j["degree"] = r.value;
            j["derivation"] = count_json(r);
            out << j.dump(2) << '\n';
        } else if (solve->parsed()) {
            const auto ctx = EllipticContext::from_tau(parse_complex(tau_text));
            out << solve_json(ctx, find_solutions(ctx)).dump(2) << '\n';
        } else if (scan->parsed()) {
            const auto r = parse_rect(rect_text);
            const auto [nx, ny] = parse_res(res_text);
            const auto grid = region_scan({r[0], r[1], r[2], r[3]}, nx, ny, jobs);
            auto f = open_out(out_path);
            write_scan_csv(f, grid);
            const auto rep = inequality_agreement(grid, 2);
            ordered_json j = {{"cells", nx * ny},
                              {"exists_cells", rep.exists_cells},
                              {"empty_cells", rep.empty_cells},
                              {"failed_cells", rep.failed_cells},
                              {"band_cells", rep.band_cells},
                              {"ineq_thm", {{"compared", rep.theorem.compared}, {"agree_percent", rep.theorem.percent()}}},
                              {"ineq_proof", {{"compared", rep.proof.compared}, {"agree_percent", rep.proof.percent()}}}};
            if (!report_path.empty()) {
                open_out(report_path) << j.dump(2) << '\n';
            }
            out << j.dump(2) << '\n';
            if (rep.failed_cells > 0) {
                return numerical_failure;
            }
        } else if (metric->parsed()) {
            const auto ctx = EllipticContext::from_tau(parse_complex(tau_text));
            const auto res = find_solutions(ctx);
            auto f = open_out(out_path);
            ordered_json j = {{"tau", cjson(ctx.tau())}, {"exists", res.exists()}};
            if (res.exists()) {
                write_metric_grid(f, ctx, res.solutions[0], metric_res);
                j["points"] = metric_res * metric_res;
            } else {
                f << metric_csv_header << '\n';
                j["points"] = 0;
            }
            out << j.dump(2) << '\n';
        } else if (self->parsed()) {
            const auto j = selftest();
            out << j.dump(2) << '\n';
            return j["passed"].get<bool>() ? ok : numerical_failure;
        }
    } catch (const UnsupportedQuery &e) {
        err << "unsupported: " << e.what() << '\n';
        return unsupported;
    } catch (const NumericalFailure &e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::exception &e) {
        err << "invalid input: " << e.what() << '\n';
        return invalid_input;
    }
    return ok;
}

}
