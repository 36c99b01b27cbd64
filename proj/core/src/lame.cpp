#include "conic/lame.hpp"

#include "conic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace conic
{

namespace
{

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

int sign_of(double x)
{
    return (x > 0.0) - (x < 0.0);
}

}

MainEquationCoeffs compute_AB(const EllipticContext &ctx)
{
    const cplx w1 = ctx.omega1(), w2 = ctx.omega2();
    const cplx det = w1 * std::conj(w2) - std::conj(w1) * w2;
    if (std::abs(det) < 1e-300) {
        throw NumericalFailure("compute_AB: singular system");
    }
    MainEquationCoeffs c;
    c.A = (-ctx.eta1() * std::conj(w2) + ctx.eta2() * std::conj(w1)) / det;
    c.B = (-w1 * ctx.eta2() + w2 * ctx.eta1()) / det;

    const double im_tau = ctx.tau().imag();
    c.A_printed = pi / (4.0 * w1 * w1 * im_tau) - ctx.eta1() / w1;
    c.B_printed = -pi / (2.0 * std::norm(w1) * im_tau);
    c.printed_discrepancy = std::max(std::abs(c.A - c.A_printed), std::abs(c.B - c.B_printed));
    return c;
}

cplx residual_main(const EllipticContext &ctx, const MainEquationCoeffs &coeffs, cplx a)
{
    return coeffs.A * a + coeffs.B * std::conj(a) + ctx.zeta(a);
}

LameSolution make_solution(const EllipticContext &ctx, const MainEquationCoeffs &coeffs, cplx a, int iters)
{
    LameSolution s;
    s.a = ctx.reduce(a);
    const cplx z = ctx.zeta(s.a);
    s.lambda = ctx.wp(s.a);
    s.residual_main = std::abs(residual_main(ctx, coeffs, s.a));
    for (int k = 1; k <= 2; ++k) {
        const cplx x = ctx.omega(k) * z - ctx.eta(k) * s.a;
        s.unitarity_residuals[static_cast<std::size_t>(k - 1)] = x.real();
        s.multipliers[static_cast<std::size_t>(k - 1)] = std::exp(4.0 * x);
    }
    s.newton_iters = iters;
    return s;
}

namespace
{

struct Root
{
    cplx a;
    int iters;
    int index;
};

class Solver
{
    public:
        Solver(const EllipticContext &ctx, const SolverOptions &opts)
            : m_ctx(ctx), m_opts(opts), m_coeffs(compute_AB(ctx)), m_minper(ctx.min_period())
        {
            m_special = {cplx(0.0), ctx.omega1(), ctx.omega2(), ctx.omega3()};
            // Disks must stay inside the cell and apart from each other.
            const cplx tau = ctx.tau();
            const double width = std::min(tau.imag(), tau.imag() / std::abs(tau));
            const double r = std::min(opts.exclusion * m_minper, 0.2 * width);
            m_radius.fill(r);
            for (int k = 1; k <= 3; ++k) {
                const cplx d = m_coeffs.A - ctx.e(k);
                const double q = std::norm(d) - std::norm(m_coeffs.B);
                m_expected[static_cast<std::size_t>(k)] = std::abs(q) < 1e-12 * (std::norm(d) + std::norm(m_coeffs.B)) ? 0 : sign_of(q);
            }
            m_expected[0] = -1;
        }

        SolveResult run()
        {
            SolveResult out;
            out.coeffs = m_coeffs;
            auto &diag = out.diagnostics;
            for (int k = 1; k <= 3; ++k) {
                diag.max_trivial_residual = std::max(diag.max_trivial_residual, std::abs(residual(m_ctx.omega(k))));
                diag.trivial_index[static_cast<std::size_t>(k - 1)] = m_expected[static_cast<std::size_t>(k)];
            }

            std::string why;
            for (int attempt = 0; attempt < 2; ++attempt) {
                seed_grid(m_opts.seed_grid << attempt);
                complete_pairs();
                certify();
                why = check();
                if (why.empty()) {
                    break;
                }
            }
            diag.seeds = m_seeds;
            diag.converged = m_converged;
            diag.trivial_hits = m_trivial_hits;
            diag.pole_winding = m_winding[0];
            for (std::size_t k = 0; k < 3; ++k) {
                diag.trivial_winding[k] = m_winding[k + 1];
                diag.exclusion_radius[k] = m_radius[k + 1];
            }
            diag.cell_winding = m_cell_winding;
            diag.winding_count = m_region_winding;
            if (!why.empty()) {
                throw NumericalFailure("find_solutions: " + why);
            }

            if (m_roots.size() == 2) {
                // Canonical representative first: the one in the upper half of the cell.
                auto key = [&](cplx a) {
                    const auto st = m_ctx.lattice_coords(a);
                    return std::pair(st[1], st[0]);
                };
                std::sort(m_roots.begin(), m_roots.end(), [&](const Root &x, const Root &y) { return key(x.a) > key(y.a); });
                for (const auto &r : m_roots) {
                    out.solutions.push_back(make_solution(m_ctx, m_coeffs, r.a, r.iters));
                }
            }
            return out;
        }

    private:
        cplx residual(cplx a) const { return residual_main(m_ctx, m_coeffs, a); }

        std::array<double, 4> jacobian(cplx a) const
        {
            const cplx wp = m_ctx.wp(a);
            const cplx rx = m_coeffs.A + m_coeffs.B - wp;
            const cplx ry = I * (m_coeffs.A - m_coeffs.B - wp);
            return {rx.real(), ry.real(), rx.imag(), ry.imag()};
        }

        int local_index(cplx a) const
        {
            const auto j = jacobian(a);
            return sign_of(j[0] * j[3] - j[1] * j[2]);
        }

        std::optional<std::pair<cplx, int>> newton(cplx a) const
        {
            cplx r;
            try {
                r = residual(a);
            } catch (const PoleError &) {
                return std::nullopt;
            }
            double f = std::norm(r);
            for (int it = 0; it <= m_opts.max_iterations; ++it) {
                if (std::sqrt(f) < m_opts.tolerance) {
                    return std::pair(a, it);
                }
                if (it == m_opts.max_iterations) {
                    break;
                }
                std::array<double, 4> j;
                try {
                    j = jacobian(a);
                } catch (const PoleError &) {
                    return std::nullopt;
                }
                const double det = j[0] * j[3] - j[1] * j[2];
                if (!(std::abs(det) > 1e-300)) {
                    return std::nullopt;
                }
                const double dx = (-r.real() * j[3] + r.imag() * j[1]) / det;
                const double dy = (-r.imag() * j[0] + r.real() * j[2]) / det;
                const cplx step(dx, dy);
                double t = 1.0;
                bool moved = false;
                while (t > 1e-10) {
                    const cplx cand = a + t * step;
                    try {
                        const cplx rc = residual(cand);
                        const double fc = std::norm(rc);
                        if (fc <= (1.0 - 1e-4 * t) * f) {
                            a = m_ctx.reduce(cand);
                            r = rc;
                            f = fc;
                            moved = true;
                            break;
                        }
                    } catch (const PoleError &) {
                    }
                    t *= 0.5;
                }
                if (!moved) {
                    break;
                }
            }
            return std::nullopt;
        }

        std::optional<std::size_t> near_special(cplx a, double tol) const
        {
            for (std::size_t k = 0; k < 4; ++k) {
                if (m_ctx.distance_to_lattice(a - m_special[k]) < tol) {
                    return k;
                }
            }
            return std::nullopt;
        }

        void add_root(cplx a, int iters)
        {
            a = m_ctx.reduce(a);
            const double tol = m_opts.dedup * m_minper;
            for (const auto &r : m_roots) {
                if (m_ctx.distance_to_lattice(a - r.a) < tol) {
                    return;
                }
            }
            m_roots.push_back({a, iters, local_index(a)});
        }

        void try_seed(cplx seed)
        {
            ++m_seeds;
            const auto res = newton(seed);
            if (!res) {
                return;
            }
            ++m_converged;
            if (near_special(res->first, 1e-6 * m_minper)) {
                ++m_trivial_hits;
                return;
            }
            add_root(res->first, res->second);
        }

        void seed_grid(int n)
        {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const double s = -0.5 + (i + 0.5) / n;
                    const double t = -0.5 + (j + 0.5) / n;
                    const cplx seed = s + t * m_ctx.tau();
                    bool excluded = false;
                    for (std::size_t k = 0; k < 4; ++k) {
                        excluded = excluded || m_ctx.distance_to_lattice(seed - m_special[k]) < m_radius[k];
                    }
                    if (!excluded) {
                        try_seed(seed);
                    }
                }
            }
        }

        void seed_ring(cplx centre, double r)
        {
            for (int i = 0; i < 16; ++i) {
                try_seed(centre + r * std::exp(I * (2.0 * pi * (i + 0.25) / 16.0)));
            }
        }

        // The residual is odd, so every root a comes with -a.
        void complete_pairs()
        {
            const std::size_t n = m_roots.size();
            for (std::size_t i = 0; i < n; ++i) {
                const cplx b = -m_roots[i].a;
                if (std::abs(residual(b)) < 10.0 * m_opts.tolerance) {
                    add_root(b, m_roots[i].iters);
                }
            }
        }

        // Winding number of the residual along a closed path gamma(t), t in [0, 1].
        template <class Path>
        std::optional<int> winding(const Path &gamma) const
        {
            constexpr int base = 256;
            double total = 0.0;
            std::vector<std::pair<double, cplx>> stack;
            cplx prev = residual(gamma(0.0));
            double t_prev = 0.0;
            const double floor = 1e-10;
            if (std::abs(prev) < floor) {
                return std::nullopt;
            }
            for (int i = 1; i <= base; ++i) {
                const double t_next = static_cast<double>(i) / base;
                stack.clear();
                stack.emplace_back(t_next, residual(gamma(t_next)));
                while (!stack.empty()) {
                    const auto [t1, v1] = stack.back();
                    if (std::abs(v1) < floor) {
                        return std::nullopt;
                    }
                    if (std::abs(v1 - prev) > 0.3 * std::min(std::abs(v1), std::abs(prev)) && t1 - t_prev > 1e-12) {
                        const double tm = 0.5 * (t_prev + t1);
                        stack.emplace_back(tm, residual(gamma(tm)));
                        continue;
                    }
                    total += std::arg(v1 / prev);
                    prev = v1;
                    t_prev = t1;
                    stack.pop_back();
                }
            }
            const double w = total / (2.0 * pi);
            const double wr = std::round(w);
            if (std::abs(w - wr) > 0.1) {
                return std::nullopt;
            }
            return static_cast<int>(wr);
        }

        int circle_winding(std::size_t k)
        {
            for (int attempt = 0; attempt < 8; ++attempt) {
                const cplx c = m_special[k];
                const double r = m_radius[k];
                const auto w = winding([&](double t) { return c + r * std::exp(I * (2.0 * pi * t)); });
                if (w) {
                    return *w;
                }
                m_radius[k] *= 0.93;
            }
            throw NumericalFailure("find_solutions: residual vanishes on an exclusion circle");
        }

        int cell_winding() const
        {
            const cplx tau = m_ctx.tau();
            for (int attempt = 0; attempt < 8; ++attempt) {
                const cplx o = -0.25 - 0.25 * tau + 0.013 * attempt * (1.0 + 0.7 * tau);
                const std::array<cplx, 4> v = {o, o + 1.0, o + 1.0 + tau, o + tau};
                const auto w = winding([&](double t) {
                    const double s = 4.0 * t;
                    const int e = std::min(3, static_cast<int>(s));
                    const double u = s - e;
                    return v[static_cast<std::size_t>(e)] * (1.0 - u) + v[static_cast<std::size_t>((e + 1) % 4)] * u;
                });
                if (w) {
                    return *w;
                }
            }
            throw NumericalFailure("find_solutions: residual vanishes on the cell boundary");
        }

        void certify()
        {
            for (std::size_t k = 0; k < 4; ++k) {
                int w = circle_winding(k);
                for (int refine = 0; refine < 12 && m_expected[k] != 0 && w != m_expected[k]; ++refine) {
                    // Roots hide inside the disk: seed there, then shrink it.
                    seed_ring(m_special[k], 0.6 * m_radius[k]);
                    seed_ring(m_special[k], 0.3 * m_radius[k]);
                    m_radius[k] *= 0.5;
                    w = circle_winding(k);
                }
                m_winding[k] = w;
            }
            complete_pairs();
            m_cell_winding = cell_winding();
            m_region_winding = m_cell_winding;
            for (std::size_t k = 0; k < 4; ++k) {
                m_region_winding -= m_winding[k];
            }
        }

        std::string check() const
        {
            if (m_roots.size() != 0 && m_roots.size() != 2) {
                return std::to_string(m_roots.size()) + " distinct nontrivial roots";
            }
            if (m_roots.size() == 2 && m_ctx.distance_to_lattice(m_roots[0].a + m_roots[1].a) > 1e-6 * m_minper) {
                return "two roots that are not a +- pair";
            }
            int signed_count = 0;
            for (const auto &r : m_roots) {
                bool inside = false;
                for (std::size_t k = 0; k < 4; ++k) {
                    inside = inside || m_ctx.distance_to_lattice(r.a - m_special[k]) < m_radius[k];
                }
                if (!inside) {
                    signed_count += r.index;
                }
            }
            if (signed_count != m_region_winding) {
                return "winding count " + std::to_string(m_region_winding) + " disagrees with " + std::to_string(m_roots.size())
                    + " roots found by Newton";
            }
            return {};
        }

        const EllipticContext &m_ctx;
        SolverOptions m_opts;
        MainEquationCoeffs m_coeffs;
        double m_minper;
        std::array<cplx, 4> m_special{};
        std::array<double, 4> m_radius{};
        std::array<int, 4> m_expected{};
        std::array<int, 4> m_winding{};
        int m_cell_winding = 0;
        int m_region_winding = 0;
        std::vector<Root> m_roots;
        int m_seeds = 0;
        int m_converged = 0;
        int m_trivial_hits = 0;
};

}

SolveResult find_solutions(const EllipticContext &ctx, const SolverOptions &opts)
{
    return Solver(ctx, opts).run();
}

bool region_by_solver(cplx tau, const SolverOptions &opts)
{
    if (!(tau.imag() > 0.0)) {
        throw DomainError("region_by_solver: Im(tau) must be positive");
    }
    return find_solutions(EllipticContext::from_tau(tau), opts).exists();
}

cplx developing_map(const EllipticContext &ctx, const LameSolution &sol, cplx z)
{
    if (ctx.distance_to_lattice(z + sol.a) < 1e-12) {
        throw PoleError("developing map evaluated at a pole");
    }
    return std::exp(2.0 * z * ctx.zeta(sol.a)) * ctx.sigma(z - sol.a) / ctx.sigma(z + sol.a);
}

cplx developing_log_derivative(const EllipticContext &ctx, const LameSolution &sol, cplx z)
{
    return 2.0 * ctx.zeta(sol.a) + ctx.zeta(z - sol.a) - ctx.zeta(z + sol.a);
}

std::array<cplx, 2> hermite_solutions(const EllipticContext &ctx, const LameSolution &sol, cplx z)
{
    if (ctx.distance_to_lattice(z) < 1e-12) {
        throw PoleError("Hermite solutions evaluated at a lattice point");
    }
    const cplx za = ctx.zeta(sol.a);
    const cplx s = ctx.sigma(z);
    return {std::exp(-z * za) * ctx.sigma(z + sol.a) / s, std::exp(z * za) * ctx.sigma(z - sol.a) / s};
}

std::array<cplx, 2> hermite_derivatives(const EllipticContext &ctx, const LameSolution &sol, cplx z)
{
    const auto w = hermite_solutions(ctx, sol, z);
    const cplx za = ctx.zeta(sol.a);
    const cplx zz = ctx.zeta(z);
    return {w[0] * (-za + ctx.zeta(z + sol.a) - zz), w[1] * (za + ctx.zeta(z - sol.a) - zz)};
}

std::array<double, 2> lame_ode_residual(const EllipticContext &ctx, const LameSolution &sol, cplx z, double h)
{
    const auto w0 = hermite_solutions(ctx, sol, z);
    const auto wp = hermite_solutions(ctx, sol, z + h);
    const auto wm = hermite_solutions(ctx, sol, z - h);
    const cplx q = 2.0 * ctx.wp(z) + sol.lambda;
    std::array<double, 2> out{};
    for (std::size_t i = 0; i < 2; ++i) {
        const cplx second = (wp[i] - 2.0 * w0[i] + wm[i]) / (h * h);
        out[i] = std::abs(second - q * w0[i]) / (1.0 + std::abs(second));
    }
    return out;
}

double metric_density(const EllipticContext &ctx, const LameSolution &sol, cplx z)
{
    const double f = std::abs(developing_map(ctx, sol, z));
    const double l = std::abs(developing_log_derivative(ctx, sol, z));
    // 2|F'|/(1+|F|^2) with F' = F L, written to stay finite for large |F|.
    return f <= 1.0 ? 2.0 * l * f / (1.0 + f * f) : 2.0 * l / (f + 1.0 / f);
}

std::vector<cplx> interior_grid(const EllipticContext &ctx, int n, double margin)
{
    std::vector<cplx> pts;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx z = -0.5 + (i + 0.5) / n + (-0.5 + (j + 0.5) / n) * ctx.tau();
            if (ctx.distance_to_lattice(z) >= margin * ctx.min_period()) {
                pts.push_back(z);
            }
        }
    }
    return pts;
}

namespace
{

template <class F>
double laplacian(const F &f, cplx z, double h)
{
    return (f(z + h) + f(z - h) + f(z + I * h) + f(z - I * h) - 4.0 * f(z)) / (h * h);
}

}

double curvature_residual(const EllipticContext &ctx, const LameSolution &sol, std::span<const cplx> points, double h)
{
    auto logrho = [&](cplx z) { return std::log(metric_density(ctx, sol, z)); };
    double worst = 0.0;
    for (const auto &z : points) {
        const double rho = metric_density(ctx, sol, z);
        worst = std::max(worst, std::abs(laplacian(logrho, z, h) + rho * rho));
    }
    return worst;
}

double pde_residual(const EllipticContext &ctx, const LameSolution &sol, std::span<const cplx> points, double h)
{
    auto u = [&](cplx z) {
        const double rho = metric_density(ctx, sol, z);
        return std::log(2.0 * rho * rho);
    };
    double worst = 0.0;
    for (const auto &z : points) {
        worst = std::max(worst, std::abs(laplacian(u, z, h) + std::exp(u(z))));
    }
    return worst;
}

cplx schwarzian(const std::function<cplx(cplx)> &f, cplx z, double r, int nodes)
{
    std::array<cplx, 3> d{};
    for (int j = 0; j < nodes; ++j) {
        const cplx e = std::exp(I * (2.0 * pi * j / nodes));
        const cplx v = f(z + r * e);
        cplx ek = 1.0;
        for (std::size_t k = 0; k < 3; ++k) {
            ek /= e;
            d[k] += v * ek;
        }
    }
    const std::array<double, 3> fact = {1.0, 2.0, 6.0};
    for (std::size_t k = 0; k < 3; ++k) {
        d[k] *= fact[k] / (nodes * std::pow(r, static_cast<double>(k + 1)));
    }
    if (std::abs(d[0]) < 1e-12) {
        throw DomainError("schwarzian: vanishing first derivative");
    }
    const cplx ratio = d[1] / d[0];
    return d[2] / d[0] - 1.5 * ratio * ratio;
}

double schwarzian_check(const EllipticContext &ctx, const LameSolution &sol, cplx z)
{
    const double dist = std::min({ctx.distance_to_lattice(z), ctx.distance_to_lattice(z - sol.a), ctx.distance_to_lattice(z + sol.a)});
    const double r = 0.25 * dist;
    if (r < 1e-6) {
        throw DomainError("schwarzian_check: too close to a singular point");
    }
    const bool invert = std::abs(developing_map(ctx, sol, z)) > 1.0;
    const cplx s = schwarzian([&](cplx w) {
        const cplx F = developing_map(ctx, sol, w);
        return invert ? 1.0 / F : F;
    }, z, r);
    return std::abs(s + 2.0 * (2.0 * ctx.wp(z) + sol.lambda));
}

RegionInequalities region_by_inequalities(const EllipticContext &ctx, IneqVariant variant)
{
    const cplx w1 = ctx.omega1();
    const cplx tau = ctx.tau();
    const double c = variant == IneqVariant::theorem ? 2.0 : 1.0;
    const double k = variant == IneqVariant::theorem ? 1.0 : 2.0;
    RegionInequalities out;
    out.holds = true;
    for (int j = 1; j <= 3; ++j) {
        const cplx den = ctx.e(j) * w1 * w1 + ctx.eta1() * w1;
        if (std::abs(den) < 1e-12) {
            throw DomainError("region_by_inequalities: degenerate denominator (boundary)");
        }
        const double v = (c * pi * I / den - k * tau).imag();
        out.im_values[static_cast<std::size_t>(j - 1)] = v;
        out.per_j[static_cast<std::size_t>(j - 1)] = v < 0.0;
        out.holds = out.holds && v < 0.0;
    }
    return out;
}

}
