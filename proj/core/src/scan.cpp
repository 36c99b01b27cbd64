#include "conic/scan.hpp"

#include "conic/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace conic
{

namespace
{

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string flag(const std::optional<bool> &b)
{
    return b ? (*b ? "1" : "0") : "";
}

}

double ScanCell::max_residual() const
{
    if (!solution) {
        return 0.0;
    }
    const auto &s = *solution;
    double m = s.residual_main;
    for (std::size_t k = 0; k < 2; ++k) {
        m = std::max({m, std::abs(s.unitarity_residuals[k]), std::abs(std::abs(s.multipliers[k]) - 1.0)});
    }
    return m;
}

cplx ScanGrid::tau_at(int ix, int iy) const
{
    const double re = rect.re_min + (ix + 0.5) * (rect.re_max - rect.re_min) / nx;
    const double im = rect.im_min + (iy + 0.5) * (rect.im_max - rect.im_min) / ny;
    return {re, im};
}

ScanCell scan_cell(cplx tau, const SolverOptions &opts)
{
    ScanCell cell;
    cell.tau = tau;
    try {
        const auto ctx = EllipticContext::from_tau(tau);
        try {
            cell.ineq_thm = region_by_inequalities(ctx, IneqVariant::theorem).holds;
        } catch (const DomainError &) {
        }
        try {
            cell.ineq_proof = region_by_inequalities(ctx, IneqVariant::proof).holds;
        } catch (const DomainError &) {
        }
        const auto res = find_solutions(ctx, opts);
        cell.exists = res.exists();
        cell.winding_count = res.diagnostics.winding_count;
        cell.max_trivial_residual = res.diagnostics.max_trivial_residual;
        if (res.exists()) {
            cell.solution = res.solutions.front();
        }
    } catch (const std::exception &e) {
        cell.error = e.what();
    }
    return cell;
}

ScanGrid region_scan(const ScanRect &rect, int nx, int ny, int jobs, const SolverOptions &opts)
{
    if (nx <= 0 || ny <= 0) {
        throw DomainError("region_scan: resolution must be positive");
    }
    if (!(rect.im_min > 0.0) || !(rect.re_max >= rect.re_min) || !(rect.im_max >= rect.im_min)) {
        throw DomainError("region_scan: rectangle must lie in the upper half-plane");
    }
    ScanGrid grid;
    grid.rect = rect;
    grid.nx = nx;
    grid.ny = ny;
    const std::size_t total = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    grid.cells.resize(total);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const int ix = static_cast<int>(i % static_cast<std::size_t>(nx));
            const int iy = static_cast<int>(i / static_cast<std::size_t>(nx));
            grid.cells[i] = scan_cell(grid.tau_at(ix, iy), opts);
        }
    };
    jobs = std::clamp(jobs, 1, 256);
    std::vector<std::jthread> pool;
    for (int j = 1; j < jobs; ++j) {
        pool.emplace_back(work);
    }
    work();
    return grid;
}

void write_scan_csv(std::ostream &os, const ScanGrid &grid)
{
    os << scan_csv_header << '\n';
    for (const auto &c : grid.cells) {
        os << num(c.tau.real()) << ',' << num(c.tau.imag()) << ',';
        if (c.error.empty()) {
            os << (c.exists ? '1' : '0');
        }
        os << ',';
        if (c.solution) {
            const auto &s = *c.solution;
            os << num(s.a.real()) << ',' << num(s.a.imag()) << ',' << num(s.lambda.real()) << ',' << num(s.lambda.imag()) << ',';
        } else {
            os << ",,,,";
        }
        os << flag(c.ineq_thm) << ',' << flag(c.ineq_proof) << ',';
        if (c.solution) {
            os << c.solution->newton_iters << ',' << num(c.max_residual());
        } else {
            os << ',';
        }
        os << '\n';
    }
}

AgreementReport inequality_agreement(const ScanGrid &grid, int band)
{
    AgreementReport rep;
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const auto &c = grid.at(ix, iy);
            if (!c.error.empty()) {
                ++rep.failed_cells;
                continue;
            }
            ++(c.exists ? rep.exists_cells : rep.empty_cells);
            bool near_change = false;
            for (int dy = -band; dy <= band; ++dy) {
                for (int dx = -band; dx <= band; ++dx) {
                    const int x = ix + dx, y = iy + dy;
                    if (x < 0 || y < 0 || x >= grid.nx || y >= grid.ny) {
                        continue;
                    }
                    const auto &o = grid.at(x, y);
                    near_change = near_change || (o.error.empty() && o.exists != c.exists);
                }
            }
            if (near_change) {
                ++rep.band_cells;
                continue;
            }
            if (c.ineq_thm) {
                ++rep.theorem.compared;
                rep.theorem.agree += *c.ineq_thm == c.exists;
            }
            if (c.ineq_proof) {
                ++rep.proof.compared;
                rep.proof.agree += *c.ineq_proof == c.exists;
            }
        }
    }
    return rep;
}

void write_metric_grid(std::ostream &os, const EllipticContext &ctx, const LameSolution &sol, int n)
{
    os << metric_csv_header << '\n';
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const cplx z = (i + 0.5) / n + (j + 0.5) / n * ctx.tau();
            double rho;
            try {
                rho = metric_density(ctx, sol, z);
            } catch (const PoleError &) {
                rho = metric_density(ctx, sol, z + 1e-9 * ctx.min_period());
            }
            os << num(z.real()) << ',' << num(z.imag()) << ',' << num(rho) << '\n';
        }
    }
}

}
