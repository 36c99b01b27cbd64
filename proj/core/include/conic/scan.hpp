#ifndef CONIC_SCAN_HPP
#define CONIC_SCAN_HPP

#include "conic/lame.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace conic
{

/// Rectangle [re_min, re_max] x [im_min, im_max] in the tau-plane.
struct ScanRect
{
    double re_min = -0.5;
    double re_max = 0.5;
    double im_min = 0.5;
    double im_max = 2.0;
};

struct ScanCell
{
    cplx tau;
    bool exists = false;
    /// Canonical root of the pair +-a.
    std::optional<LameSolution> solution;
    std::optional<bool> ineq_thm;
    std::optional<bool> ineq_proof;
    int winding_count = 0;
    double max_trivial_residual = 0.0;
    /// Non-empty when the solver failed on this cell.
    std::string error;

    /// max of |main residual|, |unitarity residuals| and ||multiplier| - 1|.
    double max_residual() const;
};

struct ScanGrid
{
    ScanRect rect;
    int nx = 0;
    int ny = 0;
    /// Row-major, index iy * nx + ix; the real part varies fastest.
    std::vector<ScanCell> cells;

    const ScanCell &at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy * nx + ix)]; }
    /// Cell centre.
    cplx tau_at(int ix, int iy) const;
};

/// Evaluates the solver and both inequality variants at every cell centre.
/// Cells are independent; jobs > 1 spreads them over threads without
/// changing the result.
ScanGrid region_scan(const ScanRect &rect, int nx, int ny, int jobs = 1, const SolverOptions &opts = {});

/// Evaluates one cell.
ScanCell scan_cell(cplx tau, const SolverOptions &opts = {});

inline constexpr const char *scan_csv_header = "re_tau,im_tau,exists,re_a,im_a,re_lambda,im_lambda,ineq_thm,ineq_proof,newton_iters,max_residual";

void write_scan_csv(std::ostream &os, const ScanGrid &grid);

struct VariantAgreement
{
    /// Cells outside the boundary band with a verdict from both sides.
    int compared = 0;
    int agree = 0;
    double percent() const { return compared == 0 ? 0.0 : 100.0 * agree / compared; }
};

struct AgreementReport
{
    VariantAgreement theorem;
    VariantAgreement proof;
    int exists_cells = 0;
    int empty_cells = 0;
    int failed_cells = 0;
    /// Cells dropped because a differing solver verdict lies within the band.
    int band_cells = 0;
};

/// Agreement of each printed inequality with the solver region, ignoring
/// cells within band cells (Chebyshev distance) of a solver verdict change.
AgreementReport inequality_agreement(const ScanGrid &grid, int band = 2);

inline constexpr const char *metric_csv_header = "re_z,im_z,rho";

/// rho on an n x n grid of cell centres over the period cell
/// { s + t tau : s, t in [0, 1) }.
void write_metric_grid(std::ostream &os, const EllipticContext &ctx, const LameSolution &sol, int n);

}

#endif
