#ifndef CONIC_LAME_HPP
#define CONIC_LAME_HPP

#include "conic/elliptic.hpp"

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace conic
{

/// Constants of the unitarity equation A a + B conj(a) + zeta(a) = 0.
struct MainEquationCoeffs
{
    cplx A;
    cplx B;
    /// The closed-form constants as usually printed, kept for comparison only.
    cplx A_printed;
    cplx B_printed;
    /// max(|A - A_printed|, |B - B_printed|).
    double printed_discrepancy = 0.0;
};

/// Solves A omega_k + B conj(omega_k) + eta_k = 0 for k = 1, 2. This is the
/// unique choice that makes the equation invariant under a -> a + 2 omega_k;
/// the half-periods are then roots for k = 1, 2, 3.
MainEquationCoeffs compute_AB(const EllipticContext &ctx);

/// A a + B conj(a) + zeta(a). Throws PoleError at lattice points.
cplx residual_main(const EllipticContext &ctx, const MainEquationCoeffs &coeffs, cplx a);

/// A nontrivial root of the unitarity equation and the accessory parameter it defines.
struct LameSolution
{
    /// Representative in the centered period cell.
    cplx a;
    /// lambda = wp(a).
    cplx lambda;
    double residual_main = 0.0;
    /// Re(omega_k zeta(a) - eta_k a), k = 1, 2; zero iff the monodromy is unitary.
    std::array<double, 2> unitarity_residuals{};
    /// exp(4 omega_k zeta(a) - 4 eta_k a), k = 1, 2.
    std::array<cplx, 2> multipliers{};
    int newton_iters = 0;
};

struct SolverOptions
{
    /// Seeds per side of the grid over the period cell.
    int seed_grid = 16;
    /// Radius of the excluded disks around 0 and the half-periods, in units of the shortest period.
    double exclusion = 0.1;
    double tolerance = 1e-11;
    int max_iterations = 60;
    /// Roots closer than this (times the shortest period) modulo the lattice are merged.
    double dedup = 1e-7;
};

struct SolveDiagnostics
{
    int seeds = 0;
    int converged = 0;
    int trivial_hits = 0;
    /// max |residual_main(omega_k)|, k = 1, 2, 3.
    double max_trivial_residual = 0.0;
    /// Winding of the residual around 0 (the pole of zeta), expected -1.
    int pole_winding = 0;
    /// Winding around each half-period on its final exclusion circle.
    std::array<int, 3> trivial_winding{};
    /// Local degree of the residual map at each half-period, from its Jacobian.
    std::array<int, 3> trivial_index{};
    /// Winding along the boundary of the period cell (zero by periodicity).
    int cell_winding = 0;
    /// Signed number of nontrivial roots outside the exclusion disks.
    int winding_count = 0;
    std::array<double, 3> exclusion_radius{};
};

struct SolveResult
{
    /// Empty, or the pair a, -a.
    std::vector<LameSolution> solutions;
    SolveDiagnostics diagnostics;
    MainEquationCoeffs coeffs;
    bool exists() const { return !solutions.empty(); }
};

/// Finds every nontrivial root of the unitarity equation by damped Newton
/// iteration from a grid of seeds, and certifies the count with a winding
/// number of the residual over the period cell with the trivial roots and the
/// pole excised. Throws NumericalFailure when the two disagree or when a
/// root count other than 0 or 2 survives deduplication.
SolveResult find_solutions(const EllipticContext &ctx, const SolverOptions &opts = {});

/// Builds the solution record for a given root a.
LameSolution make_solution(const EllipticContext &ctx, const MainEquationCoeffs &coeffs, cplx a, int iters = 0);

/// Developing map F(z) = exp(2 z zeta(a)) sigma(z - a) / sigma(z + a).
/// Throws PoleError near the poles z = -a (mod lattice).
cplx developing_map(const EllipticContext &ctx, const LameSolution &sol, cplx z);

/// Logarithmic derivative F'/F = 2 zeta(a) + zeta(z - a) - zeta(z + a).
cplx developing_log_derivative(const EllipticContext &ctx, const LameSolution &sol, cplx z);

/// Hermite solutions w_{1,2} = exp(-+ z zeta(a)) sigma(z +- a) / sigma(z) of
/// w'' = (2 wp(z) + lambda) w. Note w2 / w1 = F.
std::array<cplx, 2> hermite_solutions(const EllipticContext &ctx, const LameSolution &sol, cplx z);

/// Their derivatives, from the logarithmic derivatives.
std::array<cplx, 2> hermite_derivatives(const EllipticContext &ctx, const LameSolution &sol, cplx z);

/// Second-difference residual |w'' - (2 wp + lambda) w| / (1 + |w''|) for both solutions.
std::array<double, 2> lame_ode_residual(const EllipticContext &ctx, const LameSolution &sol, cplx z, double h = 1e-4);

/// Density of the pulled-back spherical metric, 2|F'| / (1 + |F|^2).
/// Vanishes at the lattice points (cone angle 3).
double metric_density(const EllipticContext &ctx, const LameSolution &sol, cplx z);

/// Points of an n x n grid over the period cell at distance >= margin
/// (in units of the shortest period) from the lattice.
std::vector<cplx> interior_grid(const EllipticContext &ctx, int n, double margin = 0.05);

/// max over points of |Lap_h log rho + rho^2|, five-point Laplacian with step h.
double curvature_residual(const EllipticContext &ctx, const LameSolution &sol, std::span<const cplx> points, double h);

/// Same check for u = log(2 rho^2): max |Lap_h u + exp(u)|.
double pde_residual(const EllipticContext &ctx, const LameSolution &sol, std::span<const cplx> points, double h);

/// Schwarzian derivative f'''/f' - 3/2 (f''/f')^2 from derivatives taken by
/// the trapezoid rule for the Cauchy integral on a circle of radius r.
cplx schwarzian(const std::function<cplx(cplx)> &f, cplx z, double r, int nodes = 32);

/// |S(F)(z) + 2 (2 wp(z) + lambda)|.
double schwarzian_check(const EllipticContext &ctx, const LameSolution &sol, cplx z);

enum class IneqVariant { theorem, proof };

struct RegionInequalities
{
    /// Per half-period value e_j.
    std::array<bool, 3> per_j{};
    std::array<double, 3> im_values{};
    bool holds = false;
};

/// Evaluates the closed-form region inequalities in either printed form:
///   theorem: Im(2 pi i / (e_j omega1^2 + eta1 omega1) - tau) < 0
///   proof:   Im(pi i / (e_j omega1^2 + eta1 omega1) - 2 tau) < 0
/// Throws DomainError when a denominator is within 1e-12 of zero.
RegionInequalities region_by_inequalities(const EllipticContext &ctx, IneqVariant variant);

/// True iff a unitarizable accessory parameter exists for this tau.
bool region_by_solver(cplx tau, const SolverOptions &opts = {});

}

#endif
