#pragma once

#include <cstddef>
#include <vector>

#include "lorenz/diagnostics.hpp"
#include "lorenz/state.hpp"

namespace lorenz {

/// Smallest grid the engine accepts.
inline constexpr std::size_t kMinEngineGrid = 51;

/// State 0: the Lorenz curve of (F1, F2, C) on the grid, built from the
/// cell masses of C and the exact cell means of F1^{-1}, F2^{-1}.
/// Throws SingularCopula for M and W, MomentError for a degenerate cross moment.
LorenzState init_state(const ScenarioSpec& spec);

/// Assembles a state from its marginals and copula cell densities
/// (cell layout, size N-1). Computes C, l1, l2, D, and the node values of
/// L_n as C(L1(x_i), L2(x_j)).
LorenzState make_state(std::size_t n, GridCdf L1, GridCdf L2, Grid2D copula_cells);

/// L_n -> L_{n+1}. The density recursion
/// l_{n+1}(x1,x2) = L1^{-1}(x1) L2^{-1}(x2) c^n(x1,x2) / D_n is integrated
/// over grid cells, and c^{n+1} is the mass of l_{n+1} over the rectangles
/// [L1^{n+1,-1}(w_a), L1^{n+1,-1}(w_{a+1})] x [...] per cell area.
/// Throws NumericalCollapse when more than tol.collapse_fraction of the new
/// copula cells fall below the density floor.
LorenzState step(const LorenzState& s, const Tolerances& tol = {});

struct IterationResult {
    std::vector<LorenzState> states;  ///< states 0..n_max
    DiagnosticsTrace trace;           ///< one record per state
};

/// init_state followed by n_max steps; n_max = 0 yields the initial state only.
IterationResult iterate(const ScenarioSpec& spec);

/// L_n(x1, x2), bilinear between the tabulated node values.
double eval_lorenz(const LorenzState& s, double x1, double x2);

/// L_n at every pair of grid nodes.
Grid2D lorenz_cdf_grid(const LorenzState& s);

/// Mass of the density c(L1(x1),L2(x2)) l1(x1) l2(x2) under the trapezoid
/// rule, c interpolated between cell centres.
double reconstructed_mass(const LorenzState& s);

/// L_{n+1} on the grid by direct quadrature of u1 u2 dL_n over the rectangles
/// [0, L1^{-1}(x1)] x [0, L2^{-1}(x2)], normalized by the full integral.
/// Midpoint Stieltjes sums on a grid refined `refine` times; no use of the
/// copula recursion.
Grid2D brute_force_step(const LorenzState& s, std::size_t refine = 8);

}  // namespace lorenz
