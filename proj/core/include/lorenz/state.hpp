#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "lorenz/copulas.hpp"
#include "lorenz/grid.hpp"
#include "lorenz/marginals.hpp"

namespace lorenz {

/// Everything the recursion needs at iteration n on an N-node grid. The
/// copula is held as its distribution function on the vertices and as mean
/// densities over the (N-1)^2 cells; the grids are shared read-only between
/// copies.
struct LorenzState {
    std::size_t n = 0;
    GridCdf L1;
    GridCdf L2;
    std::vector<double> l1;  ///< marginal densities at the nodes
    std::vector<double> l2;
    std::shared_ptr<const Grid2D> c;  ///< copula density c^n, cell layout, size N-1
    std::shared_ptr<const Grid2D> C;  ///< copula CDF, vertex layout, size N
    std::shared_ptr<const Grid2D> L;  ///< L_n(x_i, x_j) at the grid nodes
    double D = 0.0;                   ///< E[X1 X2] under L_n

    [[nodiscard]] std::size_t grid_size() const noexcept { return L1.size(); }
};

struct Tolerances {
    double collapse_fraction = 0.10;  ///< share of floored copula cells that aborts a step
};

struct ScenarioSpec {
    MarginalSpec F1 = MarginalSpec::uniform01();
    MarginalSpec F2 = MarginalSpec::uniform01();
    CopulaSpec copula = CopulaSpec::independence();
    std::size_t grid_n = 1001;
    std::size_t n_max = 25;
    Tolerances tol;
};

}  // namespace lorenz
