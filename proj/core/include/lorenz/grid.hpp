#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lorenz {

/// Monotone distribution function on [0,1] tabulated on the uniform vertex
/// grid x_j = j/(N-1). Values run from exactly 0 to exactly 1 and never
/// decrease; evaluation between nodes is linear.
class GridCdf {
public:
    /// Takes the values as they are. Throws InvariantViolation unless
    /// v_0 == 0, v_{N-1} == 1, v nondecreasing and finite; DomainError if N < 3.
    explicit GridCdf(std::vector<double> values);

    /// Repairs raw tabulated values: running maximum, affine rescale onto
    /// [0,1], then a 1e-14 slope on ties so the result is strictly increasing.
    static GridCdf enforce(std::vector<double> raw);

    /// Samples `cdf` at the grid nodes and enforces the invariants.
    static GridCdf tabulate(const std::function<double(double)>& cdf, std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double node(std::size_t j) const noexcept;

    /// Linear interpolation, clamped to [0,1].
    [[nodiscard]] double operator()(double x) const;

    /// Generalized inverse inf{x : G(x) >= p} of the piecewise-linear G.
    /// Exact at nodes: inverse(values()[j]) == node(j) for strictly increasing G.
    [[nodiscard]] double inverse(double p) const;

    /// inverse(node(j)) for every node j.
    [[nodiscard]] std::vector<double> inverse_at_nodes() const;

    struct CellIntegrals {
        std::vector<double> first;   ///< integral of q over [x_j, x_{j+1}]
        std::vector<double> second;  ///< integral of q^2 over the same cell
    };

    /// Exact integrals of q = inverse over each grid cell. q is piecewise
    /// linear with breaks at the nodes and at the tabulated values.
    [[nodiscard]] CellIntegrals inverse_cell_integrals() const;

private:
    std::vector<double> values_;
};

/// Free-function spelling of GridCdf::inverse.
double invert_grid(const GridCdf& g, double p);

/// Where the samples of a Grid2D sit: on the vertices x_i = i/(n-1), or at
/// the centres (i+1/2)/n of n equal cells, each value then being a cell mean.
enum class GridLayout { vertex, cell };

/// n x n samples over [0,1]^2, row index = first coordinate.
class Grid2D {
public:
    explicit Grid2D(std::size_t n, double fill = 0.0, GridLayout layout = GridLayout::vertex);
    Grid2D(std::size_t n, std::vector<double> values, GridLayout layout = GridLayout::vertex);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] GridLayout layout() const noexcept { return layout_; }
    /// Abscissa of sample index i along either axis.
    [[nodiscard]] double coordinate(std::size_t i) const noexcept;
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * n_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * n_, n_};
    }

    /// Bilinear interpolation between sample positions; arguments are
    /// clamped to the sampled range.
    [[nodiscard]] double interpolate(double u, double v) const;

private:
    std::size_t n_;
    GridLayout layout_;
    std::vector<double> data_;
};

/// Integral over the unit square: trapezoid rule on vertex grids, exact
/// (sum of cell means) on cell grids.
double trapezoid_2d(const Grid2D& g);

/// Running integral on the vertices: out(i,j) = integral of g over [0,x_i] x [0,x_j].
/// A vertex grid of size n gives n x n (trapezoid rule); a cell grid of
/// size n gives the exact (n+1) x (n+1) distribution function.
Grid2D cumulative_2d(const Grid2D& g);

/// Cell means of the density of a distribution function tabulated on
/// vertices: (n-1) x (n-1) cell grid of rectangle masses divided by cell area.
Grid2D cell_densities(const Grid2D& cdf);

struct CdfAxiomReport {
    double boundary_defect = 0.0;      ///< max |F(0,.)|, |F(.,0)|, |F(1,1) - 1|
    double monotonicity_defect = 0.0;  ///< largest decrease along either axis (>= 0)
    double min_rectangle_mass = 0.0;   ///< smallest adjacent-cell 2-increment
};

/// Distribution-function axioms of a bivariate CDF tabulated on the grid.
CdfAxiomReport check_cdf_axioms(const Grid2D& cdf);

}  // namespace lorenz
