#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lorenz {

/// Node j of the uniform vertex grid with n nodes on [0,1].
inline double grid_node(std::size_t j, std::size_t n) {
    return static_cast<double>(j) / static_cast<double>(n - 1);
}

std::vector<double> grid_nodes(std::size_t n);

/// Trapezoid weights on the uniform vertex grid over [0,1] (h/2 at the ends, h inside).
std::vector<double> trapezoid_weights(std::size_t n);

/// Trapezoid integral over [0,1] of values sampled on the uniform vertex grid.
double trapezoid(std::span<const double> values);

/// Running trapezoid integral; result[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> values);

/// Local exponent b of f ~ k*u^b near 0 from f(h) and f(2h), or 1 (linear)
/// when f(0) != 0 or the samples are not positive. Clamped to [-0.9, 20].
double power_start_exponent(std::span<const double> f);

/// Running trapezoid integral whose first cell is integrated as a power law
/// when f(0) = 0 (see power_start_exponent).
std::vector<double> cumulative_power_start(std::span<const double> f);

/// Piecewise-linear interpolation of grid samples at x in [0,1] (clamped).
double interpolate_linear(std::span<const double> values, double x);

/// Integral of f over [a,b]: tanh-sinh, then adaptive Gauss-Kronrod if that
/// misses the tolerance. Neither rule samples the endpoints, so integrable
/// endpoint singularities are fine.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

}  // namespace lorenz
