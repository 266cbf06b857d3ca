#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lorenz/grid.hpp"
#include "lorenz/marginals.hpp"

namespace lorenz {

/// Lorenz curve of (F1, F2) joined by the comonotonic copula M:
/// L(x1,x2) = P(min(x1,x2)) / P(1), P(x) = integral of F1^{-1} F2^{-1} over [0,x].
/// Both marginal sections are the same curve.
class FrechetUpperCurve {
public:
    FrechetUpperCurve(const MarginalSpec& F1, const MarginalSpec& F2);

    [[nodiscard]] double normalizer() const noexcept { return total_; }
    /// Marginal section L(x,1) = L(1,x).
    [[nodiscard]] double marginal(double x) const;
    [[nodiscard]] double operator()(double x1, double x2) const;
    /// Marginal section on the N-node grid.
    [[nodiscard]] GridCdf tabulate(std::size_t n) const;

private:
    [[nodiscard]] double partial(double x) const;

    MarginalSpec F1_;
    MarginalSpec F2_;
    double total_;
};

/// Lorenz curve of (F1, F2) joined by the countermonotonic copula W:
/// L(x1,x2) = (P(x1) - P(1-x2))^+ / P(1), P(x) = integral of F1^{-1}(u) F2^{-1}(1-u) over [0,x].
class FrechetLowerCurve {
public:
    FrechetLowerCurve(const MarginalSpec& F1, const MarginalSpec& F2);

    [[nodiscard]] double normalizer() const noexcept { return total_; }
    [[nodiscard]] double first_marginal(double x) const;   ///< L(x,1)
    [[nodiscard]] double second_marginal(double x) const;  ///< L(1,x)
    [[nodiscard]] double operator()(double x1, double x2) const;
    /// Both marginal sections on the N-node grid.
    [[nodiscard]] std::pair<GridCdf, GridCdf> tabulate(std::size_t n) const;

private:
    [[nodiscard]] double partial(double x) const;

    MarginalSpec F1_;
    MarginalSpec F2_;
    double total_;
};

double lorenz_upper_closed(const MarginalSpec& F1, const MarginalSpec& F2, double x1, double x2);
double lorenz_lower_closed(const MarginalSpec& F1, const MarginalSpec& F2, double x1, double x2);

/// One step of the comonotonic marginal map: x -> integral_0^x q^2 / integral_0^1 q^2, q = g^{-1}.
GridCdf step_upper_marginal(const GridCdf& g);

/// One step of the countermonotonic marginal map in separated form:
/// x -> integral_0^x q(1-q) / integral_0^1 q(1-q), q = g^{-1}.
GridCdf step_lower_marginal(const GridCdf& g);

/// The same step without eliminating the second marginal:
/// P(x) = integral_0^x g1^{-1}(u) g2^{-1}(1-u) du, new g1 = P/P(1), new g2(x) = 1 - P(1-x)/P(1).
std::pair<GridCdf, GridCdf> step_lower_coupled(const GridCdf& g1, const GridCdf& g2);

/// sup over nodes of |g1(x) + g2(1-x) - 1|. Grids must share N.
double check_reflection(const GridCdf& g1, const GridCdf& g2);

/// Least-squares slope of log g against log x over nodes with lo < x < hi.
double fit_power_exponent(const GridCdf& g, double lo = 0.1, double hi = 0.9);

enum class BoundSide { upper, lower };

struct BoundMarginalSeq {
    BoundSide side;
    MarginalSpec F1;
    MarginalSpec F2;
    std::vector<GridCdf> L1;  ///< iterates 0..n of the first marginal
    std::vector<GridCdf> L2;  ///< iterates 0..n of the second marginal
};

/// Marginal iterates under M (upper) and W (lower), each seeded by the
/// closed-form sections of the (F1, F2) bound curves and advanced by the
/// separated steps.
std::pair<BoundMarginalSeq, BoundMarginalSeq> frechet_envelope(const MarginalSpec& F1,
                                                               const MarginalSpec& F2,
                                                               std::size_t steps,
                                                               std::size_t grid_n = 1001);

}  // namespace lorenz
