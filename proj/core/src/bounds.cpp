#include "lorenz/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorenz/errors.hpp"
#include "lorenz/quadrature.hpp"

namespace lorenz {

namespace {

constexpr double kRelTol = 1e-10;

void check_normalizer(double total, const std::string& what) {
    if (!std::isfinite(total) || !(total > 0.0))
        throw MomentError(what + ": normalizing integral is not finite and positive");
}

// Running integral of f on the grid, one adaptive integral per cell.
std::vector<double> cumulative_integral(const std::function<double(double)>& f, std::size_t n) {
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 1; j < n; ++j)
        out[j] = out[j - 1] + integrate(f, grid_node(j - 1, n), grid_node(j, n), kRelTol);
    return out;
}

// Running sum of per-cell integrals, normalized.
GridCdf normalized_running_sum(std::span<const double> cells, const char* what) {
    std::vector<double> v(cells.size() + 1, 0.0);
    for (std::size_t j = 0; j < cells.size(); ++j) v[j + 1] = v[j] + cells[j];
    if (!(v.back() > 0.0) || !std::isfinite(v.back()))
        throw InvariantViolation(std::string(what) + ": degenerate input curve");
    return GridCdf::enforce(std::move(v));
}

}  // namespace

FrechetUpperCurve::FrechetUpperCurve(const MarginalSpec& F1, const MarginalSpec& F2)
    : F1_(F1), F2_(F2), total_(partial(1.0)) {
    check_normalizer(total_, "upper bound curve");
}

double FrechetUpperCurve::partial(double x) const {
    return integrate([this](double u) { return eval_quantile(F1_, u) * eval_quantile(F2_, u); }, 0.0,
                     std::clamp(x, 0.0, 1.0), kRelTol);
}

double FrechetUpperCurve::marginal(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return partial(x) / total_;
}

double FrechetUpperCurve::operator()(double x1, double x2) const { return marginal(std::min(x1, x2)); }

GridCdf FrechetUpperCurve::tabulate(std::size_t n) const {
    if (n < 3) throw DomainError("tabulate: grid size must be at least 3");
    auto v = cumulative_integral(
        [this](double u) { return eval_quantile(F1_, u) * eval_quantile(F2_, u); }, n);
    check_normalizer(v.back(), "upper bound curve");
    return GridCdf::enforce(std::move(v));
}

FrechetLowerCurve::FrechetLowerCurve(const MarginalSpec& F1, const MarginalSpec& F2)
    : F1_(F1), F2_(F2), total_(partial(1.0)) {
    check_normalizer(total_, "lower bound curve");
}

double FrechetLowerCurve::partial(double x) const {
    return integrate(
        [this](double u) { return eval_quantile(F1_, u) * eval_quantile(F2_, 1.0 - u); }, 0.0,
        std::clamp(x, 0.0, 1.0), kRelTol);
}

double FrechetLowerCurve::first_marginal(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return partial(x) / total_;
}

double FrechetLowerCurve::second_marginal(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 1.0 - partial(1.0 - x) / total_;
}

double FrechetLowerCurve::operator()(double x1, double x2) const {
    x1 = std::clamp(x1, 0.0, 1.0);
    x2 = std::clamp(x2, 0.0, 1.0);
    const double lo = 1.0 - x2;
    if (x1 <= lo) return 0.0;
    return integrate([this](double u) { return eval_quantile(F1_, u) * eval_quantile(F2_, 1.0 - u); },
                     lo, x1, kRelTol) /
           total_;
}

std::pair<GridCdf, GridCdf> FrechetLowerCurve::tabulate(std::size_t n) const {
    if (n < 3) throw DomainError("tabulate: grid size must be at least 3");
    auto p = cumulative_integral(
        [this](double u) { return eval_quantile(F1_, u) * eval_quantile(F2_, 1.0 - u); }, n);
    check_normalizer(p.back(), "lower bound curve");
    const double total = p.back();
    std::vector<double> second(n);
    for (std::size_t j = 0; j < n; ++j) second[j] = total - p[n - 1 - j];
    return {GridCdf::enforce(std::move(p)), GridCdf::enforce(std::move(second))};
}

double lorenz_upper_closed(const MarginalSpec& F1, const MarginalSpec& F2, double x1, double x2) {
    return FrechetUpperCurve(F1, F2)(x1, x2);
}

double lorenz_lower_closed(const MarginalSpec& F1, const MarginalSpec& F2, double x1, double x2) {
    return FrechetLowerCurve(F1, F2)(x1, x2);
}

GridCdf step_upper_marginal(const GridCdf& g) {
    const auto ci = g.inverse_cell_integrals();
    return normalized_running_sum(ci.second, "step_upper_marginal");
}

GridCdf step_lower_marginal(const GridCdf& g) {
    auto ci = g.inverse_cell_integrals();
    for (std::size_t j = 0; j < ci.first.size(); ++j) ci.first[j] -= ci.second[j];
    return normalized_running_sum(ci.first, "step_lower_marginal");
}

std::pair<GridCdf, GridCdf> step_lower_coupled(const GridCdf& g1, const GridCdf& g2) {
    const std::size_t n = g1.size();
    if (g2.size() != n) throw DomainError("step_lower_coupled: grid sizes differ");
    const auto q1 = g1.inverse_at_nodes();
    const auto q2 = g2.inverse_at_nodes();
    std::vector<double> h(n);
    for (std::size_t j = 0; j < n; ++j) h[j] = q1[j] * q2[n - 1 - j];
    auto p = cumulative_power_start(h);
    const double total = p.back();
    if (!(total > 0.0) || !std::isfinite(total))
        throw InvariantViolation("step_lower_coupled: degenerate input curves");
    std::vector<double> second(n);
    for (std::size_t j = 0; j < n; ++j) second[j] = total - p[n - 1 - j];
    return {GridCdf::enforce(std::move(p)), GridCdf::enforce(std::move(second))};
}

double check_reflection(const GridCdf& g1, const GridCdf& g2) {
    const std::size_t n = g1.size();
    if (g2.size() != n) throw DomainError("check_reflection: grid sizes differ");
    const auto a = g1.values();
    const auto b = g2.values();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(a[j] + b[n - 1 - j] - 1.0));
    return worst;
}

double fit_power_exponent(const GridCdf& g, double lo, double hi) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.node(j);
        if (!(x > lo && x < hi)) continue;
        const double v = g.values()[j];
        if (!(v > 0.0)) continue;
        const double lx = std::log(x);
        const double ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw DomainError("fit_power_exponent: fewer than two usable nodes");
    const double mm = static_cast<double>(m);
    return (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
}

std::pair<BoundMarginalSeq, BoundMarginalSeq> frechet_envelope(const MarginalSpec& F1,
                                                               const MarginalSpec& F2,
                                                               std::size_t steps, std::size_t grid_n) {
    BoundMarginalSeq upper{BoundSide::upper, F1, F2, {}, {}};
    BoundMarginalSeq lower{BoundSide::lower, F1, F2, {}, {}};

    const GridCdf up0 = FrechetUpperCurve(F1, F2).tabulate(grid_n);
    upper.L1.push_back(up0);
    upper.L2.push_back(up0);
    auto [lo1, lo2] = FrechetLowerCurve(F1, F2).tabulate(grid_n);
    lower.L1.push_back(std::move(lo1));
    lower.L2.push_back(std::move(lo2));

    for (std::size_t k = 0; k < steps; ++k) {
        upper.L1.push_back(step_upper_marginal(upper.L1.back()));
        upper.L2.push_back(step_upper_marginal(upper.L2.back()));
        lower.L1.push_back(step_lower_marginal(lower.L1.back()));
        lower.L2.push_back(step_lower_marginal(lower.L2.back()));
    }
    return {std::move(upper), std::move(lower)};
}

}  // namespace lorenz
