#include "lorenz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lorenz/errors.hpp"
#include "lorenz/quadrature.hpp"

namespace lorenz {

namespace {

constexpr double kTieBreakSlope = 1e-14;

}  // namespace

GridCdf::GridCdf(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 3) throw DomainError("GridCdf: need at least 3 nodes");
    if (values_.front() != 0.0 || values_.back() != 1.0)
        throw InvariantViolation("GridCdf: end values must be exactly 0 and 1");
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j]))
            throw InvariantViolation("GridCdf: non-finite value at node " + std::to_string(j));
        if (j > 0 && values_[j] < values_[j - 1])
            throw InvariantViolation("GridCdf: values decrease at node " + std::to_string(j));
    }
}

GridCdf GridCdf::enforce(std::vector<double> raw) {
    if (raw.size() < 3) throw DomainError("GridCdf: need at least 3 nodes");
    for (double& v : raw) {
        if (std::isnan(v)) throw InvariantViolation("GridCdf: NaN in tabulated values");
    }
    for (std::size_t j = 1; j < raw.size(); ++j) raw[j] = std::max(raw[j], raw[j - 1]);

    const double lo = raw.front();
    const double span = raw.back() - lo;
    if (!(span > 0.0) || !std::isfinite(span))
        throw InvariantViolation("GridCdf: tabulated values carry no mass");
    for (double& v : raw) v = (v - lo) / span;

    bool tied = false;
    for (std::size_t j = 1; j < raw.size(); ++j) {
        if (raw[j] <= raw[j - 1]) {
            raw[j] = raw[j - 1] + kTieBreakSlope;
            tied = true;
        }
    }
    if (tied) {
        const double top = raw.back();
        for (double& v : raw) v /= top;
    }
    raw.front() = 0.0;
    raw.back() = 1.0;
    // Division by `top` can leave the node before the last a hair above 1.
    for (std::size_t j = raw.size() - 1; j-- > 0;) raw[j] = std::min(raw[j], raw[j + 1]);
    return GridCdf(std::move(raw));
}

GridCdf GridCdf::tabulate(const std::function<double(double)>& cdf, std::size_t n) {
    if (n < 3) throw DomainError("tabulate: grid size must be at least 3");
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = cdf(grid_node(j, n));
    return enforce(std::move(v));
}

double GridCdf::node(std::size_t j) const noexcept { return grid_node(j, values_.size()); }

double GridCdf::operator()(double x) const { return interpolate_linear(values_, x); }

double GridCdf::inverse(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("invert_grid: p outside [0,1]");
    const auto it = std::lower_bound(values_.begin(), values_.end(), p);
    const auto k = static_cast<std::size_t>(it - values_.begin());
    if (values_[k] == p) return node(k);
    // values_[k-1] < p < values_[k]; k >= 1 because values_[0] == 0 <= p.
    const double lo = values_[k - 1];
    const double hi = values_[k];
    const double frac = (p - lo) / (hi - lo);
    const double x = node(k - 1) + frac * (node(k) - node(k - 1));
    return std::clamp(x, node(k - 1), node(k));
}

std::vector<double> GridCdf::inverse_at_nodes() const {
    const std::size_t n = values_.size();
    std::vector<double> q(n);
    // Both sequences are sorted, so one merge pass suffices.
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double p = grid_node(j, n);
        while (k < n && values_[k] < p) ++k;
        if (k == n) {
            q[j] = 1.0;
        } else if (values_[k] == p) {
            q[j] = node(k);
        } else {
            const double frac = (p - values_[k - 1]) / (values_[k] - values_[k - 1]);
            q[j] = std::clamp(node(k - 1) + frac * (node(k) - node(k - 1)), node(k - 1), node(k));
        }
    }
    return q;
}

GridCdf::CellIntegrals GridCdf::inverse_cell_integrals() const {
    const std::size_t n = values_.size();
    const auto q = inverse_at_nodes();
    CellIntegrals out{std::vector<double>(n - 1, 0.0), std::vector<double>(n - 1, 0.0)};
    auto add = [&](std::size_t cell, double pa, double qa, double pb, double qb) {
        const double w = pb - pa;
        out.first[cell] += 0.5 * w * (qa + qb);
        out.second[cell] += w * (qa * qa + qa * qb + qb * qb) / 3.0;
    };
    std::size_t k = 1;  // next tabulated value that may fall inside a cell
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double p_lo = grid_node(j, n);
        const double p_hi = grid_node(j + 1, n);
        double pa = p_lo;
        double qa = q[j];
        while (k < n && values_[k] <= p_lo) ++k;
        while (k < n && values_[k] < p_hi) {
            add(j, pa, qa, values_[k], node(k));
            pa = values_[k];
            qa = node(k);
            ++k;
        }
        add(j, pa, qa, p_hi, q[j + 1]);
    }
    return out;
}

double invert_grid(const GridCdf& g, double p) { return g.inverse(p); }

Grid2D::Grid2D(std::size_t n, double fill, GridLayout layout)
    : n_(n), layout_(layout), data_(n * n, fill) {
    if (n < 2) throw DomainError("Grid2D: need at least 2 samples per axis");
}

Grid2D::Grid2D(std::size_t n, std::vector<double> values, GridLayout layout)
    : n_(n), layout_(layout), data_(std::move(values)) {
    if (n < 2) throw DomainError("Grid2D: need at least 2 samples per axis");
    if (data_.size() != n * n) throw DomainError("Grid2D: value count is not N*N");
}

double Grid2D::coordinate(std::size_t i) const noexcept {
    if (layout_ == GridLayout::vertex) return grid_node(i, n_);
    return (static_cast<double>(i) + 0.5) / static_cast<double>(n_);
}

double Grid2D::interpolate(double u, double v) const {
    const double nn = static_cast<double>(n_);
    const double scale = layout_ == GridLayout::vertex ? nn - 1.0 : nn;
    const double shift = layout_ == GridLayout::vertex ? 0.0 : 0.5;
    const double tu = std::clamp(std::clamp(u, 0.0, 1.0) * scale - shift, 0.0, nn - 1.0);
    const double tv = std::clamp(std::clamp(v, 0.0, 1.0) * scale - shift, 0.0, nn - 1.0);
    const auto i = std::min(static_cast<std::size_t>(tu), n_ - 2);
    const auto j = std::min(static_cast<std::size_t>(tv), n_ - 2);
    const double fu = tu - static_cast<double>(i);
    const double fv = tv - static_cast<double>(j);
    const auto& g = *this;
    return (1.0 - fu) * ((1.0 - fv) * g(i, j) + fv * g(i, j + 1)) +
           fu * ((1.0 - fv) * g(i + 1, j) + fv * g(i + 1, j + 1));
}

double trapezoid_2d(const Grid2D& g) {
    if (g.layout() == GridLayout::cell) {
        double total = 0.0;
        for (double v : g.data()) total += v;
        const double n = static_cast<double>(g.size());
        return total / (n * n);
    }
    const auto w = trapezoid_weights(g.size());
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) row += w[j] * g(i, j);
        total += w[i] * row;
    }
    return total;
}

Grid2D cumulative_2d(const Grid2D& g) {
    if (g.layout() == GridLayout::cell) {
        const std::size_t m = g.size();
        const double area = 1.0 / static_cast<double>(m * m);
        Grid2D out(m + 1, 0.0);
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = 1; j <= m; ++j)
                out(i, j) = out(i - 1, j) + out(i, j - 1) - out(i - 1, j - 1) + area * g(i - 1, j - 1);
        return out;
    }
    const std::size_t n = g.size();
    const double quarter_area = 0.25 / static_cast<double>((n - 1) * (n - 1));
    Grid2D out(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) {
            const double cell =
                quarter_area * (g(i - 1, j - 1) + g(i - 1, j) + g(i, j - 1) + g(i, j));
            out(i, j) = out(i - 1, j) + out(i, j - 1) - out(i - 1, j - 1) + cell;
        }
    }
    return out;
}

Grid2D cell_densities(const Grid2D& cdf) {
    if (cdf.layout() != GridLayout::vertex) throw DomainError("cell_densities: expects a vertex grid");
    const std::size_t m = cdf.size() - 1;
    const double inv_area = static_cast<double>(m * m);
    Grid2D out(m, 0.0, GridLayout::cell);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out(i, j) = inv_area * (cdf(i + 1, j + 1) - cdf(i, j + 1) - cdf(i + 1, j) + cdf(i, j));
    return out;
}

CdfAxiomReport check_cdf_axioms(const Grid2D& cdf) {
    const std::size_t n = cdf.size();
    CdfAxiomReport r;
    r.boundary_defect = std::abs(cdf(n - 1, n - 1) - 1.0);
    for (std::size_t k = 0; k < n; ++k)
        r.boundary_defect = std::max({r.boundary_defect, std::abs(cdf(0, k)), std::abs(cdf(k, 0))});
    r.min_rectangle_mass = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i > 0) r.monotonicity_defect = std::max(r.monotonicity_defect, cdf(i - 1, j) - cdf(i, j));
            if (j > 0) r.monotonicity_defect = std::max(r.monotonicity_defect, cdf(i, j - 1) - cdf(i, j));
            if (i > 0 && j > 0) {
                const double mass = cdf(i, j) - cdf(i - 1, j) - cdf(i, j - 1) + cdf(i - 1, j - 1);
                r.min_rectangle_mass = std::min(r.min_rectangle_mass, mass);
            }
        }
    }
    return r;
}

}  // namespace lorenz
