#include "lorenz/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorenz/errors.hpp"
#include "lorenz/quadrature.hpp"

namespace lorenz {

namespace {

// Pieces of [0,1] cut by two partitions: row a of the first and cell i of
// the second overlap on an interval of length len.
struct Overlap {
    std::size_t a;
    std::size_t i;
    double len;
};

// x: nodes 0 = x_0 <= ... <= x_m = 1 of the first partition; the second is
// the uniform one with m cells.
std::vector<Overlap> overlaps(std::span<const double> x) {
    const std::size_t m = x.size() - 1;
    const std::size_t n = x.size();
    std::vector<Overlap> out;
    out.reserve(2 * n);
    std::size_t a = 0, i = 0;
    double lo = 0.0;
    while (a < m && i < m) {
        const double ra = x[a + 1];
        const double ri = grid_node(i + 1, n);
        const double hi = std::min(ra, ri);
        if (hi > lo) out.push_back({a, i, hi - lo});
        lo = std::max(lo, hi);
        if (ra <= ri)
            ++a;
        else
            ++i;
    }
    return out;
}

std::vector<double> node_slopes(const GridCdf& L) {
    const std::size_t n = L.size();
    const double m = static_cast<double>(n - 1);
    const auto v = L.values();
    std::vector<double> s(n - 1), out(n);
    for (std::size_t i = 0; i + 1 < n; ++i) s[i] = (v[i + 1] - v[i]) * m;
    out.front() = s.front();
    out.back() = s.back();
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = 0.5 * (s[i - 1] + s[i]);
    return out;
}

// sum_ij c_ij Q1_i Q2_j with Q the cell integrals of the quantile functions.
double product_moment(std::span<const double> Q1, std::span<const double> Q2, const Grid2D& c) {
    const std::size_t m = c.size();
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) row += c(i, j) * Q2[j];
        total += Q1[i] * row;
    }
    return total;
}

// One application of the map. Q1, Q2: integrals of the quantile functions
// over the m grid cells; c: copula cell densities.
LorenzState advance(std::span<const double> Q1, std::span<const double> Q2, const Grid2D& c,
                    std::size_t next_n, const Tolerances& tol) {
    const std::size_t m = c.size();
    const std::size_t n = m + 1;
    const double h = 1.0 / static_cast<double>(m);

    const double D = product_moment(Q1, Q2, c);
    if (!(D > 0.0) || !std::isfinite(D))
        throw MomentError("product moment " + std::to_string(D) + " is not finite and positive");

    // density of the next Lorenz curve, constant on each grid cell
    Grid2D rho(m, 0.0, GridLayout::cell);
    for (std::size_t i = 0; i < m; ++i) {
        const double f = Q1[i] / (h * D);
        for (std::size_t j = 0; j < m; ++j) rho(i, j) = c(i, j) * f * Q2[j] / h;
    }

    std::vector<double> raw1(n, 0.0), raw2(n, 0.0);
    std::vector<double> col(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            r += rho(i, j);
            col[j] += rho(i, j);
        }
        raw1[i + 1] = raw1[i] + r * h * h;
    }
    for (std::size_t j = 0; j < m; ++j) raw2[j + 1] = raw2[j] + col[j] * h * h;
    auto joint = std::make_shared<Grid2D>(cumulative_2d(rho));
    {
        auto v = joint->data();
        const double total = v.back();
        for (double& x : v) x = std::clamp(x / total, 0.0, 1.0);
    }
    GridCdf L1 = GridCdf::enforce(std::move(raw1));
    GridCdf L2 = GridCdf::enforce(std::move(raw2));

    // mass of rho over the preimages of the new cells
    const auto o1 = overlaps(L1.inverse_at_nodes());
    const auto o2 = overlaps(L2.inverse_at_nodes());
    std::vector<double> T(m * m, 0.0);
    for (const auto& [a, i, len] : o1) {
        const auto src = rho.row(i);
        double* dst = T.data() + a * m;
        for (std::size_t j = 0; j < m; ++j) dst[j] += len * src[j];
    }
    auto next = std::make_shared<Grid2D>(m, 0.0, GridLayout::cell);
    Grid2D& cn = *next;
    const double inv_area = 1.0 / (h * h);
    for (const auto& [b, j, len] : o2)
        for (std::size_t a = 0; a < m; ++a) cn(a, b) += T[a * m + j] * len * inv_area;

    std::size_t floored = 0;
    for (double v : cn.data()) {
        if (!std::isfinite(v)) throw NumericalCollapse(next_n, "non-finite copula density value");
        if (v < kDensityFloor) ++floored;
    }
    if (static_cast<double>(floored) > tol.collapse_fraction * static_cast<double>(m * m))
        throw NumericalCollapse(next_n, std::to_string(floored) + " of " + std::to_string(m * m) +
                                            " copula cells below the density floor");

    const auto ci1 = L1.inverse_cell_integrals();
    const auto ci2 = L2.inverse_cell_integrals();
    LorenzState out{.n = next_n,
                    .L1 = std::move(L1),
                    .L2 = std::move(L2),
                    .l1 = {},
                    .l2 = {},
                    .c = next,
                    .C = std::make_shared<Grid2D>(cumulative_2d(cn)),
                    .L = joint,
                    .D = product_moment(ci1.first, ci2.first, cn)};
    out.l1 = node_slopes(out.L1);
    out.l2 = node_slopes(out.L2);
    return out;
}

// Integrals of F^{-1} over the grid cells, from partial moments.
std::vector<double> quantile_cell_integrals(const MarginalSpec& F, std::size_t n) {
    std::vector<double> pm(n);
    for (std::size_t j = 0; j < n; ++j) pm[j] = partial_moment(F, eval_quantile(F, grid_node(j, n)));
    std::vector<double> out(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) out[j] = std::max(pm[j + 1] - pm[j], 0.0);
    return out;
}

void validate(const ScenarioSpec& spec) {
    if (spec.grid_n < kMinEngineGrid)
        throw DomainError("grid size must be at least " + std::to_string(kMinEngineGrid));
    if (spec.copula.singular())
        throw SingularCopula(spec.copula.to_string() +
                             " start has no density; its dynamics are the closed-form bound curves");
}

}  // namespace

LorenzState init_state(const ScenarioSpec& spec) {
    validate(spec);
    const auto Q1 = quantile_cell_integrals(spec.F1, spec.grid_n);
    const auto Q2 = quantile_cell_integrals(spec.F2, spec.grid_n);
    const Grid2D c = cell_density_grid(spec.copula, spec.grid_n);
    return advance(Q1, Q2, c, 0, spec.tol);
}

LorenzState make_state(std::size_t n, GridCdf L1, GridCdf L2, Grid2D copula_cells) {
    const std::size_t N = L1.size();
    if (L2.size() != N || copula_cells.size() + 1 != N || copula_cells.layout() != GridLayout::cell)
        throw DomainError("make_state: copula cells must form an (N-1) x (N-1) cell grid");
    const auto ci1 = L1.inverse_cell_integrals();
    const auto ci2 = L2.inverse_cell_integrals();
    LorenzState s{.n = n,
                  .L1 = std::move(L1),
                  .L2 = std::move(L2),
                  .l1 = {},
                  .l2 = {},
                  .c = nullptr,
                  .C = std::make_shared<Grid2D>(cumulative_2d(copula_cells)),
                  .L = nullptr,
                  .D = 0.0};
    s.D = product_moment(ci1.first, ci2.first, copula_cells);
    s.c = std::make_shared<Grid2D>(std::move(copula_cells));
    s.l1 = node_slopes(s.L1);
    s.l2 = node_slopes(s.L2);
    auto joint = std::make_shared<Grid2D>(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            (*joint)(i, j) = std::clamp(s.C->interpolate(s.L1.values()[i], s.L2.values()[j]), 0.0, 1.0);
    s.L = std::move(joint);
    return s;
}

LorenzState step(const LorenzState& s, const Tolerances& tol) {
    const auto ci1 = s.L1.inverse_cell_integrals();
    const auto ci2 = s.L2.inverse_cell_integrals();
    return advance(ci1.first, ci2.first, *s.c, s.n + 1, tol);
}

IterationResult iterate(const ScenarioSpec& spec) {
    IterationResult out;
    out.states.reserve(spec.n_max + 1);
    out.states.push_back(init_state(spec));
    out.trace.records.push_back(measure(out.states, 0));
    for (std::size_t k = 1; k <= spec.n_max; ++k) {
        out.states.push_back(step(out.states.back(), spec.tol));
        out.trace.records.push_back(measure(out.states, k));
    }
    return out;
}

double eval_lorenz(const LorenzState& s, double x1, double x2) {
    if (x1 <= 0.0 || x2 <= 0.0) return 0.0;
    return std::clamp(s.L->interpolate(x1, x2), 0.0, 1.0);
}

Grid2D lorenz_cdf_grid(const LorenzState& s) { return *s.L; }

double reconstructed_mass(const LorenzState& s) {
    const std::size_t n = s.grid_size();
    const auto w = trapezoid_weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = s.L1.values()[i];
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += w[j] * s.c->interpolate(u, s.L2.values()[j]) * s.l2[j];
        total += w[i] * s.l1[i] * row;
    }
    return total;
}

Grid2D brute_force_step(const LorenzState& s, std::size_t refine) {
    if (refine < 1) throw DomainError("brute_force_step: refine must be >= 1");
    const std::size_t n = s.grid_size();
    const std::size_t m = refine * (n - 1) + 1;

    Grid2D L(m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) L(a, b) = eval_lorenz(s, grid_node(a, m), grid_node(b, m));

    // G(a,b): integral of u1 u2 dL over [0,u_a] x [0,u_b], midpoint rule per cell.
    Grid2D G(m, 0.0);
    const double h = 1.0 / static_cast<double>(m - 1);
    for (std::size_t a = 1; a < m; ++a) {
        const double ua = (static_cast<double>(a) - 0.5) * h;
        for (std::size_t b = 1; b < m; ++b) {
            const double ub = (static_cast<double>(b) - 0.5) * h;
            const double mass = L(a, b) - L(a - 1, b) - L(a, b - 1) + L(a - 1, b - 1);
            G(a, b) = G(a - 1, b) + G(a, b - 1) - G(a - 1, b - 1) + ua * ub * mass;
        }
    }
    const double total = G(m - 1, m - 1);
    if (!(total > 0.0)) throw MomentError("brute_force_step: product moment is not positive");

    const auto q1 = s.L1.inverse_at_nodes();
    const auto q2 = s.L2.inverse_at_nodes();
    Grid2D out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = G.interpolate(q1[i], q2[j]) / total;
    return out;
}

}  // namespace lorenz
