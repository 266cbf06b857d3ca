#include "lorenz/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorenz/errors.hpp"
#include "lorenz/quadrature.hpp"

namespace lorenz {

namespace {

constexpr double kDiagonalEps = 1e-12;

double weighted_sum(const Grid2D& a, const Grid2D* b) {
    const std::size_t n = a.size();
    const auto w = trapezoid_weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += w[j] * a(i, j) * (b ? (*b)(i, j) : 1.0);
        total += w[i] * row;
    }
    return total;
}

}  // namespace

double kendall_tau(const Grid2D& c, const Grid2D& C) {
    if (c.layout() == GridLayout::vertex) {
        if (c.size() != C.size()) throw DomainError("kendall_tau: grid sizes differ");
        return 4.0 * weighted_sum(C, &c) - 1.0;
    }
    // C is bilinear on each cell, so its cell mean is the mean of the corners.
    const std::size_t m = c.size();
    if (C.size() != m + 1) throw DomainError("kendall_tau: CDF must have one more node than cells");
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            total += c(i, j) * (C(i, j) + C(i + 1, j) + C(i, j + 1) + C(i + 1, j + 1));
    const double h = 1.0 / static_cast<double>(m);
    return total * h * h - 1.0;
}

double kendall_tau(const Grid2D& c) { return kendall_tau(c, cumulative_2d(c)); }

double kendall_tau(const CopulaSpec& spec, std::size_t n) {
    if (spec.family() == CopulaFamily::comonotonic_M) return 1.0;
    if (spec.family() == CopulaFamily::countermonotonic_W) return -1.0;
    return kendall_tau(cell_density_grid(spec, n));
}

double spearman_rho_from_cdf(const Grid2D& C) { return 12.0 * weighted_sum(C, nullptr) - 3.0; }

double spearman_rho(const Grid2D& c) { return spearman_rho_from_cdf(cumulative_2d(c)); }

double spearman_rho(const CopulaSpec& spec, std::size_t n) {
    if (spec.family() == CopulaFamily::comonotonic_M) return 1.0;
    if (spec.family() == CopulaFamily::countermonotonic_W) return -1.0;
    return spearman_rho(cell_density_grid(spec, n));
}

double sup_power_law_error(const GridCdf& g, double a) {
    if (!(a > 0.0)) throw DomainError("sup_power_law_error: exponent must be > 0");
    double worst = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        worst = std::max(worst, std::abs(g.values()[j] - std::pow(g.node(j), a)));
    return worst;
}

double compound_inverse(std::span<const GridCdf> curves, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("compound_inverse: x outside [0,1]");
    double y = x;
    for (auto it = curves.rbegin(); it != curves.rend(); ++it) y = it->inverse(y);
    return y;
}

double compound_inverse(std::span<const LorenzState> states, int margin, double x) {
    if (margin != 1 && margin != 2) throw DomainError("compound_inverse: margin must be 1 or 2");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("compound_inverse: x outside [0,1]");
    double y = x;
    for (auto it = states.rbegin(); it != states.rend(); ++it)
        y = (margin == 1 ? it->L1 : it->L2).inverse(y);
    return y;
}

Crossing crossing_point(const GridCdf& g) {
    const std::size_t n = g.size();
    const auto v = g.values();
    auto diff = [&](std::size_t j) { return v[j] - g.node(j); };
    auto sign = [&](std::size_t j) {
        const double d = diff(j);
        return std::abs(d) <= kDiagonalEps ? 0 : (d > 0.0 ? 1 : -1);
    };

    std::size_t changes = 0;
    std::size_t last_nonzero = 0;  // 0 means none seen yet
    std::size_t bracket_lo = 0, bracket_hi = 0;
    bool any_nonzero = false;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const int s = sign(j);
        if (s == 0) continue;
        if (any_nonzero && s != sign(last_nonzero)) {
            ++changes;
            bracket_lo = last_nonzero;
            bracket_hi = j;
        }
        any_nonzero = true;
        last_nonzero = j;
    }
    if (!any_nonzero) return {CrossingKind::degenerate, 0.0};
    if (changes == 0) return {CrossingKind::none, 0.0};
    if (changes > 1)
        throw MultipleCrossings("crossing_point: " + std::to_string(changes) +
                                " sign changes of g(x) - x on interior nodes");
    if (bracket_hi - bracket_lo > 1) {
        // Touches the diagonal on a run of nodes; report the middle of the run.
        return {CrossingKind::root, 0.5 * (g.node(bracket_lo + 1) + g.node(bracket_hi - 1))};
    }
    const double d0 = diff(bracket_lo);
    const double d1 = diff(bracket_hi);
    const double t = d0 / (d0 - d1);
    return {CrossingKind::root, g.node(bracket_lo) + t * (g.node(bracket_hi) - g.node(bracket_lo))};
}

double denominator(const GridCdf& g) {
    const auto ci = g.inverse_cell_integrals();
    double total = 0.0;
    for (std::size_t j = 0; j < ci.first.size(); ++j) total += ci.first[j] - ci.second[j];
    return total;
}

std::vector<double> denominator_sequence(const BoundMarginalSeq& seq) {
    if (seq.side != BoundSide::lower)
        throw DomainError("denominator_sequence: expects a lower-side sequence");
    std::vector<double> out;
    out.reserve(seq.L1.size());
    for (const auto& g : seq.L1) out.push_back(denominator(g));
    return out;
}

double independence_gap(const Grid2D& c, double delta) {
    const std::size_t n = c.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = c.coordinate(i);
        if (u < delta - 1e-12 || u > 1.0 - delta + 1e-12) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = c.coordinate(j);
            if (v < delta - 1e-12 || v > 1.0 - delta + 1e-12) continue;
            worst = std::max(worst, std::abs(c(i, j) - 1.0));
        }
    }
    return worst;
}

DiagnosticsRecord measure(std::span<const LorenzState> states, std::size_t n) {
    if (n >= states.size()) throw DomainError("measure: iteration index out of range");
    const LorenzState& s = states[n];
    DiagnosticsRecord r;
    r.n = s.n;
    r.tau = kendall_tau(*s.c, *s.C);
    r.rho = spearman_rho_from_cdf(*s.C);
    r.sup_err_phi1 = sup_power_law_error(s.L1, kGolden);
    r.sup_err_phi2 = sup_power_law_error(s.L2, kGolden);
    r.crossing1 = crossing_point(s.L1);
    r.crossing2 = crossing_point(s.L2);
    r.independence_gap = independence_gap(*s.c);
    const auto history = states.subspan(0, n + 1);
    for (double x : kPhiProbes)
        r.phi.push_back({x, compound_inverse(history, 1, x), compound_inverse(history, 2, x)});
    return r;
}

}  // namespace lorenz
