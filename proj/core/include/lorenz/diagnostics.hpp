#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lorenz/bounds.hpp"
#include "lorenz/copulas.hpp"
#include "lorenz/grid.hpp"
#include "lorenz/state.hpp"

namespace lorenz {

/// (1 + sqrt 5) / 2
inline constexpr double kGolden = 1.6180339887498948482;

/// Probe abscissae for compound inverses.
inline constexpr std::array<double, 5> kPhiProbes{0.1, 0.25, 0.5, 0.75, 0.9};

/// Interior clip used by independence_gap.
inline constexpr double kInteriorClip = 0.05;

/// Kendall tau 4 * integral(C c) - 1 of a copula density grid, C its running
/// integral (one node more than c when c is a cell grid).
double kendall_tau(const Grid2D& c);
double kendall_tau(const Grid2D& c, const Grid2D& C);
/// Closed-form families are tabulated by cell means on an N-node grid; M and W give +1 and -1.
double kendall_tau(const CopulaSpec& spec, std::size_t n = 1001);

/// Spearman rho 12 * integral(C) - 3.
double spearman_rho(const Grid2D& c);
double spearman_rho_from_cdf(const Grid2D& C);
double spearman_rho(const CopulaSpec& spec, std::size_t n = 1001);

/// sup over nodes of |g(x) - x^a|.
double sup_power_law_error(const GridCdf& g, double a);

/// Phi_n(x) = L^{0,-1}( L^{1,-1}( ... L^{n,-1}(x) ) ) over curves 0..n.
double compound_inverse(std::span<const GridCdf> curves, double x);
/// Same over states 0..n for margin i (1 or 2).
double compound_inverse(std::span<const LorenzState> states, int margin, double x);

enum class CrossingKind { none, root, degenerate };

struct Crossing {
    CrossingKind kind = CrossingKind::none;
    double x = 0.0;  ///< meaningful for kind == root

    [[nodiscard]] bool found() const noexcept { return kind == CrossingKind::root; }
};

/// The interior solution of g(x) = x. Interior nodes where |g - x| is within
/// 1e-12 of zero are treated as touching the diagonal; if all of them touch,
/// the result is degenerate. Throws MultipleCrossings on more than one sign change.
Crossing crossing_point(const GridCdf& g);

/// I = integral of q(1-q), q = g^{-1}.
double denominator(const GridCdf& g);
/// I_n for every first-marginal iterate of a lower-side sequence.
std::vector<double> denominator_sequence(const BoundMarginalSeq& seq);

/// sup |c - 1| over samples whose coordinates lie in [delta, 1 - delta].
double independence_gap(const Grid2D& c, double delta = kInteriorClip);

struct PhiSample {
    double x;
    double phi1;
    double phi2;
};

struct DiagnosticsRecord {
    std::size_t n = 0;
    double tau = 0.0;
    double rho = 0.0;
    double sup_err_phi1 = 0.0;  ///< distance of L1 to x^golden
    double sup_err_phi2 = 0.0;
    Crossing crossing1;
    Crossing crossing2;
    double independence_gap = 0.0;
    std::optional<double> I_n;  ///< set only on lower-bound runs
    std::vector<PhiSample> phi;
};

struct DiagnosticsTrace {
    std::vector<DiagnosticsRecord> records;
};

/// Measurements of states[n] given its history states[0..n].
DiagnosticsRecord measure(std::span<const LorenzState> states, std::size_t n);

}  // namespace lorenz
