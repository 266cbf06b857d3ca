#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lorenz/bounds.hpp"
#include "lorenz/diagnostics.hpp"
#include "lorenz/state.hpp"

namespace lorenz::cli {

/// Fixed table headers.
inline constexpr std::string_view kMarginalsHeader = "n,x,L1,L2";
inline constexpr std::string_view kDependenceHeader = "n,tau,rho,independence_gap";
inline constexpr std::string_view kPhiHeader = "n,x,phi1,phi2";
inline constexpr std::string_view kClassifyHeader = "n,tp2,rr2,worst_violation";
inline constexpr std::string_view kTraceHeader =
    "n,tau,rho,sup_err_phi1,sup_err_phi2,crossing1,crossing2,independence_gap,D";
inline constexpr std::string_view kBoundsHeader = "n,x,upper1,upper2,lower1,lower2";
inline constexpr std::string_view kUpperHeader = "n,exponent,sup_err_x2";
inline constexpr std::string_view kLowerHeader = "n,I,reflection_defect,crossing1";
inline constexpr std::string_view kCopulaHeader =
    "copula,tp2,rr2,worst_violation,log_concave,coordinatewise_log_concave,tau,rho";

/// %.12g; non-finite values print as nan, inf, -inf.
std::string format_number(double v);

/// Empty unless the crossing is an interior root.
std::string format_crossing(const Crossing& c);

// Each writer emits the header line then one line per row, iteration-major.
void write_marginals(std::ostream& out, std::span<const LorenzState> states);
void write_dependence(std::ostream& out, const DiagnosticsTrace& trace);
void write_phi(std::ostream& out, const DiagnosticsTrace& trace);
void write_classify(std::ostream& out, std::span<const LorenzState> states, double tol = 1e-9);
void write_trace(std::ostream& out, const DiagnosticsTrace& trace, std::span<const LorenzState> states);
/// Sections of the upper and lower envelopes at every grid node.
void write_bounds(std::ostream& out, const BoundMarginalSeq& upper, const BoundMarginalSeq& lower);

/// Per-iteration summaries for `lorenz bounds`.
void write_upper_summary(std::ostream& out, const BoundMarginalSeq& upper);
void write_lower_summary(std::ostream& out, const BoundMarginalSeq& lower);

/// One row for `lorenz classify`. Singular copulas leave the log-concavity
/// fields empty.
void write_copula_row(std::ostream& out, const CopulaSpec& spec, std::size_t grid_n, bool header = true);

}  // namespace lorenz::cli
