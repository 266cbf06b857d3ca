#include "lorenz_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "lorenz/copulas.hpp"
#include "lorenz/errors.hpp"

namespace lorenz::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // no -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_crossing(const Crossing& c) { return c.found() ? format_number(c.x) : std::string(); }

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_marginals(std::ostream& out, std::span<const LorenzState> states) {
    out << kMarginalsHeader << '\n';
    for (const auto& s : states) {
        const auto v1 = s.L1.values();
        const auto v2 = s.L2.values();
        for (std::size_t j = 0; j < s.grid_size(); ++j)
            out << s.n << ',' << format_number(s.L1.node(j)) << ',' << format_number(v1[j]) << ','
                << format_number(v2[j]) << '\n';
    }
}

void write_dependence(std::ostream& out, const DiagnosticsTrace& trace) {
    out << kDependenceHeader << '\n';
    for (const auto& r : trace.records)
        out << r.n << ',' << format_number(r.tau) << ',' << format_number(r.rho) << ','
            << format_number(r.independence_gap) << '\n';
}

void write_phi(std::ostream& out, const DiagnosticsTrace& trace) {
    out << kPhiHeader << '\n';
    for (const auto& r : trace.records)
        for (const auto& p : r.phi)
            out << r.n << ',' << format_number(p.x) << ',' << format_number(p.phi1) << ',' << format_number(p.phi2)
                << '\n';
}

void write_classify(std::ostream& out, std::span<const LorenzState> states, double tol) {
    out << kClassifyHeader << '\n';
    for (const auto& s : states) {
        out << s.n << ',';
        try {
            const Tp2Report r = classify_tp2_rr2(*s.c, tol);
            out << flag(r.tp2) << ',' << flag(r.rr2) << ',' << format_number(r.worst_violation) << '\n';
        } catch (const DegenerateDensity&) {
            out << "false,false,nan\n";
        }
    }
}

void write_trace(std::ostream& out, const DiagnosticsTrace& trace, std::span<const LorenzState> states) {
    out << kTraceHeader << '\n';
    for (const auto& r : trace.records) {
        out << r.n << ',' << format_number(r.tau) << ',' << format_number(r.rho) << ','
            << format_number(r.sup_err_phi1) << ',' << format_number(r.sup_err_phi2) << ','
            << format_crossing(r.crossing1) << ',' << format_crossing(r.crossing2) << ','
            << format_number(r.independence_gap) << ',';
        out << (r.n < states.size() ? format_number(states[r.n].D) : std::string("nan")) << '\n';
    }
}

void write_bounds(std::ostream& out, const BoundMarginalSeq& upper, const BoundMarginalSeq& lower) {
    if (upper.L1.size() != lower.L1.size()) throw InvariantViolation("bound sequences differ in length");
    out << kBoundsHeader << '\n';
    for (std::size_t k = 0; k < upper.L1.size(); ++k) {
        const auto u1 = upper.L1[k].values();
        const auto u2 = upper.L2[k].values();
        const auto w1 = lower.L1[k].values();
        const auto w2 = lower.L2[k].values();
        for (std::size_t j = 0; j < u1.size(); ++j)
            out << k << ',' << format_number(upper.L1[k].node(j)) << ',' << format_number(u1[j]) << ','
                << format_number(u2[j]) << ',' << format_number(w1[j]) << ',' << format_number(w2[j]) << '\n';
    }
}

void write_upper_summary(std::ostream& out, const BoundMarginalSeq& upper) {
    out << kUpperHeader << '\n';
    for (std::size_t k = 0; k < upper.L1.size(); ++k)
        out << k << ',' << format_number(fit_power_exponent(upper.L1[k])) << ','
            << format_number(sup_power_law_error(upper.L1[k], 2.0)) << '\n';
}

void write_lower_summary(std::ostream& out, const BoundMarginalSeq& lower) {
    out << kLowerHeader << '\n';
    for (std::size_t k = 0; k < lower.L1.size(); ++k)
        out << k << ',' << format_number(denominator(lower.L1[k])) << ','
            << format_number(check_reflection(lower.L1[k], lower.L2[k])) << ','
            << format_crossing(crossing_point(lower.L1[k])) << '\n';
}

void write_copula_row(std::ostream& out, const CopulaSpec& spec, std::size_t grid_n, bool header) {
    if (header) out << kCopulaHeader << '\n';
    const Tp2Report r = classify_tp2_rr2(spec, grid_n);
    out << spec.to_string() << ',' << flag(r.tp2) << ',' << flag(r.rr2) << ',' << format_number(r.worst_violation)
        << ',';
    if (spec.singular()) {
        out << ",,";
    } else {
        const LogConcavityReport lc = classify_log_concavity(density_grid(spec, grid_n));
        out << flag(lc.joint) << ',' << flag(lc.coordinatewise) << ',';
    }
    out << format_number(kendall_tau(spec, grid_n)) << ',' << format_number(spearman_rho(spec, grid_n)) << '\n';
}

}  // namespace lorenz::cli
