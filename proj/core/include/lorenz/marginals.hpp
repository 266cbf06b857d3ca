#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "lorenz/grid.hpp"

namespace lorenz {

enum class MarginalFamily { uniform01, power, lognormal, beta, gamma, sinewave };

/// A parametric law on [0, inf) used to seed the iteration. Parameters are
/// validated by the factories; a constructed spec is always usable.
class MarginalSpec {
public:
    static MarginalSpec uniform01();
    /// CDF x^a on [0,1].
    static MarginalSpec power(double a);
    static MarginalSpec lognormal(double mu, double sigma);
    static MarginalSpec beta(double alpha, double beta);
    static MarginalSpec gamma(double shape, double scale);
    /// Density 1 + amp*sin(2*pi*freq*x) on [0,1].
    static MarginalSpec sinewave(int freq, double amp);

    [[nodiscard]] MarginalFamily family() const noexcept { return family_; }
    [[nodiscard]] double param(std::size_t k) const noexcept { return params_[k]; }
    [[nodiscard]] bool bounded() const noexcept {
        return family_ != MarginalFamily::lognormal && family_ != MarginalFamily::gamma;
    }
    /// Canonical text form, e.g. "lognormal(0.5,0.2)".
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const MarginalSpec&, const MarginalSpec&) = default;

private:
    MarginalSpec(MarginalFamily f, double a, double b) : family_(f), params_{a, b} {}

    MarginalFamily family_;
    std::array<double, 2> params_;
};

/// F(x); arguments outside the support are clamped.
double eval_cdf(const MarginalSpec& spec, double x);

/// inf{x : F(x) >= p}. Returns +inf at p = 1 for unbounded families.
double eval_quantile(const MarginalSpec& spec, double p);

/// f(x); zero outside the support.
double eval_density(const MarginalSpec& spec, double x);

/// Truncated first moment: integral of t dF(t) over [0, y]. y may be +inf.
double partial_moment(const MarginalSpec& spec, double y);

double mean(const MarginalSpec& spec);

/// Tabulates the CDF of a law supported in [0,1] on the N-node grid.
GridCdf tabulate(const MarginalSpec& spec, std::size_t n);

}  // namespace lorenz
