#include "lorenz/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "lorenz/errors.hpp"
#include "lorenz/quadrature.hpp"

namespace lorenz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double sinewave_cdf(int k, double amp, double x) {
    const double w = 2.0 * std::numbers::pi * k;
    return x + amp * (1.0 - std::cos(w * x)) / w;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

MarginalSpec MarginalSpec::uniform01() { return {MarginalFamily::uniform01, 0.0, 0.0}; }

MarginalSpec MarginalSpec::power(double a) {
    require(std::isfinite(a) && a > 0.0, "power: exponent must be > 0");
    return {MarginalFamily::power, a, 0.0};
}

MarginalSpec MarginalSpec::lognormal(double mu, double sigma) {
    require(std::isfinite(mu), "lognormal: mu must be finite");
    require(std::isfinite(sigma) && sigma > 0.0, "lognormal: sigma must be > 0");
    return {MarginalFamily::lognormal, mu, sigma};
}

MarginalSpec MarginalSpec::beta(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0, "beta: alpha must be > 0");
    require(std::isfinite(beta) && beta > 0.0, "beta: beta must be > 0");
    return {MarginalFamily::beta, alpha, beta};
}

MarginalSpec MarginalSpec::gamma(double shape, double scale) {
    require(std::isfinite(shape) && shape > 0.0, "gamma: shape must be > 0");
    require(std::isfinite(scale) && scale > 0.0, "gamma: scale must be > 0");
    return {MarginalFamily::gamma, shape, scale};
}

MarginalSpec MarginalSpec::sinewave(int freq, double amp) {
    require(freq >= 1, "sinewave: frequency must be a positive integer");
    require(amp >= 0.0 && amp < 1.0, "sinewave: amplitude must lie in [0,1)");
    return {MarginalFamily::sinewave, static_cast<double>(freq), amp};
}

std::string MarginalSpec::to_string() const {
    switch (family_) {
        case MarginalFamily::uniform01: return "uniform";
        case MarginalFamily::power: return "power(" + fmt(params_[0]) + ")";
        case MarginalFamily::lognormal:
            return "lognormal(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case MarginalFamily::beta: return "beta(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case MarginalFamily::gamma: return "gamma(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case MarginalFamily::sinewave:
            return "sinewave(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
    }
    return {};
}

double eval_cdf(const MarginalSpec& s, double x) {
    if (std::isnan(x)) throw DomainError("eval_cdf: NaN argument");
    if (x <= 0.0) return 0.0;
    const double a = s.param(0);
    const double b = s.param(1);
    switch (s.family()) {
        case MarginalFamily::uniform01: return std::min(x, 1.0);
        case MarginalFamily::power: return x >= 1.0 ? 1.0 : std::pow(x, a);
        case MarginalFamily::lognormal:
            return std::isinf(x) ? 1.0 : normal_cdf((std::log(x) - a) / b);
        case MarginalFamily::beta: return x >= 1.0 ? 1.0 : boost::math::ibeta(a, b, x);
        case MarginalFamily::gamma: return std::isinf(x) ? 1.0 : boost::math::gamma_p(a, x / b);
        case MarginalFamily::sinewave:
            return x >= 1.0 ? 1.0 : sinewave_cdf(static_cast<int>(a), b, x);
    }
    return 0.0;
}

double eval_quantile(const MarginalSpec& s, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("eval_quantile: p outside [0,1]");
    const double a = s.param(0);
    const double b = s.param(1);
    if (p == 0.0) return 0.0;
    if (p == 1.0) return s.bounded() ? 1.0 : kInf;
    switch (s.family()) {
        case MarginalFamily::uniform01: return p;
        case MarginalFamily::power: return std::pow(p, 1.0 / a);
        case MarginalFamily::lognormal: return std::exp(a + b * normal_quantile(p));
        case MarginalFamily::beta: {
            try {
                return boost::math::ibeta_inv(a, b, p);
            } catch (const boost::math::evaluation_error&) {
                // ibeta_inv's Newton stage can stall, e.g. at the median of beta(5,5)
            }
            auto f = [&](double x) { return boost::math::ibeta(a, b, x) - p; };
            std::uintmax_t iters = 200;
            const auto [lo, hi] = boost::math::tools::toms748_solve(
                f, 0.0, 1.0, -p, 1.0 - p, boost::math::tools::eps_tolerance<double>(50), iters);
            return 0.5 * (lo + hi);
        }
        case MarginalFamily::gamma: return b * boost::math::gamma_p_inv(a, p);
        case MarginalFamily::sinewave: {
            const int k = static_cast<int>(a);
            auto f = [&](double x) { return sinewave_cdf(k, b, x) - p; };
            std::uintmax_t iters = 200;
            const auto [lo, hi] = boost::math::tools::toms748_solve(
                f, 0.0, 1.0, -p, 1.0 - p, boost::math::tools::eps_tolerance<double>(50), iters);
            return 0.5 * (lo + hi);
        }
    }
    return 0.0;
}

double eval_density(const MarginalSpec& s, double x) {
    if (std::isnan(x)) throw DomainError("eval_density: NaN argument");
    const double a = s.param(0);
    const double b = s.param(1);
    if (x < 0.0 || (s.bounded() && x > 1.0)) return 0.0;
    switch (s.family()) {
        case MarginalFamily::uniform01: return 1.0;
        case MarginalFamily::power: return a * std::pow(x, a - 1.0);
        case MarginalFamily::lognormal: {
            if (x == 0.0 || std::isinf(x)) return 0.0;
            const double z = (std::log(x) - a) / b;
            return std::exp(-0.5 * z * z) / (x * b * std::sqrt(2.0 * std::numbers::pi));
        }
        case MarginalFamily::beta: return boost::math::ibeta_derivative(a, b, x);
        case MarginalFamily::gamma:
            return std::isinf(x) ? 0.0 : boost::math::gamma_p_derivative(a, x / b) / b;
        case MarginalFamily::sinewave:
            return 1.0 + b * std::sin(2.0 * std::numbers::pi * a * x);
    }
    return 0.0;
}

double partial_moment(const MarginalSpec& s, double y) {
    if (std::isnan(y)) throw DomainError("partial_moment: NaN argument");
    if (y <= 0.0) return 0.0;
    const double a = s.param(0);
    const double b = s.param(1);
    if (s.bounded()) y = std::min(y, 1.0);
    switch (s.family()) {
        case MarginalFamily::uniform01: return 0.5 * y * y;
        case MarginalFamily::power: return a / (a + 1.0) * std::pow(y, a + 1.0);
        case MarginalFamily::lognormal: {
            const double m = std::exp(a + 0.5 * b * b);
            return std::isinf(y) ? m : m * normal_cdf((std::log(y) - a - b * b) / b);
        }
        case MarginalFamily::beta: return a / (a + b) * boost::math::ibeta(a + 1.0, b, y);
        case MarginalFamily::gamma:
            return std::isinf(y) ? a * b : a * b * boost::math::gamma_p(a + 1.0, y / b);
        case MarginalFamily::sinewave: {
            const double w = 2.0 * std::numbers::pi * a;
            return 0.5 * y * y + b * (std::sin(w * y) / (w * w) - y * std::cos(w * y) / w);
        }
    }
    return 0.0;
}

double mean(const MarginalSpec& s) { return partial_moment(s, kInf); }

GridCdf tabulate(const MarginalSpec& spec, std::size_t n) {
    return GridCdf::tabulate([&](double x) { return eval_cdf(spec, x); }, n);
}

}  // namespace lorenz
