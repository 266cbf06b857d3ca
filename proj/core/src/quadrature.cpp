#include "lorenz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "lorenz/errors.hpp"

namespace lorenz {

std::vector<double> grid_nodes(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = grid_node(j, n);
    return x;
}

std::vector<double> trapezoid_weights(std::size_t n) {
    if (n < 2) throw DomainError("trapezoid_weights: need at least 2 nodes");
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> w(n, h);
    w.front() = w.back() = 0.5 * h;
    return w;
}

double trapezoid(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw DomainError("trapezoid: need at least 2 nodes");
    double inner = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) inner += values[j];
    const double h = 1.0 / static_cast<double>(n - 1);
    return h * (inner + 0.5 * (values.front() + values.back()));
}

std::vector<double> cumulative_trapezoid(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw DomainError("cumulative_trapezoid: need at least 2 nodes");
    const double half_h = 0.5 / static_cast<double>(n - 1);
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) out[j] = out[j - 1] + half_h * (values[j - 1] + values[j]);
    return out;
}

double power_start_exponent(std::span<const double> f) {
    if (f.size() < 3 || f[0] != 0.0 || !(f[1] > 0.0) || !(f[2] > 0.0)) return 1.0;
    const double b = std::log2(f[2] / f[1]);
    if (!std::isfinite(b)) return 1.0;
    return std::clamp(b, -0.9, 20.0);
}

std::vector<double> cumulative_power_start(std::span<const double> f) {
    auto out = cumulative_trapezoid(f);
    const double b = power_start_exponent(f);
    if (b == 1.0) return out;
    const double h = 1.0 / static_cast<double>(f.size() - 1);
    const double shift = f[1] * h / (b + 1.0) - out[1];
    for (std::size_t j = 1; j < out.size(); ++j) out[j] += shift;
    return out;
}

double interpolate_linear(std::span<const double> values, double x) {
    const std::size_t n = values.size();
    if (x <= 0.0) return values.front();
    if (x >= 1.0) return values.back();
    const double t = x * static_cast<double>(n - 1);
    const auto k = std::min(static_cast<std::size_t>(t), n - 2);
    const double frac = t - static_cast<double>(k);
    return values[k] + frac * (values[k + 1] - values[k]);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (!(b > a)) return 0.0;
    if (b - a <= 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)))
        return f(0.5 * (a + b)) * (b - a);
    // tanh-sinh clusters nodes at the ends, which suits quantile integrands
    // with infinite slope or value at 0 or 1
    thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
    double ts_value = std::numeric_limits<double>::quiet_NaN();
    double ts_error = std::numeric_limits<double>::infinity();
    double l1 = 0.0;
    try {
        ts_value = ts.integrate(f, a, b, rel_tol, &ts_error, &l1);
        if (std::isfinite(ts_value) && ts_error <= std::max(rel_tol * l1, 1e-300)) return ts_value;
    } catch (const std::exception&) {
    }
    if (!std::isfinite(ts_value)) ts_error = std::numeric_limits<double>::infinity();
    double gk_error = 0.0;
    const double gk_value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, rel_tol, &gk_error);
    return gk_error < ts_error ? gk_value : ts_value;
}

}  // namespace lorenz
