#pragma once

// Reference values computed without the library: closed forms, plain
// Simpson sums and brute-force scans. Slow on purpose in places.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kPhi = 1.6180339887498948482;

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double normal_quantile(double p) {
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Marginals.
inline double lognormal_cdf(double mu, double sigma, double x) {
    return x <= 0 ? 0.0 : normal_cdf((std::log(x) - mu) / sigma);
}
inline double beta22_cdf(double x) { return x * x * (3 - 2 * x); }
inline double gamma2_cdf(double x) { return 1.0 - std::exp(-x) * (1.0 + x); }  // shape 2, scale 1
inline double sinewave_density(int k, double amp, double x) {
    return 1.0 + amp * std::sin(2 * std::numbers::pi * k * x);
}

// Copula densities.
inline double clayton_density(double t, double u, double v) {
    return (1 + t) * std::pow(u * v, -(1 + t)) * std::pow(std::pow(u, -t) + std::pow(v, -t) - 1, -(2 + 1 / t));
}
inline double clayton_cdf(double t, double u, double v) {
    return std::pow(std::max(std::pow(u, -t) + std::pow(v, -t) - 1, 0.0), -1 / t);
}
inline double frank_density(double t, double u, double v) {
    const double e = std::exp(-t);
    const double num = t * (1 - e) * std::exp(-t * (u + v));
    const double den = (1 - e) - (1 - std::exp(-t * u)) * (1 - std::exp(-t * v));
    return num / (den * den);
}
inline double gaussian_copula_density(double r, double u, double v) {
    const double a = normal_quantile(u), b = normal_quantile(v);
    return std::exp(-(r * r * (a * a + b * b) - 2 * r * a * b) / (2 * (1 - r * r))) / std::sqrt(1 - r * r);
}
// Phi2(a, b; r) = Phi(a) Phi(b) + int_0^r phi2(a, b; s) ds.
inline double gaussian_copula_cdf(double r, double u, double v) {
    const double a = normal_quantile(u), b = normal_quantile(v);
    const auto phi2 = [&](double s) {
        const double q = 1 - s * s;
        return std::exp(-(a * a - 2 * s * a * b + b * b) / (2 * q)) / (2 * std::numbers::pi * std::sqrt(q));
    };
    return u * v + simpson(phi2, 0.0, r, 4000);
}

inline double kendall_gaussian(double r) { return 2 / std::numbers::pi * std::asin(r); }
inline double spearman_gaussian(double r) { return 6 / std::numbers::pi * std::asin(r / 2); }
inline double kendall_clayton(double t) { return t / (t + 2); }
inline double kendall_frank(double t) {
    const double d1 = simpson([](double s) { return s == 0 ? 1.0 : s / std::expm1(s); }, 0, t, 4000) / t;
    return 1 - 4 / t * (1 - d1);
}

struct MinorRange {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
};

// Adjacent log-minors of a density on an n x n lattice spanning [lo, hi]^2.
inline MinorRange minor_scan(const std::function<double(double, double)>& dens, double lo, double hi, int n) {
    std::vector<double> lg(static_cast<std::size_t>(n * n));
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lg[i * n + j] = std::log(dens(lo + i * h, lo + j * h));
    MinorRange r;
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j + 1 < n; ++j) {
            const double m = lg[i * n + j] + lg[(i + 1) * n + j + 1] - lg[i * n + j + 1] - lg[(i + 1) * n + j];
            r.min = std::min(r.min, m);
            r.max = std::max(r.max, m);
        }
    return r;
}

// Largest single-axis second difference of log density on the same lattice.
inline double max_axis_curvature(const std::function<double(double, double)>& dens, double lo, double hi, int n) {
    const double h = (hi - lo) / (n - 1);
    const auto l = [&](int i, int j) { return std::log(dens(lo + i * h, lo + j * h)); };
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < n; ++i)
        for (int j = 1; j + 1 < n; ++j) {
            worst = std::max(worst, l(i - 1, j) - 2 * l(i, j) + l(i + 1, j));
            worst = std::max(worst, l(i, j - 1) - 2 * l(i, j) + l(i, j + 1));
        }
    return worst;
}

inline double max_abs_deviation(const std::function<double(double, double)>& dens, double lo, double hi, int n) {
    double worst = 0;
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(dens(lo + i * h, lo + j * h) - 1.0));
    return worst;
}

// Marginal exponents under the independence copula: a -> 1 + 1/a.
inline std::vector<double> golden_exponents(double a0, int steps) {
    std::vector<double> a{a0};
    for (int k = 0; k < steps; ++k) a.push_back(1 + 1 / a.back());
    return a;
}

// Marginal exponents under the comonotonic copula: a -> (a + 2)/a.
inline std::vector<double> upper_exponents(double a0, int steps) {
    std::vector<double> a{a0};
    for (int k = 0; k < steps; ++k) a.push_back((a.back() + 2) / a.back());
    return a;
}

inline double sup_power_gap(double a, double b, int n = 100001) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / (n - 1);
        worst = std::max(worst, std::abs(std::pow(x, a) - std::pow(x, b)));
    }
    return worst;
}

// Countermonotonic marginal map, carried on the quantile side:
// g' = q(1-q)/I with q = g^{-1}, and I = int q(1-q). The quantile of the
// next curve is found by inverting its running integral on a fine grid.
// Returns I for curves 0..steps starting from the identity.
inline std::vector<double> lower_I_sequence(int steps, int n = 200001) {
    std::vector<double> x(n), q(n);
    for (int i = 0; i < n; ++i) x[i] = q[i] = static_cast<double>(i) / (n - 1);
    const double h = 1.0 / (n - 1);
    std::vector<double> out;
    for (int k = 0; k <= steps; ++k) {
        std::vector<double> g(n, 0.0);
        for (int i = 1; i < n; ++i) {
            // Simpson on each cell with the midpoint from linear q
            const double a = q[i - 1], b = q[i], m = 0.5 * (a + b);
            g[i] = g[i - 1] + h / 6 * (a * (1 - a) + 4 * m * (1 - m) + b * (1 - b));
        }
        const double I = g.back();
        out.push_back(I);
        for (double& v : g) v /= I;
        // q_next(p) = g^{-1}(p) at p = x_i
        std::vector<double> next(n);
        std::size_t j = 0;
        for (int i = 0; i < n; ++i) {
            while (j + 1 < static_cast<std::size_t>(n) && g[j + 1] < x[i]) ++j;
            if (j + 1 >= static_cast<std::size_t>(n)) {
                next[i] = 1.0;
                continue;
            }
            const double d = g[j + 1] - g[j];
            next[i] = d > 0 ? x[j] + h * (x[i] - g[j]) / d : x[j];
        }
        next[0] = 0.0;
        next[n - 1] = 1.0;
        q = std::move(next);
    }
    return out;
}

}  // namespace oracle
