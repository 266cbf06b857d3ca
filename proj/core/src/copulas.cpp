#include "lorenz/copulas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "lorenz/errors.hpp"
#include "lorenz/quadrature.hpp"

namespace lorenz {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double clamp_open(double u) { return std::clamp(u, kCopulaClamp, 1.0 - kCopulaClamp); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

double clayton_density(double t, double u, double v) {
    const double s = std::pow(u, -t) + std::pow(v, -t) - 1.0;
    const double log_c = std::log1p(t) - (1.0 + t) * (std::log(u) + std::log(v)) -
                         (2.0 + 1.0 / t) * std::log(s);
    return std::exp(log_c);
}

// 1 + e^{-t(M-m)} - e^{-tM} - e^{-t(1-m)}: the Frank denominator with
// e^{-tm} factored out, t > 0, m = min(u,v), M = max(u,v).
double frank_bracket(double t, double m, double M) {
    return 1.0 + std::exp(-t * (M - m)) - std::exp(-t * M) - std::exp(-t * (1.0 - m));
}

double frank_density(double t, double u, double v) {
    if (t < 0.0) return frank_density(-t, u, 1.0 - v);
    const double m = std::min(u, v), M = std::max(u, v);
    const double b = frank_bracket(t, m, M);
    return t * -std::expm1(-t) * std::exp(-t * (M - m)) / (b * b);
}

double frank_cdf(double t, double u, double v) {
    if (t < 0.0) return std::max(u - frank_cdf(-t, u, 1.0 - v), 0.0);
    const double m = std::min(u, v), M = std::max(u, v);
    return std::clamp(m + (std::log(-std::expm1(-t)) - std::log(frank_bracket(t, m, M))) / t, 0.0, m);
}

double amh_density(double t, double u, double v) {
    const double d = 1.0 - t * (1.0 - u) * (1.0 - v);
    const double num = 1.0 + t * ((1.0 + u) * (1.0 + v) - 3.0) + t * t * (1.0 - u) * (1.0 - v);
    return num / (d * d * d);
}

double gaussian_density_z(double r, double a, double b) {
    const double one_minus = 1.0 - r * r;
    const double q = r * r * (a * a + b * b) - 2.0 * r * a * b;
    return std::exp(-q / (2.0 * one_minus)) / std::sqrt(one_minus);
}

double gaussian_density(double r, double u, double v) {
    return gaussian_density_z(r, normal_quantile(u), normal_quantile(v));
}

// Cells whose mean density from CDF differences is below these are
// recomputed by quadrature of the density, since the differences lose
// relative accuracy there. Border cells switch only when nearly empty: the
// density may be singular at the edge.
constexpr double kQuadratureSwitch = 4.0;
constexpr double kBorderQuadratureSwitch = 1e-3;

}  // namespace

CopulaSpec CopulaSpec::independence() { return {CopulaFamily::independence, 0.0}; }

CopulaSpec CopulaSpec::gaussian(double rho) {
    if (!(rho > -1.0 && rho < 1.0)) throw DomainError("gaussian: rho must lie in (-1,1)");
    return {CopulaFamily::gaussian, rho};
}

CopulaSpec CopulaSpec::clayton(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("clayton: theta must be > 0");
    return {CopulaFamily::clayton, theta};
}

CopulaSpec CopulaSpec::frank(double theta) {
    if (theta == 0.0 || !std::isfinite(theta)) throw DomainError("frank: theta must be nonzero");
    return {CopulaFamily::frank, theta};
}

CopulaSpec CopulaSpec::amh(double theta) {
    if (!(theta >= -1.0 && theta < 1.0)) throw DomainError("amh: theta must lie in [-1,1)");
    return {CopulaFamily::amh, theta};
}

CopulaSpec CopulaSpec::comonotonic() { return {CopulaFamily::comonotonic_M, 0.0}; }

CopulaSpec CopulaSpec::countermonotonic() { return {CopulaFamily::countermonotonic_W, 0.0}; }

std::string CopulaSpec::to_string() const {
    switch (family_) {
        case CopulaFamily::independence: return "independence";
        case CopulaFamily::gaussian: return "gaussian(" + fmt(theta_) + ")";
        case CopulaFamily::clayton: return "clayton(" + fmt(theta_) + ")";
        case CopulaFamily::frank: return "frank(" + fmt(theta_) + ")";
        case CopulaFamily::amh: return "amh(" + fmt(theta_) + ")";
        case CopulaFamily::comonotonic_M: return "M";
        case CopulaFamily::countermonotonic_W: return "W";
    }
    return {};
}

double copula_density(const CopulaSpec& s, double u, double v) {
    if (s.singular())
        throw SingularCopula(s.to_string() +
                             " has no density; use the closed-form bound curves instead");
    u = clamp_open(u);
    v = clamp_open(v);
    const double t = s.theta();
    switch (s.family()) {
        case CopulaFamily::independence: return 1.0;
        case CopulaFamily::gaussian: return t == 0.0 ? 1.0 : gaussian_density(t, u, v);
        case CopulaFamily::clayton: return clayton_density(t, u, v);
        case CopulaFamily::frank: return frank_density(t, u, v);
        case CopulaFamily::amh: return amh_density(t, u, v);
        default: break;
    }
    return 0.0;
}

double bivariate_normal_upper(double h, double k, double r) {
    const double hk = h * k;
    const double hs = 0.5 * (h * h + k * k);
    const double base = normal_cdf(-h) * normal_cdf(-k);
    if (r == 0.0) return base;
    const double span = std::asin(r);
    auto integrand = [&](double theta) {
        const double sn = std::sin(theta);
        return std::exp((sn * hk - hs) / (1.0 - sn * sn));
    };
    double integral = 0.0;
    if (std::abs(r) < 0.925) {
        // Fixed 20-point Gauss-Legendre is good to roughly 1e-15 on this range.
        using rule = boost::math::quadrature::gauss<double, 20>;
        const double half = 0.5 * span;
        const auto& x = rule::abscissa();
        const auto& w = rule::weights();
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double f = x[i] == 0.0 ? integrand(half)
                                         : integrand(half * (1.0 - x[i])) + integrand(half * (1.0 + x[i]));
            integral += w[i] * f;
        }
        integral *= half;
    } else {
        const double lo = std::min(0.0, span);
        const double hi = std::max(0.0, span);
        integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 15,
                                                                                  1e-14);
        if (span < 0.0) integral = -integral;
    }
    return std::clamp(base + integral / (2.0 * std::numbers::pi), 0.0, 1.0);
}

double copula_cdf(const CopulaSpec& s, double u, double v) {
    u = std::clamp(u, 0.0, 1.0);
    v = std::clamp(v, 0.0, 1.0);
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    const double t = s.theta();
    switch (s.family()) {
        case CopulaFamily::independence: return u * v;
        case CopulaFamily::comonotonic_M: return std::min(u, v);
        case CopulaFamily::countermonotonic_W: return std::max(u + v - 1.0, 0.0);
        case CopulaFamily::gaussian:
            if (t == 0.0) return u * v;
            return bivariate_normal_upper(-normal_quantile(u), -normal_quantile(v), t);
        case CopulaFamily::clayton:
            return std::pow(std::pow(u, -t) + std::pow(v, -t) - 1.0, -1.0 / t);
        case CopulaFamily::frank: return frank_cdf(t, u, v);
        case CopulaFamily::amh: return u * v / (1.0 - t * (1.0 - u) * (1.0 - v));
    }
    return 0.0;
}

Grid2D density_grid(const CopulaSpec& spec, std::size_t n) {
    Grid2D g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = copula_density(spec, grid_node(i, n), grid_node(j, n));
    return g;
}

Grid2D cell_density_grid(const CopulaSpec& spec, std::size_t n) {
    if (n < 3) throw DomainError("cell_density_grid: need at least 3 nodes");
    Grid2D g = cell_densities(cdf_grid(spec, n));
    if (!spec.singular() && spec.family() != CopulaFamily::independence) {
        constexpr std::size_t K = 4;
        using rule = boost::math::quadrature::gauss<double, K>;
        const auto& ax = rule::abscissa();
        const auto& wt = rule::weights();
        // nodes and weights on [0,1]
        const std::array<double, K> t{0.5 - 0.5 * ax[1], 0.5 - 0.5 * ax[0], 0.5 + 0.5 * ax[0],
                                      0.5 + 0.5 * ax[1]};
        const std::array<double, K> w{0.5 * wt[1], 0.5 * wt[0], 0.5 * wt[0], 0.5 * wt[1]};
        const std::size_t m = n - 1;
        const double h = 1.0 / static_cast<double>(m);
        const bool gauss = spec.family() == CopulaFamily::gaussian;
        std::vector<double> pts(K * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < K; ++k) {
                const double u = clamp_open(grid_node(i, n) + t[k] * h);
                pts[K * i + k] = gauss ? normal_quantile(u) : u;
            }
        const double th = spec.theta();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const bool border = i == 0 || j == 0 || i + 1 == m || j + 1 == m;
                if (!(g(i, j) < (border ? kBorderQuadratureSwitch : kQuadratureSwitch))) continue;
                double acc = 0.0;
                for (std::size_t k = 0; k < K; ++k)
                    for (std::size_t l = 0; l < K; ++l) {
                        const double a = pts[K * i + k], b = pts[K * j + l];
                        acc += w[k] * w[l] *
                               (gauss ? gaussian_density_z(th, a, b) : copula_density(spec, a, b));
                    }
                g(i, j) = acc;
            }
    }
    for (double& v : g.data()) v = std::max(v, 0.0);
    return g;
}

Grid2D cdf_grid(const CopulaSpec& spec, std::size_t n) {
    Grid2D g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = copula_cdf(spec, grid_node(i, n), grid_node(j, n));
    return g;
}

Tp2Report classify_tp2_rr2(const Grid2D& h, double tol) {
    const std::size_t n = h.size();
    if (n < 4) throw DomainError("classify_tp2_rr2: need at least 4 nodes per axis");
    std::size_t clipped = 0;
    std::size_t scanned = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const double v = h(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw InvariantViolation("classify_tp2_rr2: density entries must be finite and >= 0");
            ++scanned;
            if (v <= kDensityFloor) ++clipped;
        }
    }
    if (2 * clipped > scanned)
        throw DegenerateDensity("classify_tp2_rr2: " + std::to_string(clipped) + " of " +
                                std::to_string(scanned) + " entries at or below the floor");

    Tp2Report r;
    r.min_minor = std::numeric_limits<double>::infinity();
    r.max_minor = -std::numeric_limits<double>::infinity();
    std::size_t min_i = 0, min_j = 0, max_i = 0, max_j = 0;
    for (std::size_t i = 1; i + 2 < n; ++i) {
        for (std::size_t j = 1; j + 2 < n; ++j) {
            const double a = h(i, j), b = h(i + 1, j + 1), c = h(i, j + 1), d = h(i + 1, j);
            if (a <= kDensityFloor || b <= kDensityFloor || c <= kDensityFloor || d <= kDensityFloor)
                continue;
            const double m = (std::log(a) + std::log(b)) - (std::log(c) + std::log(d));
            if (m < r.min_minor) {
                r.min_minor = m;
                min_i = i;
                min_j = j;
            }
            if (m > r.max_minor) {
                r.max_minor = m;
                max_i = i;
                max_j = j;
            }
        }
    }
    if (r.min_minor > r.max_minor) throw DegenerateDensity("classify_tp2_rr2: no usable minors");

    r.tp2 = r.min_minor >= -tol;
    r.rr2 = r.max_minor <= tol;
    const double tp2_defect = std::max(0.0, -r.min_minor);
    const double rr2_defect = std::max(0.0, r.max_minor);
    bool use_min = true;
    if (r.tp2 && r.rr2) {
        use_min = -r.min_minor >= r.max_minor;
        r.worst_violation = std::max(std::abs(r.min_minor), std::abs(r.max_minor));
    } else if (r.tp2) {
        r.worst_violation = tp2_defect;
    } else if (r.rr2) {
        use_min = false;
        r.worst_violation = rr2_defect;
    } else {
        use_min = tp2_defect <= rr2_defect;
        r.worst_violation = std::min(tp2_defect, rr2_defect);
    }
    r.i = use_min ? min_i : max_i;
    r.j = use_min ? min_j : max_j;
    return r;
}

Tp2Report classify_tp2_rr2(const CopulaSpec& spec, std::size_t n, double tol) {
    if (spec.family() == CopulaFamily::comonotonic_M) return {.tp2 = true, .rr2 = false};
    if (spec.family() == CopulaFamily::countermonotonic_W) return {.tp2 = false, .rr2 = true};
    return classify_tp2_rr2(density_grid(spec, n), tol);
}

LogConcavityReport classify_log_concavity(const Grid2D& h, double tol) {
    const std::size_t n = h.size();
    if (n < 5) throw DomainError("classify_log_concavity: need at least 5 nodes per axis");
    std::vector<double> lg(n * n, std::numeric_limits<double>::quiet_NaN());
    std::size_t clipped = 0;
    std::size_t scanned = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const double v = h(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw InvariantViolation("classify_log_concavity: density entries must be finite and >= 0");
            ++scanned;
            if (v <= kDensityFloor) ++clipped;
            else lg[i * n + j] = std::log(v);
        }
    }
    if (2 * clipped > scanned)
        throw DegenerateDensity("classify_log_concavity: too many entries at or below the floor");

    LogConcavityReport r;
    r.max_eigenvalue = -std::numeric_limits<double>::infinity();
    r.max_axis_curvature = -std::numeric_limits<double>::infinity();
    auto at = [&](std::size_t i, std::size_t j) { return lg[i * n + j]; };
    for (std::size_t i = 2; i + 2 < n; ++i) {
        for (std::size_t j = 2; j + 2 < n; ++j) {
            const double duu = at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j);
            const double dvv = at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1);
            const double duv =
                0.25 * (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1));
            if (std::isnan(duu) || std::isnan(dvv) || std::isnan(duv)) continue;
            const double mid = 0.5 * (duu + dvv);
            const double rad = std::hypot(0.5 * (duu - dvv), duv);
            r.max_eigenvalue = std::max(r.max_eigenvalue, mid + rad);
            r.max_axis_curvature = std::max({r.max_axis_curvature, duu, dvv});
        }
    }
    r.joint = r.max_eigenvalue <= tol;
    r.coordinatewise = r.max_axis_curvature <= tol;
    return r;
}

}  // namespace lorenz
