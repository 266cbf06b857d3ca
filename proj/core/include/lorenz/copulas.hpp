#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lorenz/grid.hpp"

namespace lorenz {

enum class CopulaFamily { independence, gaussian, clayton, frank, amh, comonotonic_M, countermonotonic_W };

class CopulaSpec {
public:
    static CopulaSpec independence();
    static CopulaSpec gaussian(double rho);
    static CopulaSpec clayton(double theta);
    static CopulaSpec frank(double theta);
    static CopulaSpec amh(double theta);
    static CopulaSpec comonotonic();
    static CopulaSpec countermonotonic();

    [[nodiscard]] CopulaFamily family() const noexcept { return family_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }
    /// M and W put all mass on a line and have no density.
    [[nodiscard]] bool singular() const noexcept {
        return family_ == CopulaFamily::comonotonic_M || family_ == CopulaFamily::countermonotonic_W;
    }
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const CopulaSpec&, const CopulaSpec&) = default;

private:
    CopulaSpec(CopulaFamily f, double t) : family_(f), theta_(t) {}

    CopulaFamily family_;
    double theta_;
};

/// Arguments are clamped to [1e-9, 1 - 1e-9] before evaluation.
inline constexpr double kCopulaClamp = 1e-9;

/// c(u,v). Throws SingularCopula for M and W.
double copula_density(const CopulaSpec& spec, double u, double v);

/// C(u,v) for u, v in [0,1] (clamped).
double copula_cdf(const CopulaSpec& spec, double u, double v);

/// Bivariate standard normal upper orthant P(X > h, Y > k) with correlation r.
double bivariate_normal_upper(double h, double k, double r);

/// Point values c(x_i, x_j) on the N-node vertex grid (clamped at the edges).
Grid2D density_grid(const CopulaSpec& spec, std::size_t n);

/// Mean density over each of the (n-1)^2 cells of the n-node vertex grid,
/// from rectangle masses of the CDF (cell layout). Defined for every family,
/// M and W included; corner singularities stay bounded.
Grid2D cell_density_grid(const CopulaSpec& spec, std::size_t n);

/// C(x_i, x_j) on the N-node vertex grid.
Grid2D cdf_grid(const CopulaSpec& spec, std::size_t n);

/// Log-minors of densities at or below this value are treated as clipped.
inline constexpr double kDensityFloor = 1e-12;

struct Tp2Report {
    bool tp2 = false;
    bool rr2 = false;
    /// Largest defect against the reported class (or the nearer class when neither holds).
    double worst_violation = 0.0;
    /// Extremes of the adjacent log-minors over the scanned region.
    double min_minor = 0.0;
    double max_minor = 0.0;
    /// Lower-left node of the minor that produced worst_violation.
    std::size_t i = 0;
    std::size_t j = 0;
};

/// Sign of the adjacent 2x2 log-minors
/// log h(i,j) + log h(i+1,j+1) - log h(i,j+1) - log h(i+1,j)
/// over interior nodes (outermost ring excluded). tp2 iff every minor >= -tol,
/// rr2 iff every minor <= tol. Throws DegenerateDensity when more than half
/// of the scanned entries sit at or below kDensityFloor.
Tp2Report classify_tp2_rr2(const Grid2D& density, double tol = 1e-9);

/// Classifies a copula family from its point-value density grid. M is TP2 and
/// W is RR2 by their definitions as limits; no grid is formed for them.
Tp2Report classify_tp2_rr2(const CopulaSpec& spec, std::size_t n, double tol = 1e-9);

struct LogConcavityReport {
    bool joint = false;
    bool coordinatewise = false;
    /// Largest eigenvalue of the discrete Hessian of log h over the scan.
    double max_eigenvalue = 0.0;
    /// Largest single-axis second difference of log h.
    double max_axis_curvature = 0.0;
};

/// Second-difference scan of log h on interior nodes (outer ring excluded).
/// Differences are unscaled, so tol is in log units per grid cell squared.
LogConcavityReport classify_log_concavity(const Grid2D& density, double tol = 1e-9);

}  // namespace lorenz
