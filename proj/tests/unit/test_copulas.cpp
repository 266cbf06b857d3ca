#include <gtest/gtest.h>

#include <cmath>

#include "lorenz/copulas.hpp"
#include "lorenz/errors.hpp"
#include "support/oracles.hpp"

using namespace lorenz;

TEST(Copulas, DensityExamples) {
    EXPECT_NEAR(copula_density(CopulaSpec::independence(), 0.3, 0.9), 1.0, 1e-15);
    EXPECT_NEAR(copula_density(CopulaSpec::gaussian(0), 0.5, 0.5), 1.0, 1e-12);
    EXPECT_NEAR(copula_density(CopulaSpec::clayton(2), 0.5, 0.5), oracle::clayton_density(2, 0.5, 0.5), 1e-10);
}

TEST(Copulas, DensityMatchesClosedForms) {
    for (double u : {0.03, 0.2, 0.5, 0.81, 0.97})
        for (double v : {0.05, 0.4, 0.66, 0.99}) {
            EXPECT_NEAR(copula_density(CopulaSpec::clayton(2), u, v), oracle::clayton_density(2, u, v),
                        1e-9 * oracle::clayton_density(2, u, v));
            EXPECT_NEAR(copula_density(CopulaSpec::frank(5), u, v), oracle::frank_density(5, u, v), 1e-10);
            EXPECT_NEAR(copula_density(CopulaSpec::frank(-5), u, v), oracle::frank_density(-5, u, v), 1e-10);
            EXPECT_NEAR(copula_density(CopulaSpec::gaussian(-0.8), u, v),
                        oracle::gaussian_copula_density(-0.8, u, v), 1e-8);
        }
}

TEST(Copulas, CdfExamples) {
    EXPECT_NEAR(copula_cdf(CopulaSpec::comonotonic(), 0.3, 0.7), 0.3, 1e-15);
    EXPECT_NEAR(copula_cdf(CopulaSpec::countermonotonic(), 0.3, 0.7), 0.0, 1e-15);
    EXPECT_NEAR(copula_cdf(CopulaSpec::independence(), 0.5, 0.4), 0.2, 1e-15);
    EXPECT_NEAR(copula_cdf(CopulaSpec::clayton(2), 0.3, 0.6), oracle::clayton_cdf(2, 0.3, 0.6), 1e-12);
    for (double u : {0.1, 0.3, 0.8})
        for (double v : {0.2, 0.6, 0.95})
            EXPECT_NEAR(copula_cdf(CopulaSpec::gaussian(-0.8), u, v), oracle::gaussian_copula_cdf(-0.8, u, v), 1e-9);
}

TEST(Copulas, SingularFamiliesHaveNoDensity) {
    EXPECT_THROW(copula_density(CopulaSpec::comonotonic(), 0.5, 0.5), SingularCopula);
    EXPECT_THROW(copula_density(CopulaSpec::countermonotonic(), 0.5, 0.5), SingularCopula);
    EXPECT_THROW(CopulaSpec::gaussian(1.5), DomainError);
    EXPECT_THROW(CopulaSpec::clayton(-2), DomainError);
}

TEST(Copulas, CellGridHoldsUnitMass) {
    for (const auto& s : {CopulaSpec::independence(), CopulaSpec::clayton(2), CopulaSpec::gaussian(-0.8),
                          CopulaSpec::frank(5), CopulaSpec::amh(0.5)}) {
        const Grid2D c = cell_density_grid(s, 101);
        ASSERT_EQ(c.size(), 100u);
        double mass = 0;
        for (double v : c.data()) {
            EXPECT_GE(v, 0.0);
            mass += v;
        }
        EXPECT_NEAR(mass / 1e4, 1.0, 1e-9) << s.to_string();
    }
}

TEST(Copulas, ClassifyExamples) {
    const auto ind = classify_tp2_rr2(CopulaSpec::independence(), 201);
    EXPECT_TRUE(ind.tp2);
    EXPECT_TRUE(ind.rr2);
    const auto cl = classify_tp2_rr2(CopulaSpec::clayton(2), 201);
    EXPECT_TRUE(cl.tp2);
    EXPECT_FALSE(cl.rr2);
    const auto ga = classify_tp2_rr2(CopulaSpec::gaussian(-0.8), 201);
    EXPECT_FALSE(ga.tp2);
    EXPECT_TRUE(ga.rr2);
}

TEST(Copulas, ClassifyAgreesWithDenseScan) {
    struct Case {
        CopulaSpec spec;
        std::function<double(double, double)> dens;
    };
    const std::vector<Case> cases{
        {CopulaSpec::clayton(2), [](double u, double v) { return oracle::clayton_density(2, u, v); }},
        {CopulaSpec::frank(5), [](double u, double v) { return oracle::frank_density(5, u, v); }},
        {CopulaSpec::frank(-5), [](double u, double v) { return oracle::frank_density(-5, u, v); }},
        {CopulaSpec::gaussian(-0.8), [](double u, double v) { return oracle::gaussian_copula_density(-0.8, u, v); }},
    };
    for (const auto& c : cases) {
        const auto scan = oracle::minor_scan(c.dens, 0.005, 0.995, 400);
        const auto rep = classify_tp2_rr2(c.spec, 401);
        EXPECT_EQ(rep.tp2, scan.min >= -1e-12) << c.spec.to_string();
        EXPECT_EQ(rep.rr2, scan.max <= 1e-12) << c.spec.to_string();
    }
}

TEST(Copulas, ClassifyGridAndSingular) {
    EXPECT_TRUE(classify_tp2_rr2(CopulaSpec::comonotonic(), 101).tp2);
    EXPECT_TRUE(classify_tp2_rr2(CopulaSpec::countermonotonic(), 101).rr2);
    // The cell grid used to seed the iteration classifies like the family.
    const auto cl = classify_tp2_rr2(cell_density_grid(CopulaSpec::clayton(2), 1001));
    EXPECT_TRUE(cl.tp2 && !cl.rr2);
    const auto ga = classify_tp2_rr2(cell_density_grid(CopulaSpec::gaussian(-0.8), 1001));
    EXPECT_TRUE(ga.rr2 && !ga.tp2);
}

TEST(Copulas, ClassifyRejectsFlooredGrid) {
    Grid2D g(50, 0.0);
    for (std::size_t i = 0; i < 50; ++i) g(i, i) = 1.0;
    EXPECT_THROW(classify_tp2_rr2(g), DegenerateDensity);
}

TEST(Copulas, LogConcavity) {
    const auto ind = classify_log_concavity(density_grid(CopulaSpec::independence(), 101));
    EXPECT_TRUE(ind.joint);
    EXPECT_TRUE(ind.coordinatewise);
    // Neither family is log-concave along an axis: the dense scan finds
    // positive second differences of the log density.
    const auto ga_scan = oracle::max_axis_curvature(
        [](double u, double v) { return oracle::gaussian_copula_density(-0.8, u, v); }, 0.01, 0.99, 199);
    const auto cl_scan = oracle::max_axis_curvature(
        [](double u, double v) { return oracle::clayton_density(2, u, v); }, 0.01, 0.99, 199);
    ASSERT_GT(ga_scan, 1e-6);
    ASSERT_GT(cl_scan, 1e-6);
    const auto ga = classify_log_concavity(density_grid(CopulaSpec::gaussian(-0.8), 201));
    const auto cl = classify_log_concavity(density_grid(CopulaSpec::clayton(2), 201));
    EXPECT_FALSE(ga.coordinatewise);
    EXPECT_FALSE(ga.joint);
    EXPECT_FALSE(cl.coordinatewise);
}

TEST(Copulas, FrankStableForLargeTheta) {
    for (double t : {-300.0, -40.0, 40.0, 300.0}) {
        const auto s = CopulaSpec::frank(t);
        for (double u : {0.01, 0.3, 0.5, 0.93})
            for (double v : {0.02, 0.5, 0.71}) {
                const double c = copula_density(s, u, v);
                EXPECT_TRUE(std::isfinite(c) && c >= 0) << t << " " << u << " " << v;
                const double C = copula_cdf(s, u, v);
                EXPECT_GE(C, std::max(u + v - 1, 0.0) - 1e-12);
                EXPECT_LE(C, std::min(u, v) + 1e-12);
            }
        // symmetric reflection of the family
        EXPECT_NEAR(copula_density(s, 0.3, 0.6), copula_density(CopulaSpec::frank(-t), 0.3, 0.4),
                    1e-9 * copula_density(s, 0.3, 0.6));
    }
    // moderate theta against the textbook form
    EXPECT_NEAR(copula_cdf(CopulaSpec::frank(5), 0.3, 0.6),
                -std::log1p(std::expm1(-1.5) * std::expm1(-3.0) / std::expm1(-5.0)) / 5, 1e-14);
}
