#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lorenz_cli/app.hpp"
#include "lorenz_cli/config.hpp"
#include "lorenz_cli/report.hpp"

using namespace lorenz;
using namespace lorenz::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "lorenz");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::stringstream ss(s);
    for (std::string l; std::getline(ss, l);) v.push_back(l);
    return v;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> v;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) v.push_back(f);
    if (!line.empty() && line.back() == ',') v.emplace_back();
    return v;
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("lorenz-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

const char* kSmall = R"(# small run
[scenario]
name = small
F1 = uniform
F2 = uniform
copula = independence
grid_n = 51
n_max = 2

[output]
dir = out
emit = all
)";

}  // namespace

TEST(Config, ParsesSpecs) {
    EXPECT_EQ(parse_marginal("sinewave(3, 0.5)"), MarginalSpec::sinewave(3, 0.5));
    EXPECT_EQ(parse_marginal("LogNormal( 0.5 ,0.2 )"), MarginalSpec::lognormal(0.5, 0.2));
    EXPECT_EQ(parse_marginal("uniform"), MarginalSpec::uniform01());
    EXPECT_EQ(parse_copula("gaussian(-0.8)"), CopulaSpec::gaussian(-0.8));
    EXPECT_EQ(parse_copula("M"), CopulaSpec::comonotonic());
    EXPECT_THROW(parse_marginal("beta(2)"), ConfigError);
    EXPECT_THROW(parse_marginal("weibull(1,2)"), ConfigError);
    EXPECT_THROW(parse_marginal("sinewave(2.5, 0.1)"), ConfigError);
    EXPECT_THROW(parse_copula("clayton(x)"), ConfigError);
}

TEST(Config, PresetsParse) {
    const auto tp2 = parse_config_text(find_preset("tp2-fig6-11")->text);
    EXPECT_EQ(tp2.scenario.copula, CopulaSpec::clayton(2));
    EXPECT_EQ(tp2.scenario.F1, MarginalSpec::sinewave(3, 0.5));
    EXPECT_EQ(tp2.scenario.F2, MarginalSpec::gamma(2, 1));
    const auto rr2 = parse_config_text(find_preset("rr2-fig1-5")->text);
    EXPECT_EQ(rr2.scenario.copula, CopulaSpec::gaussian(-0.8));
    EXPECT_EQ(rr2.scenario.F1, MarginalSpec::lognormal(0.5, 0.2));
    EXPECT_EQ(rr2.scenario.F2, MarginalSpec::beta(2, 2));
    const auto gold = parse_config_text(find_preset("golden-uniform")->text);
    EXPECT_EQ(gold.scenario.copula, CopulaSpec::independence());
    EXPECT_EQ(gold.scenario.n_max, 25u);
    EXPECT_EQ(gold.output_dir, fs::path("lorenz-out/golden-uniform"));
    EXPECT_EQ(find_preset("nope"), nullptr);
}

TEST(Config, PresetFilesMatchEmbeddedText) {
    for (const auto& p : presets())
        EXPECT_EQ(slurp(fs::path(LORENZ_PRESET_DIR) / (std::string(p.name) + ".conf")), p.text) << p.name;
}

TEST(Config, Defaults) {
    const auto cfg = parse_config_text("[scenario]\nname=a\nF1=uniform\nF2=beta(2,2)\ncopula=frank(5)\n", "/base");
    EXPECT_EQ(cfg.scenario.grid_n, 1001u);
    EXPECT_EQ(cfg.scenario.n_max, 25u);
    EXPECT_EQ(cfg.output_dir, fs::path("/base/lorenz-out/a"));
    EXPECT_TRUE(cfg.emit.marginals && cfg.emit.phi && cfg.emit.dependence);
    EXPECT_FALSE(cfg.emit.bounds || cfg.emit.classify || cfg.emit.trace);
}

TEST(Config, ErrorsCarryLineNumbers) {
    const auto line_of = [](const std::string& text) {
        try {
            parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.line();
        }
        return std::size_t{999};
    };
    const std::string head = "[scenario]\nname=a\nF1=uniform\nF2=uniform\n";
    EXPECT_EQ(line_of(head + "copula=gaussian(1.5)\n"), 5u);
    EXPECT_EQ(line_of(head + "copula=independence\ncolour=red\n"), 6u);
    EXPECT_EQ(line_of(head + "copula=independence\nF1=beta(2,2)\n"), 6u);
    EXPECT_EQ(line_of(head + "copula=independence\ngrid_n=10\n"), 6u);
    EXPECT_EQ(line_of(head + "copula=independence\nn_max=-1\n"), 6u);
    EXPECT_EQ(line_of(head + "copula=W\n"), 5u);
    EXPECT_EQ(line_of(head + "copula=independence\n[output]\nemit=marginals,plots\n"), 7u);
    EXPECT_EQ(line_of(head + "copula=independence\n[extra]\n"), 6u);
    EXPECT_EQ(line_of(head), 0u);  // missing copula
    EXPECT_EQ(line_of("name=a\n"), 1u);
}

TEST(Config, UnwritableOutputDir) {
    TempDir t;
    const fs::path blocker = t.path() / "file";
    std::ofstream(blocker) << "x";
    RunConfig cfg;
    cfg.output_dir = blocker / "sub";
    EXPECT_THROW(prepare_output_dir(cfg), ConfigError);
}

TEST(Config, GridOverride) {
    ::setenv("LORENZ_GRID_N", "101", 1);
    EXPECT_EQ(grid_override_from_env(), std::optional<std::size_t>(101));
    ::setenv("LORENZ_GRID_N", "abc", 1);
    EXPECT_THROW(grid_override_from_env(), ConfigError);
    ::unsetenv("LORENZ_GRID_N");
    EXPECT_FALSE(grid_override_from_env().has_value());
}

TEST(Report, NumberFormat) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1e-20), "1e-20");
    EXPECT_EQ(format_crossing({CrossingKind::none, 0.3}), "");
}

TEST(Cli, IterateWritesDocumentedTables) {
    TempDir t;
    std::ofstream(t.path() / "small.conf") << kSmall;
    const auto r = invoke({"iterate", (t.path() / "small.conf").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const fs::path out = t.path() / "out";
    const std::vector<std::pair<std::string, std::string_view>> tables{
        {"marginals.csv", "n,x,L1,L2"},
        {"dependence.csv", "n,tau,rho,independence_gap"},
        {"phi.csv", "n,x,phi1,phi2"},
        {"classify.csv", "n,tp2,rr2,worst_violation"},
        {"trace.csv", kTraceHeader},
        {"bounds.csv", "n,x,upper1,upper2,lower1,lower2"},
    };
    for (const auto& [file, header] : tables) {
        const auto ls = lines(slurp(out / file));
        ASSERT_FALSE(ls.empty()) << file;
        EXPECT_EQ(ls[0], header) << file;
    }
    const auto m = lines(slurp(out / "marginals.csv"));
    EXPECT_EQ(m.size(), 1 + 3 * 51u);
    // iteration-major, then grid index
    EXPECT_EQ(m[1], "0,0,0,0");
    EXPECT_EQ(fields(m[51])[0], "0");
    EXPECT_EQ(fields(m[52])[0], "1");
    EXPECT_EQ(m[26], "0,0.5,0.25,0.25");
    EXPECT_EQ(lines(slurp(out / "dependence.csv")).size(), 4u);
    EXPECT_EQ(lines(slurp(out / "phi.csv")).size(), 1 + 3 * 5u);
}

TEST(Cli, IterateIsByteIdentical) {
    TempDir t;
    const std::string cfg = std::string(kSmall).replace(std::string(kSmall).find("independence"), 12, "gaussian(-0.8)");
    std::ofstream(t.path() / "a.conf") << cfg;
    ASSERT_EQ(invoke({"iterate", (t.path() / "a.conf").string(), "--out", (t.path() / "r1").string()}).code, 0);
    ASSERT_EQ(invoke({"iterate", (t.path() / "a.conf").string(), "--out", (t.path() / "r2").string()}).code, 0);
    for (const char* f : {"marginals.csv", "dependence.csv", "phi.csv", "classify.csv", "trace.csv", "bounds.csv"})
        EXPECT_EQ(slurp(t.path() / "r1" / f), slurp(t.path() / "r2" / f)) << f;
}

TEST(Cli, GoldenFiles) {
    TempDir t;
    std::ofstream(t.path() / "small.conf") << kSmall;
    ASSERT_EQ(invoke({"iterate", (t.path() / "small.conf").string()}).code, 0);
    for (const char* f : {"marginals.csv", "dependence.csv", "phi.csv", "classify.csv", "bounds.csv"}) {
        const auto got = lines(slurp(t.path() / "out" / f));
        const auto want = lines(slurp(fs::path(LORENZ_GOLDEN_DIR) / f));
        ASSERT_EQ(got.size(), want.size()) << f;
        EXPECT_EQ(got[0], want[0]) << f;
        for (std::size_t i = 1; i < got.size(); ++i) {
            const auto a = fields(got[i]);
            const auto b = fields(want[i]);
            ASSERT_EQ(a.size(), b.size()) << f << ":" << i;
            for (std::size_t k = 0; k < a.size(); ++k) {
                if (a[k] == b[k]) continue;
                EXPECT_NEAR(std::stod(a[k]), std::stod(b[k]), 1e-9) << f << ":" << i;
            }
        }
    }
}

TEST(Cli, GoldenUniformPreset) {
    TempDir t;
    const auto r = invoke({"iterate", "golden-uniform", "--out", t.path().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto m = lines(slurp(t.path() / "marginals.csv"));
    ASSERT_EQ(m.size(), 1 + 26 * 1001u);
    double worst = 0;
    for (std::size_t i = m.size() - 1001; i < m.size(); ++i) {
        const auto f = fields(m[i]);
        ASSERT_EQ(f[0], "25");
        const double x = std::stod(f[1]);
        worst = std::max({worst, std::abs(std::stod(f[2]) - std::pow(x, 1.6180339887498948)),
                          std::abs(std::stod(f[3]) - std::pow(x, 1.6180339887498948))});
    }
    EXPECT_LT(worst, 1e-2);
}

TEST(Cli, GridOverrideAppliesToPresets) {
    TempDir t;
    ::setenv("LORENZ_GRID_N", "61", 1);
    const auto r = invoke({"iterate", "tp2-fig6-11", "--out", t.path().string()});
    ::unsetenv("LORENZ_GRID_N");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(slurp(t.path() / "marginals.csv")).size(), 1 + 26 * 61u);
}

TEST(Cli, BoundsUpper) {
    const auto r = invoke({"bounds", "upper", "--seed", "uniform", "--n", "30"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 32u);
    EXPECT_EQ(ls[0], "n,exponent,sup_err_x2");
    const auto last = fields(ls.back());
    EXPECT_EQ(last[0], "30");
    EXPECT_NEAR(std::stod(last[1]), 2.0, 1e-3);
}

TEST(Cli, BoundsLower) {
    const auto r = invoke({"bounds", "lower", "--n", "3", "--grid", "501"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 5u);
    EXPECT_EQ(ls[0], "n,I,reflection_defect,crossing1");
    EXPECT_NEAR(std::stod(fields(ls[1])[1]), 0.2, 1e-6);
    EXPECT_NEAR(std::stod(fields(ls[1])[3]), 0.5, 1e-9);
}

TEST(Cli, Classify) {
    const auto r = invoke({"classify", "clayton(2)", "--grid", "201"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], kCopulaHeader);
    const auto f = fields(ls[1]);
    EXPECT_EQ(f[0], "clayton(2)");
    EXPECT_EQ(f[1], "true");
    EXPECT_EQ(f[2], "false");
    const auto w = fields(lines(invoke({"classify", "W"}).out)[1]);
    EXPECT_EQ(w[2], "true");
    EXPECT_EQ(w[4], "");
}

TEST(Cli, PresetsListAndShow) {
    const auto r = invoke({"presets", "list"});
    ASSERT_EQ(r.code, 0);
    for (const char* n : {"golden-uniform", "rr2-fig1-5", "tp2-fig6-11"}) EXPECT_NE(r.out.find(n), std::string::npos);
    EXPECT_EQ(invoke({"presets", "show", "rr2-fig1-5"}).out, find_preset("rr2-fig1-5")->text);
}

TEST(Cli, ExitCodes) {
    TempDir t;
    EXPECT_EQ(invoke({}).code, kExitConfig);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitConfig);
    EXPECT_EQ(invoke({"iterate", "no-such-preset"}).code, kExitConfig);
    EXPECT_EQ(invoke({"classify", "gaussian(2)"}).code, kExitConfig);
    EXPECT_EQ(invoke({"bounds", "sideways"}).code, kExitConfig);
    std::ofstream(t.path() / "bad.conf") << "[scenario]\nname=x\nF1=uniform\nF2=uniform\ncopula=gaussian(1.5)\n";
    const auto r = invoke({"iterate", (t.path() / "bad.conf").string()});
    EXPECT_EQ(r.code, kExitConfig);
    EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, NumericalFailureExitCode) {
    // nearly countermonotonic: most cells of the starting copula fall below the floor
    TempDir t;
    std::ofstream(t.path() / "c.conf") << "[scenario]\nname=c\nF1=uniform\nF2=uniform\ncopula=gaussian(-0.999)\n"
                                          "grid_n=101\nn_max=2\n[output]\ndir=out\n";
    const auto r = invoke({"iterate", (t.path() / "c.conf").string()});
    EXPECT_EQ(r.code, kExitNumerical);
    EXPECT_NE(r.err.find("density floor"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("c.conf"), std::string::npos) << r.err;
}
