#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lorenz/copulas.hpp"
#include "lorenz/marginals.hpp"
#include "lorenz/state.hpp"

namespace lorenz::cli {

/// Bad configuration or command-line input. line() is 0 when the problem
/// is not tied to a line of a config file.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct EmitFlags {
    bool marginals = true;
    bool phi = true;
    bool dependence = true;
    bool bounds = false;
    bool classify = false;
    bool trace = false;
};

struct RunConfig {
    std::string name;
    ScenarioSpec scenario;
    std::filesystem::path output_dir;
    EmitFlags emit;
};

/// "uniform", "power(2)", "lognormal(0.5, 0.2)", "beta(2,2)", "gamma(2,1)",
/// "sinewave(3, 0.5)". Parameter range errors surface as ConfigError.
MarginalSpec parse_marginal(std::string_view text, std::size_t line = 0);

/// "independence", "gaussian(-0.8)", "clayton(2)", "frank(5)", "amh(0.3)",
/// "M" / "comonotonic", "W" / "countermonotonic".
CopulaSpec parse_copula(std::string_view text, std::size_t line = 0);

/// Parses the sectioned key-value format:
///
///   # comment
///   [scenario]
///   name = tp2-fig6-11
///   F1 = sinewave(3, 0.5)
///   F2 = gamma(2, 1)
///   copula = clayton(2)
///   grid_n = 1001        # optional, default 1001
///   n_max = 20           # optional, default 25
///
///   [output]
///   dir = out/tp2        # optional, default lorenz-out/<name>
///   emit = marginals, phi, dependence, bounds, classify, trace
///
/// Unknown sections or keys, duplicates, missing required keys and invalid
/// values are rejected with the offending line. Relative output paths are
/// resolved against `base_dir`. The output directory is not touched.
RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a file, then creates the output directory and checks
/// that it is writable.
RunConfig parse_config(const std::filesystem::path& path);

/// Creates cfg.output_dir if needed and checks that a file can be written
/// there. Throws ConfigError pointing at the dir line otherwise.
void prepare_output_dir(const RunConfig& cfg);

/// Grid size from LORENZ_GRID_N, if set. Throws ConfigError on a malformed value.
std::optional<std::size_t> grid_override_from_env();

struct Preset {
    std::string_view name;
    std::string_view summary;
    std::string_view text;  ///< config file contents
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

}  // namespace lorenz::cli
