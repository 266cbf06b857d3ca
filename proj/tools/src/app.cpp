#include "lorenz_cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lorenz/bounds.hpp"
#include "lorenz/engine.hpp"
#include "lorenz/errors.hpp"
#include "lorenz_cli/config.hpp"
#include "lorenz_cli/report.hpp"

namespace lorenz::cli {

namespace {

template <class Writer>
void emit(const std::filesystem::path& path, Writer&& w) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(0, "cannot open '" + path.string() + "' for writing");
    w(f);
    f.flush();
    if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

RunConfig load(const std::string& target, const std::string& out_override) {
    RunConfig cfg;
    if (std::filesystem::is_regular_file(target)) {
        std::ifstream in(target);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config_text(ss.str(), std::filesystem::path(target).parent_path());
    } else if (const Preset* p = find_preset(target)) {
        cfg = parse_config_text(p->text);
    } else {
        throw ConfigError(0, "'" + target + "' is neither a config file nor a preset (see `lorenz presets list`)");
    }
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (auto n = grid_override_from_env()) cfg.scenario.grid_n = *n;
    prepare_output_dir(cfg);
    return cfg;
}

std::size_t grid_for(std::size_t fallback) {
    if (auto n = grid_override_from_env()) return *n;
    return fallback;
}

}  // namespace

void run_scenario(const RunConfig& cfg) {
    const IterationResult res = iterate(cfg.scenario);
    const auto& dir = cfg.output_dir;
    const std::span<const LorenzState> states(res.states);
    if (cfg.emit.marginals) emit(dir / "marginals.csv", [&](std::ostream& o) { write_marginals(o, states); });
    if (cfg.emit.dependence) emit(dir / "dependence.csv", [&](std::ostream& o) { write_dependence(o, res.trace); });
    if (cfg.emit.phi) emit(dir / "phi.csv", [&](std::ostream& o) { write_phi(o, res.trace); });
    if (cfg.emit.classify) emit(dir / "classify.csv", [&](std::ostream& o) { write_classify(o, states); });
    if (cfg.emit.trace) emit(dir / "trace.csv", [&](std::ostream& o) { write_trace(o, res.trace, states); });
    if (cfg.emit.bounds) {
        const auto [upper, lower] =
            frechet_envelope(cfg.scenario.F1, cfg.scenario.F2, cfg.scenario.n_max, cfg.scenario.grid_n);
        emit(dir / "bounds.csv", [&](std::ostream& o) { write_bounds(o, upper, lower); });
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bivariate Lorenz curve iteration", "lorenz"};
    app.require_subcommand(1);

    std::string target, out_dir;
    auto* iter = app.add_subcommand("iterate", "Run a scenario from a config file or preset name");
    iter->add_option("config", target, "Config file or preset name")->required();
    iter->add_option("-o,--out", out_dir, "Override the output directory");

    std::string side, seed = "uniform", seed2;
    std::size_t steps = 10, bound_grid = 1001;
    auto* bounds = app.add_subcommand("bounds", "Marginal dynamics under the comonotonic or countermonotonic copula");
    bounds->add_option("side", side, "upper or lower")->required()->check(CLI::IsMember({"upper", "lower"}));
    bounds->add_option("--seed", seed, "First marginal, e.g. uniform or beta(2,2)");
    bounds->add_option("--seed2", seed2, "Second marginal (defaults to --seed)");
    bounds->add_option("--n", steps, "Number of iterations");
    bounds->add_option("--grid", bound_grid, "Grid size")->check(CLI::Range(51, 1000001));

    std::string copula_text;
    std::size_t classify_grid = 1001;
    auto* classify = app.add_subcommand("classify", "TP2 / RR2 and log-concavity of a copula family");
    classify->add_option("copula", copula_text, "e.g. clayton(2), gaussian(-0.8), M")->required();
    classify->add_option("--grid", classify_grid, "Grid size")->check(CLI::Range(51, 100001));

    auto* presets_cmd = app.add_subcommand("presets", "Built-in scenarios");
    presets_cmd->require_subcommand(1);
    auto* list = presets_cmd->add_subcommand("list", "Names and summaries");
    std::string show_name;
    auto* show = presets_cmd->add_subcommand("show", "Print a preset's config");
    show->add_option("name", show_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const std::string context = iter->parsed() ? "scenario '" + target + "': " : std::string();
    try {
        if (iter->parsed()) {
            const RunConfig cfg = load(target, out_dir);
            run_scenario(cfg);
            out << "wrote " << cfg.output_dir.string() << '\n';
        } else if (bounds->parsed()) {
            const MarginalSpec F1 = parse_marginal(seed);
            const MarginalSpec F2 = seed2.empty() ? F1 : parse_marginal(seed2);
            const auto [upper, lower] = frechet_envelope(F1, F2, steps, grid_for(bound_grid));
            if (side == "upper") write_upper_summary(out, upper);
            else write_lower_summary(out, lower);
        } else if (classify->parsed()) {
            write_copula_row(out, parse_copula(copula_text), grid_for(classify_grid));
        } else if (list->parsed()) {
            for (const auto& p : presets()) out << p.name << '\t' << p.summary << '\n';
        } else if (show->parsed()) {
            const Preset* p = find_preset(show_name);
            if (!p) throw ConfigError(0, "unknown preset '" + show_name + "'");
            out << p->text;
        }
    } catch (const ConfigError& e) {
        err << "error: " << context << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "error: " << context << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "numerical failure: " << context << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << context << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

}  // namespace lorenz::cli
