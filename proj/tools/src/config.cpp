#include "lorenz_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lorenz/errors.hpp"

namespace lorenz::cli {

namespace {

std::string where(std::size_t line) { return line ? "line " + std::to_string(line) + ": " : ""; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double parse_number(std::string_view s, std::size_t line) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(line, where(line) + "'" + std::string(s) + "' is not a number");
    return v;
}

std::size_t parse_count(std::string_view s, std::size_t line, const char* key) {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(line, where(line) + key + " must be a nonnegative integer, got '" + std::string(s) + "'");
    return v;
}

// "name(a, b)" -> {"name", {a, b}}; a bare name has no arguments.
struct Call {
    std::string name;
    std::vector<double> args;
};

Call parse_call(std::string_view text, std::size_t line) {
    text = trim(text);
    Call c;
    const auto open = text.find('(');
    if (open == std::string_view::npos) {
        c.name = lower(text);
    } else {
        if (text.back() != ')')
            throw ConfigError(line, where(line) + "missing ')' in '" + std::string(text) + "'");
        c.name = lower(trim(text.substr(0, open)));
        std::string_view inner = text.substr(open + 1, text.size() - open - 2);
        while (true) {
            const auto comma = inner.find(',');
            c.args.push_back(parse_number(inner.substr(0, comma), line));
            if (comma == std::string_view::npos) break;
            inner.remove_prefix(comma + 1);
        }
    }
    if (c.name.empty()) throw ConfigError(line, where(line) + "empty distribution name");
    return c;
}

void expect_args(const Call& c, std::size_t n, std::size_t line) {
    if (c.args.size() != n)
        throw ConfigError(line, where(line) + c.name + " takes " + std::to_string(n) + " parameter(s), got " +
                                    std::to_string(c.args.size()));
}

EmitFlags parse_emit(std::string_view value, std::size_t line) {
    EmitFlags e{false, false, false, false, false, false};
    std::stringstream ss{std::string(value)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string k = lower(trim(item));
        if (k == "marginals") e.marginals = true;
        else if (k == "phi") e.phi = true;
        else if (k == "dependence") e.dependence = true;
        else if (k == "bounds") e.bounds = true;
        else if (k == "classify") e.classify = true;
        else if (k == "trace") e.trace = true;
        else if (k == "all") e = {true, true, true, true, true, true};
        else if (!k.empty())
            throw ConfigError(line, where(line) + "unknown emit flag '" + k +
                                        "' (expected marginals, phi, dependence, bounds, classify, trace, all)");
    }
    return e;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& what) : std::runtime_error(what), line_(line) {}

MarginalSpec parse_marginal(std::string_view text, std::size_t line) {
    const Call c = parse_call(text, line);
    try {
        if (c.name == "uniform" || c.name == "uniform01") {
            expect_args(c, 0, line);
            return MarginalSpec::uniform01();
        }
        if (c.name == "power") {
            expect_args(c, 1, line);
            return MarginalSpec::power(c.args[0]);
        }
        if (c.name == "lognormal") {
            expect_args(c, 2, line);
            return MarginalSpec::lognormal(c.args[0], c.args[1]);
        }
        if (c.name == "beta") {
            expect_args(c, 2, line);
            return MarginalSpec::beta(c.args[0], c.args[1]);
        }
        if (c.name == "gamma") {
            expect_args(c, 2, line);
            return MarginalSpec::gamma(c.args[0], c.args[1]);
        }
        if (c.name == "sinewave") {
            expect_args(c, 2, line);
            const double f = c.args[0];
            if (f != std::floor(f) || f < 1.0 || f > 1e6)
                throw ConfigError(line, where(line) + "sinewave frequency must be a positive integer");
            return MarginalSpec::sinewave(static_cast<int>(f), c.args[1]);
        }
    } catch (const DomainError& e) {
        throw ConfigError(line, where(line) + e.what());
    }
    throw ConfigError(line, where(line) + "unknown marginal family '" + c.name +
                                "' (expected uniform, power, lognormal, beta, gamma, sinewave)");
}

CopulaSpec parse_copula(std::string_view text, std::size_t line) {
    const Call c = parse_call(text, line);
    try {
        if (c.name == "independence" || c.name == "pi") {
            expect_args(c, 0, line);
            return CopulaSpec::independence();
        }
        if (c.name == "m" || c.name == "comonotonic") {
            expect_args(c, 0, line);
            return CopulaSpec::comonotonic();
        }
        if (c.name == "w" || c.name == "countermonotonic") {
            expect_args(c, 0, line);
            return CopulaSpec::countermonotonic();
        }
        if (c.name == "gaussian") {
            expect_args(c, 1, line);
            return CopulaSpec::gaussian(c.args[0]);
        }
        if (c.name == "clayton") {
            expect_args(c, 1, line);
            return CopulaSpec::clayton(c.args[0]);
        }
        if (c.name == "frank") {
            expect_args(c, 1, line);
            return CopulaSpec::frank(c.args[0]);
        }
        if (c.name == "amh") {
            expect_args(c, 1, line);
            return CopulaSpec::amh(c.args[0]);
        }
    } catch (const DomainError& e) {
        throw ConfigError(line, where(line) + e.what());
    }
    throw ConfigError(line, where(line) + "unknown copula '" + c.name +
                                "' (expected independence, gaussian, clayton, frank, amh, M, W)");
}

RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
    static const std::map<std::string, std::set<std::string>> allowed{
        {"scenario", {"name", "F1", "F2", "copula", "grid_n", "n_max"}},
        {"output", {"dir", "emit"}},
    };
    struct Entry {
        std::string value;
        std::size_t line;
    };
    std::map<std::string, Entry> seen;  // "section.key"
    std::set<std::string> sections;
    std::string section;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, where(line_no) + "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!allowed.count(section))
                throw ConfigError(line_no, where(line_no) + "unknown section [" + section + "]");
            if (!sections.insert(section).second)
                throw ConfigError(line_no, where(line_no) + "duplicate section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, where(line_no) + "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (section.empty()) throw ConfigError(line_no, where(line_no) + "key '" + key + "' outside any section");
        if (!allowed.at(section).count(key))
            throw ConfigError(line_no, where(line_no) + "unknown key '" + key + "' in [" + section + "]");
        if (value.empty()) throw ConfigError(line_no, where(line_no) + "empty value for '" + key + "'");
        if (!seen.emplace(section + "." + key, Entry{value, line_no}).second)
            throw ConfigError(line_no, where(line_no) + "duplicate key '" + key + "'");
        if (end == text.size()) break;
    }

    for (const char* k : {"name", "F1", "F2", "copula"})
        if (!seen.count(std::string("scenario.") + k))
            throw ConfigError(0, std::string("missing required key '") + k + "' in [scenario]");

    RunConfig cfg;
    const auto& name = seen.at("scenario.name");
    cfg.name = name.value;
    for (char ch : cfg.name)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.'))
            throw ConfigError(name.line, where(name.line) + "name may only contain letters, digits, '-', '_' and '.'");

    const auto& f1 = seen.at("scenario.F1");
    const auto& f2 = seen.at("scenario.F2");
    const auto& cop = seen.at("scenario.copula");
    cfg.scenario.F1 = parse_marginal(f1.value, f1.line);
    cfg.scenario.F2 = parse_marginal(f2.value, f2.line);
    cfg.scenario.copula = parse_copula(cop.value, cop.line);
    if (cfg.scenario.copula.singular())
        throw ConfigError(cop.line, where(cop.line) + cfg.scenario.copula.to_string() +
                                        " has no density; run `lorenz bounds` for its closed-form dynamics");

    if (auto it = seen.find("scenario.grid_n"); it != seen.end()) {
        cfg.scenario.grid_n = parse_count(it->second.value, it->second.line, "grid_n");
        if (cfg.scenario.grid_n < 51)
            throw ConfigError(it->second.line, where(it->second.line) + "grid_n must be at least 51");
    }
    if (auto it = seen.find("scenario.n_max"); it != seen.end())
        cfg.scenario.n_max = parse_count(it->second.value, it->second.line, "n_max");

    std::filesystem::path dir = std::filesystem::path("lorenz-out") / cfg.name;
    if (auto it = seen.find("output.dir"); it != seen.end()) dir = it->second.value;
    cfg.output_dir = dir.is_absolute() || base_dir.empty() ? dir : base_dir / dir;
    if (auto it = seen.find("output.emit"); it != seen.end())
        cfg.emit = parse_emit(it->second.value, it->second.line);
    return cfg;
}

void prepare_output_dir(const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    const auto probe = cfg.output_dir / ".lorenz-write-check";
    bool ok = !ec;
    if (ok) {
        std::ofstream f(probe);
        ok = static_cast<bool>(f << "");
        f.close();
        ok = ok && std::filesystem::exists(probe);
        std::filesystem::remove(probe, ec);
    }
    if (!ok) throw ConfigError(0, "output directory '" + cfg.output_dir.string() + "' is not writable");
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot read config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    RunConfig cfg = parse_config_text(ss.str(), path.parent_path());
    prepare_output_dir(cfg);
    return cfg;
}

std::optional<std::size_t> grid_override_from_env() {
    const char* v = std::getenv("LORENZ_GRID_N");
    if (!v || !*v) return std::nullopt;
    const std::size_t n = parse_count(v, 0, "LORENZ_GRID_N");
    if (n < 51) throw ConfigError(0, "LORENZ_GRID_N must be at least 51");
    return n;
}

}  // namespace lorenz::cli
