#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zfl/errors.hpp"
#include "zfl/grid.hpp"
#include "zfl/report.hpp"

namespace zfl {

/** Resolved run configuration. Every field has a default; the file format is
 *  INI-style sections of key = value lines (grammar in the README). Unknown
 *  sections or keys are errors.
 */
struct Config {
    // [grid]
    double L = 32.0 * kPi;
    std::size_t N = 16384;
    // [besov]
    double s = 2.0;
    double r = 2.0;
    // [evolution]
    double dealias = 2.0 / 3.0;
    double cfl = 0.25;
    std::optional<double> dt;
    std::optional<double> T;
    int stride = 10;
    // [experiment]
    std::vector<double> alpha_list = {0.1, 0.05, 0.025, 0.0125, 0.00625};
    std::vector<int> n_list = {4, 5, 6, 7, 8};
    std::vector<double> t_grid;  // empty -> geometric 1e-3..1e-1, 8 points
    std::uint64_t seed = 12345;
    double u0_max_freq = 1.0;
    double u0_decay = 2.0;
    double u0_norm = 1.0;
    double alpha = 0.1;
    int cutoff_index = 1;
    std::optional<double> t0;
    double final_drop = 1e-3;
    // [simulate]
    std::string sim_kind = "ch";  // ch | ch-transport | burgers
    std::string ic = "random";    // random | sine | profile | datum
    int ic_n = 4;
    double amplitude = 1.0;
    // [output]
    std::string out_dir = "reports";
    std::string format = "both";  // csv | json | both
    int jobs = 0;                 // 0 -> hardware concurrency
};

namespace detail {

inline void strip(std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line) + ": not a number: '" + v + "'");
    }
}

inline std::vector<double> parse_number_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        strip(item);
        if (item.empty())
            throw ConfigError("config line " + std::to_string(line) + ": empty list element");
        out.push_back(parse_number(item, line));
    }
    if (out.empty())
        throw ConfigError("config line " + std::to_string(line) + ": empty list");
    return out;
}

}  // namespace detail

/** Parses the config document. Reports syntax errors with line and column,
 *  unknown sections/keys by name, and range violations on the spot.
 */
inline Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        detail::strip(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("config line " + std::to_string(line) + " col " +
                                  std::to_string(raw.find('[') + 1) + ": unterminated section header");
            section = s.substr(1, s.size() - 2);
            detail::strip(section);
            if (section != "grid" && section != "besov" && section != "evolution" &&
                section != "experiment" && section != "simulate" && section != "output")
                throw ConfigError("config line " + std::to_string(line) + ": unknown section [" +
                                  section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line) + " col " +
                              std::to_string(s.size()) + ": expected 'key = value'");
        std::string key = s.substr(0, eq), val = s.substr(eq + 1);
        detail::strip(key);
        detail::strip(val);
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line) + " col 1: missing key");
        if (val.empty())
            throw ConfigError("config line " + std::to_string(line) + ": missing value for '" +
                              key + "'");
        const std::string qual = section + "." + key;

        auto num = [&]() { return detail::parse_number(val, line); };
        if (qual == "grid.L") {
            cfg.L = num();
            if (!(cfg.L > 0)) throw ConfigError("config: grid.L must be positive");
        } else if (qual == "grid.N") {
            const double n = num();
            cfg.N = static_cast<std::size_t>(n);
            if (n != static_cast<double>(cfg.N))
                throw ConfigError("config line " + std::to_string(line) + ": grid.N must be an integer");
        } else if (qual == "besov.s") {
            cfg.s = num();
        } else if (qual == "besov.r") {
            cfg.r = num();
            if (!(cfg.r >= 1.0))
                throw ConfigError("config line " + std::to_string(line) +
                                  ": besov.r must be >= 1 (got " + val + ")");
        } else if (qual == "evolution.dealias") {
            cfg.dealias = num();
            if (!(cfg.dealias > 0.0 && cfg.dealias <= 1.0))
                throw ConfigError("config: evolution.dealias must lie in (0, 1]");
        } else if (qual == "evolution.cfl") {
            cfg.cfl = num();
            if (!(cfg.cfl > 0.0)) throw ConfigError("config: evolution.cfl must be positive");
        } else if (qual == "evolution.dt") {
            cfg.dt = num();
            if (!(*cfg.dt > 0.0)) throw ConfigError("config: evolution.dt must be positive");
        } else if (qual == "evolution.T") {
            cfg.T = num();
            if (!(*cfg.T >= 0.0)) throw ConfigError("config: evolution.T must be >= 0");
        } else if (qual == "evolution.stride") {
            cfg.stride = static_cast<int>(num());
            if (cfg.stride < 1) throw ConfigError("config: evolution.stride must be >= 1");
        } else if (qual == "experiment.alpha_list") {
            cfg.alpha_list = detail::parse_number_list(val, line);
        } else if (qual == "experiment.n_list") {
            cfg.n_list.clear();
            for (double x : detail::parse_number_list(val, line)) {
                if (x != std::floor(x) || x < 1)
                    throw ConfigError("config line " + std::to_string(line) +
                                      ": experiment.n_list entries must be integers >= 1");
                cfg.n_list.push_back(static_cast<int>(x));
            }
        } else if (qual == "experiment.t_grid") {
            cfg.t_grid = detail::parse_number_list(val, line);
        } else if (qual == "experiment.seed") {
            cfg.seed = static_cast<std::uint64_t>(num());
        } else if (qual == "experiment.u0_max_freq") {
            cfg.u0_max_freq = num();
        } else if (qual == "experiment.u0_decay") {
            cfg.u0_decay = num();
        } else if (qual == "experiment.u0_norm") {
            cfg.u0_norm = num();
        } else if (qual == "experiment.alpha") {
            cfg.alpha = num();
        } else if (qual == "experiment.cutoff_index") {
            cfg.cutoff_index = static_cast<int>(num());
        } else if (qual == "experiment.t0") {
            cfg.t0 = num();
        } else if (qual == "experiment.final_drop") {
            cfg.final_drop = num();
        } else if (qual == "simulate.kind") {
            if (val != "ch" && val != "ch-transport" && val != "burgers")
                throw ConfigError("config line " + std::to_string(line) +
                                  ": simulate.kind must be ch | ch-transport | burgers");
            cfg.sim_kind = val;
        } else if (qual == "simulate.ic") {
            if (val != "random" && val != "sine" && val != "profile" && val != "datum")
                throw ConfigError("config line " + std::to_string(line) +
                                  ": simulate.ic must be random | sine | profile | datum");
            cfg.ic = val;
        } else if (qual == "simulate.ic_n") {
            cfg.ic_n = static_cast<int>(num());
        } else if (qual == "simulate.amplitude") {
            cfg.amplitude = num();
        } else if (qual == "simulate.alpha") {
            cfg.alpha = num();
        } else if (qual == "output.dir") {
            cfg.out_dir = val;
        } else if (qual == "output.format") {
            if (val != "csv" && val != "json" && val != "both")
                throw ConfigError("config line " + std::to_string(line) +
                                  ": output.format must be csv | json | both");
            cfg.format = val;
        } else if (qual == "output.jobs") {
            cfg.jobs = static_cast<int>(num());
            if (cfg.jobs < 0) throw ConfigError("config: output.jobs must be >= 0");
        } else {
            throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key +
                              "' in section [" + (section.empty() ? "<none>" : section) + "]");
        }
    }
    return cfg;
}

/// Theorem-level experiments inherit the well-posedness hypotheses.
inline void validate_for_experiment(const Config& cfg, const std::string& command) {
    const bool theorem_level = command == "theorem1" || command == "theorem2" ||
                               command == "decomposition" || command == "expansion" ||
                               command == "uniform-bound";
    if (theorem_level) {
        if (!(cfg.s > 1.5))
            throw ConfigError("experiment '" + command + "' requires the regularity index s > 3/2, got " +
                              format_double(cfg.s));
        if (std::isinf(cfg.r))
            throw ConfigError("experiment '" + command + "' requires a finite summation exponent r");
    }
    if (command == "theorem1" || command == "decomposition" || command == "uniform-bound") {
        for (std::size_t i = 1; i < cfg.alpha_list.size(); ++i)
            if (!(cfg.alpha_list[i] < cfg.alpha_list[i - 1]))
                throw ConfigError("experiment '" + command + "': alpha_list must be strictly decreasing");
        for (double a : cfg.alpha_list)
            if (!(a > 0.0 && a < 1.0))
                throw ConfigError("experiment '" + command + "': every alpha must lie in (0, 1)");
    }
}

/// Canonical full-precision echo of the resolved configuration.
inline std::string config_echo(const Config& cfg) {
    std::ostringstream o;
    o << "[grid]\n";
    o << "L = " << format_double(cfg.L) << "\n";
    o << "N = " << cfg.N << "\n";
    o << "[besov]\n";
    o << "s = " << format_double(cfg.s) << "\n";
    o << "r = " << format_double(cfg.r) << "\n";
    o << "[evolution]\n";
    o << "dealias = " << format_double(cfg.dealias) << "\n";
    o << "cfl = " << format_double(cfg.cfl) << "\n";
    if (cfg.dt) o << "dt = " << format_double(*cfg.dt) << "\n";
    if (cfg.T) o << "T = " << format_double(*cfg.T) << "\n";
    o << "stride = " << cfg.stride << "\n";
    o << "[experiment]\n";
    o << "alpha_list = ";
    for (std::size_t i = 0; i < cfg.alpha_list.size(); ++i)
        o << (i ? ", " : "") << format_double(cfg.alpha_list[i]);
    o << "\n";
    o << "n_list = ";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) o << (i ? ", " : "") << cfg.n_list[i];
    o << "\n";
    if (!cfg.t_grid.empty()) {
        o << "t_grid = ";
        for (std::size_t i = 0; i < cfg.t_grid.size(); ++i)
            o << (i ? ", " : "") << format_double(cfg.t_grid[i]);
        o << "\n";
    }
    o << "seed = " << cfg.seed << "\n";
    o << "u0_max_freq = " << format_double(cfg.u0_max_freq) << "\n";
    o << "u0_decay = " << format_double(cfg.u0_decay) << "\n";
    o << "u0_norm = " << format_double(cfg.u0_norm) << "\n";
    o << "alpha = " << format_double(cfg.alpha) << "\n";
    o << "cutoff_index = " << cfg.cutoff_index << "\n";
    if (cfg.t0) o << "t0 = " << format_double(*cfg.t0) << "\n";
    o << "final_drop = " << format_double(cfg.final_drop) << "\n";
    o << "[simulate]\n";
    o << "kind = " << cfg.sim_kind << "\n";
    o << "ic = " << cfg.ic << "\n";
    o << "ic_n = " << cfg.ic_n << "\n";
    o << "amplitude = " << format_double(cfg.amplitude) << "\n";
    o << "[output]\n";
    o << "dir = " << cfg.out_dir << "\n";
    o << "format = " << cfg.format << "\n";
    o << "jobs = " << cfg.jobs << "\n";
    return o.str();
}

}  // namespace zfl
