// Command-line front end: config parsing, experiment dispatch, report output.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zfl/config.hpp"
#include "zfl/driver.hpp"
#include "zfl/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw zfl::ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral toolkit for the vanishing-filter limit of the "
                 "Camassa-Holm flow toward the inviscid Burgers flow"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir, format, alpha_list, n_list;
    double s_override = -1e300, r_override = -1e300, T_override = -1e300;
    long long seed_override = -1;
    int jobs_override = -1;

    app.add_option("--config", config_path, "config file (INI-style key = value)");
    app.add_option("--out", out_dir, "output directory for reports");
    app.add_option("--jobs", jobs_override, "concurrent sweep rows (0 = auto)");
    app.add_option("--seed", seed_override, "RNG seed for generated data");
    app.add_option("--format", format, "report format: csv | json | both");
    app.add_option("--alpha-list", alpha_list, "comma-separated filter values");
    app.add_option("--n-list", n_list, "comma-separated datum indices");
    app.add_option("--s", s_override, "regularity index");
    app.add_option("--r", r_override, "summation exponent");
    app.add_option("--T", T_override, "time horizon");

    for (const char* name : {"simulate", "theorem1", "theorem2", "decomposition", "expansion",
                             "lemmas", "uniform-bound", "selftest"})
        app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        zfl::Config cfg;
        if (!config_path.empty()) cfg = zfl::parse_config(read_file(config_path));
        // flags win over the config file
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!format.empty()) {
            if (format != "csv" && format != "json" && format != "both")
                throw zfl::ConfigError("--format must be csv | json | both");
            cfg.format = format;
        }
        if (jobs_override >= 0) cfg.jobs = jobs_override;
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
        if (!alpha_list.empty()) cfg.alpha_list = parse_list(alpha_list);
        if (!n_list.empty()) {
            cfg.n_list.clear();
            for (double x : parse_list(n_list)) cfg.n_list.push_back(static_cast<int>(x));
        }
        if (s_override != -1e300) cfg.s = s_override;
        if (r_override != -1e300) cfg.r = r_override;
        if (T_override != -1e300) cfg.T = T_override;

        return zfl::dispatch(command, cfg, std::cout);
    } catch (const zfl::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const zfl::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const zfl::BlowUpError& e) {
        std::cerr << "numerical blow-up: " << e.what() << "\n";
        return 3;
    } catch (const zfl::ShockError& e) {
        std::cerr << "shock monitor: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
