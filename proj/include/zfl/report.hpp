#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zfl/errors.hpp"
#include "zfl/rates.hpp"

namespace zfl {

inline constexpr const char* kBuildId = "zfl-toolkit 1.0.0";

/// One asserted bound with its measured value; value must lie in [lo, hi].
struct GateResult {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;
};

inline GateResult make_gate(const std::string& name, double value, double lo, double hi) {
    return GateResult{name, value, lo, hi, value >= lo && value <= hi};
}

struct NamedFit {
    std::string name;
    RateFit fit;
    SlopeInterval ci;
};

/** Tabular record of one experiment: parameter rows, fitted exponents with
 *  bootstrap intervals, and the asserted gates. The config echo reproduces
 *  the run; timestamps stay empty by default so report files are
 *  byte-identical across reruns of the same build and config.
 */
struct ExperimentReport {
    std::string experiment_id;
    std::string config_echo;
    std::uint64_t config_hash = 0;
    std::string build_id = kBuildId;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<NamedFit> fits;
    std::vector<GateResult> gates;
    std::string timestamps;  // optional wall-clock note; off by default

    bool all_pass() const {
        for (const auto& g : gates)
            if (!g.pass) return false;
        return true;
    }
};

inline std::uint64_t fnv1a_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Shortest-round-trip float formatting (17 significant digits).
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string report_to_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    for (std::size_t i = 0; i < rep.columns.size(); ++i) {
        if (i) out << ',';
        out << rep.columns[i];
    }
    out << '\n';
    for (const auto& row : rep.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

inline nlohmann::json report_to_json(const ExperimentReport& rep) {
    nlohmann::json j;
    j["experiment_id"] = rep.experiment_id;
    j["build_id"] = rep.build_id;
    j["config_echo"] = rep.config_echo;
    j["config_hash"] = rep.config_hash;
    j["columns"] = rep.columns;
    j["rows"] = rep.rows;
    j["fits"] = nlohmann::json::array();
    for (const auto& f : rep.fits) {
        j["fits"].push_back({{"name", f.name},
                             {"slope", f.fit.slope},
                             {"intercept", f.fit.intercept},
                             {"residual_rms", f.fit.residual_rms},
                             {"point_count", f.fit.point_count},
                             {"dropped_last", f.fit.dropped_last},
                             {"ci95", {f.ci.lo, f.ci.hi}}});
    }
    j["gates"] = nlohmann::json::array();
    for (const auto& g : rep.gates)
        j["gates"].push_back(
            {{"name", g.name}, {"value", g.value}, {"lo", g.lo}, {"hi", g.hi}, {"pass", g.pass}});
    if (rep.timestamps.empty())
        j["timestamps"] = nullptr;
    else
        j["timestamps"] = rep.timestamps;
    return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    ExperimentReport rep;
    rep.experiment_id = j.at("experiment_id").get<std::string>();
    rep.build_id = j.at("build_id").get<std::string>();
    rep.config_echo = j.at("config_echo").get<std::string>();
    rep.config_hash = j.at("config_hash").get<std::uint64_t>();
    rep.columns = j.at("columns").get<std::vector<std::string>>();
    rep.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    for (const auto& f : j.at("fits")) {
        NamedFit nf;
        nf.name = f.at("name").get<std::string>();
        nf.fit.slope = f.at("slope").get<double>();
        nf.fit.intercept = f.at("intercept").get<double>();
        nf.fit.residual_rms = f.at("residual_rms").get<double>();
        nf.fit.point_count = f.at("point_count").get<int>();
        nf.fit.dropped_last = f.at("dropped_last").get<bool>();
        nf.ci.lo = f.at("ci95")[0].get<double>();
        nf.ci.hi = f.at("ci95")[1].get<double>();
        rep.fits.push_back(nf);
    }
    for (const auto& g : j.at("gates")) {
        GateResult gr;
        gr.name = g.at("name").get<std::string>();
        gr.value = g.at("value").get<double>();
        gr.lo = g.at("lo").get<double>();
        gr.hi = g.at("hi").get<double>();
        gr.pass = g.at("pass").get<bool>();
        rep.gates.push_back(gr);
    }
    if (!j.at("timestamps").is_null()) rep.timestamps = j.at("timestamps").get<std::string>();
    return rep;
}

inline bool operator==(const RateFit& a, const RateFit& b) {
    return a.slope == b.slope && a.intercept == b.intercept &&
           a.residual_rms == b.residual_rms && a.point_count == b.point_count &&
           a.dropped_last == b.dropped_last;
}

inline bool operator==(const ExperimentReport& a, const ExperimentReport& b) {
    if (a.experiment_id != b.experiment_id || a.config_echo != b.config_echo ||
        a.config_hash != b.config_hash || a.build_id != b.build_id || a.columns != b.columns ||
        a.rows != b.rows || a.timestamps != b.timestamps ||
        a.fits.size() != b.fits.size() || a.gates.size() != b.gates.size())
        return false;
    for (std::size_t i = 0; i < a.fits.size(); ++i) {
        if (a.fits[i].name != b.fits[i].name || !(a.fits[i].fit == b.fits[i].fit) ||
            a.fits[i].ci.lo != b.fits[i].ci.lo || a.fits[i].ci.hi != b.fits[i].ci.hi)
            return false;
    }
    for (std::size_t i = 0; i < a.gates.size(); ++i) {
        const auto& x = a.gates[i];
        const auto& y = b.gates[i];
        if (x.name != y.name || x.value != y.value || x.lo != y.lo || x.hi != y.hi ||
            x.pass != y.pass)
            return false;
    }
    return true;
}

enum class ReportFormat { csv, json };

inline void persist_report(const ExperimentReport& rep, const std::string& path,
                           ReportFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open report file for writing: " + path);
    if (format == ReportFormat::csv)
        out << report_to_csv(rep);
    else
        out << report_to_json(rep).dump(2) << '\n';
    if (!out) throw IoError("failed while writing report file: " + path);
}

inline ExperimentReport load_report_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open report file for reading: " + path);
    nlohmann::json j;
    in >> j;
    return report_from_json(j);
}

}  // namespace zfl
