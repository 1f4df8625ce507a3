#pragma once

#include <filesystem>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "zfl/config.hpp"
#include "zfl/constructions.hpp"
#include "zfl/dynamics.hpp"
#include "zfl/experiments.hpp"
#include "zfl/field_io.hpp"
#include "zfl/report.hpp"

namespace zfl {

inline void print_gates(const ExperimentReport& rep, std::ostream& out) {
    for (const auto& g : rep.gates)
        out << "  [" << (g.pass ? "PASS" : "FAIL") << "] " << rep.experiment_id << "/" << g.name
            << ": value = " << format_double(g.value) << ", bounds = ["
            << format_double(g.lo) << ", " << format_double(g.hi) << "]\n";
    for (const auto& f : rep.fits)
        out << "  [fit]  " << rep.experiment_id << "/" << f.name << ": slope = "
            << format_double(f.fit.slope) << " (95% CI " << format_double(f.ci.lo) << " .. "
            << format_double(f.ci.hi) << ", " << f.fit.point_count << " points"
            << (f.fit.dropped_last ? ", outlier dropped" : "") << ")\n";
}

inline void persist_all(const ExperimentReport& rep, const Config& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string base = cfg.out_dir + "/" + rep.experiment_id;
    if (cfg.format == "csv" || cfg.format == "both")
        persist_report(rep, base + ".csv", ReportFormat::csv);
    if (cfg.format == "json" || cfg.format == "both")
        persist_report(rep, base + ".json", ReportFormat::json);
}

inline SpectralField simulate_initial_condition(const Grid& grid, const DyadicPartition& part,
                                                const Config& cfg) {
    if (cfg.ic == "random") return cfg.amplitude * experiment_u0(grid, part, cfg);
    if (cfg.ic == "sine") {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = cfg.amplitude * std::sin(kPi * grid.x(i) / grid.half_length());
        return SpectralField::from_values(grid, std::move(v));
    }
    if (cfg.ic == "profile") return cfg.amplitude * make_profile(grid);
    if (cfg.ic == "datum") {
        const SpectralField profile = make_profile(grid);
        return make_counterexample(grid, cfg.ic_n, cfg.s, cfg.r, profile, part).u0;
    }
    throw ConfigError("simulate: unknown initial condition '" + cfg.ic + "'");
}

inline int run_simulate(const Config& cfg, std::ostream& out) {
    const Grid grid(cfg.L, cfg.N);
    const DyadicPartition part(grid, cfg.dealias);
    const SpectralField u0 = simulate_initial_condition(grid, part, cfg);

    EvolutionSpec spec;
    spec.dealias_rule = cfg.dealias;
    if (cfg.sim_kind == "burgers") {
        spec.kind = EvolutionKind::burgers;
    } else {
        spec.kind = cfg.sim_kind == "ch-transport" ? EvolutionKind::ch_transport
                                                   : EvolutionKind::ch_nonlocal;
        spec.alpha = FilterParam(cfg.alpha);
    }
    StepPolicy policy;
    policy.dt = cfg.dt;
    policy.cfl = cfg.cfl;
    policy.T = sweep_horizon(u0, cfg);
    policy.snapshot_stride = cfg.stride;

    std::filesystem::create_directories(cfg.out_dir);
    ExperimentReport rep;
    rep.experiment_id = "simulate";
    rep.config_echo = config_echo(cfg);
    rep.config_hash = fnv1a_hash(rep.config_echo);
    rep.columns = {"t", "H0", "H_alpha", "max_abs_u"};
    int snap_index = 0;
    const double alpha_for_ledger = cfg.sim_kind == "burgers" ? 0.0 : cfg.alpha;
    integrate(u0, spec, policy, [&](double t, const SpectralField& u) {
        const auto [h0, ha] = conserved_quantities(u, FilterParam(alpha_for_ledger));
        rep.rows.push_back({t, h0, ha, u.max_abs()});
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%04d.zfl", snap_index++);
        write_field_dump(u, alpha_for_ledger, t, cfg.out_dir + "/" + name);
    });
    // final state as CSV for quick inspection
    const FieldDump last = read_field_dump(
        cfg.out_dir + "/" + [&] {
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_%04d.zfl", snap_index - 1);
            return std::string(name);
        }());
    (void)last;
    write_field_csv(SpectralField::from_values(grid, last.values), cfg.out_dir + "/final.csv");
    persist_all(rep, cfg);
    out << "simulate: " << rep.rows.size() << " snapshots, T = "
        << format_double(policy.T) << ", final max|u| = "
        << format_double(rep.rows.back()[3]) << "\n";
    return 0;
}

inline int run_selftest(const Config& cfg, std::ostream& out) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        out << "  [" << (ok ? "PASS" : "FAIL") << "] selftest/" << name << "\n";
        if (!ok) ++failures;
    };

    // transform pair against the quadratic-cost definition
    {
        const Grid grid(cfg.L, 64);
        const SpectralField u = random_band_limited(grid, grid.max_freq(), cfg.seed);
        double worst = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            Complex acc(0.0);
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const double ph = -grid.x(j) * grid.freq(k);
                acc += u.values()[j] * Complex(std::cos(ph), std::sin(ph));
            }
            acc *= grid.dx();
            worst = std::max(worst, std::abs(acc - u.coeffs()[k]));
        }
        check("dft_matches_direct_summation", worst <= 1e-10);
    }
    // partition identities on the dealiased band
    {
        const Grid grid(cfg.L, 1024);
        const DyadicPartition part(grid, cfg.dealias);
        double worst_sum = 0.0, worst_sq_lo = 0.0, worst_sq_hi = 0.0;
        const long long cut = dealias_cut_index(grid, cfg.dealias);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (std::llabs(grid.mode_index(k)) > cut) continue;
            double sum = 0.0, sq = 0.0;
            for (int j = -1; j <= part.j_max(); ++j) {
                const double m = part.multiplier(j)[k];
                sum += m;
                sq += m * m;
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
            worst_sq_lo = std::max(worst_sq_lo, std::max(0.0, 0.5 - sq));
            worst_sq_hi = std::max(worst_sq_hi, std::max(0.0, sq - 1.0));
        }
        check("partition_sum_identity", worst_sum <= 1e-10);
        check("partition_square_bounds", worst_sq_lo <= 1e-10 && worst_sq_hi <= 1e-10);
    }
    // advection-form equivalence on random data
    {
        const Grid grid(cfg.L, 512);
        const double band = 0.5 * dealias_cutoff_freq(grid, cfg.dealias);
        for (int i = 0; i < 5 && failures == 0; ++i) {
            const SpectralField u =
                dealias(random_band_limited(grid, band, cfg.seed + i, 1.0), cfg.dealias);
            const double scale = 1.0 + u.max_abs() * u.max_abs();
            for (double a : {0.0, 0.5, 0.25, 0.125}) {
                const SpectralField d = ch_rhs_nonlocal(u, FilterParam(a), cfg.dealias) -
                                        ch_rhs_transport(u, FilterParam(a), cfg.dealias);
                if (d.max_abs() > 1e-10 * scale) {
                    check("rhs_form_equivalence", false);
                    break;
                }
            }
        }
        if (failures == 0) check("rhs_form_equivalence", true);
    }
    return failures == 0 ? 0 : 1;
}

/** Runs one experiment command end to end: harness, gate printout, report
 *  persistence. Returns the CLI exit code (0 gates pass, 1 gate failure).
 */
inline int dispatch(const std::string& command, const Config& cfg, std::ostream& out) {
    validate_for_experiment(cfg, command);
    if (command == "selftest") return run_selftest(cfg, out);
    if (command == "simulate") return run_simulate(cfg, out);

    ExperimentReport rep;
    if (command == "theorem1") {
        const Grid grid(cfg.L, cfg.N);
        const DyadicPartition part(grid, cfg.dealias);
        const SpectralField u0 = experiment_u0(grid, part, cfg);
        rep = run_theorem1_sweep(u0, BesovParams(cfg.s, cfg.r), cfg.alpha_list, cfg, part);
    } else if (command == "theorem2") {
        rep = run_theorem2_counterexample(cfg.n_list, cfg.s, cfg.r, cfg);
    } else if (command == "decomposition") {
        const Grid grid(cfg.L, cfg.N);
        const DyadicPartition part(grid, cfg.dealias);
        const SpectralField u0 = experiment_u0(grid, part, cfg);
        rep = run_step_decomposition(u0, cfg.cutoff_index, cfg.alpha_list,
                                     BesovParams(cfg.s, cfg.r), cfg, part);
    } else if (command == "expansion") {
        const Grid grid(cfg.L, cfg.N);
        const DyadicPartition part(grid, cfg.dealias);
        const SpectralField u0 = experiment_u0(grid, part, cfg);
        std::vector<double> t_grid = cfg.t_grid;
        if (t_grid.empty())
            for (int i = 0; i < 8; ++i) t_grid.push_back(1e-3 * std::pow(100.0, i / 7.0));
        rep = run_expansion_check(u0, FilterParam(cfg.alpha), BesovParams(cfg.s, cfg.r), t_grid,
                                  cfg, part);
    } else if (command == "lemmas") {
        rep = run_lemma_diagnostics(cfg);
    } else if (command == "uniform-bound") {
        const Grid grid(cfg.L, cfg.N);
        const DyadicPartition part(grid, cfg.dealias);
        const SpectralField u0 = experiment_u0(grid, part, cfg);
        rep = run_uniform_bound_probe(u0, BesovParams(cfg.s, cfg.r), cfg.alpha_list, cfg, part);
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }

    print_gates(rep, out);
    persist_all(rep, cfg);
    out << command << ": " << (rep.all_pass() ? "all gates passed" : "GATE FAILURE") << "\n";
    return rep.all_pass() ? 0 : 1;
}

}  // namespace zfl
