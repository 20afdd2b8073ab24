// Command-line front end: configure a scenario, run the evolution with CSV
// diagnostics and binary snapshots, and drive the estimates lab
// (product-rule checks, null-symbol bound sampling, bilinear norm probes,
// time-step convergence ladders).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mkg/dynamics.hpp"
#include "mkg/null_symbols.hpp"
#include "mkg/observables.hpp"
#include "mkg/product_rules.hpp"
#include "mkg/scenario.hpp"
#include "mkg/snapshot.hpp"
#include "mkg/wave_sobolev.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitConstraint = 4;

int cmd_run(const std::string& config_path, std::uint64_t seed_override, bool has_seed,
            bool quiet) {
    mkg::ScenarioConfig cfg = mkg::parse_config_file(config_path);
    if (has_seed) cfg.seed = seed_override;

    mkg::GridPtr grid = mkg::make_grid(cfg.n, cfg.L);
    mkg::HalfWaveState state = mkg::initial_state(cfg, grid);

    std::ofstream csv;
    if (!cfg.csv_path.empty()) {
        csv.open(cfg.csv_path);
        if (!csv) throw mkg::ConfigError("cannot open CSV output '" + cfg.csv_path + "'");
        csv << mkg::csv_header() << "\n";
    }

    long snap_counter = 0;
    long cb_calls = 0;
    auto callback = [&](const mkg::HalfWaveState& s) {
        const mkg::DiagnosticsRecord r = mkg::constraint_residuals(s);
        if (csv.is_open()) csv << mkg::csv_row(r) << "\n";
        if (!quiet)
            std::printf("t=%-10.6g energy=%.12g lorenz=%.3e gauss=%.3e\n", r.t, r.energy,
                        r.lorenz_res, r.gauss_res);
        if (cfg.snapshot_cadence > 0 && !cfg.snapshot_path.empty() &&
            cb_calls % cfg.snapshot_cadence == 0 && s.t > state.t) {
            std::ostringstream name;
            name << cfg.snapshot_path << "." << snap_counter++;
            mkg::write_snapshot(s, name.str());
        }
        ++cb_calls;
    };

    mkg::EvolveResult res =
        mkg::evolve(state, cfg.T, cfg.integrator(), callback, cfg.cadence, cfg.regauge_at);
    if (!cfg.snapshot_path.empty()) mkg::write_snapshot(res.state, cfg.snapshot_path);
    if (csv.is_open() && !csv) throw mkg::ConfigError("short write to CSV output");
    return 0;
}

int cmd_check_products(const std::string& fixtures) {
    std::ifstream in(fixtures);
    if (!in) throw mkg::ConfigError("cannot open fixture file '" + fixtures + "'");
    const auto ms = mkg::parse_matrix_file(in);
    int rejected = 0;
    for (const auto& M : ms) {
        const mkg::CheckReport r = mkg::is_product(M);
        const char* verdict = r.verdict == mkg::Verdict::Product
                                  ? "product"
                                  : (r.verdict == mkg::Verdict::Rejected ? "rejected"
                                                                         : "out_of_scope");
        std::printf("%-14s %s", verdict, mkg::to_string(M).c_str());
        if (r.verdict == mkg::Verdict::Rejected) {
            std::printf("   failed: %s", r.failed_ids().c_str());
            ++rejected;
        }
        if (r.verdict == mkg::Verdict::OutOfScope) ++rejected;
        std::printf("\n");
    }
    std::printf("%zu matrices, %d not accepted\n", ms.size(), rejected);
    return rejected == 0 ? 0 : 1;
}

int cmd_check_symbols(double m, long long count, std::uint64_t seed) {
    const mkg::BoundCheckReport r = mkg::check_symbol_bounds(m, count, seed);
    std::printf("null-symbol bounds, m = %g, %lld samples/sign pair, seed %llu\n", m, count,
                (unsigned long long)seed);
    std::printf("  %s\n", r.summary().c_str());
    const mkg::AngleProbeReport a = mkg::angle_probe_experiment(m, count / 10 + 1, seed, 0.25);
    std::printf("  angle probe (s = 1/4): max ratio %.6g over %lld samples (empirical)\n",
                a.max_ratio, (long long)a.samples);
    return r.violations == 0 ? 0 : 1;
}

int cmd_probe(const std::string& matrix, long long trials, const std::vector<int>& sizes,
              std::uint64_t seed, const std::string& archive) {
    const mkg::ExponentMatrix M = mkg::parse_matrix_line(matrix);
    const mkg::BilinearProbeReport rep = mkg::bilinear_probe(M, trials, sizes, seed);
    std::printf("%s\n", rep.summary().c_str());
    if (!archive.empty()) {
        std::ofstream out(archive);
        out << rep.summary() << "\n";
    }
    return 0;
}

int cmd_convergence(const std::string& config_path, int levels, bool quiet) {
    mkg::ScenarioConfig cfg = mkg::parse_config_file(config_path);
    mkg::GridPtr grid = mkg::make_grid(cfg.n, cfg.L);
    const mkg::HalfWaveState s0 = mkg::initial_state(cfg, grid);

    const double e0 = mkg::energy(s0);
    std::vector<mkg::HalfWaveState> finals;
    std::vector<double> drifts, lorenz;
    double dt = cfg.dt;
    for (int l = 0; l < levels; ++l, dt *= 0.5) {
        mkg::IntegratorConfig ic = cfg.integrator();
        ic.dt = dt;
        const mkg::HalfWaveState fin = mkg::evolve(s0, cfg.T, ic).state;
        const mkg::DiagnosticsRecord r = mkg::constraint_residuals(fin);
        drifts.push_back(std::abs(r.energy - e0) / std::max(1e-300, e0));
        lorenz.push_back(r.lorenz_res);
        finals.push_back(fin);
        if (!quiet)
            std::printf("dt=%-10.4g drift=%.6e lorenz=%.6e\n", dt, drifts.back(), lorenz.back());
    }
    for (int l = 0; l + 1 < levels; ++l) {
        const double ord_e = std::log2(drifts[l] / drifts[l + 1]);
        const double ord_l = std::log2(lorenz[l] / lorenz[l + 1]);
        std::printf("level %d->%d: energy-drift order %.2f, gauge-residual order %.2f\n", l,
                    l + 1, ord_e, ord_l);
    }
    for (std::size_t l = 0; l + 1 < finals.size(); ++l) {
        const mkg::FieldTuple a = mkg::reconstruct(finals[l]);
        const mkg::FieldTuple b = mkg::reconstruct(finals[l + 1]);
        const double d = mkg::l2_norm(a.phi - b.phi);
        std::printf("|phi(dt/%d) - phi(dt/%d)| = %.6e\n", 1 << l, 1 << (l + 1), d);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral evolution of a gauged scalar field on a periodic box"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress progress output");

    std::string config_path;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "evolve a configured scenario");
    run->add_option("--config", config_path, "config file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override config seed");

    std::string fixtures;
    auto* cp = app.add_subcommand("check-products", "verdicts for an exponent-matrix fixture file");
    cp->add_option("--fixtures", fixtures, "fixture file")->required();

    double sym_m = 1.0;
    long long sym_count = 1000000;
    std::uint64_t sym_seed = 42;
    auto* cs = app.add_subcommand("check-symbols", "sample the null-symbol bounds");
    cs->add_option("--m", sym_m, "mass");
    cs->add_option("--count", sym_count, "samples per sign pair");
    cs->add_option("--seed", sym_seed, "rng seed");

    std::string matrix = "0 99/100 1 0 99/100 51/100";
    long long trials = 100;
    std::vector<int> sizes = {8, 12, 16};
    std::uint64_t probe_seed = 1;
    std::string archive;
    auto* pb = app.add_subcommand("probe", "empirical bilinear-estimate ratios");
    pb->add_option("--matrix", matrix, "six rationals: s0 s1 s2 b0 b1 b2");
    pb->add_option("--trials", trials, "trials per grid size");
    pb->add_option("--sizes", sizes, "grid sizes");
    pb->add_option("--seed", probe_seed, "rng seed");
    pb->add_option("--archive", archive, "write the report to this file");

    std::string conv_config;
    int levels = 3;
    auto* cv = app.add_subcommand("convergence", "time-step halving ladder");
    cv->add_option("--config", conv_config, "config file")->required();
    cv->add_option("--levels", levels, "number of halvings + 1");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, seed, seed_opt->count() > 0, quiet);
        if (cp->parsed()) return cmd_check_products(fixtures);
        if (cs->parsed()) return cmd_check_symbols(sym_m, sym_count, sym_seed);
        if (pb->parsed()) return cmd_probe(matrix, trials, sizes, probe_seed, archive);
        if (cv->parsed()) return cmd_convergence(conv_config, levels, quiet);
    } catch (const mkg::ConstraintError& e) {
        std::cerr << "constraint error: " << e.what() << "\n";
        return kExitConstraint;
    } catch (const mkg::BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const mkg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
