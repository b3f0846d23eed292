// gscr command-line driver: bound sweeps, cutoff-rate sweeps, constellation
// shaping runs, oracle fixture regeneration, and the verification suite.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gscr/acceptance.hpp"
#include "gscr/config.hpp"
#include "gscr/experiments.hpp"
#include "gscr/parallel.hpp"

namespace {

gscr::ExperimentConfig load_or_default(const std::string& config_path, const std::string& out,
                                       std::uint64_t seed_flag) {
    gscr::ExperimentConfig cfg =
        config_path.empty() ? gscr::ExperimentConfig{} : gscr::load_config(config_path);
    if (!out.empty()) cfg.output_dir = out;
    if (seed_flag != 0) cfg.seed = seed_flag;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cutoff-rate bounds and constellation shaping under mixed "
                 "Gaussian-impulsive noise"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path, out_dir;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--threads", threads, "worker threads (default: GSCR_THREADS or hardware)");
    app.add_option("--seed", seed, "seed override for shaping runs");

    auto* bounds_cmd = app.add_subcommand("bounds-sweep",
                                          "S-term bound sandwich over the GSNR grid");
    auto* cr_cmd = app.add_subcommand("cr-sweep", "QPSK cutoff-rate bounds vs the exact value");
    auto* shape_cmd =
        app.add_subcommand("shape", "joint shaping with the four baseline comparisons");
    auto* oracle_cmd =
        app.add_subcommand("oracle", "regenerate the oracle fixture table (rel_tol 1e-9)");
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");

    std::string level = "quick";
    std::string fixtures = "data/fixtures/s_integrals.txt";
    verify_cmd->add_option("--level", level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify_cmd->add_option("--fixtures", fixtures, "fixture table path");
    std::string oracle_out = "data/fixtures/s_integrals.txt";
    oracle_cmd->add_option("--out-file", oracle_out, "fixture table destination");

    CLI11_PARSE(app, argc, argv);
    if (threads == 0) threads = gscr::default_thread_count();

    try {
        if (bounds_cmd->parsed()) {
            const auto cfg = load_or_default(config_path, out_dir, seed);
            for (const auto& f : gscr::run_bounds_sweep(cfg, threads))
                std::printf("wrote %s\n", f.c_str());
        } else if (cr_cmd->parsed()) {
            const auto cfg = load_or_default(config_path, out_dir, seed);
            for (const auto& f : gscr::run_cr_sweep(cfg, threads))
                std::printf("wrote %s\n", f.c_str());
        } else if (shape_cmd->parsed()) {
            const auto cfg = load_or_default(config_path, out_dir, seed);
            for (const auto& f : gscr::run_shape_experiment(cfg, threads))
                std::printf("wrote %s\n", f.c_str());
        } else if (oracle_cmd->parsed()) {
            std::printf("wrote %s\n", gscr::regenerate_fixtures(oracle_out).c_str());
        } else if (verify_cmd->parsed()) {
            const auto lvl = (level == "full") ? gscr::AcceptanceLevel::full
                                               : gscr::AcceptanceLevel::quick;
            const auto results = gscr::run_acceptance(lvl, fixtures, threads);
            const bool ok = gscr::print_acceptance_report(results, std::cout);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
