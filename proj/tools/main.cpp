#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bnc/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Batched network coding: recoding, interleaving and line-network simulation"};
    app.require_subcommand(1);

    bnc::cli::SimulateOptions simulate;
    std::uint64_t seed_flag = 0;
    long long blocks_flag = 0;
    int threads_flag = 0;
    std::string out_flag;
    auto* sim = app.add_subcommand("simulate", "Run the multi-hop Monte-Carlo experiment");
    sim->add_option("config", simulate.config_path, "Experiment config file")->required();
    auto* sim_seed = sim->add_option("--seed", seed_flag, "Master RNG seed (overrides config)");
    auto* sim_blocks = sim->add_option("--blocks", blocks_flag, "Block count (overrides config)");
    auto* sim_out = sim->add_option("--out", out_flag, "Output CSV path, '-' for stdout");
    auto* sim_threads = sim->add_option("--threads", threads_flag, "Worker threads (0 = auto)");

    bnc::cli::DispersionOptions dispersion;
    auto* disp = app.add_subcommand("dispersion", "Score interleavers for a packet-count vector");
    disp->add_option("--t", dispersion.t, "Per-batch packet counts, e.g. --t 6,5,4,3,3,2,2,2")
        ->required()
        ->delimiter(',');
    disp->add_option("--objective", dispersion.objectives,
                     "Objectives (default: all eight), e.g. allpairs:-pe1 neighb:ln");
    disp->add_option("--cap", dispersion.cap, "Exhaustive-search sequence cap");
    disp->add_option("--seed", dispersion.seed, "Simulated annealing seed");

    bnc::cli::FitOptions fit;
    auto* fit_cmd = app.add_subcommand("fit", "Solve (p, q) from loss rate and mean burst length");
    fit_cmd->add_option("--epsilon", fit.epsilon, "Average loss rate (decimal or a/b)")->required();
    fit_cmd->add_option("--abel", fit.abel, "Average burst error length (decimal or a/b)")->required();
    fit_cmd->add_option("--g", fit.g, "Good-state loss probability")->required();
    fit_cmd->add_option("--b", fit.b, "Bad-state loss probability")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? bnc::cli::kExitOk : bnc::cli::kExitUsage;
    }

    if (sim->parsed()) {
        if (*sim_seed) simulate.seed = seed_flag;
        if (*sim_blocks) simulate.blocks = blocks_flag;
        if (*sim_out) simulate.out = out_flag;
        if (*sim_threads) simulate.threads = threads_flag;
        return bnc::cli::cmd_simulate(simulate, std::cout, std::cerr);
    }
    if (disp->parsed()) {
        return bnc::cli::cmd_dispersion(dispersion, std::cout, std::cerr);
    }
    return bnc::cli::cmd_fit(fit, std::cout, std::cerr);
}
