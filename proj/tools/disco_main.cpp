// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Jobs are described by a JSON config file; the
// subcommand picks how it is executed:
//   run       single job, method taken from the config
//   scan      series of jobs over lattice U values or FCIDUMP files
//   fci       exact ground state only (method forced to "fci")
//   replay    re-evaluate a stored ansatz (method forced to "replay")
//   pool-info operator pool summary for a system, no optimisation

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "disco/circuit_cost.hpp"
#include "disco/fcidump.hpp"
#include "disco/pool.hpp"
#include "disco/runner.hpp"

namespace {

using nlohmann::json;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> restarts;
    std::optional<std::size_t> threads;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("config", args.config_path, "JSON job description")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "override optimizer.rng_seed");
    cmd->add_option("--restarts", args.restarts, "override optimizer.restarts");
    cmd->add_option("--threads", args.threads, "override optimizer.threads");
}

json load_with_overrides(const CommonArgs& args) {
    json config = disco::load_config_file(args.config_path);
    if (args.seed) config["optimizer"]["rng_seed"] = *args.seed;
    if (args.restarts) config["optimizer"]["restarts"] = *args.restarts;
    if (args.threads) config["optimizer"]["threads"] = *args.threads;
    return config;
}

void print_result_line(const json& summary) {
    const double energy = summary.at("energy").get<double>();
    std::printf("energy   %+.12f\n", energy);
    if (summary.contains("reference_energy")) {
        std::printf("exact    %+.12f\n", summary["reference_energy"].get<double>());
        std::printf("error    %+.3e\n", summary["error_vs_reference"].get<double>());
    }
    if (summary.contains("certified"))
        std::printf("certified %s\n", summary["certified"].get<bool>() ? "yes" : "no");
    if (summary.contains("cnot_count"))
        std::printf("cnots    %zu\n", summary["cnot_count"].get<std::size_t>());
}

int run_single(const CommonArgs& args, const char* forced_method) {
    json config = load_with_overrides(args);
    if (forced_method) config["method"] = forced_method;
    const json summary = disco::run_job(config, args.out_dir);
    print_result_line(summary);
    std::printf("wrote    %s\n", (std::filesystem::path(args.out_dir) / "summary.json").c_str());
    return 0;
}

int run_scan_cmd(const CommonArgs& args) {
    const json config = load_with_overrides(args);
    const json result = disco::run_scan(config, args.out_dir);
    for (const json& row : result.at("points")) {
        std::printf("%-16s %-7s", row.at("label").get<std::string>().c_str(),
                    row.at("status").get<std::string>().c_str());
        if (row.contains("energy")) std::printf(" %+.12f", row["energy"].get<double>());
        if (row.contains("error_vs_reference"))
            std::printf("  err %+.3e", row["error_vs_reference"].get<double>());
        std::printf("\n");
    }
    if (result.contains("non_parallelity_error"))
        std::printf("non-parallelity error %.3e\n",
                    result["non_parallelity_error"].get<double>());
    const auto failed = result.at("failed_points").get<std::size_t>();
    if (failed > 0) std::printf("%zu point(s) failed\n", failed);
    std::printf("wrote    %s\n", (std::filesystem::path(args.out_dir) / "scan.csv").c_str());
    return failed == 0 ? 0 : 1;
}

int run_pool_info(const std::string& config_path) {
    const json config = disco::load_config_file(config_path);
    int n = 0;
    if (config.contains("system") && config["system"].contains("hubbard")) {
        const json& hub = config["system"]["hubbard"];
        n = hub.value("lx", 1) * hub.value("ly", 1);
    } else if (config.contains("system") && config["system"].contains("fcidump")) {
        const auto data =
            disco::parse_fcidump_file(config["system"]["fcidump"].get<std::string>());
        n = data.n_orbitals - config["system"].value("frozen", 0);
    } else {
        throw std::invalid_argument("config: system: required (fcidump or hubbard)");
    }
    const disco::OperatorPool pool = disco::OperatorPool::build(n);
    const disco::CostModel model;
    std::printf("orbitals     %d\n", n);
    std::printf("pool size    %zu\n", pool.size());
    std::printf("fingerprint  %016llx\n",
                static_cast<unsigned long long>(pool.fingerprint()));
    for (std::size_t k = 0; k < pool.size(); ++k)
        std::printf("%4zu  %-18s %2zu cnots\n", k, disco::to_string(pool.op(k)).c_str(),
                    disco::cnot_count(pool.op(k), model));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-continuous optimisation of unitary product states"};
    app.require_subcommand(1);

    CommonArgs run_args, scan_args, fci_args, replay_args;
    std::string pool_config;

    add_common(app.add_subcommand("run", "execute one job from a config"), run_args);
    add_common(app.add_subcommand("scan", "execute a scan over config points"), scan_args);
    add_common(app.add_subcommand("fci", "exact ground state for the config's system"),
               fci_args);
    add_common(app.add_subcommand("replay", "evaluate a stored ansatz"), replay_args);
    app.add_subcommand("pool-info", "describe the operator pool for a system")
        ->add_option("config", pool_config, "JSON job description")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) return run_single(run_args, nullptr);
        if (app.got_subcommand("scan")) return run_scan_cmd(scan_args);
        if (app.got_subcommand("fci")) return run_single(fci_args, "fci");
        if (app.got_subcommand("replay")) return run_single(replay_args, "replay");
        if (app.got_subcommand("pool-info")) return run_pool_info(pool_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
