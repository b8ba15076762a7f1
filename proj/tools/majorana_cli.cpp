// Command-line front end: loads a JSON run config, dispatches the task,
// and emits CSV artifacts plus a manifest into the output directory.
//
// Exit codes: 0 success, 2 config error, 3 computation error.

#include "majorana/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"dimerized Kitaev-chain toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 0;
    int kgrid = 0;

    auto* runcmd = app.add_subcommand("run", "execute a task described by a JSON config");
    runcmd->add_option("config", config_path, "path to the run config")->required();
    runcmd->add_option("--out", out_dir, "output directory (overrides the config)");
    runcmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    runcmd->add_option("--kgrid", kgrid, "momentum grid size (overrides the config)");

    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = majorana::cli::RunConfig::load(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads > 0) cfg.threads = threads;
        if (kgrid > 0) cfg.kgrid = kgrid;
        const auto outcome = majorana::cli::run(cfg);
        for (const auto& f : outcome.files) std::cout << f << '\n';
        if (!outcome.complete) {
            std::cerr << "scan interrupted; rerun to resume\n";
            return 3;
        }
        return 0;
    } catch (const majorana::cli::config_error& e) {
        std::cerr << "{\"error\":\"config\",\"message\":\"" << e.what() << "\"}\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"computation\",\"message\":\"" << e.what() << "\"}\n";
        return 3;
    }
}
