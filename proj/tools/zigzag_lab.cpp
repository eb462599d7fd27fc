#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zigzag/acceptance.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/experiments.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
    zigzag::ExperimentConfig config;
    try {
        if (!config_path.empty()) config = zigzag::load_config(config_path);
        for (std::size_t i = 0; i + 1 < overrides.size(); i += 2) {
            std::string key = overrides[i];
            if (key.rfind("--", 0) == 0) key = key.substr(2);
            zigzag::apply_override(config, key, overrides[i + 1]);
        }
        if (overrides.size() % 2 != 0) {
            std::cerr << "error: overrides must come in --key value pairs\n";
            return 2;
        }
        if (config.experiment.empty()) {
            std::cerr << "error: no experiment selected (set experiment=<name>)\n";
            return 2;
        }
        zigzag::run_experiment(config);
    } catch (const zigzag::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    std::cout << "wrote " << config.output_dir << "/manifest.txt\n";
    return 0;
}

int cmd_verify(const std::string& profile, unsigned threads, std::uint64_t seed) {
    if (profile != "quick" && profile != "full") {
        std::cerr << "usage error: profile must be quick or full\n";
        return 2;
    }
    zigzag::AcceptanceOptions options;
    options.quick = profile == "quick";
    options.threads = threads;
    options.master_seed = seed;
    const auto results = zigzag::run_all_acceptance(options, std::cout);
    for (const auto& r : results) {
        if (!r.pass) return 1;
    }
    return 0;
}

int cmd_list() {
    for (const auto& name : zigzag::known_experiments()) {
        std::cout << name << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zigzag-lab: one-dimensional zig-zag sampler experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    CLI::App* run = app.add_subcommand("run", "run a named experiment");
    run->add_option("--config", config_path, "key=value config file");
    run->allow_extras(); // --key value overrides, forwarded verbatim

    std::string profile = "full";
    unsigned threads = 0;
    std::uint64_t seed = 20170904;
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--profile", profile, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--threads", threads, "worker threads (0 = auto)");
    verify->add_option("--seed", seed, "master seed");

    CLI::App* list = app.add_subcommand("list", "list experiment names");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, run->remaining());
    if (verify->parsed()) return cmd_verify(profile, threads, seed);
    if (list->parsed()) return cmd_list();
    return 2;
}
