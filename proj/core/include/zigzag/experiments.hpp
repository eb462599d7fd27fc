#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zigzag {

struct ExperimentConfig {
    std::string experiment;
    std::string target = "gaussian"; // gaussian | student_t
    double nu = 1.0;
    std::string gamma = "none"; // none | const:<c> | quadratic:<a>
    std::uint64_t replicates = 10000;
    double horizon = 1000.0;
    std::uint64_t master_seed = 20170904;
    std::string output_dir = "out";
    unsigned threads = 0; // 0: ZIGZAG_THREADS env var, else hardware count
};

// Flat key=value file with '#' comments; unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);

// Same keys as the config file, applied as command-line overrides.
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

const std::vector<std::string>& known_experiments();

unsigned resolve_threads(unsigned requested);

// Runs the named experiment, writing its CSV artifacts plus manifest.txt
// into output_dir. The manifest is written even when the run fails.
void run_experiment(const ExperimentConfig& config);

} // namespace zigzag
