#pragma once

#include <cstdint>
#include <vector>

#include "zigzag/rng.hpp"
#include "zigzag/target_model.hpp"

namespace zigzag {

// Exact draws from a built-in target (Gaussian via Box-Muller, Student-t via
// a normal over a chi-square); throws capability_error for custom targets.
std::vector<double> sample_iid(const TargetModel& target, std::size_t n, RngStream& rng);

struct RwmhChain {
    std::vector<double> samples;
    double step_size = 0.0;
    double acceptance_rate = 0.0;
    std::uint64_t density_evals = 0; // cost unit for this sampler
};

// Random-walk Metropolis with Gaussian proposals N(0, step_size^2).
RwmhChain run_rwmh(const TargetModel& target, double step_size, std::size_t n, double x0,
                   RngStream& rng);

// Bisection on log step size until the pilot acceptance rate is within
// +-0.02 of the target (default 0.44); 10^4-step pilots, at most 20 rounds.
double tune_rwmh(const TargetModel& target, double target_acceptance,
                 std::uint64_t master_seed);

} // namespace zigzag
