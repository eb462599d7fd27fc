#pragma once

#include <cstdint>
#include <vector>

#include "zigzag/rng.hpp"
#include "zigzag/simulate.hpp"
#include "zigzag/target_model.hpp"

namespace zigzag {

// Ito limit of the zig-zag process with excess rate gamma/epsilon on the
// accelerated clock: drift -(U'/gamma + gamma'/gamma^2)/2, diffusion
// sqrt(1/gamma).
struct SdeModel {
    std::function<double(double)> drift;
    std::function<double(double)> diffusion;
    std::function<double(double)> gamma_value;
    bool derivative_from_finite_difference = false;
};

SdeModel make_limiting_sde(const TargetModel& target, const ExcessRate& gamma);

// Euler-Maruyama terminal value xi(t_end).
double simulate_sde_em(const SdeModel& model, double t_end, double x0, double step,
                       RngStream& rng);

// Euler-Maruyama positions at the requested ascending times.
std::vector<double> simulate_sde_em_positions(const SdeModel& model,
                                              const std::vector<double>& times,
                                              double x0, double step, RngStream& rng);

// Terminal position X^eps(t_end / eps) of the zig-zag process with switching
// rate lambda0 + gamma/eps, thinned against the affine canonical bound plus
// a windowed excess sup.
double simulate_scaled_zigzag(const TargetModel& target, const ExcessRate& gamma,
                              double epsilon, double t_end, double x0,
                              Direction theta0, RngStream& rng);

struct ComparisonReport {
    std::vector<double> epsilons;
    std::vector<double> times;
    // ks[e][t]: two-sample KS between X^eps(t/eps) and xi(t)
    std::vector<std::vector<double>> ks;
    // retained samples for histogram output: zigzag[e][t][path], sde[t][path]
    std::vector<std::vector<std::vector<double>>> zigzag_samples;
    std::vector<std::vector<double>> sde_samples;
    std::size_t paths = 0;
    double em_step = 0.0;
};

ComparisonReport compare_distributions(const TargetModel& target, const ExcessRate& gamma,
                                       const std::vector<double>& epsilons,
                                       const std::vector<double>& times,
                                       std::size_t n_paths, double x0,
                                       std::uint64_t master_seed, unsigned threads,
                                       double em_step = 1e-3);

} // namespace zigzag
