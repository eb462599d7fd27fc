#pragma once

#include "zigzag/asymptotic_variance.hpp"
#include "zigzag/event_chain.hpp"
#include "zigzag/observable.hpp"
#include "zigzag/target_model.hpp"

namespace zigzag {

// Average switching rate N_S = (1/2) int (|U'| + 2 gamma) pi dx.
FlaggedValue switching_rate_analytic(const TargetModel& target, const SwitchingRate& rate,
                                     const QuadratureSettings& settings = {});

// ESS / N(T) for the k-th Gaussian moment; independent of nu.
double ess_ratio_gaussian(int k);

struct EssReport {
    double n_s = 0.0;            // analytic switches per unit time
    double n_s_empirical = 0.0;  // accepted / total time for the given chain
    double ess_per_switch = 0.0; // Var_pi(f) / (sigma2 * N_S)
    double ess = 0.0;            // ess_per_switch * switches_observed
    double ess_per_proposal = 0.0;
    std::uint64_t switches_observed = 0;
    std::uint64_t proposals_observed = 0;
};

// Effective sample size of a finished run, given the asymptotic variance and
// Var_pi of the observable. Throws domain_error when sigma2 is flagged
// non-finite (ESS undefined).
EssReport ess_from_run(const TargetModel& target, const SwitchingRate& rate,
                       const EventChain& chain, const FlaggedValue& sigma2,
                       double var_pi, const QuadratureSettings& settings = {});

// Single-run empirical ESS through batch means: estimates the asymptotic
// variance from n_batches equal-time batches and applies Var_pi(f)/Var-hat.
struct BatchMeansEstimate {
    double asymptotic_variance = 0.0;
    double ess = 0.0;
    std::size_t batches = 0;
};

BatchMeansEstimate ess_batch_means(const EventChain& chain, const Observable& f,
                                   double var_pi, std::size_t n_batches);

} // namespace zigzag
