#include "zigzag/ess.hpp"

#include <cmath>

#include "zigzag/ergodic.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/special_functions.hpp"

namespace zigzag {

FlaggedValue switching_rate_analytic(const TargetModel& target, const SwitchingRate& rate,
                                     const QuadratureSettings& settings) {
    auto integrand = [&](double x) {
        const double w = std::exp(-target.potential(x));
        if (w == 0.0) return 0.0;
        return 0.5 * (std::fabs(target.grad(x)) + 2.0 * rate.excess.value(x)) * w /
               target.normalization;
    };
    FlaggedIntegral fi = integrate_or_flag(integrand, target.scale, settings);
    return {fi.value, fi.error, fi.status};
}

double ess_ratio_gaussian(int k) {
    if (k < 1) throw domain_error("ess_ratio_gaussian requires k >= 1");
    if (k % 2 == 1) {
        // 2 pi (2k-1)!! / (2^{k+2} (2 k!/(k+1) - ((k-1)/2)!^2 / 2))
        const double la = std::log(2.0) + log_factorial(k) - std::log(k + 1.0);
        const double lb = 2.0 * log_factorial((k - 1) / 2) - std::log(2.0);
        const double denom = std::exp((k + 2.0) * std::log(2.0) + la) * -std::expm1(lb - la);
        return 2.0 * M_PI * std::exp(log_double_factorial(2 * k - 1)) / denom;
    }
    // 2 pi ((2k-1)!! - ((k-1)!!)^2) / (8 (k!)^2 / (2^k ((k/2)!)^2)
    //                                 + 8 k! (2^k - k - 2)/(k+1))
    const double lbig = log_double_factorial(2 * k - 1);
    const double lsmall = 2.0 * log_double_factorial(k - 1);
    const double numerator = 2.0 * M_PI * std::exp(lbig) * -std::expm1(lsmall - lbig);
    const double t1 = std::exp(std::log(8.0) + 2.0 * log_factorial(k) -
                               k * std::log(2.0) - 2.0 * log_factorial(k / 2));
    const double t2 = 8.0 * std::exp(log_factorial(k) - std::log(k + 1.0)) *
                      (std::exp2(static_cast<double>(k)) - k - 2.0);
    return numerator / (t1 + t2);
}

EssReport ess_from_run(const TargetModel& target, const SwitchingRate& rate,
                       const EventChain& chain, const FlaggedValue& sigma2,
                       double var_pi, const QuadratureSettings& settings) {
    if (!sigma2.finite()) {
        throw domain_error("ESS undefined: asymptotic variance is flagged non-finite");
    }
    if (!(sigma2.value > 0.0)) {
        throw domain_error("ESS needs a positive asymptotic variance");
    }
    FlaggedValue ns = switching_rate_analytic(target, rate, settings);
    if (!ns.finite()) {
        throw domain_error("ESS undefined: switching rate integral diverges");
    }
    EssReport report;
    report.n_s = ns.value;
    report.switches_observed = chain.accepted;
    report.proposals_observed = chain.proposals;
    report.n_s_empirical =
        chain.total_time() > 0.0
            ? static_cast<double>(chain.accepted) / chain.total_time()
            : 0.0;
    report.ess_per_switch = var_pi / (sigma2.value * ns.value);
    report.ess = report.ess_per_switch * static_cast<double>(report.switches_observed);
    // same equivalent-sample count, costed per proposal instead of per switch
    report.ess_per_proposal =
        report.proposals_observed > 0
            ? report.ess / static_cast<double>(report.proposals_observed)
            : 0.0;
    return report;
}

BatchMeansEstimate ess_batch_means(const EventChain& chain, const Observable& f,
                                   double var_pi, std::size_t n_batches) {
    if (n_batches < 2) throw domain_error("batch means needs at least 2 batches");
    const double t_max = chain.total_time();
    if (!(t_max > 0.0)) throw domain_error("batch means needs a positive-time chain");

    const double batch_length = t_max / static_cast<double>(n_batches);
    double mean_sum = 0.0;
    std::vector<double> batch_means(n_batches);
    for (std::size_t b = 0; b < n_batches; ++b) {
        const double t0 = batch_length * static_cast<double>(b);
        const double t1 = b + 1 == n_batches ? t_max : t0 + batch_length;
        batch_means[b] = integrate_observable(chain, f, t0, t1) / (t1 - t0);
        mean_sum += batch_means[b];
    }
    const double grand_mean = mean_sum / static_cast<double>(n_batches);
    double ss = 0.0;
    for (double bm : batch_means) ss += (bm - grand_mean) * (bm - grand_mean);

    BatchMeansEstimate est;
    est.batches = n_batches;
    est.asymptotic_variance = batch_length * ss / static_cast<double>(n_batches - 1);
    est.ess = var_pi * t_max / est.asymptotic_variance;
    return est;
}

} // namespace zigzag
