#include "zigzag/baselines.hpp"

#include <cmath>

#include "zigzag/errors.hpp"

namespace zigzag {

std::vector<double> sample_iid(const TargetModel& target, std::size_t n, RngStream& rng) {
    std::vector<double> out;
    out.reserve(n);
    switch (target.family) {
    case TargetModel::Family::gaussian: {
        const double sd = std::sqrt(target.family_param);
        for (std::size_t i = 0; i < n; ++i) out.push_back(sd * rng.normal());
        return out;
    }
    case TargetModel::Family::student_t: {
        const double nu = target.family_param;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = rng.normal();
            const double chi2 = 2.0 * rng.gamma(0.5 * nu);
            out.push_back(z / std::sqrt(chi2 / nu));
        }
        return out;
    }
    default:
        throw capability_error("sample_iid supports gaussian and student_t targets only");
    }
}

RwmhChain run_rwmh(const TargetModel& target, double step_size, std::size_t n, double x0,
                   RngStream& rng) {
    if (!(step_size > 0.0)) throw domain_error("run_rwmh: step_size must be positive");
    RwmhChain chain;
    chain.step_size = step_size;
    chain.samples.reserve(n);
    double x = x0;
    double ux = target.potential(x);
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double proposal = x + step_size * rng.normal();
        const double up = target.potential(proposal);
        ++chain.density_evals;
        if (rng.uniform() <= std::exp(ux - up)) {
            x = proposal;
            ux = up;
            ++accepted;
        }
        chain.samples.push_back(x);
    }
    chain.acceptance_rate = n > 0 ? static_cast<double>(accepted) / n : 0.0;
    return chain;
}

double tune_rwmh(const TargetModel& target, double target_acceptance,
                 std::uint64_t master_seed) {
    if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
        throw domain_error("tune_rwmh: target acceptance must lie in (0,1)");
    }
    const std::size_t pilot_steps = 10000;
    auto acceptance_at = [&](double log_step, std::uint64_t run) {
        RngStream rng(master_seed, 0x70BE5EEDULL + run);
        return run_rwmh(target, std::exp(log_step), pilot_steps, 0.0, rng).acceptance_rate;
    };

    double lo = std::log(1e-6 * target.scale);
    double hi = std::log(1e4 * target.scale);
    double acc_lo = acceptance_at(lo, 0); // small steps accept nearly always
    double acc_hi = acceptance_at(hi, 1);
    if (!(acc_lo >= target_acceptance && acc_hi <= target_acceptance)) {
        throw tuning_error("tune_rwmh: target acceptance rate not bracketed");
    }
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 20; ++iter) {
        mid = 0.5 * (lo + hi);
        const double acc = acceptance_at(mid, 2 + static_cast<std::uint64_t>(iter));
        if (std::fabs(acc - target_acceptance) <= 0.02) return std::exp(mid);
        if (acc > target_acceptance) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(mid);
}

} // namespace zigzag
