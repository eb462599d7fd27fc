#include "zigzag/diffusion.hpp"

#include <cmath>

#include "zigzag/errors.hpp"
#include "zigzag/parallel.hpp"
#include "zigzag/stats.hpp"

namespace zigzag {

SdeModel make_limiting_sde(const TargetModel& target, const ExcessRate& gamma) {
    if (gamma.identically_zero) {
        throw domain_error("limiting SDE needs a positive excess rate");
    }
    SdeModel model;
    model.gamma_value = gamma.value;
    auto grad = target.grad;
    auto gval = gamma.value;
    std::function<double(double)> gprime = gamma.derivative;
    if (!gprime) {
        auto value = gamma.value;
        gprime = [value](double x) {
            const double h = 1e-6;
            return (value(x + h) - value(x - h)) / (2.0 * h);
        };
        model.derivative_from_finite_difference = true;
    }
    model.drift = [grad, gval, gprime](double x) {
        const double g = gval(x);
        return -0.5 * (grad(x) / g + gprime(x) / (g * g));
    };
    model.diffusion = [gval](double x) { return std::sqrt(1.0 / gval(x)); };
    return model;
}

namespace {

double em_step_state(const SdeModel& model, double x, double h, double z) {
    return x + model.drift(x) * h + model.diffusion(x) * std::sqrt(h) * z;
}

} // namespace

std::vector<double> simulate_sde_em_positions(const SdeModel& model,
                                              const std::vector<double>& times,
                                              double x0, double step, RngStream& rng) {
    if (!(step > 0.0)) throw domain_error("EM step must be positive");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= 0.0 || (i > 0 && times[i] <= times[i - 1])) {
            throw domain_error("EM checkpoint times must be positive and increasing");
        }
    }
    std::vector<double> out;
    out.reserve(times.size());
    double x = x0;
    double t = 0.0;
    std::size_t steps_taken = 0;
    for (double target_time : times) {
        while (t < target_time) {
            const double h = std::min(step, target_time - t);
            x = em_step_state(model, x, h, rng.normal());
            t += h;
            ++steps_taken;
            if (!std::isfinite(x)) {
                throw integration_error("EM state blew up", steps_taken);
            }
        }
        out.push_back(x);
    }
    return out;
}

double simulate_sde_em(const SdeModel& model, double t_end, double x0, double step,
                       RngStream& rng) {
    return simulate_sde_em_positions(model, {t_end}, x0, step, rng).front();
}

double simulate_scaled_zigzag(const TargetModel& target, const ExcessRate& gamma,
                              double epsilon, double t_end, double x0,
                              Direction theta0, RngStream& rng) {
    if (!(epsilon > 0.0)) throw domain_error("epsilon must be positive");
    SwitchingRate rate{target, gamma};
    rate.excess.value = [g = gamma.value, epsilon](double x) { return g(x) / epsilon; };
    rate.excess.sup_on_segment = [s = gamma.sup_on_segment, epsilon](double a, double b) {
        return s(a, b) / epsilon;
    };
    rate.excess.derivative = [d = gamma.derivative, epsilon](double x) {
        return d(x) / epsilon;
    };
    const BoundingIntensity bound = BoundingIntensity::affine(target, gamma, 1.0 / epsilon);
    const TerminalState terminal =
        simulate_thinned_terminal(rate, bound, x0, theta0, t_end / epsilon, rng);
    return terminal.x;
}

ComparisonReport compare_distributions(const TargetModel& target, const ExcessRate& gamma,
                                       const std::vector<double>& epsilons,
                                       const std::vector<double>& times,
                                       std::size_t n_paths, double x0,
                                       std::uint64_t master_seed, unsigned threads,
                                       double em_step) {
    if (epsilons.empty() || times.empty() || n_paths == 0) {
        throw domain_error("compare_distributions needs epsilons, times and paths");
    }
    for (double e : epsilons) {
        if (!(e > 0.0)) throw domain_error("all epsilons must be positive");
    }

    ComparisonReport report;
    report.epsilons = epsilons;
    report.times = times;
    report.paths = n_paths;
    report.em_step = em_step;

    // SDE reference samples, one stream per path
    const SdeModel sde = make_limiting_sde(target, gamma);
    {
        std::function<std::vector<double>(std::size_t)> one_path =
            [&](std::size_t p) -> std::vector<double> {
            RngStream rng(master_seed, 0x5DE0000000000000ULL + p);
            return simulate_sde_em_positions(sde, times, x0, em_step, rng);
        };
        std::vector<std::vector<double>> paths = parallel_map(n_paths, threads, one_path);
        report.sde_samples.assign(times.size(), std::vector<double>(n_paths));
        for (std::size_t p = 0; p < n_paths; ++p) {
            for (std::size_t ti = 0; ti < times.size(); ++ti) {
                report.sde_samples[ti][p] = paths[p][ti];
            }
        }
    }

    report.zigzag_samples.resize(epsilons.size());
    report.ks.assign(epsilons.size(), std::vector<double>(times.size(), 0.0));
    for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
        const double eps = epsilons[ei];
        SwitchingRate rate{target, gamma};
        rate.excess.value = [g = gamma.value, eps](double x) { return g(x) / eps; };
        rate.excess.sup_on_segment = [s = gamma.sup_on_segment, eps](double a, double b) {
            return s(a, b) / eps;
        };
        const BoundingIntensity bound = BoundingIntensity::affine(target, gamma, 1.0 / eps);
        std::vector<double> physical_times;
        physical_times.reserve(times.size());
        for (double t : times) physical_times.push_back(t / eps);

        std::function<std::vector<double>(std::size_t)> one_path =
            [&](std::size_t p) -> std::vector<double> {
            RngStream rng(master_seed, ((0x22ULL + ei) << 56) + p);
            Direction theta0 = rng.uniform() < 0.5 ? Direction::up() : Direction::down();
            return simulate_thinned_positions(rate, bound, x0, theta0, physical_times, rng);
        };
        std::vector<std::vector<double>> paths = parallel_map(n_paths, threads, one_path);
        report.zigzag_samples[ei].assign(times.size(), std::vector<double>(n_paths));
        for (std::size_t p = 0; p < n_paths; ++p) {
            for (std::size_t ti = 0; ti < times.size(); ++ti) {
                report.zigzag_samples[ei][ti][p] = paths[p][ti];
            }
        }
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            report.ks[ei][ti] = ks_statistic_two_sample(report.zigzag_samples[ei][ti],
                                                        report.sde_samples[ti]);
        }
    }
    return report;
}

} // namespace zigzag
