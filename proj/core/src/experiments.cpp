#include "zigzag/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "zigzag/asymptotic_variance.hpp"
#include "zigzag/baselines.hpp"
#include "zigzag/closed_form.hpp"
#include "zigzag/csv.hpp"
#include "zigzag/diffusion.hpp"
#include "zigzag/ergodic.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/ess.hpp"
#include "zigzag/parallel.hpp"
#include "zigzag/simulate.hpp"
#include "zigzag/stats.hpp"

namespace zigzag {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ZIGZAG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

unsigned default_thread_count() { return resolve_threads(0); }

void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
    if (key == "experiment") {
        config.experiment = value;
    } else if (key == "target") {
        config.target = value;
    } else if (key == "nu") {
        config.nu = std::stod(value);
    } else if (key == "gamma") {
        config.gamma = value;
    } else if (key == "replicates") {
        config.replicates = std::stoull(value);
    } else if (key == "horizon") {
        config.horizon = std::stod(value);
    } else if (key == "master_seed") {
        config.master_seed = std::stoull(value);
    } else if (key == "output_dir") {
        config.output_dir = value;
    } else if (key == "threads") {
        config.threads = static_cast<unsigned>(std::stoul(value));
    } else {
        throw domain_error("unknown config key: " + key);
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open config file: " + path);
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw domain_error("config line " + std::to_string(line_no) +
                               " is not key=value");
        }
        apply_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> names = {
        "fig3_gaussian_tail", "fig4_student_tail",     "fig5_diffusion",
        "fig6_gaussian_moments", "fig7_student_moment", "table_gaussian_moments",
        "table_ess",
    };
    return names;
}

namespace {

TargetModel make_target(const std::string& name, double nu) {
    if (name == "gaussian") return make_gaussian(nu * nu); // nu is the std dev
    if (name == "student_t") return make_student_t(nu);
    throw domain_error("unknown target: " + name);
}

ExcessRate make_excess(const std::string& spec) {
    if (spec == "none" || spec.empty()) return ExcessRate::none();
    if (spec.rfind("const:", 0) == 0) return ExcessRate::constant(std::stod(spec.substr(6)));
    if (spec.rfind("quadratic:", 0) == 0) {
        return ExcessRate::quadratic(std::stod(spec.substr(10)));
    }
    throw domain_error("unknown gamma spec: " + spec + " (use none|const:<c>|quadratic:<a>)");
}

InverseIntensity make_inverse(const TargetModel& target) {
    switch (target.family) {
    case TargetModel::Family::gaussian:
        return make_gaussian_inverse(target.family_param);
    case TargetModel::Family::student_t:
        return make_student_inverse(target.family_param);
    default:
        throw capability_error("no closed-form inverse intensity for this target");
    }
}

std::vector<double> log_spaced_checkpoints(double lo, double hi, std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(lo * std::pow(hi / lo, f));
    }
    out.back() = hi;
    return out;
}

std::string format_compact(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

// Tail-average trajectories for the Figure 3/4 style experiments: per
// replicate, pi_T(1{x>=a}) at each checkpoint from a stationary start.
struct TailSeriesResult {
    std::vector<double> checkpoints;
    std::vector<double> mean;
    std::vector<double> var_scaled; // T * Var[pi_T(f)]
};

TailSeriesResult tail_series_experiment(const TargetModel& target, double a,
                                        double horizon, std::uint64_t replicates,
                                        std::uint64_t master_seed, std::uint64_t salt,
                                        unsigned threads) {
    const InverseIntensity inverse = make_inverse(target);
    const SwitchingRate rate{target, ExcessRate::none()};
    const Observable f = Observable::tail(a);
    TailSeriesResult result;
    result.checkpoints = log_spaced_checkpoints(std::min(10.0, horizon / 10.0), horizon, 12);

    std::function<std::vector<double>(std::size_t)> one =
        [&](std::size_t rep) -> std::vector<double> {
        RngStream rng(master_seed, (salt << 48) + rep);
        const double x0 = sample_iid(target, 1, rng)[0];
        const Direction theta0 = rng.uniform() < 0.5 ? Direction::up() : Direction::down();
        EventChain chain = simulate_direct(rate, inverse, x0, theta0,
                                           Horizon::until_time(horizon), rng);
        std::vector<double> values;
        values.reserve(result.checkpoints.size());
        for (auto& [t, v] : running_average_series(chain, f, result.checkpoints)) {
            values.push_back(v);
        }
        return values;
    };
    std::vector<std::vector<double>> all =
        parallel_map(static_cast<std::size_t>(replicates), threads, one);

    const std::size_t n_checks = result.checkpoints.size();
    result.mean.assign(n_checks, 0.0);
    result.var_scaled.assign(n_checks, 0.0);
    for (std::size_t c = 0; c < n_checks; ++c) {
        RunningMoments acc;
        for (const auto& rep : all) acc.add(rep[c]);
        result.mean[c] = acc.mean();
        result.var_scaled[c] = result.checkpoints[c] * acc.variance();
    }
    return result;
}

void write_tail_series_csv(const std::string& path, const TailSeriesResult& series) {
    CsvWriter csv(path, {"T", "mean", "var_scaled"});
    for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
        csv.row({series.checkpoints[i], series.mean[i], series.var_scaled[i]});
    }
}

void run_fig3(const ExperimentConfig& config, const std::filesystem::path& dir) {
    int salt = 0x31;
    for (double nu : {1.0, 2.0, 4.0}) {
        const TargetModel target = make_target("gaussian", nu);
        const TailSeriesResult series =
            tail_series_experiment(target, 1.0, config.horizon, config.replicates,
                                   config.master_seed, salt++, resolve_threads(config.threads));
        write_tail_series_csv(
            (dir / ("fig3_gaussian_tail_nu" + format_compact(nu) + ".csv")).string(), series);
    }
}

void run_fig4(const ExperimentConfig& config, const std::filesystem::path& dir) {
    int salt = 0x41;
    for (double nu : {1.0, 2.0}) {
        const TargetModel target = make_target("student_t", nu);
        const TailSeriesResult series =
            tail_series_experiment(target, 5.0, config.horizon, config.replicates,
                                   config.master_seed, salt++, resolve_threads(config.threads));
        write_tail_series_csv(
            (dir / ("fig4_student_tail_nu" + format_compact(nu) + ".csv")).string(), series);
    }
}

void run_fig5(const ExperimentConfig& config, const std::filesystem::path& dir) {
    const TargetModel target = make_target("gaussian", 1.0);
    const ExcessRate gamma = ExcessRate::quadratic(1.0);
    const std::vector<double> epsilons = {10.0, 1.0, 0.1};
    const std::vector<double> times = {1.0, 10.0, 20.0, 50.0};
    const ComparisonReport report = compare_distributions(
        target, gamma, epsilons, times, static_cast<std::size_t>(config.replicates), 2.0,
        config.master_seed, resolve_threads(config.threads));

    CsvWriter summary((dir / "fig5_ks.csv").string(), {"epsilon", "t", "ks"});
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        for (std::size_t t = 0; t < times.size(); ++t) {
            summary.row({epsilons[e], times[t], report.ks[e][t]});
        }
    }

    // histogram panels: 50 uniform bins over [-4, 4]
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        for (std::size_t t = 0; t < times.size(); ++t) {
            Histogram hz(-4.0, 4.0, 50);
            Histogram hs(-4.0, 4.0, 50);
            for (double x : report.zigzag_samples[e][t]) hz.add(x);
            for (double x : report.sde_samples[t]) hs.add(x);
            CsvWriter csv((dir / ("fig5_hist_eps" + format_compact(epsilons[e]) + "_t" +
                                  format_compact(times[t]) + ".csv"))
                              .string(),
                          {"bin_left", "bin_right", "count_zigzag", "count_sde"});
            const double width = 8.0 / 50.0;
            for (std::size_t b = 0; b < 50; ++b) {
                csv.row({-4.0 + b * width, -4.0 + (b + 1) * width,
                         static_cast<double>(hz.counts[b]), static_cast<double>(hs.counts[b])});
            }
        }
    }
}

// Estimator variance at matched cost for zig-zag, IID, and RWMH.
void run_method_comparison(const TargetModel& target, const std::vector<int>& powers,
                           const ExperimentConfig& config,
                           const std::filesystem::path& dir, const std::string& stem,
                           std::uint64_t salt) {
    const std::vector<std::uint64_t> costs = {100, 316, 1000, 3162, 10000};
    const unsigned threads = resolve_threads(config.threads);
    const InverseIntensity inverse = make_inverse(target);
    const SwitchingRate rate{target, ExcessRate::none()};
    const double rwmh_step = tune_rwmh(target, 0.44, config.master_seed);

    for (int k : powers) {
        const Observable f = Observable::monomial(k);
        CsvWriter csv((dir / (stem + "_f" + std::to_string(k) + ".csv")).string(),
                      {"method", "cost", "var_estimate"});
        for (std::uint64_t cost : costs) {
            auto estimator_variance = [&](auto&& one_rep, std::uint64_t salt2) {
                std::function<double(std::size_t)> fn = [&](std::size_t rep) {
                    RngStream rng(config.master_seed, (salt << 40) + (salt2 << 32) + rep);
                    return one_rep(rng);
                };
                const std::vector<double> estimates =
                    parallel_map(static_cast<std::size_t>(config.replicates), threads, fn);
                RunningMoments acc;
                for (double e : estimates) acc.add(e);
                return acc.variance();
            };

            const double var_zz = estimator_variance(
                [&](RngStream& rng) {
                    const double x0 = sample_iid(target, 1, rng)[0];
                    const Direction theta0 =
                        rng.uniform() < 0.5 ? Direction::up() : Direction::down();
                    EventChain chain = simulate_direct(rate, inverse, x0, theta0,
                                                       Horizon::until_switches(cost), rng);
                    return path_average(chain, f).value;
                },
                cost * 3 + 0);
            const double var_iid = estimator_variance(
                [&](RngStream& rng) {
                    const std::vector<double> draws =
                        sample_iid(target, static_cast<std::size_t>(cost), rng);
                    double sum = 0.0;
                    for (double d : draws) sum += f.eval(d);
                    return sum / static_cast<double>(cost);
                },
                cost * 3 + 1);
            const double var_rwmh = estimator_variance(
                [&](RngStream& rng) {
                    const double x0 = sample_iid(target, 1, rng)[0];
                    const RwmhChain chain = run_rwmh(target, rwmh_step,
                                                     static_cast<std::size_t>(cost), x0, rng);
                    double sum = 0.0;
                    for (double x : chain.samples) sum += f.eval(x);
                    return sum / static_cast<double>(chain.samples.size());
                },
                cost * 3 + 2);

            csv.row_mixed({"zigzag", std::to_string(cost), CsvWriter::format(var_zz)});
            csv.row_mixed({"iid", std::to_string(cost), CsvWriter::format(var_iid)});
            csv.row_mixed({"rwmh", std::to_string(cost), CsvWriter::format(var_rwmh)});
        }
    }
}

void run_fig6(const ExperimentConfig& config, const std::filesystem::path& dir) {
    run_method_comparison(make_target("gaussian", 2.0), {1, 2}, config, dir,
                          "fig6_gaussian_moments", 0x61);
}

void run_fig7(const ExperimentConfig& config, const std::filesystem::path& dir) {
    int salt = 0x71;
    for (double nu : {4.0, 6.0, 8.0}) {
        std::filesystem::path sub = dir;
        run_method_comparison(make_target("student_t", nu), {1}, config, sub,
                              "fig7_student_moment_nu" + format_compact(nu), salt++);
    }
}

void run_table_gaussian_moments(const ExperimentConfig& config,
                                const std::filesystem::path& dir) {
    (void)config;
    CsvWriter csv((dir / "table_gaussian_moments.csv").string(),
                  {"target", "observable", "sigma2_renewal", "sigma2_psi", "sigma2_langevin",
                   "var_pi", "quad_error", "flags"});
    for (double nu : {1.0, 2.0}) {
        const TargetModel target = make_target("gaussian", nu);
        const SwitchingRate rate{target, ExcessRate::none()};
        for (int k : {1, 2, 3, 4}) {
            const VarianceReport report =
                compute_variance_report(target, rate, Observable::monomial(k));
            std::string flags = std::string("renewal=") +
                                (report.renewal_finite ? "ok" : "inf") +
                                ";psi=" + (report.psi_finite ? "ok" : "inf") +
                                ";langevin=" + (report.langevin_finite ? "ok" : "inf");
            csv.row_mixed({"gaussian_nu=" + format_compact(nu), "x^" + std::to_string(k),
                           CsvWriter::format(report.sigma2_renewal),
                           CsvWriter::format(report.sigma2_psi),
                           CsvWriter::format(report.sigma2_langevin),
                           CsvWriter::format(report.var_pi),
                           CsvWriter::format(report.quad_error), flags});
        }
    }
}

void run_table_ess(const ExperimentConfig& config, const std::filesystem::path& dir) {
    (void)config;
    CsvWriter csv((dir / "table_ess.csv").string(), {"k", "ess_ratio"});
    for (int k = 1; k <= 6; ++k) {
        csv.row({static_cast<double>(k), ess_ratio_gaussian(k)});
    }
}

void write_manifest(const ExperimentConfig& config, const std::filesystem::path& dir,
                    double wall_seconds, const std::string& status) {
    std::ofstream out(dir / "manifest.txt", std::ios::binary);
    out << "experiment=" << config.experiment << "\n"
        << "target=" << config.target << "\n"
        << "nu=" << CsvWriter::format(config.nu) << "\n"
        << "gamma=" << config.gamma << "\n"
        << "replicates=" << config.replicates << "\n"
        << "horizon=" << CsvWriter::format(config.horizon) << "\n"
        << "master_seed=" << config.master_seed << "\n"
        << "threads=" << resolve_threads(config.threads) << "\n"
        << "version=" << kVersion << "\n"
        << "status=" << status << "\n"
        << "wall_seconds=" << wall_seconds << "\n";
}

} // namespace

void run_experiment(const ExperimentConfig& config) {
    const auto& names = known_experiments();
    if (std::find(names.begin(), names.end(), config.experiment) == names.end()) {
        throw domain_error("unknown experiment: " + config.experiment);
    }
    const std::filesystem::path dir(config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw error("cannot create output directory: " + dir.string());

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&start]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    };
    try {
        if (config.experiment == "fig3_gaussian_tail") {
            run_fig3(config, dir);
        } else if (config.experiment == "fig4_student_tail") {
            run_fig4(config, dir);
        } else if (config.experiment == "fig5_diffusion") {
            run_fig5(config, dir);
        } else if (config.experiment == "fig6_gaussian_moments") {
            run_fig6(config, dir);
        } else if (config.experiment == "fig7_student_moment") {
            run_fig7(config, dir);
        } else if (config.experiment == "table_gaussian_moments") {
            run_table_gaussian_moments(config, dir);
        } else if (config.experiment == "table_ess") {
            run_table_ess(config, dir);
        }
    } catch (...) {
        write_manifest(config, dir, elapsed(), "failed");
        throw;
    }
    write_manifest(config, dir, elapsed(), "ok");
}

} // namespace zigzag
