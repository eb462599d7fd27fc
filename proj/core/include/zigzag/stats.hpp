#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace zigzag {

// One-sample Kolmogorov-Smirnov statistic against a CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// Two-sample critical value c(alpha) * sqrt((n+m)/(n m)); alpha in {0.10,
// 0.05, 0.01}.
double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha);

// Streaming mean/variance (Welford).
class RunningMoments {
public:
    void add(double x);
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const; // unbiased
    double population_variance() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;
    std::size_t below = 0;
    std::size_t above = 0;

    Histogram(double lo, double hi, std::size_t bins);
    void add(double x);
};

} // namespace zigzag
