#include "zigzag/stats.hpp"

#include <algorithm>
#include <cmath>

#include "zigzag/errors.hpp"

namespace zigzag {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw domain_error("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs((i + 1) / n - f));
        d = std::max(d, std::fabs(f - i / n));
    }
    return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw domain_error("ks_statistic_two_sample: no samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    return d;
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha) {
    double c;
    if (alpha <= 0.01) {
        c = 1.628;
    } else if (alpha <= 0.05) {
        c = 1.358;
    } else {
        c = 1.224;
    }
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

void RunningMoments::add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double RunningMoments::variance() const {
    if (n_ < 2) return 0.0;
    return m2_ / static_cast<double>(n_ - 1);
}

double RunningMoments::population_variance() const {
    if (n_ == 0) return 0.0;
    return m2_ / static_cast<double>(n_);
}

Histogram::Histogram(double lo_, double hi_, std::size_t bins) : lo(lo_), hi(hi_) {
    if (!(hi > lo) || bins == 0) throw domain_error("bad histogram range");
    counts.assign(bins, 0);
}

void Histogram::add(double x) {
    if (x < lo) {
        ++below;
        return;
    }
    if (x >= hi) {
        ++above;
        return;
    }
    const double frac = (x - lo) / (hi - lo);
    std::size_t idx = static_cast<std::size_t>(frac * counts.size());
    if (idx >= counts.size()) idx = counts.size() - 1;
    ++counts[idx];
}

} // namespace zigzag
