#include "zigzag/special_functions.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "zigzag/errors.hpp"

namespace zigzag {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double log_factorial(int n) {
    if (n < 0) throw domain_error("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_double_factorial(int n) {
    if (n < -1) throw domain_error("log_double_factorial: argument below -1");
    if (n <= 0) return 0.0; // (-1)!! = 0!! = 1
    if (n % 2 == 0) {
        const int m = n / 2; // (2m)!! = 2^m m!
        return m * std::log(2.0) + log_factorial(m);
    }
    const int m = (n + 1) / 2; // (2m-1)!! = (2m)! / (2^m m!)
    return log_factorial(2 * m) - m * std::log(2.0) - log_factorial(m);
}

namespace {

double hyp2f1_series(double a, double b, double c, double z) {
    const int max_terms = 100000;
    double term = 1.0;
    double sum = 1.0;
    int small_count = 0;
    for (int n = 0; n < max_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::fabs(term) <= 1e-17 * std::fabs(sum)) {
            if (++small_count >= 3) return sum;
        } else {
            small_count = 0;
        }
        if (term == 0.0) return sum;
    }
    throw evaluation_error("hyp2f1 series did not converge within term cap", z);
}

} // namespace

double hyp2f1(double a, double b, double c, double z) {
    if (z > 1.0) throw domain_error("hyp2f1: z > 1 unsupported");
    if (std::fabs(z) < 0.5) return hyp2f1_series(a, b, c, z);
    // Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w);
}

double student_tail_probability(double a, double nu) {
    if (!(nu > 0.0)) throw domain_error("student_tail_probability: nu must be positive");
    if (nu == 1.0) return 0.5 - std::atan(a) / M_PI;
    if (nu == 2.0) return 0.5 - a / (2.0 * std::sqrt(2.0 + a * a));
    const double f = hyp2f1(0.5, 0.5 * (nu + 1.0), 1.5, -a * a / nu);
    const double coeff = std::exp(std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu)) /
                         std::sqrt(M_PI * nu);
    return 0.5 - a * coeff * f;
}

double student_cdf(double x, double nu) {
    return 1.0 - student_tail_probability(x, nu);
}

const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 1 || order > 128) throw domain_error("gauss_legendre: order out of range");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev estimate.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    auto [pos, inserted] = cache.emplace(order, std::move(rule));
    return pos->second;
}

} // namespace zigzag
