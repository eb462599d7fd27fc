#include "zigzag/closed_form.hpp"

#include <cmath>
#include <vector>

#include "zigzag/errors.hpp"
#include "zigzag/special_functions.hpp"

namespace zigzag {

namespace {

void require(bool ok, const char* condition) {
    if (!ok) throw validity_error(condition);
}

// psi for g = x^k - m_k is the polynomial given by the recursion
// P_k = nu^2 x^{k-1} + nu^2 (k-1) P_{k-2}, P_1 = nu^2, P_0 = 0
// (the non-polynomial parts cancel against the centering for even k).
std::vector<double> psi_polynomial(int k, double nu) {
    const double v = nu * nu;
    std::vector<double> prev{0.0};      // P_0
    std::vector<double> cur{v};         // P_1
    if (k == 0) return prev;
    for (int j = 2; j <= k; ++j) {
        std::vector<double> next(j, 0.0);
        next[j - 1] = v; // nu^2 x^{j-1}
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i] += v * (j - 1) * prev[i];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// E[x^p] for N(0, nu^2): nu^p (p-1)!! for even p
double raw_moment(int p, double nu) {
    if (p % 2 == 1) return 0.0;
    return std::exp(p * std::log(nu) + log_double_factorial(p - 1));
}

// E[|x|^p] = nu^p 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
double raw_abs_moment(int p, double nu) {
    return std::exp(p * std::log(nu) + 0.5 * p * std::log(2.0) +
                    std::lgamma(0.5 * (p + 1)) - 0.5 * std::log(M_PI));
}

} // namespace

double gaussian_moment(int k, double nu) {
    require(k >= 0, "gaussian_moment requires k >= 0");
    require(nu > 0.0, "gaussian_moment requires nu > 0");
    return raw_moment(k, nu);
}

double gaussian_moment_variance(int k, double nu) {
    require(k >= 1, "gaussian_moment_variance requires k >= 1");
    require(nu > 0.0, "gaussian_moment_variance requires nu > 0");
    const double log_nu2k = 2.0 * k * std::log(nu);
    if (k % 2 == 1) {
        return std::exp(log_nu2k + log_double_factorial(2 * k - 1));
    }
    const double big = log_nu2k + log_double_factorial(2 * k - 1);
    const double small = log_nu2k + 2.0 * log_double_factorial(k - 1);
    return std::exp(big) * -std::expm1(small - big);
}

double gaussian_moment_sigma2(int k, double nu) {
    require(k >= 1, "gaussian_moment_sigma2 requires k >= 1");
    require(nu > 0.0, "gaussian_moment_sigma2 requires nu > 0");
    const double lead = std::exp((2.0 * k + 1.0) * std::log(nu)) / std::sqrt(2.0 * M_PI);
    if (k % 2 == 1) {
        // 2^{k+2} (2 k!/(k+1) - ((k-1)/2)!^2 / 2)
        const double la = std::log(2.0) + log_factorial(k) - std::log(k + 1.0);
        const double lb = 2.0 * log_factorial((k - 1) / 2) - std::log(2.0);
        const double inner = std::exp(la) * -std::expm1(lb - la);
        return lead * std::exp((k + 2.0) * std::log(2.0)) * inner;
    }
    // 8 (k!)^2 / (2^k ((k/2)!)^2) + 8 k! (2^k - k - 2) / (k+1)
    const double t1 = std::exp(std::log(8.0) + 2.0 * log_factorial(k) -
                               k * std::log(2.0) - 2.0 * log_factorial(k / 2));
    const double pow2k = std::exp2(static_cast<double>(k));
    const double t2 = 8.0 * std::exp(log_factorial(k) - std::log(k + 1.0)) *
                      (pow2k - k - 2.0);
    return lead * (t1 + t2);
}

double gaussian_moment_langevin(int k, double nu) {
    require(k >= 1, "gaussian_moment_langevin requires k >= 1");
    require(nu > 0.0, "gaussian_moment_langevin requires nu > 0");
    const std::vector<double> psi = psi_polynomial(k, nu);
    double total = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        for (std::size_t j = 0; j < psi.size(); ++j) {
            if ((i + j) % 2 == 0) {
                total += psi[i] * psi[j] * raw_moment(static_cast<int>(i + j), nu);
            }
        }
    }
    return total;
}

double gaussian_moment_sigma2_via_psi(int k, double nu) {
    require(k >= 1, "gaussian_moment_sigma2_via_psi requires k >= 1");
    const std::vector<double> psi = psi_polynomial(k, nu);
    double total = 0.0;
    // 2 int |U'| psi^2 pi = (2/nu^2) sum c_i c_j E|x|^{i+j+1}
    for (std::size_t i = 0; i < psi.size(); ++i) {
        for (std::size_t j = 0; j < psi.size(); ++j) {
            total += psi[i] * psi[j] * raw_abs_moment(static_cast<int>(i + j + 1), nu);
        }
    }
    return 2.0 / (nu * nu) * total;
}

double gaussian_tail_probability(double a, double nu) {
    require(nu > 0.0, "gaussian_tail_probability requires nu > 0");
    return 1.0 - normal_cdf(a / nu);
}

double gaussian_tail_variance(double a, double nu) {
    const double p = gaussian_tail_probability(a, nu);
    return p * (1.0 - p);
}

double gaussian_tail_sigma2(double a, double nu) {
    require(nu > 0.0, "gaussian_tail_sigma2 requires nu > 0");
    const double p = gaussian_tail_probability(a, nu);
    const double root2pi = std::sqrt(2.0 * M_PI);
    const double numerator = -4.0 * a * (1.0 - p) * p * nu * root2pi +
                             4.0 * (1.0 - 2.0 * p) * nu * nu *
                                 std::exp(-a * a / (2.0 * nu * nu)) +
                             (8.0 - 2.0 * M_PI) * p * p * nu * nu;
    return numerator / std::sqrt(2.0 * M_PI * nu * nu);
}

double student_moment(int k, double nu) {
    require(k >= 0, "student_moment requires k >= 0");
    require(static_cast<double>(k) < nu, "student_moment requires k < nu");
    if (k % 2 == 1) return 0.0;
    return std::exp(0.5 * (k + 1.0) * std::log(nu) + std::lgamma(0.5 * (k + 1.0)) +
                    std::lgamma(0.5 * (nu - k)) - 0.5 * std::log(M_PI * nu) -
                    std::lgamma(0.5 * nu));
}

double student_moment_sigma2_odd(int k, double nu) {
    require(k >= 1 && k % 2 == 1, "student_moment_sigma2_odd requires odd k");
    require(static_cast<double>(k) < 0.5 * (nu - 1.0),
            "student_moment_sigma2_odd requires k < (nu - 1)/2");
    const double log_common = (k + 1.0) * std::log(nu) - 0.5 * std::log(M_PI * nu);
    const double t1 = std::exp(std::log(2.0) + log_common + std::lgamma(k + 1.0) +
                               std::lgamma(0.5 * (nu - 2.0 * k - 1.0)) -
                               std::log(1.0 + k));
    const double t2 = std::exp(log_common + 2.0 * std::lgamma(0.5 * (1.0 + k)) +
                               2.0 * std::lgamma(0.5 * (nu - k)) -
                               std::lgamma(0.5 * nu) - std::lgamma(0.5 * (nu + 1.0)));
    return t1 - t2;
}

double student_tail_sigma2(double a, double nu) {
    require(nu > 1.0, "student_tail_sigma2 requires nu > 1");
    const double p = student_tail_probability(a, nu);
    const double z = std::sqrt(nu * M_PI) *
                     std::exp(std::lgamma(0.5 * nu) - std::lgamma(0.5 * (nu + 1.0)));
    const double pre = nu / (z * (nu - 1.0));
    return 4.0 * (1.0 - 2.0 * p) * pre *
               std::pow(1.0 + a * a / nu, 0.5 * (1.0 - nu)) -
           4.0 * a * (1.0 - p) * p + 8.0 * p * p * pre - z * p * p;
}

double student_tail_sigma2_nu2(double a) {
    return (std::sqrt(2.0) + 2.0 * a + std::sqrt(2.0) * a * a -
            a * std::sqrt(4.0 + 2.0 * a * a)) /
           (2.0 + a * a);
}

double student_tail_variance(double a, double nu) {
    const double p = student_tail_probability(a, nu);
    return p * (1.0 - p);
}

double closed_form_oracle(OracleCase which, const OracleParams& params) {
    switch (which) {
    case OracleCase::gaussian_moment_m:
        return gaussian_moment(params.k, params.nu);
    case OracleCase::gaussian_moment_var:
        return gaussian_moment_variance(params.k, params.nu);
    case OracleCase::gaussian_moment_sigma2:
        return gaussian_moment_sigma2(params.k, params.nu);
    case OracleCase::gaussian_moment_langevin:
        return gaussian_moment_langevin(params.k, params.nu);
    case OracleCase::gaussian_tail_p:
        return gaussian_tail_probability(params.a, params.nu);
    case OracleCase::gaussian_tail_var:
        return gaussian_tail_variance(params.a, params.nu);
    case OracleCase::gaussian_tail_sigma2:
        return gaussian_tail_sigma2(params.a, params.nu);
    case OracleCase::student_moment_m:
        return student_moment(params.k, params.nu);
    case OracleCase::student_moment_sigma2:
        return student_moment_sigma2_odd(params.k, params.nu);
    case OracleCase::student_tail_p:
        return student_tail_probability(params.a, params.nu);
    case OracleCase::student_tail_var:
        return student_tail_variance(params.a, params.nu);
    case OracleCase::student_tail_sigma2:
        return student_tail_sigma2(params.a, params.nu);
    }
    throw domain_error("unknown oracle case");
}

} // namespace zigzag
