#pragma once

#include <cstddef>
#include <vector>

namespace zigzag {

// Standard normal CDF.
double normal_cdf(double x);

// log(n!) and log double factorials, exact to ~1e-15 relative for n <= 40.
double log_factorial(int n);
double log_double_factorial(int n); // n!! for n >= -1 ((-1)!! = 1)

// Gauss hypergeometric 2F1(a,b;c;z) for real z <= 0. Power series for
// |z| < 1/2, Pfaff-transformed series otherwise (maps z to z/(z-1) in [0,1)).
double hyp2f1(double a, double b, double c, double z);

// Student-t upper tail probability P(T >= a) for dof nu, any real a.
double student_tail_probability(double a, double nu);

// Student-t CDF.
double student_cdf(double x, double nu);

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Nodes/weights for an n-point Gauss-Legendre rule (cached per order).
const GaussLegendreRule& gauss_legendre(int order);

} // namespace zigzag
