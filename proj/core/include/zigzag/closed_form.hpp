#pragma once

namespace zigzag {

// Reference values for the Gaussian N(0, nu^2) moment observables
// g(x) = x^k - m_k and the tail observables g = 1{x >= a} - p_a, plus their
// Student-t counterparts. Everything factorial-shaped is evaluated in log
// space so k up to 20 stays accurate to ~1e-12 relative.

// E[x^k] under N(0, nu^2)
double gaussian_moment(int k, double nu);

// Var_pi(x^k - m_k)
double gaussian_moment_variance(int k, double nu);

// Zig-Zag asymptotic variance for the k-th Gaussian moment (canonical rates)
double gaussian_moment_sigma2(int k, double nu);

// Langevin comparison value int psi^2 pi (psi is polynomial for these g)
double gaussian_moment_langevin(int k, double nu);

// Same integral evaluated through the explicit psi polynomial and absolute
// Gaussian moments; an independent route used to cross-check the formulas.
double gaussian_moment_sigma2_via_psi(int k, double nu);

// Gaussian tail probability p_a, its variance, and asymptotic variance
double gaussian_tail_probability(double a, double nu);
double gaussian_tail_variance(double a, double nu);
double gaussian_tail_sigma2(double a, double nu);

// Student-t with nu degrees of freedom
double student_moment(int k, double nu);               // needs k < nu
double student_moment_sigma2_odd(int k, double nu);    // needs odd k < (nu-1)/2
double student_tail_sigma2(double a, double nu);       // needs nu > 1
double student_tail_sigma2_nu2(double a);              // nu = 2 closed form
double student_tail_variance(double a, double nu);     // p_a (1 - p_a)

enum class OracleCase {
    gaussian_moment_m,
    gaussian_moment_var,
    gaussian_moment_sigma2,
    gaussian_moment_langevin,
    gaussian_tail_p,
    gaussian_tail_var,
    gaussian_tail_sigma2,
    student_moment_m,
    student_moment_sigma2,
    student_tail_p,
    student_tail_var,
    student_tail_sigma2,
};

struct OracleParams {
    int k = 0;        // moment order
    double nu = 1.0;  // Gaussian std dev / Student dof
    double a = 0.0;   // tail threshold
};

double closed_form_oracle(OracleCase which, const OracleParams& params);

} // namespace zigzag
