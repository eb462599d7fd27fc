#pragma once

#include <optional>

#include "zigzag/event_chain.hpp"
#include "zigzag/observable.hpp"
#include "zigzag/quadrature.hpp"
#include "zigzag/target_model.hpp"

namespace zigzag {

// psi(x) = (1 / 2 pi(x)) * int_x^inf {g(xi,+1)+g(xi,-1)} pi(xi) dxi for a
// centered observable; the kernel shared by every variance formula here.
// The full-line integral of the centered observable vanishes, so the tail
// integral is computed over whichever half-line is shorter.
class PsiFunction {
public:
    PsiFunction(TargetModel target, Observable g, QuadratureSettings settings = {});

    double operator()(double x) const;

    // psi(x)^2 pi(x), assembled in log space so that huge exp(U) factors
    // against tiny tail integrals never overflow.
    double psi_sq_density(double x) const;

    // int_x^inf (g - m) exp(-U) dxi
    double tail_integral(double x) const;

    double centering() const { return centering_; }
    double centered(double x) const { return g_.eval(x) - centering_; }
    double quad_error() const { return quad_error_; }

private:
    TargetModel target_;
    Observable g_;
    QuadratureSettings settings_;
    double centering_ = 0.0;
    double quad_error_ = 0.0;
    double log_norm_ = 0.0;
};

struct FlaggedValue {
    double value = 0.0;
    double error = 0.0;
    IntegralStatus status = IntegralStatus::failed;

    bool finite() const { return status == IntegralStatus::converged; }
};

// Zig-Zag asymptotic variance 2 int (|U'| + 2 gamma) psi^2 pi dx.
FlaggedValue sigma2_psi(const TargetModel& target, const SwitchingRate& rate,
                        const Observable& g, const QuadratureSettings& settings = {});

// Renewal-form asymptotic variance for unimodal targets with canonical rates:
// 2 int |U'| pi (int_0^t g)^2 dt - (4 / pi(x*)) (int_{x*}^inf g pi)^2,
// coordinates recentered at the potential's minimum x*.
FlaggedValue sigma2_renewal(const TargetModel& target, const Observable& g,
                            const QuadratureSettings& settings = {});

// Langevin comparison value int psi^2 pi dx: the normalization used by the
// reference moment tables this library reproduces.
FlaggedValue sigma2_langevin(const TargetModel& target, const Observable& g,
                             const QuadratureSettings& settings = {});

// Var_pi(g) for the centered observable.
FlaggedValue variance_under_target(const TargetModel& target, const Observable& g,
                                   const QuadratureSettings& settings = {});

struct VarianceReport {
    double sigma2_renewal = 0.0;
    double sigma2_psi = 0.0;
    double sigma2_langevin = 0.0;
    double var_pi = 0.0;
    double quad_error = 0.0;
    bool renewal_finite = false;
    bool psi_finite = false;
    bool langevin_finite = false;
    bool var_pi_finite = false;
};

VarianceReport compute_variance_report(const TargetModel& target, const SwitchingRate& rate,
                                       const Observable& g,
                                       const QuadratureSettings& settings = {});

// Empirical renewal estimator: splits a canonical unimodal trajectory at
// origin crossings into i.i.d. cycles and estimates sigma^2 from the cycle
// integrals. Throws insufficient_data_error below 100 complete cycles.
struct RenewalStats {
    std::size_t cycles = 0;
    double mean_y_plus = 0.0;
    double mean_y_minus = 0.0;
    double mean_cycle_time = 0.0;
    double sigma2 = 0.0;
};

RenewalStats renewal_variance_empirical(const EventChain& chain, const Observable& g,
                                        double centering);

} // namespace zigzag
