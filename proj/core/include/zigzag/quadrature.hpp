#pragma once

#include <functional>
#include <vector>

namespace zigzag {

struct QuadratureSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    bool tail_map = true;     // map infinite ranges through x = scale * tan(u)
    int max_subdivisions = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            const QuadratureSettings& settings = {});

// Integral over the whole real line via x = scale * tan(u).
QuadResult integrate_real_line(const Integrand& f, double scale,
                               const QuadratureSettings& settings = {});

// Integral over [a, +inf) via x = a + scale * tan(u).
QuadResult integrate_upper_tail(const Integrand& f, double a, double scale,
                                const QuadratureSettings& settings = {});

// Integral over (-inf, a].
QuadResult integrate_lower_tail(const Integrand& f, double a, double scale,
                                const QuadratureSettings& settings = {});

enum class IntegralStatus { converged, divergent, failed };

struct FlaggedIntegral {
    double value = 0.0;
    double error = 0.0;
    IntegralStatus status = IntegralStatus::failed;

    bool finite() const { return status == IntegralStatus::converged; }
};

// Whole-line integral with divergence detection: when the mapped rule does
// not settle, the domain cutoff is doubled up to 1e6 * scale; growth of more
// than 1% per doubling (or values past 1e12) is reported as divergent.
FlaggedIntegral integrate_or_flag(const Integrand& f, double scale,
                                  const QuadratureSettings& settings = {});

// Antiderivative t -> int_0^t f(s) ds, precomputed on an adaptive panel grid
// and evaluated by cubic Hermite interpolation (df/dt = f is known exactly).
class CumulativeIntegral {
public:
    CumulativeIntegral(Integrand f, double lo, double hi, double abs_tol = 1e-11);

    double operator()(double t) const;
    double error_estimate() const { return error_; }

private:
    Integrand f_;
    std::vector<double> knots_;   // panel boundaries, ascending, containing 0
    std::vector<double> values_;  // antiderivative at knots, anchored at 0
    double error_ = 0.0;
};

} // namespace zigzag
