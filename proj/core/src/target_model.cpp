#include "zigzag/target_model.hpp"

#include <cmath>
#include <limits>

#include "zigzag/errors.hpp"
#include "zigzag/quadrature.hpp"

namespace zigzag {

Direction Direction::from_int(int v) {
    if (v != 1 && v != -1) throw domain_error("Direction must be +1 or -1");
    return Direction(static_cast<double>(v));
}

ExcessRate ExcessRate::none() {
    ExcessRate g;
    g.family = Family::none;
    g.value = [](double) { return 0.0; };
    g.derivative = [](double) { return 0.0; };
    g.sup_on_segment = [](double, double) { return 0.0; };
    g.identically_zero = true;
    g.description = "none";
    return g;
}

ExcessRate ExcessRate::constant(double c) {
    if (c < 0.0) throw domain_error("constant excess rate must be nonnegative");
    ExcessRate g;
    g.family = Family::constant;
    g.value = [c](double) { return c; };
    g.derivative = [](double) { return 0.0; };
    g.sup_on_segment = [c](double, double) { return c; };
    g.identically_zero = (c == 0.0);
    g.description = "const:" + std::to_string(c);
    return g;
}

ExcessRate ExcessRate::quadratic(double a) {
    if (a <= 0.0) throw domain_error("quadratic excess rate needs a > 0");
    ExcessRate g;
    g.family = Family::quadratic;
    g.value = [a](double x) { return a * (1.0 + x * x); };
    g.derivative = [a](double x) { return 2.0 * a * x; };
    // convex with minimum at 0, so the sup over a segment sits at an endpoint
    g.sup_on_segment = [a](double x0, double x1) {
        const double m = std::max(std::fabs(x0), std::fabs(x1));
        return a * (1.0 + m * m);
    };
    g.identically_zero = false;
    g.description = "quadratic:" + std::to_string(a);
    return g;
}

double switching_rate(const SwitchingRate& rate, double x, Direction theta) {
    const double slope = rate.target.grad(x);
    if (!std::isfinite(slope)) throw evaluation_error("U' not finite", x);
    return std::max(0.0, theta.sign() * slope) + rate.excess.value(x);
}

TargetModel make_gaussian(double variance) {
    if (!(variance > 0.0)) throw domain_error("make_gaussian: variance must be positive");
    TargetModel m;
    m.potential = [variance](double x) { return x * x / (2.0 * variance); };
    m.grad = [variance](double x) { return x / variance; };
    m.hessian_bound = 1.0 / variance;
    m.normalization = std::sqrt(2.0 * M_PI * variance);
    m.scale = std::sqrt(variance);
    m.family = TargetModel::Family::gaussian;
    m.family_param = variance;
    m.name = "gaussian";
    return m;
}

TargetModel make_student_t(double dof) {
    if (!(dof > 0.0)) throw domain_error("make_student_t: dof must be positive");
    const double nu = dof;
    TargetModel m;
    m.potential = [nu](double x) { return 0.5 * (nu + 1.0) * std::log1p(x * x / nu); };
    m.grad = [nu](double x) { return (nu + 1.0) * x / (nu + x * x); };
    // |U'| maximized at x = sqrt(nu)
    m.grad_bound = (nu + 1.0) / (2.0 * std::sqrt(nu));
    m.normalization = std::sqrt(nu * M_PI) *
                      std::exp(std::lgamma(0.5 * nu) - std::lgamma(0.5 * (nu + 1.0)));
    m.scale = std::sqrt(nu);
    m.family = TargetModel::Family::student_t;
    m.family_param = nu;
    m.name = "student_t";
    return m;
}

TargetModel make_custom(std::function<double(double)> u,
                        std::function<double(double)> u_prime,
                        const CustomBounds& bounds,
                        const std::string& name) {
    TargetModel m;
    m.potential = std::move(u);
    m.grad = std::move(u_prime);
    m.grad_bound = bounds.grad_bound;
    m.hessian_bound = bounds.hessian_bound;
    m.scale = bounds.scale > 0.0 ? bounds.scale : 1.0;
    m.family = TargetModel::Family::custom;
    m.name = name;

    QuadratureSettings settings;
    settings.abs_tol = 1e-10;
    settings.rel_tol = 1e-12;
    const auto& pot = m.potential;
    auto density = [&pot](double x) {
        const double ux = pot(x);
        return std::isfinite(ux) ? std::exp(-ux) : 0.0;
    };
    FlaggedIntegral k;
    try {
        k = integrate_or_flag(density, m.scale, settings);
    } catch (const evaluation_error&) {
        throw quadrature_error("make_custom: exp(-U) not integrable",
                               std::numeric_limits<double>::infinity());
    }
    if (k.status != IntegralStatus::converged || !(k.value > 0.0) || !std::isfinite(k.value)) {
        throw quadrature_error("make_custom: normalization quadrature did not converge", k.error);
    }
    m.normalization = k.value;
    return m;
}

} // namespace zigzag
