#include "zigzag/asymptotic_variance.hpp"

#include <cmath>
#include <limits>

#include "zigzag/errors.hpp"

namespace zigzag {

namespace {

// exp(-U(x)) with underflow to 0 when U is huge.
inline double boltzmann(const TargetModel& target, double x) {
    const double u = target.potential(x);
    if (!std::isfinite(u)) return u > 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    return std::exp(-u);
}

double compute_centering(const TargetModel& target, const Observable& g,
                         const QuadratureSettings& settings, double* error) {
    QuadratureSettings s = settings;
    s.abs_tol = 1e-12;
    auto integrand = [&](double x) {
        const double w = boltzmann(target, x);
        return w == 0.0 ? 0.0 : g.eval(x) * w;
    };
    QuadResult r = integrate_real_line(integrand, target.scale, s);
    if (!r.converged) {
        throw quadrature_error("centering integral did not converge", r.error);
    }
    if (error) *error = r.error / target.normalization;
    return r.value / target.normalization;
}

} // namespace

PsiFunction::PsiFunction(TargetModel target, Observable g, QuadratureSettings settings)
    : target_(std::move(target)), g_(std::move(g)), settings_(settings) {
    log_norm_ = std::log(target_.normalization);
    double cent_err = 0.0;
    const double computed = compute_centering(target_, g_, settings_, &cent_err);
    if (g_.centering) {
        if (std::fabs(*g_.centering - computed) >
            1e-8 * std::max(1.0, std::fabs(computed))) {
            throw domain_error("observable centering disagrees with quadrature");
        }
        centering_ = *g_.centering;
    } else {
        centering_ = computed;
    }
    quad_error_ = cent_err;
}

double PsiFunction::tail_integral(double x) const {
    const double m = centering_;
    // Tail indicators are integrated piecewise so every quadrature sees a
    // smooth integrand: with p = m and A/B the boltzmann mass above/below,
    //   int_x^inf (1{xi>=a} - p) e^-U = A(max(x,a)) - p A(x)
    //   int_-inf^x (1{xi>=a} - p) e^-U = 1{x>a} int_a^x e^-U - p B(x).
    if (g_.kind == Observable::Kind::tail_indicator) {
        const double a = g_.threshold;
        auto weight = [&](double xi) { return boltzmann(target_, xi); };
        if (x >= 0.0) {
            const double above_cut =
                integrate_upper_tail(weight, std::max(x, a), target_.scale, settings_).value;
            const double above_x =
                x >= a ? integrate_upper_tail(weight, x, target_.scale, settings_).value
                       : above_cut +
                             integrate_finite(weight, x, a, settings_).value;
            return above_cut - m * above_x;
        }
        const double below_x =
            integrate_lower_tail(weight, x, target_.scale, settings_).value;
        const double between =
            x > a ? integrate_finite(weight, a, x, settings_).value : 0.0;
        // int_x^inf = -int_-inf^x for the centered integrand
        return m * below_x - between;
    }

    auto integrand = [&](double xi) {
        const double w = boltzmann(target_, xi);
        return w == 0.0 ? 0.0 : (g_.eval(xi) - m) * w;
    };
    if (x >= 0.0) {
        return integrate_upper_tail(integrand, x, target_.scale, settings_).value;
    }
    // centered: int_x^inf = -int_-inf^x
    return -integrate_lower_tail(integrand, x, target_.scale, settings_).value;
}

double PsiFunction::operator()(double x) const {
    const double t = tail_integral(x);
    if (t == 0.0) return 0.0;
    return std::copysign(std::exp(target_.potential(x) + std::log(std::fabs(t))), t);
}

double PsiFunction::psi_sq_density(double x) const {
    const double t = tail_integral(x);
    if (t == 0.0) return 0.0;
    const double u = target_.potential(x);
    return std::exp(u + 2.0 * std::log(std::fabs(t)) - log_norm_);
}

namespace {

FlaggedValue flagged_from(const FlaggedIntegral& fi, double factor) {
    return {fi.value * factor, fi.error * std::fabs(factor), fi.status};
}

} // namespace

FlaggedValue sigma2_psi(const TargetModel& target, const SwitchingRate& rate,
                        const Observable& g, const QuadratureSettings& settings) {
    PsiFunction psi(target, g, settings);
    auto integrand = [&](double x) {
        const double density = psi.psi_sq_density(x);
        if (density == 0.0) return 0.0;
        const double weight = std::fabs(target.grad(x)) + 2.0 * rate.excess.value(x);
        return weight * density;
    };
    FlaggedIntegral fi;
    try {
        fi = integrate_or_flag(integrand, target.scale, settings);
    } catch (const evaluation_error& e) {
        throw quadrature_error(std::string("sigma2_psi integrand failed: ") + e.what(), 0.0);
    }
    FlaggedValue out = flagged_from(fi, 2.0);
    out.error += 2.0 * psi.quad_error();
    return out;
}

FlaggedValue sigma2_langevin(const TargetModel& target, const Observable& g,
                             const QuadratureSettings& settings) {
    PsiFunction psi(target, g, settings);
    auto integrand = [&](double x) { return psi.psi_sq_density(x); };
    FlaggedIntegral fi;
    try {
        fi = integrate_or_flag(integrand, target.scale, settings);
    } catch (const evaluation_error& e) {
        throw quadrature_error(std::string("sigma2_langevin integrand failed: ") + e.what(),
                               0.0);
    }
    return flagged_from(fi, 1.0);
}

namespace {

// Locate the potential's minimum; 0 for built-ins, bisection on U' otherwise.
double potential_minimum(const TargetModel& target) {
    const double h = 1e-6 * target.scale;
    if (target.grad(h) >= 0.0 && target.grad(-h) <= 0.0) return 0.0;
    double lo = -64.0 * target.scale;
    double hi = 64.0 * target.scale;
    if (!(target.grad(lo) < 0.0 && target.grad(hi) > 0.0)) {
        throw domain_error("sigma2_renewal: target is not unimodal on the search range");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (target.grad(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_unimodal(const TargetModel& target, double x_star) {
    const double cutoff = 24.0 * target.scale;
    for (int i = 1; i <= 48; ++i) {
        const double dx = cutoff * i / 48.0;
        if (target.grad(x_star + dx) < -1e-12 || target.grad(x_star - dx) > 1e-12) {
            throw domain_error("sigma2_renewal requires a unimodal potential "
                               "(U' must not change sign away from the minimum)");
        }
    }
}

// int_0^y of the recentered observable, exact for monomials and indicators.
class RunningIntegral {
public:
    RunningIntegral(const Observable& g, double m, double x_star, double scale)
        : g_(g), m_(m), x_star_(x_star) {
        if (g_.kind == Observable::Kind::generic) {
            const double span = 64.0 * std::max(1.0, scale);
            cumulative_.emplace(
                [this](double y) { return g_.eval(x_star_ + y); }, -span, span);
        }
    }

    double operator()(double y) const {
        switch (g_.kind) {
        case Observable::Kind::monomial: {
            const int p = g_.power;
            return (std::pow(x_star_ + y, p + 1) - std::pow(x_star_, p + 1)) / (p + 1.0) -
                   m_ * y;
        }
        case Observable::Kind::tail_indicator: {
            // signed measure of [0,y] (or [y,0], negated) above the threshold
            const double a = g_.threshold - x_star_;
            const double overlap = y >= 0.0
                                       ? std::max(0.0, y - std::max(a, 0.0))
                                       : -std::max(0.0, -std::max(y, a));
            return overlap - m_ * y;
        }
        default:
            return (*cumulative_)(y) - m_ * y;
        }
    }

    double quad_error() const {
        return cumulative_ ? cumulative_->error_estimate() : 0.0;
    }

private:
    const Observable& g_;
    double m_;
    double x_star_;
    mutable std::optional<CumulativeIntegral> cumulative_;
};

} // namespace

FlaggedValue sigma2_renewal(const TargetModel& target, const Observable& g,
                            const QuadratureSettings& settings) {
    const double x_star = potential_minimum(target);
    check_unimodal(target, x_star);

    double cent_err = 0.0;
    double m = 0.0;
    if (g.centering) {
        m = *g.centering;
        const double computed = compute_centering(target, g, settings, &cent_err);
        if (std::fabs(m - computed) > 1e-8 * std::max(1.0, std::fabs(computed))) {
            throw domain_error("observable centering disagrees with quadrature");
        }
    } else {
        m = compute_centering(target, g, settings, &cent_err);
    }

    RunningIntegral running(g, m, x_star, target.scale);
    const double density_at_min = target.density(x_star);

    auto outer = [&](double y) {
        const double x = x_star + y;
        const double w = boltzmann(target, x);
        if (w == 0.0) return 0.0;
        const double s = running(y);
        return std::fabs(target.grad(x)) * (w / target.normalization) * s * s;
    };
    FlaggedIntegral term1;
    try {
        term1 = integrate_or_flag(outer, target.scale, settings);
    } catch (const evaluation_error& e) {
        throw quadrature_error(std::string("sigma2_renewal integrand failed: ") + e.what(),
                               0.0);
    }
    if (term1.status != IntegralStatus::converged) {
        return {2.0 * term1.value, term1.error, term1.status};
    }

    auto upper = [&](double y) {
        const double x = x_star + y;
        const double w = boltzmann(target, x);
        return w == 0.0 ? 0.0 : (g.eval(x) - m) * (w / target.normalization);
    };
    QuadResult term2 = integrate_upper_tail(upper, 0.0, target.scale, settings);

    FlaggedValue out;
    out.value = 2.0 * term1.value - 4.0 / density_at_min * term2.value * term2.value;
    out.error = 2.0 * term1.error +
                8.0 / density_at_min * std::fabs(term2.value) * term2.error + cent_err +
                running.quad_error();
    out.status = IntegralStatus::converged;
    return out;
}

FlaggedValue variance_under_target(const TargetModel& target, const Observable& g,
                                   const QuadratureSettings& settings) {
    double cent_err = 0.0;
    const double m = g.centering ? *g.centering
                                 : compute_centering(target, g, settings, &cent_err);
    auto integrand = [&](double x) {
        const double w = boltzmann(target, x);
        if (w == 0.0) return 0.0;
        const double c = g.eval(x) - m;
        return c * c * (w / target.normalization);
    };
    FlaggedIntegral fi = integrate_or_flag(integrand, target.scale, settings);
    FlaggedValue out = flagged_from(fi, 1.0);
    out.error += cent_err;
    return out;
}

VarianceReport compute_variance_report(const TargetModel& target, const SwitchingRate& rate,
                                       const Observable& g,
                                       const QuadratureSettings& settings) {
    VarianceReport report;

    FlaggedValue psi = sigma2_psi(target, rate, g, settings);
    report.sigma2_psi = psi.value;
    report.psi_finite = psi.finite();
    report.quad_error += psi.error;

    try {
        FlaggedValue renewal = sigma2_renewal(target, g, settings);
        report.sigma2_renewal = renewal.value;
        report.renewal_finite = renewal.finite();
        report.quad_error += renewal.error;
    } catch (const domain_error&) {
        report.renewal_finite = false;
    }

    FlaggedValue langevin = sigma2_langevin(target, g, settings);
    report.sigma2_langevin = langevin.value;
    report.langevin_finite = langevin.finite();
    report.quad_error += langevin.error;

    FlaggedValue var = variance_under_target(target, g, settings);
    report.var_pi = var.value;
    report.var_pi_finite = var.finite();

    return report;
}

} // namespace zigzag
