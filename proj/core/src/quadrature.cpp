#include "zigzag/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "zigzag/errors.hpp"

namespace zigzag {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1].
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_mid = f(mid);
    if (!std::isfinite(f_mid)) throw evaluation_error("integrand not finite", mid);

    double kronrod = kKronrodWeights[7] * f_mid;
    double gauss = kGaussWeights[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double x1 = mid - dx;
        const double x2 = mid + dx;
        const double f1 = f(x1);
        const double f2 = f(x2);
        if (!std::isfinite(f1)) throw evaluation_error("integrand not finite", x1);
        if (!std::isfinite(f2)) throw evaluation_error("integrand not finite", x2);
        const double fsum = f1 + f2;
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;

    const double diff = std::fabs(kronrod - gauss);
    const double floor = 25.0 * 2.220446049250313e-16 * std::fabs(kronrod);
    return {a, b, kronrod, std::max(diff, floor)};
}

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

QuadResult adaptive(const Integrand& f, double a, double b, const QuadratureSettings& s) {
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
    Panel first = evaluate_panel(f, a, b);
    double total = first.value;
    double queue_err = first.error;
    double finalized_err = 0.0; // panels too small to split further
    queue.push(first);

    int subdivisions = 0;
    while (!queue.empty() &&
           queue_err + finalized_err > std::max(s.abs_tol, s.rel_tol * std::fabs(total)) &&
           subdivisions < s.max_subdivisions) {
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            finalized_err += worst.error;
            queue_err -= worst.error;
            continue;
        }
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        queue_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }

    QuadResult out;
    out.value = total;
    out.error = queue_err + finalized_err;
    out.subdivisions = subdivisions;
    out.converged = out.error <= std::max(s.abs_tol, s.rel_tol * std::fabs(total)) ||
                    out.error <= 5e-14 * std::fabs(total);
    return out;
}

constexpr double kHalfPi = 1.5707963267948966;

} // namespace

QuadResult integrate_finite(const Integrand& f, double a, double b,
                            const QuadratureSettings& settings) {
    if (!(a < b)) {
        QuadResult r;
        r.converged = true;
        return r;
    }
    return adaptive(f, a, b, settings);
}

QuadResult integrate_real_line(const Integrand& f, double scale,
                               const QuadratureSettings& settings) {
    const double c = scale > 0.0 ? scale : 1.0;
    auto mapped = [&f, c](double u) {
        const double t = std::tan(u);
        const double x = c * t;
        const double jac = c * (1.0 + t * t);
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * jac;
    };
    return adaptive(mapped, -kHalfPi, kHalfPi, settings);
}

QuadResult integrate_upper_tail(const Integrand& f, double a, double scale,
                                const QuadratureSettings& settings) {
    const double c = scale > 0.0 ? scale : 1.0;
    auto mapped = [&f, a, c](double u) {
        const double t = std::tan(u);
        const double x = a + c * t;
        const double jac = c * (1.0 + t * t);
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * jac;
    };
    return adaptive(mapped, 0.0, kHalfPi, settings);
}

QuadResult integrate_lower_tail(const Integrand& f, double a, double scale,
                                const QuadratureSettings& settings) {
    auto reflected = [&f, a](double x) { return f(a - x); };
    return integrate_upper_tail(reflected, 0.0, scale, settings);
}

FlaggedIntegral integrate_or_flag(const Integrand& f, double scale,
                                  const QuadratureSettings& settings) {
    const double c = scale > 0.0 ? scale : 1.0;

    QuadResult mapped = integrate_real_line(f, c, settings);
    if (mapped.converged && std::fabs(mapped.value) < 1e12) {
        return {mapped.value, mapped.error, IntegralStatus::converged};
    }

    // Cutoff-doubling diagnostic: integrate [-R, R] for R = 16c, 32c, ...
    QuadratureSettings finite_settings = settings;
    finite_settings.max_subdivisions = std::max(settings.max_subdivisions, 2000);
    double previous = 0.0;
    bool have_previous = false;
    double last_change = 0.0;
    for (int k = 4; k <= 21; ++k) {
        const double radius = c * static_cast<double>(1ULL << k);
        QuadResult piece = integrate_finite(f, -radius, radius, finite_settings);
        if (!std::isfinite(piece.value) || std::fabs(piece.value) > 1e12) {
            return {piece.value, piece.error, IntegralStatus::divergent};
        }
        if (have_previous) {
            last_change = std::fabs(piece.value - previous);
            if (last_change <= std::max(settings.abs_tol, settings.rel_tol * std::fabs(piece.value))) {
                return {piece.value, piece.error + last_change, IntegralStatus::converged};
            }
        }
        previous = piece.value;
        have_previous = true;
    }
    if (last_change > 0.01 * std::max(1.0, std::fabs(previous))) {
        return {previous, last_change, IntegralStatus::divergent};
    }
    return {previous, last_change, IntegralStatus::failed};
}

CumulativeIntegral::CumulativeIntegral(Integrand f, double lo, double hi, double abs_tol)
    : f_(std::move(f)) {
    if (!(lo < hi) || !(lo <= 0.0 && 0.0 <= hi)) {
        throw domain_error("cumulative integral range must contain 0");
    }

    // Refine panels until each one's (G7,K15) discrepancy is below budget.
    struct Cell {
        double a, b;
    };
    std::vector<Cell> stack;
    std::vector<Panel> done;
    const int initial = 64;
    for (int i = 0; i < initial; ++i) {
        const double a = lo + (hi - lo) * i / initial;
        const double b = lo + (hi - lo) * (i + 1) / initial;
        stack.push_back({a, b});
    }
    const double per_panel = abs_tol / (initial * 8.0);
    while (!stack.empty()) {
        Cell cell = stack.back();
        stack.pop_back();
        Panel p = evaluate_panel(f_, cell.a, cell.b);
        const double mid = 0.5 * (cell.a + cell.b);
        if (p.error > per_panel && mid > cell.a && mid < cell.b &&
            done.size() + stack.size() < 100000) {
            stack.push_back({cell.a, mid});
            stack.push_back({mid, cell.b});
        } else {
            done.push_back(p);
            error_ += p.error;
        }
    }
    std::sort(done.begin(), done.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });

    knots_.reserve(done.size() + 1);
    values_.reserve(done.size() + 1);
    knots_.push_back(done.front().a);
    values_.push_back(0.0);
    for (const Panel& p : done) {
        knots_.push_back(p.b);
        values_.push_back(values_.back() + p.value);
    }
    // anchor so that value(0) == 0
    const double at_zero = (*this)(0.0);
    for (double& v : values_) v -= at_zero;
}

double CumulativeIntegral::operator()(double t) const {
    if (t <= knots_.front()) return values_.front() + (t - knots_.front()) * f_(knots_.front());
    if (t >= knots_.back()) return values_.back() + (t - knots_.back()) * f_(knots_.back());
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t idx = static_cast<std::size_t>(it - knots_.begin()) - 1;
    const double a = knots_[idx];
    const double b = knots_[idx + 1];
    const double h = b - a;
    const double s = (t - a) / h;
    const double v0 = values_[idx];
    const double v1 = values_[idx + 1];
    const double d0 = f_(a);
    const double d1 = f_(b);
    // cubic Hermite with exact endpoint derivatives
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * v0 + h10 * h * d0 + h01 * v1 + h11 * h * d1;
}

} // namespace zigzag
