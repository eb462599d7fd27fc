#include "zigzag/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "zigzag/errors.hpp"
#include "zigzag/special_functions.hpp"

namespace zigzag {

Observable Observable::monomial(int p) {
    if (p < 0) throw domain_error("monomial power must be nonnegative");
    Observable f;
    f.kind = Kind::monomial;
    f.power = p;
    f.eval = [p](double x) { return std::pow(x, p); };
    return f;
}

Observable Observable::tail(double a) {
    Observable f;
    f.kind = Kind::tail_indicator;
    f.threshold = a;
    f.eval = [a](double x) { return x >= a ? 1.0 : 0.0; };
    return f;
}

Observable Observable::generic(std::function<double(double)> fn,
                               std::optional<double> centering) {
    Observable f;
    f.kind = Kind::generic;
    f.eval = std::move(fn);
    f.centering = centering;
    return f;
}

namespace {

struct Piece {
    double t0;
    double x0;
    double theta;
    double duration;
};

template <typename Fn>
void for_each_piece(const EventChain& chain, Fn&& fn) {
    const auto& ev = chain.events;
    for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
        fn(Piece{ev[k].time, ev[k].position, ev[k].direction.sign(),
                 ev[k + 1].time - ev[k].time});
    }
    if (!ev.empty() && chain.final_time > ev.back().time) {
        fn(Piece{ev.back().time, ev.back().position, ev.back().direction.sign(),
                 chain.final_time - ev.back().time});
    }
}

// integral of x^p along a linear piece, over local time [s0, s1]
double piece_moment(const Piece& p, int power, double s0, double s1) {
    const double lo = p.x0 + p.theta * s0;
    const double hi = p.x0 + p.theta * s1;
    return p.theta * (std::pow(hi, power + 1) - std::pow(lo, power + 1)) /
           (power + 1.0);
}

// Lebesgue measure of {s in [s0,s1] : x0 + theta s >= a}
double piece_tail(const Piece& p, double a, double s0, double s1) {
    if (p.theta > 0.0) {
        const double entry = a - p.x0; // at or above threshold for s >= entry
        const double lo = std::max(s0, entry);
        return std::max(0.0, s1 - lo);
    }
    const double exit = p.x0 - a; // above threshold for s <= exit
    const double hi = std::min(s1, exit);
    return std::max(0.0, hi - s0);
}

double piece_quadrature(const Piece& p, const Observable& f, int order, double s0, double s1) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (s0 + s1);
    const double half = 0.5 * (s1 - s0);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = mid + half * rule.nodes[i];
        const double v = f.eval(p.x0 + p.theta * s);
        if (!std::isfinite(v)) {
            throw evaluation_error("observable not finite on segment", p.x0 + p.theta * s);
        }
        sum += rule.weights[i] * v;
    }
    return half * sum;
}

double piece_integral(const Piece& p, const Observable& f, int order, double s0, double s1) {
    if (s1 <= s0) return 0.0;
    switch (f.kind) {
    case Observable::Kind::monomial:
        return piece_moment(p, f.power, s0, s1);
    case Observable::Kind::tail_indicator:
        return piece_tail(p, f.threshold, s0, s1);
    default:
        return piece_quadrature(p, f, order, s0, s1);
    }
}

PathAverage accumulate_average(const EventChain& chain, const Observable& f, int order) {
    if (chain.segment_count() == 0) {
        throw domain_error("path average needs at least one segment");
    }
    PathAverage out;
    double integral = 0.0;
    double time = 0.0;
    for_each_piece(chain, [&](const Piece& p) {
        integral += piece_integral(p, f, order, 0.0, p.duration);
        time += p.duration;
        ++out.segment_count;
    });
    out.total_time = time;
    out.value = integral / time;
    return out;
}

} // namespace

PathAverage average_exact_moment(const EventChain& chain, int p) {
    if (p < 0) throw domain_error("moment power must be nonnegative");
    return accumulate_average(chain, Observable::monomial(p), 2);
}

PathAverage average_exact_tail(const EventChain& chain, double a) {
    return accumulate_average(chain, Observable::tail(a), 2);
}

PathAverage average_quadrature(const EventChain& chain, const Observable& f, int order) {
    if (order < 1) throw domain_error("quadrature order must be positive");
    Observable g = f;
    g.kind = Observable::Kind::generic; // force the quadrature path
    if (!g.eval) {
        throw domain_error("average_quadrature needs an evaluator");
    }
    return accumulate_average(chain, g, order);
}

PathAverage path_average(const EventChain& chain, const Observable& f, int order) {
    return accumulate_average(chain, f, order);
}

std::vector<std::pair<double, double>>
running_average_series(const EventChain& chain, const Observable& f,
                       const std::vector<double>& checkpoints, int order) {
    if (chain.segment_count() == 0) {
        throw domain_error("running average needs at least one segment");
    }
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] <= 0.0 || checkpoints[i] > chain.final_time ||
            (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
            throw domain_error("checkpoints must be increasing and within the horizon");
        }
    }

    std::vector<std::pair<double, double>> out;
    out.reserve(checkpoints.size());
    double integral = 0.0;
    std::size_t next = 0;
    for_each_piece(chain, [&](const Piece& p) {
        while (next < checkpoints.size() && checkpoints[next] <= p.t0 + p.duration) {
            const double partial =
                piece_integral(p, f, order, 0.0, checkpoints[next] - p.t0);
            out.emplace_back(checkpoints[next], (integral + partial) / checkpoints[next]);
            ++next;
        }
        integral += piece_integral(p, f, order, 0.0, p.duration);
    });
    return out;
}

double integrate_observable(const EventChain& chain, const Observable& f,
                            double t0, double t1, int order) {
    if (t1 < t0) throw domain_error("integrate_observable: t1 < t0");
    double total = 0.0;
    for_each_piece(chain, [&](const Piece& p) {
        const double lo = std::max(t0, p.t0);
        const double hi = std::min(t1, p.t0 + p.duration);
        if (hi > lo) {
            total += piece_integral(p, f, order, lo - p.t0, hi - p.t0);
        }
    });
    return total;
}

} // namespace zigzag
