#include <cmath>
#include <vector>

#include "zigzag/asymptotic_variance.hpp"
#include "zigzag/ergodic.hpp"
#include "zigzag/errors.hpp"

namespace zigzag {

namespace {

struct Crossing {
    double time;
    bool upward; // position passes 0 moving up (direction must be +1)
};

// Origin crossings of the piecewise-linear path, in time order.
std::vector<Crossing> find_crossings(const EventChain& chain) {
    std::vector<Crossing> out;
    const auto& ev = chain.events;
    auto scan_piece = [&out](double t0, double x0, double theta, double duration) {
        if (duration <= 0.0) return;
        const double x1 = x0 + theta * duration;
        if (x0 < 0.0 && x1 > 0.0) {
            out.push_back({t0 - x0, true}); // theta = +1 here
        } else if (x0 > 0.0 && x1 < 0.0) {
            out.push_back({t0 + x0, false});
        }
    };
    for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
        scan_piece(ev[k].time, ev[k].position, ev[k].direction.sign(),
                   ev[k + 1].time - ev[k].time);
    }
    if (!ev.empty() && chain.final_time > ev.back().time) {
        scan_piece(ev.back().time, ev.back().position, ev.back().direction.sign(),
                   chain.final_time - ev.back().time);
    }
    return out;
}

} // namespace

RenewalStats renewal_variance_empirical(const EventChain& chain, const Observable& g,
                                        double centering) {
    const std::vector<Crossing> crossings = find_crossings(chain);

    // A cycle runs from one upward crossing to the next, split by the
    // intervening downward crossing into the Y+ and Y- excursion integrals.
    struct Cycle {
        double y_plus;
        double y_minus;
        double duration;
    };
    std::vector<Cycle> cycles;
    std::size_t i = 0;
    while (i < crossings.size() && !crossings[i].upward) ++i;
    while (i + 2 < crossings.size()) {
        const Crossing& start = crossings[i];
        const Crossing& down = crossings[i + 1];
        const Crossing& next = crossings[i + 2];
        if (!down.upward && next.upward) {
            const double y_plus = integrate_observable(chain, g, start.time, down.time) -
                                  centering * (down.time - start.time);
            const double y_minus = integrate_observable(chain, g, down.time, next.time) -
                                   centering * (next.time - down.time);
            cycles.push_back({y_plus, y_minus, next.time - start.time});
        }
        i += 2;
    }

    if (cycles.size() < 100) {
        throw insufficient_data_error(
            "renewal estimator needs at least 100 complete cycles, got " +
            std::to_string(cycles.size()));
    }

    RenewalStats stats;
    stats.cycles = cycles.size();
    double sum_plus = 0.0, sum_minus = 0.0, sum_sq_plus = 0.0, sum_sq_minus = 0.0;
    double sum_dt = 0.0;
    for (const Cycle& c : cycles) {
        sum_plus += c.y_plus;
        sum_minus += c.y_minus;
        sum_sq_plus += c.y_plus * c.y_plus;
        sum_sq_minus += c.y_minus * c.y_minus;
        sum_dt += c.duration;
    }
    const double n = static_cast<double>(cycles.size());
    stats.mean_y_plus = sum_plus / n;
    stats.mean_y_minus = sum_minus / n;
    stats.mean_cycle_time = sum_dt / n;
    // E[Y^2] = E[(Y+)^2] + E[(Y-)^2] - 2 E[Y+]^2 by independence and
    // E[Y-] = -E[Y+]; divided by the mean cycle duration E[2 tau+ + 2 tau-]
    const double second_moment = sum_sq_plus / n + sum_sq_minus / n -
                                 2.0 * stats.mean_y_plus * stats.mean_y_plus;
    stats.sigma2 = second_moment / stats.mean_cycle_time;
    return stats;
}

} // namespace zigzag
