#include "zigzag/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "zigzag/errors.hpp"

namespace zigzag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMaxProposalsPerTrajectory = 1000000000ULL;

// First arrival time of the inhomogeneous intensity max(0, a + L t) + c,
// i.e. the tau solving int_0^tau = z. Requires L >= 0, c >= 0.
double affine_plus_const_arrival(double a, double L, double c, double z) {
    if (L <= 0.0) {
        const double rate = std::max(0.0, a) + c;
        return rate > 0.0 ? z / rate : kInf;
    }
    if (a >= 0.0) {
        const double b = a + c;
        return (-b + std::sqrt(b * b + 2.0 * L * z)) / L;
    }
    const double t0 = -a / L; // intensity is just c before t0
    if (c > 0.0 && z <= c * t0) return z / c;
    const double zr = z - c * t0;
    return t0 + (-c + std::sqrt(c * c + 2.0 * L * zr)) / L;
}

} // namespace

Horizon Horizon::until_time(double t) {
    if (!(t > 0.0)) throw domain_error("horizon time must be positive");
    Horizon h;
    h.kind = Kind::time;
    h.t_end = t;
    return h;
}

Horizon Horizon::until_switches(std::uint64_t n) {
    Horizon h;
    h.kind = Kind::switches;
    h.max_switches = n;
    return h;
}

InverseIntensity make_gaussian_inverse(double variance) {
    if (!(variance > 0.0)) throw domain_error("make_gaussian_inverse: variance must be positive");
    const double v = variance;
    InverseIntensity inv;
    inv.inverse = [v](double z, double x, Direction theta) {
        const double w = theta.sign() * x;
        if (w <= 0.0) return -w + std::sqrt(2.0 * v * z);
        return -w + std::sqrt(x * x + 2.0 * v * z);
    };
    inv.integral = [v](double t, double x, Direction theta) {
        const double w = theta.sign() * x;
        const double lead = std::max(0.0, w + t);
        const double base = std::max(0.0, w);
        return (lead * lead - base * base) / (2.0 * v);
    };
    return inv;
}

InverseIntensity make_student_inverse(double dof) {
    if (!(dof > 0.0)) throw domain_error("make_student_inverse: dof must be positive");
    const double nu = dof;
    InverseIntensity inv;
    inv.inverse = [nu](double z, double x, Direction theta) {
        const double w = theta.sign() * x;
        const double e = std::exp(z / (1.0 + nu)); // factored form, overflow safe
        const double e2 = std::exp(-2.0 * z / (1.0 + nu));
        if (w <= 0.0) return -w + e * std::sqrt(nu * (1.0 - e2));
        return -w + e * std::sqrt(x * x + nu - nu * e2);
    };
    inv.integral = [nu](double t, double x, Direction theta) {
        const double w = theta.sign() * x;
        const double lead = std::max(0.0, w + t);
        const double base = std::max(0.0, w);
        return 0.5 * (1.0 + nu) *
               std::log((nu + lead * lead) / (nu + base * base));
    };
    return inv;
}

double switching_time_direct(const InverseIntensity& inverse, double x, Direction theta,
                             double u) {
    if (!(u > 0.0 && u < 1.0)) throw domain_error("switching_time_direct: u must lie in (0,1)");
    const double tau = inverse.inverse(-std::log(u), x, theta);
    if (!std::isfinite(tau)) {
        throw no_switch_error("no switch in finite time along the current ray");
    }
    return tau;
}

BoundingIntensity BoundingIntensity::constant(double K) {
    if (!(K > 0.0)) throw domain_error("constant bound must be positive");
    BoundingIntensity b;
    b.kind_ = Kind::constant;
    b.cap_ = K;
    return b;
}

BoundingIntensity BoundingIntensity::affine(const TargetModel& target,
                                            const ExcessRate& excess,
                                            double excess_scale) {
    if (!target.hessian_bound) {
        throw capability_error("affine bound requires the target's hessian_bound");
    }
    BoundingIntensity b;
    b.kind_ = Kind::affine;
    b.slope_ = *target.hessian_bound;
    b.grad_ = target.grad;
    if (!excess.identically_zero) {
        auto gamma = excess.value;
        auto sup = excess.sup_on_segment;
        b.excess_value_ = [gamma, excess_scale](double x) { return excess_scale * gamma(x); };
        b.excess_sup_ = [sup, excess_scale](double x0, double x1) {
            return excess_scale * sup(x0, x1);
        };
        switch (excess.family) {
        case ExcessRate::Family::constant:
            b.window_ = [](double, Direction) { return kInf; };
            break;
        case ExcessRate::Family::quadratic:
            // lookahead over which gamma at most doubles:
            // (x + theta d)^2 = 1 + 2 x^2
            b.window_ = [](double x, Direction theta) {
                return std::sqrt(1.0 + 2.0 * x * x) - theta.sign() * x;
            };
            break;
        default:
            throw capability_error(
                "affine bound supports constant and quadratic excess rates only");
        }
    }
    return b;
}

double BoundingIntensity::value(double t, double x, Direction theta) const {
    if (kind_ == Kind::constant) return cap_;
    const double a = theta.sign() * grad_(x);
    double c = 0.0;
    if (excess_value_) {
        const double window = window_(x, theta);
        const double reach = std::isfinite(window) ? std::min(t, window) : t;
        c = excess_sup_(x, x + theta.sign() * reach);
    }
    return std::max(0.0, a + slope_ * t) + c;
}

BoundingIntensity::Step BoundingIntensity::draw(double z, double x, Direction theta) const {
    if (kind_ == Kind::constant) {
        return {z / cap_, true, cap_};
    }
    const double a = theta.sign() * grad_(x);
    if (!std::isfinite(a)) throw evaluation_error("U' not finite", x);
    double c = 0.0;
    double window = kInf;
    if (excess_value_) {
        window = window_(x, theta);
        c = std::isfinite(window)
                ? excess_sup_(x, x + theta.sign() * window)
                : excess_sup_(x, x);
    }
    const double tau = affine_plus_const_arrival(a, slope_, c, z);
    if (!std::isfinite(tau)) {
        throw no_switch_error("thinning bound has no finite arrival along the current ray");
    }
    if (tau <= window) {
        return {tau, true, std::max(0.0, a + slope_ * tau) + c};
    }
    return {window, false, 0.0};
}

TrajectoryWriter::TrajectoryWriter(std::ostream& out) : out_(&out) {
    *out_ << "t,x,theta,event_kind\n";
}

namespace {

void write_row(std::ostream& out, double t, double x, Direction theta, const char* kind) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%d,%s\n", t, x, theta.as_int(), kind);
    out << buffer;
}

} // namespace

void TrajectoryWriter::on_switch(double t, double x, Direction theta) {
    write_row(*out_, t, x, theta, "switch");
}
void TrajectoryWriter::on_rejected(double t, double x, Direction theta) {
    write_row(*out_, t, x, theta, "proposal_rejected");
}
void TrajectoryWriter::on_horizon(double t, double x, Direction theta) {
    write_row(*out_, t, x, theta, "horizon");
}

namespace {

// Spot check that dG/dt matches the switching rate at 16 deterministic
// points; rejects mismatched (rate, inverse) pairs up front.
void validate_inverse_pair(const SwitchingRate& rate, const InverseIntensity& inverse) {
    RngStream probe(0x5EEDFACE12345678ULL, 0);
    const double scale = rate.target.scale;
    int checked = 0;
    int attempts = 0;
    while (checked < 16 && attempts < 200) {
        ++attempts;
        const double x = (2.0 * probe.uniform() - 1.0) * 3.0 * scale;
        Direction theta = probe.uniform() < 0.5 ? Direction::up() : Direction::down();
        const double t = 0.1 + 1.9 * probe.uniform();
        // stay away from the rate's kink at the origin crossing
        if (std::fabs(x + theta.sign() * t) < 0.1 * scale) continue;
        const double h = 1e-4 * std::max(1.0, scale);
        if (std::fabs(x + theta.sign() * (t + 2.0 * h)) < 0.1 * scale ||
            std::fabs(x + theta.sign() * (t - 2.0 * h)) < 0.1 * scale) {
            continue;
        }
        auto g = [&](double s) { return inverse.integral(s, x, theta); };
        const double derivative =
            (g(t - 2.0 * h) - 8.0 * g(t - h) + 8.0 * g(t + h) - g(t + 2.0 * h)) / (12.0 * h);
        const double lambda = switching_rate(rate, x + theta.sign() * t, theta);
        if (std::fabs(derivative - lambda) > 1e-8 * std::max(1.0, lambda)) {
            throw domain_error("simulate_direct: inverse intensity inconsistent with rate");
        }
        ++checked;
    }
    if (checked < 16) {
        throw domain_error("simulate_direct: could not validate inverse intensity");
    }
}

} // namespace

EventChain simulate_direct(const SwitchingRate& rate, const InverseIntensity& inverse,
                           double x0, Direction theta0, const Horizon& horizon,
                           RngStream& rng, TrajectoryWriter* dump) {
    if (!rate.excess.identically_zero) {
        throw domain_error("simulate_direct handles canonical rates; "
                           "use thinning for excess switching");
    }
    validate_inverse_pair(rate, inverse);

    EventChain chain;
    chain.events.push_back({0.0, x0, theta0});

    double t = 0.0;
    double x = x0;
    Direction theta = theta0;

    if (horizon.kind == Horizon::Kind::switches && horizon.max_switches == 0) {
        chain.final_time = 0.0;
        return chain;
    }

    for (;;) {
        const double z = rng.exponential();
        const double tau = inverse.inverse(z, x, theta);
        if (!std::isfinite(tau)) {
            throw no_switch_error("no switch in finite time along the current ray");
        }
        if (horizon.kind == Horizon::Kind::time && t + tau > horizon.t_end) {
            chain.final_time = horizon.t_end;
            if (dump) dump->on_horizon(horizon.t_end, x + (horizon.t_end - t) * theta.sign(), theta);
            break;
        }
        const double t_next = t + tau;
        x += (t_next - t) * theta.sign(); // keeps the flow invariant exact
        t = t_next;
        theta.flip();
        chain.events.push_back({t, x, theta});
        ++chain.accepted;
        ++chain.proposals;
        ++chain.grad_evals;
        if (dump) dump->on_switch(t, x, theta);
        if (horizon.kind == Horizon::Kind::switches && chain.accepted >= horizon.max_switches) {
            chain.final_time = t;
            break;
        }
        if (chain.proposals >= kMaxProposalsPerTrajectory) {
            throw no_switch_error("iteration cap reached in simulate_direct");
        }
    }
    return chain;
}

namespace {

void validate_domination(const SwitchingRate& rate, const BoundingIntensity& bound) {
    const double scale = rate.target.scale;
    for (int xi = -20; xi <= 20; ++xi) {
        const double x = 0.5 * xi * scale;
        for (Direction theta : {Direction::up(), Direction::down()}) {
            for (int ti = 0; ti <= 8; ++ti) {
                const double t = 0.25 * ti * scale;
                const double lam = switching_rate(rate, x + theta.sign() * t, theta);
                if (bound.value(t, x, theta) + 1e-9 < lam) {
                    throw domain_error("thinning bound does not dominate the switching rate");
                }
            }
        }
    }
}

// Shared thinning loop. Returns through the supplied callbacks; keeps the
// flow invariant exact by deriving positions from stored times.
template <typename OnMove, typename OnSwitch, typename OnFinish>
void thinned_loop(const SwitchingRate& rate, const BoundingIntensity& bound,
                  double x0, Direction theta0, const Horizon& horizon, RngStream& rng,
                  TrajectoryWriter* dump,
                  std::uint64_t& proposals, std::uint64_t& accepted,
                  OnMove&& on_move, OnSwitch&& on_switch, OnFinish&& on_finish) {
    double t = 0.0;
    double x = x0;
    Direction theta = theta0;

    for (;;) {
        const double z = rng.exponential();
        const BoundingIntensity::Step step = bound.draw(z, x, theta);
        if (horizon.kind == Horizon::Kind::time && t + step.tau > horizon.t_end) {
            const double x_end = x + (horizon.t_end - t) * theta.sign();
            on_move(t, horizon.t_end, x, theta);
            if (dump) dump->on_horizon(horizon.t_end, x_end, theta);
            on_finish(horizon.t_end, x_end, theta);
            return;
        }
        const double t_next = t + step.tau;
        on_move(t, t_next, x, theta);
        x += (t_next - t) * theta.sign();
        t = t_next;
        if (!step.is_proposal) {
            continue; // window edge: re-anchor the bound and go again
        }
        ++proposals;
        const double lam = switching_rate(rate, x, theta);
        const double ratio = lam / step.bound_at_tau;
        if (ratio > 1.0 + 1e-12) {
            throw bound_violation_error("thinning bound violated at runtime", t, x,
                                        theta.as_int());
        }
        const double u = rng.uniform();
        if (u <= ratio) {
            theta.flip();
            ++accepted;
            on_switch(t, x, theta);
            if (dump) dump->on_switch(t, x, theta);
            if (horizon.kind == Horizon::Kind::switches && accepted >= horizon.max_switches) {
                on_finish(t, x, theta);
                return;
            }
        } else if (dump) {
            dump->on_rejected(t, x, theta);
        }
        if (proposals >= kMaxProposalsPerTrajectory) {
            throw no_switch_error("iteration cap reached in simulate_thinned");
        }
    }
}

} // namespace

EventChain simulate_thinned(const SwitchingRate& rate, const BoundingIntensity& bound,
                            double x0, Direction theta0, const Horizon& horizon,
                            RngStream& rng, TrajectoryWriter* dump) {
    validate_domination(rate, bound);

    EventChain chain;
    chain.events.push_back({0.0, x0, theta0});
    if (horizon.kind == Horizon::Kind::switches && horizon.max_switches == 0) {
        return chain;
    }

    thinned_loop(
        rate, bound, x0, theta0, horizon, rng, dump,
        chain.proposals, chain.accepted,
        [](double, double, double, Direction) {},
        [&chain](double t, double x, Direction theta) {
            chain.events.push_back({t, x, theta});
        },
        [&chain](double t, double, Direction) { chain.final_time = t; });
    // spec convention: thinning cost is counted per proposal
    chain.grad_evals = chain.proposals;
    return chain;
}

TerminalState simulate_thinned_terminal(const SwitchingRate& rate,
                                        const BoundingIntensity& bound,
                                        double x0, Direction theta0, double t_end,
                                        RngStream& rng) {
    TerminalState out{x0, theta0, 0, 0, 0};
    thinned_loop(
        rate, bound, x0, theta0, Horizon::until_time(t_end), rng, nullptr,
        out.proposals, out.accepted,
        [](double, double, double, Direction) {},
        [](double, double, Direction) {},
        [&out](double, double x, Direction theta) {
            out.x = x;
            out.theta = theta;
        });
    out.grad_evals = out.proposals;
    return out;
}

std::vector<double> simulate_thinned_positions(const SwitchingRate& rate,
                                               const BoundingIntensity& bound,
                                               double x0, Direction theta0,
                                               const std::vector<double>& times,
                                               RngStream& rng) {
    if (times.empty()) return {};
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= 0.0 || (i > 0 && times[i] <= times[i - 1])) {
            throw domain_error("checkpoint times must be positive and increasing");
        }
    }
    std::vector<double> positions;
    positions.reserve(times.size());
    std::size_t next = 0;
    std::uint64_t proposals = 0, accepted = 0;
    thinned_loop(
        rate, bound, x0, theta0, Horizon::until_time(times.back()), rng, nullptr,
        proposals, accepted,
        [&](double t_old, double t_new, double x, Direction theta) {
            while (next < times.size() && times[next] <= t_new) {
                positions.push_back(x + (times[next] - t_old) * theta.sign());
                ++next;
            }
        },
        [](double, double, Direction) {},
        [&](double, double x_end, Direction) {
            while (next < times.size()) {
                positions.push_back(x_end);
                ++next;
            }
        });
    return positions;
}

} // namespace zigzag
