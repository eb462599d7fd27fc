#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "zigzag/event_chain.hpp"
#include "zigzag/rng.hpp"
#include "zigzag/target_model.hpp"

namespace zigzag {

// Forward integrated intensity G(t; x, theta) along a ray and its
// generalized inverse H(z; x, theta), both in closed form.
struct InverseIntensity {
    std::function<double(double /*z*/, double /*x*/, Direction)> inverse;
    std::function<double(double /*t*/, double /*x*/, Direction)> integral;
};

InverseIntensity make_gaussian_inverse(double variance);
InverseIntensity make_student_inverse(double dof);

// Dominating intensity for Poisson thinning. `constant` uses a global rate
// cap, `affine` uses max(0, theta U'(x) + L t); either may carry an excess
// rate component handled through per-window sups.
class BoundingIntensity {
public:
    enum class Kind { constant, affine };

    // K must dominate the full switching rate lambda = (theta U')^+ + gamma.
    static BoundingIntensity constant(double K);

    // Built from the target's hessian_bound; throws capability_error when the
    // bound is absent. The excess rate (scaled by `excess_scale`) is dominated
    // by its sup over a finite lookahead window that doubles the local value.
    static BoundingIntensity affine(const TargetModel& target,
                                    const ExcessRate& excess = ExcessRate::none(),
                                    double excess_scale = 1.0);

    Kind kind() const { return kind_; }

    // Lambda(t; x, theta); for affine bounds this is the value the thinning
    // loop compares against within the active window.
    double value(double t, double x, Direction theta) const;

    struct Step {
        double tau;          // candidate time, or window length when !is_proposal
        bool is_proposal;    // false: advance to the window edge and re-anchor
        double bound_at_tau; // Lambda(tau) for the acceptance ratio
    };
    Step draw(double z, double x, Direction theta) const;

private:
    BoundingIntensity() = default;

    Kind kind_ = Kind::constant;
    double cap_ = 0.0;    // constant kind
    double slope_ = 0.0;  // affine kind: L
    std::function<double(double)> grad_;          // affine kind
    std::function<double(double)> excess_value_;  // scaled gamma, may be null
    std::function<double(double, double)> excess_sup_;
    std::function<double(double, Direction)> window_; // lookahead length, inf if none
};

struct Horizon {
    enum class Kind { time, switches };
    Kind kind;
    double t_end = 0.0;
    std::uint64_t max_switches = 0;

    static Horizon until_time(double t);
    static Horizon until_switches(std::uint64_t n);
};

// Optional sink for the debug trajectory dump (CSV rows
// t,x,theta,event_kind with kind in {switch, proposal_rejected, horizon}).
class TrajectoryWriter {
public:
    explicit TrajectoryWriter(std::ostream& out);
    void on_switch(double t, double x, Direction theta);
    void on_rejected(double t, double x, Direction theta);
    void on_horizon(double t, double x, Direction theta);

private:
    std::ostream* out_;
};

// Algorithm: switch times by direct inversion; every event is a switch.
// The (rate, inverse) pair is spot-checked for consistency (dG/dt = lambda).
EventChain simulate_direct(const SwitchingRate& rate, const InverseIntensity& inverse,
                           double x0, Direction theta0, const Horizon& horizon,
                           RngStream& rng, TrajectoryWriter* dump = nullptr);

// Poisson thinning against a dominating intensity.
EventChain simulate_thinned(const SwitchingRate& rate, const BoundingIntensity& bound,
                            double x0, Direction theta0, const Horizon& horizon,
                            RngStream& rng, TrajectoryWriter* dump = nullptr);

struct TerminalState {
    double x;
    Direction theta;
    std::uint64_t proposals;
    std::uint64_t accepted;
    std::uint64_t grad_evals;
};

// Thinned run that keeps only the terminal state (no event storage);
// used for distribution-level comparisons over many replicates.
TerminalState simulate_thinned_terminal(const SwitchingRate& rate,
                                        const BoundingIntensity& bound,
                                        double x0, Direction theta0, double t_end,
                                        RngStream& rng);

// Positions X(t) at the requested (ascending, positive) times from a single
// thinned trajectory, without storing the event chain.
std::vector<double> simulate_thinned_positions(const SwitchingRate& rate,
                                               const BoundingIntensity& bound,
                                               double x0, Direction theta0,
                                               const std::vector<double>& times,
                                               RngStream& rng);

// Single switching time tau = H(-log u; x, theta).
double switching_time_direct(const InverseIntensity& inverse, double x, Direction theta,
                             double u);

} // namespace zigzag
