#pragma once

#include <utility>
#include <vector>

#include "zigzag/event_chain.hpp"
#include "zigzag/observable.hpp"

namespace zigzag {

struct PathAverage {
    double value = 0.0;
    double total_time = 0.0;
    std::size_t segment_count = 0;
};

// Exact time average of x^p along the chain (per-segment antiderivatives).
PathAverage average_exact_moment(const EventChain& chain, int p);

// Exact time average of 1{x >= a}: per segment, the Lebesgue measure of the
// part of the segment at or above the threshold.
PathAverage average_exact_tail(const EventChain& chain, double a);

// Fixed-order Gauss-Legendre per linear segment; exact for polynomials of
// degree <= 2*order - 1.
PathAverage average_quadrature(const EventChain& chain, const Observable& f, int order = 8);

// Dispatch on the observable kind: exact for monomials and tail indicators
// (indicators never go through quadrature), Gauss-Legendre otherwise.
PathAverage path_average(const EventChain& chain, const Observable& f, int order = 8);

// pi_T(f) at each checkpoint, one pass over the chain.
std::vector<std::pair<double, double>>
running_average_series(const EventChain& chain, const Observable& f,
                       const std::vector<double>& checkpoints, int order = 8);

// Integral of f over the trajectory restricted to chain times [t0, t1].
double integrate_observable(const EventChain& chain, const Observable& f,
                            double t0, double t1, int order = 8);

} // namespace zigzag
