#pragma once

#include <cstdint>
#include <vector>

#include "zigzag/target_model.hpp"

namespace zigzag {

struct Event {
    double time;
    double position;
    Direction direction;
};

// Complete sampler output: the initial state followed by every realized
// switch, the final clock value, and the event-cost counters.
struct EventChain {
    std::vector<Event> events;     // events.front() is the initial state
    double final_time = 0.0;       // >= events.back().time
    std::uint64_t proposals = 0;   // candidate switch events generated
    std::uint64_t accepted = 0;    // realized switches
    std::uint64_t grad_evals = 0;  // evaluations of U'

    std::size_t switch_count() const { return events.empty() ? 0 : events.size() - 1; }

    // number of linear pieces including the final partial segment
    std::size_t segment_count() const {
        if (events.empty()) return 0;
        const bool partial = final_time > events.back().time;
        return events.size() - 1 + (partial ? 1 : 0);
    }

    double total_time() const { return final_time; }
};

} // namespace zigzag
