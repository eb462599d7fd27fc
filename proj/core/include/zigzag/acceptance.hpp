#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zigzag {

// The verification suite: ten numbered checks pinning the library's closed
// forms, Monte Carlo behaviour, and reproducibility guarantees. The full
// profile runs the desk-scale replication counts; quick runs 10x fewer
// replicates with correspondingly widened tolerances.
struct AcceptanceOptions {
    bool quick = false;
    unsigned threads = 0; // 0: auto
    std::uint64_t master_seed = 20170904;
    std::string scratch_dir; // for the determinism check; empty: temp dir
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

CriterionResult run_acceptance_criterion(int id, const AcceptanceOptions& options);

// Runs criteria 1..10 in order, streaming one "PASS/FAIL criterion" line
// per check to `progress`. Returns all results.
std::vector<CriterionResult> run_all_acceptance(const AcceptanceOptions& options,
                                                std::ostream& progress);

} // namespace zigzag
