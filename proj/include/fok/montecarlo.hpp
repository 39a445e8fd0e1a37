#pragma once
// Monte Carlo estimators for the analytic formulas.
//
// Every trial owns a stream derived from (seed, trial index), so the
// OpenMP versions tally exactly the same successes as the serial
// references for any thread count, and results are reproducible run to
// run. These estimators are the empirical half of the dual checks against
// recall_probability and loop_success_probability.

#include <cstdint>

#include "fok/memory_core.hpp"
#include "fok/recall_loops.hpp"

namespace fok {

struct McEstimate {
    int64_t successes = 0;
    int64_t trials = 0;

    double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

// Fraction of fresh cues that recall the stored trace.
McEstimate mc_recall_rate(const MemoryCell& cell, const CueSpec& spec, int64_t trials, uint64_t seed);
McEstimate mc_recall_rate_serial(const MemoryCell& cell, const CueSpec& spec, int64_t trials, uint64_t seed);

// Fraction of implicit loops that recall within t0.
McEstimate mc_loop_success_rate(const MemoryCell& cell, const CueSpec& spec, const LoopConfig& cfg,
                                int64_t trials, uint64_t seed);
McEstimate mc_loop_success_rate_serial(const MemoryCell& cell, const CueSpec& spec, const LoopConfig& cfg,
                                       int64_t trials, uint64_t seed);

} // namespace fok
