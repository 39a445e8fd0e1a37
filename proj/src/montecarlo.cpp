#include "fok/montecarlo.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fok {

namespace {

bool recall_trial(const MemoryCell& cell, const CueSpec& spec, const RngStream& root, int64_t trial) {
    RngStream rng = root.derive(static_cast<uint64_t>(trial));
    const Cue cue = make_cue(cell.trace, spec, rng);
    return retrieve(cell, cue).recalled();
}

bool loop_trial(const MemoryCell& cell, const CueSpec& spec, const LoopConfig& cfg, const RngStream& root,
                int64_t trial) {
    RngStream rng = root.derive(static_cast<uint64_t>(trial));
    return run_implicit_loop(cell, spec, cfg, rng, 0.0).status == LoopStatus::recalled_implicit;
}

} // namespace

McEstimate mc_recall_rate_serial(const MemoryCell& cell, const CueSpec& spec, int64_t trials, uint64_t seed) {
    const RngStream root(seed);
    int64_t hits = 0;
    for (int64_t i = 0; i < trials; ++i) {
        hits += recall_trial(cell, spec, root, i);
    }
    return McEstimate{hits, trials};
}

McEstimate mc_recall_rate(const MemoryCell& cell, const CueSpec& spec, int64_t trials, uint64_t seed) {
    const RngStream root(seed);
    int64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (int64_t i = 0; i < trials; ++i) {
        hits += recall_trial(cell, spec, root, i);
    }
    return McEstimate{hits, trials};
}

McEstimate mc_loop_success_rate_serial(const MemoryCell& cell, const CueSpec& spec, const LoopConfig& cfg,
                                       int64_t trials, uint64_t seed) {
    const RngStream root(seed);
    int64_t hits = 0;
    for (int64_t i = 0; i < trials; ++i) {
        hits += loop_trial(cell, spec, cfg, root, i);
    }
    return McEstimate{hits, trials};
}

McEstimate mc_loop_success_rate(const MemoryCell& cell, const CueSpec& spec, const LoopConfig& cfg,
                                int64_t trials, uint64_t seed) {
    const RngStream root(seed);
    int64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (int64_t i = 0; i < trials; ++i) {
        hits += loop_trial(cell, spec, cfg, root, i);
    }
    return McEstimate{hits, trials};
}

} // namespace fok
