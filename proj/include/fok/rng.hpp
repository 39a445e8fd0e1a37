#pragma once
// Deterministic counter-style random streams (splitmix64).
//
// The standard <random> distributions are implementation-defined, so logs
// produced with them would not replay across toolchains. This generator is
// fully pinned: same seed, same platform-independent sequence.
//
// Streams form a tree. derive(key) yields an independent child stream whose
// identity depends only on (parent seed, key), never on how much the parent
// has been consumed. Simulation code derives one child per stimulus, per
// phase, per attempt, so paired runs that share a seed consume identical
// numbers at identical points even when one run resolves earlier (common
// random numbers).

#include <cstdint>

namespace fok {

class RngStream {
public:
    explicit RngStream(uint64_t seed) : seed_(seed), state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform double in [0, 1), 53 usable bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    // Independent child stream; stable under parent consumption.
    RngStream derive(uint64_t key) const {
        return RngStream(mix(seed_ ^ mix(key + 0x9e3779b97f4a7c15ULL)));
    }

    uint64_t seed() const { return seed_; }

    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    uint64_t seed_;
    uint64_t state_;
};

// Seed for run `run_index` of sweep point `point_index` under `base_seed`.
inline uint64_t derived_seed(uint64_t base_seed, uint64_t point_index, uint64_t run_index) {
    return RngStream(base_seed).derive(point_index).derive(run_index).seed();
}

} // namespace fok
