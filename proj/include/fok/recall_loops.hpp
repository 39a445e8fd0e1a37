#pragma once
// The two recall loops around a memory cell.
//
// Implicit loop: unconscious retries at frequency f against a fixed cue
// fidelity, up to the characteristic deadline t0. Every attempt draws fresh
// noise; the stable part of the memory lives in the fidelity p, not in any
// particular damaged cue.
//
// Explicit loop: conscious continuation after an implicit timeout. Attempts
// keep the same rhythm but the fidelity is re-derived before each one:
// accumulated hints raise the base, and the emotional background b(t)
// contributes an attention boost through modulate_cue.

#include <functional>
#include <vector>

#include "fok/affect.hpp"
#include "fok/memory_core.hpp"
#include "fok/rng.hpp"

namespace fok {

struct LoopConfig {
    double f = 1.0;              // attempts per second, > 0
    double t0 = 1.0;             // implicit deadline, > 0; floor(f*t0) >= 1
    double t_explicit_max = 0.0; // explicit-phase deadline, >= 0

    void validate() const;
};

struct Hint {
    double at = 0.0;      // simulation time
    double delta_p = 0.0; // increment to base cue fidelity, >= 0
};

enum class LoopStatus : uint8_t { recalled_implicit, recalled_explicit, timeout };

std::string to_string(LoopStatus status);

struct LoopOutcome {
    LoopStatus status = LoopStatus::timeout;
    double t_end = 0.0; // resolution time (recall time, or the deadline)
    int attempts = 0;
    // Base fidelity per attempt (hint-accumulated, before mood modulation);
    // non-decreasing and piecewise constant between hints.
    std::vector<double> p_trajectory;
};

struct AttemptInfo {
    int index = 0; // 1-based within the phase
    double t = 0.0;
    double p_base = 0.0;      // trajectory value
    double p_effective = 0.0; // after mood modulation (== p_base implicitly)
    double b = 0.0;           // background at attempt time
    int overlap = 0;
    bool recalled = false;
};

using AttemptObserver = std::function<void(const AttemptInfo&)>;
using HintObserver = std::function<void(const Hint&, double p_base_after)>;

// floor(f*t) with a small slack against FP products like 10*0.7.
int attempts_within(double f, double t);

// Probability of at least one success among floor(f*t_deadline) independent
// per-attempt draws: 1 - (1-p_single)^floor(f*t_deadline).
double loop_success_probability(double p_single, double f, double t_deadline);

// Attempts at t_start + k/f for k = 0 .. floor(f*t0)-1; first recall wins.
LoopOutcome run_implicit_loop(const MemoryCell& cell, const CueSpec& spec, const LoopConfig& cfg,
                              RngStream& rng, double t_start, const AttemptObserver& on_attempt = {});

// Attempts at t_start + k/f for k = 1 .. floor(f*t_explicit_max), strictly
// after the implicit deadline. Requires the implicit outcome to be a
// timeout (ContractError otherwise). Hints earlier than t_start are a
// ConfigError. `mood` may be nullptr for an affectless run.
LoopOutcome run_explicit_loop(const MemoryCell& cell, const CueSpec& base_spec, const LoopConfig& cfg,
                              const std::vector<Hint>& hints, const EmotionalState* mood,
                              double attention_gain, const LoopOutcome& implicit_outcome, RngStream& rng,
                              double t_start, const AttemptObserver& on_attempt = {},
                              const HintObserver& on_hint = {});

} // namespace fok
