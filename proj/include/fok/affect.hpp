#pragma once
// Emotional machinery: stimulus classification against a cell bank, the
// hormonal response with its decaying background intensity b(t), the fast
// stereotyped behavior path, attention-driven cue modulation, consolidation
// of recall baselines, and slow planned behavior.
//
// The background b is the single scalar through which emotion touches
// cognition here: it scales the attention boost applied to cue fidelity
// during explicit recall, the felt strength of a feeling-of-knowing, and
// the size of the consolidation step. It never switches any pathway on or
// off; with b0 = 0 the same chains run with zero boost.

#include <optional>
#include <string>
#include <vector>

#include "fok/errors.hpp"
#include "fok/memory_core.hpp"

namespace fok {

struct LoopOutcome; // recall_loops.hpp
struct FokSignal;   // metamemory.hpp

struct EmotionalCategory {
    std::string category_id;
    std::string stereotyped_action; // one fixed action per category
    bool innate = false;
};

// Hormonal background: b(t) = b0 * exp(-(t - onset) / tau_b) from onset on,
// zero before.
struct EmotionalState {
    double b0 = 0.0;
    double tau_b = 1.0;
    double onset = 0.0;
    EmotionalCategory category;

    double level(double t) const;
};

EmotionalState make_emotional_state(double b0, double tau_b, double onset, EmotionalCategory category);

enum class Pathway : uint8_t { fast_stereotyped, slow_planned };

struct Action {
    std::string label;
    Pathway pathway = Pathway::fast_stereotyped;
    double t_emitted = 0.0;
    double latency = 0.0; // seconds since stimulus onset
};

struct BankCell {
    MemoryCell cell;
    EmotionalCategory category;
};

struct Classification {
    EmotionalCategory category;
    std::string cell_id;
    int overlap = 0;
};

// Run the cue against every bank cell; return the category of the recalled
// cell with the highest overlap (ties to the lowest cell_id), or nullopt if
// no cell recalls.
std::optional<Classification> classify_stimulus(const std::vector<BankCell>& bank, const Cue& stimulus_cue);

// Immediate hormonal onset for a recognized category.
EmotionalState trigger_hormonal_response(const EmotionalCategory& category, double t, double b0, double tau_b);

// Fast unconscious action: the category's stereotyped action, emitted a
// fixed latency after stimulus onset.
Action fast_behavior(const EmotionalCategory& category, double t_stimulus, double t_fast);

// Attention boost on cue fidelity: p' = p + g*b*(1-p), so p' in [p, 1].
double modulate_cue(double p_base, double b, double g);

struct Consolidation {
    double p_base_old = 0.0;
    double p_base_new = 0.0;
};

// Raise the stimulus's baseline cue fidelity for future episodes by
// delta_c * b, clamped to 1. The stored trace itself never changes.
Consolidation consolidate(const MemoryCell& cell, const LoopOutcome& recall, double b, double delta_c,
                          double p_base);

// Slow planned action following a conscious recall (recalled_explicit).
Action slow_behavior(const LoopOutcome& recall, const std::string& plan, double t, double t_stimulus);

// Slow planned action following a felt feeling-of-knowing (e.g. "keep
// searching" while the word stays out of reach).
Action slow_behavior(const FokSignal& fok, const std::string& plan, double t, double t_stimulus);

} // namespace fok
