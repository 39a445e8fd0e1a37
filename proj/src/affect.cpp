#include "fok/affect.hpp"

#include <cmath>

#include "fok/metamemory.hpp"
#include "fok/recall_loops.hpp"

namespace fok {

double EmotionalState::level(double t) const {
    if (t < onset) return 0.0;
    return b0 * std::exp(-(t - onset) / tau_b);
}

EmotionalState make_emotional_state(double b0, double tau_b, double onset, EmotionalCategory category) {
    if (!(b0 >= 0.0 && b0 <= 1.0)) {
        throw RangeError("background peak b0 must be in [0,1]");
    }
    if (!(tau_b > 0.0)) {
        throw RangeError("background decay constant tau_b must be > 0");
    }
    return EmotionalState{b0, tau_b, onset, std::move(category)};
}

std::optional<Classification> classify_stimulus(const std::vector<BankCell>& bank, const Cue& stimulus_cue) {
    std::optional<Classification> best;
    for (const auto& entry : bank) {
        const RetrievalOutcome out = retrieve(entry.cell, stimulus_cue);
        if (!out.recalled()) continue;
        const bool better = !best || out.overlap > best->overlap ||
                            (out.overlap == best->overlap && entry.cell.cell_id < best->cell_id);
        if (better) {
            best = Classification{entry.category, entry.cell.cell_id, out.overlap};
        }
    }
    return best;
}

EmotionalState trigger_hormonal_response(const EmotionalCategory& category, double t, double b0, double tau_b) {
    return make_emotional_state(b0, tau_b, t, category);
}

Action fast_behavior(const EmotionalCategory& category, double t_stimulus, double t_fast) {
    if (!(t_fast >= 0.0)) {
        throw RangeError("fast-path latency must be >= 0");
    }
    return Action{category.stereotyped_action, Pathway::fast_stereotyped, t_stimulus + t_fast, t_fast};
}

double modulate_cue(double p_base, double b, double g) {
    if (!(p_base >= 0.0 && p_base <= 1.0)) throw RangeError("p_base must be in [0,1]");
    if (!(b >= 0.0 && b <= 1.0)) throw RangeError("background level b must be in [0,1]");
    if (!(g >= 0.0 && g <= 1.0)) throw RangeError("attention gain g must be in [0,1]");
    const double boosted = p_base + g * b * (1.0 - p_base);
    return boosted < 1.0 ? boosted : 1.0;
}

Consolidation consolidate(const MemoryCell&, const LoopOutcome& recall, double b, double delta_c,
                          double p_base) {
    (void)recall; // any resolved outcome qualifies
    if (!(b >= 0.0 && b <= 1.0)) throw RangeError("background level b must be in [0,1]");
    if (!(delta_c >= 0.0)) throw RangeError("consolidation step delta_c must be >= 0");
    if (!(p_base >= 0.0 && p_base <= 1.0)) throw RangeError("p_base must be in [0,1]");
    const double raised = p_base + delta_c * b;
    return Consolidation{p_base, raised < 1.0 ? raised : 1.0};
}

Action slow_behavior(const LoopOutcome& recall, const std::string& plan, double t, double t_stimulus) {
    if (recall.status != LoopStatus::recalled_explicit) {
        throw ContractError("slow behavior requires a conscious (explicit) recall");
    }
    if (t < recall.t_end) {
        throw ContractError("slow behavior cannot precede the recall that triggers it");
    }
    return Action{plan, Pathway::slow_planned, t, t - t_stimulus};
}

Action slow_behavior(const FokSignal& fok, const std::string& plan, double t, double t_stimulus) {
    if (!fok.present) {
        throw ContractError("slow behavior requires a felt feeling-of-knowing");
    }
    if (t < fok.assessed_at) {
        throw ContractError("slow behavior cannot precede the feeling that triggers it");
    }
    return Action{plan, Pathway::slow_planned, t, t - t_stimulus};
}

} // namespace fok
