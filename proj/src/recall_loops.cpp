#include "fok/recall_loops.hpp"

#include <algorithm>
#include <cmath>

namespace fok {

void LoopConfig::validate() const {
    if (!(f > 0.0)) {
        throw RangeError("loop frequency f must be > 0");
    }
    if (!(t0 > 0.0)) {
        throw RangeError("implicit deadline t0 must be > 0");
    }
    if (attempts_within(f, t0) < 1) {
        throw RangeError("floor(f*t0) must be >= 1 (no implicit attempt fits)");
    }
    if (!(t_explicit_max >= 0.0)) {
        throw RangeError("explicit deadline t_explicit_max must be >= 0");
    }
}

std::string to_string(LoopStatus status) {
    switch (status) {
        case LoopStatus::recalled_implicit: return "recalled_implicit";
        case LoopStatus::recalled_explicit: return "recalled_explicit";
        case LoopStatus::timeout: return "timeout";
    }
    return "timeout";
}

int attempts_within(double f, double t) {
    const double m = std::floor(f * t + 1e-9);
    if (m > 1e9) {
        throw RangeError("f*t implies more than 1e9 attempts");
    }
    return m > 0.0 ? static_cast<int>(m) : 0;
}

double loop_success_probability(double p_single, double f, double t_deadline) {
    if (!(p_single >= 0.0 && p_single <= 1.0)) {
        throw RangeError("p_single must be in [0,1]");
    }
    if (!(f > 0.0) || !(t_deadline > 0.0)) {
        throw RangeError("frequency and deadline must be > 0");
    }
    const int m = attempts_within(f, t_deadline);
    return 1.0 - std::pow(1.0 - p_single, m);
}

LoopOutcome run_implicit_loop(const MemoryCell& cell, const CueSpec& spec, const LoopConfig& cfg,
                              RngStream& rng, double t_start, const AttemptObserver& on_attempt) {
    cfg.validate();
    spec.validate();

    const int max_attempts = attempts_within(cfg.f, cfg.t0);
    LoopOutcome out;
    out.p_trajectory.reserve(static_cast<size_t>(max_attempts));
    for (int k = 0; k < max_attempts; ++k) {
        const double t = t_start + k / cfg.f;
        RngStream attempt_rng = rng.derive(static_cast<uint64_t>(k));
        const Cue cue = make_cue(cell.trace, spec, attempt_rng);
        const RetrievalOutcome res = retrieve(cell, cue);
        out.attempts = k + 1;
        out.p_trajectory.push_back(spec.p);
        if (on_attempt) {
            on_attempt(AttemptInfo{k + 1, t, spec.p, spec.p, 0.0, res.overlap, res.recalled()});
        }
        if (res.recalled()) {
            out.status = LoopStatus::recalled_implicit;
            out.t_end = t;
            return out;
        }
    }
    out.status = LoopStatus::timeout;
    out.t_end = t_start + cfg.t0;
    return out;
}

LoopOutcome run_explicit_loop(const MemoryCell& cell, const CueSpec& base_spec, const LoopConfig& cfg,
                              const std::vector<Hint>& hints, const EmotionalState* mood,
                              double attention_gain, const LoopOutcome& implicit_outcome, RngStream& rng,
                              double t_start, const AttemptObserver& on_attempt,
                              const HintObserver& on_hint) {
    cfg.validate();
    base_spec.validate();
    if (implicit_outcome.status != LoopStatus::timeout) {
        throw ContractError("explicit recall starts only after an implicit timeout");
    }
    for (const Hint& h : hints) {
        if (h.at < t_start) {
            throw ConfigError("hint at t=" + std::to_string(h.at) +
                              " precedes the explicit phase start t=" + std::to_string(t_start));
        }
        if (!(h.delta_p >= 0.0)) {
            throw ConfigError("hint delta_p must be >= 0");
        }
    }

    std::vector<Hint> pending = hints;
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Hint& a, const Hint& b) { return a.at < b.at; });

    const int max_attempts = attempts_within(cfg.f, cfg.t_explicit_max);
    LoopOutcome out;
    double p_accum = base_spec.p;
    size_t next_hint = 0;
    for (int k = 1; k <= max_attempts; ++k) {
        const double t = t_start + k / cfg.f;
        while (next_hint < pending.size() && pending[next_hint].at <= t) {
            p_accum = std::min(1.0, p_accum + pending[next_hint].delta_p);
            if (on_hint) on_hint(pending[next_hint], p_accum);
            ++next_hint;
        }
        const double b = mood ? mood->level(t) : 0.0;
        const double p_eff = modulate_cue(p_accum, b, attention_gain);
        RngStream attempt_rng = rng.derive(static_cast<uint64_t>(k));
        const Cue cue = make_cue(cell.trace, CueSpec{base_spec.model, p_eff}, attempt_rng);
        const RetrievalOutcome res = retrieve(cell, cue);
        out.attempts = k;
        out.p_trajectory.push_back(p_accum);
        if (on_attempt) {
            on_attempt(AttemptInfo{k, t, p_accum, p_eff, b, res.overlap, res.recalled()});
        }
        if (res.recalled()) {
            out.status = LoopStatus::recalled_explicit;
            out.t_end = t;
            return out;
        }
    }
    out.status = LoopStatus::timeout;
    out.t_end = t_start + cfg.t_explicit_max;
    return out;
}

} // namespace fok
