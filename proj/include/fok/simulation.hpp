#pragma once
// Scenario execution and log analysis.
//
// run_scenario plays every stimulus episode through the full chain:
//   stimulus_on -> classified -> hormonal_onset + fast_action
//   -> implicit loop -> recalled, or implicit_timeout -> fok
//   -> explicit loop (hints, mood-modulated fidelity) -> recalled
//   -> slow_action + consolidated
// Classification gates only the emotional side (hormonal onset, fast
// action, nonzero background); the recall loops run for every stimulus.
// The log is totally ordered by (t, emission order) and deterministic in
// (config, seed).

#include <optional>
#include <string>
#include <vector>

#include "fok/event_log.hpp"
#include "fok/scenario.hpp"

namespace fok {

EventLog run_scenario(const ScenarioConfig& config);

// Parse a JSON Lines log back into events. Errors carry the line number.
EventLog parse_event_log(const std::string& jsonl_text);

struct EpisodeSummary {
    std::string stimulus;
    int episode = 0;
    bool recalled = false;
    std::string status; // recalled_implicit | recalled_explicit | empty
    std::optional<double> recall_latency_s;
    int attempts = 0;
    bool fok = false;
    double fok_strength = 0.0;
    std::optional<double> fast_latency_s;
    std::optional<double> slow_latency_s;
};

struct Summary {
    std::vector<EpisodeSummary> episodes;
    int64_t episode_count = 0;
    int64_t recalled_count = 0;
    int64_t fok_count = 0;
    double recall_rate = 0.0;
    std::optional<double> mean_recall_latency_s;
    std::optional<double> mean_b_at_recall;
};

// Pure fold over the log; same log, same summary.
Summary summarize(const EventLog& log);

std::string to_json(const Summary& summary);

// Checks the causal ordering rules on a log (classified before hormonal
// onset before fast action; timeout before fok before explicit attempts;
// at least one attempt before every recall; recall before slow action
// before consolidation; timestamps non-decreasing). Throws Error.
void check_causal_order(const EventLog& log);

} // namespace fok
