#pragma once
// Scenario configuration: the JSON schema driving a simulation run, plus
// the builtin scenarios.
//
// A scenario wires three things together around one shared trace space:
//   - category_bank: one memory cell per entry, carrying both the stored
//     trace and the emotional response attached to it (category, action,
//     b0, tau_b). Bank entry ids double as stimulus ids.
//   - stimuli: timed episodes. `p_base` is the recall cue fidelity for the
//     implicit/explicit loops; `p_class` (default 1) is the fidelity of the
//     sensory cue used for classification, kept separate so a word can be
//     emotionally unmistakable yet hard to retrieve.
//   - metamemory: the stimulus ids that have a reference trace registered,
//     i.e. the items the agent would feel that it knows.
//
// When the same stimulus id appears in several episodes, a per-id baseline
// table carries consolidation effects forward: the first episode seeds the
// table with its p_base, later episodes read the (possibly raised) value.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fok/memory_core.hpp"
#include "fok/recall_loops.hpp"

namespace fok {

struct BankEntryConfig {
    std::string id;
    std::string category;
    std::string action; // stereotyped fast action of the category
    bool innate = false;
    double b0 = 0.0;
    double tau_b = 1.0;
    std::optional<std::vector<int8_t>> trace; // explicit trace; generated from the seed if absent
};

struct StimulusConfig {
    double at = 0.0;
    std::string stimulus_id; // references a bank entry
    double p_base = 1.0;
    double duration = 0.0;
    double p_class = 1.0;
    std::string plan = "proceed"; // slow-action label on conscious recall
    std::vector<Hint> hints;
};

struct ScenarioConfig {
    uint64_t seed = 0;
    int n = 1;
    NoiseModel noise_model = NoiseModel::flip;
    double theta = 0.0;
    double f = 1.0;
    double t0 = 1.0;
    double t_explicit_max = 0.0;
    double t_fast = 0.05;
    double g = 0.0;
    double delta_c = 0.0;
    std::vector<BankEntryConfig> category_bank;
    std::vector<StimulusConfig> stimuli;
    std::vector<std::string> metamemory;

    // Throws ConfigError naming the offending field.
    void validate() const;
};

ScenarioConfig parse_scenario_config(const std::string& json_text);
ScenarioConfig load_scenario_config(const std::string& path_or_builtin_name);
std::string to_json(const ScenarioConfig& config);

std::optional<ScenarioConfig> builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

} // namespace fok
