#include "fok/simulation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fok/affect.hpp"
#include "fok/metamemory.hpp"

namespace fok {

namespace {

// Stream-tree keys under the per-scenario root.
constexpr uint64_t kBankStream = 1;
constexpr uint64_t kStimulusStream = 2;
constexpr uint64_t kClassPhase = 0;
constexpr uint64_t kImplicitPhase = 1;
constexpr uint64_t kExplicitPhase = 2;

struct Emitter {
    std::vector<Event> events;

    Payload base(const std::string& stimulus, int episode) {
        Payload p;
        p.add("stimulus", stimulus).add("episode", episode);
        return p;
    }

    void emit(double t, EventKind kind, Payload payload) {
        events.push_back(Event{t, kind, std::move(payload)});
    }
};

} // namespace

EventLog run_scenario(const ScenarioConfig& config) {
    config.validate();

    const RngStream root(config.seed);
    const RngStream bank_root = root.derive(kBankStream);
    const RngStream stim_root = root.derive(kStimulusStream);

    std::vector<BankCell> bank;
    std::map<std::string, size_t> bank_index;
    for (size_t j = 0; j < config.category_bank.size(); ++j) {
        const auto& e = config.category_bank[j];
        RngStream trace_rng = bank_root.derive(j);
        Trace trace = e.trace ? Trace(*e.trace) : Trace::random(config.n, trace_rng);
        bank.push_back(BankCell{store_trace(e.id, std::move(trace), config.theta),
                                EmotionalCategory{e.category, e.action, e.innate}});
        bank_index.emplace(e.id, j);
    }

    MetamemoryRegistry registry;
    for (const auto& id : config.metamemory) {
        registry.register_entry(id, bank[bank_index.at(id)].cell);
    }

    const LoopConfig loop_cfg{config.f, config.t0, config.t_explicit_max};
    std::map<std::string, double> baseline;
    std::map<std::string, int> episode_counter;
    Emitter out;

    for (size_t i = 0; i < config.stimuli.size(); ++i) {
        const StimulusConfig& st = config.stimuli[i];
        const std::string& id = st.stimulus_id;
        const int episode = episode_counter[id]++;
        const BankCell& bc = bank[bank_index.at(id)];
        const MemoryCell& cell = bc.cell;
        const RngStream s_rng = stim_root.derive(i);

        const auto seeded = baseline.emplace(id, st.p_base);
        const double p_base = seeded.first->second;

        out.emit(st.at, EventKind::stimulus_on,
                 out.base(id, episode).add("duration", st.duration).add("p_base", p_base));
        out.emit(st.at + st.duration, EventKind::stimulus_off, out.base(id, episode));

        // Emotional recognition of the sensory pattern.
        RngStream class_rng = s_rng.derive(kClassPhase);
        const Cue class_cue = make_cue(cell.trace, CueSpec{config.noise_model, st.p_class}, class_rng);
        const auto recognized = classify_stimulus(bank, class_cue);

        std::optional<EmotionalState> mood;
        if (recognized) {
            out.emit(st.at, EventKind::classified,
                     out.base(id, episode)
                         .add("category", recognized->category.category_id)
                         .add("overlap", recognized->overlap));
            const auto& src = config.category_bank[bank_index.at(recognized->cell_id)];
            mood = trigger_hormonal_response(recognized->category, st.at, src.b0, src.tau_b);
            out.emit(st.at, EventKind::hormonal_onset,
                     out.base(id, episode)
                         .add("category", recognized->category.category_id)
                         .add("b0", src.b0)
                         .add("tau_b", src.tau_b));
            const Action fast = fast_behavior(recognized->category, st.at, config.t_fast);
            out.emit(fast.t_emitted, EventKind::fast_action,
                     out.base(id, episode).add("action", fast.label).add("latency", fast.latency));
        }

        const auto level_at = [&](double t) { return mood ? mood->level(t) : 0.0; };

        // Unconscious retrieval attempts up to t0.
        const CueSpec spec{config.noise_model, p_base};
        RngStream impl_rng = s_rng.derive(kImplicitPhase);
        const LoopOutcome implicit = run_implicit_loop(
            cell, spec, loop_cfg, impl_rng, st.at, [&](const AttemptInfo& a) {
                out.emit(a.t, EventKind::implicit_attempt,
                         out.base(id, episode)
                             .add("attempt", a.index)
                             .add("p", a.p_base)
                             .add("overlap", a.overlap)
                             .add("recalled", a.recalled));
            });

        if (implicit.status == LoopStatus::recalled_implicit) {
            out.emit(implicit.t_end, EventKind::recalled,
                     out.base(id, episode)
                         .add("status", to_string(implicit.status))
                         .add("attempts", implicit.attempts)
                         .add("latency", implicit.t_end - st.at)
                         .add("b", level_at(implicit.t_end)));
            continue; // fluent: resolved before anything became conscious
        }

        out.emit(implicit.t_end, EventKind::implicit_timeout,
                 out.base(id, episode).add("attempts", implicit.attempts));

        const auto ident = registry.identify(id);
        const FokSignal fok = fok_assess(ident, implicit, level_at(implicit.t_end), implicit.t_end);
        if (fok.present) {
            out.emit(fok.assessed_at, EventKind::fok, out.base(id, episode).add("strength", fok.strength));
        }

        RngStream expl_rng = s_rng.derive(kExplicitPhase);
        const LoopOutcome explicit_out = run_explicit_loop(
            cell, spec, loop_cfg, st.hints, mood ? &*mood : nullptr, config.g, implicit, expl_rng,
            implicit.t_end,
            [&](const AttemptInfo& a) {
                out.emit(a.t, EventKind::explicit_attempt,
                         out.base(id, episode)
                             .add("attempt", a.index)
                             .add("p", a.p_base)
                             .add("p_effective", a.p_effective)
                             .add("b", a.b)
                             .add("overlap", a.overlap)
                             .add("recalled", a.recalled));
            },
            [&](const Hint& h, double p_after) {
                out.emit(h.at, EventKind::hint_applied,
                         out.base(id, episode).add("delta_p", h.delta_p).add("p_base", p_after));
            });

        if (explicit_out.status != LoopStatus::recalled_explicit) {
            continue; // unresolved episode; the search just stops
        }

        const double b_recall = level_at(explicit_out.t_end);
        out.emit(explicit_out.t_end, EventKind::recalled,
                 out.base(id, episode)
                     .add("status", to_string(explicit_out.status))
                     .add("attempts", explicit_out.attempts)
                     .add("latency", explicit_out.t_end - st.at)
                     .add("b", b_recall));

        const Action slow = slow_behavior(explicit_out, st.plan, explicit_out.t_end, st.at);
        out.emit(slow.t_emitted, EventKind::slow_action,
                 out.base(id, episode).add("action", slow.label).add("latency", slow.latency));

        const Consolidation cons = consolidate(cell, explicit_out, b_recall, config.delta_c, p_base);
        baseline[id] = cons.p_base_new;
        out.emit(explicit_out.t_end, EventKind::consolidated,
                 out.base(id, episode)
                     .add("p_base_old", cons.p_base_old)
                     .add("p_base_new", cons.p_base_new)
                     .add("b", b_recall));
    }

    std::stable_sort(out.events.begin(), out.events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
    return EventLog{std::move(out.events)};
}

namespace {

using Json = nlohmann::ordered_json;

struct EpisodeKey {
    std::string stimulus;
    int episode;
    bool operator<(const EpisodeKey& other) const {
        return stimulus < other.stimulus || (stimulus == other.stimulus && episode < other.episode);
    }
};

const Payload::Value* find_value(const Payload& p, const std::string& key) {
    for (const auto& [k, v] : p.items()) {
        if (k == key) return &v;
    }
    return nullptr;
}

std::string payload_string(const Payload& p, const std::string& key) {
    const auto* v = find_value(p, key);
    if (!v) throw ParseError("payload is missing key '" + key + "'");
    if (const auto* s = std::get_if<std::string>(v)) return *s;
    throw ParseError("payload key '" + key + "' is not a string");
}

double payload_number(const Payload& p, const std::string& key) {
    const auto* v = find_value(p, key);
    if (!v) throw ParseError("payload is missing key '" + key + "'");
    if (const auto* d = std::get_if<double>(v)) return *d;
    if (const auto* i = std::get_if<int64_t>(v)) return static_cast<double>(*i);
    throw ParseError("payload key '" + key + "' is not a number");
}

EpisodeKey episode_key(const Event& e) {
    return EpisodeKey{payload_string(e.payload, "stimulus"),
                      static_cast<int>(payload_number(e.payload, "episode"))};
}

} // namespace

EventLog parse_event_log(const std::string& jsonl_text) {
    EventLog log;
    std::istringstream in(jsonl_text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Json doc;
        try {
            doc = Json::parse(line);
        } catch (const std::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!doc.is_object() || !doc.contains("t") || !doc.contains("kind") || !doc.contains("payload")) {
            throw ParseError("line " + std::to_string(line_no) + ": record must have t, kind and payload");
        }
        Event ev;
        if (!doc["t"].is_number()) {
            throw ParseError("line " + std::to_string(line_no) + ": t must be a number");
        }
        ev.t = doc["t"].get<double>();
        try {
            ev.kind = event_kind_from_string(doc["kind"].get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        const Json& payload = doc["payload"];
        if (!payload.is_object()) {
            throw ParseError("line " + std::to_string(line_no) + ": payload must be an object");
        }
        for (const auto& [key, value] : payload.items()) {
            if (value.is_string()) {
                ev.payload.add(key, value.get<std::string>());
            } else if (value.is_boolean()) {
                ev.payload.add(key, value.get<bool>());
            } else if (value.is_number_integer()) {
                ev.payload.add(key, value.get<int64_t>());
            } else if (value.is_number()) {
                ev.payload.add(key, value.get<double>());
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": payload key '" + key +
                                 "' has an unsupported type");
            }
        }
        log.events.push_back(std::move(ev));
    }
    return log;
}

Summary summarize(const EventLog& log) {
    std::map<EpisodeKey, EpisodeSummary> episodes;
    std::vector<EpisodeKey> order;

    for (const Event& e : log.events) {
        const EpisodeKey key = episode_key(e);
        if (!episodes.count(key)) {
            EpisodeSummary fresh;
            fresh.stimulus = key.stimulus;
            fresh.episode = key.episode;
            episodes[key] = std::move(fresh);
            order.push_back(key);
        }
        EpisodeSummary& ep = episodes[key];
        switch (e.kind) {
            case EventKind::implicit_attempt:
            case EventKind::explicit_attempt:
                ep.attempts += 1;
                break;
            case EventKind::fok:
                ep.fok = true;
                ep.fok_strength = payload_number(e.payload, "strength");
                break;
            case EventKind::fast_action:
                ep.fast_latency_s = payload_number(e.payload, "latency");
                break;
            case EventKind::slow_action:
                ep.slow_latency_s = payload_number(e.payload, "latency");
                break;
            case EventKind::recalled:
                ep.recalled = true;
                ep.status = payload_string(e.payload, "status");
                ep.recall_latency_s = payload_number(e.payload, "latency");
                break;
            default:
                break;
        }
    }

    Summary summary;
    double latency_sum = 0.0;
    double b_sum = 0.0;
    for (const Event& e : log.events) {
        if (e.kind == EventKind::recalled) {
            b_sum += payload_number(e.payload, "b");
        }
    }
    for (const auto& key : order) {
        const EpisodeSummary& ep = episodes[key];
        summary.episodes.push_back(ep);
        summary.episode_count += 1;
        if (ep.recalled) {
            summary.recalled_count += 1;
            latency_sum += ep.recall_latency_s.value_or(0.0);
        }
        if (ep.fok) summary.fok_count += 1;
    }
    if (summary.episode_count > 0) {
        summary.recall_rate =
            static_cast<double>(summary.recalled_count) / static_cast<double>(summary.episode_count);
    }
    if (summary.recalled_count > 0) {
        summary.mean_recall_latency_s = latency_sum / static_cast<double>(summary.recalled_count);
        summary.mean_b_at_recall = b_sum / static_cast<double>(summary.recalled_count);
    }
    return summary;
}

std::string to_json(const Summary& s) {
    Json doc;
    doc["episodes"] = Json::array();
    for (const auto& ep : s.episodes) {
        Json j;
        j["stimulus"] = ep.stimulus;
        j["episode"] = ep.episode;
        j["recalled"] = ep.recalled;
        if (ep.recalled) j["status"] = ep.status;
        if (ep.recall_latency_s) j["recall_latency_s"] = *ep.recall_latency_s;
        j["attempts"] = ep.attempts;
        j["fok"] = ep.fok;
        if (ep.fok) j["fok_strength"] = ep.fok_strength;
        if (ep.fast_latency_s) j["fast_latency_s"] = *ep.fast_latency_s;
        if (ep.slow_latency_s) j["slow_latency_s"] = *ep.slow_latency_s;
        doc["episodes"].push_back(std::move(j));
    }
    Json agg;
    agg["episodes"] = s.episode_count;
    agg["recalled"] = s.recalled_count;
    agg["recall_rate"] = s.recall_rate;
    if (s.mean_recall_latency_s) agg["mean_recall_latency_s"] = *s.mean_recall_latency_s;
    if (s.mean_b_at_recall) agg["mean_b_at_recall"] = *s.mean_b_at_recall;
    agg["fok_count"] = s.fok_count;
    doc["aggregate"] = std::move(agg);
    return doc.dump(2) + "\n";
}

void check_causal_order(const EventLog& log) {
    struct Positions {
        std::optional<size_t> classified, hormonal, fast, timeout, fok, first_explicit, first_attempt;
        std::optional<size_t> recalled, slow, consolidated;
    };
    std::map<EpisodeKey, Positions> by_episode;

    double prev_t = -1.0;
    for (size_t idx = 0; idx < log.events.size(); ++idx) {
        const Event& e = log.events[idx];
        if (e.t < prev_t) {
            throw Error("event log is not sorted by time at record " + std::to_string(idx));
        }
        prev_t = e.t;
        Positions& pos = by_episode[episode_key(e)];
        switch (e.kind) {
            case EventKind::classified: pos.classified = idx; break;
            case EventKind::hormonal_onset: pos.hormonal = idx; break;
            case EventKind::fast_action: pos.fast = idx; break;
            case EventKind::implicit_timeout: pos.timeout = idx; break;
            case EventKind::fok: pos.fok = idx; break;
            case EventKind::implicit_attempt:
                if (!pos.first_attempt) pos.first_attempt = idx;
                break;
            case EventKind::explicit_attempt:
                if (!pos.first_explicit) pos.first_explicit = idx;
                if (!pos.first_attempt) pos.first_attempt = idx;
                break;
            case EventKind::recalled:
                if (!pos.recalled) pos.recalled = idx;
                break;
            case EventKind::slow_action: pos.slow = idx; break;
            case EventKind::consolidated: pos.consolidated = idx; break;
            default: break;
        }
    }

    const auto require = [](bool ok, const std::string& what) {
        if (!ok) throw Error("causal order violated: " + what);
    };
    for (const auto& [key, pos] : by_episode) {
        const std::string where = key.stimulus + "#" + std::to_string(key.episode);
        if (pos.hormonal) require(pos.classified && *pos.classified < *pos.hormonal,
                                  where + ": classified must precede hormonal_onset");
        if (pos.fast) require(pos.hormonal && *pos.hormonal < *pos.fast,
                              where + ": hormonal_onset must precede fast_action");
        if (pos.fok) require(pos.timeout && *pos.timeout < *pos.fok,
                             where + ": implicit_timeout must precede fok");
        if (pos.first_explicit && pos.fok) {
            require(*pos.fok < *pos.first_explicit, where + ": fok must precede explicit attempts");
        }
        if (pos.recalled) {
            require(pos.first_attempt && *pos.first_attempt < *pos.recalled,
                    where + ": recall requires a preceding attempt");
        }
        if (pos.slow) require(pos.recalled && *pos.recalled < *pos.slow,
                              where + ": recalled must precede slow_action");
        if (pos.consolidated) require(pos.slow && *pos.slow < *pos.consolidated,
                                      where + ": slow_action must precede consolidated");
    }
}

} // namespace fok
