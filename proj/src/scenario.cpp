#include "fok/scenario.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fok {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError(field + ": " + what);
}

const Json& member(const Json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object()) fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

double as_number(const Json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "expected a number");
    return v.get<double>();
}

std::string as_string(const Json& v, const std::string& field) {
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
}

double number_or(const Json& obj, const std::string& path, const std::string& key, double fallback) {
    if (!obj.is_object()) fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    return as_number(*it, path + "." + key);
}

void check_unit(double v, const std::string& field) {
    if (!(v >= 0.0 && v <= 1.0)) fail(field, "must be in [0,1]");
}

} // namespace

void ScenarioConfig::validate() const {
    if (n < 1) fail("n", "must be >= 1");
    if (!(theta >= 0.0 && theta < 1.0)) fail("theta", "must be in [0,1)");
    if (!(f > 0.0)) fail("f", "must be > 0");
    if (!(t0 > 0.0)) fail("t0", "must be > 0");
    if (attempts_within(f, t0) < 1) fail("t0", "floor(f*t0) must be >= 1");
    if (!(t_explicit_max >= 0.0)) fail("t_explicit_max", "must be >= 0");
    if (!(t_fast >= 0.0)) fail("t_fast", "must be >= 0");
    if (!(g >= 0.0 && g <= 1.0)) fail("g", "must be in [0,1]");
    if (!(delta_c >= 0.0)) fail("delta_c", "must be >= 0");

    std::map<std::string, size_t> bank_ids;
    std::map<std::string, std::string> category_action;
    for (size_t j = 0; j < category_bank.size(); ++j) {
        const auto& e = category_bank[j];
        const std::string where = "category_bank[" + std::to_string(j) + "]";
        if (e.id.empty()) fail(where + ".id", "must not be empty");
        if (!bank_ids.emplace(e.id, j).second) fail(where + ".id", "duplicate id '" + e.id + "'");
        if (e.category.empty()) fail(where + ".category", "must not be empty");
        if (e.action.empty()) fail(where + ".action", "must not be empty");
        if (!(e.b0 >= 0.0 && e.b0 <= 1.0)) fail(where + ".b0", "must be in [0,1]");
        if (!(e.tau_b > 0.0)) fail(where + ".tau_b", "must be > 0");
        const auto [it, fresh] = category_action.emplace(e.category, e.action);
        if (!fresh && it->second != e.action) {
            fail(where + ".action", "category '" + e.category + "' already maps to action '" + it->second + "'");
        }
        if (e.trace) {
            if (static_cast<int>(e.trace->size()) != n) {
                fail(where + ".trace", "length must equal n = " + std::to_string(n));
            }
            for (int8_t c : *e.trace) {
                if (c != 1 && c != -1) fail(where + ".trace", "components must be +1 or -1");
            }
        }
    }

    double prev_at = 0.0;
    for (size_t i = 0; i < stimuli.size(); ++i) {
        const auto& st = stimuli[i];
        const std::string where = "stimuli[" + std::to_string(i) + "]";
        if (!(st.at >= 0.0)) fail(where + ".at", "must be >= 0");
        if (i > 0 && st.at < prev_at) fail(where + ".at", "stimuli must be sorted by time");
        prev_at = st.at;
        if (!bank_ids.count(st.stimulus_id)) {
            fail(where + ".stimulus", "unknown bank entry '" + st.stimulus_id + "'");
        }
        check_unit(st.p_base, where + ".p_base");
        check_unit(st.p_class, where + ".p_class");
        if (!(st.duration >= 0.0)) fail(where + ".duration", "must be >= 0");
        if (st.plan.empty()) fail(where + ".plan", "must not be empty");
        double prev_hint = 0.0;
        for (size_t h = 0; h < st.hints.size(); ++h) {
            const auto& hint = st.hints[h];
            const std::string hwhere = where + ".hints[" + std::to_string(h) + "]";
            if (!(hint.delta_p >= 0.0)) fail(hwhere + ".delta_p", "must be >= 0");
            if (hint.at < st.at + t0) {
                fail(hwhere + ".at", "hint precedes the explicit phase (stimulus time + t0)");
            }
            if (h > 0 && hint.at < prev_hint) fail(hwhere + ".at", "hints must be sorted by time");
            prev_hint = hint.at;
        }
    }

    std::set<std::string> seen;
    for (size_t k = 0; k < metamemory.size(); ++k) {
        const std::string where = "metamemory[" + std::to_string(k) + "]";
        const auto& id = metamemory[k];
        if (!bank_ids.count(id)) fail(where, "unknown bank entry '" + id + "'");
        if (!seen.insert(id).second) fail(where, "duplicate entry '" + id + "'");
    }
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    ScenarioConfig cfg;
    const Json& seed = member(doc, "config", "seed");
    if (!seed.is_number_unsigned()) fail("seed", "must be a non-negative integer");
    cfg.seed = seed.get<uint64_t>();
    const Json& n = member(doc, "config", "n");
    if (!n.is_number_integer()) fail("n", "must be an integer");
    cfg.n = n.get<int>();
    try {
        cfg.noise_model = noise_model_from_string(as_string(member(doc, "config", "noise_model"), "noise_model"));
    } catch (const RangeError& e) {
        fail("noise_model", e.what());
    }
    cfg.theta = as_number(member(doc, "config", "theta"), "theta");
    cfg.f = as_number(member(doc, "config", "f"), "f");
    cfg.t0 = as_number(member(doc, "config", "t0"), "t0");
    cfg.t_explicit_max = as_number(member(doc, "config", "t_explicit_max"), "t_explicit_max");
    cfg.t_fast = number_or(doc, "config", "t_fast", 0.05);
    cfg.g = number_or(doc, "config", "g", 0.0);
    cfg.delta_c = number_or(doc, "config", "delta_c", 0.0);

    const Json& bank = member(doc, "config", "category_bank");
    if (!bank.is_array()) fail("category_bank", "expected an array");
    for (size_t j = 0; j < bank.size(); ++j) {
        const std::string where = "category_bank[" + std::to_string(j) + "]";
        const Json& e = bank[j];
        BankEntryConfig entry;
        entry.id = as_string(member(e, where, "id"), where + ".id");
        entry.category = as_string(member(e, where, "category"), where + ".category");
        entry.action = as_string(member(e, where, "action"), where + ".action");
        if (e.contains("innate")) {
            if (!e["innate"].is_boolean()) fail(where + ".innate", "expected a boolean");
            entry.innate = e["innate"].get<bool>();
        }
        entry.b0 = as_number(member(e, where, "b0"), where + ".b0");
        entry.tau_b = as_number(member(e, where, "tau_b"), where + ".tau_b");
        if (e.contains("trace")) {
            const Json& tr = e["trace"];
            if (!tr.is_array()) fail(where + ".trace", "expected an array of +1/-1");
            std::vector<int8_t> comps;
            comps.reserve(tr.size());
            for (const auto& c : tr) {
                if (!c.is_number_integer()) fail(where + ".trace", "expected an array of +1/-1");
                comps.push_back(static_cast<int8_t>(c.get<int>()));
            }
            entry.trace = std::move(comps);
        }
        cfg.category_bank.push_back(std::move(entry));
    }

    const Json& stimuli = member(doc, "config", "stimuli");
    if (!stimuli.is_array()) fail("stimuli", "expected an array");
    for (size_t i = 0; i < stimuli.size(); ++i) {
        const std::string where = "stimuli[" + std::to_string(i) + "]";
        const Json& s = stimuli[i];
        StimulusConfig st;
        st.at = as_number(member(s, where, "at"), where + ".at");
        st.stimulus_id = as_string(member(s, where, "stimulus"), where + ".stimulus");
        st.p_base = as_number(member(s, where, "p_base"), where + ".p_base");
        st.duration = as_number(member(s, where, "duration"), where + ".duration");
        st.p_class = number_or(s, where, "p_class", 1.0);
        if (s.contains("plan")) st.plan = as_string(s["plan"], where + ".plan");
        if (s.contains("hints")) {
            const Json& hints = s["hints"];
            if (!hints.is_array()) fail(where + ".hints", "expected an array");
            for (size_t h = 0; h < hints.size(); ++h) {
                const std::string hwhere = where + ".hints[" + std::to_string(h) + "]";
                const Json& hv = hints[h];
                Hint hint;
                hint.at = as_number(member(hv, hwhere, "at"), hwhere + ".at");
                hint.delta_p = as_number(member(hv, hwhere, "delta_p"), hwhere + ".delta_p");
                st.hints.push_back(hint);
            }
        }
        cfg.stimuli.push_back(std::move(st));
    }

    if (doc.contains("metamemory")) {
        const Json& mm = doc["metamemory"];
        if (!mm.is_array()) fail("metamemory", "expected an array of stimulus ids");
        for (size_t k = 0; k < mm.size(); ++k) {
            cfg.metamemory.push_back(as_string(mm[k], "metamemory[" + std::to_string(k) + "]"));
        }
    }

    cfg.validate();
    return cfg;
}

std::string to_json(const ScenarioConfig& cfg) {
    Json doc;
    doc["seed"] = cfg.seed;
    doc["n"] = cfg.n;
    doc["noise_model"] = to_string(cfg.noise_model);
    doc["theta"] = cfg.theta;
    doc["f"] = cfg.f;
    doc["t0"] = cfg.t0;
    doc["t_explicit_max"] = cfg.t_explicit_max;
    doc["t_fast"] = cfg.t_fast;
    doc["g"] = cfg.g;
    doc["delta_c"] = cfg.delta_c;
    doc["category_bank"] = Json::array();
    for (const auto& e : cfg.category_bank) {
        Json j;
        j["id"] = e.id;
        j["category"] = e.category;
        j["action"] = e.action;
        j["innate"] = e.innate;
        j["b0"] = e.b0;
        j["tau_b"] = e.tau_b;
        if (e.trace) {
            Json tr = Json::array();
            for (int8_t c : *e.trace) tr.push_back(static_cast<int>(c));
            j["trace"] = std::move(tr);
        }
        doc["category_bank"].push_back(std::move(j));
    }
    doc["stimuli"] = Json::array();
    for (const auto& s : cfg.stimuli) {
        Json j;
        j["at"] = s.at;
        j["stimulus"] = s.stimulus_id;
        j["p_base"] = s.p_base;
        j["duration"] = s.duration;
        j["p_class"] = s.p_class;
        j["plan"] = s.plan;
        if (!s.hints.empty()) {
            Json hints = Json::array();
            for (const auto& h : s.hints) {
                hints.push_back(Json{{"at", h.at}, {"delta_p", h.delta_p}});
            }
            j["hints"] = std::move(hints);
        }
        doc["stimuli"].push_back(std::move(j));
    }
    doc["metamemory"] = cfg.metamemory;
    return doc.dump(2) + "\n";
}

namespace {

ScenarioConfig chekhov_tot() {
    ScenarioConfig cfg;
    cfg.seed = 1;
    cfg.n = 64;
    cfg.noise_model = NoiseModel::flip;
    cfg.theta = 0.0;
    cfg.f = 2.0;
    cfg.t0 = 2.0;
    cfg.t_explicit_max = 86400.0;
    cfg.t_fast = 0.05;
    cfg.g = 0.2;
    cfg.delta_c = 0.2;
    cfg.category_bank = {
        BankEntryConfig{"word:surname", "recall-urgency", "fret", false, 0.9, 1800.0, std::nullopt},
    };
    StimulusConfig st;
    st.at = 0.0;
    st.stimulus_id = "word:surname";
    st.p_base = 0.02;
    st.duration = 5.0;
    st.plan = "answer-query";
    st.hints = {Hint{120.0, 0.03}, Hint{300.0, 0.03}, Hint{600.0, 1.0}};
    cfg.stimuli = {st};
    cfg.metamemory = {"word:surname"};
    return cfg;
}

ScenarioConfig fluent_speech() {
    ScenarioConfig cfg;
    cfg.seed = 1;
    cfg.n = 64;
    cfg.noise_model = NoiseModel::flip;
    cfg.theta = 0.0;
    cfg.f = 2.0;
    cfg.t0 = 1.0;
    cfg.t_explicit_max = 30.0;
    cfg.t_fast = 0.05;
    cfg.g = 0.2;
    cfg.delta_c = 0.0;
    for (int w = 1; w <= 5; ++w) {
        const std::string id = "word:w" + std::to_string(w);
        cfg.category_bank.push_back(BankEntryConfig{id, "speech", "articulate", false, 0.3, 60.0, std::nullopt});
        StimulusConfig st;
        st.at = 3.0 * (w - 1);
        st.stimulus_id = id;
        st.p_base = 0.85;
        st.duration = 2.0;
        st.plan = "continue-sentence";
        cfg.stimuli.push_back(std::move(st));
        cfg.metamemory.push_back(id);
    }
    return cfg;
}

ScenarioConfig fear_flash() {
    ScenarioConfig cfg;
    cfg.seed = 1;
    cfg.n = 64;
    cfg.noise_model = NoiseModel::flip;
    cfg.theta = 0.0;
    cfg.f = 10.0;
    cfg.t0 = 0.5;
    cfg.t_explicit_max = 0.0;
    cfg.t_fast = 0.05;
    cfg.g = 0.2;
    cfg.delta_c = 0.0;
    cfg.category_bank = {
        BankEntryConfig{"noise:bang", "threat", "startle", true, 1.0, 30.0, std::nullopt},
    };
    StimulusConfig st;
    st.at = 1.0;
    st.stimulus_id = "noise:bang";
    st.p_base = 0.0;
    st.duration = 0.1;
    st.plan = "assess-surroundings";
    cfg.stimuli = {st};
    cfg.metamemory = {"noise:bang"};
    return cfg;
}

ScenarioConfig overnight() {
    ScenarioConfig cfg;
    cfg.seed = 1;
    cfg.n = 64;
    cfg.noise_model = NoiseModel::flip;
    cfg.theta = 0.0;
    cfg.f = 2.0;
    cfg.t0 = 2.0;
    cfg.t_explicit_max = 7200.0;
    cfg.t_fast = 0.05;
    cfg.g = 0.6;
    cfg.delta_c = 0.6;
    cfg.category_bank = {
        BankEntryConfig{"word:unresolved", "worry", "toss-turn", false, 1.0, 600.0, std::nullopt},
    };
    for (double day_start : {0.0, 43200.0}) {
        StimulusConfig st;
        st.at = day_start;
        st.stimulus_id = "word:unresolved";
        st.p_base = 0.05;
        st.duration = 3.0;
        st.plan = "write-down";
        cfg.stimuli.push_back(std::move(st));
    }
    cfg.metamemory = {"word:unresolved"};
    return cfg;
}

} // namespace

std::optional<ScenarioConfig> builtin_scenario(const std::string& name) {
    if (name == "chekhov_tot") return chekhov_tot();
    if (name == "fluent_speech") return fluent_speech();
    if (name == "fear_flash") return fear_flash();
    if (name == "overnight") return overnight();
    return std::nullopt;
}

std::vector<std::string> builtin_scenario_names() {
    return {"chekhov_tot", "fluent_speech", "fear_flash", "overnight"};
}

ScenarioConfig load_scenario_config(const std::string& path_or_builtin_name) {
    if (auto builtin = builtin_scenario(path_or_builtin_name)) {
        return *builtin;
    }
    std::ifstream in(path_or_builtin_name);
    if (!in) {
        throw ConfigError("config '" + path_or_builtin_name +
                          "' is neither a builtin scenario nor a readable file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario_config(text.str());
}

} // namespace fok
