// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Run via ctest (the `acceptance` test) or directly; criterion 9
// additionally drives the real CLI binary through $FOKSIM_CLI.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fok/memory_core.hpp"
#include "fok/montecarlo.hpp"
#include "fok/simulation.hpp"
#include "fok/sweep.hpp"

using namespace fok;

namespace {

void report(int criterion, const std::string& label, bool ok) {
    std::printf("[acceptance] criterion %2d  %-52s %s\n", criterion, label.c_str(),
                ok ? "PASS" : "FAIL");
    std::fflush(stdout);
}

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

std::optional<double> payload_num(const Event& e, const std::string& key) {
    for (const auto& [k, v] : e.payload.items()) {
        if (k != key) continue;
        if (const auto* d = std::get_if<double>(&v)) return *d;
        if (const auto* i = std::get_if<int64_t>(&v)) return static_cast<double>(*i);
    }
    return std::nullopt;
}

std::string payload_str(const Event& e, const std::string& key) {
    for (const auto& [k, v] : e.payload.items()) {
        if (k == key) {
            if (const auto* s = std::get_if<std::string>(&v)) return *s;
        }
    }
    return {};
}

struct EpisodeRef {
    std::string stimulus;
    int episode;
    bool operator==(const EpisodeRef&) const = default;
    bool operator<(const EpisodeRef& o) const {
        return stimulus < o.stimulus || (stimulus == o.stimulus && episode < o.episode);
    }
};

EpisodeRef episode_of(const Event& e) {
    return EpisodeRef{payload_str(e, "stimulus"), static_cast<int>(*payload_num(e, "episode"))};
}

EventLog run_builtin(const std::string& name, uint64_t seed) {
    ScenarioConfig cfg = *builtin_scenario(name);
    cfg.seed = seed;
    return run_scenario(cfg);
}

// One-stimulus scenario used for the paired monotonicity runs.
ScenarioConfig monotone_base() {
    ScenarioConfig cfg;
    cfg.seed = 0;
    cfg.n = 32;
    cfg.noise_model = NoiseModel::flip;
    cfg.theta = 0.0;
    cfg.f = 2.0;
    cfg.t0 = 1.0;
    cfg.t_explicit_max = 30.0;
    cfg.t_fast = 0.05;
    cfg.g = 0.3;
    cfg.delta_c = 0.0;
    cfg.category_bank = {BankEntryConfig{"item", "cat", "act", false, 0.8, 300.0, std::nullopt}};
    StimulusConfig st;
    st.at = 0.0;
    st.stimulus_id = "item";
    st.p_base = 0.1;
    st.duration = 1.0;
    st.plan = "plan";
    cfg.stimuli = {st};
    cfg.metamemory = {"item"};
    return cfg;
}

struct RunOutcome {
    bool recalled = false;
    double latency = 0.0;
};

RunOutcome outcome_of(const EventLog& log) {
    for (const auto& e : log.events) {
        if (e.kind == EventKind::recalled) {
            return RunOutcome{true, *payload_num(e, "latency")};
        }
    }
    return RunOutcome{};
}

double sign_test_p_value(int n_plus, int n_minus) {
    const int n = n_plus + n_minus;
    double p = 0.0;
    for (int j = n_plus; j <= n; ++j) {
        p += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                      n * std::log(0.5));
    }
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot read ", path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace

TEST_CASE("criterion 01: oracle equivalence over the full grid") {
    const double start = now_seconds();
    bool ok = true;
    double worst = 0.0;
    for (int n = 1; n <= 12; ++n) {
        for (int pi = 0; pi <= 10; ++pi) {
            for (double theta : {0.0, 0.25, 0.5}) {
                for (NoiseModel model : {NoiseModel::flip, NoiseModel::erase}) {
                    const CueSpec spec{model, pi / 10.0};
                    const double analytic = recall_probability(n, spec, theta);
                    const double oracle = recall_probability_enum(n, spec, theta);
                    worst = std::max(worst, std::fabs(analytic - oracle));
                    ok = ok && std::fabs(analytic - oracle) <= 1e-12;
                }
            }
        }
    }
    const double elapsed = now_seconds() - start;
    std::printf("             max |analytic - enum| = %.3e, %.2f s\n", worst, elapsed);
    ok = ok && elapsed < 5.0;
    report(1, "oracle equivalence (N<=12, p grid, theta grid)", ok);
    CHECK(worst <= 1e-12);
    CHECK(elapsed < 5.0);
}

TEST_CASE("criterion 02: spot probabilities") {
    const double a = recall_probability(7, CueSpec{NoiseModel::flip, 0.6}, 0.0);
    const double b = recall_probability(2, CueSpec{NoiseModel::flip, 0.5}, 0.0);
    const bool ok = std::fabs(a - 0.710208) <= 1e-12 && std::fabs(b - 0.25) <= 1e-12;
    report(2, "spot values 0.710208 and 0.25", ok);
    CHECK(std::fabs(a - 0.710208) <= 1e-12);
    CHECK(std::fabs(b - 0.25) <= 1e-12);
}

TEST_CASE("criterion 03: loop-level consistency, 1e4 seeded runs per point") {
    struct Point {
        MemoryCell cell;
        CueSpec spec;
        double p_single, f, t0;
    };
    const std::vector<Point> points = {
        {store_trace("a", Trace(std::vector<int8_t>{1, -1}), 0.0), CueSpec{NoiseModel::flip, 0.5}, 0.25,
         10.0, 0.5},
        {store_trace("b", Trace(std::vector<int8_t>{1}), 0.0), CueSpec{NoiseModel::erase, 0.1}, 0.1, 5.0,
         2.0},
        {store_trace("c", Trace(std::vector<int8_t>{1, 1, 1, -1, -1, 1, -1}), 0.0),
         CueSpec{NoiseModel::flip, 0.6}, 0.710208, 10.0, 0.3},
    };

    const double start = now_seconds();
    bool ok = true;
    const int64_t runs = 10000;
    for (size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        // the constructed cell must realize the stated per-attempt probability
        const double p_single = recall_probability(pt.cell.dimension(), pt.spec, 0.0);
        ok = ok && std::fabs(p_single - pt.p_single) <= 1e-6;

        const LoopConfig cfg{pt.f, pt.t0, 0.0};
        const double expected = loop_success_probability(pt.p_single, pt.f, pt.t0);
        const McEstimate est = mc_loop_success_rate(pt.cell, pt.spec, cfg, runs, 1000 + i);
        const McEstimate ref = mc_loop_success_rate_serial(pt.cell, pt.spec, cfg, runs, 1000 + i);
        ok = ok && est.successes == ref.successes;

        const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(runs));
        const double err = std::fabs(est.rate() - expected);
        std::printf("             P=%.6f f=%.0f t0=%.1f: empirical %.4f expected %.4f (%.1f sigma)\n",
                    pt.p_single, pt.f, pt.t0, est.rate(), expected, sigma > 0 ? err / sigma : 0.0);
        ok = ok && err <= 4.0 * sigma;
        CHECK(err <= 4.0 * sigma);
    }
    const double elapsed = now_seconds() - start;
    ok = ok && elapsed < 10.0;
    report(3, "loop success within 4 sigma of geometric formula", ok);
    CHECK(elapsed < 10.0);
}

TEST_CASE("criterion 04: fok biconditional across builtins, 100 seeds") {
    bool ok = true;
    int violations = 0;
    for (const auto& name : builtin_scenario_names()) {
        const ScenarioConfig base = *builtin_scenario(name);
        const std::set<std::string> registered(base.metamemory.begin(), base.metamemory.end());
        for (uint64_t seed = 0; seed < 100; ++seed) {
            const EventLog log = run_builtin(name, seed);
            std::set<EpisodeRef> episodes, with_fok, with_timeout;
            for (const auto& e : log.events) {
                const EpisodeRef ref = episode_of(e);
                episodes.insert(ref);
                if (e.kind == EventKind::fok) with_fok.insert(ref);
                if (e.kind == EventKind::implicit_timeout) with_timeout.insert(ref);
            }
            for (const auto& ref : episodes) {
                const bool fok_logged = with_fok.count(ref) > 0;
                const bool expected = registered.count(ref.stimulus) > 0 && with_timeout.count(ref) > 0;
                if (fok_logged != expected) ++violations;
            }
        }
    }
    ok = violations == 0;
    report(4, "fok iff (registered and implicit timeout), 0 violations", ok);
    CHECK(violations == 0);
}

TEST_CASE("criterion 05: chekhov_tot ordering, 100 seeds") {
    const ScenarioConfig base = *builtin_scenario("chekhov_tot");
    const double inv_f = 1.0 / base.f;
    const double b0 = base.category_bank[0].b0;
    const double tau = base.category_bank[0].tau_b;
    const double onset = base.stimuli[0].at;

    bool fast_before_slow = true, hint_recall_prompt = true, decay_ok = true;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        const EventLog log = run_builtin("chekhov_tot", seed);
        std::optional<double> t_fast_action, t_slow, t_recalled, t_decisive, b_recalled;
        for (const auto& e : log.events) {
            switch (e.kind) {
                case EventKind::fast_action:
                    if (!t_fast_action) t_fast_action = e.t;
                    break;
                case EventKind::slow_action:
                    if (!t_slow) t_slow = e.t;
                    break;
                case EventKind::hint_applied:
                    if (!t_decisive && *payload_num(e, "p_base") >= 1.0) t_decisive = e.t;
                    break;
                case EventKind::recalled:
                    t_recalled = e.t;
                    b_recalled = payload_num(e, "b");
                    break;
                default:
                    break;
            }
        }
        if (t_fast_action && t_slow) {
            fast_before_slow = fast_before_slow && *t_fast_action < *t_slow;
        } else {
            fast_before_slow = false; // chekhov always produces both pathways
        }
        if (t_decisive) { // p' reached 1: recall within one period
            hint_recall_prompt = hint_recall_prompt && t_recalled && *t_recalled >= *t_decisive &&
                                 *t_recalled <= *t_decisive + inv_f + 1e-9;
        }
        if (t_recalled && b_recalled) {
            const double closed_now = b0 * std::exp(-(*t_recalled - onset) / tau);
            const double closed_later = b0 * std::exp(-(*t_recalled + 60.0 - onset) / tau);
            decay_ok = decay_ok && std::fabs(*b_recalled - closed_now) <= 1e-9 &&
                       closed_now > closed_later;
        } else {
            decay_ok = false; // the decisive hint guarantees a recall
        }
    }
    const bool ok = fast_before_slow && hint_recall_prompt && decay_ok;
    report(5, "chekhov_tot: fast<slow, prompt recall on hint, decay", ok);
    CHECK(fast_before_slow);
    CHECK(hint_recall_prompt);
    CHECK(decay_ok);
}

TEST_CASE("criterion 06: fear felt only after the stimulus ends, 100 seeds") {
    bool fok_after_off = true, fast_before_off_seen = true;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        const EventLog log = run_builtin("fear_flash", seed);
        std::optional<double> t_off;
        for (const auto& e : log.events) {
            if (e.kind == EventKind::stimulus_off) t_off = e.t;
        }
        bool any_fast_before_off = false;
        for (const auto& e : log.events) {
            if (e.kind == EventKind::fok) {
                fok_after_off = fok_after_off && t_off && e.t >= *t_off;
            }
            if (e.kind == EventKind::fast_action && t_off && e.t < *t_off) {
                any_fast_before_off = true;
            }
        }
        fast_before_off_seen = fast_before_off_seen && any_fast_before_off;
    }
    const bool ok = fok_after_off && fast_before_off_seen;
    report(6, "fear_flash: fok >= stimulus_off, fast action before off", ok);
    CHECK(fok_after_off);
    CHECK(fast_before_off_seen);
}

TEST_CASE("criterion 07: mood does not gate which pathways are reachable") {
    // Scenarios whose cross-episode structure does not depend on the
    // consolidation magnitude delta_c * b (overnight's day 2 legitimately
    // does, through the sanctioned baseline channel).
    const std::vector<std::string> scenarios = {"chekhov_tot", "fluent_speech", "fear_flash"};
    bool ok = true;
    for (const auto& name : scenarios) {
        for (uint64_t seed = 0; seed < 100; ++seed) {
            std::map<EpisodeRef, std::set<EventKind>> kinds_b0, kinds_b1;
            for (double b0 : {0.0, 1.0}) {
                ScenarioConfig cfg = *builtin_scenario(name);
                cfg.seed = seed;
                for (auto& entry : cfg.category_bank) entry.b0 = b0;
                auto& kinds = b0 == 0.0 ? kinds_b0 : kinds_b1;
                for (const auto& e : run_scenario(cfg).events) {
                    kinds[episode_of(e)].insert(e.kind);
                }
            }
            if (kinds_b0 != kinds_b1) ok = false;
        }
    }
    report(7, "same reachable event kinds per stimulus for b0 in {0,1}", ok);
    CHECK(ok);
}

TEST_CASE("criterion 08: exact monotonicity under common random numbers") {
    const std::vector<double> p_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
    const std::vector<double> hint_grid = {0.0, 0.2, 0.4, 0.6, 0.8};
    bool p_ok = true, hint_ok = true;
    std::vector<int> p_recalls(p_grid.size(), 0), hint_recalls(hint_grid.size(), 0);

    for (uint64_t seed = 0; seed < 50; ++seed) {
        std::vector<RunOutcome> by_p;
        for (double p : p_grid) {
            ScenarioConfig cfg = monotone_base();
            cfg.seed = seed;
            apply_sweep_param(cfg, "p_base", p);
            by_p.push_back(outcome_of(run_scenario(cfg)));
        }
        for (size_t i = 0; i + 1 < by_p.size(); ++i) {
            if (by_p[i].recalled) {
                p_ok = p_ok && by_p[i + 1].recalled && by_p[i + 1].latency <= by_p[i].latency + 1e-12;
            }
        }
        for (size_t i = 0; i < by_p.size(); ++i) p_recalls[i] += by_p[i].recalled;

        std::vector<RunOutcome> by_hint;
        for (double dp : hint_grid) {
            ScenarioConfig cfg = monotone_base();
            cfg.seed = seed;
            apply_sweep_param(cfg, "p_base", 0.02);
            cfg.stimuli[0].hints = {Hint{2.0, dp}};
            by_hint.push_back(outcome_of(run_scenario(cfg)));
        }
        for (size_t i = 0; i + 1 < by_hint.size(); ++i) {
            if (by_hint[i].recalled) {
                hint_ok = hint_ok && by_hint[i + 1].recalled &&
                          by_hint[i + 1].latency <= by_hint[i].latency + 1e-12;
            }
        }
        for (size_t i = 0; i < by_hint.size(); ++i) hint_recalls[i] += by_hint[i].recalled;
    }

    // per-run monotonicity makes the paired recall rates monotone too
    for (size_t i = 0; i + 1 < p_recalls.size(); ++i) p_ok = p_ok && p_recalls[i] <= p_recalls[i + 1];
    for (size_t i = 0; i + 1 < hint_recalls.size(); ++i) {
        hint_ok = hint_ok && hint_recalls[i] <= hint_recalls[i + 1];
    }
    const bool ok = p_ok && hint_ok;
    report(8, "recall monotone in p_base and hint delta_p (paired)", ok);
    CHECK(p_ok);
    CHECK(hint_ok);
}

TEST_CASE("criterion 09: byte-identical logs from the CLI") {
    const char* cli = std::getenv("FOKSIM_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "FOKSIM_CLI must point at the foksim binary (set by ctest)");

    const std::string out1 = "acceptance_run_a.jsonl";
    const std::string out2 = "acceptance_run_b.jsonl";
    const std::string cmd_base =
        std::string(cli) + " run --config chekhov_tot --seed 42 --out ";
    REQUIRE(std::system((cmd_base + out1).c_str()) == 0);
    REQUIRE(std::system((cmd_base + out2).c_str()) == 0);

    const std::string log1 = read_file(out1);
    const std::string log2 = read_file(out2);
    std::remove(out1.c_str());
    std::remove(out2.c_str());

    ScenarioConfig cfg = *builtin_scenario("chekhov_tot");
    cfg.seed = 42;
    const std::string in_process = run_scenario(cfg).render();

    const bool ok = !log1.empty() && log1 == log2 && log1 == in_process;
    report(9, "run --config chekhov_tot --seed 42 is byte-stable", ok);
    CHECK(log1 == log2);
    CHECK(log1 == in_process);
}

TEST_CASE("criterion 10: overnight consolidation speeds up day two") {
    const int runs = 1000;
    int n_plus = 0, n_minus = 0, pairs = 0;
    double day1_sum = 0.0, day2_sum = 0.0;
    for (uint64_t seed = 0; seed < runs; ++seed) {
        const EventLog log = run_builtin("overnight", seed);
        std::optional<double> day1, day2;
        for (const auto& e : log.events) {
            if (e.kind != EventKind::recalled) continue;
            const int episode = static_cast<int>(*payload_num(e, "episode"));
            if (episode == 0) day1 = *payload_num(e, "latency");
            if (episode == 1) day2 = *payload_num(e, "latency");
        }
        if (!day1 || !day2) continue; // unresolved day: skip the pair
        ++pairs;
        day1_sum += *day1;
        day2_sum += *day2;
        if (*day2 < *day1) ++n_plus;
        if (*day2 > *day1) ++n_minus;
    }
    const double p_value = sign_test_p_value(n_plus, n_minus);
    const double mean1 = day1_sum / pairs;
    const double mean2 = day2_sum / pairs;
    std::printf("             pairs %d, day1 mean %.3f s, day2 mean %.3f s, sign test p = %.3e\n", pairs,
                mean1, mean2, p_value);
    const bool ok = pairs >= runs - 5 && mean2 < mean1 && p_value < 0.01;
    report(10, "overnight: day-2 latency dominates day-1 (sign test)", ok);
    CHECK(pairs >= runs - 5);
    CHECK(mean2 < mean1);
    CHECK(p_value < 0.01);
}
