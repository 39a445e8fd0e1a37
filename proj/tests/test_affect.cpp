#include <doctest.h>

#include <cmath>

#include "fok/affect.hpp"
#include "fok/metamemory.hpp"
#include "fok/recall_loops.hpp"

using namespace fok;

namespace {

BankCell bank_cell(const std::string& id, const Trace& trace, const std::string& category,
                   const std::string& action) {
    return BankCell{store_trace(id, trace, 0.0), EmotionalCategory{category, action, false}};
}

Trace trace_of(std::initializer_list<int> comps) {
    std::vector<int8_t> v;
    for (int c : comps) v.push_back(static_cast<int8_t>(c));
    return Trace(std::move(v));
}

} // namespace

TEST_CASE("classification recognizes an exact trace") {
    const Trace fear = trace_of({1, 1, -1, -1});
    const std::vector<BankCell> bank{bank_cell("fear", fear, "fear", "freeze")};
    const Cue cue{fear.components(), CueSpec{NoiseModel::flip, 1.0}};
    const auto result = classify_stimulus(bank, cue);
    REQUIRE(result.has_value());
    CHECK(result->category.category_id == "fear");
    CHECK(result->overlap == 4);
}

TEST_CASE("anti-correlated cues stay unrecognized") {
    const Trace t = trace_of({1, 1, -1, -1});
    const std::vector<BankCell> bank{bank_cell("a", t, "a", "act")};
    const Cue anti{{-1, -1, 1, 1}, CueSpec{NoiseModel::flip, 0.0}};
    CHECK_FALSE(classify_stimulus(bank, anti).has_value());
}

TEST_CASE("classification picks the highest overlap, ties to lowest cell id") {
    const std::vector<BankCell> bank{
        bank_cell("b_cell", trace_of({1, 1, 1, 1}), "strong", "act1"),
        bank_cell("a_cell", trace_of({1, 1, 1, -1}), "weaker", "act2"),
    };
    const Cue cue{{1, 1, 1, 1}, CueSpec{NoiseModel::flip, 1.0}}; // overlaps 4 and 2
    const auto top = classify_stimulus(bank, cue);
    REQUIRE(top.has_value());
    CHECK(top->category.category_id == "strong");

    const std::vector<BankCell> tied{
        bank_cell("z", trace_of({1, 1}), "zc", "az"),
        bank_cell("a", trace_of({1, 1}), "ac", "aa"),
    };
    const Cue cue2{{1, 1}, CueSpec{NoiseModel::flip, 1.0}};
    const auto pick = classify_stimulus(tied, cue2);
    REQUIRE(pick.has_value());
    CHECK(pick->cell_id == "a");
}

TEST_CASE("classification rejects mismatched dimensions") {
    const std::vector<BankCell> bank{bank_cell("a", trace_of({1, 1, -1}), "a", "act")};
    const Cue cue{{1, 1}, CueSpec{NoiseModel::flip, 1.0}};
    CHECK_THROWS_AS(classify_stimulus(bank, cue), DimensionError);
}

TEST_CASE("hormonal response peaks at onset and decays exponentially") {
    const EmotionalCategory cat{"alarm", "jump", true};
    const EmotionalState s = trigger_hormonal_response(cat, 2.0, 1.0, 10.0);
    CHECK(s.level(2.0) == 1.0);
    CHECK(s.level(12.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(s.level(1.0) == 0.0); // nothing before onset

    const EmotionalState flat = trigger_hormonal_response(cat, 0.0, 0.0, 10.0);
    CHECK(flat.level(0.0) == 0.0);
    CHECK(flat.level(100.0) == 0.0);
}

TEST_CASE("background half-life lands at b0/2") {
    const EmotionalState s = make_emotional_state(0.8, 37.0, 5.0, EmotionalCategory{});
    const double half = s.level(5.0 + 37.0 * std::log(2.0));
    CHECK(std::fabs(half - 0.4) <= 1e-9);
}

TEST_CASE("background is strictly decreasing after onset") {
    const EmotionalState s = make_emotional_state(1.0, 3.0, 0.0, EmotionalCategory{});
    double prev = s.level(0.0);
    for (int i = 1; i <= 50; ++i) {
        const double cur = s.level(i * 0.25);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("emotional state validation") {
    CHECK_THROWS_AS(make_emotional_state(1.5, 1.0, 0.0, EmotionalCategory{}), RangeError);
    CHECK_THROWS_AS(make_emotional_state(0.5, 0.0, 0.0, EmotionalCategory{}), RangeError);
}

TEST_CASE("fast behavior is stereotyped with fixed latency") {
    const EmotionalCategory cat{"fear", "freeze", true};
    const Action a1 = fast_behavior(cat, 10.0, 0.05);
    const Action a2 = fast_behavior(cat, 20.0, 0.05);
    CHECK(a1.pathway == Pathway::fast_stereotyped);
    CHECK(a1.label == "freeze");
    CHECK(a2.label == a1.label); // same category, same action, always
    CHECK(a1.t_emitted == doctest::Approx(10.05));
    CHECK(a1.latency == 0.05);
}

TEST_CASE("modulate_cue arithmetic and bounds") {
    CHECK(modulate_cue(0.4, 0.0, 0.6) == 0.4);
    CHECK(modulate_cue(1.0, 0.9, 0.9) == 1.0);
    CHECK(modulate_cue(0.4, 0.5, 0.6) == doctest::Approx(0.58).epsilon(1e-12));
    CHECK_THROWS_AS(modulate_cue(-0.1, 0.5, 0.5), RangeError);
    CHECK_THROWS_AS(modulate_cue(0.5, 1.1, 0.5), RangeError);
    CHECK_THROWS_AS(modulate_cue(0.5, 0.5, 2.0), RangeError);
}

TEST_CASE("modulate_cue is monotone in every argument") {
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (double p : grid) {
        for (double b : grid) {
            for (double g : grid) {
                const double base = modulate_cue(p, b, g);
                CHECK(base >= p);
                CHECK(base <= 1.0);
                if (p < 1.0) {
                    CHECK(modulate_cue(std::min(1.0, p + 0.25), b, g) >= base);
                }
                if (b < 1.0) CHECK(modulate_cue(p, b + 0.25, g) >= base);
                if (g < 1.0) CHECK(modulate_cue(p, b, g + 0.25) >= base);
            }
        }
    }
}

TEST_CASE("consolidation raises the baseline by delta_c*b, clamped") {
    RngStream rng(1);
    const MemoryCell cell = store_trace("c", Trace::random(4, rng), 0.0);
    LoopOutcome recall;
    recall.status = LoopStatus::recalled_explicit;

    CHECK(consolidate(cell, recall, 0.0, 0.2, 0.5).p_base_new == 0.5);
    CHECK(consolidate(cell, recall, 1.0, 0.2, 0.5).p_base_new == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(consolidate(cell, recall, 1.0, 0.2, 0.95).p_base_new == 1.0);
    CHECK(consolidate(cell, recall, 1.0, 0.2, 0.5).p_base_old == 0.5);
}

TEST_CASE("slow behavior follows conscious events only") {
    LoopOutcome explicit_recall;
    explicit_recall.status = LoopStatus::recalled_explicit;
    explicit_recall.t_end = 100.0;

    const Action planned = slow_behavior(explicit_recall, "report", 100.0, 0.0);
    CHECK(planned.pathway == Pathway::slow_planned);
    CHECK(planned.label == "report");
    CHECK(planned.t_emitted >= 100.0);

    LoopOutcome unconscious;
    unconscious.status = LoopStatus::recalled_implicit;
    CHECK_THROWS_AS(slow_behavior(unconscious, "report", 1.0, 0.0), ContractError);

    FokSignal felt{true, 0.6, 50.0};
    const Action searching = slow_behavior(felt, "keep-searching", 51.0, 0.0);
    CHECK(searching.pathway == Pathway::slow_planned);

    FokSignal absent{false, 0.0, 50.0};
    CHECK_THROWS_AS(slow_behavior(absent, "keep-searching", 51.0, 0.0), ContractError);
    CHECK_THROWS_AS(slow_behavior(felt, "too-early", 49.0, 0.0), ContractError);
}
