#pragma once
// Parameter sweeps over scenario configs.
//
// A grid maps parameter names to value lists; points are their Cartesian
// product in row-major order (last axis fastest). Each run of each point
// gets the seed derived from (base seed, point index, run index), so the
// table is reproducible and independent of execution order; the OpenMP
// sweep distributes points across threads and emits bytes identical to
// the serial one.

#include <cstdint>
#include <string>
#include <vector>

#include "fok/scenario.hpp"

namespace fok {

struct SweepGrid {
    // Insertion order defines the CSV column order and the point order.
    std::vector<std::pair<std::string, std::vector<double>>> axes;

    size_t point_count() const;
};

SweepGrid parse_sweep_grid(const std::string& json_text);
SweepGrid load_sweep_grid(const std::string& path);

// Set one sweepable parameter on a config. Unknown names are ConfigErrors.
// Scalar names: theta, f, t0, t_explicit_max, t_fast, g, delta_c.
// Broadcast names: p_base, p_class (all stimuli), hint_delta_p (all hints),
// b0, tau_b (all bank entries).
void apply_sweep_param(ScenarioConfig& config, const std::string& name, double value);

struct SweepRow {
    std::vector<double> params;
    int64_t episodes = 0;
    int64_t recalled = 0;
    double recall_rate = 0.0;
    double mean_latency_s = 0.0; // NaN when nothing recalled
};

struct SweepTable {
    std::vector<std::string> param_names;
    std::vector<SweepRow> rows;

    std::string render_csv() const;
};

SweepTable run_sweep(const ScenarioConfig& base, const SweepGrid& grid, int runs_per_point);
SweepTable run_sweep_serial(const ScenarioConfig& base, const SweepGrid& grid, int runs_per_point);

} // namespace fok
