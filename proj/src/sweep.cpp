#include "fok/sweep.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fok/event_log.hpp"
#include "fok/rng.hpp"
#include "fok/simulation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fok {

size_t SweepGrid::point_count() const {
    size_t total = 1;
    for (const auto& [name, values] : axes) {
        total *= values.size();
    }
    return total;
}

SweepGrid parse_sweep_grid(const std::string& json_text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("grid is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.empty()) {
        throw ConfigError("grid: expected a non-empty object of {parameter: [values...]}");
    }
    SweepGrid grid;
    for (const auto& [name, values] : doc.items()) {
        if (!values.is_array() || values.empty()) {
            throw ConfigError("grid." + name + ": expected a non-empty array of numbers");
        }
        std::vector<double> axis;
        for (const auto& v : values) {
            if (!v.is_number()) throw ConfigError("grid." + name + ": expected numbers");
            axis.push_back(v.get<double>());
        }
        grid.axes.emplace_back(name, std::move(axis));
    }
    return grid;
}

SweepGrid load_sweep_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("grid file '" + path + "' is not readable");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_sweep_grid(text.str());
}

void apply_sweep_param(ScenarioConfig& config, const std::string& name, double value) {
    if (name == "theta") {
        config.theta = value;
    } else if (name == "f") {
        config.f = value;
    } else if (name == "t0") {
        config.t0 = value;
    } else if (name == "t_explicit_max") {
        config.t_explicit_max = value;
    } else if (name == "t_fast") {
        config.t_fast = value;
    } else if (name == "g") {
        config.g = value;
    } else if (name == "delta_c") {
        config.delta_c = value;
    } else if (name == "p_base") {
        for (auto& st : config.stimuli) st.p_base = value;
    } else if (name == "p_class") {
        for (auto& st : config.stimuli) st.p_class = value;
    } else if (name == "hint_delta_p") {
        for (auto& st : config.stimuli) {
            for (auto& h : st.hints) h.delta_p = value;
        }
    } else if (name == "b0") {
        for (auto& e : config.category_bank) e.b0 = value;
    } else if (name == "tau_b") {
        for (auto& e : config.category_bank) e.tau_b = value;
    } else {
        throw ConfigError("grid." + name + ": unknown sweep parameter");
    }
}

namespace {

SweepRow evaluate_point(const ScenarioConfig& base, const SweepGrid& grid, size_t point_index,
                        int runs_per_point) {
    SweepRow row;
    ScenarioConfig cfg = base;

    // Decode the row-major multi-index, last axis fastest.
    size_t rest = point_index;
    std::vector<size_t> idx(grid.axes.size(), 0);
    for (size_t a = grid.axes.size(); a-- > 0;) {
        idx[a] = rest % grid.axes[a].second.size();
        rest /= grid.axes[a].second.size();
    }
    for (size_t a = 0; a < grid.axes.size(); ++a) {
        const double value = grid.axes[a].second[idx[a]];
        row.params.push_back(value);
        apply_sweep_param(cfg, grid.axes[a].first, value);
    }
    cfg.validate();

    double latency_sum = 0.0;
    for (int run = 0; run < runs_per_point; ++run) {
        cfg.seed = derived_seed(base.seed, point_index, static_cast<uint64_t>(run));
        const EventLog log = run_scenario(cfg);
        for (const Event& e : log.events) {
            if (e.kind == EventKind::stimulus_on) {
                row.episodes += 1;
            } else if (e.kind == EventKind::recalled) {
                row.recalled += 1;
                for (const auto& [key, value] : e.payload.items()) {
                    if (key == "latency") latency_sum += std::get<double>(value);
                }
            }
        }
    }
    row.recall_rate = row.episodes ? static_cast<double>(row.recalled) / static_cast<double>(row.episodes)
                                   : 0.0;
    row.mean_latency_s = row.recalled ? latency_sum / static_cast<double>(row.recalled)
                                      : std::numeric_limits<double>::quiet_NaN();
    return row;
}

SweepTable sweep_common(const ScenarioConfig& base, const SweepGrid& grid, int runs_per_point,
                        bool parallel) {
    if (runs_per_point < 1) throw ConfigError("runs_per_point must be >= 1");
    if (grid.axes.empty()) throw ConfigError("grid must have at least one parameter");
    base.validate();

    SweepTable table;
    for (const auto& [name, values] : grid.axes) table.param_names.push_back(name);
    const size_t points = grid.point_count();
    table.rows.resize(points);

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int64_t pi = 0; pi < static_cast<int64_t>(points); ++pi) {
            table.rows[static_cast<size_t>(pi)] =
                evaluate_point(base, grid, static_cast<size_t>(pi), runs_per_point);
        }
    } else {
        for (size_t pi = 0; pi < points; ++pi) {
            table.rows[pi] = evaluate_point(base, grid, pi, runs_per_point);
        }
    }
    return table;
}

} // namespace

std::string SweepTable::render_csv() const {
    std::string out;
    for (const auto& name : param_names) {
        out += name;
        out += ',';
    }
    out += "recall_rate,mean_latency_s\n";
    for (const auto& row : rows) {
        for (double p : row.params) {
            out += format_time(p);
            out += ',';
        }
        out += format_time(row.recall_rate);
        out += ',';
        out += format_time(row.mean_latency_s);
        out += '\n';
    }
    return out;
}

SweepTable run_sweep(const ScenarioConfig& base, const SweepGrid& grid, int runs_per_point) {
    return sweep_common(base, grid, runs_per_point, true);
}

SweepTable run_sweep_serial(const ScenarioConfig& base, const SweepGrid& grid, int runs_per_point) {
    return sweep_common(base, grid, runs_per_point, false);
}

} // namespace fok
