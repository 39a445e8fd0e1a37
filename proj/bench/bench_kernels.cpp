// Timing harness for the parallel kernels against their serial references.
// Not a correctness test (ctest covers equality); this reports throughput
// and speedup on the current machine.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fok/memory_core.hpp"
#include "fok/montecarlo.hpp"
#include "fok/scenario.hpp"
#include "fok/sweep.hpp"

namespace {

double time_seconds(const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(end - start).count();
}

void report(const std::string& name, double serial_s, double parallel_s) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx\n", name.c_str(), serial_s,
                parallel_s, parallel_s > 0 ? serial_s / parallel_s : 0.0);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel paths run serially\n\n");
#endif

    {
        const fok::CueSpec spec{fok::NoiseModel::flip, 0.55};
        double serial_result = 0.0, parallel_result = 0.0;
        const double ts = time_seconds([&] { serial_result = fok::recall_probability_enum_serial(20, spec, 0.0); });
        const double tp = time_seconds([&] { parallel_result = fok::recall_probability_enum(20, spec, 0.0); });
        report("enum oracle (n=20)", ts, tp);
        if (serial_result != parallel_result) {
            std::printf("  MISMATCH: serial %.17g vs parallel %.17g\n", serial_result, parallel_result);
            return 1;
        }
    }

    {
        fok::RngStream rng(7);
        const fok::MemoryCell cell =
            fok::store_trace("bench", fok::Trace::random(64, rng), 0.0);
        const fok::CueSpec spec{fok::NoiseModel::flip, 0.55};
        constexpr int64_t trials = 2'000'000;
        fok::McEstimate serial_est, parallel_est;
        const double ts = time_seconds([&] { serial_est = fok::mc_recall_rate_serial(cell, spec, trials, 7); });
        const double tp = time_seconds([&] { parallel_est = fok::mc_recall_rate(cell, spec, trials, 7); });
        report("mc recall (2e6 trials)", ts, tp);
        if (serial_est.successes != parallel_est.successes) {
            std::printf("  MISMATCH: serial %lld vs parallel %lld\n",
                        static_cast<long long>(serial_est.successes),
                        static_cast<long long>(parallel_est.successes));
            return 1;
        }
    }

    {
        const fok::ScenarioConfig base = *fok::builtin_scenario("overnight");
        fok::SweepGrid grid;
        grid.axes = {{"p_base", {0.02, 0.04, 0.06, 0.08, 0.10, 0.12, 0.14, 0.16}}};
        fok::SweepTable serial_table, parallel_table;
        const double ts = time_seconds([&] { serial_table = fok::run_sweep_serial(base, grid, 200); });
        const double tp = time_seconds([&] { parallel_table = fok::run_sweep(base, grid, 200); });
        report("sweep (8 points x 200 runs)", ts, tp);
        if (serial_table.render_csv() != parallel_table.render_csv()) {
            std::printf("  MISMATCH: sweep tables differ\n");
            return 1;
        }
    }

    return 0;
}
