#include "fok/memory_core.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fok {

Trace::Trace(std::vector<int8_t> components) : components_(std::move(components)) {
    if (components_.empty()) {
        throw DimensionError("trace must have at least one component");
    }
    for (int8_t c : components_) {
        if (c != 1 && c != -1) {
            throw RangeError("trace components must be +1 or -1");
        }
    }
}

Trace Trace::random(int n, RngStream& rng) {
    if (n < 1) {
        throw DimensionError("trace dimension must be >= 1");
    }
    std::vector<int8_t> comps(static_cast<size_t>(n));
    for (auto& c : comps) {
        c = (rng.next_u64() >> 63) ? int8_t{1} : int8_t{-1};
    }
    return Trace(std::move(comps));
}

std::string to_string(NoiseModel model) {
    return model == NoiseModel::flip ? "flip" : "erase";
}

NoiseModel noise_model_from_string(const std::string& name) {
    if (name == "flip") return NoiseModel::flip;
    if (name == "erase") return NoiseModel::erase;
    throw RangeError("unknown noise model '" + name + "' (expected flip or erase)");
}

void CueSpec::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw RangeError("cue correctness probability p must be in [0,1]");
    }
}

MemoryCell store_trace(std::string cell_id, Trace trace, double theta) {
    if (!(theta >= 0.0 && theta < 1.0)) {
        throw RangeError("retrieval threshold theta must be in [0,1)");
    }
    return MemoryCell{std::move(cell_id), std::move(trace), theta};
}

Cue make_cue(const Trace& trace, const CueSpec& spec, RngStream& rng) {
    spec.validate();
    const auto& src = trace.components();
    std::vector<int8_t> comps(src.size());
    for (size_t i = 0; i < src.size(); ++i) {
        if (rng.next_unit() < spec.p) {
            comps[i] = src[i];
        } else {
            comps[i] = spec.model == NoiseModel::flip ? static_cast<int8_t>(-src[i]) : int8_t{0};
        }
    }
    return Cue{std::move(comps), spec};
}

RetrievalOutcome retrieve(const MemoryCell& cell, const Cue& cue) {
    const int n = cell.dimension();
    if (cue.dimension() != n) {
        throw DimensionError("cue dimension " + std::to_string(cue.dimension()) +
                             " does not match cell dimension " + std::to_string(n));
    }
    int h = 0;
    const auto& t = cell.trace.components();
    for (int i = 0; i < n; ++i) {
        h += cue.components[static_cast<size_t>(i)] * t[static_cast<size_t>(i)];
    }
    if (static_cast<double>(h) > cell.theta * n) {
        return RetrievalOutcome{RetrievalStatus::recalled, cell.trace, h};
    }
    return RetrievalOutcome{RetrievalStatus::miss, std::nullopt, h};
}

namespace {

void check_prob_args(int n, const CueSpec& spec, double theta) {
    if (n < 1) {
        throw RangeError("dimension must be >= 1");
    }
    spec.validate();
    if (!(theta >= 0.0 && theta < 1.0)) {
        throw RangeError("retrieval threshold theta must be in [0,1)");
    }
}

double binomial_pmf(int n, int k, double p) {
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c *= static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Weighted recall mass of damage patterns [begin, end). Bit i of a pattern
// set means component i survives undamaged. Kahan-compensated so results do
// not depend on how the range is later chunked.
double enum_range_sum(const MemoryCell& cell, const CueSpec& spec, uint64_t begin, uint64_t end) {
    const int n = cell.dimension();
    const auto& t = cell.trace.components();
    double sum = 0.0, comp = 0.0;
    std::vector<int8_t> comps(static_cast<size_t>(n));
    for (uint64_t pattern = begin; pattern < end; ++pattern) {
        double weight = 1.0;
        for (int i = 0; i < n; ++i) {
            const bool intact = (pattern >> i) & 1u;
            weight *= intact ? spec.p : 1.0 - spec.p;
            comps[static_cast<size_t>(i)] =
                intact ? t[static_cast<size_t>(i)]
                       : (spec.model == NoiseModel::flip ? static_cast<int8_t>(-t[static_cast<size_t>(i)])
                                                         : int8_t{0});
        }
        if (weight == 0.0) continue;
        const Cue cue{comps, spec};
        if (retrieve(cell, cue).recalled()) {
            const double y = weight - comp;
            const double s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
    }
    return sum;
}

constexpr uint64_t kEnumChunk = 1u << 12;

// Shared by the serial and OpenMP paths: identical chunking and an ordered
// final combine keep the result bit-identical for any thread count.
template <typename ChunkLoop>
double enum_over_chunks(int n, const CueSpec& spec, double theta, ChunkLoop&& loop) {
    check_prob_args(n, spec, theta);
    if (n > 20) {
        throw FeasibilityError("enumeration over 2^" + std::to_string(n) +
                               " damage patterns is not feasible (max n = 20)");
    }
    // The probability is trace-independent; enumerate against all-ones.
    const MemoryCell cell = store_trace("enum", Trace(std::vector<int8_t>(static_cast<size_t>(n), 1)), theta);
    const uint64_t total = uint64_t{1} << n;
    const uint64_t chunks = (total + kEnumChunk - 1) / kEnumChunk;
    std::vector<double> partial(static_cast<size_t>(chunks), 0.0);
    loop(static_cast<int64_t>(chunks), [&](int64_t c) {
        const uint64_t begin = static_cast<uint64_t>(c) * kEnumChunk;
        const uint64_t end = begin + kEnumChunk < total ? begin + kEnumChunk : total;
        partial[static_cast<size_t>(c)] = enum_range_sum(cell, spec, begin, end);
    });
    double sum = 0.0, comp = 0.0;
    for (double part : partial) {
        const double y = part - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

} // namespace

double recall_probability(int n, const CueSpec& spec, double theta) {
    check_prob_args(n, spec, theta);
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
        const int h = spec.model == NoiseModel::flip ? 2 * k - n : k;
        if (static_cast<double>(h) > theta * n) {
            total += binomial_pmf(n, k, spec.p);
        }
    }
    return total < 1.0 ? total : 1.0;
}

double recall_probability_enum_serial(int n, const CueSpec& spec, double theta) {
    return enum_over_chunks(n, spec, theta, [](int64_t chunks, auto&& body) {
        for (int64_t c = 0; c < chunks; ++c) body(c);
    });
}

double recall_probability_enum(int n, const CueSpec& spec, double theta) {
    return enum_over_chunks(n, spec, theta, [](int64_t chunks, auto&& body) {
#pragma omp parallel for schedule(dynamic)
        for (int64_t c = 0; c < chunks; ++c) body(c);
    });
}

} // namespace fok
