#pragma once
// Bipolar trace storage and single-cell probabilistic retrieval.
//
// A memory cell holds one bipolar trace x0 and answers cues by the overlap
// rule: recalled iff h = sum(cue_i * trace_i) exceeds theta*N. Retrieval is
// all-or-none: a recall returns the stored trace exactly, a miss returns
// nothing. Two cue-damage models are supported:
//
//   flip  - each component matches the trace with probability p, otherwise
//           it is negated (cue components stay in {-1,+1})
//   erase - each component matches with probability p, otherwise it is 0
//
// recall_probability gives the exact analytic recall chance via a binomial
// tail; recall_probability_enum recomputes it by walking every damage
// pattern and applying retrieve literally. The two take different routes on
// purpose and are cross-checked in the test suite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fok/errors.hpp"
#include "fok/rng.hpp"

namespace fok {

class Trace {
public:
    // Components must all be +1 or -1 and there must be at least one.
    explicit Trace(std::vector<int8_t> components);

    // Uniform random bipolar trace of dimension n.
    static Trace random(int n, RngStream& rng);

    int dimension() const { return static_cast<int>(components_.size()); }
    const std::vector<int8_t>& components() const { return components_; }

    bool operator==(const Trace&) const = default;

private:
    std::vector<int8_t> components_;
};

enum class NoiseModel : uint8_t { flip, erase };

std::string to_string(NoiseModel model);
NoiseModel noise_model_from_string(const std::string& name);

struct CueSpec {
    NoiseModel model = NoiseModel::flip;
    double p = 1.0; // per-component correctness probability

    void validate() const;
};

struct Cue {
    std::vector<int8_t> components; // values in {-1, 0, +1}
    CueSpec source_spec;

    int dimension() const { return static_cast<int>(components.size()); }
};

struct MemoryCell {
    std::string cell_id;
    Trace trace;
    double theta = 0.0; // recall threshold as a fraction of N, in [0,1)

    int dimension() const { return trace.dimension(); }
};

enum class RetrievalStatus : uint8_t { recalled, miss };

struct RetrievalOutcome {
    RetrievalStatus status = RetrievalStatus::miss;
    std::optional<Trace> output; // present iff recalled; equals the stored trace
    int overlap = 0;             // h = sum(cue_i * trace_i)

    bool recalled() const { return status == RetrievalStatus::recalled; }
};

// Wrap a trace in a cell. theta outside [0,1) is a RangeError.
MemoryCell store_trace(std::string cell_id, Trace trace, double theta);

// Sample a damaged cue for `trace`. Consumes exactly N draws from `rng`.
Cue make_cue(const Trace& trace, const CueSpec& spec, RngStream& rng);

// Overlap rule; ties (h == theta*N) are a miss.
RetrievalOutcome retrieve(const MemoryCell& cell, const Cue& cue);

// Exact recall probability of retrieve over a fresh make_cue sample.
// Flip: P[K > N(1+theta)/2], K ~ Binomial(N, p) correct components.
// Erase: P[M > theta*N], M ~ Binomial(N, p) intact components.
double recall_probability(int n, const CueSpec& spec, double theta);

// Same probability by exhaustive enumeration of all 2^N damage patterns,
// applying retrieve to each. n > 20 is a FeasibilityError. Runs the
// pattern space in parallel when OpenMP is enabled; result is bit-identical
// to recall_probability_enum_serial for any thread count.
double recall_probability_enum(int n, const CueSpec& spec, double theta);

// Single-threaded reference for the enumeration above.
double recall_probability_enum_serial(int n, const CueSpec& spec, double theta);

} // namespace fok
