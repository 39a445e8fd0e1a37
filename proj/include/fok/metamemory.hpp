#pragma once
// Metamemory: the registry of reference traces, and the feeling-of-knowing
// signal it sources.
//
// An entry says "this stimulus has a stored trace in that cell". Lookup is
// deterministic; the registry is written during scenario setup and only
// read afterwards. A feeling of knowing arises exactly when the registry
// identifies a stimulus whose implicit recall has just timed out: the item
// is known but momentarily out of reach. Its felt strength is the current
// emotional background.

#include <map>
#include <optional>
#include <set>
#include <string>

#include "fok/memory_core.hpp"
#include "fok/recall_loops.hpp"

namespace fok {

struct MetamemoryEntry {
    std::string stimulus_id;
    std::string cell_id;
    Trace reference_trace;
};

class MetamemoryRegistry {
public:
    // Duplicate stimulus_id or cell_id is a ConflictError; a reference
    // trace that differs from the cell's stored trace is an IntegrityError.
    const MetamemoryEntry& register_entry(const std::string& stimulus_id, const MemoryCell& cell,
                                          const Trace& reference_trace);

    // Convenience: reference trace taken from the cell itself.
    const MetamemoryEntry& register_entry(const std::string& stimulus_id, const MemoryCell& cell) {
        return register_entry(stimulus_id, cell, cell.trace);
    }

    std::optional<MetamemoryEntry> identify(const std::string& stimulus_id) const;

    size_t size() const { return by_stimulus_.size(); }

private:
    std::map<std::string, MetamemoryEntry> by_stimulus_;
    std::set<std::string> cell_ids_;
};

struct FokSignal {
    bool present = false;
    double strength = 0.0; // in [0,1]; 0 whenever absent
    double assessed_at = 0.0;
};

// present = identified AND the implicit loop timed out; strength is the
// background level b at assessment time.
FokSignal fok_assess(const std::optional<MetamemoryEntry>& ident, const LoopOutcome& implicit_outcome,
                     double background, double t);

} // namespace fok
