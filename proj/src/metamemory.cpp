#include "fok/metamemory.hpp"

namespace fok {

const MetamemoryEntry& MetamemoryRegistry::register_entry(const std::string& stimulus_id,
                                                          const MemoryCell& cell,
                                                          const Trace& reference_trace) {
    if (by_stimulus_.count(stimulus_id)) {
        throw ConflictError("stimulus '" + stimulus_id + "' is already registered");
    }
    if (cell_ids_.count(cell.cell_id)) {
        throw ConflictError("cell '" + cell.cell_id + "' is already referenced by another stimulus");
    }
    if (!(reference_trace == cell.trace)) {
        throw IntegrityError("reference trace for '" + stimulus_id +
                             "' does not match the trace stored in cell '" + cell.cell_id + "'");
    }
    auto [it, inserted] =
        by_stimulus_.emplace(stimulus_id, MetamemoryEntry{stimulus_id, cell.cell_id, reference_trace});
    cell_ids_.insert(cell.cell_id);
    (void)inserted;
    return it->second;
}

std::optional<MetamemoryEntry> MetamemoryRegistry::identify(const std::string& stimulus_id) const {
    const auto it = by_stimulus_.find(stimulus_id);
    if (it == by_stimulus_.end()) return std::nullopt;
    return it->second;
}

FokSignal fok_assess(const std::optional<MetamemoryEntry>& ident, const LoopOutcome& implicit_outcome,
                     double background, double t) {
    const bool present = ident.has_value() && implicit_outcome.status == LoopStatus::timeout;
    return FokSignal{present, present ? background : 0.0, t};
}

} // namespace fok
