#pragma once
// Timestamped, typed simulation events and their JSON Lines form.
//
// One record per line: {"t":<fixed 6 decimals>,"kind":"...","payload":{...}}
// Payload keys keep insertion order and doubles are printed with the same
// fixed 6-decimal format as t, so a (config, seed) pair renders to a
// byte-identical log every time.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fok/errors.hpp"

namespace fok {

enum class EventKind : uint8_t {
    stimulus_on,
    stimulus_off,
    classified,
    hormonal_onset,
    fast_action,
    implicit_attempt,
    implicit_timeout,
    fok,
    explicit_attempt,
    hint_applied,
    recalled,
    slow_action,
    consolidated,
};

std::string to_string(EventKind kind);
EventKind event_kind_from_string(const std::string& name);

class Payload {
public:
    using Value = std::variant<std::string, double, int64_t, bool>;

    Payload& add(std::string key, std::string value);
    Payload& add(std::string key, const char* value);
    Payload& add(std::string key, double value);
    Payload& add(std::string key, int64_t value);
    Payload& add(std::string key, int value);
    Payload& add(std::string key, bool value);

    const std::vector<std::pair<std::string, Value>>& items() const { return items_; }

private:
    std::vector<std::pair<std::string, Value>> items_;
};

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::stimulus_on;
    Payload payload;
};

struct EventLog {
    std::vector<Event> events;

    std::string render() const; // JSON Lines, trailing newline per record
};

std::string to_json_line(const Event& event);

// Fixed 6-decimal rendering shared by timestamps and payload doubles.
std::string format_time(double t);

} // namespace fok
