#include "fok/event_log.hpp"

#include <array>
#include <cstdio>

namespace fok {

namespace {

constexpr std::array<const char*, 13> kKindNames = {
    "stimulus_on",   "stimulus_off",     "classified",  "hormonal_onset", "fast_action",
    "implicit_attempt", "implicit_timeout", "fok",      "explicit_attempt", "hint_applied",
    "recalled",      "slow_action",      "consolidated",
};

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

} // namespace

std::string to_string(EventKind kind) {
    return kKindNames[static_cast<size_t>(kind)];
}

EventKind event_kind_from_string(const std::string& name) {
    for (size_t i = 0; i < kKindNames.size(); ++i) {
        if (name == kKindNames[i]) return static_cast<EventKind>(i);
    }
    throw ParseError("unknown event kind '" + name + "'");
}

Payload& Payload::add(std::string key, std::string value) {
    items_.emplace_back(std::move(key), Value{std::move(value)});
    return *this;
}
Payload& Payload::add(std::string key, const char* value) {
    return add(std::move(key), std::string(value));
}
Payload& Payload::add(std::string key, double value) {
    items_.emplace_back(std::move(key), Value{value});
    return *this;
}
Payload& Payload::add(std::string key, int64_t value) {
    items_.emplace_back(std::move(key), Value{value});
    return *this;
}
Payload& Payload::add(std::string key, int value) {
    return add(std::move(key), static_cast<int64_t>(value));
}
Payload& Payload::add(std::string key, bool value) {
    items_.emplace_back(std::move(key), Value{value});
    return *this;
}

std::string format_time(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", t);
    return buf;
}

std::string to_json_line(const Event& event) {
    std::string out = "{\"t\":";
    out += format_time(event.t);
    out += ",\"kind\":";
    append_json_string(out, to_string(event.kind));
    out += ",\"payload\":{";
    bool first = true;
    for (const auto& [key, value] : event.payload.items()) {
        if (!first) out += ',';
        first = false;
        append_json_string(out, key);
        out += ':';
        if (const auto* s = std::get_if<std::string>(&value)) {
            append_json_string(out, *s);
        } else if (const auto* d = std::get_if<double>(&value)) {
            out += format_time(*d);
        } else if (const auto* i = std::get_if<int64_t>(&value)) {
            out += std::to_string(*i);
        } else {
            out += std::get<bool>(value) ? "true" : "false";
        }
    }
    out += "}}";
    return out;
}

std::string EventLog::render() const {
    std::string out;
    for (const Event& e : events) {
        out += to_json_line(e);
        out += '\n';
    }
    return out;
}

} // namespace fok
