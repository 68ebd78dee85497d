#pragma once

#include <cstdint>
#include <vector>

namespace drxsim {

enum class Direction { up, down };

// Instantaneous packet activity seen by the radio interface.
struct PacketEvent {
    double t_s = 0.0;
    Direction dir = Direction::up;
    std::uint64_t bytes = 0;
};

struct EventTrace {
    std::vector<PacketEvent> events;  // non-decreasing timestamps, all <= horizon_s
    double horizon_s = 0.0;
    // Set when parse_packet_trace received out-of-order timestamps and sorted them.
    bool reordered_on_parse = false;
};

inline std::uint64_t total_bytes(const EventTrace& trace) {
    std::uint64_t sum = 0;
    for (const auto& ev : trace.events) sum += ev.bytes;
    return sum;
}

}  // namespace drxsim
