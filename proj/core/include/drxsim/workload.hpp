#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "drxsim/events.hpp"

namespace drxsim {

/// Network path between the client and a server placement. The emulated
/// delay is applied once per direction (tc style), so it enters the RTT twice.
struct PathModel {
    double base_rtt_s = 0.0;
    double added_delay_s = 0.0;
    double bandwidth_Bps = 0.0;
    std::uint32_t mss_B = 0;
    std::uint32_t init_cwnd = 1;

    double effective_rtt_s() const { return base_rtt_s + 2.0 * added_delay_s; }
    void validate() const;
};

/// Fixed-frequency request with an echoed response.
struct RequestResponse {
    double period_s = 0.0;
    std::uint64_t request_bytes = 0;
    std::uint64_t response_bytes = 0;
};

/// Periodic download of a fixed-size resource.
struct Download {
    double period_s = 0.0;
    std::uint64_t resource_bytes = 0;
};

struct Workload {
    std::variant<RequestResponse, Download> pattern;
    double duration_s = 0.0;
    // Downloads open a fresh connection per cycle by default; with reuse only
    // the first cycle pays the handshake RTT.
    bool reuse_connection = false;

    double period_s() const;
    void validate() const;
};

/// Idealized slow-start transfer: one request segment up at `start_s`, then
/// round k (k = 0, 1, ...) delivers min(remaining, init_cwnd * 2^k * mss)
/// bytes as a single down event. The handshake costs one effective RTT, each
/// round another, and serialization adds cumulative bytes / bandwidth.
/// `connection_setup` drops the handshake RTT when false (a reused
/// connection).
std::vector<PacketEvent> transfer_timeline(std::uint64_t resource_bytes, const PathModel& path,
                                           double start_s, bool connection_setup = true);

/// One request cycle per period until the workload duration. A cycle whose
/// transfer outlasts the period raises an overlap error.
EventTrace generate_trace(const Workload& workload, const PathModel& path);

/// Parses CSV lines `t_seconds,dir,bytes` with dir in {up, down}; a header
/// line is optional. Out-of-order input is sorted and flagged on the result.
EventTrace parse_packet_trace(std::istream& in,
                              std::optional<double> horizon_override = std::nullopt);

std::string packet_trace_to_csv(const EventTrace& trace);

}  // namespace drxsim
