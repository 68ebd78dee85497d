#include "drxsim/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "drxsim/error.hpp"
#include "drxsim/format.hpp"

namespace drxsim {

void PathModel::validate() const {
    if (!(base_rtt_s > 0.0))
        throw Error(errc::invalid_input, "path: base_rtt_s must be positive");
    if (added_delay_s < 0.0)
        throw Error(errc::invalid_input, "path: added_delay_s must be non-negative");
    if (!(bandwidth_Bps > 0.0))
        throw Error(errc::invalid_input, "path: bandwidth_Bps must be positive");
    if (mss_B == 0) throw Error(errc::invalid_input, "path: mss_B must be positive");
    if (init_cwnd == 0) throw Error(errc::invalid_input, "path: init_cwnd must be at least 1");
}

double Workload::period_s() const {
    return std::visit([](const auto& p) { return p.period_s; }, pattern);
}

void Workload::validate() const {
    const double period = period_s();
    if (!(period > 0.0)) throw Error(errc::invalid_input, "workload: period_s must be positive");
    if (duration_s < period)
        throw Error(errc::invalid_input, "workload: duration_s must be at least one period");
    if (const auto* rr = std::get_if<RequestResponse>(&pattern)) {
        if (rr->request_bytes == 0 || rr->response_bytes == 0)
            throw Error(errc::invalid_input, "workload: byte counts must be positive");
    } else {
        const auto& dl = std::get<Download>(pattern);
        if (dl.resource_bytes == 0)
            throw Error(errc::invalid_input, "workload: resource_bytes must be positive");
    }
}

std::vector<PacketEvent> transfer_timeline(std::uint64_t resource_bytes, const PathModel& path,
                                           double start_s, bool connection_setup) {
    path.validate();
    if (resource_bytes == 0)
        throw Error(errc::invalid_input, "transfer_timeline: resource_bytes must be positive");

    const double rtt = path.effective_rtt_s();
    const double handshake = connection_setup ? rtt : 0.0;
    std::vector<PacketEvent> events;
    events.push_back({start_s, Direction::up, path.mss_B});  // request, one segment

    std::uint64_t window = static_cast<std::uint64_t>(path.init_cwnd) * path.mss_B;
    std::uint64_t remaining = resource_bytes;
    std::uint64_t cumulative = 0;
    for (int round = 0; remaining > 0; ++round) {
        const std::uint64_t delivered = std::min(remaining, window);
        cumulative += delivered;
        remaining -= delivered;
        const double t = start_s + handshake + (1.0 + round) * rtt +
                         static_cast<double>(cumulative) / path.bandwidth_Bps;
        events.push_back({t, Direction::down, delivered});
        window *= 2;
    }
    return events;
}

EventTrace generate_trace(const Workload& workload, const PathModel& path) {
    workload.validate();
    path.validate();

    const double period = workload.period_s();
    const auto cycles =
        static_cast<std::size_t>(std::floor(workload.duration_s / period + 1e-9));

    EventTrace trace;
    trace.horizon_s = workload.duration_s;
    for (std::size_t i = 0; i < cycles; ++i) {
        const double start = static_cast<double>(i) * period;
        std::vector<PacketEvent> cycle_events;
        if (const auto* rr = std::get_if<RequestResponse>(&workload.pattern)) {
            cycle_events.push_back({start, Direction::up, rr->request_bytes});
            const double arrival = start + path.effective_rtt_s() +
                                   static_cast<double>(rr->response_bytes) / path.bandwidth_Bps;
            cycle_events.push_back({arrival, Direction::down, rr->response_bytes});
        } else {
            const auto& dl = std::get<Download>(workload.pattern);
            const bool setup = !(workload.reuse_connection && i > 0);
            cycle_events = transfer_timeline(dl.resource_bytes, path, start, setup);
        }
        const double completion = cycle_events.back().t_s - start;
        if (completion > period) {
            std::ostringstream msg;
            msg << "cycle " << i << " takes " << completion << " s, exceeding the " << period
                << " s period";
            throw Error(errc::overlap, msg.str());
        }
        for (auto& ev : cycle_events) {
            ev.t_s = std::min(ev.t_s, trace.horizon_s);
            trace.events.push_back(ev);
        }
    }
    return trace;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [end, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && end == last;
}

bool parse_count(std::string_view field, std::uint64_t& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [end, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && end == last;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

[[noreturn]] void parse_fail(int lineno, const std::string& what) {
    throw Error(errc::parse, "packet trace line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

EventTrace parse_packet_trace(std::istream& in, std::optional<double> horizon_override) {
    EventTrace trace;
    std::string raw;
    int lineno = 0;
    bool first_content = true;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto fields = split_fields(line);
        PacketEvent ev;
        if (!parse_number(fields[0], ev.t_s)) {
            if (first_content) {
                first_content = false;  // header line
                continue;
            }
            parse_fail(lineno, "bad timestamp");
        }
        first_content = false;
        if (fields.size() != 3) parse_fail(lineno, "expected `t_seconds,dir,bytes`");
        if (ev.t_s < 0.0) parse_fail(lineno, "negative timestamp");

        const std::string_view dir = trim(fields[1]);
        if (dir == "up") {
            ev.dir = Direction::up;
        } else if (dir == "down") {
            ev.dir = Direction::down;
        } else {
            parse_fail(lineno, "dir must be `up` or `down`");
        }
        if (!parse_count(fields[2], ev.bytes) || ev.bytes == 0)
            parse_fail(lineno, "bytes must be a positive integer");
        trace.events.push_back(ev);
    }

    if (!std::is_sorted(trace.events.begin(), trace.events.end(),
                        [](const PacketEvent& a, const PacketEvent& b) { return a.t_s < b.t_s; })) {
        std::stable_sort(
            trace.events.begin(), trace.events.end(),
            [](const PacketEvent& a, const PacketEvent& b) { return a.t_s < b.t_s; });
        trace.reordered_on_parse = true;
    }

    const double last = trace.events.empty() ? 0.0 : trace.events.back().t_s;
    if (horizon_override) {
        if (*horizon_override < last)
            throw Error(errc::invalid_input, "horizon override precedes the last event");
        trace.horizon_s = *horizon_override;
    } else {
        trace.horizon_s = last;
    }
    return trace;
}

std::string packet_trace_to_csv(const EventTrace& trace) {
    std::string out = "t_seconds,dir,bytes\n";
    for (const auto& ev : trace.events) {
        out += format_double(ev.t_s);
        out += ev.dir == Direction::up ? ",up," : ",down,";
        out += std::to_string(ev.bytes);
        out += '\n';
    }
    return out;
}

}  // namespace drxsim
