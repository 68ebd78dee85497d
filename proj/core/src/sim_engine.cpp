#include "drxsim/sim_engine.hpp"

#include <cmath>
#include <future>
#include <unordered_set>

#include "drxsim/error.hpp"
#include "drxsim/format.hpp"

namespace drxsim {

EnergyReport simulate_trace(const EventTrace& trace, const PowerProfile& profile,
                            AccountingMode mode, std::string label) {
    profile.validate();
    const StateTimeline timeline = build_state_timeline(trace, profile.timers, trace.horizon_s);

    EnergyReport report;
    report.label = std::move(label);
    report.horizon_s = timeline.horizon_s;
    for (const auto& interval : timeline.intervals) {
        const std::size_t idx = state_index(interval.state);
        report.state_time_s[idx] += interval.duration_s();
        report.state_energy_j[idx] += energy_of_interval(interval, profile, mode);
    }
    for (const double e : report.state_energy_j) report.total_energy_j += e;
    report.mean_power_w = report.total_energy_j / report.horizon_s;
    report.mean_current_a = report.mean_power_w / profile.nominal_voltage_v;
    return report;
}

EnergyReport simulate(const Scenario& scenario, AccountingMode mode) {
    const EventTrace trace = generate_trace(scenario.workload, scenario.path);
    return simulate_trace(trace, scenario.profile, mode, scenario.label);
}

ComparisonTable compare(const std::vector<EnergyReport>& reports,
                        const std::string& baseline_label) {
    const EnergyReport* baseline = nullptr;
    std::unordered_set<std::string> labels;
    for (const auto& report : reports) {
        if (!labels.insert(report.label).second)
            throw Error(errc::invalid_comparison, "duplicate label: " + report.label);
        if (report.label == baseline_label) baseline = &report;
    }
    if (baseline == nullptr)
        throw Error(errc::invalid_comparison, "baseline label not found: " + baseline_label);
    for (const auto& report : reports) {
        if (std::fabs(report.horizon_s - baseline->horizon_s) > 1e-9)
            throw Error(errc::invalid_comparison,
                        "mismatched horizons: " + report.label + " vs " + baseline_label);
    }

    ComparisonTable table;
    table.baseline_label = baseline_label;
    table.rows.reserve(reports.size());
    for (const auto& report : reports)
        table.rows.push_back(
            {report.label, report.total_energy_j, report.total_energy_j / baseline->total_energy_j});
    return table;
}

namespace {

std::uint64_t as_byte_count(std::string_view parameter, double value) {
    if (!(value >= 1.0))
        throw Error(errc::config, std::string(parameter) + " must be a positive byte count");
    return static_cast<std::uint64_t>(std::llround(value));
}

[[noreturn]] void unknown_parameter(std::string_view parameter) {
    throw Error(errc::config, "unknown sweep parameter: " + std::string(parameter));
}

}  // namespace

void apply_parameter(Scenario& scenario, std::string_view parameter, double value) {
    if (parameter == "path.base_rtt_s") {
        scenario.path.base_rtt_s = value;
    } else if (parameter == "path.added_delay_s") {
        scenario.path.added_delay_s = value;
    } else if (parameter == "path.bandwidth_Bps") {
        scenario.path.bandwidth_Bps = value;
    } else if (parameter == "path.mss_B") {
        scenario.path.mss_B = static_cast<std::uint32_t>(as_byte_count(parameter, value));
    } else if (parameter == "path.init_cwnd") {
        if (!(value >= 1.0)) throw Error(errc::config, "path.init_cwnd must be at least 1");
        scenario.path.init_cwnd = static_cast<std::uint32_t>(std::llround(value));
    } else if (parameter == "workload.duration_s") {
        scenario.workload.duration_s = value;
    } else if (parameter == "workload.period_s") {
        std::visit([&](auto& p) { p.period_s = value; }, scenario.workload.pattern);
    } else if (parameter == "workload.request_bytes" || parameter == "workload.response_bytes" ||
               parameter == "workload.payload_bytes") {
        auto* rr = std::get_if<RequestResponse>(&scenario.workload.pattern);
        if (rr == nullptr)
            throw Error(errc::config,
                        std::string(parameter) + " requires a request_response workload");
        const std::uint64_t bytes = as_byte_count(parameter, value);
        if (parameter != "workload.response_bytes") rr->request_bytes = bytes;
        if (parameter != "workload.request_bytes") rr->response_bytes = bytes;
    } else if (parameter == "workload.resource_bytes") {
        auto* dl = std::get_if<Download>(&scenario.workload.pattern);
        if (dl == nullptr)
            throw Error(errc::config, "workload.resource_bytes requires a download workload");
        dl->resource_bytes = as_byte_count(parameter, value);
    } else {
        unknown_parameter(parameter);
    }
    scenario.workload.validate();
    scenario.path.validate();
}

namespace {

std::string format_sweep_value(double value) {
    if (value == std::floor(value) && std::fabs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    return format_double(value);
}

}  // namespace

std::vector<EnergyReport> sweep(const Scenario& base, std::string_view parameter,
                                const std::vector<double>& values, AccountingMode mode) {
    std::vector<Scenario> members;
    members.reserve(values.size());
    for (const double value : values) {
        Scenario member = base;
        apply_parameter(member, parameter, value);
        member.label = base.label + "@" + format_sweep_value(value);
        members.push_back(std::move(member));
    }

    std::vector<std::future<EnergyReport>> pending;
    pending.reserve(members.size());
    for (const auto& member : members)
        pending.push_back(
            std::async(std::launch::async, [&member, mode] { return simulate(member, mode); }));

    std::vector<EnergyReport> reports;
    reports.reserve(pending.size());
    for (auto& fut : pending) reports.push_back(fut.get());
    return reports;
}

}  // namespace drxsim
