#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "drxsim/radio_fsm.hpp"
#include "drxsim/workload.hpp"

namespace drxsim {

struct EnergyReport {
    std::string label;
    double horizon_s = 0.0;
    double total_energy_j = 0.0;
    std::array<double, radio_state_count> state_time_s{};    // indexed by state_index()
    std::array<double, radio_state_count> state_energy_j{};  // sums to total_energy_j
    double mean_power_w = 0.0;
    double mean_current_a = 0.0;  // mean_power_w / nominal_voltage_v
};

/// A server placement to evaluate: one label, one profile, one workload over
/// one path. Labels must be unique within a comparison set.
struct Scenario {
    std::string label;
    PowerProfile profile;
    Workload workload;
    PathModel path;
};

EnergyReport simulate_trace(const EventTrace& trace, const PowerProfile& profile,
                            AccountingMode mode, std::string label);

/// Deterministic: the same scenario always yields a bit-identical report.
EnergyReport simulate(const Scenario& scenario, AccountingMode mode = AccountingMode::average);

struct ComparisonRow {
    std::string label;
    double total_energy_j = 0.0;
    double ratio = 0.0;  // total / baseline total
};

struct ComparisonTable {
    std::string baseline_label;
    std::vector<ComparisonRow> rows;  // input order preserved
};

/// Requires the baseline label to be present and all horizons to be equal.
ComparisonTable compare(const std::vector<EnergyReport>& reports,
                        const std::string& baseline_label);

/// Sets a numeric scenario field addressed as e.g. `path.added_delay_s` or
/// `workload.resource_bytes`. `workload.payload_bytes` sets request and
/// response sizes together for echo workloads.
void apply_parameter(Scenario& scenario, std::string_view parameter, double value);

/// One report per value, labels suffixed `@value`. Members may run
/// concurrently; results are collected in value order.
std::vector<EnergyReport> sweep(const Scenario& base, std::string_view parameter,
                                const std::vector<double>& values,
                                AccountingMode mode = AccountingMode::average);

}  // namespace drxsim
