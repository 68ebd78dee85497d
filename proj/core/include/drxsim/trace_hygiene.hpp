#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace drxsim {

struct Sample {
    double t_s = 0.0;
    double value = 0.0;
};

/// Timestamped scalar measurements (current, power, battery level).
struct SampleSeries {
    std::vector<Sample> samples;  // strictly increasing timestamps
    std::string unit;
};

struct SlotStat {
    std::size_t slot_index = 0;
    double start_s = 0.0;
    double end_s = 0.0;  // half-open slot [start_s, end_s)
    double mean_value = 0.0;
    std::size_t sample_count = 0;
};

struct SlotScan {
    SlotStat selected;  // minimal mean, ties broken by smallest index
    std::vector<SlotStat> slots;
};

/// Drops samples before `warmup_s` and re-bases timestamps to zero. Keeping
/// nothing is an error.
SampleSeries discard_warmup(const SampleSeries& series, double warmup_s);

/// Partitions [0, T) into full slots of `slot_len_s` (trailing partial slot
/// discarded) and selects the slot with minimal mean value.
SlotScan slot_min_mean(const SampleSeries& series, double slot_len_s);

/// Rescales uptime to a common reference charge: uptime * reference / initial.
double normalize_uptime(double uptime_s, double initial_charge_mah, double reference_charge_mah);

struct DischargeConversion {
    SampleSeries power;  // unit "W", one sample per segment at its midpoint
    std::size_t charging_segments_excluded = 0;
};

/// Converts a battery-level series (unit "battery_%" or "mAh") to piecewise
/// power. Segments where the level increases are excluded and counted.
DischargeConversion discharge_to_power(const SampleSeries& battery, double capacity_mah,
                                       double voltage_v);

/// Parses CSV lines `t_seconds,value`; the unit is declared in a header
/// comment `# unit: X`. Duplicate or decreasing timestamps are parse errors.
SampleSeries parse_sample_series(std::istream& in);

std::string sample_series_to_csv(const SampleSeries& series);

}  // namespace drxsim
