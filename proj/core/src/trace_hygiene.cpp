#include "drxsim/trace_hygiene.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>

#include "drxsim/error.hpp"
#include "drxsim/format.hpp"

namespace drxsim {

SampleSeries discard_warmup(const SampleSeries& series, double warmup_s) {
    if (warmup_s < 0.0)
        throw Error(errc::invalid_input, "discard_warmup: warmup must be non-negative");
    if (series.samples.empty())
        throw Error(errc::empty_series, "discard_warmup: series is empty");
    if (warmup_s >= series.samples.back().t_s)
        throw Error(errc::empty_series, "discard_warmup: warm-up discards the entire series");

    SampleSeries out;
    out.unit = series.unit;
    for (const auto& sample : series.samples) {
        if (sample.t_s >= warmup_s) out.samples.push_back({sample.t_s - warmup_s, sample.value});
    }
    return out;
}

SlotScan slot_min_mean(const SampleSeries& series, double slot_len_s) {
    if (!(slot_len_s > 0.0))
        throw Error(errc::invalid_input, "slot_min_mean: slot length must be positive");
    if (series.samples.empty())
        throw Error(errc::invalid_input, "slot_min_mean: series is empty");

    const double span = series.samples.back().t_s;
    const auto slot_count = static_cast<std::size_t>(std::floor(span / slot_len_s + 1e-9));
    if (slot_count == 0)
        throw Error(errc::insufficient_data, "slot_min_mean: no full slot fits the series");

    std::vector<double> sums(slot_count, 0.0);
    std::vector<std::size_t> counts(slot_count, 0);
    for (const auto& sample : series.samples) {
        if (sample.t_s < 0.0) continue;
        const auto idx = static_cast<std::size_t>(std::floor(sample.t_s / slot_len_s));
        if (idx >= slot_count) continue;  // trailing partial slot
        sums[idx] += sample.value;
        ++counts[idx];
    }

    SlotScan scan;
    for (std::size_t idx = 0; idx < slot_count; ++idx) {
        if (counts[idx] == 0) continue;
        SlotStat stat;
        stat.slot_index = idx;
        stat.start_s = static_cast<double>(idx) * slot_len_s;
        stat.end_s = static_cast<double>(idx + 1) * slot_len_s;
        stat.mean_value = sums[idx] / static_cast<double>(counts[idx]);
        stat.sample_count = counts[idx];
        scan.slots.push_back(stat);
    }
    if (scan.slots.empty())
        throw Error(errc::insufficient_data, "slot_min_mean: no slot contains samples");

    scan.selected = scan.slots.front();
    for (const auto& stat : scan.slots) {
        if (stat.mean_value < scan.selected.mean_value) scan.selected = stat;
    }
    return scan;
}

double normalize_uptime(double uptime_s, double initial_charge_mah,
                        double reference_charge_mah) {
    if (uptime_s < 0.0)
        throw Error(errc::invalid_input, "normalize_uptime: uptime must be non-negative");
    if (!(initial_charge_mah > 0.0) || !(reference_charge_mah > 0.0))
        throw Error(errc::invalid_input, "normalize_uptime: charges must be positive");
    return uptime_s * reference_charge_mah / initial_charge_mah;
}

DischargeConversion discharge_to_power(const SampleSeries& battery, double capacity_mah,
                                       double voltage_v) {
    if (!(capacity_mah > 0.0))
        throw Error(errc::invalid_input, "discharge_to_power: capacity must be positive");
    if (!(voltage_v > 0.0))
        throw Error(errc::invalid_input, "discharge_to_power: voltage must be positive");

    const bool percent = battery.unit == "battery_%";
    if (!percent && battery.unit != "mAh")
        throw Error(errc::invalid_input,
                    "discharge_to_power: unit must be `battery_%` or `mAh`, got `" +
                        battery.unit + "`");

    auto charge_mah = [&](double value) {
        return percent ? value / 100.0 * capacity_mah : value;
    };

    DischargeConversion result;
    result.power.unit = "W";
    const auto& samples = battery.samples;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const double dt = samples[i + 1].t_s - samples[i].t_s;
        if (!(dt > 0.0))
            throw Error(errc::invalid_input,
                        "discharge_to_power: timestamps must strictly increase");
        const double dq = charge_mah(samples[i + 1].value) - charge_mah(samples[i].value);
        if (dq > 0.0) {
            ++result.charging_segments_excluded;
            continue;
        }
        // 1 mAh == 3.6 C
        const double amps = -dq * 3.6 / dt;
        result.power.samples.push_back(
            {(samples[i].t_s + samples[i + 1].t_s) / 2.0, amps * voltage_v});
    }
    return result;
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
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc() && end == field.data() + field.size();
}

[[noreturn]] void parse_fail(int lineno, const std::string& what) {
    throw Error(errc::parse, "sample series line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

SampleSeries parse_sample_series(std::istream& in) {
    SampleSeries series;
    std::string raw;
    int lineno = 0;
    bool first_content = true;
    double prev_t = -std::numeric_limits<double>::infinity();
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string_view body = trim(line.substr(1));
            if (body.starts_with("unit:")) series.unit = std::string(trim(body.substr(5)));
            continue;
        }

        const std::size_t comma = line.find(',');
        Sample sample;
        if (comma == std::string_view::npos || !parse_number(line.substr(0, comma), sample.t_s)) {
            if (first_content) {
                first_content = false;  // header line
                continue;
            }
            parse_fail(lineno, "expected `t_seconds,value`");
        }
        first_content = false;
        if (!parse_number(line.substr(comma + 1), sample.value)) parse_fail(lineno, "bad value");
        if (sample.t_s == prev_t) parse_fail(lineno, "duplicate timestamp");
        if (sample.t_s < prev_t) parse_fail(lineno, "timestamps must increase");
        prev_t = sample.t_s;
        series.samples.push_back(sample);
    }
    if (series.samples.empty())
        throw Error(errc::empty_series, "sample series: no data rows");
    return series;
}

std::string sample_series_to_csv(const SampleSeries& series) {
    std::string out = "# unit: " + series.unit + "\n";
    for (const auto& sample : series.samples) {
        out += format_double(sample.t_s);
        out += ',';
        out += format_double(sample.value);
        out += '\n';
    }
    return out;
}

}  // namespace drxsim
