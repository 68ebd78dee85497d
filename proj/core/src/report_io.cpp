#include "drxsim/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "drxsim/error.hpp"
#include "drxsim/format.hpp"

namespace drxsim {

using nlohmann::json;

json report_to_json(const EnergyReport& report) {
    json per_state = json::object();
    for (const RadioState state : all_radio_states) {
        const std::size_t idx = state_index(state);
        per_state[std::string(to_string(state))] = json{
            {"time_s", report.state_time_s[idx]}, {"energy_J", report.state_energy_j[idx]}};
    }
    return json{{"label", report.label},
                {"horizon_s", report.horizon_s},
                {"total_J", report.total_energy_j},
                {"mean_W", report.mean_power_w},
                {"mean_A", report.mean_current_a},
                {"per_state", per_state}};
}

EnergyReport report_from_json(const json& j) {
    auto require = [&](const char* key) -> const json& {
        if (!j.is_object() || !j.contains(key))
            throw Error(errc::parse, std::string("report: missing field ") + key);
        return j.at(key);
    };
    EnergyReport report;
    report.label = require("label").get<std::string>();
    report.horizon_s = require("horizon_s").get<double>();
    report.total_energy_j = require("total_J").get<double>();
    report.mean_power_w = require("mean_W").get<double>();
    report.mean_current_a = require("mean_A").get<double>();
    const json& per_state = require("per_state");
    for (const RadioState state : all_radio_states) {
        const std::string key(to_string(state));
        if (!per_state.contains(key))
            throw Error(errc::parse, "report: missing per_state." + key);
        const std::size_t idx = state_index(state);
        report.state_time_s[idx] = per_state.at(key).at("time_s").get<double>();
        report.state_energy_j[idx] = per_state.at(key).at("energy_J").get<double>();
    }
    return report;
}

std::string comparison_to_csv(const ComparisonTable& table) {
    std::string out = "label,total_J,ratio\n";
    for (const auto& row : table.rows) {
        out += row.label;
        out += ',';
        out += format_double(row.total_energy_j);
        out += ',';
        out += format_double(row.ratio);
        out += '\n';
    }
    return out;
}

namespace {

std::string fixed(double value, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << value;
    return os.str();
}

}  // namespace

std::string comparison_to_svg(const ComparisonTable& table) {
    const int width = 640;
    const int height = 360;
    const int margin_left = 60;
    const int margin_bottom = 50;
    const int margin_top = 30;
    const int plot_w = width - margin_left - 20;
    const int plot_h = height - margin_top - margin_bottom;

    double max_ratio = 0.0;
    for (const auto& row : table.rows) max_ratio = std::max(max_ratio, row.ratio);
    if (max_ratio <= 0.0) max_ratio = 1.0;

    const std::size_t n = table.rows.size();
    const double slot = static_cast<double>(plot_w) / static_cast<double>(std::max<std::size_t>(n, 1));
    const double bar_w = slot * 0.6;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">Energy ratio vs "
        << table.baseline_label << "</text>\n";
    // axes
    svg << "  <line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\"" << margin_left
        << "\" y2=\"" << margin_top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << margin_left << "\" y1=\"" << margin_top + plot_h << "\" x2=\""
        << margin_left + plot_w << "\" y2=\"" << margin_top + plot_h << "\" stroke=\"black\"/>\n";

    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = table.rows[i];
        const double h = row.ratio / max_ratio * plot_h;
        const double x = margin_left + slot * static_cast<double>(i) + (slot - bar_w) / 2.0;
        const double y = margin_top + plot_h - h;
        const bool is_baseline = row.label == table.baseline_label;
        svg << "  <rect x=\"" << fixed(x, 1) << "\" y=\"" << fixed(y, 1) << "\" width=\""
            << fixed(bar_w, 1) << "\" height=\"" << fixed(h, 1) << "\" fill=\""
            << (is_baseline ? "#888888" : "#4477aa") << "\"/>\n";
        svg << "  <text x=\"" << fixed(x + bar_w / 2.0, 1) << "\" y=\"" << fixed(y - 4.0, 1)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fixed(row.ratio, 4) << "</text>\n";
        svg << "  <text x=\"" << fixed(x + bar_w / 2.0, 1) << "\" y=\""
            << margin_top + plot_h + 16 << "\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"11\">" << row.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

json analysis_to_json(const SlotScan& scan, const json& parameters) {
    auto slot_to_json = [](const SlotStat& stat) {
        return json{{"slot_index", stat.slot_index},
                    {"start_s", stat.start_s},
                    {"end_s", stat.end_s},
                    {"mean_value", stat.mean_value},
                    {"sample_count", stat.sample_count}};
    };
    json slots = json::array();
    for (const auto& stat : scan.slots) slots.push_back(slot_to_json(stat));
    return json{{"selected_slot", slot_to_json(scan.selected)},
                {"slots", slots},
                {"parameters", parameters}};
}

}  // namespace drxsim
