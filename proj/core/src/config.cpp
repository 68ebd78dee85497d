#include "drxsim/config.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "drxsim/error.hpp"

namespace drxsim {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* key, const std::string& context) {
    if (!j.is_object() || !j.contains(key))
        throw Error(errc::config, "missing field: " + context + "." + key);
    return j.at(key);
}

double require_number(const json& j, const char* key, const std::string& context) {
    const json& field = require_field(j, key, context);
    if (!field.is_number())
        throw Error(errc::config, "field " + context + "." + key + " must be a number");
    return field.get<double>();
}

double optional_number(const json& j, const char* key, const std::string& context,
                       double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& field = j.at(key);
    if (!field.is_number())
        throw Error(errc::config, "field " + context + "." + key + " must be a number");
    return field.get<double>();
}

std::uint64_t require_count(const json& j, const char* key, const std::string& context) {
    const json& field = require_field(j, key, context);
    if (!field.is_number_unsigned() && !field.is_number_integer())
        throw Error(errc::config, "field " + context + "." + key + " must be an integer");
    const auto value = field.get<std::int64_t>();
    if (value <= 0)
        throw Error(errc::config, "field " + context + "." + key + " must be positive");
    return static_cast<std::uint64_t>(value);
}

std::string require_string(const json& j, const char* key, const std::string& context) {
    const json& field = require_field(j, key, context);
    if (!field.is_string())
        throw Error(errc::config, "field " + context + "." + key + " must be a string");
    return field.get<std::string>();
}

DutyCycle duty_cycle_from_json(const json& j, const std::string& context) {
    DutyCycle dc;
    dc.cycle_s = require_number(j, "cycle_s", context);
    dc.on_s = require_number(j, "on_s", context);
    dc.p_on_w = require_number(j, "p_on_w", context);
    dc.p_sleep_w = require_number(j, "p_sleep_w", context);
    return dc;
}

json duty_cycle_to_json(const DutyCycle& dc) {
    return json{{"cycle_s", dc.cycle_s},
                {"on_s", dc.on_s},
                {"p_on_w", dc.p_on_w},
                {"p_sleep_w", dc.p_sleep_w}};
}

}  // namespace

PowerProfile profile_from_json(const json& j, const std::string& context) {
    PowerProfile profile;
    profile.p_cr_w = require_number(j, "p_cr_w", context);
    profile.short_drx = duty_cycle_from_json(require_field(j, "short_drx", context),
                                             context + ".short_drx");
    profile.long_drx = duty_cycle_from_json(require_field(j, "long_drx", context),
                                            context + ".long_drx");
    profile.idle = duty_cycle_from_json(require_field(j, "idle", context), context + ".idle");
    const json& timers = require_field(j, "timers", context);
    profile.timers.t1_s = require_number(timers, "t1_s", context + ".timers");
    profile.timers.t2_s = require_number(timers, "t2_s", context + ".timers");
    profile.timers.t3_s = require_number(timers, "t3_s", context + ".timers");
    profile.nominal_voltage_v = optional_number(j, "nominal_voltage_v", context, 3.85);
    try {
        profile.validate();
    } catch (const Error& e) {
        throw Error(errc::config, context + ": " + e.what());
    }
    return profile;
}

json profile_to_json(const PowerProfile& profile) {
    return json{{"p_cr_w", profile.p_cr_w},
                {"short_drx", duty_cycle_to_json(profile.short_drx)},
                {"long_drx", duty_cycle_to_json(profile.long_drx)},
                {"idle", duty_cycle_to_json(profile.idle)},
                {"timers",
                 json{{"t1_s", profile.timers.t1_s},
                      {"t2_s", profile.timers.t2_s},
                      {"t3_s", profile.timers.t3_s}}},
                {"nominal_voltage_v", profile.nominal_voltage_v}};
}

Workload workload_from_json(const json& j, const std::string& context) {
    Workload workload;
    const std::string type = require_string(j, "type", context);
    if (type == "request_response") {
        RequestResponse rr;
        rr.period_s = require_number(j, "period_s", context);
        rr.request_bytes = require_count(j, "request_bytes", context);
        rr.response_bytes = require_count(j, "response_bytes", context);
        workload.pattern = rr;
    } else if (type == "download") {
        Download dl;
        dl.period_s = require_number(j, "period_s", context);
        dl.resource_bytes = require_count(j, "resource_bytes", context);
        workload.pattern = dl;
    } else {
        throw Error(errc::config,
                    "field " + context + ".type must be `request_response` or `download`");
    }
    workload.duration_s = require_number(j, "duration_s", context);
    if (j.contains("reuse_connection")) {
        const json& field = j.at("reuse_connection");
        if (!field.is_boolean())
            throw Error(errc::config, "field " + context + ".reuse_connection must be a boolean");
        workload.reuse_connection = field.get<bool>();
    }
    try {
        workload.validate();
    } catch (const Error& e) {
        throw Error(errc::config, context + ": " + e.what());
    }
    return workload;
}

PathModel path_from_json(const json& j, const std::string& context) {
    PathModel path;
    path.base_rtt_s = require_number(j, "base_rtt_s", context);
    path.added_delay_s = optional_number(j, "added_delay_s", context, 0.0);
    path.bandwidth_Bps = require_number(j, "bandwidth_Bps", context);
    path.mss_B = static_cast<std::uint32_t>(require_count(j, "mss_B", context));
    path.init_cwnd = static_cast<std::uint32_t>(require_count(j, "init_cwnd", context));
    try {
        path.validate();
    } catch (const Error& e) {
        throw Error(errc::config, context + ": " + e.what());
    }
    return path;
}

namespace {

json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(errc::parse, what + ": malformed JSON");
    return j;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::config, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

AccountingMode mode_from_json(const json& j) {
    if (!j.contains("accounting_mode")) return AccountingMode::average;
    const std::string mode = require_string(j, "accounting_mode", "config");
    if (mode == "average") return AccountingMode::average;
    if (mode == "exact_cycle") return AccountingMode::exact_cycle;
    throw Error(errc::config, "accounting_mode must be `average` or `exact_cycle`");
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
    const json j = parse_json_text(text, "config");
    RunConfig config;
    config.fingerprint = fingerprint_text(text);
    config.mode = mode_from_json(j);

    const json& profile_field = require_field(j, "profile", "config");
    if (profile_field.is_string()) {
        const auto profile_path = base_dir / profile_field.get<std::string>();
        config.profile =
            profile_from_json(parse_json_text(read_file(profile_path), "profile"), "profile");
    } else {
        config.profile = profile_from_json(profile_field, "profile");
    }

    const json& scenarios = require_field(j, "scenarios", "config");
    if (!scenarios.is_array() || scenarios.empty())
        throw Error(errc::config, "config.scenarios must be a non-empty array");
    std::unordered_set<std::string> labels;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const std::string context = "scenarios[" + std::to_string(i) + "]";
        const json& sj = scenarios.at(i);
        Scenario scenario;
        scenario.label = require_string(sj, "label", context);
        if (scenario.label.empty())
            throw Error(errc::config, "field " + context + ".label must be non-empty");
        if (!labels.insert(scenario.label).second)
            throw Error(errc::config, "duplicate scenario label: " + scenario.label);
        scenario.profile = config.profile;
        scenario.workload =
            workload_from_json(require_field(sj, "workload", context), context + ".workload");
        scenario.path = path_from_json(require_field(sj, "path", context), context + ".path");
        config.scenarios.push_back(std::move(scenario));
    }

    if (j.contains("analysis")) {
        const json& aj = j.at("analysis");
        if (aj.contains("slot_len_s")) {
            config.analysis.slot_len_s = require_number(aj, "slot_len_s", "analysis");
            if (!(*config.analysis.slot_len_s > 0.0))
                throw Error(errc::config, "analysis.slot_len_s must be positive");
        }
        if (aj.contains("warmup_s")) {
            config.analysis.warmup_s = require_number(aj, "warmup_s", "analysis");
            if (*config.analysis.warmup_s < 0.0)
                throw Error(errc::config, "analysis.warmup_s must be non-negative");
        }
    }

    if (j.contains("output")) {
        const json& oj = j.at("output");
        if (oj.contains("directory")) config.output.directory = require_string(oj, "directory", "output");
        if (oj.contains("formats")) {
            const json& formats = oj.at("formats");
            if (!formats.is_array() || formats.empty())
                throw Error(errc::config, "output.formats must be a non-empty array");
            config.output.formats.clear();
            for (const auto& f : formats) {
                const std::string name = f.is_string() ? f.get<std::string>() : "";
                if (name != "json" && name != "csv" && name != "svg")
                    throw Error(errc::config, "output.formats entries must be json, csv or svg");
                config.output.formats.push_back(name);
            }
        }
    }
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_file(path), path.parent_path());
}

std::string fingerprint_text(std::string_view text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

}  // namespace drxsim
