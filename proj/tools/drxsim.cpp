// drxsim: estimates the radio energy a mobile client spends talking to
// servers placed at different points of the edge-cloud continuum, and runs
// the measurement data-hygiene pipeline over sample series.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "drxsim/config.hpp"
#include "drxsim/error.hpp"
#include "drxsim/format.hpp"
#include "drxsim/report_io.hpp"
#include "drxsim/sim_engine.hpp"
#include "drxsim/trace_hygiene.hpp"
#include "drxsim/workload.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(drxsim::errc code) {
    switch (code) {
        case drxsim::errc::config:
        case drxsim::errc::parse:
            return 2;
        default:
            return 1;
    }
}

std::optional<std::string> resolve_out_dir(const std::string& flag,
                                           const std::string& config_dir) {
    if (!flag.empty()) return flag;
    if (!config_dir.empty()) return config_dir;
    if (const char* env = std::getenv("DRXSIM_OUT"); env != nullptr && *env != '\0')
        return std::string(env);
    return std::nullopt;
}

std::vector<std::string> resolve_formats(const std::string& flag,
                                         const std::vector<std::string>& config_formats) {
    if (flag.empty()) return config_formats;
    std::vector<std::string> formats;
    std::stringstream ss(flag);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item != "json" && item != "csv" && item != "svg")
            throw drxsim::Error(drxsim::errc::config,
                                "--format entries must be json, csv or svg");
        formats.push_back(item);
    }
    if (formats.empty())
        throw drxsim::Error(drxsim::errc::config, "--format must name at least one format");
    return formats;
}

bool wants(const std::vector<std::string>& formats, const std::string& name) {
    for (const auto& f : formats)
        if (f == name) return true;
    return false;
}

void write_text(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw drxsim::Error(drxsim::errc::invalid_input, "cannot write " + path.string());
    out << content;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw drxsim::Error(drxsim::errc::config, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string sanitize_label(const std::string& label) {
    std::string out = label;
    for (char& c : out)
        if (c == '/' || c == '\\' || c == ' ') c = '_';
    return out;
}

drxsim::RunConfig load_config_or_fail(const std::string& path) {
    if (path.empty())
        throw drxsim::Error(drxsim::errc::config, "missing --config");
    return drxsim::load_run_config(path);
}

void write_report(const fs::path& dir, const drxsim::EnergyReport& report,
                  const std::string& fingerprint) {
    json j = drxsim::report_to_json(report);
    j["config_fingerprint"] = fingerprint;
    write_text(dir / (sanitize_label(report.label) + ".report.json"), j.dump(2) + "\n");
}

std::string report_summary_line(const drxsim::EnergyReport& report) {
    std::ostringstream os;
    os << report.label << ": " << report.total_energy_j << " J over " << report.horizon_s
       << " s (mean " << report.mean_power_w << " W, " << report.mean_current_a << " A)";
    return os.str();
}

std::string reports_summary_csv(const std::vector<drxsim::EnergyReport>& reports) {
    std::string csv = "label,horizon_s,total_J,mean_W,mean_A\n";
    for (const auto& report : reports) {
        csv += report.label + ',' + drxsim::format_double(report.horizon_s) + ',' +
               drxsim::format_double(report.total_energy_j) + ',' +
               drxsim::format_double(report.mean_power_w) + ',' +
               drxsim::format_double(report.mean_current_a) + '\n';
    }
    return csv;
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string format;
};

int cmd_simulate(const CommonFlags& flags) {
    const drxsim::RunConfig cfg = load_config_or_fail(flags.config_path);
    const auto dir = fs::path(resolve_out_dir(flags.out_dir, cfg.output.directory).value_or("."));
    const auto formats = resolve_formats(flags.format, cfg.output.formats);

    std::vector<drxsim::EnergyReport> reports;
    for (const auto& scenario : cfg.scenarios) {
        reports.push_back(drxsim::simulate(scenario, cfg.mode));
        write_report(dir, reports.back(), cfg.fingerprint);
        std::cout << report_summary_line(reports.back()) << "\n";
    }
    if (wants(formats, "csv")) write_text(dir / "summary.csv", reports_summary_csv(reports));
    return 0;
}

int cmd_gen_trace(const CommonFlags& flags, const std::string& scenario_label) {
    const drxsim::RunConfig cfg = load_config_or_fail(flags.config_path);
    const auto dir = fs::path(resolve_out_dir(flags.out_dir, cfg.output.directory).value_or("."));

    bool found = false;
    for (const auto& scenario : cfg.scenarios) {
        if (!scenario_label.empty() && scenario.label != scenario_label) continue;
        found = true;
        const drxsim::EventTrace trace = drxsim::generate_trace(scenario.workload, scenario.path);
        const auto path = dir / (sanitize_label(scenario.label) + ".trace.csv");
        write_text(path, drxsim::packet_trace_to_csv(trace));
        std::cout << scenario.label << ": " << trace.events.size() << " events, horizon "
                  << trace.horizon_s << " s -> " << path.string() << "\n";
    }
    if (!found)
        throw drxsim::Error(drxsim::errc::config, "scenario not found: " + scenario_label);
    return 0;
}

int cmd_analyze(const CommonFlags& flags, const std::string& series_path, double slot_len,
                double warmup, bool slot_len_set, bool warmup_set) {
    std::optional<drxsim::RunConfig> cfg;
    if (!flags.config_path.empty()) cfg = drxsim::load_run_config(flags.config_path);
    if (!slot_len_set) {
        if (cfg && cfg->analysis.slot_len_s) {
            slot_len = *cfg->analysis.slot_len_s;
        } else {
            throw drxsim::Error(drxsim::errc::config,
                                "missing --slot-len (or analysis.slot_len_s in the config)");
        }
    }
    if (!warmup_set) warmup = (cfg && cfg->analysis.warmup_s) ? *cfg->analysis.warmup_s : 0.0;

    const std::string text = read_text(series_path);
    std::istringstream in(text);
    drxsim::SampleSeries series = drxsim::parse_sample_series(in);
    if (warmup > 0.0) series = drxsim::discard_warmup(series, warmup);
    const drxsim::SlotScan scan = drxsim::slot_min_mean(series, slot_len);

    const json parameters = {{"series", fs::path(series_path).filename().string()},
                             {"slot_len_s", slot_len},
                             {"warmup_s", warmup},
                             {"unit", series.unit},
                             {"series_fingerprint", drxsim::fingerprint_text(text)}};
    const json out = drxsim::analysis_to_json(scan, parameters);
    std::cout << out.dump(2) << "\n";

    const auto dir = resolve_out_dir(flags.out_dir, cfg ? cfg->output.directory : "");
    if (dir) write_text(fs::path(*dir) / "analysis.json", out.dump(2) + "\n");
    return 0;
}

int cmd_compare(const CommonFlags& flags, const std::vector<std::string>& report_paths,
                const std::string& baseline) {
    if (report_paths.size() < 2)
        throw drxsim::Error(drxsim::errc::invalid_comparison, "need at least two reports");

    std::vector<drxsim::EnergyReport> reports;
    for (const auto& path : report_paths) {
        const json j = json::parse(read_text(path), nullptr, false);
        if (j.is_discarded())
            throw drxsim::Error(drxsim::errc::parse, "malformed report JSON: " + path);
        reports.push_back(drxsim::report_from_json(j));
    }
    const drxsim::ComparisonTable table = drxsim::compare(reports, baseline);
    const std::string csv = drxsim::comparison_to_csv(table);
    std::cout << csv;

    const auto dir = resolve_out_dir(flags.out_dir, "");
    if (dir) {
        const auto formats = resolve_formats(flags.format, {"csv"});
        write_text(fs::path(*dir) / "comparison.csv", csv);
        if (wants(formats, "svg"))
            write_text(fs::path(*dir) / "comparison.svg", drxsim::comparison_to_svg(table));
    }
    return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::string& scenario_label,
              const std::string& parameter, const std::vector<double>& values) {
    const drxsim::RunConfig cfg = load_config_or_fail(flags.config_path);
    const auto dir = fs::path(resolve_out_dir(flags.out_dir, cfg.output.directory).value_or("."));
    const auto formats = resolve_formats(flags.format, cfg.output.formats);

    std::vector<drxsim::EnergyReport> all;
    bool found = false;
    for (const auto& scenario : cfg.scenarios) {
        if (!scenario_label.empty() && scenario.label != scenario_label) continue;
        found = true;
        const auto reports = drxsim::sweep(scenario, parameter, values, cfg.mode);
        for (const auto& report : reports) {
            write_report(dir, report, cfg.fingerprint);
            std::cout << report_summary_line(report) << "\n";
            all.push_back(report);
        }
    }
    if (!found)
        throw drxsim::Error(drxsim::errc::config, "scenario not found: " + scenario_label);
    if (wants(formats, "csv")) write_text(dir / "sweep.csv", reports_summary_csv(all));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DRX radio energy simulator for edge/cloud placement studies"};
    app.require_subcommand(1);

    CommonFlags flags;
    app.add_option("--config", flags.config_path, "run configuration (JSON)");
    app.add_option("--out-dir", flags.out_dir,
                   "output directory (falls back to the config, then $DRXSIM_OUT)");
    app.add_option("--format", flags.format, "comma-separated output formats: json,csv,svg");

    auto* simulate = app.add_subcommand("simulate", "simulate every scenario in the config");
    simulate->fallthrough();

    auto* gen_trace =
        app.add_subcommand("gen-trace", "emit the packet trace a scenario would produce");
    gen_trace->fallthrough();
    std::string gen_trace_scenario;
    gen_trace->add_option("--scenario", gen_trace_scenario, "only this scenario label");

    auto* analyze = app.add_subcommand("analyze", "warm-up discard + slot-minimum filtering");
    analyze->fallthrough();
    std::string series_path;
    double slot_len = 0.0;
    double warmup = 0.0;
    analyze->add_option("--series", series_path, "sample series CSV")->required();
    auto* slot_opt = analyze->add_option("--slot-len", slot_len, "slot length in seconds");
    auto* warmup_opt = analyze->add_option("--warmup", warmup, "warm-up to discard in seconds");

    auto* compare = app.add_subcommand("compare", "energy ratios of reports vs a baseline");
    compare->fallthrough();
    std::vector<std::string> report_paths;
    std::string baseline;
    compare->add_option("reports", report_paths, "energy report JSON files")->expected(-1);
    compare->add_option("--baseline", baseline, "baseline report label")->required();

    auto* sweep = app.add_subcommand("sweep", "simulate a scenario across parameter values");
    sweep->fallthrough();
    std::string sweep_scenario;
    std::string sweep_param;
    std::vector<double> sweep_values;
    sweep->add_option("--scenario", sweep_scenario, "only this scenario label");
    sweep->add_option("--param", sweep_param, "parameter path, e.g. workload.resource_bytes")
        ->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(flags);
        if (gen_trace->parsed()) return cmd_gen_trace(flags, gen_trace_scenario);
        if (analyze->parsed())
            return cmd_analyze(flags, series_path, slot_len, warmup, slot_opt->count() > 0,
                               warmup_opt->count() > 0);
        if (compare->parsed()) return cmd_compare(flags, report_paths, baseline);
        if (sweep->parsed()) return cmd_sweep(flags, sweep_scenario, sweep_param, sweep_values);
    } catch (const drxsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
