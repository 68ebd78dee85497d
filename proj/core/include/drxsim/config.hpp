#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "drxsim/sim_engine.hpp"

namespace drxsim {

struct AnalysisDefaults {
    std::optional<double> slot_len_s;
    std::optional<double> warmup_s;
};

struct OutputConfig {
    std::string directory;                          // empty: resolved by the CLI
    std::vector<std::string> formats = {"json", "csv"};
};

/// Top-level run configuration: one power profile shared by a set of labeled
/// scenarios, plus analysis defaults and output settings.
struct RunConfig {
    PowerProfile profile;
    AccountingMode mode = AccountingMode::average;
    std::vector<Scenario> scenarios;
    AnalysisDefaults analysis;
    OutputConfig output;
    std::string fingerprint;  // of the raw config text, for reproducible outputs
};

PowerProfile profile_from_json(const nlohmann::json& j, const std::string& context = "profile");
nlohmann::json profile_to_json(const PowerProfile& profile);

Workload workload_from_json(const nlohmann::json& j, const std::string& context);
PathModel path_from_json(const nlohmann::json& j, const std::string& context);

/// `base_dir` resolves a string-valued "profile" (a path to a profile JSON).
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// FNV-1a 64-bit hash, hex-encoded.
std::string fingerprint_text(std::string_view text);

}  // namespace drxsim
