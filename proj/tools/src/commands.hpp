#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace monowave::cli {

inline constexpr std::string_view kManifestSchema = "monowave.manifest/1";
inline constexpr std::string_view kSpecfunReportSchema = "monowave.specfun_report/1";
inline constexpr std::string_view kNodalSummarySchema = "monowave.nodal_summary/1";
inline constexpr std::string_view kExperimentSummarySchema = "monowave.experiment_summary/1";
inline constexpr std::string_view kWitnessReportSchema = "monowave.witness_report/1";

std::string_view tool_version();

enum class Command { kSpecfunCheck, kSample, kNodal, kExperiment, kWitness };

std::string_view to_string(Command command);
/// "specfun-check", "sample", "nodal", "experiment" or "witness".
Command command_from_string(std::string_view name);

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> trials;
  std::optional<std::vector<double>> window;
  std::optional<double> spacing;
};

/// Parses "a,b" or "a,b,c" into window side lengths.
std::vector<double> parse_window(std::string_view text);

/// Applies the overrides, checks every key and value, and returns the
/// canonical config with all defaults spelled out. Throws kValidation.
nlohmann::json effective_config(Command command, nlohmann::json config,
                                const Overrides& overrides = {});

struct RunOutcome {
  std::filesystem::path out_dir;
  std::vector<std::string> outputs;  // relative to out_dir, manifest last
};

/// Runs a command from an effective config and writes its outputs plus
/// manifest.json into config["out"]. Failures after the outputs are written
/// (tolerance breach, unverified witness) still leave them on disk and then
/// throw.
RunOutcome run(Command command, const nlohmann::json& config, int threads = 1);

/// Re-runs the command recorded in a manifest, writing into `out_dir`.
RunOutcome replay(const std::filesystem::path& manifest, const std::filesystem::path& out_dir,
                  int threads = 1);

/// Re-validates an emitted JSON document against its "schema" tag.
void validate_document(const nlohmann::json& j);

}  // namespace monowave::cli
