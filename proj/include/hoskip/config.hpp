#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hoskip/core.hpp"
#include "hoskip/montecarlo.hpp"

namespace hoskip {

inline constexpr const char* kToolName = "hoskip";
inline constexpr const char* kToolVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  NetworkParams network;
  MobilityParams mobility;
  OverheadParams overhead;
  SimulationSpec simulation;
  /// HO delays swept by the throughput command; mobility.ho_delay_s is the first.
  std::vector<double> ho_delays{0.7, 2.0};
  /// True when the config file pinned a single velocity.
  bool velocity_from_file = false;
  std::filesystem::path output_path;
  OutputFormat output_format = OutputFormat::Csv;

  /// Throws InvalidParameter naming the violated invariant.
  void validate() const;
  /// Resolved values under the config-file key names.
  nlohmann::json to_json() const;
};

/// Overlays the keys of `j` onto `cfg`. Unknown keys and wrong types throw
/// InvalidParameter.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);

/// Defaults overlaid with the JSON file at `path`. Throws IoError when the
/// file cannot be read and InvalidParameter when it does not parse.
RunConfig load_config(const std::filesystem::path& path);

OutputFormat parse_output_format(const std::string& s);

}  // namespace hoskip
