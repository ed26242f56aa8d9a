#include "hoskip/config.hpp"

#include <fstream>
#include <functional>
#include <map>

namespace hoskip {

namespace {

using json = nlohmann::json;

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw InvalidParameter("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InvalidParameter("config key '" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

void RunConfig::validate() const {
  network.validate();
  mobility.validate();
  overhead.validate();
  if (ho_delays.empty()) throw InvalidParameter("at least one ho_delay is required");
  for (double d : ho_delays)
    if (!(d >= 0.0)) throw InvalidParameter("ho_delay must be >= 0");
  simulation.resolved(network.lambda).validate(network.lambda);
}

json RunConfig::to_json() const {
  const SimulationSpec sim = simulation.resolved(network.lambda);
  return {
      {"lambda_bs_per_km2", network.lambda},
      {"eta", network.eta},
      {"tx_power_w", network.tx_power},
      {"noise_power_w", network.noise_power},
      {"bandwidth_hz", network.bandwidth},
      {"velocity_kmh", mobility.velocity_kmh},
      {"ho_delay_s", ho_delays},
      {"u_c_conventional", overhead.u_conventional},
      {"u_c_skipping", overhead.u_skipping},
      {"trials", sim.trials},
      {"seed", sim.seed},
      {"window_radius_km", sim.window_radius},
      {"batch_size", sim.batch_size},
  };
}

void apply_config_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
  using Setter = std::function<void(const json&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"lambda_bs_per_km2", [&](const json& v, const std::string& k) { cfg.network.lambda = number(v, k); }},
      {"eta", [&](const json& v, const std::string& k) { cfg.network.eta = number(v, k); }},
      {"tx_power_w", [&](const json& v, const std::string& k) { cfg.network.tx_power = number(v, k); }},
      {"noise_power_w", [&](const json& v, const std::string& k) { cfg.network.noise_power = number(v, k); }},
      {"bandwidth_hz", [&](const json& v, const std::string& k) { cfg.network.bandwidth = number(v, k); }},
      {"velocity_kmh",
       [&](const json& v, const std::string& k) {
         cfg.mobility.velocity_kmh = number(v, k);
         cfg.velocity_from_file = true;
       }},
      {"ho_delay_s",
       [&](const json& v, const std::string& k) {
         cfg.ho_delays.clear();
         if (v.is_array()) {
           for (const json& e : v) cfg.ho_delays.push_back(number(e, k));
         } else {
           cfg.ho_delays.push_back(number(v, k));
         }
         if (!cfg.ho_delays.empty()) cfg.mobility.ho_delay_s = cfg.ho_delays.front();
       }},
      {"u_c_conventional", [&](const json& v, const std::string& k) { cfg.overhead.u_conventional = number(v, k); }},
      {"u_c_skipping", [&](const json& v, const std::string& k) { cfg.overhead.u_skipping = number(v, k); }},
      {"trials", [&](const json& v, const std::string& k) { cfg.simulation.trials = count(v, k); }},
      {"seed", [&](const json& v, const std::string& k) { cfg.simulation.seed = count(v, k); }},
      {"window_radius_km", [&](const json& v, const std::string& k) { cfg.simulation.window_radius = number(v, k); }},
      {"batch_size", [&](const json& v, const std::string& k) { cfg.simulation.batch_size = count(v, k); }},
  };
  for (const auto& [key, value] : j.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw InvalidParameter("unknown config key '" + key + "'");
    it->second(value, key);
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidParameter("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  RunConfig cfg;
  apply_config_json(cfg, j);
  return cfg;
}

OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw InvalidParameter("output format must be csv or json");
}

}  // namespace hoskip
