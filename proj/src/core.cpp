#include "hoskip/core.hpp"

#include <cmath>

namespace hoskip {

namespace {

void require(bool ok, const char* rule) {
  if (!ok) throw InvalidParameter(rule);
}

}  // namespace

void NetworkParams::validate() const {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
  require(std::isfinite(tx_power) && tx_power > 0.0, "tx_power must be > 0");
  require(std::isfinite(eta) && eta > 2.0, "eta must be > 2");
  require(std::isfinite(noise_power) && noise_power >= 0.0, "noise_power must be >= 0");
  require(std::isfinite(bandwidth) && bandwidth > 0.0, "bandwidth must be > 0");
}

void MobilityParams::validate() const {
  require(std::isfinite(velocity_kmh) && velocity_kmh >= 0.0, "velocity must be >= 0");
  require(std::isfinite(ho_delay_s) && ho_delay_s >= 0.0, "ho_delay must be >= 0");
}

void OverheadParams::validate() const {
  require(u_conventional >= 0.0 && u_conventional < 1.0, "u_c_conventional must be in [0,1)");
  require(u_skipping >= 0.0 && u_skipping < 1.0, "u_c_skipping must be in [0,1)");
}

SchemeSpec validate_scheme(const SchemeSpec& s) {
  if (s.coherent && s.association != Association::SkipCoop)
    throw SchemeError(SchemeError::Kind::CoherentWithoutCoop,
                      "coherent precoding requires the cooperative skipping scheme");
  if (s.ic && s.association == Association::BestConnected)
    throw SchemeError(SchemeError::Kind::IcOnBestConnected,
                      "interference cancellation is undefined for best-connected association");
  return s;
}

std::string scheme_id(const SchemeSpec& s) {
  std::string id;
  switch (s.association) {
    case Association::BestConnected: id = "best"; break;
    case Association::SkipNoCoop: id = "skip"; break;
    case Association::SkipCoop: id = "skip-comp"; break;
  }
  if (s.coherent) id += "-coherent";
  if (s.ic) id += "-ic";
  return id;
}

SchemeSpec parse_scheme_id(std::string_view id) {
  SchemeSpec s;
  auto strip = [&id](std::string_view suffix) {
    if (id.size() > suffix.size() && id.ends_with(suffix)) {
      id.remove_suffix(suffix.size());
      return true;
    }
    return false;
  };
  s.ic = strip("-ic");
  s.coherent = strip("-coherent");
  if (id == "best")
    s.association = Association::BestConnected;
  else if (id == "skip")
    s.association = Association::SkipNoCoop;
  else if (id == "skip-comp")
    s.association = Association::SkipCoop;
  else
    throw InvalidParameter("unknown scheme '" + std::string(id) + "'");
  return validate_scheme(s);
}

double db_to_linear(double t_db) {
  if (!std::isfinite(t_db)) throw InvalidParameter("dB value must be finite");
  return std::pow(10.0, t_db / 10.0);
}

double linear_to_db(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidParameter("linear ratio must be positive and finite");
  return 10.0 * std::log10(t);
}

SinrThreshold::SinrThreshold(double linear) : value_(linear) {
  if (!(linear > 0.0) || !std::isfinite(linear))
    throw InvalidParameter("SINR threshold must be > 0");
}

}  // namespace hoskip
