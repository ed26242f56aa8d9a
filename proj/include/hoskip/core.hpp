#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoskip {

/// Thrown when a parameter set violates one of its invariants. The message
/// names the violated rule.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical-layer and deployment parameters. Distances are km, intensity is
/// BS/km^2, powers are watts.
struct NetworkParams {
  double lambda = 50.0;
  double tx_power = 1.0;
  double eta = 4.0;
  double noise_power = 0.0;
  double bandwidth = 1e7;

  void validate() const;
};

struct MobilityParams {
  double velocity_kmh = 100.0;
  double ho_delay_s = 0.7;

  double velocity_kms() const { return velocity_kmh / 3600.0; }
  void validate() const;
};

struct OverheadParams {
  double u_conventional = 0.3;
  double u_skipping = 0.15;

  void validate() const;
};

enum class Association { BestConnected, SkipNoCoop, SkipCoop };

struct SchemeSpec {
  Association association = Association::BestConnected;
  bool ic = false;        // nearest-BS interference cancellation
  bool coherent = false;  // phase-aligned CoMP benchmark (simulation only)

  bool skipping() const { return association != Association::BestConnected; }
  friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

class SchemeError : public InvalidParameter {
 public:
  enum class Kind { CoherentWithoutCoop, IcOnBestConnected };

  SchemeError(Kind kind, const std::string& what)
      : InvalidParameter(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Returns `s` unchanged or throws SchemeError naming the first violated rule.
SchemeSpec validate_scheme(const SchemeSpec& s);

/// Short identifier used in output files, e.g. "skip-comp-ic".
std::string scheme_id(const SchemeSpec& s);
/// Inverse of scheme_id. Throws InvalidParameter on unknown names.
SchemeSpec parse_scheme_id(std::string_view id);

/// The five variants with an analytic coverage expression, in table order.
inline constexpr SchemeSpec kAnalyticSchemes[] = {
    {Association::BestConnected, false, false},
    {Association::SkipNoCoop, false, false},
    {Association::SkipNoCoop, true, false},
    {Association::SkipCoop, false, false},
    {Association::SkipCoop, true, false},
};

struct OrderedDistances {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  bool ordered() const { return 0.0 <= r1 && r1 <= r2 && r2 <= r3; }
};

double db_to_linear(double t_db);
double linear_to_db(double t);

/// Linear SINR threshold, strictly positive.
class SinrThreshold {
 public:
  explicit SinrThreshold(double linear);
  static SinrThreshold from_db(double t_db) { return SinrThreshold(db_to_linear(t_db)); }

  double value() const { return value_; }
  double db() const { return linear_to_db(value_); }

 private:
  double value_;
};

}  // namespace hoskip
