#pragma once

#include <span>
#include <vector>

#include "hoskip/core.hpp"
#include "hoskip/coverage.hpp"

namespace hoskip {

inline constexpr double kNatsPerBit = 0.69314718055994530942;  // ln 2

struct ThroughputPoint {
  double velocity_kmh = 0.0;
  double ho_delay_s = 0.0;
  SchemeSpec scheme;
  double ho_rate = 0.0;              // HO/s
  double ho_cost = 0.0;              // fraction of time, in [0, 1]
  double spectral_efficiency = 0.0;  // nats/s/Hz
  double throughput_nats = 0.0;      // nats/s
  double throughput_bits = 0.0;      // bit/s
};

/// E[ln(1 + SINR)] = int_0^inf P(SINR > e^z - 1) dz over the analytic
/// coverage of the scheme, in nats/s/Hz. Coherent schemes are rejected.
double spectral_efficiency(const SchemeSpec& scheme, const NetworkParams& params, const AnalyticOptions& opts = {});

/// A skipping user alternates between best-connected and blackout service
/// with equal time shares.
double skipping_avg_se(double se_best, double se_blackout);

/// Cell-boundary crossings per second, 4 v sqrt(lambda) / pi with v in km/s.
double ho_rate(double velocity_kmh, double lambda);

/// Fraction of time spent in HO signalling, clamped to [0, 1]. Skipping
/// schemes execute every other HO.
double ho_cost(const SchemeSpec& scheme, double ho_rate_per_s, double ho_delay_s);

/// W * se * (1 - u) * (1 - D_HO). `se` is the scheme's long-run spectral
/// efficiency (the skipping average for skipping schemes).
ThroughputPoint average_throughput(const SchemeSpec& scheme, const NetworkParams& params,
                                   const MobilityParams& mobility, const OverheadParams& overhead, double se);

/// Long-run spectral efficiency of a scheme: R_c for best-connected, the
/// best/blackout average otherwise. `se_best` is reused when given (> 0).
double long_run_se(const SchemeSpec& scheme, const NetworkParams& params, const AnalyticOptions& opts = {},
                   double se_best = 0.0);

/// Cartesian sweep over schemes x d_values x velocities (velocity fastest).
std::vector<ThroughputPoint> throughput_sweep(const NetworkParams& params, const OverheadParams& overhead,
                                              std::span<const SchemeSpec> schemes,
                                              std::span<const double> velocities_kmh,
                                              std::span<const double> d_values, const AnalyticOptions& opts = {});

}  // namespace hoskip
