#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hoskip/core.hpp"
#include "hoskip/coverage.hpp"
#include "hoskip/random.hpp"

namespace hoskip {

struct SimulationSpec {
  std::uint64_t trials = 100000;
  double window_radius = 0.0;  // km; 0 selects the default for the intensity
  std::uint64_t seed = 1;
  std::uint64_t batch_size = 4096;

  /// Radius with an expected 500 BSs in the window.
  static double default_window_radius(double lambda);
  /// Copy with window_radius resolved against lambda.
  SimulationSpec resolved(double lambda) const;
  /// Throws InvalidParameter; requires window_radius already resolved.
  void validate(double lambda) const;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

class TooFewPoints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SinrSample {
  SchemeSpec scheme;
  double sinr = 0.0;
  OrderedDistances distances;
};

/// Homogeneous PPP on the disc of radius window_radius centred on the user.
std::vector<Point2> sample_ppp(double lambda, double window_radius, RandomStream& rng);

/// Draws iid unit-power circularly-symmetric complex Gaussian fading for
/// every BS and evaluates the scheme's SINR. Per BS in position order the
/// stream supplies the power |h|^2 ~ Exp(1), followed by a uniform phase for
/// the three nearest BSs only. Throws TooFewPoints with fewer than three BSs.
SinrSample sinr_sample(const SchemeSpec& scheme, std::span<const Point2> positions, RandomStream& rng,
                       const NetworkParams& params);

/// Per-scheme accumulators over a set of trials.
struct SchemeTally {
  std::vector<std::uint64_t> covered;  // per threshold, count of SINR > T
  double sum_log = 0.0;                // sum of ln(1 + SINR)
  double sum_log_sq = 0.0;
};

struct SimulationTally {
  std::vector<SchemeTally> schemes;
  std::uint64_t trials = 0;
  std::uint64_t redraws = 0;  // realizations with fewer than 3 BSs, redrawn
};

/// Runs `sim.trials` independent realizations, each shared by all schemes so
/// that per-trial differences between schemes use identical positions and
/// fading. Batches run in parallel; batch partials are reduced in batch
/// order, so output is bit-identical for a fixed (seed, batch_size).
SimulationTally simulate(std::span<const SchemeSpec> schemes, const NetworkParams& params, const SimulationSpec& sim,
                         std::span<const double> thresholds_linear);
/// Reference: one loop over trials on the calling thread.
SimulationTally simulate_serial(std::span<const SchemeSpec> schemes, const NetworkParams& params,
                                const SimulationSpec& sim, std::span<const double> thresholds_linear);

struct Estimate {
  double mean = 0.0;
  double ci_halfwidth = 0.0;  // 95%
};

CoverageCurve coverage_from_tally(const SimulationTally& tally, std::size_t scheme_index, const SchemeSpec& scheme,
                                  const NetworkParams& params, std::span<const double> thresholds_db);
Estimate spectral_efficiency_from_tally(const SimulationTally& tally, std::size_t scheme_index);

/// Fraction of trials with SINR > T at each threshold, with 95% binomial
/// half-widths 1.96 sqrt(p(1-p)/n).
CoverageCurve empirical_coverage(const SchemeSpec& scheme, const NetworkParams& params, const SimulationSpec& sim,
                                 std::span<const double> thresholds_db);

/// Sample mean of ln(1 + SINR) in nats/s/Hz with a 95% half-width.
Estimate empirical_spectral_efficiency(const SchemeSpec& scheme, const NetworkParams& params,
                                       const SimulationSpec& sim);

}  // namespace hoskip
