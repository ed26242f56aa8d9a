#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hoskip/core.hpp"
#include "hoskip/numerics.hpp"

namespace hoskip {

struct AnalyticOptions {
  QuadratureSpec quad{};
  /// Use the arctan forms when eta == 4. When false the general-eta
  /// hypergeometric and quadrature routes are taken at every eta.
  bool closed_forms = true;
};

enum class CurveSource { Analytic, MonteCarlo };

struct CoverageCurve {
  std::vector<double> thresholds_db;
  std::vector<double> values;
  /// 95% half-widths; empty for analytic curves.
  std::vector<double> ci_halfwidth;
  SchemeSpec scheme;
  NetworkParams params;
  CurveSource source = CurveSource::Analytic;
  std::uint64_t trials = 0;
};

/// Laplace transform of the nearest-BS interference for a user served by
/// farther BSs, averaged over r1 ~ 2x/r2^2 on [0, r2]:
///   int_0^r2 2x / (r2^2 (1 + s P x^-eta)) dx.
double lt_nearest_interference(double s, double r2, const NetworkParams& params, const AnalyticOptions& opts = {});

/// Laplace transform of the aggregate interference from all BSs farther than
/// `boundary` (r3 under cooperation, r2 without):
///   exp(-2 pi lambda s P b^(2-eta) / (eta-2) * 2F1(1, 1-2/eta; 2-2/eta; -s P b^-eta)).
double lt_residual_interference(double s, double boundary, const NetworkParams& params,
                                const AnalyticOptions& opts = {});

// Coverage probabilities P(SINR > t) for linear threshold t >= 0. All of
// them return exactly 1 at t == 0 and throw NumericalFailure when the
// quadrature does not converge.
double coverage_best(double t, const NetworkParams& params, const AnalyticOptions& opts = {});
double coverage_blackout_nocoop(double t, const NetworkParams& params, bool ic, const AnalyticOptions& opts = {});
double coverage_blackout_coop(double t, const NetworkParams& params, bool ic, const AnalyticOptions& opts = {});

/// Dispatch on the scheme. Coherent schemes throw InvalidParameter.
double coverage(const SchemeSpec& scheme, double t, const NetworkParams& params, const AnalyticOptions& opts = {});

/// Evaluates thresholds in parallel.
CoverageCurve coverage_curve(const SchemeSpec& scheme, const NetworkParams& params,
                             std::span<const double> thresholds_db, const AnalyticOptions& opts = {});
/// Reference evaluation in threshold order on the calling thread.
CoverageCurve coverage_curve_serial(const SchemeSpec& scheme, const NetworkParams& params,
                                    std::span<const double> thresholds_db, const AnalyticOptions& opts = {});

/// Inclusive grid lo, lo+step, ..., hi (tolerant to rounding at hi).
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace hoskip
