#include "hoskip/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hoskip {

double spectral_efficiency(const SchemeSpec& scheme, const NetworkParams& params, const AnalyticOptions& opts) {
  validate_scheme(scheme);
  if (scheme.coherent) throw InvalidParameter("coherent scheme is simulation-only");
  params.validate();
  AnalyticOptions inner = opts;
  inner.quad = opts.quad.inner();
  // t = e^z - 1 turns the 1/(1+t) weight into a plain coverage integral
  // whose integrand decays exponentially in z.
  auto f = [&](double z) {
    const double t = std::expm1(z);
    if (std::isinf(t)) return 0.0;
    return coverage(scheme, t, params, inner);
  };
  const IntegrationResult r = integrate_1d(f, 0.0, INFINITY, opts.quad);
  if (!r.converged) throw NumericalFailure("spectral efficiency: quadrature did not converge");
  return r.value;
}

double skipping_avg_se(double se_best, double se_blackout) {
  if (!(se_best >= 0.0) || !(se_blackout >= 0.0)) throw InvalidParameter("spectral efficiencies must be >= 0");
  return 0.5 * (se_best + se_blackout);
}

double ho_rate(double velocity_kmh, double lambda) {
  if (!(velocity_kmh >= 0.0)) throw InvalidParameter("velocity must be >= 0");
  if (!(lambda > 0.0)) throw InvalidParameter("lambda must be > 0");
  return 4.0 * (velocity_kmh / 3600.0) * std::sqrt(lambda) / std::numbers::pi;
}

double ho_cost(const SchemeSpec& scheme, double ho_rate_per_s, double ho_delay_s) {
  if (!(ho_rate_per_s >= 0.0) || !(ho_delay_s >= 0.0)) throw InvalidParameter("HO rate and delay must be >= 0");
  const double executed = scheme.skipping() ? 0.5 * ho_rate_per_s : ho_rate_per_s;
  return std::clamp(executed * ho_delay_s, 0.0, 1.0);
}

ThroughputPoint average_throughput(const SchemeSpec& scheme, const NetworkParams& params,
                                   const MobilityParams& mobility, const OverheadParams& overhead, double se) {
  validate_scheme(scheme);
  params.validate();
  mobility.validate();
  overhead.validate();
  if (!(se >= 0.0)) throw InvalidParameter("spectral efficiency must be >= 0");

  ThroughputPoint pt;
  pt.velocity_kmh = mobility.velocity_kmh;
  pt.ho_delay_s = mobility.ho_delay_s;
  pt.scheme = scheme;
  pt.ho_rate = ho_rate(mobility.velocity_kmh, params.lambda);
  pt.ho_cost = ho_cost(scheme, pt.ho_rate, mobility.ho_delay_s);
  pt.spectral_efficiency = se;
  const double u = scheme.skipping() ? overhead.u_skipping : overhead.u_conventional;
  pt.throughput_nats = params.bandwidth * se * (1.0 - u) * (1.0 - pt.ho_cost);
  pt.throughput_bits = pt.throughput_nats / kNatsPerBit;
  return pt;
}

double long_run_se(const SchemeSpec& scheme, const NetworkParams& params, const AnalyticOptions& opts,
                   double se_best) {
  constexpr SchemeSpec best{};
  if (se_best <= 0.0) se_best = spectral_efficiency(best, params, opts);
  if (!scheme.skipping()) return se_best;
  return skipping_avg_se(se_best, spectral_efficiency(scheme, params, opts));
}

std::vector<ThroughputPoint> throughput_sweep(const NetworkParams& params, const OverheadParams& overhead,
                                              std::span<const SchemeSpec> schemes,
                                              std::span<const double> velocities_kmh,
                                              std::span<const double> d_values, const AnalyticOptions& opts) {
  params.validate();
  overhead.validate();
  const double se_best = spectral_efficiency(SchemeSpec{}, params, opts);
  std::vector<double> se;
  for (const SchemeSpec& s : schemes) se.push_back(long_run_se(s, params, opts, se_best));

  std::vector<ThroughputPoint> out;
  for (std::size_t k = 0; k < schemes.size(); ++k)
    for (double d : d_values)
      for (double v : velocities_kmh) out.push_back(average_throughput(schemes[k], params, {v, d}, overhead, se[k]));
  return out;
}

}  // namespace hoskip
