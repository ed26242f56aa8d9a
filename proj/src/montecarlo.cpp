#include "hoskip/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace hoskip {

namespace {

using std::numbers::pi;
using Poisson = std::poisson_distribution<long>;

// Received quantities of one PPP + fading realization.
struct Realization {
  double p[3];                  // received powers of the three nearest BSs
  std::complex<double> amp[3];  // sqrt(P) h r^(-eta/2) of the same BSs
  double far = 0.0;             // sum of received powers of all other BSs
  OrderedDistances dist;
};

double path_gain(double d2, double eta) {
  if (eta == 4.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -0.5 * eta);
}

void fill_ppp(std::vector<Point2>& out, const Poisson::param_type& count, double radius, RandomStream& rng) {
  const long n = Poisson(count)(rng);
  out.resize(static_cast<std::size_t>(n));
  for (Point2& pt : out) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * pi * rng.uniform();
    pt = {r * std::cos(theta), r * std::sin(theta)};
  }
}

Realization realize(std::span<const Point2> pos, RandomStream& rng, const NetworkParams& params) {
  if (pos.size() < 3) throw TooFewPoints("sinr_sample: fewer than three BSs in the window");
  std::size_t near[3] = {0, 0, 0};
  double near_d2[3] = {INFINITY, INFINITY, INFINITY};
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const double d2 = pos[i].x * pos[i].x + pos[i].y * pos[i].y;
    if (d2 >= near_d2[2]) continue;
    int k = 2;
    while (k > 0 && d2 < near_d2[k - 1]) {
      near_d2[k] = near_d2[k - 1];
      near[k] = near[k - 1];
      --k;
    }
    near_d2[k] = d2;
    near[k] = i;
  }

  Realization out;
  const double sqrt_p = std::sqrt(params.tx_power);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const double power = rng.exponential();
    const int rank = i == near[0] ? 0 : i == near[1] ? 1 : i == near[2] ? 2 : -1;
    if (rank < 0) {
      const double d2 = pos[i].x * pos[i].x + pos[i].y * pos[i].y;
      out.far += params.tx_power * power * path_gain(d2, params.eta);
      continue;
    }
    const double g = path_gain(near_d2[rank], params.eta);
    out.p[rank] = params.tx_power * power * g;
    out.amp[rank] = std::polar(sqrt_p * std::sqrt(power * g), 2.0 * pi * rng.uniform());
  }
  out.dist = {std::sqrt(near_d2[0]), std::sqrt(near_d2[1]), std::sqrt(near_d2[2])};
  return out;
}

double sinr_of(const SchemeSpec& s, const Realization& r, double noise) {
  const double nearest = s.ic ? 0.0 : r.p[0];
  switch (s.association) {
    case Association::BestConnected:
      return r.p[0] / (r.p[1] + r.p[2] + r.far + noise);
    case Association::SkipNoCoop:
      return r.p[1] / (nearest + r.p[2] + r.far + noise);
    case Association::SkipCoop: {
      const double signal = s.coherent ? std::pow(std::abs(r.amp[1]) + std::abs(r.amp[2]), 2)
                                       : std::norm(r.amp[1] + r.amp[2]);
      return signal / (nearest + r.far + noise);
    }
  }
  return 0.0;
}

struct Setup {
  SimulationSpec sim;
  Poisson::param_type count;
};

Setup prepare(std::span<const SchemeSpec> schemes, const NetworkParams& params, const SimulationSpec& sim,
              std::span<const double> thresholds) {
  params.validate();
  for (const SchemeSpec& s : schemes) validate_scheme(s);
  for (double t : thresholds)
    if (!(t >= 0.0)) throw InvalidParameter("thresholds must be >= 0");
  Setup setup{sim.resolved(params.lambda), {}};
  setup.sim.validate(params.lambda);
  setup.count = Poisson::param_type(params.lambda * pi * setup.sim.window_radius * setup.sim.window_radius);
  return setup;
}

SimulationTally empty_tally(std::size_t schemes, std::size_t thresholds) {
  SimulationTally t;
  t.schemes.resize(schemes);
  for (SchemeTally& s : t.schemes) s.covered.assign(thresholds, 0);
  return t;
}

// Adds trial `index` to `tally`; `buffer` is scratch space.
void run_trial(std::uint64_t index, const Setup& setup, std::span<const SchemeSpec> schemes,
               const NetworkParams& params, std::span<const double> thresholds, std::vector<Point2>& buffer,
               SimulationTally& tally) {
  RandomStream rng(setup.sim.seed, index);
  fill_ppp(buffer, setup.count, setup.sim.window_radius, rng);
  while (buffer.size() < 3) {
    ++tally.redraws;
    fill_ppp(buffer, setup.count, setup.sim.window_radius, rng);
  }
  const Realization r = realize(buffer, rng, params);
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    const double sinr = sinr_of(schemes[k], r, params.noise_power);
    SchemeTally& st = tally.schemes[k];
    for (std::size_t j = 0; j < thresholds.size(); ++j)
      if (sinr > thresholds[j]) ++st.covered[j];
    const double l = std::log1p(sinr);
    st.sum_log += l;
    st.sum_log_sq += l * l;
  }
  ++tally.trials;
}

void merge(SimulationTally& into, const SimulationTally& from) {
  for (std::size_t k = 0; k < into.schemes.size(); ++k) {
    SchemeTally& a = into.schemes[k];
    const SchemeTally& b = from.schemes[k];
    for (std::size_t j = 0; j < a.covered.size(); ++j) a.covered[j] += b.covered[j];
    a.sum_log += b.sum_log;
    a.sum_log_sq += b.sum_log_sq;
  }
  into.trials += from.trials;
  into.redraws += from.redraws;
}

}  // namespace

double SimulationSpec::default_window_radius(double lambda) { return std::sqrt(500.0 / (pi * lambda)); }

SimulationSpec SimulationSpec::resolved(double lambda) const {
  SimulationSpec s = *this;
  if (s.window_radius == 0.0) s.window_radius = default_window_radius(lambda);
  return s;
}

void SimulationSpec::validate(double lambda) const {
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  if (batch_size < 1) throw InvalidParameter("batch_size must be >= 1");
  if (!(window_radius > 0.0) || !std::isfinite(window_radius)) throw InvalidParameter("window_radius must be > 0");
  if (lambda * pi * window_radius * window_radius < 100.0)
    throw InvalidParameter("window too small: lambda*pi*R^2 must be >= 100");
}

std::vector<Point2> sample_ppp(double lambda, double window_radius, RandomStream& rng) {
  if (!(lambda > 0.0)) throw InvalidParameter("lambda must be > 0");
  if (!(window_radius > 0.0)) throw InvalidParameter("window_radius must be > 0");
  std::vector<Point2> pts;
  fill_ppp(pts, Poisson::param_type(lambda * pi * window_radius * window_radius), window_radius, rng);
  return pts;
}

SinrSample sinr_sample(const SchemeSpec& scheme, std::span<const Point2> positions, RandomStream& rng,
                       const NetworkParams& params) {
  validate_scheme(scheme);
  const Realization r = realize(positions, rng, params);
  return {scheme, sinr_of(scheme, r, params.noise_power), r.dist};
}

SimulationTally simulate(std::span<const SchemeSpec> schemes, const NetworkParams& params, const SimulationSpec& sim,
                         std::span<const double> thresholds) {
  const Setup setup = prepare(schemes, params, sim, thresholds);
  const std::uint64_t trials = setup.sim.trials;
  const std::uint64_t batch = setup.sim.batch_size;
  const auto batches = static_cast<std::ptrdiff_t>((trials + batch - 1) / batch);

  std::vector<SimulationTally> partial(static_cast<std::size_t>(batches),
                                       empty_tally(schemes.size(), thresholds.size()));
#pragma omp parallel
  {
    std::vector<Point2> buffer;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < batches; ++b) {
      const std::uint64_t first = static_cast<std::uint64_t>(b) * batch;
      const std::uint64_t last = std::min(trials, first + batch);
      for (std::uint64_t i = first; i < last; ++i)
        run_trial(i, setup, schemes, params, thresholds, buffer, partial[static_cast<std::size_t>(b)]);
    }
  }

  SimulationTally total = empty_tally(schemes.size(), thresholds.size());
  for (const SimulationTally& p : partial) merge(total, p);
  return total;
}

SimulationTally simulate_serial(std::span<const SchemeSpec> schemes, const NetworkParams& params,
                                const SimulationSpec& sim, std::span<const double> thresholds) {
  const Setup setup = prepare(schemes, params, sim, thresholds);
  SimulationTally total = empty_tally(schemes.size(), thresholds.size());
  std::vector<Point2> buffer;
  for (std::uint64_t i = 0; i < setup.sim.trials; ++i)
    run_trial(i, setup, schemes, params, thresholds, buffer, total);
  return total;
}

CoverageCurve coverage_from_tally(const SimulationTally& tally, std::size_t scheme_index, const SchemeSpec& scheme,
                                  const NetworkParams& params, std::span<const double> thresholds_db) {
  CoverageCurve curve;
  curve.scheme = scheme;
  curve.params = params;
  curve.source = CurveSource::MonteCarlo;
  curve.trials = tally.trials;
  curve.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
  const auto n = static_cast<double>(tally.trials);
  for (std::uint64_t c : tally.schemes.at(scheme_index).covered) {
    const double p = static_cast<double>(c) / n;
    curve.values.push_back(p);
    curve.ci_halfwidth.push_back(1.96 * std::sqrt(p * (1.0 - p) / n));
  }
  return curve;
}

Estimate spectral_efficiency_from_tally(const SimulationTally& tally, std::size_t scheme_index) {
  const SchemeTally& st = tally.schemes.at(scheme_index);
  const auto n = static_cast<double>(tally.trials);
  const double mean = st.sum_log / n;
  double var = 0.0;
  if (tally.trials > 1) var = std::max(0.0, (st.sum_log_sq - n * mean * mean) / (n - 1.0));
  return {mean, 1.96 * std::sqrt(var / n)};
}

CoverageCurve empirical_coverage(const SchemeSpec& scheme, const NetworkParams& params, const SimulationSpec& sim,
                                 std::span<const double> thresholds_db) {
  std::vector<double> linear;
  for (double db : thresholds_db) linear.push_back(db_to_linear(db));
  const SchemeSpec one[] = {scheme};
  const SimulationTally tally = simulate(one, params, sim, linear);
  return coverage_from_tally(tally, 0, scheme, params, thresholds_db);
}

Estimate empirical_spectral_efficiency(const SchemeSpec& scheme, const NetworkParams& params,
                                       const SimulationSpec& sim) {
  const SchemeSpec one[] = {scheme};
  return spectral_efficiency_from_tally(simulate(one, params, sim, {}), 0);
}

}  // namespace hoskip
