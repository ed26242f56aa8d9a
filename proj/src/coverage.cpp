#include "hoskip/coverage.hpp"

#include <cmath>
#include <exception>
#include <numbers>

namespace hoskip {

namespace {

using std::numbers::pi;

bool use_eta4(const NetworkParams& p, const AnalyticOptions& opts) {
  return opts.closed_forms && std::abs(p.eta - 4.0) < 1e-9;
}

double check(const IntegrationResult& r, const char* what) {
  if (!r.converged)
    throw NumericalFailure(std::string(what) + ": quadrature did not converge (error estimate " +
                           std::to_string(r.error_estimate) + ")");
  return r.value;
}

void check_threshold(double t) {
  if (!(t >= 0.0)) throw InvalidParameter("SINR threshold must be >= 0");
}

// int_0^1 2u * u^eta / (u^eta + k) du: nearest-interferer LT in units where
// the serving-ring radius is 1 and k = s P r2^-eta.
double nearest_factor(double k, const NetworkParams& p, const AnalyticOptions& opts) {
  if (k == 0.0) return 1.0;
  if (std::isinf(k)) return 0.0;
  if (use_eta4(p, opts)) {
    const double r = std::sqrt(k);
    return 1.0 - r * std::atan(1.0 / r);
  }
  const double eta = p.eta;
  auto f = [k, eta](double u) {
    const double ue = std::pow(u, eta);
    return 2.0 * u * ue / (ue + k);
  };
  return check(integrate_1d(f, 0.0, 1.0, opts.quad.inner()), "nearest-interferer transform");
}

// 2k/(eta-2) * 2F1(1, 1-2/eta; 2-2/eta; -k): interference functional per unit
// pi*lambda*b^2, where k = s P b^-eta.
double residual_functional(double k, const NetworkParams& p, const AnalyticOptions& opts) {
  if (k == 0.0) return 0.0;
  if (use_eta4(p, opts)) {
    const double r = std::sqrt(k);
    return r * std::atan(r);
  }
  return 2.0 * k / (p.eta - 2.0) * hyp2f1_lt_general(p.eta, k);
}

// Distances scale as r = rho / sqrt(pi lambda); with sigma^2 = 0 every
// integrand below is independent of lambda in rho.
struct Scale {
  double length;
  explicit Scale(const NetworkParams& p) : length(1.0 / std::sqrt(pi * p.lambda)) {}
};

// exp(-s sigma^2) with s = t r^eta / P written for r = length * rho.
double noise_factor(double t, double rho, const NetworkParams& p, const Scale& sc) {
  if (p.noise_power == 0.0) return 1.0;
  return std::exp(-t * p.noise_power * std::pow(sc.length * rho, p.eta) / p.tx_power);
}

}  // namespace

double lt_nearest_interference(double s, double r2, const NetworkParams& params, const AnalyticOptions& opts) {
  if (!(r2 > 0.0)) throw InvalidParameter("r2 must be > 0");
  if (!(s >= 0.0)) throw InvalidParameter("Laplace argument must be >= 0");
  return nearest_factor(s * params.tx_power * std::pow(r2, -params.eta), params, opts);
}

double lt_residual_interference(double s, double boundary, const NetworkParams& params,
                                const AnalyticOptions& opts) {
  if (!(boundary > 0.0)) throw InvalidParameter("boundary distance must be > 0");
  if (!(s >= 0.0)) throw InvalidParameter("Laplace argument must be >= 0");
  params.validate();
  const double k = s * params.tx_power * std::pow(boundary, -params.eta);
  return std::exp(-pi * params.lambda * boundary * boundary * residual_functional(k, params, opts));
}

double coverage_best(double t, const NetworkParams& params, const AnalyticOptions& opts) {
  check_threshold(t);
  params.validate();
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  const Scale sc(params);
  const double rate = 1.0 + residual_functional(t, params, opts);
  auto f = [&](double rho) {
    return 2.0 * rho * std::exp(-rho * rho * rate) * noise_factor(t, rho, params, sc);
  };
  return check(integrate_1d(f, 0.0, INFINITY, opts.quad), "best-connected coverage");
}

double coverage_blackout_nocoop(double t, const NetworkParams& params, bool ic, const AnalyticOptions& opts) {
  check_threshold(t);
  params.validate();
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  const Scale sc(params);
  // With s = t r2^eta / P the nearest-interferer factor depends on t only.
  const double nearest = ic ? 1.0 : nearest_factor(t, params, opts);
  const double rate = 1.0 + residual_functional(t, params, opts);
  auto f = [&](double rho) {
    const double rho2 = rho * rho;
    return 2.0 * rho2 * rho * std::exp(-rho2 * rate) * noise_factor(t, rho, params, sc);
  };
  return nearest * check(integrate_1d(f, 0.0, INFINITY, opts.quad), "blackout coverage");
}

double coverage_blackout_coop(double t, const NetworkParams& params, bool ic, const AnalyticOptions& opts) {
  check_threshold(t);
  params.validate();
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  const Scale sc(params);
  const double eta = params.eta;
  const bool noisy = params.noise_power > 0.0;

  // Outer rho2, inner rho3 >= rho2; joint density 4 rho2^3 rho3 exp(-rho3^2).
  auto f = [&](double rho2, double rho3) {
    const double ratio = std::pow(rho2 / rho3, eta);  // (r2/r3)^eta in [0, 1]
    const double k2 = t / (1.0 + ratio);              // s P r2^-eta
    const double k3 = t * ratio / (1.0 + ratio);      // s P r3^-eta
    double v = 4.0 * rho2 * rho2 * rho2 * rho3 * std::exp(-rho3 * rho3 * (1.0 + residual_functional(k3, params, opts)));
    if (v == 0.0) return 0.0;
    if (!ic) v *= nearest_factor(k2, params, opts);
    if (noisy) {
      const double r2 = sc.length * rho2;
      v *= std::exp(-k2 * std::pow(r2, eta) * params.noise_power / params.tx_power);
    }
    return v;
  };
  return check(integrate_ordered_2d(f, opts.quad), "cooperative blackout coverage");
}

double coverage(const SchemeSpec& scheme, double t, const NetworkParams& params, const AnalyticOptions& opts) {
  validate_scheme(scheme);
  if (scheme.coherent) throw InvalidParameter("coherent scheme is simulation-only");
  switch (scheme.association) {
    case Association::BestConnected: return coverage_best(t, params, opts);
    case Association::SkipNoCoop: return coverage_blackout_nocoop(t, params, scheme.ic, opts);
    case Association::SkipCoop: return coverage_blackout_coop(t, params, scheme.ic, opts);
  }
  return 0.0;
}

namespace {

CoverageCurve make_curve(const SchemeSpec& scheme, const NetworkParams& params, std::span<const double> thresholds_db) {
  validate_scheme(scheme);
  if (scheme.coherent) throw InvalidParameter("coherent scheme is simulation-only");
  params.validate();
  CoverageCurve curve;
  curve.scheme = scheme;
  curve.params = params;
  curve.source = CurveSource::Analytic;
  curve.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
  curve.values.resize(thresholds_db.size());
  for (double db : thresholds_db) db_to_linear(db);
  return curve;
}

}  // namespace

CoverageCurve coverage_curve(const SchemeSpec& scheme, const NetworkParams& params,
                             std::span<const double> thresholds_db, const AnalyticOptions& opts) {
  CoverageCurve curve = make_curve(scheme, params, thresholds_db);
  const auto n = static_cast<std::ptrdiff_t>(thresholds_db.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      curve.values[i] = coverage(scheme, db_to_linear(thresholds_db[i]), params, opts);
    } catch (...) {
#pragma omp critical(hoskip_coverage_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return curve;
}

CoverageCurve coverage_curve_serial(const SchemeSpec& scheme, const NetworkParams& params,
                                    std::span<const double> thresholds_db, const AnalyticOptions& opts) {
  CoverageCurve curve = make_curve(scheme, params, thresholds_db);
  for (std::size_t i = 0; i < thresholds_db.size(); ++i)
    curve.values[i] = coverage(scheme, db_to_linear(thresholds_db[i]), params, opts);
  return curve;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw InvalidParameter("threshold grid requires finite lo <= hi and step > 0");
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

}  // namespace hoskip
