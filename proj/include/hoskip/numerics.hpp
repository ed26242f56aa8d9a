#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hoskip {

/// Raised when a quadrature required by an analytic evaluator fails to
/// reach its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;

  void validate() const;
  /// Tolerances for an integral nested inside another one.
  QuadratureSpec inner() const { return {rel_tol * 1e-2, abs_tol * 1e-2, max_subdivisions}; }
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// 2F1(1, 1-2/eta; 2-2/eta; -x) for eta > 2, x >= 0. Uses the arctan form
/// at eta = 4.
double hyp2f1_lt(double eta, double x);
/// Same function without the eta = 4 shortcut: power series for x <= 0.5,
/// Euler integral otherwise.
double hyp2f1_lt_general(double eta, double x);

namespace detail {

// Gauss-Kronrod 21-point rule (QUADPACK qk21). Abscissae descending; the
// Gauss 10-point nodes are the odd indices.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525450813, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error;
};

template <class F>
Segment gk21(const F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  double res_abs = std::abs(kronrod);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    kronrod += kWgk[j] * sum;
    res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * kronrod;
  double res_asc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j)
    res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double value = kronrod * half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return {a, b, value, err};
}

template <class F>
IntegrationResult adaptive_finite(const F& f, double a, double b, const QuadratureSpec& spec) {
  std::vector<Segment> segs;
  segs.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
  segs.push_back(gk21(f, a, b));
  double total = segs.front().value;
  double error = segs.front().error;
  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  while (error > tolerance()) {
    if (static_cast<int>(segs.size()) >= spec.max_subdivisions) break;
    auto worst = std::max_element(segs.begin(), segs.end(),
                                  [](const Segment& l, const Segment& r) { return l.error < r.error; });
    const Segment s = *worst;
    const double mid = 0.5 * (s.a + s.b);
    // Interval can no longer be split in floating point.
    if (!(s.a < mid && mid < s.b)) break;
    const Segment left = gk21(f, s.a, mid);
    const Segment right = gk21(f, mid, s.b);
    *worst = left;
    segs.push_back(right);
    total = 0.0;
    error = 0.0;
    for (const Segment& seg : segs) {
      total += seg.value;
      error += seg.error;
    }
  }
  const bool finite = std::isfinite(total) && std::isfinite(error);
  return {total, error, finite && error <= tolerance()};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [lower, upper]. An infinite
/// upper limit is mapped to [0,1) through x = lower + u/(1-u).
template <class F>
IntegrationResult integrate_1d(const F& f, double lower, double upper, const QuadratureSpec& spec = {}) {
  if (upper == lower) return {0.0, 0.0, true};
  if (std::isinf(upper) && upper > 0.0) {
    auto mapped = [&f, lower](double u) {
      const double w = 1.0 - u;
      const double v = f(lower + u / w);
      return v == 0.0 ? 0.0 : v / (w * w);
    };
    return detail::adaptive_finite(mapped, 0.0, 1.0, spec);
  }
  return detail::adaptive_finite(f, lower, upper, spec);
}

/// Integral of f(y, z) over the ordered cone 0 <= y <= z < inf.
/// Outer variable y, inner variable z.
template <class F>
IntegrationResult integrate_ordered_2d(const F& f, const QuadratureSpec& spec = {}) {
  const QuadratureSpec inner = spec.inner();
  double inner_error = 0.0;
  bool inner_ok = true;
  auto outer = [&](double y) {
    const IntegrationResult r = integrate_1d([&](double z) { return f(y, z); }, y, INFINITY, inner);
    inner_error = std::max(inner_error, r.error_estimate);
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  IntegrationResult res = integrate_1d(outer, 0.0, INFINITY, spec);
  res.error_estimate += inner_error;
  res.converged = res.converged && inner_ok;
  return res;
}

/// Integral of f(x, y, z) over the ordered cone 0 <= x <= y <= z < inf,
/// nested as y (outer), z in [y, inf), x in [0, y] (innermost).
template <class F>
IntegrationResult integrate_ordered_3d(const F& f, const QuadratureSpec& spec = {}) {
  const QuadratureSpec innermost = spec.inner().inner();
  double innermost_error = 0.0;
  bool innermost_ok = true;
  auto yz = [&](double y, double z) {
    const IntegrationResult r = integrate_1d([&](double x) { return f(x, y, z); }, 0.0, y, innermost);
    innermost_error = std::max(innermost_error, r.error_estimate);
    innermost_ok = innermost_ok && r.converged;
    return r.value;
  };
  IntegrationResult res = integrate_ordered_2d(yz, spec);
  res.error_estimate += innermost_error;
  res.converged = res.converged && innermost_ok;
  return res;
}

}  // namespace hoskip
