#include "hoskip/numerics.hpp"

#include <cmath>

#include "hoskip/core.hpp"

namespace hoskip {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw InvalidParameter("quadrature tolerances must be > 0");
  if (max_subdivisions < 1) throw InvalidParameter("max_subdivisions must be >= 1");
}

namespace {

void check_args(double eta, double x) {
  if (!(eta > 2.0) || !std::isfinite(eta)) throw InvalidParameter("hyp2f1_lt: eta must be > 2");
  if (!(x >= 0.0) || std::isnan(x)) throw InvalidParameter("hyp2f1_lt: x must be >= 0");
}

// sum_n b/(b+n) (-x)^n, alternating; valid for x < 1.
double series(double b, double x) {
  double sum = 1.0;
  double power = 1.0;
  for (int n = 1; n < 2000; ++n) {
    power *= -x;
    const double term = b / (b + n) * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// b * int_0^1 t^(b-1) / (1 + x t) dt with t = u^(1/b).
double euler_integral(double eta, double x) {
  const double p = eta / (eta - 2.0);
  const QuadratureSpec tight{1e-13, 1e-300, 400};
  return integrate_1d([x, p](double u) { return 1.0 / (1.0 + x * std::pow(u, p)); }, 0.0, 1.0, tight).value;
}

}  // namespace

double hyp2f1_lt_general(double eta, double x) {
  check_args(eta, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x <= 0.5) return series(1.0 - 2.0 / eta, x);
  return euler_integral(eta, x);
}

double hyp2f1_lt(double eta, double x) {
  check_args(eta, x);
  if (std::abs(eta - 4.0) < 1e-9) {
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double r = std::sqrt(x);
    return std::atan(r) / r;
  }
  return hyp2f1_lt_general(eta, x);
}

}  // namespace hoskip
