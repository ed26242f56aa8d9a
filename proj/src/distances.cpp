#include "hoskip/distances.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace hoskip {

namespace {

using std::numbers::pi;

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidParameter("lambda must be > 0");
}

void check_distance(double r) {
  if (!(r >= 0.0)) throw InvalidParameter("distances must be >= 0");
}

}  // namespace

double joint_pdf_r123(const OrderedDistances& d, double lambda) {
  check_lambda(lambda);
  check_distance(d.r1);
  check_distance(d.r2);
  check_distance(d.r3);
  if (!d.ordered()) return 0.0;
  const double c = 2.0 * pi * lambda;
  return c * c * c * d.r1 * d.r2 * d.r3 * std::exp(-pi * lambda * d.r3 * d.r3);
}

double marginal_pdf_r1(double r, double lambda) {
  check_lambda(lambda);
  check_distance(r);
  return 2.0 * pi * lambda * r * std::exp(-pi * lambda * r * r);
}

double marginal_pdf_r2(double y, double lambda) {
  check_lambda(lambda);
  check_distance(y);
  const double c = pi * lambda;
  return 2.0 * c * c * y * y * y * std::exp(-c * y * y);
}

double joint_pdf_r2_r3(double y, double z, double lambda) {
  check_lambda(lambda);
  check_distance(y);
  check_distance(z);
  if (y > z) return 0.0;
  const double c = pi * lambda;
  return 4.0 * c * c * c * y * y * y * z * std::exp(-c * z * z);
}

double conditional_pdf_r1_given_r2(double x, double r2) {
  check_distance(x);
  if (!(r2 > 0.0)) throw InvalidParameter("r2 must be > 0");
  if (x > r2) return 0.0;
  return 2.0 * x / (r2 * r2);
}

double cdf_r1(double r, double lambda) {
  check_lambda(lambda);
  check_distance(r);
  return -std::expm1(-pi * lambda * r * r);
}

double cdf_r2(double y, double lambda) {
  check_lambda(lambda);
  check_distance(y);
  const double u = pi * lambda * y * y;
  return -std::expm1(-u) - u * std::exp(-u);
}

OrderedDistances sample_ordered_distances(double lambda, RandomStream& rng) {
  check_lambda(lambda);
  const double r3_sq = (rng.exponential() + rng.exponential() + rng.exponential()) / (pi * lambda);
  const double r3 = std::sqrt(r3_sq);
  double a = r3 * std::sqrt(rng.uniform());
  double b = r3 * std::sqrt(rng.uniform());
  if (a > b) std::swap(a, b);
  return {a, b, r3};
}

}  // namespace hoskip
