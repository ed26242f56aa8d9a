#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "hoskip/distances.hpp"
#include "hoskip/numerics.hpp"

using namespace hoskip;
using std::numbers::pi;

namespace {

double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i;
    else ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

std::vector<OrderedDistances> draw(double lambda, std::uint64_t seed, int n) {
  std::vector<OrderedDistances> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    RandomStream rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(sample_ordered_distances(lambda, rng));
  }
  return out;
}

}  // namespace

TEST_CASE("joint density reference value") {
  const double v = joint_pdf_r123({0.1, 0.2, 0.3}, 1.0);
  CHECK(v == doctest::Approx(1.12175233860094484).epsilon(1e-12));
  CHECK(v == doctest::Approx(1.1218).epsilon(1e-4));
}

TEST_CASE("densities vanish off their ordered support") {
  CHECK(joint_pdf_r123({0.3, 0.2, 0.4}, 1.0) == 0.0);
  CHECK(joint_pdf_r123({0.1, 0.5, 0.4}, 1.0) == 0.0);
  CHECK(joint_pdf_r2_r3(0.5, 0.4, 1.0) == 0.0);
  CHECK(conditional_pdf_r1_given_r2(0.6, 0.5) == 0.0);
  CHECK(marginal_pdf_r1(0.0, 1.0) == 0.0);
}

TEST_CASE("densities reject invalid arguments") {
  CHECK_THROWS_AS(marginal_pdf_r1(-0.1, 1.0), InvalidParameter);
  CHECK_THROWS_AS(marginal_pdf_r2(0.1, 0.0), InvalidParameter);
  CHECK_THROWS_AS(joint_pdf_r123({-0.1, 0.2, 0.3}, 1.0), InvalidParameter);
  CHECK_THROWS_AS(conditional_pdf_r1_given_r2(0.1, 0.0), InvalidParameter);
}

TEST_CASE("densities are normalized") {
  for (double lambda : {1.0, 10.0, 50.0}) {
    CAPTURE(lambda);
    const auto r1 = integrate_1d([&](double r) { return marginal_pdf_r1(r, lambda); }, 0.0, INFINITY);
    const auto r2 = integrate_1d([&](double y) { return marginal_pdf_r2(y, lambda); }, 0.0, INFINITY);
    const auto r23 = integrate_ordered_2d([&](double y, double z) { return joint_pdf_r2_r3(y, z, lambda); });
    const auto r123 =
        integrate_ordered_3d([&](double x, double y, double z) { return joint_pdf_r123({x, y, z}, lambda); });
    CHECK(std::abs(r1.value - 1.0) < 1e-6);
    CHECK(std::abs(r2.value - 1.0) < 1e-6);
    CHECK(std::abs(r23.value - 1.0) < 1e-6);
    CHECK(std::abs(r123.value - 1.0) < 1e-6);
  }
  const auto cond = integrate_1d([](double x) { return conditional_pdf_r1_given_r2(x, 0.37); }, 0.0, 0.37);
  CHECK(std::abs(cond.value - 1.0) < 1e-12);
}

TEST_CASE("marginals follow from the joint density") {
  const double lambda = 50.0;
  for (double y : {0.02, 0.05, 0.08, 0.12, 0.2}) {
    CAPTURE(y);
    const double from_joint =
        integrate_1d([&](double z) { return joint_pdf_r2_r3(y, z, lambda); }, y, INFINITY).value;
    CHECK(std::abs(from_joint - marginal_pdf_r2(y, lambda)) < 1e-8);
    for (double z : {y, 1.3 * y, 2.0 * y}) {
      const double inner = integrate_1d([&](double x) { return joint_pdf_r123({x, y, z}, lambda); }, 0.0, y).value;
      CHECK(std::abs(inner - joint_pdf_r2_r3(y, z, lambda)) < 1e-8);
    }
    // f(r1 | r2) f(r2) integrated over r2 gives the r1 marginal.
    const double x = y;
    const double r1 = integrate_1d(
                          [&](double r2) { return conditional_pdf_r1_given_r2(x, r2) * marginal_pdf_r2(r2, lambda); },
                          x, INFINITY)
                          .value;
    CHECK(std::abs(r1 - marginal_pdf_r1(x, lambda)) < 1e-8);
  }
}

TEST_CASE("moments and mode") {
  const double lambda = 50.0;
  const double mean =
      integrate_1d([&](double r) { return r * marginal_pdf_r1(r, lambda); }, 0.0, INFINITY).value;
  CHECK(mean == doctest::Approx(1.0 / (2.0 * std::sqrt(lambda))).epsilon(1e-8));

  const double mode = std::sqrt(3.0 / (2.0 * pi * lambda));
  CHECK(marginal_pdf_r2(mode, lambda) > marginal_pdf_r2(mode * 0.99, lambda));
  CHECK(marginal_pdf_r2(mode, lambda) > marginal_pdf_r2(mode * 1.01, lambda));
}

TEST_CASE("CDFs match their closed forms") {
  const double lambda = 7.0;
  for (double r : {0.0, 0.05, 0.1, 0.2, 0.4}) {
    const double u = pi * lambda * r * r;
    CHECK(cdf_r1(r, lambda) == doctest::Approx(1.0 - std::exp(-u)));
    CHECK(cdf_r2(r, lambda) == doctest::Approx(1.0 - std::exp(-u) * (1.0 + u)));
  }
}

TEST_CASE("sampler returns ordered triples with the right marginals") {
  const double lambda = 50.0;
  const auto d = draw(lambda, 11, 100000);
  std::vector<double> r1, r2, r3, ratio;
  for (const auto& s : d) {
    REQUIRE(s.ordered());
    r1.push_back(s.r1);
    r2.push_back(s.r2);
    r3.push_back(s.r3);
    ratio.push_back((s.r1 / s.r2) * (s.r1 / s.r2));
  }
  auto u = [lambda](double r) { return pi * lambda * r * r; };
  CHECK(ks_statistic(r1, [&](double r) { return 1.0 - std::exp(-u(r)); }) < 0.01);
  CHECK(ks_statistic(r2, [&](double r) { return 1.0 - std::exp(-u(r)) * (1.0 + u(r)); }) < 0.01);
  CHECK(ks_statistic(r3, [&](double r) {
          const double v = u(r);
          return 1.0 - std::exp(-v) * (1.0 + v + 0.5 * v * v);
        }) < 0.01);
  // Given r2, r1 has density 2x/r2^2, so (r1/r2)^2 is uniform.
  CHECK(ks_statistic(ratio, [](double t) { return t; }) < 0.01);
}

TEST_CASE("sampler mean nearest distance") {
  const double lambda = 50.0;
  RandomStream rng(2024, 0);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_ordered_distances(lambda, rng).r1;
  CHECK(std::abs(sum / n - 1.0 / (2.0 * std::sqrt(lambda))) < 2e-4);
}

TEST_CASE("distances scale as lambda^-1/2") {
  const auto a = draw(1.0, 3, 100000);
  const auto b = draw(4.0, 4, 100000);
  std::vector<double> sa, sb;
  for (const auto& s : a) sa.push_back(s.r2);
  for (const auto& s : b) sb.push_back(2.0 * s.r2);
  CHECK(ks_two_sample(sa, sb) < 0.01);
}
