#pragma once

#include "hoskip/core.hpp"
#include "hoskip/random.hpp"

namespace hoskip {

enum class DistancePdfKind { Joint123, MarginalR1, MarginalR2, JointR2R3, ConditionalR1GivenR2 };

// Densities of the three nearest-BS distances of a user in a PPP of intensity
// lambda. Every density returns 0 outside its ordered support; negative
// distances or non-positive lambda throw InvalidParameter.

/// (2 pi lambda)^3 x y z exp(-pi lambda z^2) on 0 <= x <= y <= z.
double joint_pdf_r123(const OrderedDistances& d, double lambda);
/// 2 pi lambda r exp(-pi lambda r^2).
double marginal_pdf_r1(double r, double lambda);
/// 2 (pi lambda)^2 y^3 exp(-pi lambda y^2).
double marginal_pdf_r2(double y, double lambda);
/// 4 (pi lambda)^3 y^3 z exp(-pi lambda z^2) on 0 <= y <= z.
double joint_pdf_r2_r3(double y, double z, double lambda);
/// 2 x / r2^2 on 0 <= x <= r2.
double conditional_pdf_r1_given_r2(double x, double r2);

double cdf_r1(double r, double lambda);
double cdf_r2(double y, double lambda);

/// Exact draw of (r1, r2, r3): r3^2 is a sum of three exponentials of rate
/// pi*lambda, and (r1, r2) are the order statistics of two iid draws with
/// density 2r/r3^2 on [0, r3].
OrderedDistances sample_ordered_distances(double lambda, RandomStream& rng);

}  // namespace hoskip
