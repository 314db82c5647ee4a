#pragma once

#include <utility>

#include "stratdisc/geometry.hpp"

namespace stratdisc {

/// Upper bound on E[L2^2] for the theta partition family, split into the
/// jittered base term and the theta-dependent (nonpositive) correction.
struct BoundReport {
  double base_term = 0.0;   // d / N^(1 + 1/d)
  double correction = 0.0;  // (1/N^3) * 3^-(d-2) * P(theta)
  double total = 0.0;       // base_term + correction
  double cn_bound = 0.0;    // d * N^(1 - 1/d), boundary-cell count bound
};

/// The coefficient P(theta) scaling the expected-L2^2 gap to jittered
/// sampling. Piecewise: a cubic in tan(theta) below the critical angle,
/// -2/45 at it, a cubic in cot(theta) above; both endpoints are exact
/// (neither tan nor cot is evaluated at a pole).
double p_theta(double theta);

/// Closed-form E[L2^2](theta partition) - E[L2^2](jittered grid).
double expected_difference_closed(const PartitionSpec& spec);

BoundReport upper_bound(const PartitionSpec& spec);

/// Closed forms of the building-block integrals (B1, B2) over [0,2]x[0,1];
/// counterparts of building_block_B.
std::pair<double, double> building_block_closed(double theta);

}  // namespace stratdisc
