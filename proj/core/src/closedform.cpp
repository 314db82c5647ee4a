#include "stratdisc/closedform.hpp"

#include <cmath>
#include <numbers>

namespace stratdisc {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double cot_of(double theta) {
  if (theta == kHalfPi) return 0.0;
  return std::cos(theta) / std::sin(theta);
}

}  // namespace

double p_theta(double theta) {
  switch (regime_of(theta)) {
    case ThetaRegime::Low: {
      const double t = std::tan(theta);
      return (2.0 / 45.0) * t * t * t + (2.0 / 15.0) * t * t - t / 6.0;
    }
    case ThetaRegime::Critical:
      return -2.0 / 45.0;
    case ThetaRegime::High: {
      const double c = cot_of(theta);
      return -c / 24.0 + c * c / 120.0 + c * c * c / 1440.0;
    }
  }
  return 0.0;  // unreachable
}

double expected_difference_closed(const PartitionSpec& spec) {
  const double n = static_cast<double>(spec.cell_count());
  return p_theta(spec.theta) / (n * n * n) / std::pow(3.0, spec.d - 2);
}

BoundReport upper_bound(const PartitionSpec& spec) {
  const double n = static_cast<double>(spec.cell_count());
  const double d = static_cast<double>(spec.d);
  BoundReport report;
  report.base_term = d / std::pow(n, 1.0 + 1.0 / d);
  report.correction = expected_difference_closed(spec);
  report.total = report.base_term + report.correction;
  report.cn_bound = d * std::pow(n, 1.0 - 1.0 / d);
  return report;
}

std::pair<double, double> building_block_closed(double theta) {
  switch (regime_of(theta)) {
    case ThetaRegime::Low: {
      const double t = std::tan(theta);
      const double b1 =
          -(4.0 / 45.0) * t * t * t - (4.0 / 15.0) * t * t + t / 3.0 + 4.0 / 9.0;
      const double b2 =
          (2.0 / 45.0) * t * t * t + (2.0 / 15.0) * t * t - t / 6.0 + 1.0 / 9.0;
      return {b1, b2};
    }
    case ThetaRegime::Critical:
      return {8.0 / 15.0, 1.0 / 15.0};
    case ThetaRegime::High: {
      const double c = cot_of(theta);
      const double b1 = c / 12.0 - c * c / 60.0 - c * c * c / 720.0 + 4.0 / 9.0;
      const double b2 = 1.0 / 9.0 - c / 24.0 + c * c / 120.0 + c * c * c / 1440.0;
      return {b1, b2};
    }
  }
  return {0.0, 0.0};  // unreachable
}

}  // namespace stratdisc
