// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "stratdisc/closedform.hpp"
#include "stratdisc/discrepancy.hpp"
#include "stratdisc/sampling.hpp"

using namespace stratdisc;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

int failures = 0;

void report(int criterion, const char* title, bool ok) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, title);
  if (!ok) ++failures;
}

bool within(double value, double target, double tol) {
  return std::abs(value - target) <= tol;
}

bool criterion1() {
  return within(p_theta(critical_angle()), -2.0 / 45.0, 1e-14 * (2.0 / 45.0)) &&
         within(p_theta(kQuarterPi), -47.0 / 1440.0, 1e-14 * (47.0 / 1440.0)) &&
         p_theta(0.0) == 0.0 && p_theta(kHalfPi) == 0.0;
}

bool criterion2() {
  // Hand-coded branch polynomials evaluated at the regime boundary.
  const double t = 0.5;
  const double low = 2 * t * t * t / 45.0 + 2 * t * t / 15.0 - t / 6.0;
  const double c = 2.0;
  const double high = -c / 24.0 + c * c / 120.0 + c * c * c / 1440.0;
  bool ok = within(low, -2.0 / 45.0, 1e-14) && within(high, -2.0 / 45.0, 1e-14);

  const int n = 1000;
  const double crit = critical_angle();
  double prev = p_theta(0.0);
  for (int i = 1; i <= n && ok; ++i) {
    const double theta = kHalfPi * i / n;
    const double cur = p_theta(theta);
    if (theta <= crit) {
      ok = cur <= prev + 1e-14;
    } else if (kHalfPi * (i - 1) / n >= crit) {
      ok = cur >= prev - 1e-14;
    }
    prev = cur;
  }
  return ok;
}

bool criterion3() {
  const QuadratureSpec quad{1024, true};
  const auto [b1_j, b2_j] = building_block_B(kHalfPi, quad);
  const auto [b1_c, b2_c] = building_block_B(critical_angle(), quad);
  bool ok = within(b1_j, 4.0 / 9.0, 1e-6) && within(b2_j, 1.0 / 9.0, 1e-6) &&
            within(b1_c, 8.0 / 15.0, 1e-6) && within(b2_c, 1.0 / 15.0, 1e-6);

  for (double theta : {0.0, 0.2, critical_angle(), kQuarterPi, 1.2, kHalfPi}) {
    const auto [c1, c2] = building_block_closed(theta);
    const auto [f1, f2] = building_block_B(theta, QuadratureSpec{1024, false});
    const auto [h1, h2] = building_block_B(theta, QuadratureSpec{512, false});
    ok = ok && within(c1, f1 + (f1 - h1) / 3.0, std::abs(f1 - h1) + 1e-12) &&
         within(c2, f2 + (f2 - h2) / 3.0, std::abs(f2 - h2) + 1e-12);
  }
  return ok;
}

bool criterion4() {
  const std::vector<double> thetas{critical_angle(), kQuarterPi,
                                   std::numbers::pi / 3.0, 0.2};
  const Partition jittered2 = build_partition(PartitionSpec(3, 2, kHalfPi));
  bool ok = true;
  for (double theta : thetas) {
    const PartitionSpec spec(3, 2, theta);
    const auto diff = expected_difference_quadrature(
        build_partition(spec), jittered2, QuadratureSpec{2048, true});
    const double target = expected_difference_closed(spec);
    ok = ok && within(diff.value, target, std::max(1e-8, 1e-3 * std::abs(target)));
  }

  const Partition jittered3 = build_partition(PartitionSpec(3, 3, kHalfPi));
  for (double theta : thetas) {
    const PartitionSpec spec(3, 3, theta);
    const auto diff = expected_difference_quadrature(
        build_partition(spec), jittered3, QuadratureSpec{256, true});
    const double target = p_theta(theta) / 19683.0 / 3.0;
    ok = ok && within(diff.value, target, diff.error + 1e-10);
  }
  return ok;
}

bool criterion5() {
  const auto diff =
      expected_difference_mc(PartitionSpec(3, 2, critical_angle()),
                             PartitionSpec(3, 2, kHalfPi), 1000000, SeedSpec{2026, 0});
  return diff.value < 0.0 && diff.error < 2e-5 &&
         within(diff.value, -2.0 / (45.0 * 729.0), 4 * diff.error);
}

bool criterion6() {
  bool ok = within(l2_squared_exact(PointSet{1, {0.0}}), 1.0 / 3.0, 1e-12) &&
            within(l2_squared_exact(PointSet{2, {0.0, 0.0}}), 11.0 / 18.0, 1e-12);
  std::mt19937_64 rng(20260826);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    PointSet points{2, {}};
    for (int i = 0; i < 6; ++i) points.coords.push_back(dist(rng));
    ok = ok && within(l2_squared_quadrature(points), l2_squared_exact(points), 1e-4);
  }
  return ok;
}

bool criterion7() {
  const std::vector<Cell> cells{BoxCell{{0.0}, {1.0}}};
  const std::vector<double> lo{0.0}, hi{1.0};
  const auto result =
      expected_l2_squared_quadrature(cells, lo, hi, QuadratureSpec{16384, true});
  return within(result.value, 1.0 / 6.0, 1e-10);
}

bool criterion8() {
  bool ok = true;
  for (int m : {3, 4}) {
    for (int d : {2, 3}) {
      const double n = std::pow(double(m), d);
      const double base = d / std::pow(n, 1.0 + 1.0 / d);
      const auto check = [&](double theta, double coeff) {
        const double expect = base + coeff / (std::pow(3.0, d - 2) * n * n * n);
        const auto report = upper_bound(PartitionSpec(m, d, theta));
        ok = ok && within(report.total, expect, 1e-14 * std::abs(expect));
      };
      check(0.0, 0.0);
      check(kHalfPi, 0.0);
      check(kQuarterPi, -47.0 / 1440.0);
      check(critical_angle(), -2.0 / 45.0);
    }
  }

  const PartitionSpec spec(3, 2, critical_angle());
  const double bound = upper_bound(spec).total;
  const auto quad = expected_l2_squared_quadrature(build_partition(spec),
                                                   QuadratureSpec{1024, true});
  const auto mc = expected_l2_squared_mc(spec, 10000, SeedSpec{99, 0});
  return ok && quad.value <= bound && mc.value <= bound;
}

}  // namespace

int main() {
  report(1, "closed-form constants of P(theta)", criterion1());
  report(2, "branch continuity and monotone shape", criterion2());
  report(3, "building-block integrals", criterion3());
  report(4, "difference-quadrature identity", criterion4());
  report(5, "coupled-MC sign and magnitude", criterion5());
  report(6, "discrepancy oracle equivalence", criterion6());
  report(7, "trivial expectation 1/6", criterion7());
  report(8, "bound reproduction", criterion8());
  return failures == 0 ? 0 : 1;
}
