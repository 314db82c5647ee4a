#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stratdisc/sampling.hpp"
#include "test_util.hpp"

using namespace stratdisc;
using stratdisc::testing::point_in_cell;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuarterPi = std::numbers::pi / 4.0;
}  // namespace

TEST_CASE("box sampling stays inside the half-open box") {
  const Cell unit = BoxCell{{0, 0, 0}, {1, 1, 1}};
  SubStream stream(SeedSpec{1, 0}, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto p = sample_uniform_in_cell(unit, stream);
    for (double c : p) {
      CHECK(c >= 0.0);
      CHECK(c < 1.0);
    }
  }
}

TEST_CASE("substreams are pure functions of the (seed, replicate, cell) triple") {
  SubStream a(SeedSpec{123, 4}, 5);
  SubStream b(SeedSpec{123, 4}, 5);
  SubStream c(SeedSpec{123, 4}, 6);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.next_unit();
    CHECK(va == b.next_unit());
    any_diff = any_diff || va != c.next_unit();
  }
  CHECK(any_diff);
}

TEST_CASE("triangle sampling has the triangle's centroid as mean") {
  const Cell tri = PrismCell{Polygon2({{0, 0}, {2, 0}, {0, 1}}), {}};
  SubStream stream(SeedSpec{99, 0}, 0);
  const int n = 1000000;
  double sx = 0, sy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    const auto p = sample_uniform_in_cell(tri, stream);
    CHECK(point_in_cell(tri, p));
    sx += p[0];
    sy += p[1];
    sxx += p[0] * p[0];
    syy += p[1] * p[1];
  }
  const double mx = sx / n, my = sy / n;
  const double se_x = std::sqrt((sxx / n - mx * mx) / n);
  const double se_y = std::sqrt((syy / n - my * my) / n);
  CHECK(std::abs(mx - 2.0 / 3.0) < 3 * se_x);
  CHECK(std::abs(my - 1.0 / 3.0) < 3 * se_y);
}

TEST_CASE("trapezoid sampling splits mass by clipped areas") {
  const PartitionSpec spec(3, 2, kQuarterPi);
  const Partition partition = build_partition(spec);
  const Cell& cell = partition.cells[0];
  REQUIRE(std::holds_alternative<PrismCell>(cell));

  // Fraction landing in the left half-rectangle of the merged cuboid.
  const std::vector<double> corner{spec.a1() + spec.b(), 1.0};
  const double fraction = anchored_box_measure(cell, corner) / cell_volume(cell);

  SubStream stream(SeedSpec{5, 0}, 0);
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const auto p = sample_uniform_in_cell(cell, stream);
    CHECK(point_in_cell(cell, p));
    hits += p[0] <= corner[0];
  }
  const double se = std::sqrt(fraction * (1 - fraction) / n);
  CHECK(std::abs(double(hits) / n - fraction) < 3 * se);
}

TEST_CASE("one point per quadrant for the 2x2 grid") {
  const auto sample = generate_stratified(PartitionSpec(2, 2, kHalfPi), SeedSpec{17, 0});
  REQUIRE(sample.size() == 4);
  const Partition partition = build_partition(PartitionSpec(2, 2, kHalfPi));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(point_in_cell(partition.cells[i], sample.point(i)));
  }
}

TEST_CASE("generation is deterministic and order-independent") {
  const PartitionSpec spec(3, 2, critical_angle());
  const Partition partition = build_partition(spec);
  const SeedSpec seed{2718, 3};
  const auto a = generate_stratified(partition, seed);
  const auto b = generate_stratified(partition, seed);
  CHECK(a.coords == b.coords);

  // Per-cell regeneration in reverse order reproduces the same points.
  for (std::size_t i = partition.cells.size(); i-- > 0;) {
    SubStream stream(seed, i);
    const auto p = sample_uniform_in_cell(partition.cells[i], stream);
    for (int k = 0; k < spec.d; ++k) {
      CHECK(p[static_cast<std::size_t>(k)] == a.point(i)[k]);
    }
  }
}

TEST_CASE("every generated point lies in its provenance cell") {
  for (double theta : {0.0, 0.4, critical_angle(), 1.2, kHalfPi}) {
    const PartitionSpec spec(3, 3, theta);
    const Partition partition = build_partition(spec);
    for (std::uint64_t rep = 0; rep < 50; ++rep) {
      const auto sample = generate_stratified(partition, SeedSpec{31, rep});
      for (std::size_t i = 0; i < sample.size(); ++i) {
        CHECK(point_in_cell(partition.cells[i], sample.point(i)));
      }
    }
  }
}

TEST_CASE("per-cell sample means converge to cell centroids") {
  const PartitionSpec spec(3, 2, critical_angle());
  const Partition partition = build_partition(spec);

  // Exact centroids: box midpoints, triangle vertex average.
  std::vector<std::array<double, 2>> centroid(partition.cells.size());
  for (std::size_t i = 0; i < partition.cells.size(); ++i) {
    if (const auto* box = std::get_if<BoxCell>(&partition.cells[i])) {
      centroid[i] = {0.5 * (box->lo[0] + box->hi[0]), 0.5 * (box->lo[1] + box->hi[1])};
    } else {
      const auto& v = std::get<PrismCell>(partition.cells[i]).polygon.vertices();
      REQUIRE(v.size() == 3);
      centroid[i] = {(v[0].x + v[1].x + v[2].x) / 3, (v[0].y + v[1].y + v[2].y) / 3};
    }
  }

  const int reps = 100000;
  std::vector<std::array<double, 2>> sum(partition.cells.size(), {0, 0});
  std::vector<std::array<double, 2>> sumsq(partition.cells.size(), {0, 0});
  for (int r = 0; r < reps; ++r) {
    const auto sample = generate_stratified(partition, SeedSpec{404, static_cast<std::uint64_t>(r)});
    for (std::size_t i = 0; i < sample.size(); ++i) {
      for (int k = 0; k < 2; ++k) {
        sum[i][k] += sample.point(i)[k];
        sumsq[i][k] += sample.point(i)[k] * sample.point(i)[k];
      }
    }
  }
  for (std::size_t i = 0; i < partition.cells.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      const double mean = sum[i][k] / reps;
      const double var = sumsq[i][k] / reps - mean * mean;
      const double se = std::sqrt(var / reps);
      CHECK(std::abs(mean - centroid[i][k]) < 4 * se);
    }
  }
}

TEST_CASE("chi-square uniformity inside a prism cell") {
  const PartitionSpec spec(3, 2, critical_angle());
  const Partition partition = build_partition(spec);
  const Cell& cell = partition.cells[0];
  REQUIRE(std::holds_alternative<PrismCell>(cell));

  // 4x4 grid over the cell's bounding rectangle; expected counts from the
  // exact clipped areas via inclusion-exclusion of anchored measures.
  const double x0 = spec.a1(), x1 = spec.a1() + 2 * spec.b();
  const double y0 = spec.a2(), y1 = 1.0;
  const int bins = 4;
  const auto measure_to = [&](double x, double y) {
    const std::vector<double> corner{x, y};
    return anchored_box_measure(cell, corner);
  };
  std::vector<double> expected;
  std::vector<std::array<double, 4>> rects;
  for (int i = 0; i < bins; ++i) {
    for (int j = 0; j < bins; ++j) {
      const double lx = x0 + (x1 - x0) * i / bins, hx = x0 + (x1 - x0) * (i + 1) / bins;
      const double ly = y0 + (y1 - y0) * j / bins, hy = y0 + (y1 - y0) * (j + 1) / bins;
      const double area = measure_to(hx, hy) - measure_to(lx, hy) -
                          measure_to(hx, ly) + measure_to(lx, ly);
      if (area > 1e-9) {
        expected.push_back(area / cell_volume(cell));
        rects.push_back({lx, hx, ly, hy});
      }
    }
  }

  const int n = 1000000;
  std::vector<int> counts(expected.size(), 0);
  SubStream stream(SeedSpec{8675309, 0}, 0);
  for (int s = 0; s < n; ++s) {
    const auto p = sample_uniform_in_cell(cell, stream);
    for (std::size_t t = 0; t < rects.size(); ++t) {
      if (p[0] >= rects[t][0] && p[0] < rects[t][1] && p[1] >= rects[t][2] &&
          p[1] < rects[t][3]) {
        ++counts[t];
        break;
      }
    }
  }
  double chi2 = 0.0;
  for (std::size_t t = 0; t < expected.size(); ++t) {
    const double e = expected[t] * n;
    chi2 += (counts[t] - e) * (counts[t] - e) / e;
  }
  const double threshold = stratdisc::testing::chi_square_quantile(
      static_cast<int>(expected.size()) - 1, 3.0902);  // significance 1e-3
  CHECK(chi2 < threshold);
}

TEST_CASE("coupling: identical specs give identical samples") {
  const PartitionSpec spec(3, 2, kQuarterPi);
  const auto [a, b] = generate_coupled(spec, spec, SeedSpec{1, 0});
  CHECK(a.coords == b.coords);
}

TEST_CASE("coupling: unmodified cells share their points") {
  const PartitionSpec spec_a(3, 2, critical_angle());
  const PartitionSpec spec_b(3, 2, kHalfPi);
  const auto [a, b] = generate_coupled(spec_a, spec_b, SeedSpec{55, 2});
  REQUIRE(a.size() == 9);
  for (std::size_t i = 2; i < 9; ++i) {
    for (int k = 0; k < 2; ++k) CHECK(a.point(i)[k] == b.point(i)[k]);
  }
  // Modified cells are resampled and must land in partition B's cells.
  const Partition partition_b = build_partition(spec_b);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(point_in_cell(partition_b.cells[i], b.point(i)));
  }
  CHECK_THROWS_AS(generate_coupled(spec_a, PartitionSpec(4, 2, kHalfPi), SeedSpec{0, 0}),
                  std::invalid_argument);
}

TEST_CASE("coupling shrinks the variance of the L2^2 difference") {
  // Sample variance of the difference statistic, coupled vs independent.
  const PartitionSpec spec_a(3, 2, critical_angle());
  const PartitionSpec spec_b(3, 2, kHalfPi);
  const Partition pa = build_partition(spec_a);
  const Partition pb = build_partition(spec_b);
  const int reps = 10000;

  const auto l2_of = [](int d, const StratifiedSample& s) {
    double v = 0.0;
    // Warnock-style expansion inline to avoid a dependency on discrepancy here.
    const std::size_t n = s.size();
    double single = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double a = 1.0;
      for (int k = 0; k < d; ++k) a *= 0.5 * (1 - s.point(i)[k] * s.point(i)[k]);
      single += a;
      for (std::size_t j = i; j < n; ++j) {
        double w = 1.0;
        for (int k = 0; k < d; ++k) w *= 1 - std::max(s.point(i)[k], s.point(j)[k]);
        pairs += i == j ? w : 2 * w;
      }
    }
    v = std::pow(3.0, -d) - 2.0 / n * single + pairs / double(n) / double(n);
    return v;
  };

  double c_mean = 0, c_m2 = 0, u_mean = 0, u_m2 = 0;
  for (int r = 0; r < reps; ++r) {
    const SeedSpec seed{777, static_cast<std::uint64_t>(r)};
    const auto [ca, cb] = generate_coupled(pa, pb, seed);
    const double dc = l2_of(2, ca) - l2_of(2, cb);
    double delta = dc - c_mean;
    c_mean += delta / (r + 1);
    c_m2 += delta * (dc - c_mean);

    const auto ua = generate_stratified(pa, SeedSpec{888, static_cast<std::uint64_t>(r)});
    const auto ub = generate_stratified(pb, SeedSpec{999, static_cast<std::uint64_t>(r)});
    const double du = l2_of(2, ua) - l2_of(2, ub);
    delta = du - u_mean;
    u_mean += delta / (r + 1);
    u_m2 += delta * (du - u_mean);
  }
  const double ratio = (c_m2 / (reps - 1)) / (u_m2 / (reps - 1));
  CHECK(ratio < 0.5);
}
