#include "stratdisc/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace stratdisc {

namespace {

std::vector<double> sample_box(const BoxCell& box, SubStream& stream) {
  std::vector<double> p(box.lo.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = box.lo[k] + stream.next_unit() * (box.hi[k] - box.lo[k]);
  }
  return p;
}

std::vector<double> sample_prism(const PrismCell& prism, SubStream& stream) {
  const auto& v = prism.polygon.vertices();
  const std::size_t ntri = v.size() - 2;

  // Fan triangulation areas; the pick always consumes exactly one variate.
  double total = 0.0;
  std::vector<double> cumulative(ntri);
  for (std::size_t i = 0; i < ntri; ++i) {
    const Vec2 tri[3] = {v[0], v[i + 1], v[i + 2]};
    total += shoelace_area(tri);
    cumulative[i] = total;
  }
  const double pick = stream.next_unit() * total;
  std::size_t tri = 0;
  while (tri + 1 < ntri && pick >= cumulative[tri]) ++tri;

  // Folded barycentric coordinates: uniform on the chosen triangle.
  double u = stream.next_unit();
  double w = stream.next_unit();
  if (u + w > 1.0) {
    u = 1.0 - u;
    w = 1.0 - w;
  }
  const Vec2& p0 = v[0];
  const Vec2& p1 = v[tri + 1];
  const Vec2& p2 = v[tri + 2];

  std::vector<double> p(2 + prism.box.size());
  p[0] = p0.x + u * (p1.x - p0.x) + w * (p2.x - p0.x);
  p[1] = p0.y + u * (p1.y - p0.y) + w * (p2.y - p0.y);
  for (std::size_t j = 0; j < prism.box.size(); ++j) {
    const auto& [lo, hi] = prism.box[j];
    p[2 + j] = lo + stream.next_unit() * (hi - lo);
  }
  return p;
}

}  // namespace

std::vector<double> sample_uniform_in_cell(const Cell& cell, SubStream& stream) {
  if (const auto* box = std::get_if<BoxCell>(&cell)) {
    return sample_box(*box, stream);
  }
  return sample_prism(std::get<PrismCell>(cell), stream);
}

StratifiedSample generate_stratified(const Partition& partition, const SeedSpec& seed) {
  StratifiedSample sample{partition.spec, seed, {}};
  sample.coords.reserve(partition.cells.size() * static_cast<std::size_t>(partition.spec.d));
  for (std::size_t i = 0; i < partition.cells.size(); ++i) {
    SubStream stream(seed, i);
    const auto p = sample_uniform_in_cell(partition.cells[i], stream);
    sample.coords.insert(sample.coords.end(), p.begin(), p.end());
  }
  return sample;
}

StratifiedSample generate_stratified(const PartitionSpec& spec, const SeedSpec& seed) {
  return generate_stratified(build_partition(spec), seed);
}

std::pair<StratifiedSample, StratifiedSample> generate_coupled(
    const Partition& partition_a, const Partition& partition_b, const SeedSpec& seed) {
  const PartitionSpec& spec_a = partition_a.spec;
  const PartitionSpec& spec_b = partition_b.spec;
  if (spec_a.m != spec_b.m || spec_a.d != spec_b.d) {
    throw std::invalid_argument("generate_coupled: specs must share m and d");
  }
  const auto sample_a = generate_stratified(partition_a, seed);
  if (spec_a == spec_b) {
    return {sample_a, sample_a};
  }

  const std::size_t n = partition_b.cells.size();
  const std::size_t d = static_cast<std::size_t>(spec_b.d);

  StratifiedSample sample_b{spec_b, seed, sample_a.coords};
  for (std::size_t i = 0; i < 2; ++i) {
    // Fresh substreams, disjoint from every cell stream of either sample.
    SubStream stream(seed, n + i);
    const auto p = sample_uniform_in_cell(partition_b.cells[i], stream);
    std::copy(p.begin(), p.end(), sample_b.coords.begin() + i * d);
  }
  return {sample_a, sample_b};
}

std::pair<StratifiedSample, StratifiedSample> generate_coupled(
    const PartitionSpec& spec_a, const PartitionSpec& spec_b, const SeedSpec& seed) {
  if (spec_a.m != spec_b.m || spec_a.d != spec_b.d) {
    throw std::invalid_argument("generate_coupled: specs must share m and d");
  }
  return generate_coupled(build_partition(spec_a), build_partition(spec_b), seed);
}

}  // namespace stratdisc
