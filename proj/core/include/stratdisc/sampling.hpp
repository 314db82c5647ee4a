#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "stratdisc/geometry.hpp"
#include "stratdisc/rng.hpp"

namespace stratdisc {

/// N points of dimension d, row-major, one per cell of the partition that
/// produced them, together with the provenance needed to regenerate them.
struct StratifiedSample {
  PartitionSpec spec;
  SeedSpec seed;
  std::vector<double> coords;  // cell_count() * d, point i at [i*d, (i+1)*d)

  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(spec.d),
            static_cast<std::size_t>(spec.d)};
  }
  std::size_t size() const { return coords.size() / static_cast<std::size_t>(spec.d); }
};

/// One point, exactly uniform on the cell. Consumes a fixed number of
/// variates per call: d for a box, d + 1 for a prism (one for triangle
/// selection, two folded barycentric, d - 2 interval uniforms).
std::vector<double> sample_uniform_in_cell(const Cell& cell, SubStream& stream);

/// One stratified sample: point i is drawn from cell i of the partition with
/// the (seed, replicate, i) substream.
StratifiedSample generate_stratified(const Partition& partition, const SeedSpec& seed);
StratifiedSample generate_stratified(const PartitionSpec& spec, const SeedSpec& seed);

/// Common-random-numbers pair: the unmodified grid cells receive identical
/// points in both samples; the two modified cells are drawn independently per
/// partition. Marginally each output is distributed as generate_stratified.
std::pair<StratifiedSample, StratifiedSample> generate_coupled(
    const PartitionSpec& spec_a, const PartitionSpec& spec_b, const SeedSpec& seed);
std::pair<StratifiedSample, StratifiedSample> generate_coupled(
    const Partition& partition_a, const Partition& partition_b, const SeedSpec& seed);

}  // namespace stratdisc
