#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stratdisc/closedform.hpp"
#include "stratdisc/discrepancy.hpp"
#include "stratdisc/geometry.hpp"
#include "stratdisc/rng.hpp"

namespace stratdisc {

nlohmann::json partition_to_json(const Partition& partition);
Partition partition_from_json(const nlohmann::json& doc);

nlohmann::json result_to_json(const ExpectationResult& result);
nlohmann::json bound_to_json(const PartitionSpec& spec, const BoundReport& report);

/// Provenance header written above a point block in CSV output.
struct CsvHeader {
  PartitionSpec spec;
  SeedSpec seed;
};

/// One point per row, d comma-separated columns, 17 significant digits.
void write_points_csv(std::ostream& out, const PointSet& points,
                      const std::optional<CsvHeader>& header = std::nullopt);

/// Reads the blocks of a point-set CSV; "#" header lines separate blocks.
std::vector<PointSet> read_points_csv(std::istream& in);

/// Shortest exact decimal form at 17 significant digits.
std::string format_double(double value);

}  // namespace stratdisc
