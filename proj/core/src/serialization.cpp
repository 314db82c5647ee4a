#include "stratdisc/serialization.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stratdisc {

using nlohmann::json;

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

json partition_to_json(const Partition& partition) {
  json cells = json::array();
  for (const Cell& cell : partition.cells) {
    if (const auto* box = std::get_if<BoxCell>(&cell)) {
      cells.push_back({{"type", "box"}, {"lo", box->lo}, {"hi", box->hi}});
    } else {
      const auto& prism = std::get<PrismCell>(cell);
      json poly = json::array();
      for (const Vec2& v : prism.polygon.vertices()) {
        poly.push_back({v.x, v.y});
      }
      json intervals = json::array();
      for (const auto& [lo, hi] : prism.box) intervals.push_back({lo, hi});
      cells.push_back({{"type", "prism"}, {"polygon", poly}, {"box", intervals}});
    }
  }
  return {{"spec",
           {{"m", partition.spec.m},
            {"d", partition.spec.d},
            {"theta", partition.spec.theta}}},
          {"cells", cells}};
}

Partition partition_from_json(const json& doc) {
  const auto& spec = doc.at("spec");
  Partition partition{
      PartitionSpec(spec.at("m").get<int>(), spec.at("d").get<int>(),
                    spec.at("theta").get<double>()),
      {}};
  for (const auto& cell : doc.at("cells")) {
    const std::string type = cell.at("type").get<std::string>();
    if (type == "box") {
      partition.cells.emplace_back(
          BoxCell{cell.at("lo").get<std::vector<double>>(),
                  cell.at("hi").get<std::vector<double>>()});
    } else if (type == "prism") {
      std::vector<Vec2> verts;
      for (const auto& v : cell.at("polygon")) {
        verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      }
      std::vector<std::array<double, 2>> box;
      for (const auto& iv : cell.at("box")) {
        box.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
      }
      partition.cells.emplace_back(PrismCell{Polygon2(std::move(verts)), std::move(box)});
    } else {
      throw std::invalid_argument("unknown cell type: " + type);
    }
  }
  return partition;
}

namespace {

const char* method_name(ExpectationResult::Method method) {
  switch (method) {
    case ExpectationResult::Method::ClosedForm:
      return "closed_form";
    case ExpectationResult::Method::Quadrature:
      return "quadrature";
    case ExpectationResult::Method::MonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

}  // namespace

json result_to_json(const ExpectationResult& result) {
  json doc{{"method", method_name(result.method)},
           {"value", result.value},
           {"error", result.error}};
  if (result.params) {
    doc["m"] = result.params->m;
    doc["d"] = result.params->d;
    doc["theta"] = result.params->theta;
  }
  if (result.params2) doc["theta2"] = result.params2->theta;
  if (result.replicates) doc["replicates"] = *result.replicates;
  return doc;
}

json bound_to_json(const PartitionSpec& spec, const BoundReport& report) {
  return {{"m", spec.m},
          {"d", spec.d},
          {"theta", spec.theta},
          {"base_term", report.base_term},
          {"correction", report.correction},
          {"total", report.total},
          {"cn_bound", report.cn_bound}};
}

void write_points_csv(std::ostream& out, const PointSet& points,
                      const std::optional<CsvHeader>& header) {
  if (header) {
    out << "# spec m=" << header->spec.m << " d=" << header->spec.d
        << " theta=" << format_double(header->spec.theta)
        << " seed=" << header->seed.seed
        << " replicate=" << header->seed.replicate << "\n";
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points.point(i);
    for (int k = 0; k < points.dim; ++k) {
      if (k) out << ",";
      out << format_double(p[k]);
    }
    out << "\n";
  }
}

std::vector<PointSet> read_points_csv(std::istream& in) {
  std::vector<PointSet> blocks;
  PointSet current;
  const auto flush = [&] {
    if (!current.coords.empty()) blocks.push_back(std::move(current));
    current = PointSet{};
  };
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      flush();
      continue;
    }
    std::istringstream row(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(row, field, ',')) {
      values.push_back(std::stod(field));
    }
    if (values.empty()) continue;
    if (current.dim == 0) {
      current.dim = static_cast<int>(values.size());
    } else if (current.dim != static_cast<int>(values.size())) {
      throw std::invalid_argument("CSV rows have inconsistent dimension");
    }
    current.coords.insert(current.coords.end(), values.begin(), values.end());
  }
  flush();
  return blocks;
}

}  // namespace stratdisc
