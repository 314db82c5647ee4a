#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "stratdisc/closedform.hpp"
#include "stratdisc/discrepancy.hpp"
#include "stratdisc/sampling.hpp"
#include "stratdisc/serialization.hpp"

namespace stratdisc::cli {

namespace {

struct Options {
  int m = 3;
  int d = 2;
  std::string theta = "half-pi";
  std::string theta2;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::int64_t replicates = 1;
  int grid = 0;
  int count = 33;
  bool with_quadrature = false;
  std::string method = "quad";
  std::string format = "json";
  std::string input;
  std::string output;
};

// All randomized subcommands demand an explicit --seed; no wall-clock
// fallback, so every published number is reproducible.
void require_seed(const Options& opt) {
  if (!opt.seed_set) {
    throw CLI::ValidationError("--seed", "an explicit seed is required");
  }
}

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
      out_ = &file_;
    } else {
      out_ = &fallback;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

QuadratureSpec quad_of(const Options& opt) {
  QuadratureSpec quad;
  quad.points_per_axis = opt.grid;
  return quad;
}

int run_partition(const Options& opt, std::ostream& out) {
  const PartitionSpec spec(opt.m, opt.d, parse_theta(opt.theta));
  OutputSink sink(opt.output, out);
  sink.stream() << partition_to_json(build_partition(spec)).dump(2) << "\n";
  return 0;
}

int run_sample(const Options& opt, std::ostream& out) {
  require_seed(opt);
  const PartitionSpec spec(opt.m, opt.d, parse_theta(opt.theta));
  const Partition partition = build_partition(spec);
  OutputSink sink(opt.output, out);
  for (std::int64_t r = 0; r < opt.replicates; ++r) {
    const SeedSpec seed{opt.seed, static_cast<std::uint64_t>(r)};
    const auto sample = generate_stratified(partition, seed);
    write_points_csv(sink.stream(), PointSet{spec.d, sample.coords},
                     CsvHeader{spec, seed});
  }
  return 0;
}

int run_l2(const Options& opt, std::ostream& out) {
  std::ifstream in(opt.input);
  if (!in) throw std::runtime_error("cannot open input file: " + opt.input);
  const auto blocks = read_points_csv(in);
  if (blocks.empty()) throw std::invalid_argument("input contains no points");
  OutputSink sink(opt.output, out);
  for (const PointSet& points : blocks) {
    sink.stream() << format_double(l2_squared_exact(points)) << "\n";
  }
  return 0;
}

int run_expected(const Options& opt, std::ostream& out) {
  const PartitionSpec spec(opt.m, opt.d, parse_theta(opt.theta));
  ExpectationResult result;
  if (opt.method == "quad") {
    result = expected_l2_squared_quadrature(build_partition(spec), quad_of(opt));
  } else if (opt.method == "mc") {
    require_seed(opt);
    result = expected_l2_squared_mc(spec, opt.replicates, SeedSpec{opt.seed, 0});
  } else {
    throw CLI::ValidationError("--method", "must be quad or mc");
  }
  OutputSink sink(opt.output, out);
  sink.stream() << result_to_json(result).dump(2) << "\n";
  return 0;
}

int run_compare(const Options& opt, std::ostream& out) {
  require_seed(opt);
  const PartitionSpec spec_a(opt.m, opt.d, parse_theta(opt.theta));
  const PartitionSpec spec_b(opt.m, opt.d, parse_theta(opt.theta2));

  const auto mc = expected_difference_mc(spec_a, spec_b, opt.replicates,
                                         SeedSpec{opt.seed, 0});
  const auto quad = expected_difference_quadrature(
      build_partition(spec_a), build_partition(spec_b), quad_of(opt));
  const double closed =
      expected_difference_closed(spec_a) - expected_difference_closed(spec_b);

  nlohmann::json doc{{"m", opt.m},
                     {"d", opt.d},
                     {"theta", spec_a.theta},
                     {"theta2", spec_b.theta},
                     {"monte_carlo", result_to_json(mc)},
                     {"quadrature", result_to_json(quad)},
                     {"closed_form", closed}};
  OutputSink sink(opt.output, out);
  sink.stream() << doc.dump(2) << "\n";
  return 0;
}

int run_sweep(const Options& opt, std::ostream& out) {
  if (opt.count < 2) throw CLI::ValidationError("--count", "need at least 2 values");
  const PartitionSpec ref(opt.m, opt.d, 0.0);
  const Partition jittered =
      build_partition(PartitionSpec(opt.m, opt.d, std::numbers::pi / 2.0));

  struct Row {
    double theta, p, closed;
    std::optional<double> quad, quad_err;
  };
  std::vector<Row> rows;
  for (int i = 0; i < opt.count; ++i) {
    const double theta = i == opt.count - 1
                             ? std::numbers::pi / 2.0
                             : i * (std::numbers::pi / 2.0) / (opt.count - 1);
    const PartitionSpec spec(opt.m, opt.d, theta);
    Row row{theta, p_theta(theta), expected_difference_closed(spec), {}, {}};
    if (opt.with_quadrature) {
      const auto diff = expected_difference_quadrature(build_partition(spec),
                                                       jittered, quad_of(opt));
      row.quad = diff.value;
      row.quad_err = diff.error;
    }
    rows.push_back(row);
  }

  OutputSink sink(opt.output, out);
  if (opt.format == "csv") {
    sink.stream() << "theta,p_theta,closed_difference,quad_difference,quad_error\n";
    for (const Row& row : rows) {
      sink.stream() << format_double(row.theta) << "," << format_double(row.p)
                    << "," << format_double(row.closed) << ",";
      if (row.quad) {
        sink.stream() << format_double(*row.quad) << ","
                      << format_double(*row.quad_err);
      } else {
        sink.stream() << ",";
      }
      sink.stream() << "\n";
    }
  } else {
    nlohmann::json doc = nlohmann::json::array();
    for (const Row& row : rows) {
      nlohmann::json entry{{"theta", row.theta},
                           {"p_theta", row.p},
                           {"closed_difference", row.closed}};
      if (row.quad) {
        entry["quad_difference"] = *row.quad;
        entry["quad_error"] = *row.quad_err;
      }
      doc.push_back(entry);
    }
    sink.stream() << doc.dump(2) << "\n";
  }
  return 0;
}

int run_bound(const Options& opt, std::ostream& out) {
  const PartitionSpec spec(opt.m, opt.d, parse_theta(opt.theta));
  OutputSink sink(opt.output, out);
  sink.stream() << bound_to_json(spec, upper_bound(spec)).dump(2) << "\n";
  return 0;
}

}  // namespace

double parse_theta(const std::string& text) {
  if (text == "zero") return 0.0;
  if (text == "critical") return std::atan(0.5);
  if (text == "quarter-pi") return std::numbers::pi / 4.0;
  if (text == "half-pi") return std::numbers::pi / 2.0;
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) {
    throw std::invalid_argument("bad theta value: " + text);
  }
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stratified sampling from theta-parameterized convex "
               "equivolume partitions and its expected L2-discrepancy"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* cmd, bool with_theta = true) {
    cmd->add_option("--m", opt.m, "cells per axis (>= 2)");
    cmd->add_option("--d", opt.d, "dimension (>= 2)");
    if (with_theta) {
      cmd->add_option("--theta", opt.theta,
                      "split angle: radians or zero|critical|quarter-pi|half-pi");
    }
    cmd->add_option("--out", opt.output, "output file (default stdout)");
    return cmd;
  };

  auto* partition = add_common(app.add_subcommand("partition", "emit the partition as JSON"));
  auto* sample = add_common(app.add_subcommand("sample", "emit stratified point sets as CSV"));
  sample->add_option("--seed", opt.seed, "RNG seed")->each([&](const std::string&) {
    opt.seed_set = true;
  });
  sample->add_option("--replicates", opt.replicates, "number of replicates");

  auto* l2 = app.add_subcommand("l2", "L2^2 discrepancy of a point-set CSV");
  l2->add_option("--in", opt.input, "input CSV file")->required();
  l2->add_option("--out", opt.output, "output file (default stdout)");

  auto* expected = add_common(app.add_subcommand("expected", "E[L2^2] by quadrature or MC"));
  expected->add_option("--method", opt.method, "quad or mc");
  expected->add_option("--grid", opt.grid, "quadrature nodes per axis");
  expected->add_option("--replicates", opt.replicates, "MC replicates");
  expected->add_option("--seed", opt.seed, "RNG seed")->each([&](const std::string&) {
    opt.seed_set = true;
  });

  auto* compare = add_common(app.add_subcommand(
      "compare", "difference of expectations: coupled MC, quadrature, closed form"));
  compare->add_option("--theta2", opt.theta2, "second split angle")->required();
  compare->add_option("--replicates", opt.replicates, "MC replicates");
  compare->add_option("--seed", opt.seed, "RNG seed")->each([&](const std::string&) {
    opt.seed_set = true;
  });
  compare->add_option("--grid", opt.grid, "quadrature nodes per axis");

  auto* sweep = add_common(app.add_subcommand("sweep", "P(theta) curve data"), false);
  sweep->add_option("--count", opt.count, "number of theta values on [0, pi/2]");
  sweep->add_option("--grid", opt.grid, "quadrature nodes per axis");
  sweep->add_flag("--with-quadrature", opt.with_quadrature,
                  "add a quadrature difference column");
  sweep->add_option("--format", opt.format, "json or csv");

  auto* bound = add_common(app.add_subcommand("bound", "expected-L2^2 upper bound report"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (partition->parsed()) return run_partition(opt, out);
    if (sample->parsed()) return run_sample(opt, out);
    if (l2->parsed()) return run_l2(opt, out);
    if (expected->parsed()) return run_expected(opt, out);
    if (compare->parsed()) return run_compare(opt, out);
    if (sweep->parsed()) return run_sweep(opt, out);
    if (bound->parsed()) return run_bound(opt, out);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace stratdisc::cli
