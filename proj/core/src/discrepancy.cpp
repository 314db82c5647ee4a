#include "stratdisc/discrepancy.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "stratdisc/sampling.hpp"

namespace stratdisc {

namespace {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Tensor midpoint rule over the cuboid [lo, hi], n nodes per axis,
// fixed-order accumulation.
template <typename F>
double midpoint_integral(std::span<const double> lo, std::span<const double> hi,
                         int n, F&& f) {
  const int d = static_cast<int>(lo.size());
  std::vector<double> h(static_cast<std::size_t>(d));
  double cell_vol = 1.0;
  for (int k = 0; k < d; ++k) {
    h[k] = (hi[k] - lo[k]) / n;
    cell_vol *= h[k];
  }
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> x(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) x[k] = lo[k] + 0.5 * h[k];

  KahanSum acc;
  while (true) {
    acc.add(f(std::span<const double>(x)));
    int k = d - 1;
    while (k >= 0) {
      if (++idx[k] < n) {
        x[k] = lo[k] + (idx[k] + 0.5) * h[k];
        break;
      }
      idx[k] = 0;
      x[k] = lo[k] + 0.5 * h[k];
      --k;
    }
    if (k < 0) break;
  }
  return acc.sum * cell_vol;
}

// Runs eval at n and, when refine is set, at n/2 with one Richardson step.
std::pair<double, double> refine_pair(const QuadratureSpec& quad, int default_n,
                                      const std::function<double(int)>& eval) {
  const int n = quad.points_per_axis > 0 ? quad.points_per_axis : default_n;
  if (n < 2) throw std::invalid_argument("points_per_axis too small");
  if (!quad.refine) return {eval(n), 0.0};
  if (n % 2 != 0) {
    throw std::invalid_argument("points_per_axis must be even when refining");
  }
  const double coarse = eval(n / 2);
  const double fine = eval(n);
  return {fine + (fine - coarse) / 3.0, std::abs(fine - coarse)};
}

void check_points(const PointSet& points) {
  if (points.dim < 1 || points.coords.empty() ||
      points.coords.size() % static_cast<std::size_t>(points.dim) != 0) {
    throw std::invalid_argument("point set must be nonempty with uniform dimension");
  }
}

double total_volume(std::span<const Cell> cells) {
  double v = 0.0;
  for (const Cell& c : cells) v += cell_volume(c);
  return v;
}

}  // namespace

double local_discrepancy(const PointSet& points, std::span<const double> z) {
  check_points(points);
  const std::size_t n = points.size();
  const int d = points.dim;
  double vol = 1.0;
  for (int k = 0; k < d; ++k) vol *= z[k];
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = points.point(i);
    bool inside = true;
    for (int k = 0; inside && k < d; ++k) inside = p[k] < z[k];
    count += inside;
  }
  return vol - static_cast<double>(count) / static_cast<double>(n);
}

double l2_squared_exact(const PointSet& points) {
  check_points(points);
  const std::size_t n = points.size();
  const int d = points.dim;

  KahanSum single;
  KahanSum pairs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = points.point(i);
    double a = 1.0;
    for (int k = 0; k < d; ++k) a *= 0.5 * (1.0 - pi[k] * pi[k]);
    single.add(a);
    for (std::size_t j = i; j < n; ++j) {
      const auto pj = points.point(j);
      double w = 1.0;
      for (int k = 0; k < d; ++k) w *= 1.0 - std::max(pi[k], pj[k]);
      pairs.add(i == j ? w : 2.0 * w);
    }
  }
  const double nn = static_cast<double>(n);
  return std::pow(3.0, -d) - 2.0 / nn * single.sum + pairs.sum / (nn * nn);
}

double l2_squared_quadrature(const PointSet& points, const QuadratureSpec& quad) {
  check_points(points);
  const int d = points.dim;
  if (d > 3) {
    throw std::invalid_argument("l2_squared_quadrature: oracle limited to d <= 3");
  }
  const int default_n = d == 1 ? 16384 : d == 2 ? 8192 : 256;
  const std::vector<double> lo(static_cast<std::size_t>(d), 0.0);
  const std::vector<double> hi(static_cast<std::size_t>(d), 1.0);
  auto [value, error] = refine_pair(quad, default_n, [&](int n) {
    return midpoint_integral(lo, hi, n, [&](std::span<const double> z) {
      const double delta = local_discrepancy(points, z);
      return delta * delta;
    });
  });
  (void)error;
  return value;
}

ExpectationResult expected_l2_squared_quadrature(std::span<const Cell> cells,
                                                 std::span<const double> lo,
                                                 std::span<const double> hi,
                                                 const QuadratureSpec& quad) {
  const int d = static_cast<int>(lo.size());
  if (d > 4) {
    throw std::invalid_argument("expected_l2_squared_quadrature: d <= 4 required");
  }
  if (cells.empty()) throw std::invalid_argument("no cells");
  const double n_cells = static_cast<double>(cells.size());
  const double domain_vol = total_volume(cells);
  std::vector<double> vols(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) vols[i] = cell_volume(cells[i]);

  auto [value, error] = refine_pair(quad, 256, [&](int n) {
    const double integral =
        midpoint_integral(lo, hi, n, [&](std::span<const double> x) {
          double s = 0.0;
          for (std::size_t i = 0; i < cells.size(); ++i) {
            const double q = anchored_box_measure(cells[i], x) / vols[i];
            s += q * (1.0 - q);
          }
          return s;
        });
    return integral / (n_cells * n_cells * domain_vol);
  });

  ExpectationResult result;
  result.value = value;
  result.error = error;
  result.method = ExpectationResult::Method::Quadrature;
  return result;
}

ExpectationResult expected_l2_squared_quadrature(const Partition& partition,
                                                 const QuadratureSpec& quad) {
  const std::vector<double> lo(static_cast<std::size_t>(partition.spec.d), 0.0);
  const std::vector<double> hi(static_cast<std::size_t>(partition.spec.d), 1.0);
  auto result = expected_l2_squared_quadrature(partition.cells, lo, hi, quad);
  result.params = partition.spec;
  return result;
}

ExpectationResult expected_difference_quadrature(const Partition& partition_a,
                                                 const Partition& partition_b,
                                                 const QuadratureSpec& quad) {
  if (partition_a.spec.m != partition_b.spec.m ||
      partition_a.spec.d != partition_b.spec.d) {
    throw std::invalid_argument("expected_difference_quadrature: specs must share m, d");
  }
  const int d = partition_a.spec.d;
  if (d > 4) {
    throw std::invalid_argument("expected_difference_quadrature: d <= 4 required");
  }
  const std::size_t n_cells = partition_a.cells.size();

  std::vector<std::size_t> differing;
  for (std::size_t i = 0; i < n_cells; ++i) {
    if (!(partition_a.cells[i] == partition_b.cells[i])) differing.push_back(i);
  }

  ExpectationResult result;
  result.method = ExpectationResult::Method::Quadrature;
  result.params = partition_a.spec;
  result.params2 = partition_b.spec;
  if (differing.empty()) return result;

  // Bounding cuboid of the differing cells: the integrand vanishes unless
  // the anchored box cuts it partially.
  std::vector<double> blo(static_cast<std::size_t>(d), 1.0);
  std::vector<double> bhi(static_cast<std::size_t>(d), 0.0);
  for (std::size_t i : differing) {
    for (const Partition* part : {&partition_a, &partition_b}) {
      const Cell& cell = part->cells[i];
      if (const auto* box = std::get_if<BoxCell>(&cell)) {
        for (int k = 0; k < d; ++k) {
          blo[k] = std::min(blo[k], box->lo[k]);
          bhi[k] = std::max(bhi[k], box->hi[k]);
        }
      } else {
        const auto& prism = std::get<PrismCell>(cell);
        for (const Vec2& v : prism.polygon.vertices()) {
          blo[0] = std::min(blo[0], v.x);
          bhi[0] = std::max(bhi[0], v.x);
          blo[1] = std::min(blo[1], v.y);
          bhi[1] = std::max(bhi[1], v.y);
        }
        for (std::size_t j = 0; j < prism.box.size(); ++j) {
          blo[2 + j] = std::min(blo[2 + j], prism.box[j][0]);
          bhi[2 + j] = std::max(bhi[2 + j], prism.box[j][1]);
        }
      }
    }
  }

  std::vector<double> vols_a(differing.size()), vols_b(differing.size());
  for (std::size_t t = 0; t < differing.size(); ++t) {
    vols_a[t] = cell_volume(partition_a.cells[differing[t]]);
    vols_b[t] = cell_volume(partition_b.cells[differing[t]]);
  }

  const std::vector<double> lo(static_cast<std::size_t>(d), 0.0);
  const std::vector<double> hi(static_cast<std::size_t>(d), 1.0);
  const double nn = static_cast<double>(n_cells);

  auto [value, error] = refine_pair(quad, 256, [&](int n) {
    const double integral =
        midpoint_integral(lo, hi, n, [&](std::span<const double> x) {
          bool outside = false;
          bool full = true;
          for (int k = 0; k < d; ++k) {
            const double ov = std::min(x[k], bhi[k]) - blo[k];
            if (ov <= 0.0) {
              outside = true;
              break;
            }
            full = full && ov >= bhi[k] - blo[k];
          }
          if (outside || full) return 0.0;
          double s = 0.0;
          for (std::size_t t = 0; t < differing.size(); ++t) {
            const std::size_t i = differing[t];
            const double qa = anchored_box_measure(partition_a.cells[i], x) / vols_a[t];
            const double qb = anchored_box_measure(partition_b.cells[i], x) / vols_b[t];
            s += qa * (1.0 - qa) - qb * (1.0 - qb);
          }
          return s;
        });
    return integral / (nn * nn);
  });

  result.value = value;
  result.error = error;
  return result;
}

std::pair<double, double> building_block_B(double theta, const QuadratureSpec& quad) {
  (void)regime_of(theta);  // validates the domain
  const std::vector<double> lo{0.0, 0.0};
  const std::vector<double> hi{2.0, 1.0};
  const auto integrate = [&](int cell_index) {
    auto [value, error] = refine_pair(quad, 1024, [&](int n) {
      return midpoint_integral(lo, hi, n, [&](std::span<const double> x) {
        const double q = building_block_q(theta, cell_index, x[0], x[1]);
        return q * q;
      });
    });
    (void)error;
    return value;
  };
  return {integrate(1), integrate(2)};
}

namespace {

template <typename Draw>
ExpectationResult mc_mean(std::int64_t replicates, Draw&& draw) {
  if (replicates < 2) {
    throw std::invalid_argument("Monte Carlo requires at least 2 replicates");
  }
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t r = 0; r < replicates; ++r) {
    const double v = draw(r);
    const double delta = v - mean;
    mean += delta / static_cast<double>(r + 1);
    m2 += delta * (v - mean);
  }
  ExpectationResult result;
  result.value = mean;
  result.error = std::sqrt(m2 / static_cast<double>(replicates - 1) /
                           static_cast<double>(replicates));
  result.method = ExpectationResult::Method::MonteCarlo;
  result.replicates = replicates;
  return result;
}

}  // namespace

ExpectationResult expected_l2_squared_mc(const PartitionSpec& spec,
                                         std::int64_t replicates,
                                         const SeedSpec& seed) {
  const Partition partition = build_partition(spec);
  auto result = mc_mean(replicates, [&](std::int64_t r) {
    const SeedSpec rep{seed.seed, seed.replicate + static_cast<std::uint64_t>(r)};
    const auto sample = generate_stratified(partition, rep);
    return l2_squared_exact(PointSet{spec.d, sample.coords});
  });
  result.params = spec;
  return result;
}

ExpectationResult expected_difference_mc(const PartitionSpec& spec_a,
                                         const PartitionSpec& spec_b,
                                         std::int64_t replicates,
                                         const SeedSpec& seed) {
  if (spec_a.m != spec_b.m || spec_a.d != spec_b.d) {
    throw std::invalid_argument("expected_difference_mc: specs must share m and d");
  }
  const Partition partition_a = build_partition(spec_a);
  const Partition partition_b = build_partition(spec_b);
  auto result = mc_mean(replicates, [&](std::int64_t r) {
    const SeedSpec rep{seed.seed, seed.replicate + static_cast<std::uint64_t>(r)};
    const auto [sample_a, sample_b] = generate_coupled(partition_a, partition_b, rep);
    return l2_squared_exact(PointSet{spec_a.d, sample_a.coords}) -
           l2_squared_exact(PointSet{spec_b.d, sample_b.coords});
  });
  result.params = spec_a;
  result.params2 = spec_b;
  return result;
}

}  // namespace stratdisc
