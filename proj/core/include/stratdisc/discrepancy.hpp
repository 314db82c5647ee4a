#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stratdisc/geometry.hpp"
#include "stratdisc/rng.hpp"

namespace stratdisc {

/// Finite point set in [0,1]^dim, row-major.
struct PointSet {
  int dim = 0;
  std::vector<double> coords;

  std::size_t size() const { return coords.size() / static_cast<std::size_t>(dim); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

/// Tensor midpoint rule; points_per_axis = 0 picks the per-use default
/// (1024 for 2D building-block integrals, 256 for d-dimensional ones).
/// With refine set, one Richardson step from half resolution is applied and
/// the reported error estimate is |value(n) - value(n/2)|.
struct QuadratureSpec {
  int points_per_axis = 0;
  bool refine = true;
};

struct ExpectationResult {
  enum class Method { ClosedForm, Quadrature, MonteCarlo };

  double value = 0.0;
  double error = 0.0;  // quadrature error estimate or MC standard error
  Method method = Method::Quadrature;
  std::optional<PartitionSpec> params;
  std::optional<PartitionSpec> params2;  // second spec for differences
  std::optional<std::int64_t> replicates;
};

/// Discrepancy function Delta(P, z): anchored-box volume minus the fraction
/// of points in the half-open box [0, z).
double local_discrepancy(const PointSet& points, std::span<const double> z);

/// L2^2 discrepancy by the algebraic expansion of the defining integral;
/// O(N^2 d) with pair symmetry and compensated accumulation.
double l2_squared_exact(const PointSet& points);

/// Direct midpoint quadrature of the defining integral (oracle use, d <= 3).
double l2_squared_quadrature(const PointSet& points, const QuadratureSpec& quad = {});

/// E[L2^2] for stratified sampling from the given equivolume cells of the
/// cuboid [lo, hi]: (1 / (N^2 lambda(K))) sum_i integral q_i (1 - q_i).
ExpectationResult expected_l2_squared_quadrature(std::span<const Cell> cells,
                                                 std::span<const double> lo,
                                                 std::span<const double> hi,
                                                 const QuadratureSpec& quad = {});
ExpectationResult expected_l2_squared_quadrature(const Partition& partition,
                                                 const QuadratureSpec& quad = {});

/// E[L2^2](A) - E[L2^2](B) as a single difference integrand over [0,1]^d, so
/// quadrature error cancels on the cells the partitions share.
ExpectationResult expected_difference_quadrature(const Partition& partition_a,
                                                 const Partition& partition_b,
                                                 const QuadratureSpec& quad = {});

/// Quadrature of the squared anchored-box measures over I = [0,2]x[0,1]:
/// (B1, B2) = (integral q_1^2, integral q_2^2) for the theta building block.
std::pair<double, double> building_block_B(double theta,
                                           const QuadratureSpec& quad = {});

/// Sample mean of l2_squared_exact over independent stratified replicates.
ExpectationResult expected_l2_squared_mc(const PartitionSpec& spec,
                                         std::int64_t replicates,
                                         const SeedSpec& seed);

/// Mean difference of L2^2 over coupled replicates (common random numbers on
/// the shared cells).
ExpectationResult expected_difference_mc(const PartitionSpec& spec_a,
                                         const PartitionSpec& spec_b,
                                         std::int64_t replicates,
                                         const SeedSpec& seed);

}  // namespace stratdisc
