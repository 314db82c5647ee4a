#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace stratdisc {

inline constexpr double kGeomTol = 1e-12;

/// Parameters naming one member of the partition family. N = m^d cells,
/// two of which (the merged corner cells) depend on the split angle theta.
struct PartitionSpec {
  int m;         // cells per axis, >= 2
  int d;         // dimension, >= 2
  double theta;  // split angle in [0, pi/2], radians

  PartitionSpec(int m_, int d_, double theta_);

  std::int64_t cell_count() const;  // N = m^d

  // Anchor of the merged 2b x b x ... x b cuboid and the grid step b.
  double a1() const { return double(m - 2) / m; }
  double a2() const { return double(m - 1) / m; }
  double b() const { return 1.0 / m; }

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;
};

/// Analytic branch of the construction: tan(theta) below, at, or above 1/2.
enum class ThetaRegime { Low, Critical, High };

ThetaRegime regime_of(double theta);

/// The critical angle arctan(1/2), where the split degenerates to two
/// triangles and P(theta) attains its minimum.
double critical_angle();

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Convex polygon, counterclockwise, strictly positive area.
class Polygon2 {
 public:
  // Normalizes the input: drops repeated vertices (tolerance kGeomTol) and
  // rejects non-convex or degenerate chains.
  explicit Polygon2(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return verts_; }
  double area() const;

  friend bool operator==(const Polygon2&, const Polygon2&) = default;

 private:
  std::vector<Vec2> verts_;
};

/// Signed area of a closed CCW chain (shoelace). Not restricted to valid
/// polygons; used by the clipper on possibly degenerate outputs.
double shoelace_area(std::span<const Vec2> vertices);

/// Clips a convex polygon against the lower-left quadrant {x <= x1, y <= x2}.
/// Returns the vertex chain, possibly empty or degenerate.
std::vector<Vec2> clip_lower_left(std::span<const Vec2> polygon, double x1,
                                  double x2);

/// One stratum of a partition.
struct BoxCell {
  std::vector<double> lo;
  std::vector<double> hi;
  friend bool operator==(const BoxCell&, const BoxCell&) = default;
};

/// Convex-polygon-times-box prism: polygon in coordinates 1,2, an interval
/// per coordinate 3..d.
struct PrismCell {
  Polygon2 polygon;
  std::vector<std::array<double, 2>> box;
  friend bool operator==(const PrismCell&, const PrismCell&) = default;
};

using Cell = std::variant<BoxCell, PrismCell>;

int cell_dimension(const Cell& cell);
double cell_volume(const Cell& cell);

/// Lebesgue measure of cell ∩ [0, x]. Coordinates of x are clamped per axis,
/// so any point of [0,1]^d (or beyond) is a valid query.
double anchored_box_measure(const Cell& cell, std::span<const double> x);

struct Partition {
  PartitionSpec spec;
  std::vector<Cell> cells;  // cells 0-1 possibly prisms, the rest boxes
};

/// Builds the m^d partition: the grid of boxes of side 1/m with the two
/// cells at (a1, a2, ...) merged into a 2b x b x ... cuboid and re-split by
/// the plane through its center at angle theta to the horizontal.
Partition build_partition(const PartitionSpec& spec);

/// The two halves of the canonical block I = [0,2]x[0,1] split at angle
/// theta, as explicit polygons (first = the half containing the origin).
std::pair<Polygon2, Polygon2> building_block_polygons(double theta);

/// Closed-form lambda(Omega_i ∩ [0,x]) on the canonical block, cell_index in
/// {1, 2}, x in [0,2]x[0,1].
double building_block_q(double theta, int cell_index, double x1, double x2);

}  // namespace stratdisc
