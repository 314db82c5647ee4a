#include "stratdisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stratdisc {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi)) {
    throw std::domain_error("theta must lie in [0, pi/2]");
  }
}

// cot(theta) with the pi/2 endpoint handled exactly, never through tan.
double cot_of(double theta) {
  if (theta == kHalfPi) return 0.0;
  return std::cos(theta) / std::sin(theta);
}

}  // namespace

PartitionSpec::PartitionSpec(int m_, int d_, double theta_)
    : m(m_), d(d_), theta(theta_) {
  if (!(m >= d && d >= 2)) {
    throw std::invalid_argument("PartitionSpec requires m >= d >= 2");
  }
  check_theta(theta);
}

std::int64_t PartitionSpec::cell_count() const {
  std::int64_t n = 1;
  for (int i = 0; i < d; ++i) n *= m;
  return n;
}

double critical_angle() { return std::atan(0.5); }

ThetaRegime regime_of(double theta) {
  check_theta(theta);
  // The rounded arctan(1/2) itself counts as critical even though its tan
  // is one ulp shy of 1/2.
  if (theta == critical_angle()) return ThetaRegime::Critical;
  const double t = std::tan(theta);  // tan(pi/2) overflows to a huge value
  if (t < 0.5) return ThetaRegime::Low;
  if (t == 0.5) return ThetaRegime::Critical;
  return ThetaRegime::High;
}

Polygon2::Polygon2(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  // Drop repeated vertices (cyclically).
  std::vector<Vec2> kept;
  for (const Vec2& v : verts_) {
    if (!kept.empty() && std::abs(v.x - kept.back().x) <= kGeomTol &&
        std::abs(v.y - kept.back().y) <= kGeomTol) {
      continue;
    }
    kept.push_back(v);
  }
  while (kept.size() > 1 && std::abs(kept.front().x - kept.back().x) <= kGeomTol &&
         std::abs(kept.front().y - kept.back().y) <= kGeomTol) {
    kept.pop_back();
  }
  verts_ = std::move(kept);

  if (verts_.size() < 3) {
    throw std::invalid_argument("Polygon2: fewer than 3 distinct vertices");
  }
  if (shoelace_area(verts_) <= kGeomTol) {
    throw std::invalid_argument("Polygon2: vertices must be CCW with positive area");
  }
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = verts_[i];
    const Vec2& b = verts_[(i + 1) % n];
    const Vec2& c = verts_[(i + 2) % n];
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (cross < -kGeomTol) {
      throw std::invalid_argument("Polygon2: vertices must describe a convex chain");
    }
  }
}

double Polygon2::area() const { return shoelace_area(verts_); }

double shoelace_area(std::span<const Vec2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

namespace {

// One Sutherland-Hodgman pass against the half-plane keep(v) <= bound.
template <typename Coord>
std::vector<Vec2> clip_half_plane(std::span<const Vec2> poly, double bound,
                                  Coord coord) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& cur = poly[i];
    const Vec2& nxt = poly[(i + 1) % n];
    const bool cur_in = coord(cur) <= bound;
    const bool nxt_in = coord(nxt) <= bound;
    if (cur_in) out.push_back(cur);
    if (cur_in != nxt_in) {
      const double denom = coord(nxt) - coord(cur);
      const double t = (bound - coord(cur)) / denom;
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

}  // namespace

std::vector<Vec2> clip_lower_left(std::span<const Vec2> polygon, double x1,
                                  double x2) {
  auto clipped = clip_half_plane(polygon, x1, [](const Vec2& v) { return v.x; });
  return clip_half_plane(clipped, x2, [](const Vec2& v) { return v.y; });
}

int cell_dimension(const Cell& cell) {
  if (const auto* box = std::get_if<BoxCell>(&cell)) {
    return static_cast<int>(box->lo.size());
  }
  return 2 + static_cast<int>(std::get<PrismCell>(cell).box.size());
}

double cell_volume(const Cell& cell) {
  if (const auto* box = std::get_if<BoxCell>(&cell)) {
    double vol = 1.0;
    for (std::size_t k = 0; k < box->lo.size(); ++k) {
      vol *= box->hi[k] - box->lo[k];
    }
    return vol;
  }
  const auto& prism = std::get<PrismCell>(cell);
  double vol = prism.polygon.area();
  for (const auto& [lo, hi] : prism.box) vol *= hi - lo;
  return vol;
}

double anchored_box_measure(const Cell& cell, std::span<const double> x) {
  if (const auto* box = std::get_if<BoxCell>(&cell)) {
    double vol = 1.0;
    for (std::size_t k = 0; k < box->lo.size(); ++k) {
      const double ov = std::min(x[k], box->hi[k]) - box->lo[k];
      if (ov <= 0.0) return 0.0;
      vol *= std::min(ov, box->hi[k] - box->lo[k]);
    }
    return vol;
  }
  const auto& prism = std::get<PrismCell>(cell);
  const auto clipped = clip_lower_left(prism.polygon.vertices(), x[0], x[1]);
  double vol = std::max(0.0, shoelace_area(clipped));
  if (vol == 0.0) return 0.0;
  for (std::size_t j = 0; j < prism.box.size(); ++j) {
    const auto& [lo, hi] = prism.box[j];
    const double ov = std::min(x[2 + j], hi) - lo;
    if (ov <= 0.0) return 0.0;
    vol *= std::min(ov, hi - lo);
  }
  return vol;
}

std::pair<Polygon2, Polygon2> building_block_polygons(double theta) {
  check_theta(theta);
  if (regime_of(theta) == ThetaRegime::Low) {
    const double t = std::tan(theta);
    Polygon2 bottom({{0.0, 0.0}, {2.0, 0.0}, {2.0, 0.5 - t}, {0.0, 0.5 + t}});
    Polygon2 top({{0.0, 0.5 + t}, {2.0, 0.5 - t}, {2.0, 1.0}, {0.0, 1.0}});
    return {std::move(bottom), std::move(top)};
  }
  const double c = cot_of(theta);
  Polygon2 left({{0.0, 0.0}, {1.0 + 0.5 * c, 0.0}, {1.0 - 0.5 * c, 1.0}, {0.0, 1.0}});
  Polygon2 right({{1.0 + 0.5 * c, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {1.0 - 0.5 * c, 1.0}});
  return {std::move(left), std::move(right)};
}

double building_block_q(double theta, int cell_index, double x1, double x2) {
  check_theta(theta);
  if (cell_index != 1 && cell_index != 2) {
    throw std::invalid_argument("building_block_q: cell_index must be 1 or 2");
  }

  // lambda(Omega_2 ∩ [0,x]); Omega_1 follows from q1 + q2 = x1*x2.
  double q2 = 0.0;
  if (regime_of(theta) == ThetaRegime::Low) {
    // Split line y = 1/2 + tan(theta) * (1 - x); cell 2 lies above it.
    const double t = std::tan(theta);
    const double above = x2 - 0.5 - t + t * x1;
    if (above <= 0.0) {
      q2 = 0.0;
    } else if (x2 >= 0.5 + t) {
      // Box corner clears the line over the full [0, x1] span.
      q2 = (x2 - t - 0.5) * x1 + 0.5 * t * x1 * x1;
    } else {
      // Corner triangle between the line and (x1, x2).
      const double c = cot_of(theta);
      q2 = 0.5 * above * (x1 - 1.0 - 0.5 * c + c * x2);
    }
  } else {
    // Split line x = 1 + cot(theta) * (1/2 - y); cell 2 lies to its right.
    const double c = cot_of(theta);
    const double right = (x1 - 1.0) + (x2 - 0.5) * c;
    if (right <= 0.0) {
      q2 = 0.0;
    } else if (x1 <= 1.0 + 0.5 * c) {
      // Corner triangle; unreachable at theta = pi/2, so tan is finite here.
      const double t = std::tan(theta);
      q2 = 0.5 * ((x1 - 1.0) * t + x2 - 0.5) * right;
    } else {
      // Box corner clears the line over the full [0, x2] span.
      q2 = x1 * x2 - x2 - 0.5 * c * x2 + 0.5 * x2 * x2 * c;
    }
  }
  return cell_index == 2 ? q2 : x1 * x2 - q2;
}

Partition build_partition(const PartitionSpec& spec) {
  const int m = spec.m;
  const int d = spec.d;
  const double b = spec.b();
  const double a1 = spec.a1();
  const double a2 = spec.a2();

  Partition partition{spec, {}};
  partition.cells.reserve(static_cast<std::size_t>(spec.cell_count()));

  // Intervals of the merged cuboid on axes 3..d: topmost grid slot per axis.
  std::vector<std::array<double, 2>> tail(static_cast<std::size_t>(d - 2),
                                          {a2, 1.0});

  const auto push_box = [&](double lo1, double hi1, double lo2, double hi2) {
    BoxCell box;
    box.lo = {lo1, lo2};
    box.hi = {hi1, hi2};
    for (const auto& [lo, hi] : tail) {
      box.lo.push_back(lo);
      box.hi.push_back(hi);
    }
    partition.cells.emplace_back(std::move(box));
  };

  if (spec.theta == kHalfPi) {
    push_box(a1, a2, a2, 1.0);
    push_box(a2, 1.0, a2, 1.0);
  } else if (spec.theta == 0.0) {
    push_box(a1, 1.0, a2, a2 + 0.5 * b);
    push_box(a1, 1.0, a2 + 0.5 * b, 1.0);
  } else {
    auto [first, second] = building_block_polygons(spec.theta);
    const auto place = [&](const Polygon2& poly) {
      std::vector<Vec2> verts;
      verts.reserve(poly.vertices().size());
      for (const Vec2& v : poly.vertices()) {
        verts.push_back({a1 + b * v.x, a2 + b * v.y});
      }
      partition.cells.emplace_back(PrismCell{Polygon2(std::move(verts)), tail});
    };
    place(first);
    place(second);
  }

  // Remaining grid boxes, lexicographic over the multi-index, skipping the
  // two slots occupied by the merged cuboid.
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    bool merged_slot = idx[1] == m - 1 && (idx[0] == m - 2 || idx[0] == m - 1);
    for (int k = 2; merged_slot && k < d; ++k) merged_slot = idx[k] == m - 1;
    if (!merged_slot) {
      BoxCell box;
      box.lo.resize(static_cast<std::size_t>(d));
      box.hi.resize(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) {
        box.lo[k] = static_cast<double>(idx[k]) / m;
        box.hi[k] = static_cast<double>(idx[k] + 1) / m;
      }
      partition.cells.emplace_back(std::move(box));
    }
    int k = d - 1;
    while (k >= 0 && ++idx[k] == m) idx[k--] = 0;
    if (k < 0) break;
  }
  return partition;
}

}  // namespace stratdisc
