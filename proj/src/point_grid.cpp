#include "point_grid.hpp"

#include "delone/error.hpp"

#include <algorithm>
#include <cmath>

namespace delone::detail {

PointGrid::PointGrid(std::span<const RationalVec> points, Rational cell) : cell_(std::move(cell)) {
  if (cell_ <= 0) throw InvalidArgument("grid cell size must be positive");
  for (std::size_t i = 0; i < points.size(); ++i) {
    CellKey key = key_of(points[i]);
    if (lo_.empty()) {
      lo_ = key;
      hi_ = key;
    } else {
      for (std::size_t a = 0; a < key.size(); ++a) {
        lo_[a] = std::min(lo_[a], key[a]);
        hi_[a] = std::max(hi_[a], key[a]);
      }
    }
    buckets_[std::move(key)].push_back(i);
  }
}

CellKey PointGrid::key_of(const RationalVec& p) const {
  CellKey key(p.dim());
  for (std::size_t a = 0; a < p.dim(); ++a) {
    key[a] = floor(p[a] / cell_).convert_to<std::int64_t>();
  }
  return key;
}

std::int64_t PointGrid::max_useful_ring(const CellKey& center) const {
  std::int64_t ring = 0;
  for (std::size_t a = 0; a < center.size() && !lo_.empty(); ++a) {
    ring = std::max(ring, std::max(center[a] - lo_[a], hi_[a] - center[a]));
  }
  return ring;
}

std::int64_t PointGrid::max_span() const {
  std::int64_t span = 0;
  for (std::size_t a = 0; a < lo_.size(); ++a) span = std::max(span, hi_[a] - lo_[a]);
  return span;
}

Rational default_cell_size(std::span<const RationalVec> points) {
  if (points.empty()) return 1;
  const std::size_t d = points.front().dim();
  std::vector<Rational> lo(points.front().coords()), hi(points.front().coords());
  for (const auto& p : points) {
    for (std::size_t a = 0; a < d; ++a) {
      if (p[a] < lo[a]) lo[a] = p[a];
      if (hi[a] < p[a]) hi[a] = p[a];
    }
  }
  double max_extent = 0;
  double log_volume = 0;
  std::size_t spread_axes = 0;
  for (std::size_t a = 0; a < d; ++a) {
    const double e = to_double(hi[a] - lo[a]);
    max_extent = std::max(max_extent, e);
    if (e > 0) {
      log_volume += std::log(e);
      ++spread_axes;
    }
  }
  if (max_extent == 0) return 1;
  const double per_point = std::exp(log_volume / static_cast<double>(spread_axes)) /
                           std::pow(static_cast<double>(points.size()),
                                    1.0 / static_cast<double>(spread_axes));
  double h = std::clamp(per_point, max_extent * 1e-6, max_extent);
  // Snap to a power of two so the cell edge is a short exact rational.
  const double snapped = std::exp2(std::ceil(std::log2(h)));
  return Rational(snapped);
}

}  // namespace delone::detail
