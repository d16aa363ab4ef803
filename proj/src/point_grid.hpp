#pragma once

// Uniform bucket grid over a point list. Cells are half-open cubes of a fixed
// rational edge; bucket keys are the integer cell indices.

#include "delone/geometry.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace delone::detail {

using CellKey = std::vector<std::int64_t>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& key) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int64_t v : key) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

class PointGrid {
 public:
  PointGrid(std::span<const RationalVec> points, Rational cell);

  const Rational& cell() const noexcept { return cell_; }
  CellKey key_of(const RationalVec& p) const;

  /// Calls f(index) for every point whose cell is at Chebyshev index distance
  /// exactly `ring` from `center`.
  template <class F>
  void for_each_in_ring(const CellKey& center, std::int64_t ring, F&& f) const {
    const std::size_t d = center.size();
    CellKey offset(d, -ring);
    CellKey probe(d);
    while (true) {
      bool on_shell = ring == 0;
      for (std::size_t i = 0; i < d && !on_shell; ++i) {
        if (offset[i] == ring || offset[i] == -ring) on_shell = true;
      }
      if (on_shell) {
        for (std::size_t i = 0; i < d; ++i) probe[i] = center[i] + offset[i];
        if (auto it = buckets_.find(probe); it != buckets_.end()) {
          for (std::size_t idx : it->second) f(idx);
        }
      }
      std::size_t axis = 0;
      while (axis < d && offset[axis] == ring) {
        offset[axis] = -ring;
        ++axis;
      }
      if (axis == d) break;
      ++offset[axis];
    }
  }

  /// Largest ring around `center` that can still contain a point.
  std::int64_t max_useful_ring(const CellKey& center) const;
  /// Largest per-axis spread of occupied cell indices.
  std::int64_t max_span() const;

  const std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash>& buckets() const {
    return buckets_;
  }

 private:
  Rational cell_;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> buckets_;
  CellKey lo_, hi_;
};

/// Cell edge giving on the order of one point per cell over the bounding box.
Rational default_cell_size(std::span<const RationalVec> points);

}  // namespace delone::detail
