#pragma once

// Coordinate-cube tilings of a box and the special Delone sets they anchor.

#include "delone/bijection.hpp"
#include "delone/geometry.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace delone {

struct TilingCheck {
  bool valid = true;
  std::optional<std::size_t> bad_cube;  // not a cube, edge outside [1, L], or outside the region
  std::optional<std::pair<std::size_t, std::size_t>> overlap;
  std::optional<RationalVec> gap_witness;  // region point covered by no cube
  Rational covered_volume;
};

class CubeTiling {
 public:
  /// Cubes are stored sorted by min corner. No validation happens here.
  CubeTiling(std::size_t dim, Box region, std::vector<Box> cubes, Rational max_edge);

  std::size_t dim() const noexcept { return dim_; }
  const Box& region() const noexcept { return region_; }
  const std::vector<Box>& cubes() const noexcept { return cubes_; }
  const Rational& max_edge() const noexcept { return max_edge_; }

  TilingCheck check() const;
  /// Throws InvalidArgument naming the first defect found by check().
  void validate() const;

  /// Index of the cube containing x (half-open), if any.
  std::optional<std::size_t> locate(const RationalVec& x) const;

 private:
  std::size_t dim_;
  Box region_;
  std::vector<Box> cubes_;
  Rational max_edge_;
};

/// Vertex of least coordinate sum, i.e. the min corner.
RationalVec m_vertex(const Box& q);

enum class PointKind { Standard, Exceptional };

class SpecialSet {
 public:
  const CubeTiling& tiling() const noexcept { return tiling_; }
  const DeloneWindow& points() const noexcept { return window_; }
  std::size_t size() const noexcept { return tiling_.cubes().size(); }

  /// Index of x in points(); throws InvalidArgument when absent.
  std::size_t index_of(const RationalVec& x) const;
  bool contains(const RationalVec& x) const;
  const Box& anchor_of(const RationalVec& x) const;
  std::size_t exceptional_count() const;

 private:
  friend SpecialSet build_special(CubeTiling t);
  SpecialSet(CubeTiling t, DeloneWindow w) : tiling_(std::move(t)), window_(std::move(w)) {}

  CubeTiling tiling_;
  DeloneWindow window_;  // points()[i] == m_vertex(tiling_.cubes()[i])
};

/// Validates the tiling and collects its min corners.
SpecialSet build_special(CubeTiling t);

PointKind classify_point(const SpecialSet& s, const RationalVec& x);
const Box& g_map(const SpecialSet& s, const RationalVec& x);

/// Unit-cube tiling of [0, side)^dim.
CubeTiling unit_tiling(std::size_t dim, long side);

struct LatticeResult {
  Integer sigma;
  DeloneWindow lattice;
  Bijection pairing;  // original point -> lattice point
  std::optional<DistortionReport> distortion;  // absent for fewer than two points
};

/// Scales by the least integer sigma with sigma^2 * 4r^2 > 4d and rounds every
/// coordinate to the nearest integer, halves going down. Explicit windows only.
LatticeResult latticize(const DeloneWindow& w);

}  // namespace delone
