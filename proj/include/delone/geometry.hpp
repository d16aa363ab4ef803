#pragma once

// Exact rational geometry in R^d: points, half-open coordinate boxes, finite
// windows onto Delone sets, and the packing/covering checks built on them.
// Every predicate works on squared Euclidean distances; square roots never
// appear.

#include "delone/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace delone {

class RationalVec {
 public:
  RationalVec() = default;
  explicit RationalVec(std::size_t dim) : coords_(dim) {}
  explicit RationalVec(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  RationalVec(std::initializer_list<Rational> coords) : coords_(coords) {}

  static RationalVec unit(std::size_t dim, std::size_t axis, const Rational& length = 1);

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  RationalVec& operator+=(const RationalVec& other);
  RationalVec& operator-=(const RationalVec& other);
  RationalVec& operator*=(const Rational& s);

  friend RationalVec operator+(RationalVec a, const RationalVec& b) { return a += b; }
  friend RationalVec operator-(RationalVec a, const RationalVec& b) { return a -= b; }
  friend RationalVec operator*(RationalVec a, const Rational& s) { return a *= s; }
  friend RationalVec operator*(const Rational& s, RationalVec a) { return a *= s; }

  friend bool operator==(const RationalVec& a, const RationalVec& b) { return a.coords_ == b.coords_; }
  /// Lexicographic order, first coordinate most significant.
  friend std::strong_ordering operator<=>(const RationalVec& a, const RationalVec& b);

 private:
  std::vector<Rational> coords_;
};

void require_same_dim(const RationalVec& a, const RationalVec& b);

Rational dot(const RationalVec& a, const RationalVec& b);
Rational squared_norm(const RationalVec& a);
Rational squared_distance(const RationalVec& a, const RationalVec& b);

/// Coordinate box. As a set it is the half-open product of [min_i, min_i + edge_i);
/// closed-box queries are available separately. Zero edges are representable so
/// that degenerate query regions can be expressed; tilings and windows reject them.
class Box {
 public:
  Box() = default;
  Box(RationalVec min_corner, std::vector<Rational> edge_lengths);

  static Box cube(RationalVec min_corner, const Rational& edge);
  /// Closed-box style constructor from two opposite corners (lo <= hi per axis).
  static Box from_corners(const RationalVec& lo, const RationalVec& hi);

  std::size_t dim() const noexcept { return min_.dim(); }
  const RationalVec& min_corner() const noexcept { return min_; }
  const std::vector<Rational>& edge_lengths() const noexcept { return edges_; }
  const Rational& edge(std::size_t axis) const { return edges_[axis]; }
  Rational upper(std::size_t axis) const { return min_[axis] + edges_[axis]; }
  RationalVec max_corner() const;

  bool is_cube() const;
  bool is_degenerate() const;
  Rational volume() const;

  bool contains(const RationalVec& p) const;
  bool contains_closed(const RationalVec& p) const;
  bool contains(const Box& inner) const;
  /// True when the interiors intersect (positive-volume overlap).
  bool overlaps(const Box& other) const;
  /// Intersection of the closed boxes, if nonempty.
  std::optional<Box> closed_intersection(const Box& other) const;

  Box translated(const RationalVec& offset) const;
  Box scaled(const Rational& factor) const;
  Box expanded(const Rational& margin) const;

  friend bool operator==(const Box& a, const Box& b) = default;
  friend std::strong_ordering operator<=>(const Box& a, const Box& b);

 private:
  RationalVec min_;
  std::vector<Rational> edges_;
};

enum class Fill { None, IntegerLattice };

/// Finite representation of a (possibly infinite) Delone set.
///
/// Points are explicit inside the explicit regions: the listed blocks, or the
/// whole window when no blocks are given. With Fill::IntegerLattice every point
/// of Z^d outside the explicit regions also belongs to the set.
class DeloneWindow {
 public:
  DeloneWindow(std::size_t dim, std::vector<RationalVec> points, Box window,
               Fill fill = Fill::None, std::vector<Box> blocks = {});

  std::size_t dim() const noexcept { return dim_; }
  /// Sorted lexicographically, pairwise distinct.
  const std::vector<RationalVec>& points() const noexcept { return points_; }
  const Box& window() const noexcept { return window_; }
  Fill fill() const noexcept { return fill_; }
  const std::vector<Box>& blocks() const noexcept { return blocks_; }
  std::span<const Box> explicit_regions() const;

  bool in_explicit_region(const RationalVec& x) const;
  bool contains(const RationalVec& x) const;
  /// Lattice fill points inside the closed box `b` (empty unless fill is Z^d).
  std::vector<RationalVec> fill_points_in(const Box& b) const;
  /// Explicit points inside the closed box `b`.
  std::vector<RationalVec> explicit_points_in(const Box& b) const;

 private:
  std::size_t dim_;
  std::vector<RationalVec> points_;
  Box window_;
  Fill fill_;
  std::vector<Box> blocks_;
};

struct PackingReport {
  Rational min_distance_sq;
  /// r_max^2 = min_distance_sq / 4.
  Rational radius_sq;
  RationalVec a, b;
};

/// Half the minimum pairwise distance, as squares. Needs at least two points
/// (lattice fill counts).
PackingReport packing_radius(const DeloneWindow& w);

struct CoveringReport {
  Rational radius_sq;
  /// A point of the region attaining the covering radius.
  RationalVec witness;
};

/// Exact squared covering radius of the window's point set over the closed
/// region: the maximum over the region of the squared distance to the nearest
/// point. Computed by clipping each point's Voronoi cell to the region in exact
/// arithmetic and taking the farthest cell vertex. Works in every dimension.
CoveringReport covering_radius(const DeloneWindow& w, const Box& region);

struct DeloneReport {
  bool holds = false;
  bool separated = false;
  bool covered = false;
  Rational min_distance_sq;
  Rational covering_radius_sq;
  std::optional<std::pair<RationalVec, RationalVec>> violating_pair;
  std::optional<RationalVec> uncovered_witness;
};

/// Checks min pairwise distance >= 2r and that every point of `region` lies
/// within distance R of the set, both on squared values. `covering_bound_sq` is R^2.
DeloneReport is_delone(const DeloneWindow& w, const Rational& r, const Rational& covering_bound_sq,
                       const Box& region);

/// Maximum squared pairwise distance; 0 for a singleton.
Rational diameter_squared(std::span<const RationalVec> points);

/// Exact covering core: max over the closed box of the squared distance to the
/// nearest site. Exposed for testing.
CoveringReport nearest_site_sup(std::span<const RationalVec> sites, const Box& closed_region);

}  // namespace delone
