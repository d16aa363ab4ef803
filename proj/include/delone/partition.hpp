#pragma once

// Axis-aligned voxel partitions of the unit cube into two labels, boundary
// measures between them, and surface area of unions of tiling cubes.

#include "delone/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace delone {

enum class Label : char { P = 'P', Q = 'Q' };

class VoxelPartition {
 public:
  /// `labels` is row-major over the grid, last axis fastest.
  VoxelPartition(std::vector<long> resolution, std::string labels);

  std::size_t dim() const noexcept { return resolution_.size(); }
  const std::vector<long>& resolution() const noexcept { return resolution_; }
  const std::string& labels() const noexcept { return labels_; }
  std::size_t cell_count() const noexcept { return labels_.size(); }

  Label at(const std::vector<long>& cell) const;
  Label at_flat(std::size_t i) const { return static_cast<Label>(labels_[i]); }
  /// Volume of one cell, 1 / prod g_k.
  Rational cell_volume() const;
  /// Area of a facet orthogonal to `axis`, prod over m != axis of 1/g_m.
  Rational facet_area(std::size_t axis) const;

  /// Each cell split into 2^d children with the same label.
  VoxelPartition refined() const;
  VoxelPartition swapped() const;

 private:
  std::vector<long> resolution_;
  std::string labels_;
  std::vector<std::size_t> stride_;
};

Rational volume(const VoxelPartition& vp, Label label);
/// Total area of internal facets between a P cell and a Q cell.
Rational shared_boundary_area(const VoxelPartition& vp);

enum class Lemma5Status { Holds, Fails, NotApplicable };

struct Lemma5Report {
  Lemma5Status status = Lemma5Status::NotApplicable;
  Rational lhs;  // shared boundary area
  Rational rhs;  // alpha / 2^{d-1}
  Rational vol_p, vol_q;
};

/// alpha must lie in (0, 1/2).
Lemma5Report lemma5_check(const VoxelPartition& vp, const Rational& alpha);

struct SliceVolumes {
  Rational p, q;  // (d-1)-volumes of the cross-section
};

std::vector<SliceVolumes> projection_section_profile(const VoxelPartition& vp, std::size_t axis);

/// Surface area of the union of pairwise disjoint coordinate cubes.
Rational cube_union_surface(const std::vector<Box>& cubes);

/// s^2 = 16 eps^2 |F(v)-F(u)|^2 / M^2.
Rational alignment_scale_s_sq(const Rational& epsilon, long M, const Rational& dist_sq);

/// Uniform integer in [lo, hi] from raw engine output (portable across standard libraries).
long draw(std::mt19937_64& rng, long lo, long hi);

/// Random partition with per-axis resolution in [res_lo, res_hi]; the P density
/// is itself drawn per instance, and a quarter of the instances are half-space cuts.
VoxelPartition random_partition(std::mt19937_64& rng, std::size_t dim, long res_lo, long res_hi);

}  // namespace delone
