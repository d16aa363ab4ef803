#pragma once

// Hierarchical checkerboard blocks, their stacks, and the bit-encoded family
// of blocks separated by growing gaps with Z^d filling the space between.

#include "delone/geometry.hpp"
#include "delone/tiling.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace delone {

struct ParamRequest {
  std::size_t dim = 2;
  Rational lambda = 1;
  Rational L = 2;
  Rational c = 2;
  Rational epsilon = Rational(1, 8);
  Rational k = 1;
  long M_min = 2;
  long N_min = 1;
  Integer H_min = 1;
  /// Upper end of the search for M.
  long M_cap = 4096;
  /// Clamp nu0 from above (toy constructions).
  std::optional<unsigned> nu0_cap;
};

struct ConstructionParams {
  std::size_t dim = 2;
  Rational lambda, L, c, epsilon, a, k;
  long M = 2;
  long N = 1;
  Integer H;
  unsigned nu0 = 0;

  Integer c_num() const { return numerator_of(c); }
  Integer c_den() const { return denominator_of(c); }
  /// Cells of the finest grid per unit length: N * M^nu0.
  Integer fine_per_unit() const;
};

/// Smallest nu with (1+k)^nu >= lambda^2.
unsigned log_ceiling(const Rational& lambda, const Rational& k);

/// Largest fraction of a sub-cube Q (a level cube cut into N^d parts) covered by
/// next-level parallelepipeds, measured on the level-0 geometry.
Rational next_level_fraction(std::size_t dim, long M, long N);

ConstructionParams derive_params(const ParamRequest& req);

enum class Color : std::uint8_t { Black = 0, White = 1 };

struct ColoredCube {
  Box cube;
  Color color;
};

struct HierarchyLevel {
  unsigned nu = 0;
  std::vector<Box> parallelepipeds;
  /// Cubes of edge 1/M^nu in every parallelepiped of this level, in order.
  std::vector<ColoredCube> cubes;
};

/// Levels 0..nu0 in the unit-scale coordinates of [0,1)^{d-1} x [0,M).
struct ColoredHierarchy {
  std::vector<HierarchyLevel> levels;
};

ColoredHierarchy build_colored_hierarchy(const ConstructionParams& p);

/// Finest-grid colouring. Cell index (t_1..t_{d-1}, t_d) with transverse
/// t_i < N*M^nu0 and t_d < M*N*M^nu0; storage is row-major, last axis fastest.
struct PaintedGrid {
  std::vector<std::int64_t> shape;
  std::vector<Color> colors;

  std::size_t flat_index(const std::vector<std::int64_t>& cell) const;
  Color at(const std::vector<std::int64_t>& cell) const { return colors[flat_index(cell)]; }
};

/// Top-down: paint every level over the previous one. Throws when the grid
/// exceeds 2^26 cells.
PaintedGrid paint(const ConstructionParams& p);
/// Per-cell: descend to the deepest parallelepiped containing the cell.
Color color_at(const ConstructionParams& p, const std::vector<std::int64_t>& cell);

struct Block {
  ConstructionParams params;
  Box pi;
  SpecialSet set;
};

Block realize_block(const ConstructionParams& p);
/// Same, with an arbitrary finest-grid colouring.
Block realize_painted(const ConstructionParams& p, const PaintedGrid& grid);

struct CountingLevel {
  unsigned level = 0;
  std::size_t pairs = 0;
  Rational min_ratio;  // min over adjacent black/white pairs of #black / #white
  bool holds = true;   // min_ratio >= (1+c)/2
};

/// Point counts of the block in the images of adjacent black/white cubes of
/// every level below nu0.
std::vector<CountingLevel> counting_ratios(const Block& b);

struct Stack {
  Box pi;
  SpecialSet set;
};

/// j translated copies of the block along the last axis.
Stack stack_blocks(const Block& b, std::size_t j);

struct EncodedFamilySpec {
  std::string bits;
  /// Number of gaps laid out (blocks 1..j_max+1); 0 means bits.size().
  std::size_t j_max = 0;
  std::size_t dim = 2;
};

struct FamilyOverrides {
  Integer multiplier = 100;
  std::optional<std::size_t> copies_cap;
  std::optional<unsigned> nu0_cap;

  static FamilyOverrides toy() { return FamilyOverrides{5, 2, 2}; }
  bool is_toy() const { return multiplier != 100 || copies_cap || nu0_cap; }
};

struct BlockPlacement {
  std::size_t j = 0;
  Rational c;
  unsigned nu0 = 0;
  Integer H;
  std::size_t copies = 0;
  std::size_t points = 0;
  std::size_t exceptional = 0;
  Box box;  // placed parallelepiped; its min corner is a point of the set
  Rational diam_sq;
};

struct FamilyPlacement {
  std::string bits;
  std::size_t j_max = 0;
  FamilyOverrides overrides;
  std::vector<BlockPlacement> blocks;  // blocks[j-1] is block j
  /// gaps[j-1]: axis-1 offset between the min corners of blocks j and j+1.
  std::vector<Integer> gaps;

  /// Multiplier applied to sqrt(diam^2 of block j+1) for the given bit.
  Integer gap_multiplier(std::size_t j, char bit) const;
};

struct FamilyWindow {
  DeloneWindow window;
  FamilyPlacement placement;
};

/// Parameters of block j: lambda = j, L = 2, c = 1 + 1/j.
ParamRequest family_block_request(std::size_t j, std::size_t dim, const FamilyOverrides& o);

FamilyWindow build_family_window(const EncodedFamilySpec& spec,
                                 const FamilyOverrides& overrides = FamilyOverrides{});

}  // namespace delone
