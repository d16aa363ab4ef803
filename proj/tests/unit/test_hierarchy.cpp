#include <doctest.h>

#include "delone/error.hpp"
#include "delone/hierarchy.hpp"
#include "delone/io.hpp"
#include "oracles.hpp"

#include <map>

using namespace delone;

namespace {

ConstructionParams small_params(const Rational& c, long M_min = 2, long N_min = 1) {
  ParamRequest r;
  r.c = c;
  r.M_min = M_min;
  r.N_min = N_min;
  return derive_params(r);
}

// Odometer over [0, shape) with the last axis fastest.
template <class F>
void for_each_cell(const std::vector<std::int64_t>& shape, F f) {
  std::vector<std::int64_t> cell(shape.size(), 0);
  while (true) {
    f(cell);
    std::size_t a = shape.size();
    while (a > 0) {
      --a;
      if (++cell[a] < shape[a]) break;
      cell[a] = 0;
      if (a == 0) return;
    }
  }
}

}  // namespace

TEST_CASE("log ceiling and nu0") {
  CHECK(log_ceiling(1, 1) == 0);
  CHECK(log_ceiling(2, 1) == 2);
  CHECK(log_ceiling(3, 1) == 4);
  CHECK(log_ceiling(Rational(3, 2), Rational(1, 4)) == 4);
  CHECK(small_params(2).nu0 == 2);
  for (long lam = 1; lam <= 6; ++lam) {
    for (long kd = 1; kd <= 4; ++kd) {
      CHECK(log_ceiling(lam, Rational(1, kd)) <= log_ceiling(lam + 1, Rational(1, kd)));
      CHECK(log_ceiling(lam, Rational(1, kd + 1)) >= log_ceiling(lam, Rational(1, kd)));
    }
  }
}

TEST_CASE("derived parameters") {
  ConstructionParams p = small_params(2);
  CHECK(p.a == Rational(5, 6));
  CHECK(p.M == 2);
  CHECK(p.N == 1);
  CHECK(p.H % (p.fine_per_unit() * p.c_num()) == 0);

  ConstructionParams q = small_params(Rational(3, 2), 2, 2);
  CHECK(q.nu0 == 2);
  CHECK(q.N == 2);
  CHECK(q.M == 2);
  CHECK(q.H % 24 == 0);
  const Rational fine_edge = Rational(q.H) / Rational(q.fine_per_unit());
  CHECK(is_integer(fine_edge));
  CHECK(is_integer(fine_edge / q.c));

  CHECK_THROWS_AS(small_params(1), InvalidArgument);
  ParamRequest bad;
  bad.epsilon = Rational(1, 4);
  CHECK_THROWS_AS(derive_params(bad), InvalidArgument);
}

TEST_CASE("next level fraction for a single stripe column") {
  for (long M = 1; M <= 6; ++M) CHECK(next_level_fraction(2, M, 1) == Rational(1, M));
  // Columns of width 1/M at spacing 1/N cover a 1/N cube by N/M of its width.
  CHECK(next_level_fraction(2, 4, 2) == Rational(1, 2));
  CHECK(next_level_fraction(3, 4, 2) == Rational(1, 4));
}

TEST_CASE("level 0 alternates starting black and volumes are conserved") {
  ConstructionParams p = small_params(2);
  ColoredHierarchy h = build_colored_hierarchy(p);
  REQUIRE(h.levels.size() == p.nu0 + 1);
  const auto& l0 = h.levels[0];
  REQUIRE(l0.cubes.size() == static_cast<std::size_t>(p.M));
  for (std::size_t i = 0; i < l0.cubes.size(); ++i) {
    CHECK(l0.cubes[i].color == (i % 2 == 0 ? Color::Black : Color::White));
    CHECK(l0.cubes[i].cube.min_corner()[1] == Rational(static_cast<long>(i)));
  }
  for (const auto& level : h.levels) {
    Rational cubes = 0, boxes = 0;
    for (const auto& c : level.cubes) cubes += c.cube.volume();
    for (const auto& b : level.parallelepipeds) boxes += b.volume();
    CHECK(cubes == boxes);
    for (const auto& c : level.cubes) {
      bool inside = false;
      for (const auto& b : level.parallelepipeds) inside = inside || b.contains(c.cube);
      CHECK(inside);
    }
  }
}

TEST_CASE("top-down painting agrees with per-cell descent") {
  for (auto [c, M, N] : std::vector<std::tuple<Rational, long, long>>{
           {Rational(2), 2, 1}, {Rational(3, 2), 2, 2}, {Rational(2), 3, 1}, {Rational(5, 4), 4, 2}}) {
    ConstructionParams p = small_params(c, M, N);
    PaintedGrid g = paint(p);
    std::size_t cells = 0;
    for_each_cell(g.shape, [&](const std::vector<std::int64_t>& cell) {
      CHECK(g.at(cell) == color_at(p, cell));
      ++cells;
    });
    CHECK(cells == g.colors.size());
  }
}

TEST_CASE("each fine cell takes the colour of the deepest parallelepiped holding it") {
  ConstructionParams p = small_params(2, 2, 1);
  ColoredHierarchy h = build_colored_hierarchy(p);
  PaintedGrid g = paint(p);
  const Rational cell_edge = 1 / Rational(p.fine_per_unit());
  for_each_cell(g.shape, [&](const std::vector<std::int64_t>& cell) {
    RationalVec centre(p.dim);
    for (std::size_t a = 0; a < p.dim; ++a) centre[a] = (Rational(cell[a]) + Rational(1, 2)) * cell_edge;
    std::optional<Color> deepest;
    for (const auto& level : h.levels) {
      for (const auto& cc : level.cubes) {
        if (cc.cube.contains(centre)) deepest = cc.color;
      }
    }
    REQUIRE(deepest);
    CHECK(*deepest == g.at(cell));
  });
}

TEST_CASE("colour balance at level 0") {
  ConstructionParams p = small_params(2, 3, 1);
  PaintedGrid g = paint(p);
  std::size_t black = 0, white = 0;
  for (Color c : g.colors) (c == Color::Black ? black : white)++;
  const std::size_t stripe = g.colors.size() / static_cast<std::size_t>(p.M);
  CHECK((black > white ? black - white : white - black) <= stripe);
}

TEST_CASE("block tiling fidelity for c = 2") {
  ConstructionParams p = small_params(2);
  Block b = realize_block(p);
  TilingCheck chk = b.set.tiling().check();
  CHECK(chk.valid);
  CHECK(chk.covered_volume == b.pi.volume());
  std::size_t white_cubes = 0;
  for (const auto& q : b.set.tiling().cubes()) {
    const Rational e = q.edge(0);
    CHECK((e == 1 || e == 2));
    if (e == 2) ++white_cubes;
  }
  CHECK(b.set.exceptional_count() == white_cubes);

  // Count points from the painted grid directly.
  PaintedGrid g = paint(p);
  const Integer E = p.H / p.fine_per_unit();
  const long e = E.convert_to<long>();
  std::size_t expect = 0, expect_white = 0;
  for (Color c : g.colors) {
    if (c == Color::Black) {
      expect += static_cast<std::size_t>(e * e);
    } else {
      expect += static_cast<std::size_t>((e / 2) * (e / 2));
      expect_white += static_cast<std::size_t>((e / 2) * (e / 2));
    }
  }
  CHECK(b.set.size() == expect);
  CHECK(b.set.exceptional_count() == expect_white);
  for (const auto& x : b.set.points().points()) CHECK(m_vertex(g_map(b.set, x)) == x);
}

TEST_CASE("all-black colouring gives the unit tiling") {
  ConstructionParams p = small_params(2);
  PaintedGrid g = paint(p);
  std::fill(g.colors.begin(), g.colors.end(), Color::Black);
  Block b = realize_painted(p, g);
  CHECK(b.set.exceptional_count() == 0);
  CHECK(Rational(static_cast<long>(b.set.size())) == b.pi.volume());
}

TEST_CASE("counting inequality on every sibling pair") {
  for (Rational c : {Rational(2), Rational(3, 2)}) {
    ConstructionParams p = small_params(c);
    Block b = realize_block(p);
    auto levels = counting_ratios(b);
    CHECK(levels.size() == p.nu0);
    for (const auto& lv : levels) {
      CHECK(lv.holds);
      CHECK(lv.min_ratio >= (1 + c) / 2);
    }
  }

  // Independent recount at level 0: scan every point.
  ConstructionParams p = small_params(2);
  Block b = realize_block(p);
  const long H = p.H.convert_to<long>();
  std::map<long, long> per_cube;
  for (const auto& x : b.set.points().points()) per_cube[floor(x[1] / H).convert_to<long>()]++;
  REQUIRE(per_cube.size() == static_cast<std::size_t>(p.M));
  const Rational ratio(per_cube[0], per_cube[1]);
  CHECK(ratio >= Rational(3, 2));
  CHECK(counting_ratios(b)[0].min_ratio == ratio);
}

TEST_CASE("stacking scales counts by j") {
  ConstructionParams p = small_params(2);
  Block b = realize_block(p);
  Stack one = stack_blocks(b, 1);
  CHECK(one.set.points().points() == b.set.points().points());
  CHECK(one.pi == b.pi);
  for (std::size_t j = 1; j <= 3; ++j) {
    Stack s = stack_blocks(b, j);
    CHECK(s.set.size() == j * b.set.size());
    CHECK(s.set.exceptional_count() == j * b.set.exceptional_count());
    CHECK(s.pi.edge(1) == b.pi.edge(1) * static_cast<long>(j));
    CHECK(s.set.tiling().check().valid);
  }
  CHECK_THROWS_AS(stack_blocks(b, 0), InvalidArgument);
}

TEST_CASE("toy family placement") {
  FamilyWindow fw = build_family_window({"01", 0, 2}, FamilyOverrides::toy());
  const auto& pl = fw.placement;
  REQUIRE(pl.blocks.size() == 3);
  REQUIRE(pl.gaps.size() == 2);
  for (std::size_t j = 1; j <= 2; ++j) {
    const Integer mult = pl.gap_multiplier(j, pl.bits[j - 1]);
    const Rational D = pl.blocks[j].diam_sq;
    const Integer gap = pl.gaps[j - 1];
    CHECK(Rational(gap * gap) >= Rational(mult * mult) * D);
    CHECK(Rational((gap - 1) * (gap - 1)) < Rational(mult * mult) * D);
    CHECK(pl.blocks[j].box.min_corner()[0] - pl.blocks[j - 1].box.min_corner()[0] == Rational(gap));
  }
  CHECK(pl.gap_multiplier(1, '0') == 5);
  CHECK(pl.gap_multiplier(1, '1') == 25);
  CHECK(pl.gap_multiplier(2, '1') == 100);

  // Stored diameters against brute force over the placed points of each block.
  const auto& pts = fw.window.points();
  const BlockPlacement& first = pl.blocks[0];
  std::vector<RationalVec> in_first;
  for (const auto& x : pts) {
    if (first.box.contains(x)) in_first.push_back(x);
  }
  CHECK(in_first.size() == first.points);
  CHECK(oracle::max_pair(in_first) == first.diam_sq);

  std::size_t total = 0;
  for (const auto& bp : pl.blocks) total += bp.points;
  CHECK(pts.size() == total);
}

TEST_CASE("copies follow the running point count") {
  FamilyOverrides o = FamilyOverrides::toy();
  o.copies_cap.reset();
  o.nu0_cap = 1;
  FamilyWindow fw = build_family_window({"0", 0, 2}, o);
  const auto& pl = fw.placement;
  REQUIRE(pl.blocks.size() == 2);
  CHECK(pl.blocks[0].copies == 1);
  CHECK(pl.blocks[1].copies == pl.blocks[0].points + 1);
}

TEST_CASE("family serialization is deterministic") {
  const std::string a = io::dump(io::family_to_json(build_family_window({"10", 0, 2}, FamilyOverrides::toy())));
  const std::string b = io::dump(io::family_to_json(build_family_window({"10", 0, 2}, FamilyOverrides::toy())));
  CHECK(a == b);
}

TEST_CASE("family input validation") {
  CHECK_THROWS_AS(build_family_window({"", 0, 2}, FamilyOverrides::toy()), InvalidArgument);
  CHECK_THROWS_AS(build_family_window({"012", 0, 2}, FamilyOverrides::toy()), InvalidArgument);
  CHECK_THROWS_AS(build_family_window({"01", 3, 2}, FamilyOverrides::toy()), InvalidArgument);
}
