#include "delone/hierarchy.hpp"

#include "delone/error.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace delone {

namespace {

constexpr std::int64_t kMaxPaintedCells = std::int64_t{1} << 26;

std::int64_t ipow(std::int64_t base, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (std::int64_t{1} << 40) / std::max<std::int64_t>(base, 1)) {
      throw InvalidArgument("hierarchy grid too fine to index");
    }
    r *= base;
  }
  return r;
}

// Steps an odometer over [0, shape) with the last axis fastest. Returns false
// after the final cell.
bool advance(std::vector<std::int64_t>& cur, const std::vector<std::int64_t>& shape) {
  std::size_t a = cur.size();
  while (a > 0) {
    --a;
    if (++cur[a] < shape[a]) return true;
    cur[a] = 0;
  }
  return false;
}

std::size_t count_in(const std::vector<RationalVec>& sorted, const Box& b) {
  auto first = std::lower_bound(sorted.begin(), sorted.end(), b.min_corner()[0],
                                [](const RationalVec& p, const Rational& x) { return p[0] < x; });
  const Rational hi0 = b.upper(0);
  std::size_t n = 0;
  for (auto it = first; it != sorted.end() && (*it)[0] < hi0; ++it) {
    if (b.contains(*it)) ++n;
  }
  return n;
}

}  // namespace

Integer ConstructionParams::fine_per_unit() const { return Integer(N) * pow(Rational(M), nu0).convert_to<Integer>(); }

unsigned log_ceiling(const Rational& lambda, const Rational& k) {
  if (lambda < 1) throw InvalidArgument("lambda must be at least 1");
  if (k <= 0) throw InvalidArgument("k must be positive");
  const Rational target = lambda * lambda;
  const Rational base = 1 + k;
  unsigned nu = 0;
  for (Rational acc = 1; acc < target; acc *= base) ++nu;
  return nu;
}

Rational next_level_fraction(std::size_t dim, long M, long N) {
  if (M < 1 || N < 1) throw InvalidArgument("M and N must be positive");
  const Rational qe(1, N);
  Rational worst = 0;
  std::vector<std::int64_t> shape(dim, N), idx(dim, 0);
  do {
    RationalVec qmin(dim);
    for (std::size_t a = 0; a < dim; ++a) qmin[a] = qe * idx[a];
    const Box q = Box::cube(qmin, qe);
    Rational covered = 0;
    std::vector<std::int64_t> jshape(dim - 1, N), j(dim - 1, 0);
    do {
      RationalVec smin(dim);
      std::vector<Rational> edges(dim, Rational(1, M));
      for (std::size_t a = 0; a + 1 < dim; ++a) smin[a] = Rational(j[a], N);
      edges[dim - 1] = M;
      if (auto in = q.closed_intersection(Box(smin, edges))) covered += in->volume();
    } while (advance(j, jshape));
    worst = std::max(worst, covered / q.volume());
  } while (advance(idx, shape));
  return worst;
}

ConstructionParams derive_params(const ParamRequest& req) {
  if (req.dim < 2) throw InvalidArgument("dimension must be at least 2");
  if (req.lambda < 1) throw InvalidArgument("lambda must be at least 1");
  if (req.L < 1) throw InvalidArgument("L must be at least 1");
  if (req.c <= 1) throw InvalidArgument("c must exceed 1");
  if (req.epsilon <= 0 || req.epsilon >= Rational(1, 4)) throw InvalidArgument("epsilon must lie in (0, 1/4)");
  if (req.M_min < 1 || req.N_min < 1) throw InvalidArgument("M_min and N_min must be positive");
  if (req.H_min < 1) throw InvalidArgument("H_min must be positive");

  ConstructionParams p;
  p.dim = req.dim;
  p.lambda = req.lambda;
  p.L = req.L;
  p.c = req.c;
  p.epsilon = req.epsilon;
  p.k = req.k;
  p.a = (3 + req.c) / (2 + 2 * req.c);
  p.nu0 = log_ceiling(req.lambda, req.k) + 2;
  if (req.nu0_cap) p.nu0 = std::min(p.nu0, *req.nu0_cap);
  p.N = req.N_min;

  const Rational bound = 1 / (req.c - 1);
  long M = std::max(req.M_min, req.N_min);
  M = (M + p.N - 1) / p.N * p.N;
  while (M <= req.M_cap && bound < next_level_fraction(req.dim, M, p.N)) M += p.N;
  if (M > req.M_cap) {
    throw InvalidArgument("no M up to the search cap " + std::to_string(req.M_cap) +
                          " satisfies the volume-fraction condition");
  }
  p.M = M;

  const Integer unit = p.fine_per_unit() * p.c_num();
  Integer H = (req.H_min + unit - 1) / unit * unit;
  p.H = std::max(H, unit);
  return p;
}

// ------------------------------------------------------------------ colouring

ColoredHierarchy build_colored_hierarchy(const ConstructionParams& p) {
  const std::size_t d = p.dim;
  ColoredHierarchy h;
  std::vector<Box> current;
  {
    std::vector<Rational> edges(d, Rational(1));
    edges[d - 1] = p.M;
    current.push_back(Box(RationalVec(d), edges));
  }
  for (unsigned nu = 0; nu <= p.nu0; ++nu) {
    HierarchyLevel level;
    level.nu = nu;
    if (nu > 0) {
      const Rational step = 1 / (Rational(p.N) * pow(Rational(p.M), nu - 1));
      const Rational width = 1 / pow(Rational(p.M), nu);
      std::vector<Rational> edges(d, width);
      edges[d - 1] = p.M;
      std::vector<Box> next;
      std::vector<std::int64_t> jshape(d - 1, p.N);
      for (const auto& parent : current) {
        std::vector<std::int64_t> j(d - 1, 0);
        do {
          RationalVec lo = parent.min_corner();
          for (std::size_t a = 0; a + 1 < d; ++a) lo[a] += step * j[a];
          next.push_back(Box(lo, edges));
        } while (advance(j, jshape));
      }
      current = std::move(next);
    }
    const Rational e = 1 / pow(Rational(p.M), nu);
    const std::int64_t per = ipow(p.M, nu + 1);
    for (const auto& par : current) {
      for (std::int64_t i = 0; i < per; ++i) {
        RationalVec lo = par.min_corner();
        lo[d - 1] += e * i;
        level.cubes.push_back({Box::cube(lo, e), i % 2 == 0 ? Color::Black : Color::White});
      }
    }
    level.parallelepipeds = current;
    h.levels.push_back(std::move(level));
  }
  return h;
}

std::size_t PaintedGrid::flat_index(const std::vector<std::int64_t>& cell) const {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (cell[a] < 0 || cell[a] >= shape[a]) throw InvalidArgument("cell outside the painted grid");
    idx = idx * static_cast<std::size_t>(shape[a]) + static_cast<std::size_t>(cell[a]);
  }
  return idx;
}

PaintedGrid paint(const ConstructionParams& p) {
  const std::size_t d = p.dim;
  const std::int64_t T = p.N * ipow(p.M, p.nu0);
  PaintedGrid g;
  g.shape.assign(d, T);
  g.shape[d - 1] = p.M * T;
  std::int64_t total = 1;
  for (auto s : g.shape) {
    if (total > kMaxPaintedCells / s) throw InvalidArgument("painted grid exceeds 2^26 cells");
    total *= s;
  }
  g.colors.assign(static_cast<std::size_t>(total), Color::Black);

  // A level-nu parallelepiped spans `width` fine cells transversally; so does its cube edge.
  std::function<void(unsigned, const std::vector<std::int64_t>&)> level =
      [&](unsigned nu, const std::vector<std::int64_t>& start) {
        const std::int64_t width = p.N * ipow(p.M, p.nu0 - nu);
        const std::int64_t cube = nu == 0 ? T : width;
        std::vector<std::int64_t> span(d, width), off(d, 0), cell(d);
        if (nu == 0) span.assign(d, T);
        span[d - 1] = g.shape[d - 1];
        do {
          for (std::size_t a = 0; a < d; ++a) cell[a] = start[a] + off[a];
          g.colors[g.flat_index(cell)] = (off[d - 1] / cube) % 2 == 0 ? Color::Black : Color::White;
        } while (advance(off, span));
        if (nu == p.nu0) return;
        const std::int64_t step = ipow(p.M, p.nu0 - nu);
        std::vector<std::int64_t> jshape(d - 1, p.N), j(d - 1, 0);
        do {
          std::vector<std::int64_t> child = start;
          for (std::size_t a = 0; a + 1 < d; ++a) child[a] += j[a] * step;
          level(nu + 1, child);
        } while (advance(j, jshape));
      };
  level(0, std::vector<std::int64_t>(d, 0));
  return g;
}

Color color_at(const ConstructionParams& p, const std::vector<std::int64_t>& cell) {
  const std::size_t d = p.dim;
  if (cell.size() != d) throw DimensionMismatch("cell index dimension differs from params");
  std::vector<std::int64_t> start(d - 1, 0);
  unsigned nu = 0;
  while (nu < p.nu0) {
    const std::int64_t step = ipow(p.M, p.nu0 - nu);
    const std::int64_t width = p.N * ipow(p.M, p.nu0 - nu - 1);
    bool inside = true;
    std::vector<std::int64_t> next = start;
    for (std::size_t a = 0; a + 1 < d && inside; ++a) {
      const std::int64_t r = cell[a] - start[a];
      const std::int64_t j = r / step;
      inside = r >= 0 && j < p.N && r - j * step < width;
      next[a] = start[a] + j * step;
    }
    if (!inside) break;
    start = std::move(next);
    ++nu;
  }
  const std::int64_t cube = p.N * ipow(p.M, p.nu0 - nu);
  return (cell[d - 1] / cube) % 2 == 0 ? Color::Black : Color::White;
}

// -------------------------------------------------------------------- blocks

Block realize_painted(const ConstructionParams& p, const PaintedGrid& grid) {
  const std::size_t d = p.dim;
  const Integer fine = p.fine_per_unit();
  if (p.H % fine != 0) throw InvalidArgument("H is not divisible by N*M^nu0");
  const Integer E = p.H / fine;
  const Rational white_count_r = Rational(E) / p.c;
  if (!is_integer(white_count_r)) throw InvalidArgument("coloured cube images are not divisible into edge-c cubes");
  const std::int64_t n_black = E.convert_to<std::int64_t>();
  const std::int64_t n_white = numerator_of(white_count_r).convert_to<std::int64_t>();
  if (grid.shape.size() != d) throw DimensionMismatch("painted grid dimension differs from params");

  std::vector<Box> cubes;
  std::vector<std::int64_t> cell(d, 0);
  do {
    RationalVec base(d);
    for (std::size_t a = 0; a < d; ++a) base[a] = Rational(E * cell[a]);
    const bool black = grid.at(cell) == Color::Black;
    const std::int64_t n = black ? n_black : n_white;
    const Rational edge = black ? Rational(1) : p.c;
    std::vector<std::int64_t> sub_shape(d, n), sub(d, 0);
    do {
      RationalVec lo = base;
      for (std::size_t a = 0; a < d; ++a) lo[a] += edge * sub[a];
      cubes.push_back(Box::cube(std::move(lo), edge));
    } while (advance(sub, sub_shape));
  } while (advance(cell, grid.shape));

  std::vector<Rational> edges(d, Rational(p.H));
  edges[d - 1] = Rational(p.H * p.M);
  Box pi(RationalVec(d), edges);
  CubeTiling t(d, pi, std::move(cubes), std::max(p.L, p.c));
  return Block{p, pi, build_special(std::move(t))};
}

Block realize_block(const ConstructionParams& p) { return realize_painted(p, paint(p)); }

std::vector<CountingLevel> counting_ratios(const Block& b) {
  const ConstructionParams& p = b.params;
  const ColoredHierarchy h = build_colored_hierarchy(p);
  const auto& pts = b.set.points().points();
  const Rational H(p.H);
  const Rational target = (1 + p.c) / 2;
  std::vector<CountingLevel> out;
  for (unsigned l = 0; l < p.nu0; ++l) {
    const auto& cubes = h.levels[l].cubes;
    const std::size_t per = static_cast<std::size_t>(ipow(p.M, l + 1));
    CountingLevel lv;
    lv.level = l;
    bool first = true;
    for (std::size_t base = 0; base < cubes.size(); base += per) {
      for (std::size_t i = base; i + 1 < base + per; ++i) {
        const ColoredCube& x = cubes[i];
        const ColoredCube& y = cubes[i + 1];
        const ColoredCube& black = x.color == Color::Black ? x : y;
        const ColoredCube& white = x.color == Color::Black ? y : x;
        const std::size_t nb = count_in(pts, black.cube.scaled(H));
        const std::size_t nw = count_in(pts, white.cube.scaled(H));
        if (nw == 0) throw InvalidArgument("white cube image holds no points");
        const Rational ratio(static_cast<long>(nb), static_cast<long>(nw));
        if (first || ratio < lv.min_ratio) lv.min_ratio = ratio;
        first = false;
        ++lv.pairs;
      }
    }
    lv.holds = !(lv.min_ratio < target);
    out.push_back(lv);
  }
  return out;
}

Stack stack_blocks(const Block& b, std::size_t j) {
  if (j == 0) throw InvalidArgument("stack height must be at least 1");
  const std::size_t d = b.pi.dim();
  const Rational height = b.pi.edge(d - 1);
  std::vector<Box> cubes;
  cubes.reserve(b.set.size() * j);
  for (std::size_t s = 0; s < j; ++s) {
    const RationalVec shift = RationalVec::unit(d, d - 1, height * static_cast<long>(s));
    for (const auto& q : b.set.tiling().cubes()) cubes.push_back(q.translated(shift));
  }
  std::vector<Rational> edges = b.pi.edge_lengths();
  edges[d - 1] *= static_cast<long>(j);
  Box pi(RationalVec(d), edges);
  CubeTiling t(d, pi, std::move(cubes), b.set.tiling().max_edge());
  return Stack{pi, build_special(std::move(t))};
}

// -------------------------------------------------------------------- family

Integer FamilyPlacement::gap_multiplier(std::size_t j, char bit) const {
  const Integer base = overrides.multiplier * static_cast<long>(j);
  return bit == '0' ? base : base * base;
}

ParamRequest family_block_request(std::size_t j, std::size_t dim, const FamilyOverrides& o) {
  ParamRequest r;
  r.dim = dim;
  r.lambda = static_cast<long>(j);
  r.L = 2;
  r.c = 1 + Rational(1, static_cast<long>(j));
  r.nu0_cap = o.nu0_cap;
  return r;
}

FamilyWindow build_family_window(const EncodedFamilySpec& spec, const FamilyOverrides& overrides) {
  if (spec.bits.empty()) throw InvalidArgument("bit string must be nonempty");
  if (spec.bits.find_first_not_of("01") != std::string::npos) {
    throw InvalidArgument("bit string may contain only 0 and 1");
  }
  if (overrides.multiplier < 1) throw InvalidArgument("gap multiplier must be positive");
  const std::size_t J = spec.j_max == 0 ? spec.bits.size() : spec.j_max;
  if (J > spec.bits.size()) throw InvalidArgument("j_max exceeds the number of bits");
  const std::size_t d = spec.dim;

  FamilyPlacement meta;
  meta.bits = spec.bits;
  meta.j_max = J;
  meta.overrides = overrides;

  std::vector<Stack> stacks;
  std::size_t running = 0;
  for (std::size_t j = 1; j <= J + 1; ++j) {
    const ConstructionParams p = derive_params(family_block_request(j, d, overrides));
    const Block block = realize_block(p);
    std::size_t copies = running + 1;
    if (overrides.copies_cap) copies = std::min(copies, *overrides.copies_cap);
    Stack st = stack_blocks(block, copies);

    BlockPlacement bp;
    bp.j = j;
    bp.c = p.c;
    bp.nu0 = p.nu0;
    bp.H = p.H;
    bp.copies = copies;
    bp.points = st.set.size();
    bp.exceptional = st.set.exceptional_count();
    // |p - q + s t|^2 is convex in the copy offset s, so the diameter is
    // attained between the first and the last copy.
    std::vector<RationalVec> ends = block.set.points().points();
    if (copies > 1) {
      const RationalVec shift =
          RationalVec::unit(d, d - 1, block.pi.edge(d - 1) * static_cast<long>(copies - 1));
      for (const auto& x : block.set.points().points()) ends.push_back(x + shift);
    }
    bp.diam_sq = diameter_squared(ends);
    running += bp.points;
    meta.blocks.push_back(std::move(bp));
    stacks.push_back(std::move(st));
  }

  for (std::size_t j = 1; j + 1 < meta.blocks.size(); ++j) {
    const Integer m1 = overrides.multiplier * static_cast<long>(j);
    const Integer m2 = overrides.multiplier * static_cast<long>(j + 1);
    if (!(Rational(m1 * m1) * meta.blocks[j].diam_sq < Rational(m2 * m2) * meta.blocks[j + 1].diam_sq)) {
      throw InvalidArgument("r_j is not strictly increasing at j = " + std::to_string(j));
    }
  }

  RationalVec corner(d);
  std::vector<RationalVec> pts;
  std::vector<Box> boxes;
  for (std::size_t j = 1; j <= J + 1; ++j) {
    BlockPlacement& bp = meta.blocks[j - 1];
    if (j > 1) {
      const BlockPlacement& prev = meta.blocks[j - 2];
      const Integer mult = meta.gap_multiplier(j - 1, spec.bits[j - 2]);
      const Integer gap = ceil_sqrt(Rational(mult * mult) * bp.diam_sq);
      if (Rational(gap) < prev.box.edge(0)) throw InvalidArgument("consecutive blocks overlap");
      meta.gaps.push_back(gap);
      corner[0] += Rational(gap);
    }
    bp.box = stacks[j - 1].pi.translated(corner);
    boxes.push_back(bp.box);
    for (const auto& x : stacks[j - 1].set.points().points()) pts.push_back(x + corner);
  }

  RationalVec lo(d), hi(d);
  for (const auto& b : boxes) {
    for (std::size_t a = 0; a < d; ++a) hi[a] = std::max(hi[a], b.upper(a));
  }
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] -= 2;
    hi[a] += 2;
  }
  DeloneWindow w(d, std::move(pts), Box::from_corners(lo, hi), Fill::IntegerLattice, std::move(boxes));
  return FamilyWindow{std::move(w), std::move(meta)};
}

}  // namespace delone
