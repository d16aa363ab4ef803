#include "delone/tiling.hpp"

#include "delone/error.hpp"
#include "point_grid.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace delone {

CubeTiling::CubeTiling(std::size_t dim, Box region, std::vector<Box> cubes, Rational max_edge)
    : dim_(dim), region_(std::move(region)), cubes_(std::move(cubes)), max_edge_(std::move(max_edge)) {
  if (region_.dim() != dim_) throw DimensionMismatch("tiling region dimension differs from dim");
  for (const auto& q : cubes_) {
    if (q.dim() != dim_) throw DimensionMismatch("cube dimension differs from tiling dim");
  }
  if (max_edge_ < 1) throw InvalidArgument("tiling edge bound L must be at least 1");
  std::sort(cubes_.begin(), cubes_.end());
}

namespace {

using detail::CellKey;
using detail::CellKeyHash;
using Buckets = std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash>;

// Calls f(key) for every unit lattice cell [k, k+1)^d meeting the interior of q.
template <class F>
void for_each_unit_cell(const Box& q, F&& f) {
  const std::size_t d = q.dim();
  CellKey lo(d), hi(d);
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] = floor(q.min_corner()[a]).convert_to<std::int64_t>();
    hi[a] = ceil(q.upper(a)).convert_to<std::int64_t>() - 1;
    if (hi[a] < lo[a]) return;
  }
  CellKey cur = lo;
  while (true) {
    f(cur);
    std::size_t a = 0;
    while (a < d && cur[a] == hi[a]) {
      cur[a] = lo[a];
      ++a;
    }
    if (a == d) return;
    ++cur[a];
  }
}

std::vector<Rational> breakpoints(const Box& region, const std::vector<Box>& cubes, std::size_t axis) {
  std::vector<Rational> out{region.min_corner()[axis], region.upper(axis)};
  for (const auto& q : cubes) {
    out.push_back(q.min_corner()[axis]);
    out.push_back(q.upper(axis));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](const Rational& x) {
    return x < region.min_corner()[axis] || region.upper(axis) < x;
  });
  return out;
}

}  // namespace

TilingCheck CubeTiling::check() const {
  TilingCheck out;
  for (std::size_t i = 0; i < cubes_.size(); ++i) {
    const Box& q = cubes_[i];
    if (!q.is_cube() || q.edge(0) < 1 || max_edge_ < q.edge(0) || !region_.contains(q)) {
      out.valid = false;
      out.bad_cube = i;
      return out;
    }
    out.covered_volume += q.volume();
  }
  Buckets buckets;
  for (std::size_t i = 0; i < cubes_.size(); ++i) {
    std::optional<std::size_t> hit;
    for_each_unit_cell(cubes_[i], [&](const CellKey& key) {
      auto& bucket = buckets[key];
      for (std::size_t j : bucket) {
        if (!hit && cubes_[j].overlaps(cubes_[i])) hit = j;
      }
      bucket.push_back(i);
    });
    if (hit) {
      out.valid = false;
      out.overlap = std::make_pair(*hit, i);
      return out;
    }
  }
  if (out.covered_volume == region_.volume()) return out;

  // Disjoint cubes inside the region with too little volume: some cell of the
  // breakpoint arrangement is uncovered, and its center is a witness.
  out.valid = false;
  std::vector<std::vector<Rational>> cuts(dim_);
  for (std::size_t a = 0; a < dim_; ++a) cuts[a] = breakpoints(region_, cubes_, a);
  std::vector<std::size_t> idx(dim_, 0);
  RationalVec center(dim_);
  while (true) {
    for (std::size_t a = 0; a < dim_; ++a) center[a] = (cuts[a][idx[a]] + cuts[a][idx[a] + 1]) / 2;
    if (!locate(center)) {
      out.gap_witness = center;
      return out;
    }
    std::size_t a = 0;
    while (a < dim_ && idx[a] + 2 == cuts[a].size()) {
      idx[a] = 0;
      ++a;
    }
    if (a == dim_) break;
    ++idx[a];
  }
  return out;
}

void CubeTiling::validate() const {
  const TilingCheck c = check();
  if (c.valid) return;
  if (c.bad_cube) {
    throw InvalidArgument("cube " + std::to_string(*c.bad_cube) +
                          " is not a cube with edge in [1, L] inside the region");
  }
  if (c.overlap) {
    throw InvalidArgument("cubes " + std::to_string(c.overlap->first) + " and " +
                          std::to_string(c.overlap->second) + " overlap");
  }
  std::string where;
  for (const auto& x : *c.gap_witness) where += (where.empty() ? "" : ", ") + to_string(x);
  throw InvalidArgument("tiling leaves a gap at (" + where + ")");
}

std::optional<std::size_t> CubeTiling::locate(const RationalVec& x) const {
  // A containing cube has min corner <= x lexicographically and min[0] > x[0] - L.
  auto it = std::upper_bound(cubes_.begin(), cubes_.end(), x,
                             [](const RationalVec& p, const Box& q) { return p < q.min_corner(); });
  const Rational floor0 = x[0] - max_edge_;
  while (it != cubes_.begin()) {
    --it;
    if (!(floor0 < it->min_corner()[0])) break;
    if (it->contains(x)) return static_cast<std::size_t>(it - cubes_.begin());
  }
  return std::nullopt;
}

RationalVec m_vertex(const Box& q) { return q.min_corner(); }

// ----------------------------------------------------------------- SpecialSet

SpecialSet build_special(CubeTiling t) {
  t.validate();
  std::vector<RationalVec> pts;
  pts.reserve(t.cubes().size());
  for (const auto& q : t.cubes()) pts.push_back(m_vertex(q));
  DeloneWindow w(t.dim(), std::move(pts), t.region());
  return SpecialSet(std::move(t), std::move(w));
}

std::size_t SpecialSet::index_of(const RationalVec& x) const {
  const auto& pts = window_.points();
  auto it = std::lower_bound(pts.begin(), pts.end(), x);
  if (it == pts.end() || !(*it == x)) throw InvalidArgument("point is not in the special set");
  return static_cast<std::size_t>(it - pts.begin());
}

bool SpecialSet::contains(const RationalVec& x) const {
  return std::binary_search(window_.points().begin(), window_.points().end(), x);
}

const Box& SpecialSet::anchor_of(const RationalVec& x) const { return tiling_.cubes()[index_of(x)]; }

std::size_t SpecialSet::exceptional_count() const {
  return static_cast<std::size_t>(std::count_if(tiling_.cubes().begin(), tiling_.cubes().end(),
                                                [](const Box& q) { return q.edge(0) != 1; }));
}

PointKind classify_point(const SpecialSet& s, const RationalVec& x) {
  return s.anchor_of(x).edge(0) == 1 ? PointKind::Standard : PointKind::Exceptional;
}

const Box& g_map(const SpecialSet& s, const RationalVec& x) { return s.anchor_of(x); }

CubeTiling unit_tiling(std::size_t dim, long side) {
  if (dim == 0 || side <= 0) throw InvalidArgument("unit tiling needs positive dim and side");
  std::vector<Box> cubes;
  std::vector<long> cur(dim, 0);
  while (true) {
    RationalVec p(dim);
    for (std::size_t a = 0; a < dim; ++a) p[a] = cur[a];
    cubes.push_back(Box::cube(std::move(p), 1));
    std::size_t a = 0;
    while (a < dim && cur[a] == side - 1) {
      cur[a] = 0;
      ++a;
    }
    if (a == dim) break;
    ++cur[a];
  }
  return CubeTiling(dim, Box::cube(RationalVec(dim), side), std::move(cubes), 1);
}

// ------------------------------------------------------------------ latticize

namespace {

Integer round_half_down(const Rational& x) { return ceil(x - Rational(1, 2)); }

}  // namespace

LatticeResult latticize(const DeloneWindow& w) {
  if (w.fill() != Fill::None) throw InvalidArgument("latticize works on explicit windows only");
  const std::size_t d = w.dim();
  Integer sigma = 1;
  if (w.points().size() >= 2) {
    const Rational min_sq = packing_radius(w).min_distance_sq;  // 4 r^2
    const Rational need = 4 * Rational(d);
    // Least sigma with sigma^2 * min_sq > 4d.
    sigma = floor_sqrt(need / min_sq);
    while (!(need < Rational(sigma * sigma) * min_sq)) ++sigma;
    if (sigma < 1) sigma = 1;
  }
  const Rational s(sigma);
  std::vector<RationalVec> src = w.points();
  std::vector<RationalVec> dst;
  dst.reserve(src.size());
  for (const auto& p : src) {
    RationalVec q(d);
    for (std::size_t a = 0; a < d; ++a) q[a] = Rational(round_half_down(p[a] * s));
    dst.push_back(std::move(q));
  }
  RationalVec lo(d), hi(d);
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] = Rational(floor(w.window().min_corner()[a] * s));
    hi[a] = Rational(ceil(w.window().upper(a) * s) + 1);
  }
  DeloneWindow lattice(d, dst, Box::from_corners(lo, hi));
  Bijection pairing(std::move(src), std::move(dst));
  std::optional<DistortionReport> rep;
  if (pairing.size() >= 2) rep = distortion(pairing);
  return LatticeResult{sigma, std::move(lattice), std::move(pairing), std::move(rep)};
}

}  // namespace delone
