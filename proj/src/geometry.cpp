#include "delone/geometry.hpp"

#include "delone/error.hpp"
#include "point_grid.hpp"

#include <algorithm>
#include <bitset>
#include <string>

namespace delone {

// ---------------------------------------------------------------- RationalVec

RationalVec RationalVec::unit(std::size_t dim, std::size_t axis, const Rational& length) {
  RationalVec v(dim);
  v[axis] = length;
  return v;
}

void require_same_dim(const RationalVec& a, const RationalVec& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

RationalVec& RationalVec::operator+=(const RationalVec& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

RationalVec& RationalVec::operator-=(const RationalVec& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

RationalVec& RationalVec::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

std::strong_ordering operator<=>(const RationalVec& a, const RationalVec& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return std::strong_ordering::less;
    if (b[i] < a[i]) return std::strong_ordering::greater;
  }
  return a.dim() <=> b.dim();
}

Rational dot(const RationalVec& a, const RationalVec& b) {
  require_same_dim(a, b);
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Rational squared_norm(const RationalVec& a) { return dot(a, a); }

Rational squared_distance(const RationalVec& a, const RationalVec& b) {
  require_same_dim(a, b);
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Rational diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

// ------------------------------------------------------------------------ Box

Box::Box(RationalVec min_corner, std::vector<Rational> edge_lengths)
    : min_(std::move(min_corner)), edges_(std::move(edge_lengths)) {
  if (min_.dim() == 0) throw InvalidArgument("box dimension must be at least 1");
  if (edges_.size() != min_.dim()) throw DimensionMismatch("box corner and edge counts differ");
  for (const auto& e : edges_) {
    if (e < 0) throw InvalidArgument("box edge lengths must be non-negative");
  }
}

Box Box::cube(RationalVec min_corner, const Rational& edge) {
  const std::size_t d = min_corner.dim();
  return Box(std::move(min_corner), std::vector<Rational>(d, edge));
}

Box Box::from_corners(const RationalVec& lo, const RationalVec& hi) {
  require_same_dim(lo, hi);
  std::vector<Rational> edges(lo.dim());
  for (std::size_t i = 0; i < lo.dim(); ++i) edges[i] = hi[i] - lo[i];
  return Box(lo, std::move(edges));
}

RationalVec Box::max_corner() const {
  RationalVec m = min_;
  for (std::size_t i = 0; i < dim(); ++i) m[i] += edges_[i];
  return m;
}

bool Box::is_cube() const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const Rational& e) { return e == edges_[0]; });
}

bool Box::is_degenerate() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Rational& e) { return e == 0; });
}

Rational Box::volume() const {
  Rational v = 1;
  for (const auto& e : edges_) v *= e;
  return v;
}

bool Box::contains(const RationalVec& p) const {
  require_same_dim(min_, p);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (p[i] < min_[i] || !(p[i] < min_[i] + edges_[i])) return false;
  }
  return true;
}

bool Box::contains_closed(const RationalVec& p) const {
  require_same_dim(min_, p);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (p[i] < min_[i] || min_[i] + edges_[i] < p[i]) return false;
  }
  return true;
}

bool Box::contains(const Box& inner) const {
  require_same_dim(min_, inner.min_);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (inner.min_[i] < min_[i] || upper(i) < inner.upper(i)) return false;
  }
  return true;
}

bool Box::overlaps(const Box& other) const {
  require_same_dim(min_, other.min_);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(min_[i] < other.upper(i)) || !(other.min_[i] < upper(i))) return false;
  }
  return true;
}

std::optional<Box> Box::closed_intersection(const Box& other) const {
  require_same_dim(min_, other.min_);
  RationalVec lo(dim()), hi(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] = std::max(min_[i], other.min_[i]);
    hi[i] = std::min(upper(i), other.upper(i));
    if (hi[i] < lo[i]) return std::nullopt;
  }
  return from_corners(lo, hi);
}

Box Box::translated(const RationalVec& offset) const { return Box(min_ + offset, edges_); }

Box Box::scaled(const Rational& factor) const {
  if (factor <= 0) throw InvalidArgument("box scale factor must be positive");
  std::vector<Rational> edges = edges_;
  for (auto& e : edges) e *= factor;
  return Box(min_ * factor, std::move(edges));
}

Box Box::expanded(const Rational& margin) const {
  RationalVec lo = min_;
  std::vector<Rational> edges = edges_;
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] -= margin;
    edges[i] += 2 * margin;
  }
  return Box(std::move(lo), std::move(edges));
}

std::strong_ordering operator<=>(const Box& a, const Box& b) {
  if (auto c = a.min_ <=> b.min_; c != 0) return c;
  const std::size_t n = std::min(a.edges_.size(), b.edges_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.edges_[i] < b.edges_[i]) return std::strong_ordering::less;
    if (b.edges_[i] < a.edges_[i]) return std::strong_ordering::greater;
  }
  return a.edges_.size() <=> b.edges_.size();
}

// -------------------------------------------------------------- DeloneWindow

DeloneWindow::DeloneWindow(std::size_t dim, std::vector<RationalVec> points, Box window, Fill fill,
                           std::vector<Box> blocks)
    : dim_(dim), points_(std::move(points)), window_(std::move(window)), fill_(fill),
      blocks_(std::move(blocks)) {
  if (dim_ == 0) throw InvalidArgument("window dimension must be at least 1");
  if (window_.dim() != dim_) throw DimensionMismatch("window box dimension differs from window dim");
  if (window_.is_degenerate()) throw InvalidArgument("window box must have positive edges");
  for (const auto& b : blocks_) {
    if (b.dim() != dim_) throw DimensionMismatch("block dimension differs from window dim");
    if (!window_.contains(b)) throw InvalidArgument("block lies outside the window");
  }
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != dim_) throw DimensionMismatch("point dimension differs from window dim");
    if (i > 0 && points_[i] == points_[i - 1]) throw InvalidArgument("duplicate point in window");
    if (!in_explicit_region(points_[i])) {
      throw InvalidArgument("point lies outside the window's explicit regions");
    }
  }
}

std::span<const Box> DeloneWindow::explicit_regions() const {
  if (blocks_.empty()) return std::span<const Box>(&window_, 1);
  return blocks_;
}

bool DeloneWindow::in_explicit_region(const RationalVec& x) const {
  for (const auto& r : explicit_regions()) {
    if (r.contains(x)) return true;
  }
  return false;
}

bool DeloneWindow::contains(const RationalVec& x) const {
  if (x.dim() != dim_) throw DimensionMismatch("query point dimension differs from window dim");
  if (in_explicit_region(x)) return std::binary_search(points_.begin(), points_.end(), x);
  if (fill_ != Fill::IntegerLattice) return false;
  return std::all_of(x.begin(), x.end(), [](const Rational& c) { return is_integer(c); });
}

std::vector<RationalVec> DeloneWindow::fill_points_in(const Box& b) const {
  std::vector<RationalVec> out;
  if (fill_ != Fill::IntegerLattice) return out;
  std::vector<Integer> lo(dim_), hi(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    lo[i] = ceil(b.min_corner()[i]);
    hi[i] = floor(b.upper(i));
    if (hi[i] < lo[i]) return out;
  }
  std::vector<Integer> cur = lo;
  RationalVec p(dim_);
  while (true) {
    for (std::size_t i = 0; i < dim_; ++i) p[i] = Rational(cur[i]);
    if (!in_explicit_region(p)) out.push_back(p);
    std::size_t axis = dim_;
    while (axis > 0) {
      --axis;
      if (cur[axis] < hi[axis]) {
        ++cur[axis];
        break;
      }
      cur[axis] = lo[axis];
      if (axis == 0) return out;
    }
  }
}

std::vector<RationalVec> DeloneWindow::explicit_points_in(const Box& b) const {
  std::vector<RationalVec> out;
  // Points are sorted by first coordinate, so the slab [lo_0, hi_0] is contiguous.
  auto first = std::lower_bound(points_.begin(), points_.end(), b.min_corner()[0],
                                [](const RationalVec& p, const Rational& x) { return p[0] < x; });
  const Rational hi0 = b.upper(0);
  for (auto it = first; it != points_.end() && !(hi0 < (*it)[0]); ++it) {
    if (b.contains_closed(*it)) out.push_back(*it);
  }
  return out;
}

// ------------------------------------------------------------- closest pair

namespace {

struct ClosestPair {
  Rational distance_sq;
  std::size_t i = 0, j = 0;
};

std::optional<ClosestPair> closest_pair(std::span<const RationalVec> pts) {
  if (pts.size() < 2) return std::nullopt;
  Rational cell = detail::default_cell_size(pts);
  while (true) {
    detail::PointGrid grid(pts, cell);
    std::optional<ClosestPair> best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto key = grid.key_of(pts[i]);
      for (std::int64_t ring = 0; ring <= 1; ++ring) {
        grid.for_each_in_ring(key, ring, [&](std::size_t j) {
          if (j <= i) return;
          Rational d2 = squared_distance(pts[i], pts[j]);
          if (!best || d2 < best->distance_sq) best = ClosestPair{std::move(d2), i, j};
        });
      }
    }
    // Pairs in non-adjacent cells are farther apart than one cell edge.
    if (best && best->distance_sq <= cell * cell) return best;
    if (grid.max_span() <= 1 && best) return best;
    cell *= 2;
  }
}

// ---------------------------------------------------- Voronoi cell clipping

constexpr std::size_t kMaxConstraints = 512;
using TightSet = std::bitset<kMaxConstraints>;

struct CellVertex {
  RationalVec x;
  TightSet tight;
};

// Convex polytope kept as its vertex list together with, for every vertex, the
// set of tracked constraints tight there. Clipping uses the combinatorial
// adjacency test of the double description method: u and w span an edge iff
// no third vertex is tight on every constraint tight at both.
class CellPolytope {
 public:
  explicit CellPolytope(const Box& closed_box) : dim_(closed_box.dim()), next_id_(2 * dim_) {
    std::vector<std::size_t> free_axes;
    for (std::size_t a = 0; a < dim_; ++a) {
      if (closed_box.edge(a) != 0) free_axes.push_back(a);
    }
    const std::size_t corners = std::size_t{1} << free_axes.size();
    for (std::size_t mask = 0; mask < corners; ++mask) {
      CellVertex v{closed_box.min_corner(), {}};
      for (std::size_t a = 0; a < dim_; ++a) {
        if (closed_box.edge(a) == 0) {
          v.tight.set(2 * a);
          v.tight.set(2 * a + 1);
        }
      }
      for (std::size_t k = 0; k < free_axes.size(); ++k) {
        const std::size_t a = free_axes[k];
        if (mask & (std::size_t{1} << k)) {
          v.x[a] += closed_box.edge(a);
          v.tight.set(2 * a + 1);
        } else {
          v.tight.set(2 * a);
        }
      }
      verts_.push_back(std::move(v));
    }
  }

  bool empty() const noexcept { return verts_.empty(); }
  const std::vector<CellVertex>& vertices() const noexcept { return verts_; }

  // Keeps {x : normal . x <= offset}.
  void clip(const RationalVec& normal, const Rational& offset) {
    std::vector<Rational> slack(verts_.size());
    bool any_out = false, any_kept = false;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      slack[i] = dot(normal, verts_[i].x) - offset;
      if (slack[i] > 0) any_out = true;
      else any_kept = true;
    }
    if (!any_out) return;
    if (!any_kept) {
      verts_.clear();
      return;
    }
    if (next_id_ >= kMaxConstraints) throw InvalidArgument("Voronoi cell has too many facets");
    const std::size_t id = next_id_++;

    std::vector<CellVertex> next;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (slack[i] > 0) continue;
      CellVertex v = verts_[i];
      if (slack[i] == 0) v.tight.set(id);
      next.push_back(std::move(v));
    }
    for (std::size_t u = 0; u < verts_.size(); ++u) {
      if (!(slack[u] < 0)) continue;
      for (std::size_t w = 0; w < verts_.size(); ++w) {
        if (!(slack[w] > 0)) continue;
        const TightSet common = verts_[u].tight & verts_[w].tight;
        bool adjacent = true;
        for (std::size_t z = 0; z < verts_.size() && adjacent; ++z) {
          if (z == u || z == w) continue;
          if ((common & ~verts_[z].tight).none()) adjacent = false;
        }
        if (!adjacent) continue;
        const Rational t = slack[u] / (slack[u] - slack[w]);
        CellVertex v{verts_[u].x + (verts_[w].x - verts_[u].x) * t, common};
        v.tight.set(id);
        next.push_back(std::move(v));
      }
    }
    verts_ = std::move(next);
  }

 private:
  std::size_t dim_;
  std::size_t next_id_;
  std::vector<CellVertex> verts_;
};

}  // namespace

CoveringReport nearest_site_sup(std::span<const RationalVec> sites, const Box& closed_region) {
  if (sites.empty()) throw InvalidArgument("covering radius of an empty point set");
  for (const auto& s : sites) require_same_dim(s, closed_region.min_corner());

  const detail::PointGrid grid(sites, detail::default_cell_size(sites));
  const Rational& h = grid.cell();

  std::optional<CoveringReport> best;
  for (std::size_t si = 0; si < sites.size(); ++si) {
    const RationalVec& s = sites[si];
    const Rational s_norm = squared_norm(s);
    CellPolytope cell(closed_region);
    const auto key = grid.key_of(s);
    const std::int64_t last_ring = grid.max_useful_ring(key);
    for (std::int64_t ring = 0; ring <= last_ring && !cell.empty(); ++ring) {
      grid.for_each_in_ring(key, ring, [&](std::size_t ti) {
        if (ti == si || cell.empty()) return;
        const RationalVec& t = sites[ti];
        // |x-s|^2 <= |x-t|^2  <=>  2(t-s).x <= |t|^2 - |s|^2
        cell.clip((t - s) * Rational(2), squared_norm(t) - s_norm);
      });
      if (cell.empty()) break;
      Rational reach = 0;
      for (const auto& v : cell.vertices()) reach = std::max(reach, squared_distance(v.x, s));
      // Sites beyond this ring are more than ring*h away; their bisectors miss
      // the current cell once (ring*h)^2 >= 4 * reach.
      const Rational gap = h * ring;
      if (gap * gap >= 4 * reach) break;
    }
    for (const auto& v : cell.vertices()) {
      Rational d2 = squared_distance(v.x, s);
      if (!best || best->radius_sq < d2) best = CoveringReport{std::move(d2), v.x};
    }
  }
  if (!best) throw InvalidArgument("no Voronoi cell meets the region");
  return *best;
}

// --------------------------------------------------------- packing/covering

namespace {

// Integer margin that separates the region far from the explicit blocks, where
// the nearest set point is always a lattice fill point.
Rational fill_margin(std::size_t d) { return Rational(ceil_sqrt(Rational(d)) + 1); }

// Sup over a closed box of the squared distance to Z^d; separable per axis.
CoveringReport lattice_sup(const Box& b) {
  CoveringReport out{0, RationalVec(b.dim())};
  const Rational half(1, 2);
  auto dist_to_z = [](const Rational& x) {
    const Rational f = x - Rational(floor(x));
    return std::min(f, 1 - f);
  };
  for (std::size_t a = 0; a < b.dim(); ++a) {
    const Rational lo = b.min_corner()[a];
    const Rational hi = b.upper(a);
    Rational half_point = Rational(floor(lo - half)) + half;
    if (half_point < lo) half_point += 1;
    Rational arg;
    if (half_point <= hi) arg = half_point;
    else arg = dist_to_z(lo) >= dist_to_z(hi) ? lo : hi;
    const Rational dz = dist_to_z(arg);
    out.radius_sq += dz * dz;
    out.witness[a] = arg;
  }
  return out;
}

// True when the closed piece meets the interior of `cut`.
bool meets_interior(const Box& piece, const Box& cut) {
  for (std::size_t a = 0; a < piece.dim(); ++a) {
    const Rational lo = std::max(piece.min_corner()[a], cut.min_corner()[a]);
    const Rational hi = std::min(piece.upper(a), cut.upper(a));
    if (lo < hi) continue;
    const Rational& x = piece.min_corner()[a];
    if (piece.edge(a) == 0 && cut.min_corner()[a] < x && x < cut.upper(a)) continue;
    return false;
  }
  return true;
}

// Closed boxes covering `base` minus the interiors of `cuts`.
std::vector<Box> subtract_boxes(const Box& base, std::span<const Box> cuts) {
  std::vector<Box> pieces{base};
  for (const auto& cut : cuts) {
    std::vector<Box> next;
    for (const auto& piece : pieces) {
      if (!meets_interior(piece, cut)) {
        next.push_back(piece);
        continue;
      }
      RationalVec lo = piece.min_corner();
      RationalVec hi = piece.max_corner();
      for (std::size_t a = 0; a < piece.dim(); ++a) {
        if (lo[a] < cut.min_corner()[a]) {
          RationalVec h2 = hi;
          h2[a] = cut.min_corner()[a];
          next.push_back(Box::from_corners(lo, h2));
          lo[a] = cut.min_corner()[a];
        }
        if (cut.upper(a) < hi[a]) {
          RationalVec l2 = lo;
          l2[a] = cut.upper(a);
          next.push_back(Box::from_corners(l2, hi));
          hi[a] = cut.upper(a);
        }
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

CoveringReport covering_with_fill(const DeloneWindow& w, const Box& region) {
  const Rational margin = fill_margin(w.dim());
  std::vector<Box> expanded;
  for (const auto& e : w.explicit_regions()) expanded.push_back(e.expanded(margin));

  std::optional<CoveringReport> best;
  auto take = [&](CoveringReport r) {
    if (!best || best->radius_sq < r.radius_sq) best = std::move(r);
  };

  for (const auto& piece : subtract_boxes(region, expanded)) take(lattice_sup(piece));

  for (const auto& ex : expanded) {
    const auto near = ex.closed_intersection(region);
    if (!near) continue;
    Rational reach = 2;
    while (true) {
      const Box halo = near->expanded(reach);
      std::vector<RationalVec> sites = w.explicit_points_in(halo);
      auto fill = w.fill_points_in(halo);
      sites.insert(sites.end(), fill.begin(), fill.end());
      if (!sites.empty()) {
        CoveringReport r = nearest_site_sup(sites, *near);
        // Exact once every nearest site found lies strictly inside the halo.
        if (r.radius_sq < reach * reach) {
          take(std::move(r));
          break;
        }
      }
      reach *= 2;
    }
  }
  return *best;
}

}  // namespace

PackingReport packing_radius(const DeloneWindow& w) {
  if (w.fill() == Fill::None) {
    if (w.points().size() < 2) throw InvalidArgument("packing radius needs at least two points");
    const auto cp = closest_pair(w.points());
    return PackingReport{cp->distance_sq, cp->distance_sq / 4, w.points()[cp->i], w.points()[cp->j]};
  }
  // Lattice fill: fill-fill pairs are at distance 1; explicit points can only
  // come closer to fill points lying within distance 1 of their block.
  std::vector<RationalVec> local = w.points();
  for (const auto& e : w.explicit_regions()) {
    auto fill = w.fill_points_in(e.expanded(1));
    local.insert(local.end(), fill.begin(), fill.end());
  }
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());

  PackingReport out;
  out.min_distance_sq = 1;
  Rational far = 0;
  for (const auto& e : w.explicit_regions()) far = std::max(far, Rational(ceil(e.upper(0))));
  out.a = RationalVec(w.dim());
  out.a[0] = far + 1;
  out.b = out.a;
  out.b[0] += 1;
  if (auto cp = closest_pair(local); cp && cp->distance_sq < out.min_distance_sq) {
    out.min_distance_sq = cp->distance_sq;
    out.a = local[cp->i];
    out.b = local[cp->j];
  }
  out.radius_sq = out.min_distance_sq / 4;
  return out;
}

CoveringReport covering_radius(const DeloneWindow& w, const Box& region) {
  if (region.dim() != w.dim()) throw DimensionMismatch("region dimension differs from window dim");
  if (w.fill() == Fill::IntegerLattice) return covering_with_fill(w, region);
  if (!w.window().contains(region)) throw InvalidArgument("covering region must lie inside the window");
  if (w.points().empty()) throw InvalidArgument("covering radius of an empty point set");
  return nearest_site_sup(w.points(), region);
}

DeloneReport is_delone(const DeloneWindow& w, const Rational& r, const Rational& covering_bound_sq,
                       const Box& region) {
  if (!(r > 0) || !(r * r < covering_bound_sq)) throw InvalidArgument("is_delone requires 0 < r < R");
  DeloneReport report;
  const PackingReport pack = packing_radius(w);
  report.min_distance_sq = pack.min_distance_sq;
  report.separated = pack.min_distance_sq >= 4 * r * r;
  if (!report.separated) report.violating_pair = std::make_pair(pack.a, pack.b);

  const CoveringReport cover = covering_radius(w, region);
  report.covering_radius_sq = cover.radius_sq;
  report.covered = cover.radius_sq <= covering_bound_sq;
  if (!report.covered) report.uncovered_witness = cover.witness;

  report.holds = report.separated && report.covered;
  return report;
}

// ------------------------------------------------------------------ diameter

Rational diameter_squared(std::span<const RationalVec> points) {
  if (points.empty()) throw InvalidArgument("diameter of an empty set");
  const std::size_t n = points.size();
  const std::size_t d = points.front().dim();
  for (const auto& p : points) require_same_dim(p, points.front());

  Rational best = 0;
  if (n <= 256) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, squared_distance(points[i], points[j]));
    }
    return best;
  }

  // Bucket the points, bound every bucket pair by its bounding boxes, and scan
  // only pairs whose bound can still beat the current best.
  Rational cell = detail::default_cell_size(points);
  cell *= 16;
  const detail::PointGrid grid(points, cell);
  struct Bucket {
    std::vector<std::size_t> members;
    RationalVec lo, hi;
  };
  std::vector<Bucket> buckets;
  for (const auto& [key, members] : grid.buckets()) {
    Bucket b{members, points[members.front()], points[members.front()]};
    for (std::size_t idx : members) {
      for (std::size_t a = 0; a < d; ++a) {
        if (points[idx][a] < b.lo[a]) b.lo[a] = points[idx][a];
        if (b.hi[a] < points[idx][a]) b.hi[a] = points[idx][a];
      }
    }
    buckets.push_back(std::move(b));
  }
  std::sort(buckets.begin(), buckets.end(),
            [](const Bucket& x, const Bucket& y) { return x.lo < y.lo; });

  // Seed with the axis-extreme points.
  std::vector<std::size_t> extremes;
  for (std::size_t a = 0; a < d; ++a) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (points[i][a] < points[lo][a]) lo = i;
      if (points[hi][a] < points[i][a]) hi = i;
    }
    extremes.push_back(lo);
    extremes.push_back(hi);
  }
  for (std::size_t x : extremes) {
    for (std::size_t y : extremes) best = std::max(best, squared_distance(points[x], points[y]));
  }

  auto box_bound = [d](const RationalVec& alo, const RationalVec& ahi, const RationalVec& blo,
                       const RationalVec& bhi) {
    Rational s = 0;
    for (std::size_t a = 0; a < d; ++a) {
      const Rational span = std::max(ahi[a] - blo[a], bhi[a] - alo[a]);
      s += span * span;
    }
    return s;
  };

  struct PairBound {
    Rational bound;
    std::size_t a, b;
  };
  std::vector<PairBound> pairs;
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    for (std::size_t j = i; j < buckets.size(); ++j) {
      Rational ub = box_bound(buckets[i].lo, buckets[i].hi, buckets[j].lo, buckets[j].hi);
      if (ub > best) pairs.push_back(PairBound{std::move(ub), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const PairBound& x, const PairBound& y) { return y.bound < x.bound; });
  for (const auto& pb : pairs) {
    if (pb.bound <= best) break;
    const Bucket& A = buckets[pb.a];
    const Bucket& B = buckets[pb.b];
    for (std::size_t x : A.members) {
      if (box_bound(points[x], points[x], B.lo, B.hi) <= best) continue;
      for (std::size_t y : B.members) {
        Rational d2 = squared_distance(points[x], points[y]);
        if (best < d2) best = std::move(d2);
      }
    }
  }
  return best;
}

}  // namespace delone
