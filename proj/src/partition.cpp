#include "delone/partition.hpp"

#include "delone/error.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace delone {

VoxelPartition::VoxelPartition(std::vector<long> resolution, std::string labels)
    : resolution_(std::move(resolution)), labels_(std::move(labels)) {
  if (resolution_.empty()) throw InvalidArgument("partition needs dimension at least 1");
  std::size_t total = 1;
  for (long g : resolution_) {
    if (g < 1) throw InvalidArgument("resolution entries must be positive");
    total *= static_cast<std::size_t>(g);
  }
  if (labels_.size() != total) {
    throw InvalidArgument("label string has " + std::to_string(labels_.size()) + " cells, grid has " +
                          std::to_string(total));
  }
  if (labels_.find_first_not_of("PQ") != std::string::npos) {
    throw InvalidArgument("labels must be P or Q");
  }
  stride_.assign(resolution_.size(), 1);
  for (std::size_t a = resolution_.size() - 1; a > 0; --a) {
    stride_[a - 1] = stride_[a] * static_cast<std::size_t>(resolution_[a]);
  }
}

Label VoxelPartition::at(const std::vector<long>& cell) const {
  std::size_t i = 0;
  for (std::size_t a = 0; a < dim(); ++a) i += stride_[a] * static_cast<std::size_t>(cell[a]);
  return at_flat(i);
}

Rational VoxelPartition::cell_volume() const {
  Integer denom = 1;
  for (long g : resolution_) denom *= g;
  return Rational(Integer(1), denom);
}

Rational VoxelPartition::facet_area(std::size_t axis) const { return cell_volume() * resolution_[axis]; }

VoxelPartition VoxelPartition::refined() const {
  std::vector<long> res = resolution_;
  for (auto& g : res) g *= 2;
  std::size_t total = labels_.size() << dim();
  std::string out(total, 'P');
  std::vector<long> cell(dim(), 0), parent(dim());
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t a = 0; a < dim(); ++a) parent[a] = cell[a] / 2;
    out[i] = static_cast<char>(at(parent));
    for (std::size_t a = dim(); a > 0; --a) {
      if (++cell[a - 1] < res[a - 1]) break;
      cell[a - 1] = 0;
    }
  }
  return VoxelPartition(std::move(res), std::move(out));
}

VoxelPartition VoxelPartition::swapped() const {
  std::string out = labels_;
  for (auto& ch : out) ch = ch == 'P' ? 'Q' : 'P';
  return VoxelPartition(resolution_, std::move(out));
}

Rational volume(const VoxelPartition& vp, Label label) {
  const auto n = std::count(vp.labels().begin(), vp.labels().end(), static_cast<char>(label));
  return vp.cell_volume() * static_cast<long>(n);
}

Rational shared_boundary_area(const VoxelPartition& vp) {
  const std::size_t d = vp.dim();
  const auto& res = vp.resolution();
  std::vector<long> interfaces(d, 0);
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t a = d - 1; a > 0; --a) stride[a - 1] = stride[a] * static_cast<std::size_t>(res[a]);
  std::vector<long> cell(d, 0);
  for (std::size_t i = 0; i < vp.cell_count(); ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      if (cell[a] + 1 < res[a] && vp.at_flat(i) != vp.at_flat(i + stride[a])) ++interfaces[a];
    }
    for (std::size_t a = d; a > 0; --a) {
      if (++cell[a - 1] < res[a - 1]) break;
      cell[a - 1] = 0;
    }
  }
  Rational total = 0;
  for (std::size_t a = 0; a < d; ++a) total += vp.facet_area(a) * interfaces[a];
  return total;
}

Lemma5Report lemma5_check(const VoxelPartition& vp, const Rational& alpha) {
  if (alpha <= 0 || alpha >= Rational(1, 2)) throw InvalidArgument("alpha must lie in (0, 1/2)");
  Lemma5Report r;
  r.vol_p = volume(vp, Label::P);
  r.vol_q = volume(vp, Label::Q);
  r.rhs = alpha / pow(Rational(2), static_cast<unsigned>(vp.dim() - 1));
  r.lhs = shared_boundary_area(vp);
  if (r.vol_p < alpha || r.vol_q < alpha) {
    r.status = Lemma5Status::NotApplicable;
  } else {
    r.status = r.lhs < r.rhs ? Lemma5Status::Fails : Lemma5Status::Holds;
  }
  return r;
}

std::vector<SliceVolumes> projection_section_profile(const VoxelPartition& vp, std::size_t axis) {
  if (axis >= vp.dim()) throw InvalidArgument("axis out of range");
  std::vector<long> p(static_cast<std::size_t>(vp.resolution()[axis]), 0);
  std::vector<long> q(p.size(), 0);
  std::vector<long> cell(vp.dim(), 0);
  for (std::size_t i = 0; i < vp.cell_count(); ++i) {
    auto& bucket = vp.at_flat(i) == Label::P ? p : q;
    ++bucket[static_cast<std::size_t>(cell[axis])];
    for (std::size_t a = vp.dim(); a > 0; --a) {
      if (++cell[a - 1] < vp.resolution()[a - 1]) break;
      cell[a - 1] = 0;
    }
  }
  const Rational area = vp.facet_area(axis);
  std::vector<SliceVolumes> out;
  for (std::size_t s = 0; s < p.size(); ++s) out.push_back({area * p[s], area * q[s]});
  return out;
}

// ---------------------------------------------------------- cube unions

namespace {

// Facet of a cube in the plane x_axis = coordinate, as a (d-1)-box.
struct Facet {
  std::vector<Rational> lo, hi;
};

Rational facet_area(const Facet& f) {
  Rational a = 1;
  for (std::size_t i = 0; i < f.lo.size(); ++i) a *= f.hi[i] - f.lo[i];
  return a;
}

Rational overlap_area(const Facet& f, const Facet& g) {
  Rational a = 1;
  for (std::size_t i = 0; i < f.lo.size(); ++i) {
    const Rational lo = std::max(f.lo[i], g.lo[i]);
    const Rational hi = std::min(f.hi[i], g.hi[i]);
    if (!(lo < hi)) return 0;
    a *= hi - lo;
  }
  return a;
}

}  // namespace

Rational cube_union_surface(const std::vector<Box>& cubes) {
  if (cubes.empty()) return 0;
  const std::size_t d = cubes.front().dim();
  // (axis, plane) -> facets of cubes ending there (below) and starting there (above).
  std::map<std::pair<std::size_t, Rational>, std::pair<std::vector<Facet>, std::vector<Facet>>> planes;
  for (const auto& q : cubes) {
    if (q.dim() != d) throw DimensionMismatch("cubes differ in dimension");
    for (std::size_t k = 0; k < d; ++k) {
      Facet f;
      for (std::size_t m = 0; m < d; ++m) {
        if (m == k) continue;
        f.lo.push_back(q.min_corner()[m]);
        f.hi.push_back(q.upper(m));
      }
      planes[{k, q.upper(k)}].first.push_back(f);
      planes[{k, q.min_corner()[k]}].second.push_back(std::move(f));
    }
  }
  Rational total = 0;
  for (const auto& [key, sides] : planes) {
    const auto& [below, above] = sides;
    for (const auto& f : below) total += facet_area(f);
    for (const auto& f : above) total += facet_area(f);
    for (const auto& f : below) {
      for (const auto& g : above) total -= 2 * overlap_area(f, g);
    }
  }
  return total;
}

Rational alignment_scale_s_sq(const Rational& epsilon, long M, const Rational& dist_sq) {
  if (epsilon <= 0 || M < 1 || dist_sq <= 0) throw InvalidArgument("alignment scale needs positive inputs");
  return 16 * epsilon * epsilon * dist_sq / (Rational(M) * M);
}

long draw(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

VoxelPartition random_partition(std::mt19937_64& rng, std::size_t dim, long res_lo, long res_hi) {
  if (dim < 1 || res_lo < 1 || res_hi < res_lo) throw InvalidArgument("bad random partition ranges");
  std::vector<long> res(dim);
  std::size_t total = 1;
  for (auto& g : res) {
    g = draw(rng, res_lo, res_hi);
    total *= static_cast<std::size_t>(g);
  }
  std::string labels(total, 'P');
  if (draw(rng, 0, 3) == 0) {
    const std::size_t axis = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(dim) - 1));
    const long cut = draw(rng, 0, res[axis]);
    std::vector<long> cell(dim, 0);
    for (std::size_t i = 0; i < total; ++i) {
      labels[i] = cell[axis] < cut ? 'P' : 'Q';
      for (std::size_t a = dim; a > 0; --a) {
        if (++cell[a - 1] < res[a - 1]) break;
        cell[a - 1] = 0;
      }
    }
  } else {
    const long density = draw(rng, 1, 99);
    for (auto& ch : labels) ch = draw(rng, 1, 100) <= density ? 'P' : 'Q';
  }
  return VoxelPartition(std::move(res), std::move(labels));
}

}  // namespace delone
