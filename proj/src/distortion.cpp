#include "delone/distortion.hpp"

#include "delone/error.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>

namespace delone {

// ------------------------------------------------------------- brute force

MinDistortion min_distortion_bruteforce(const std::vector<RationalVec>& A,
                                        const std::vector<RationalVec>& B, std::size_t n_cap) {
  const std::size_t n = A.size();
  if (B.size() != n) throw InvalidArgument("point lists differ in length");
  if (n > n_cap) {
    throw InvalidArgument("brute force limited to " + std::to_string(n_cap) + " points");
  }
  if (n < 2) throw InvalidArgument("need at least two points");
  // Validates distinctness and dimensions on both sides.
  (void)Bijection(A, B);

  // cost[((i*n + j)*n + p)*n + q] = rank of max(D'/D, D/D') for A_i->B_p, A_j->B_q.
  std::vector<Rational> values;
  std::vector<Rational> raw(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational da = squared_distance(A[i], A[j]);
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          if (p == q) continue;
          const Rational r = squared_distance(B[p], B[q]) / da;
          raw[((i * n + j) * n + p) * n + q] = std::max(r, 1 / r);
          values.push_back(raw[((i * n + j) * n + p) * n + q]);
        }
      }
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::uint32_t> cost(raw.size(), 0);
  for (std::size_t x = 0; x < raw.size(); ++x) {
    if (raw[x] == 0) continue;
    cost[x] = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), raw[x]) - values.begin());
  }
  auto c = [&](std::size_t i, std::size_t j, std::size_t p, std::size_t q) {
    return cost[((i * n + j) * n + p) * n + q];
  };

  std::vector<std::size_t> perm(n), best_perm;
  std::vector<bool> used(n, false);
  std::uint32_t best = UINT32_MAX;
  // Depth-first in lexicographic order; ties never replace, so the first optimum stays.
  auto dfs = [&](auto&& self, std::size_t depth, std::uint32_t partial) -> void {
    if (depth == n) {
      best = partial;
      best_perm = perm;
      return;
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (used[p]) continue;
      std::uint32_t m = partial;
      for (std::size_t i = 0; i < depth && m < best; ++i) m = std::max(m, c(i, depth, perm[i], p));
      if (m >= best) continue;
      used[p] = true;
      perm[depth] = p;
      self(self, depth + 1, m);
      used[p] = false;
    }
  };
  dfs(dfs, 0, 0);

  std::vector<RationalVec> target;
  for (std::size_t i = 0; i < n; ++i) target.push_back(B[best_perm[i]]);
  Bijection f(A, std::move(target));
  DistortionReport rep = distortion(f);
  return MinDistortion{std::move(f), std::move(rep), std::move(best_perm)};
}

// --------------------------------------------------------------- dichotomy

std::vector<RationalVec> GridSpec::points() const {
  if (d < 1 || M < 1 || N < 1) throw InvalidArgument("grid needs positive d, M, N");
  std::vector<RationalVec> out;
  std::vector<long> cur(d, 0);
  while (true) {
    RationalVec p(d);
    for (std::size_t a = 0; a < d; ++a) p[a] = cur[a];
    out.push_back(std::move(p));
    std::size_t a = d;
    bool done = true;
    while (a > 0) {
      --a;
      const long limit = a == 0 ? M * N : N - 1;
      if (cur[a] < limit) {
        ++cur[a];
        done = false;
        break;
      }
      cur[a] = 0;
    }
    if (done) return out;
  }
}

GridMap identity_map() {
  return [](const RationalVec& x) { return x; };
}

GridMap homothety_map(Rational factor) {
  return [factor](const RationalVec& x) { return x * factor; };
}

GridMap slab_shear_map(const GridSpec& g, long slab, RationalVec shift) {
  if (g.d < 2) throw InvalidArgument("shear needs dimension at least 2");
  const Rational lo(slab * g.N), hi((slab + 1) * g.N);
  return [lo, hi, shift](const RationalVec& x) {
    if (x[0] < lo || !(x[0] < hi)) return x;
    return x + shift * x[1];
  };
}

GridMap bijection_map(const Bijection& f) {
  auto table = std::make_shared<std::map<RationalVec, RationalVec>>();
  for (std::size_t i = 0; i < f.size(); ++i) table->emplace(f.source()[i], f.target()[i]);
  return [table](const RationalVec& x) {
    auto it = table->find(x);
    if (it == table->end()) throw InvalidArgument("map is not defined on every grid point");
    return it->second;
  };
}

DichotomyReport analyze_dichotomy(const GridSpec& g, const GridMap& f, const Rational& k,
                                  const Rational& epsilon, const Rational& a) {
  if (k <= 0) throw InvalidArgument("k must be positive");
  if (epsilon <= 0 || epsilon >= Rational(1, 4)) throw InvalidArgument("epsilon must lie in (0, 1/4)");
  const std::vector<RationalVec> pts = g.points();
  std::map<RationalVec, RationalVec> image;
  for (const auto& x : pts) image.emplace(x, f(x));

  const RationalVec W = image.at(g.v()) - image.at(g.u());
  const Rational w2 = squared_norm(W);
  if (w2 == 0) throw InvalidArgument("F(u) and F(v) coincide");
  const Rational M(g.M), M2 = M * M;
  const Rational one_k2 = (1 + k) * (1 + k);
  const Rational eps2w2 = epsilon * epsilon * w2;

  DichotomyReport rep;
  rep.required = a * pow(Rational(g.N), static_cast<unsigned>(g.d));
  rep.counts.assign(g.M > 1 ? static_cast<std::size_t>(g.M - 1) : 0, 0);
  const RationalVec step = RationalVec::unit(g.d, 0, Rational(g.N));
  const Rational last(g.M * g.N);
  for (const auto& x : pts) {
    const RationalVec y = x + step;
    if (last < y[0]) continue;
    const RationalVec delta = image.at(y) - image.at(x);
    const Rational lhs = squared_norm(delta) * M2;
    if (!rep.case1 && one_k2 * w2 < lhs) rep.case1 = Case1Witness{x, y, lhs / w2};
    const long i = floor(x[0] / g.N).convert_to<long>();
    if (i + 1 < g.M && squared_norm(delta * M - W) < eps2w2) ++rep.counts[static_cast<std::size_t>(i)];
  }
  if (rep.case1) {
    rep.verdict = DichotomyVerdict::Case1;
  } else {
    for (std::size_t i = 0; i < rep.counts.size(); ++i) {
      if (!(Rational(static_cast<long>(rep.counts[i])) < rep.required)) {
        rep.verdict = DichotomyVerdict::Case2;
        rep.case2_index = i;
        break;
      }
    }
  }
  return rep;
}

// -------------------------------------------------------------- separation

namespace {

void check_placement(const FamilyWindow& fw, const char* name) {
  const auto& meta = fw.placement;
  const auto& w = fw.window;
  const std::string who(name);
  if (meta.blocks.size() != meta.j_max + 1 || meta.gaps.size() != meta.j_max) {
    throw InvalidArgument(who + ": placement lists have inconsistent lengths");
  }
  if (w.fill() != Fill::IntegerLattice || w.blocks().size() != meta.blocks.size()) {
    throw InvalidArgument(who + ": window does not match the placement blocks");
  }
  for (std::size_t i = 0; i < meta.blocks.size(); ++i) {
    const Box& box = meta.blocks[i].box;
    if (!(w.blocks()[i] == box)) throw InvalidArgument(who + ": block box differs from the window");
    if (!w.contains(box.min_corner())) throw InvalidArgument(who + ": block corner is not a window point");
    if (i > 0) {
      const RationalVec diff = box.min_corner() - meta.blocks[i - 1].box.min_corner();
      if (!(diff == RationalVec::unit(w.dim(), 0, Rational(meta.gaps[i - 1])))) {
        throw InvalidArgument(who + ": recorded gap differs from the block corners");
      }
    }
  }
}

bool chain_holds(const Integer& mult, const Integer& gap, const Rational& diam_sq) {
  const Rational g2(gap * gap);
  const Integer upper = mult + 2;
  return Rational(mult * mult) * diam_sq < g2 && g2 < Rational(upper * upper) * diam_sq;
}

}  // namespace

SeparationReport separation_witness(const FamilyWindow& alpha, const FamilyWindow& beta, std::size_t j,
                                    const Rational& lambda) {
  check_placement(alpha, "alpha");
  check_placement(beta, "beta");
  const auto& ma = alpha.placement;
  const auto& mb = beta.placement;
  if (j < 1 || j > ma.j_max || j > mb.j_max) throw InvalidArgument("j outside the laid-out gaps");
  if (ma.overrides.multiplier != mb.overrides.multiplier || ma.blocks[j].diam_sq != mb.blocks[j].diam_sq) {
    throw InvalidArgument("families were built with different constants");
  }

  SeparationReport r;
  r.j = j;
  char bit_a = ma.bits[j - 1];
  char bit_b = mb.bits[j - 1];
  Integer gap_a = ma.gaps[j - 1];
  Integer gap_b = mb.gaps[j - 1];
  if (bit_a == '1' && bit_b == '0') {
    std::swap(bit_a, bit_b);
    std::swap(gap_a, gap_b);
  }
  r.bits_differ = bit_a != bit_b;
  r.gap_alpha = gap_a;
  r.gap_beta = gap_b;
  r.mult_alpha = ma.gap_multiplier(j, bit_a);
  r.mult_beta = ma.gap_multiplier(j, bit_b);
  r.diam_sq = ma.blocks[j].diam_sq;
  r.chain_alpha = chain_holds(r.mult_alpha, gap_a, r.diam_sq);
  r.chain_beta = chain_holds(r.mult_beta, gap_b, r.diam_sq);
  r.ratio = Rational(gap_b) / Rational(gap_a);
  r.chain_bound = Rational(r.mult_beta) / Rational(r.mult_alpha + 2);
  r.threshold = ma.overrides.is_toy() ? r.chain_bound : Rational(99 * static_cast<long>(j));
  r.ratio_exceeds_threshold = r.threshold < r.ratio;
  r.threshold_exceeds_lambda = lambda < r.threshold;
  if (r.bits_differ && r.chain_alpha && r.chain_beta && r.ratio_exceeds_threshold &&
      r.threshold_exceeds_lambda) {
    r.verdict = SeparationVerdict::Separated;
  }
  return r;
}

std::size_t exceptional_image_scan(const Bijection& f, const SpecialSet& s) {
  std::size_t n = 0;
  for (const auto& y : f.target()) {
    if (!s.contains(y)) throw InvalidArgument("target point missing from the special set");
    if (classify_point(s, y) == PointKind::Exceptional) ++n;
  }
  return n;
}

}  // namespace delone
