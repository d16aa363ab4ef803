#include <doctest.h>

#include "delone/distortion.hpp"
#include "delone/error.hpp"
#include "delone/hierarchy.hpp"
#include "oracles.hpp"

#include <numeric>
#include <random>

using namespace delone;

namespace {

Rational lambda_sq_of(const std::vector<RationalVec>& A, const std::vector<RationalVec>& B,
                      const std::vector<std::size_t>& perm) {
  Rational worst = 1;
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      const Rational a = oracle::dist2(A[i], A[j]);
      const Rational b = oracle::dist2(B[perm[i]], B[perm[j]]);
      worst = std::max({worst, a / b, b / a});
    }
  }
  return worst;
}

// Every permutation in lexicographic order; returns the first optimum.
std::pair<Rational, std::vector<std::size_t>> all_permutations(const std::vector<RationalVec>& A,
                                                                const std::vector<RationalVec>& B) {
  std::vector<std::size_t> perm(A.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rational> best;
  std::vector<std::size_t> arg;
  do {
    Rational v = lambda_sq_of(A, B, perm);
    if (!best || v < *best) {
      best = v;
      arg = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {*best, arg};
}

struct Pair {
  RationalVec x, y;
};

std::vector<Pair> corresponding_pairs(const GridSpec& g, long boundary) {
  std::vector<Pair> out;
  for (long x0 = boundary * g.N; x0 < (boundary + 1) * g.N; ++x0) {
    for (long x1 = 0; x1 < g.N; ++x1) out.push_back({RationalVec{x0, x1}, RationalVec{x0 + g.N, x1}});
  }
  return out;
}

}  // namespace

TEST_CASE("distortion of simple bijections") {
  std::vector<RationalVec> A{{0, 0}, {1, 0}, {3, 0}, {1, 5}};
  CHECK(distortion(Bijection(A, A)).lambda_squared == 1);

  std::vector<RationalVec> doubled;
  for (const auto& p : A) doubled.push_back(p * Rational(2));
  CHECK(distortion(Bijection(A, doubled)).lambda_squared == 4);

  // Pair ratios D'/D: (0,1): 4/1, (0,2): 9/9, (1,2): 1/4.
  auto r = distortion(Bijection({{0, 0}, {1, 0}, {3, 0}}, {{0, 0}, {2, 0}, {3, 0}}));
  CHECK(r.lambda_squared == 4);
  CHECK(r.expand_ratio_sq == 4);
  CHECK(r.contract_ratio_sq == Rational(1, 4));
  CHECK(r.witness_expand == std::make_pair(std::size_t{0}, std::size_t{1}));
  CHECK(r.witness_contract == std::make_pair(std::size_t{1}, std::size_t{2}));
}

TEST_CASE("distortion is symmetric under inversion") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    auto A = oracle::random_points(rng, 2 + rng() % 10, 2, 0, 20);
    auto B = oracle::random_points(rng, A.size(), 2, 0, 20);
    Bijection f(A, B);
    CHECK(distortion(f).lambda_squared == distortion(f.inverse()).lambda_squared);
    std::vector<std::size_t> id(A.size());
    std::iota(id.begin(), id.end(), 0);
    CHECK(distortion(f).lambda_squared == lambda_sq_of(A, B, id));
  }
}

TEST_CASE("bijection validation") {
  CHECK_THROWS_AS(Bijection({{0, 0}}, {{0, 0}, {1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Bijection({{0, 0}, {0, 0}}, {{0, 0}, {1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Bijection({{0, 0}, {1, 0}}, {{0, 0, 0}, {1, 1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(distortion(Bijection({{0, 0}}, {{3, 3}})), InvalidArgument);
}

TEST_CASE("minimal distortion matches exhaustive permutation search") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng() % 5;
    auto A = oracle::random_points(rng, n, 2, 0, 20);
    auto B = oracle::random_points(rng, n, 2, 0, 20);
    auto [best, arg] = all_permutations(A, B);
    MinDistortion m = min_distortion_bruteforce(A, B);
    CHECK(m.report.lambda_squared == best);
    CHECK(m.permutation == arg);
    CHECK(distortion(m.best).lambda_squared == best);
  }
}

TEST_CASE("minimal distortion of similar copies") {
  std::vector<RationalVec> A{{0, 0}, {2, 1}, {5, 3}, {1, 4}, {3, 3}};
  std::vector<RationalVec> B;
  // Rotation by the 3-4-5 angle composed with scaling by 5.
  for (auto it = A.rbegin(); it != A.rend(); ++it) {
    const auto& p = *it;
    B.push_back(RationalVec{3 * p[0] - 4 * p[1] + 7, 4 * p[0] + 3 * p[1] - 2});
  }
  CHECK(min_distortion_bruteforce(A, B).report.lambda_squared == 25);

  std::vector<RationalVec> R;
  for (const auto& p : A) R.push_back(RationalVec{(3 * p[0] - 4 * p[1]) / 5, (4 * p[0] + 3 * p[1]) / 5});
  CHECK(min_distortion_bruteforce(A, R).report.lambda_squared == 1);

  std::vector<RationalVec> C;
  for (const auto& p : A) C.push_back(RationalVec{p[0] + 11, p[1] - 4});
  auto m = min_distortion_bruteforce(A, C);
  CHECK(m.report.lambda_squared == 1);
  CHECK(m.permutation == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK_THROWS_AS(min_distortion_bruteforce(A, C, 4), InvalidArgument);
}

TEST_CASE("dichotomy for identity and homothety") {
  GridSpec g{2, 6, 3};
  CHECK(g.points().size() == static_cast<std::size_t>((6 * 3 + 1) * 3));
  for (const GridMap& f : {identity_map(), homothety_map(2)}) {
    DichotomyReport r = analyze_dichotomy(g, f, Rational(1, 10), Rational(1, 100), Rational(5, 6));
    CHECK(r.verdict == DichotomyVerdict::Case2);
    CHECK_FALSE(r.case1);
    REQUIRE(r.counts.size() == 5);
    for (auto c : r.counts) CHECK(c == 9);
    CHECK(r.required == Rational(15, 2));
    CHECK(r.case2_index == std::optional<std::size_t>{0});
  }
}

TEST_CASE("dichotomy agrees with a direct evaluation of both alternatives") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 12; ++t) {
    GridSpec g{2, 3 + static_cast<long>(rng() % 4), 2 + static_cast<long>(rng() % 3)};
    const long slab = static_cast<long>(rng() % static_cast<std::uint64_t>(g.M));
    const RationalVec shift{Rational(static_cast<long>(rng() % 5), 8), Rational(static_cast<long>(rng() % 3), 8)};
    GridMap f = slab_shear_map(g, slab, shift);
    const Rational k(1, 2 + static_cast<long>(rng() % 9));
    const Rational eps(1, 5 + static_cast<long>(rng() % 30));
    const Rational a(5, 6);
    DichotomyReport r = analyze_dichotomy(g, f, k, eps, a);

    const RationalVec W = f(g.v()) - f(g.u());
    const Rational W2 = squared_norm(W);
    const Rational Msq(g.M * g.M);
    bool case1 = false;
    std::vector<std::size_t> counts;
    for (long i = 0; i + 1 < g.M; ++i) {
      std::size_t n = 0;
      for (const auto& [x, y] : corresponding_pairs(g, i)) {
        const RationalVec D = f(y) - f(x);
        if (squared_norm(D) * Msq > (1 + k) * (1 + k) * W2) case1 = true;
        if (squared_norm(D * Rational(g.M) - W) < eps * eps * W2) ++n;
      }
      counts.push_back(n);
    }
    CHECK(r.counts == counts);
    CHECK(r.case1.has_value() == case1);
    const Rational need = a * Rational(g.N * g.N);
    bool case2 = false;
    for (auto c : counts) case2 = case2 || Rational(static_cast<long>(c)) >= need;
    const DichotomyVerdict expect =
        case1 ? DichotomyVerdict::Case1 : (case2 ? DichotomyVerdict::Case2 : DichotomyVerdict::Neither);
    CHECK(r.verdict == expect);
  }
}

TEST_CASE("sheared slab triggers the first alternative") {
  GridSpec g{2, 6, 3};
  GridMap f = slab_shear_map(g, 2, RationalVec{Rational(1, 4), 0});
  DichotomyReport r = analyze_dichotomy(g, f, Rational(1, 10), Rational(1, 100), Rational(5, 6));
  CHECK(r.verdict == DichotomyVerdict::Case1);
  REQUIRE(r.case1);
  const Rational W2 = squared_norm(f(g.v()) - f(g.u()));
  const Rational D2 = squared_norm(f(r.case1->y) - f(r.case1->x));
  CHECK(D2 * 36 > Rational(121, 100) * W2);
}

TEST_CASE("bijection maps must be total") {
  Bijection b({{0, 0}, {1, 0}}, {{0, 0}, {2, 0}});
  GridMap f = bijection_map(b);
  CHECK(f(RationalVec{1, 0}) == RationalVec{2, 0});
  CHECK_THROWS_AS(f(RationalVec{5, 5}), InvalidArgument);
}

TEST_CASE("separation witness on toy families") {
  FamilyWindow a = build_family_window({"0111", 0, 2}, FamilyOverrides::toy());
  FamilyWindow b = build_family_window({"1111", 0, 2}, FamilyOverrides::toy());
  SeparationReport r = separation_witness(a, b, 1, 1);
  CHECK(r.bits_differ);
  CHECK(r.chain_alpha);
  CHECK(r.chain_beta);
  CHECK(r.mult_alpha == 5);
  CHECK(r.mult_beta == 25);
  CHECK(r.threshold == Rational(25, 7));
  CHECK(r.ratio == Rational(r.gap_beta) / Rational(r.gap_alpha));
  CHECK(r.verdict == SeparationVerdict::Separated);

  SeparationReport swapped = separation_witness(b, a, 1, 1);
  CHECK(swapped.verdict == SeparationVerdict::Separated);
  CHECK(swapped.ratio == r.ratio);

  SeparationReport same = separation_witness(a, a, 1, 1);
  CHECK_FALSE(same.bits_differ);
  CHECK(same.ratio == 1);
  CHECK(same.verdict == SeparationVerdict::NotSeparated);

  SeparationReport greedy = separation_witness(a, b, 1, 4);
  CHECK_FALSE(greedy.threshold_exceeds_lambda);
  CHECK(greedy.verdict == SeparationVerdict::NotSeparated);
}

TEST_CASE("exceptional image scan") {
  ParamRequest req;
  Block blk = realize_block(derive_params(req));
  const auto& pts = blk.set.points().points();
  CHECK(exceptional_image_scan(Bijection(pts, pts), blk.set) == blk.set.exceptional_count());

  SpecialSet unit = build_special(unit_tiling(2, 3));
  const auto& u = unit.points().points();
  CHECK(exceptional_image_scan(Bijection(u, u), unit) == 0);

  for (std::size_t j = 1; j <= 3; ++j) {
    Stack s = stack_blocks(blk, j);
    const auto& sp = s.set.points().points();
    CHECK(exceptional_image_scan(Bijection(sp, sp), s.set) == j * blk.set.exceptional_count());
  }
}
