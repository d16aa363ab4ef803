// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.
//
// Usage: acceptance [path-to-delone-cli]
// Without the CLI path the determinism criterion only covers library output.

#include "delone/distortion.hpp"
#include "delone/hierarchy.hpp"
#include "delone/io.hpp"
#include "delone/partition.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

using namespace delone;

namespace {

// Pinned limits. All geometric comparisons are exact; only wall-clock budgets
// carry a tolerance.
constexpr double kSweepSeconds = 60;
constexpr double kOracleSeconds = 30;
constexpr double kBlockSeconds = 120;
constexpr int kSweepInstances = 10000;
constexpr int kOracleInstances = 200;
constexpr int kCongruentInstances = 50;
constexpr std::uint64_t kSeed = 20240601;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail << std::endl;
}

std::string fmt(const Rational& q) { return to_string(q); }

// ------------------------------------------------------------------ criteria

Outcome boundary_sweep() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed);
  const Rational alphas[] = {Rational(1, 8), Rational(1, 4), Rational(3, 8)};
  long applicable = 0, violations = 0;
  for (int i = 0; i < kSweepInstances; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(draw(rng, 0, 1));
    VoxelPartition vp = random_partition(rng, d, 2, 6);
    for (const Rational& alpha : alphas) {
      Lemma5Report r = lemma5_check(vp, alpha);
      if (r.status == Lemma5Status::NotApplicable) continue;
      ++applicable;
      if (!(r.lhs >= alpha / pow(Rational(2), static_cast<unsigned>(d - 1)))) ++violations;
    }
  }
  const double s = seconds_since(t0);
  std::ostringstream os;
  os << kSweepInstances << " partitions x 3 alphas, " << applicable << " applicable, " << violations
     << " violations, " << s << " s (limit " << kSweepSeconds << " s)";
  return {violations == 0 && applicable > 0 && s < kSweepSeconds, os.str()};
}

std::vector<RationalVec> random_set(std::mt19937_64& rng, std::size_t n) {
  std::vector<RationalVec> out;
  while (out.size() < n) {
    RationalVec p{Rational(draw(rng, 0, 20)), Rational(draw(rng, 0, 20))};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

std::vector<Rational> sorted_distances(const std::vector<RationalVec>& p) {
  std::vector<Rational> d;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) d.push_back(squared_distance(p[i], p[j]));
  std::sort(d.begin(), d.end());
  return d;
}

// An isometry of Z^2: one of the eight lattice symmetries plus a translation.
RationalVec isometry(const RationalVec& p, int sym, const RationalVec& shift) {
  Rational x = p[0], y = p[1];
  if (sym & 1) std::swap(x, y);
  if (sym & 2) x = -x;
  if (sym & 4) y = -y;
  return RationalVec{x + shift[0], y + shift[1]};
}

Outcome distortion_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed + 1);
  int bad_perm = 0, bad_lambda_one = 0, bad_congruent = 0;
  for (int t = 0; t < kOracleInstances; ++t) {
    const std::size_t n = static_cast<std::size_t>(draw(rng, 2, 7));
    auto A = random_set(rng, n);
    auto B = random_set(rng, n);
    const Rational base = min_distortion_bruteforce(A, B).report.lambda_squared;
    auto PA = A, PB = B;
    std::shuffle(PA.begin(), PA.end(), rng);
    std::shuffle(PB.begin(), PB.end(), rng);
    if (min_distortion_bruteforce(PA, PB).report.lambda_squared != base) ++bad_perm;
    // Lambda 1 forces equal distance multisets.
    if (base == 1 && sorted_distances(A) != sorted_distances(B)) ++bad_lambda_one;
  }
  for (int t = 0; t < kCongruentInstances; ++t) {
    const std::size_t n = static_cast<std::size_t>(draw(rng, 2, 7));
    auto A = random_set(rng, n);
    const int sym = static_cast<int>(draw(rng, 0, 7));
    const RationalVec shift{Rational(draw(rng, -20, 20)), Rational(draw(rng, -20, 20))};
    std::vector<RationalVec> B;
    for (const auto& p : A) B.push_back(isometry(p, sym, shift));
    std::shuffle(B.begin(), B.end(), rng);
    if (min_distortion_bruteforce(A, B).report.lambda_squared != 1) ++bad_congruent;
  }
  const double s = seconds_since(t0);
  std::ostringstream os;
  os << kOracleInstances << " random: " << bad_perm << " permutation mismatches, " << bad_lambda_one
     << " spurious lambda=1; " << kCongruentInstances << " congruent: " << bad_congruent << " with lambda!=1; " << s
     << " s (limit " << kOracleSeconds << " s)";
  return {bad_perm == 0 && bad_lambda_one == 0 && bad_congruent == 0 && s < kOracleSeconds, os.str()};
}

Outcome dichotomy_sanity() {
  const GridSpec g{2, 6, 3};
  const Rational k(1, 10), eps(1, 100), a(5, 6);
  const std::size_t per_boundary = 9;  // N^d
  std::ostringstream os;
  bool ok = true;
  const std::pair<const char*, GridMap> aligned[] = {{"identity", identity_map()}, {"homothety", homothety_map(2)}};
  for (const auto& [name, f] : aligned) {
    DichotomyReport r = analyze_dichotomy(g, f, k, eps, a);
    const bool exact = std::all_of(r.counts.begin(), r.counts.end(), [&](std::size_t c) { return c == per_boundary; });
    ok = ok && r.verdict == DichotomyVerdict::Case2 && exact && !r.counts.empty();
    os << name << ": " << (r.verdict == DichotomyVerdict::Case2 ? "Case2" : "not Case2") << ", counts "
       << (exact ? "all 9" : "not all 9") << "; ";
  }
  DichotomyReport sh = analyze_dichotomy(g, slab_shear_map(g, 2, RationalVec{Rational(1, 4), 0}), k, eps, a);
  ok = ok && sh.verdict == DichotomyVerdict::Case1;
  os << "shear: " << (sh.verdict == DichotomyVerdict::Case1 ? "Case1" : "not Case1");
  if (sh.case1) os << " (ratio^2 " << fmt(sh.case1->ratio_sq) << ")";
  return {ok, os.str()};
}

Outcome block_fidelity() {
  const auto t0 = Clock::now();
  ParamRequest req;
  req.lambda = 1;
  req.k = 1;
  req.c = 2;
  const ConstructionParams p = derive_params(req);
  const Block b = realize_block(p);
  const TilingCheck chk = b.set.tiling().check();
  Rational vol = 0;
  bool edges_ok = true;
  for (const auto& q : b.set.tiling().cubes()) {
    vol += q.volume();
    edges_ok = edges_ok && (q.edge(0) == 1 || q.edge(0) == 2);
  }
  bool counting_ok = true;
  Rational worst;
  bool first = true;
  for (const auto& lv : counting_ratios(b)) {
    counting_ok = counting_ok && lv.min_ratio >= Rational(3, 2);
    if (first || lv.min_ratio < worst) worst = lv.min_ratio;
    first = false;
  }
  const double s = seconds_since(t0);
  const bool ok = p.a == Rational(5, 6) && chk.valid && !chk.overlap && vol == b.pi.volume() && edges_ok &&
                  counting_ok && !first && s < kBlockSeconds;
  std::ostringstream os;
  os << "a=" << fmt(p.a) << " M=" << p.M << " N=" << p.N << " H=" << p.H << " nu0=" << p.nu0 << "; "
     << b.set.size() << " cubes, volume " << (vol == b.pi.volume() ? "matches" : "differs")
     << ", overlaps " << (chk.overlap ? "found" : "none") << ", edges " << (edges_ok ? "in {1,2}" : "outside {1,2}")
     << ", min count ratio " << fmt(worst) << " vs 3/2; " << s << " s";
  return {ok, os.str()};
}

Outcome stacking() {
  ParamRequest req;
  const Block b = realize_block(derive_params(req));
  const Stack one = stack_blocks(b, 1);
  bool ok = true;
  std::ostringstream os;
  for (std::size_t j = 1; j <= 3; ++j) {
    const Stack s = stack_blocks(b, j);
    const bool sz = s.set.size() == j * one.set.size();
    const bool ex = s.set.exceptional_count() == j * one.set.exceptional_count();
    ok = ok && sz && ex;
    os << "j=" << j << ": " << s.set.size() << " points, " << s.set.exceptional_count() << " exceptional; ";
  }
  return {ok, os.str()};
}

Outcome family_separation() {
  std::ostringstream os;
  const FamilyWindow a = build_family_window({"0111", 0, 2}, FamilyOverrides::toy());
  const FamilyWindow b = build_family_window({"1111", 0, 2}, FamilyOverrides::toy());
  const SeparationReport sep = separation_witness(a, b, 1, 1);
  const bool toy_ok = sep.verdict == SeparationVerdict::Separated && sep.threshold > 1 && sep.chain_alpha &&
                      sep.chain_beta && sep.ratio_exceeds_threshold;
  os << "toy 0111/1111: ratio " << fmt(sep.ratio) << ", threshold " << fmt(sep.threshold) << "; ";
  const SeparationReport same = separation_witness(a, a, 1, 1);
  const bool same_ok = same.verdict == SeparationVerdict::NotSeparated;
  os << "identical: " << (same_ok ? "NotSeparated" : "Separated") << "; ";

  // Un-scaled regime, one gap. Positions come from the serialized documents.
  bool chain_ok = true;
  Rational ratio;
  std::vector<Integer> gaps;
  for (const char* bits : {"0", "1"}) {
    const io::Json doc = io::Json::parse(io::dump(io::family_to_json(build_family_window({bits, 1, 2}))));
    const FamilyWindow fw = io::family_from_json(doc);
    const auto& blocks = fw.placement.blocks;
    const Rational gap = blocks[1].box.min_corner()[0] - blocks[0].box.min_corner()[0];
    const Rational D = blocks[1].diam_sq;
    const Rational m = bits[0] == '0' ? 100 : 10000;
    // m*diam < gap < (m+2)*diam, squared.
    chain_ok = chain_ok && m * m * D < gap * gap && gap * gap < (m + 2) * (m + 2) * D;
    gaps.push_back(numerator_of(gap));
  }
  ratio = Rational(gaps[1]) / Rational(gaps[0]);
  const bool unscaled_ok = chain_ok && ratio > 99;
  os << "un-scaled j=1: gaps " << gaps[0] << " and " << gaps[1] << ", chain " << (chain_ok ? "holds" : "fails")
     << ", ratio " << to_double(ratio) << " vs 99";
  return {toy_ok && same_ok && unscaled_ok, os.str()};
}

Outcome delone_windows() {
  std::ostringstream os;
  bool ok = true;
  auto check = [&](const char* name, const DeloneWindow& w) {
    const Rational R2 = 4 * Rational(static_cast<long>(w.dim()));
    const DeloneReport r = is_delone(w, Rational(1, 2), R2, w.window());
    ok = ok && r.holds;
    os << name << ": " << (r.holds ? "ok" : "violated") << " (min^2 " << fmt(r.min_distance_sq) << ", R^2 "
       << fmt(r.covering_radius_sq) << "); ";
  };
  for (std::size_t d = 2; d <= 3; ++d) {
    const SpecialSet lat = build_special(unit_tiling(d, 8));
    check(d == 2 ? "lattice d=2" : "lattice d=3", lat.points());
  }
  ParamRequest req;
  const Block b = realize_block(derive_params(req));
  check("block", b.set.points());
  check("stack j=3", stack_blocks(b, 3).set.points());
  check("toy family 010", build_family_window({"010", 0, 2}, FamilyOverrides::toy()).window);
  check("toy family 0111", build_family_window({"0111", 0, 2}, FamilyOverrides::toy()).window);
  return {ok, os.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const char* cli) {
  std::ostringstream os;
  bool ok = true;
  // Library level.
  const auto lib = [] {
    return io::dump(io::family_to_json(build_family_window({"0110", 0, 2}, FamilyOverrides::toy())));
  };
  ok = ok && lib() == lib();
  os << "library family dump " << (ok ? "stable" : "unstable") << "; ";
  if (!cli) {
    os << "CLI not given, skipped";
    return {ok, os.str()};
  }
  const std::vector<std::string> commands = {
      "generate lattice --dim 2 --side 8",
      "generate lattice --dim 3 --side 4",
      "generate partition --dim 3",
      "generate partition --dim 2 --res 4,4 --split 0",
      "generate grid-map --M 6 --N 3 --map shear --slab 2 --shift 1/4",
      "construct block --c 2 --k 1 --lambda 1",
      "construct block --c 3/2 --k 1 --lambda 1",
      "construct stack --j 3",
      "construct family --bits 010 --toy",
  };
  const auto dir = std::filesystem::temp_directory_path() / ("delone_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  int n = 0, same = 0;
  for (const auto& cmd : commands) {
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      const auto file = dir / ("out" + std::to_string(n) + "_" + std::to_string(run) + ".json");
      const std::string line = std::string("\"") + cli + "\" --quiet --seed 7 --out \"" + file.string() + "\" " + cmd;
      if (std::system(line.c_str()) != 0) {
        bytes[run] = "<failed>" + std::to_string(run);
      } else {
        bytes[run] = read_file(file);
      }
    }
    ++n;
    if (bytes[0] == bytes[1] && !bytes[0].empty()) ++same;
  }
  std::filesystem::remove_all(dir);
  ok = ok && same == n;
  os << same << "/" << n << " CLI commands byte-identical across runs";
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  report("boundary-measure sweep", boundary_sweep);
  report("distortion oracle", distortion_oracle);
  report("dichotomy sanity", dichotomy_sanity);
  report("block fidelity", block_fidelity);
  report("stacking", stacking);
  report("family separation", family_separation);
  report("delone windows", delone_windows);
  report("determinism", [cli] { return determinism(cli); });
  return failures == 0 ? 0 : 1;
}
