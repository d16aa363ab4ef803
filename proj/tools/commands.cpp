#include "commands.hpp"

#include "delone/distortion.hpp"
#include "delone/error.hpp"
#include "delone/hierarchy.hpp"
#include "delone/io.hpp"
#include "delone/partition.hpp"
#include "delone/tiling.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace delone::cli {

namespace {

using io::Json;

struct Global {
  std::uint64_t seed = 20240601;
  std::string out;
  std::string format = "json";
  bool quiet = false;
};

struct BlockFlags {
  std::size_t dim = 2;
  std::string lambda = "1", L = "2", c = "2", epsilon = "1/8", k = "1", H_min = "1";
  long M_min = 2, N = 1;
  std::size_t j = 1;
  std::string tiling_out;
};

struct FamilyFlags {
  std::string bits;
  std::size_t j_max = 0;
  std::size_t dim = 2;
  bool toy = false;
};

class Output {
 public:
  explicit Output(const Global& g) : g_(g) {}

  void summary(const Json& j) const {
    if (!g_.quiet) std::cout << io::dump(j);
  }

  /// Columns and rows of a report table, written as JSON or CSV.
  void table(const std::string& name, const std::vector<std::string>& cols,
             const std::vector<std::vector<Json>>& rows) const {
    std::string text;
    if (g_.format == "csv") {
      std::ostringstream s;
      for (std::size_t i = 0; i < cols.size(); ++i) s << (i ? "," : "") << cols[i];
      s << "\n";
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
          s << (i ? "," : "") << (r[i].is_string() ? r[i].get<std::string>() : r[i].dump());
        }
        s << "\n";
      }
      text = s.str();
    } else {
      Json j;
      j["table"] = name;
      j["columns"] = cols;
      Json data = Json::array();
      for (const auto& r : rows) data.push_back(Json(r));
      j["rows"] = std::move(data);
      text = io::dump(j);
    }
    if (!g_.out.empty()) {
      std::ofstream f(g_.out, std::ios::binary);
      if (!f || !(f << text)) throw ParseError("cannot write '" + g_.out + "'");
    } else if (!g_.quiet) {
      std::cout << text;
    }
  }

 private:
  const Global& g_;
};

std::string str(const Rational& q) { return to_string(q); }

// Malformed numbers on the command line are usage errors, not I/O errors.
Rational flag_rational(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw InvalidArgument(e.what());
  }
}

ParamRequest request_from(const BlockFlags& f) {
  ParamRequest r;
  r.dim = f.dim;
  r.lambda = flag_rational(f.lambda);
  r.L = flag_rational(f.L);
  r.c = flag_rational(f.c);
  r.epsilon = flag_rational(f.epsilon);
  r.k = flag_rational(f.k);
  r.M_min = f.M_min;
  r.N_min = f.N;
  r.H_min = ceil(flag_rational(f.H_min));
  return r;
}

Json params_json(const ConstructionParams& p) {
  Json j;
  j["dim"] = p.dim;
  j["lambda"] = str(p.lambda);
  j["L"] = str(p.L);
  j["c"] = str(p.c);
  j["epsilon"] = str(p.epsilon);
  j["a"] = str(p.a);
  j["k"] = str(p.k);
  j["M"] = p.M;
  j["N"] = p.N;
  j["H"] = p.H.str();
  j["nu0"] = p.nu0;
  return j;
}

void add_block_flags(CLI::App* cmd, BlockFlags& f) {
  cmd->add_option("--dim", f.dim, "Ambient dimension (>= 2)")->check(CLI::Range(2, 8));
  cmd->add_option("--lambda", f.lambda, "Distortion bound lambda >= 1");
  cmd->add_option("--L", f.L, "Edge bound L of the target tilings");
  cmd->add_option("--c", f.c, "Large cube edge c = p/q > 1");
  cmd->add_option("--epsilon", f.epsilon, "Alignment tolerance in (0, 1/4)");
  cmd->add_option("--k", f.k, "Expansion margin k > 0");
  cmd->add_option("--M-min", f.M_min, "Lower bound for M");
  cmd->add_option("--N", f.N, "Sub-division count N (divides M)");
  cmd->add_option("--H-min", f.H_min, "Lower bound for the homothety factor H");
  cmd->add_option("--tiling", f.tiling_out, "Also write the tiling to this file");
}

FamilyWindow build_family(const FamilyFlags& f) {
  EncodedFamilySpec spec{f.bits, f.j_max, f.dim};
  return build_family_window(spec, f.toy ? FamilyOverrides::toy() : FamilyOverrides{});
}

Json delone_json(const DeloneReport& d) {
  Json j;
  j["holds"] = d.holds;
  j["separated"] = d.separated;
  j["covered"] = d.covered;
  j["min_distance_sq"] = str(d.min_distance_sq);
  j["covering_radius_sq"] = str(d.covering_radius_sq);
  if (d.violating_pair) {
    j["violating_pair"] = Json::array({io::to_json(d.violating_pair->first), io::to_json(d.violating_pair->second)});
  }
  if (d.uncovered_witness) j["uncovered_witness"] = io::to_json(*d.uncovered_witness);
  return j;
}

const char* lemma5_status(Lemma5Status s) {
  switch (s) {
    case Lemma5Status::Holds: return "holds";
    case Lemma5Status::Fails: return "fails";
    default: return "not_applicable";
  }
}

Json lemma5_json(const Lemma5Report& r) {
  Json j;
  j["status"] = lemma5_status(r.status);
  j["lhs"] = str(r.lhs);
  j["rhs"] = str(r.rhs);
  j["vol_p"] = str(r.vol_p);
  j["vol_q"] = str(r.vol_q);
  return j;
}

const char* verdict_name(DichotomyVerdict v) {
  switch (v) {
    case DichotomyVerdict::Case1: return "case1";
    case DichotomyVerdict::Case2: return "case2";
    default: return "neither";
  }
}

Json dichotomy_json(const DichotomyReport& r) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  if (r.case2_index) j["case2_index"] = *r.case2_index;
  j["required"] = str(r.required);
  j["counts"] = r.counts;
  if (r.case1) {
    j["case1"] = {{"x", io::to_json(r.case1->x)}, {"y", io::to_json(r.case1->y)},
                  {"ratio_sq", str(r.case1->ratio_sq)}};
  }
  return j;
}

Json witness_json(const SeparationReport& r) {
  Json j;
  j["verdict"] = r.verdict == SeparationVerdict::Separated ? "separated" : "not_separated";
  j["j"] = r.j;
  j["bits_differ"] = r.bits_differ;
  j["gap_alpha"] = r.gap_alpha.str();
  j["gap_beta"] = r.gap_beta.str();
  j["mult_alpha"] = r.mult_alpha.str();
  j["mult_beta"] = r.mult_beta.str();
  j["diam_sq"] = str(r.diam_sq);
  j["chain_alpha"] = r.chain_alpha;
  j["chain_beta"] = r.chain_beta;
  j["ratio"] = str(r.ratio);
  j["ratio_approx"] = to_double(r.ratio);
  j["chain_bound"] = str(r.chain_bound);
  j["threshold"] = str(r.threshold);
  j["ratio_exceeds_threshold"] = r.ratio_exceeds_threshold;
  j["threshold_exceeds_lambda"] = r.threshold_exceeds_lambda;
  return j;
}

struct DichotomyFlags {
  std::string in;
  long M = 6, N = 3;
  std::string k = "1/10", epsilon = "1/100", a = "5/6";
};

void add_dichotomy_flags(CLI::App* cmd, DichotomyFlags& f) {
  cmd->add_option("--in", f.in, "Bijection file defined on P_MN")->required();
  cmd->add_option("--M", f.M, "Slab count M");
  cmd->add_option("--N", f.N, "Slab width N");
  cmd->add_option("--k", f.k, "Expansion margin k");
  cmd->add_option("--epsilon", f.epsilon, "Alignment tolerance");
  cmd->add_option("--a", f.a, "Required fraction a");
}

DichotomyReport run_dichotomy(const DichotomyFlags& f) {
  const Bijection bij = io::bijection_from_json(io::read_json_file(f.in));
  GridSpec g{bij.dim(), f.M, f.N};
  return analyze_dichotomy(g, bijection_map(bij), flag_rational(f.k), flag_rational(f.epsilon),
                           flag_rational(f.a));
}

struct WitnessFlags {
  std::string alpha, beta, lambda = "1";
  std::size_t j = 1;
};

void add_witness_flags(CLI::App* cmd, WitnessFlags& f) {
  cmd->add_option("--alpha", f.alpha, "First family file")->required();
  cmd->add_option("--beta", f.beta, "Second family file")->required();
  cmd->add_option("--j", f.j, "Gap index (1-based)");
  cmd->add_option("--lambda", f.lambda, "Distortion bound to exceed");
}

SeparationReport run_witness(const WitnessFlags& f) {
  const FamilyWindow a = io::family_from_json(io::read_json_file(f.alpha));
  const FamilyWindow b = io::family_from_json(io::read_json_file(f.beta));
  return separation_witness(a, b, f.j, flag_rational(f.lambda));
}

std::vector<Box> select_cubes(const CubeTiling& t, const std::string& edge) {
  if (edge.empty()) return t.cubes();
  const Rational e = flag_rational(edge);
  std::vector<Box> out;
  for (const auto& q : t.cubes()) {
    if (q.edge(0) == e) out.push_back(q);
  }
  return out;
}

VoxelPartition half_split(std::size_t dim, const std::vector<long>& res, std::size_t axis) {
  std::size_t total = 1;
  for (long g : res) total *= static_cast<std::size_t>(g);
  std::string labels(total, 'P');
  std::vector<long> cell(dim, 0);
  for (std::size_t i = 0; i < total; ++i) {
    labels[i] = 2 * cell[axis] < res[axis] ? 'P' : 'Q';
    for (std::size_t a = dim; a > 0; --a) {
      if (++cell[a - 1] < res[a - 1]) break;
      cell[a - 1] = 0;
    }
  }
  return VoxelPartition(res, std::move(labels));
}

struct SweepResult {
  std::size_t instances = 0, applicable = 0, failures = 0;
  std::optional<VoxelPartition> first_failure;
};

SweepResult lemma5_sweep(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  const Rational alphas[] = {Rational(1, 8), Rational(1, 4), Rational(3, 8)};
  SweepResult s;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t dim = static_cast<std::size_t>(draw(rng, 2, 3));
    const VoxelPartition vp = random_partition(rng, dim, 2, 6);
    const Rational& alpha = alphas[draw(rng, 0, 2)];
    const Lemma5Report r = lemma5_check(vp, alpha);
    ++s.instances;
    if (r.status == Lemma5Status::NotApplicable) continue;
    ++s.applicable;
    if (r.status == Lemma5Status::Fails) {
      ++s.failures;
      if (!s.first_failure) s.first_failure = vp;
    }
  }
  return s;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Delone set constructions and exact checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_option("--out", g.out, "Output file (default: standard output)");
  app.add_option("--format", g.format, "Table format for reports")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--quiet", g.quiet, "Suppress the summary on standard output");
  Output out(g);
  int status = kOk;
  std::function<void()> action;
  auto on = [&](CLI::App* cmd, std::function<void()> f) {
    cmd->callback([&action, f = std::move(f)] { action = f; });
  };

  // ------------------------------------------------------------ generate
  auto* gen = app.add_subcommand("generate", "Write lattice windows, partitions and grid maps");
  gen->require_subcommand(1);

  std::size_t lat_dim = 2;
  long lat_side = 8;
  std::string lat_tiling;
  auto* lat = gen->add_subcommand("lattice", "Unit lattice window [0, side)^dim");
  lat->add_option("--dim", lat_dim, "Dimension")->check(CLI::Range(1, 8));
  lat->add_option("--side", lat_side, "Side length")->check(CLI::PositiveNumber);
  lat->add_option("--tiling", lat_tiling, "Also write the unit tiling");
  on(lat, [&] {
    const SpecialSet s = build_special(unit_tiling(lat_dim, lat_side));
    if (!lat_tiling.empty()) io::write_json_file(lat_tiling, io::tiling_to_json(s.tiling()));
    if (!g.out.empty()) io::write_json_file(g.out, io::point_set_to_json(s.points()));
    const PackingReport pr = packing_radius(s.points());
    out.summary({{"command", "generate lattice"}, {"points", s.size()}, {"packing_radius_sq", str(pr.radius_sq)}});
  });

  std::size_t part_dim = 2;
  std::vector<long> part_res;
  long res_lo = 2, res_hi = 6;
  int split_axis = -1;
  auto* part = gen->add_subcommand("partition", "Voxel partition of the unit cube");
  part->add_option("--dim", part_dim, "Dimension")->check(CLI::Range(1, 6));
  part->add_option("--res", part_res, "Per-axis resolution (for --split)")->delimiter(',');
  part->add_option("--res-lo", res_lo, "Smallest random resolution");
  part->add_option("--res-hi", res_hi, "Largest random resolution");
  part->add_option("--split", split_axis, "Half split along this axis instead of random labels");
  on(part, [&] {
    std::optional<VoxelPartition> vp;
    if (split_axis >= 0) {
      std::vector<long> res = part_res.empty() ? std::vector<long>(part_dim, 2) : part_res;
      if (res.size() != part_dim || static_cast<std::size_t>(split_axis) >= part_dim) {
        throw InvalidArgument("--res and --split must match --dim");
      }
      vp = half_split(part_dim, res, static_cast<std::size_t>(split_axis));
    } else {
      std::mt19937_64 rng(g.seed);
      vp = random_partition(rng, part_dim, res_lo, res_hi);
    }
    if (!g.out.empty()) io::write_json_file(g.out, io::partition_to_json(*vp));
    out.summary({{"command", "generate partition"},
                 {"resolution", vp->resolution()},
                 {"vol_p", str(volume(*vp, Label::P))},
                 {"boundary", str(shared_boundary_area(*vp))}});
  });

  std::size_t map_dim = 2;
  long map_M = 6, map_N = 3, map_slab = 2;
  std::string map_kind = "identity", map_factor = "2", map_shift = "1/4";
  auto* gm = gen->add_subcommand("grid-map", "Bijection on P_MN (identity, homothety or slab shear)");
  gm->add_option("--dim", map_dim, "Dimension")->check(CLI::Range(2, 6));
  gm->add_option("--M", map_M, "Slab count");
  gm->add_option("--N", map_N, "Slab width");
  gm->add_option("--map", map_kind, "Map kind")->check(CLI::IsMember({"identity", "homothety", "shear"}));
  gm->add_option("--factor", map_factor, "Homothety factor");
  gm->add_option("--slab", map_slab, "Sheared slab index");
  gm->add_option("--shift", map_shift, "Shear: axis-1 shift per unit of x_2");
  on(gm, [&] {
    GridSpec spec{map_dim, map_M, map_N};
    GridMap f = identity_map();
    if (map_kind == "homothety") f = homothety_map(flag_rational(map_factor));
    if (map_kind == "shear") f = slab_shear_map(spec, map_slab, RationalVec::unit(map_dim, 0, flag_rational(map_shift)));
    std::vector<RationalVec> src = spec.points(), dst;
    for (const auto& x : src) dst.push_back(f(x));
    const Bijection bij(std::move(src), std::move(dst));
    if (!g.out.empty()) io::write_json_file(g.out, io::bijection_to_json(bij));
    out.summary({{"command", "generate grid-map"}, {"map", map_kind}, {"pairs", bij.size()}});
  });

  // ----------------------------------------------------------- construct
  auto* con = app.add_subcommand("construct", "Build blocks, stacks and encoded families");
  con->require_subcommand(1);
  BlockFlags bf;
  auto* cb = con->add_subcommand("block", "Hierarchical checkerboard block");
  add_block_flags(cb, bf);
  on(cb, [&] {
    const ConstructionParams p = derive_params(request_from(bf));
    const Block b = realize_block(p);
    if (!bf.tiling_out.empty()) io::write_json_file(bf.tiling_out, io::tiling_to_json(b.set.tiling()));
    if (!g.out.empty()) io::write_json_file(g.out, io::point_set_to_json(b.set.points()));
    Json counting = Json::array();
    for (const auto& c : counting_ratios(b)) {
      counting.push_back({{"level", c.level}, {"pairs", c.pairs}, {"min_ratio", str(c.min_ratio)}, {"holds", c.holds}});
    }
    out.summary({{"command", "construct block"},
                 {"params", params_json(p)},
                 {"pi", io::to_json(b.pi)},
                 {"points", b.set.size()},
                 {"exceptional", b.set.exceptional_count()},
                 {"counting", std::move(counting)}});
  });

  BlockFlags sf;
  auto* cs = con->add_subcommand("stack", "j copies of a block along the last axis");
  add_block_flags(cs, sf);
  cs->add_option("--j", sf.j, "Number of copies")->check(CLI::PositiveNumber);
  on(cs, [&] {
    const ConstructionParams p = derive_params(request_from(sf));
    const Stack st = stack_blocks(realize_block(p), sf.j);
    if (!sf.tiling_out.empty()) io::write_json_file(sf.tiling_out, io::tiling_to_json(st.set.tiling()));
    if (!g.out.empty()) io::write_json_file(g.out, io::point_set_to_json(st.set.points()));
    out.summary({{"command", "construct stack"},
                 {"params", params_json(p)},
                 {"j", sf.j},
                 {"pi", io::to_json(st.pi)},
                 {"points", st.set.size()},
                 {"exceptional", st.set.exceptional_count()}});
  });

  FamilyFlags ff;
  auto* cf = con->add_subcommand("family", "Bit-encoded family of stacked blocks with Z^d fill");
  cf->add_option("--bits", ff.bits, "Bit string")->required();
  cf->add_option("--j-max", ff.j_max, "Number of gaps to lay out (default: all bits)");
  cf->add_option("--dim", ff.dim, "Dimension")->check(CLI::Range(2, 4));
  cf->add_flag("--toy", ff.toy, "Reduced constants (multiplier 5, two copies, nu0 <= 2)");
  on(cf, [&] {
    const FamilyWindow fw = build_family(ff);
    if (!g.out.empty()) io::write_json_file(g.out, io::family_to_json(fw));
    Json blocks = Json::array();
    for (const auto& b : fw.placement.blocks) {
      blocks.push_back({{"j", b.j}, {"c", str(b.c)}, {"copies", b.copies}, {"points", b.points},
                        {"exceptional", b.exceptional}, {"diam_sq", str(b.diam_sq)}});
    }
    Json gaps = Json::array();
    for (const auto& x : fw.placement.gaps) gaps.push_back(x.str());
    out.summary({{"command", "construct family"},
                 {"bits", ff.bits},
                 {"toy", ff.toy},
                 {"points", fw.window.points().size()},
                 {"blocks", std::move(blocks)},
                 {"gaps", std::move(gaps)}});
  });

  // ------------------------------------------------------------- analyze
  auto* an = app.add_subcommand("analyze", "Distortion, dichotomy, separation and exceptional scans");
  an->require_subcommand(1);
  std::string dist_in;
  auto* ad = an->add_subcommand("distortion", "Distortion of a bijection");
  ad->add_option("--in", dist_in, "Bijection file")->required();
  on(ad, [&] {
    const DistortionReport r = distortion(io::bijection_from_json(io::read_json_file(dist_in)));
    out.summary({{"command", "analyze distortion"},
                 {"lambda_squared", str(r.lambda_squared)},
                 {"lambda_approx", std::sqrt(to_double(r.lambda_squared))},
                 {"witness_expand", {r.witness_expand.first, r.witness_expand.second}},
                 {"expand_ratio_sq", str(r.expand_ratio_sq)},
                 {"witness_contract", {r.witness_contract.first, r.witness_contract.second}},
                 {"contract_ratio_sq", str(r.contract_ratio_sq)}});
  });

  DichotomyFlags adf;
  auto* adi = an->add_subcommand("dichotomy", "Slab dichotomy on P_MN");
  add_dichotomy_flags(adi, adf);
  on(adi, [&] {
    Json j = dichotomy_json(run_dichotomy(adf));
    j["command"] = "analyze dichotomy";
    out.summary(j);
  });

  WitnessFlags awf;
  auto* aw = an->add_subcommand("witness", "Gap-ratio separation between two families");
  add_witness_flags(aw, awf);
  on(aw, [&] {
    Json j = witness_json(run_witness(awf));
    j["command"] = "analyze witness";
    out.summary(j);
  });

  std::string scan_in, scan_tiling;
  auto* asc = an->add_subcommand("scan", "Count exceptional images of a bijection into a special set");
  asc->add_option("--in", scan_in, "Bijection file")->required();
  asc->add_option("--tiling", scan_tiling, "Tiling of the target special set")->required();
  on(asc, [&] {
    const Bijection f = io::bijection_from_json(io::read_json_file(scan_in));
    const SpecialSet s = build_special(io::tiling_from_json(io::read_json_file(scan_tiling)));
    out.summary({{"command", "analyze scan"}, {"pairs", f.size()}, {"exceptional_images", exceptional_image_scan(f, s)}});
  });

  // ------------------------------------------------------------- measure
  auto* me = app.add_subcommand("measure", "Volumes and boundary measures");
  me->require_subcommand(1);
  std::string m_in, m_alpha = "1/4", m_edge;
  auto* mv = me->add_subcommand("volume", "Label volumes of a partition");
  mv->add_option("--in", m_in, "Partition file")->required();
  on(mv, [&] {
    const VoxelPartition vp = io::partition_from_json(io::read_json_file(m_in));
    out.summary({{"command", "measure volume"}, {"vol_p", str(volume(vp, Label::P))}, {"vol_q", str(volume(vp, Label::Q))}});
  });
  auto* mb = me->add_subcommand("boundary", "Shared P/Q boundary area");
  mb->add_option("--in", m_in, "Partition file")->required();
  on(mb, [&] {
    const VoxelPartition vp = io::partition_from_json(io::read_json_file(m_in));
    out.summary({{"command", "measure boundary"}, {"boundary", str(shared_boundary_area(vp))}});
  });
  auto* ml = me->add_subcommand("lemma5", "Boundary lower bound alpha / 2^{d-1}");
  ml->add_option("--in", m_in, "Partition file")->required();
  ml->add_option("--alpha", m_alpha, "alpha in (0, 1/2)");
  on(ml, [&] {
    Json j = lemma5_json(lemma5_check(io::partition_from_json(io::read_json_file(m_in)), flag_rational(m_alpha)));
    j["command"] = "measure lemma5";
    out.summary(j);
  });
  auto* msu = me->add_subcommand("surface", "Surface area of a union of tiling cubes");
  msu->add_option("--in", m_in, "Tiling file")->required();
  msu->add_option("--edge", m_edge, "Only cubes with this edge");
  on(msu, [&] {
    const CubeTiling t = io::tiling_from_json(io::read_json_file(m_in));
    const std::vector<Box> cubes = select_cubes(t, m_edge);
    out.summary({{"command", "measure surface"}, {"cubes", cubes.size()}, {"surface", str(cube_union_surface(cubes))}});
  });

  // -------------------------------------------------------------- verify
  auto* ve = app.add_subcommand("verify", "Checks with exit status 0 when the property holds");
  ve->require_subcommand(1);
  std::string v_in, v_r = "1/2", v_R2, v_alpha = "1/4";
  auto* vd = ve->add_subcommand("delone", "Delone check over the window");
  vd->add_option("--in", v_in, "Point-set or family file")->required();
  vd->add_option("--r", v_r, "Packing radius r");
  vd->add_option("--R2", v_R2, "Squared covering radius (default 4d)");
  on(vd, [&] {
    const DeloneWindow w = io::point_set_from_json(io::read_json_file(v_in));
    const Rational R2 = v_R2.empty() ? Rational(4 * static_cast<long>(w.dim())) : flag_rational(v_R2);
    const DeloneReport d = is_delone(w, flag_rational(v_r), R2, w.window());
    Json j = delone_json(d);
    j["command"] = "verify delone";
    out.summary(j);
    if (!d.holds) status = kPropertyFails;
  });
  auto* vl = ve->add_subcommand("lemma5", "Boundary lower bound on one partition");
  vl->add_option("--in", v_in, "Partition file")->required();
  vl->add_option("--alpha", v_alpha, "alpha in (0, 1/2)");
  on(vl, [&] {
    const Lemma5Report r = lemma5_check(io::partition_from_json(io::read_json_file(v_in)), flag_rational(v_alpha));
    Json j = lemma5_json(r);
    j["command"] = "verify lemma5";
    out.summary(j);
    if (r.status != Lemma5Status::Holds) status = kPropertyFails;
  });
  std::size_t sweep_count = 10000;
  auto* vs = ve->add_subcommand("lemma5-sweep", "Randomized boundary bound sweep, d in {2,3}");
  vs->add_option("--count", sweep_count, "Number of random partitions");
  on(vs, [&] {
    const SweepResult s = lemma5_sweep(g.seed, sweep_count);
    Json j{{"command", "verify lemma5-sweep"}, {"seed", g.seed}, {"instances", s.instances},
           {"applicable", s.applicable}, {"failures", s.failures}};
    if (s.first_failure) j["first_failure"] = io::partition_to_json(*s.first_failure);
    out.summary(j);
    if (s.failures > 0) status = kPropertyFails;
  });
  DichotomyFlags vdf;
  auto* vdi = ve->add_subcommand("dichotomy", "Exit 0 when either alternative holds");
  add_dichotomy_flags(vdi, vdf);
  on(vdi, [&] {
    const DichotomyReport r = run_dichotomy(vdf);
    Json j = dichotomy_json(r);
    j["command"] = "verify dichotomy";
    out.summary(j);
    if (r.verdict == DichotomyVerdict::Neither) status = kPropertyFails;
  });
  WitnessFlags vwf;
  auto* vw = ve->add_subcommand("witness", "Exit 0 when the two families are separated at j");
  add_witness_flags(vw, vwf);
  on(vw, [&] {
    const SeparationReport r = run_witness(vwf);
    Json j = witness_json(r);
    j["command"] = "verify witness";
    out.summary(j);
    if (r.verdict != SeparationVerdict::Separated) status = kPropertyFails;
  });

  // -------------------------------------------------------------- report
  auto* re = app.add_subcommand("report", "Tables for plotting");
  re->require_subcommand(1);
  long rk_max = 8;
  auto* rs = re->add_subcommand("surface-blocks", "Surface of k x k unit-square blocks");
  rs->add_option("--k-max", rk_max, "Largest k")->check(CLI::PositiveNumber);
  on(rs, [&] {
    std::vector<std::vector<Json>> rows;
    for (long k = 1; k <= rk_max; ++k) {
      std::vector<Box> cubes;
      for (long x = 0; x < k; ++x) {
        for (long y = 0; y < k; ++y) cubes.push_back(Box::cube(RationalVec{Rational(x), Rational(y)}, 1));
      }
      rows.push_back({k, k * k, str(cube_union_surface(cubes)), 4 * k});
    }
    out.table("surface-blocks", {"k", "cubes", "surface", "closed_form"}, rows);
  });

  BlockFlags ref;
  std::size_t re_jmax = 3;
  auto* rx = re->add_subcommand("exceptional-stack", "Exceptional points of stacks against j");
  add_block_flags(rx, ref);
  rx->add_option("--j-max", re_jmax, "Largest stack height")->check(CLI::PositiveNumber);
  on(rx, [&] {
    const Block b = realize_block(derive_params(request_from(ref)));
    std::vector<std::vector<Json>> rows;
    for (std::size_t j = 1; j <= re_jmax; ++j) {
      const Stack st = stack_blocks(b, j);
      rows.push_back({j, st.set.size(), st.set.exceptional_count()});
    }
    out.table("exceptional-stack", {"j", "points", "exceptional"}, rows);
  });

  long rd_M = 6, rd_N = 3, rd_slab = 2;
  std::string rd_shift = "1/4", rd_k = "1/10", rd_a = "5/6";
  auto* rdx = re->add_subcommand("dichotomy-eps", "Aligned-pair counts of a sheared grid against epsilon");
  rdx->add_option("--M", rd_M, "Slab count");
  rdx->add_option("--N", rd_N, "Slab width");
  rdx->add_option("--slab", rd_slab, "Sheared slab");
  rdx->add_option("--shift", rd_shift, "Shear per unit of x_2");
  rdx->add_option("--k", rd_k, "Expansion margin k");
  rdx->add_option("--a", rd_a, "Required fraction a");
  on(rdx, [&] {
    GridSpec spec{2, rd_M, rd_N};
    const GridMap f = slab_shear_map(spec, rd_slab, RationalVec::unit(2, 0, flag_rational(rd_shift)));
    std::vector<std::vector<Json>> rows;
    for (long i = 1; i <= 9; ++i) {
      const Rational eps(i, 40);
      const DichotomyReport r = analyze_dichotomy(spec, f, flag_rational(rd_k), eps, flag_rational(rd_a));
      std::size_t total = 0, worst = SIZE_MAX;
      for (auto c : r.counts) {
        total += c;
        worst = std::min(worst, c);
      }
      rows.push_back({str(eps), total, worst == SIZE_MAX ? 0 : worst, verdict_name(r.verdict)});
    }
    out.table("dichotomy-eps", {"epsilon", "aligned_total", "aligned_min", "verdict"}, rows);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (action) action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return status;
}

}  // namespace delone::cli
