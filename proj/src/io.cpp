#include "delone/io.hpp"

#include "delone/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace delone::io {

namespace {

Json integer_to_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
    return n.convert_to<std::int64_t>();
  }
  return n.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError("malformed integer string '" + j.get<std::string>() + "'");
    }
  }
  throw ParseError("expected an integer");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t dim_field(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) throw ParseError("dim must be a positive integer");
  return d.get<std::size_t>();
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid content: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json header(const char* kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

}  // namespace

void require_schema(const Json& j, const std::string& kind) {
  if (!j.is_object()) throw ParseError("document is not a JSON object");
  const Json& v = field(j, "schema_version");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
    throw ParseError("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (!kind.empty()) {
    const Json& k = field(j, "kind");
    if (!k.is_string() || k.get<std::string>() != kind) {
      throw ParseError("expected a '" + kind + "' document");
    }
  }
}

Json to_json(const Rational& q) {
  return Json::array({integer_to_json(numerator_of(q)), integer_to_json(denominator_of(q))});
}

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("rational must be a [numerator, denominator] pair");
  const Integer num = integer_from_json(j[0]);
  const Integer den = integer_from_json(j[1]);
  if (den <= 0) throw ParseError("rational denominator must be positive");
  Rational q(num, den);
  if (numerator_of(q) != num) throw ParseError("rational is not in lowest terms");
  return q;
}

Json to_json(const RationalVec& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(to_json(c));
  return out;
}

RationalVec vec_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("point must be a nonempty array of rationals");
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return RationalVec(std::move(c));
}

Json to_json(const Box& b) {
  Json out;
  out["min"] = to_json(b.min_corner());
  out["edges"] = to_json(RationalVec(b.edge_lengths()));
  return out;
}

Box box_from_json(const Json& j) {
  return guarded([&] {
    RationalVec lo = vec_from_json(field(j, "min"));
    RationalVec e = vec_from_json(field(j, "edges"));
    if (lo.dim() != e.dim()) throw ParseError("box min and edges differ in length");
    return Box(std::move(lo), e.coords());
  });
}

// ---------------------------------------------------------------- point set

namespace {

void fill_point_set(Json& j, const DeloneWindow& w) {
  j["dim"] = w.dim();
  Json pts = Json::array();
  for (const auto& p : w.points()) pts.push_back(to_json(p));
  j["points"] = std::move(pts);
  j["window"] = to_json(w.window());
  j["fill"] = w.fill() == Fill::IntegerLattice ? "zd" : "none";
  if (!w.blocks().empty()) {
    Json blocks = Json::array();
    for (const auto& b : w.blocks()) blocks.push_back(to_json(b));
    j["blocks"] = std::move(blocks);
  }
}

DeloneWindow read_point_set(const Json& j) {
  return guarded([&] {
    const std::size_t d = dim_field(j);
    std::vector<RationalVec> pts;
    const Json& arr = field(j, "points");
    if (!arr.is_array()) throw ParseError("points must be an array");
    for (const auto& p : arr) pts.push_back(vec_from_json(p));
    Box window = box_from_json(field(j, "window"));
    const std::string fill = field(j, "fill").get<std::string>();
    if (fill != "none" && fill != "zd") throw ParseError("fill must be \"none\" or \"zd\"");
    std::vector<Box> blocks;
    if (j.contains("blocks")) {
      for (const auto& b : j.at("blocks")) blocks.push_back(box_from_json(b));
    }
    return DeloneWindow(d, std::move(pts), std::move(window),
                        fill == "zd" ? Fill::IntegerLattice : Fill::None, std::move(blocks));
  });
}

}  // namespace

Json point_set_to_json(const DeloneWindow& w) {
  Json j = header("point_set");
  fill_point_set(j, w);
  return j;
}

DeloneWindow point_set_from_json(const Json& j) {
  require_schema(j, "");
  const std::string kind = j.value("kind", std::string("point_set"));
  if (kind != "point_set" && kind != "family") throw ParseError("expected a 'point_set' document");
  return read_point_set(j);
}

// ------------------------------------------------------------------- tiling

Json tiling_to_json(const CubeTiling& t) {
  Json j = header("tiling");
  j["dim"] = t.dim();
  j["L"] = to_json(t.max_edge());
  j["region"] = to_json(t.region());
  Json cubes = Json::array();
  for (const auto& q : t.cubes()) {
    Json c;
    c["min"] = to_json(q.min_corner());
    c["edge"] = to_json(q.edge(0));
    cubes.push_back(std::move(c));
  }
  j["cubes"] = std::move(cubes);
  return j;
}

CubeTiling tiling_from_json(const Json& j) {
  require_schema(j, "tiling");
  return guarded([&] {
    const std::size_t d = dim_field(j);
    std::vector<Box> cubes;
    for (const auto& c : field(j, "cubes")) {
      cubes.push_back(Box::cube(vec_from_json(field(c, "min")), rational_from_json(field(c, "edge"))));
    }
    return CubeTiling(d, box_from_json(field(j, "region")), std::move(cubes),
                      rational_from_json(field(j, "L")));
  });
}

// ---------------------------------------------------------------- bijection

Json bijection_to_json(const Bijection& f) {
  Json j = header("bijection");
  j["dim"] = f.dim();
  Json pairs = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    pairs.push_back(Json::array({to_json(f.source()[i]), to_json(f.target()[i])}));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Bijection bijection_from_json(const Json& j) {
  require_schema(j, "bijection");
  return guarded([&] {
    const std::size_t d = dim_field(j);
    std::vector<RationalVec> src, dst;
    for (const auto& p : field(j, "pairs")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("each pair must be [source, target]");
      src.push_back(vec_from_json(p[0]));
      dst.push_back(vec_from_json(p[1]));
      if (src.back().dim() != d || dst.back().dim() != d) throw ParseError("pair dimension differs from dim");
    }
    return Bijection(std::move(src), std::move(dst));
  });
}

// ---------------------------------------------------------------- partition

Json partition_to_json(const VoxelPartition& vp) {
  Json j = header("partition");
  j["dim"] = vp.dim();
  j["resolution"] = vp.resolution();
  j["labels"] = vp.labels();
  return j;
}

VoxelPartition partition_from_json(const Json& j) {
  require_schema(j, "partition");
  return guarded([&] {
    const std::size_t d = dim_field(j);
    auto res = field(j, "resolution").get<std::vector<long>>();
    if (res.size() != d) throw ParseError("resolution length differs from dim");
    return VoxelPartition(std::move(res), field(j, "labels").get<std::string>());
  });
}

// ------------------------------------------------------------------- family

Json family_to_json(const FamilyWindow& fw) {
  Json j = header("family");
  fill_point_set(j, fw.window);
  const FamilyPlacement& m = fw.placement;
  Json f;
  f["bits"] = m.bits;
  f["j_max"] = m.j_max;
  f["multiplier"] = integer_to_json(m.overrides.multiplier);
  f["copies_cap"] = m.overrides.copies_cap ? Json(*m.overrides.copies_cap) : Json(nullptr);
  f["nu0_cap"] = m.overrides.nu0_cap ? Json(*m.overrides.nu0_cap) : Json(nullptr);
  Json blocks = Json::array();
  for (const auto& b : m.blocks) {
    Json e;
    e["j"] = b.j;
    e["c"] = to_json(b.c);
    e["nu0"] = b.nu0;
    e["H"] = integer_to_json(b.H);
    e["copies"] = b.copies;
    e["points"] = b.points;
    e["exceptional"] = b.exceptional;
    e["box"] = to_json(b.box);
    e["diam_sq"] = to_json(b.diam_sq);
    blocks.push_back(std::move(e));
  }
  f["blocks"] = std::move(blocks);
  Json gaps = Json::array();
  for (const auto& g : m.gaps) gaps.push_back(integer_to_json(g));
  f["gaps"] = std::move(gaps);
  j["family"] = std::move(f);
  return j;
}

FamilyWindow family_from_json(const Json& j) {
  require_schema(j, "family");
  DeloneWindow w = read_point_set(j);
  return guarded([&] {
    const Json& f = field(j, "family");
    FamilyPlacement m;
    m.bits = field(f, "bits").get<std::string>();
    m.j_max = field(f, "j_max").get<std::size_t>();
    m.overrides.multiplier = integer_from_json(field(f, "multiplier"));
    if (!field(f, "copies_cap").is_null()) m.overrides.copies_cap = f.at("copies_cap").get<std::size_t>();
    if (!field(f, "nu0_cap").is_null()) m.overrides.nu0_cap = f.at("nu0_cap").get<unsigned>();
    for (const auto& e : field(f, "blocks")) {
      BlockPlacement b;
      b.j = field(e, "j").get<std::size_t>();
      b.c = rational_from_json(field(e, "c"));
      b.nu0 = field(e, "nu0").get<unsigned>();
      b.H = integer_from_json(field(e, "H"));
      b.copies = field(e, "copies").get<std::size_t>();
      b.points = field(e, "points").get<std::size_t>();
      b.exceptional = field(e, "exceptional").get<std::size_t>();
      b.box = box_from_json(field(e, "box"));
      b.diam_sq = rational_from_json(field(e, "diam_sq"));
      m.blocks.push_back(std::move(b));
    }
    for (const auto& g : field(f, "gaps")) m.gaps.push_back(integer_from_json(g));
    return FamilyWindow{std::move(w), std::move(m)};
  });
}

// -------------------------------------------------------------------- files

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << dump(j);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace delone::io
