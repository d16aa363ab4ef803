#include "delone/distortion.hpp"
#include "delone/error.hpp"
#include "delone/hierarchy.hpp"
#include "delone/io.hpp"
#include "delone/partition.hpp"
#include "delone/tiling.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace delone;

// Rational <-> fractions.Fraction (ints and "p/q" strings are accepted on input).
namespace pybind11::detail {

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = parse_rational(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::float_>(src)) return false;
      py::object frac = py::module_::import("fractions").attr("Fraction")(src);
      const std::string num = py::str(frac.attr("numerator")).cast<std::string>();
      const std::string den = py::str(frac.attr("denominator")).cast<std::string>();
      value = Rational(Integer(num), Integer(den));
      return true;
    } catch (const std::exception&) {
      PyErr_Clear();
      return false;
    }
  }

  static handle cast(const Rational& q, return_value_policy, handle) {
    py::object num = py::int_(py::str(numerator_of(q).str()));
    py::object den = py::int_(py::str(denominator_of(q).str()));
    return py::module_::import("fractions").attr("Fraction")(num, den).release();
  }
};

template <>
struct type_caster<RationalVec> {
  PYBIND11_TYPE_CASTER(RationalVec, const_name("list[fractions.Fraction]"));

  bool load(handle src, bool convert) {
    if (!py::isinstance<py::sequence>(src) || py::isinstance<py::str>(src)) return false;
    std::vector<Rational> coords;
    for (auto item : py::reinterpret_borrow<py::sequence>(src)) {
      make_caster<Rational> c;
      if (!c.load(item, convert)) return false;
      coords.push_back(cast_op<Rational&&>(std::move(c)));
    }
    value = RationalVec(std::move(coords));
    return true;
  }

  static handle cast(const RationalVec& v, return_value_policy policy, handle parent) {
    py::list out;
    for (const auto& c : v) {
      out.append(py::reinterpret_steal<py::object>(make_caster<Rational>::cast(c, policy, parent)));
    }
    return out.release();
  }
};

}  // namespace pybind11::detail

namespace {

py::dict params_dict(const ConstructionParams& p) {
  py::dict d;
  d["dim"] = p.dim;
  d["lambda"] = p.lambda;
  d["c"] = p.c;
  d["a"] = p.a;
  d["k"] = p.k;
  d["epsilon"] = p.epsilon;
  d["M"] = p.M;
  d["N"] = p.N;
  d["H"] = py::int_(py::str(p.H.str()));
  d["nu0"] = p.nu0;
  return d;
}

ParamRequest make_request(std::size_t dim, const Rational& lambda, const Rational& c, const Rational& k,
                          long M_min, long N_min, long H_min) {
  ParamRequest r;
  r.dim = dim;
  r.lambda = lambda;
  r.c = c;
  r.k = k;
  r.M_min = M_min;
  r.N_min = N_min;
  r.H_min = H_min;
  return r;
}

DeloneWindow make_window(const std::vector<RationalVec>& points, const RationalVec& lo,
                         const std::vector<Rational>& edges, const std::string& fill,
                         const std::vector<std::pair<RationalVec, std::vector<Rational>>>& blocks) {
  std::vector<Box> bx;
  for (const auto& [m, e] : blocks) bx.emplace_back(m, e);
  return DeloneWindow(lo.dim(), points, Box(lo, edges), fill == "zd" ? Fill::IntegerLattice : Fill::None,
                      std::move(bx));
}

py::dict family_dict(const FamilyWindow& fw) {
  py::dict d;
  d["points"] = fw.window.points().size();
  py::list gaps;
  for (const auto& g : fw.placement.gaps) gaps.append(py::int_(py::str(g.str())));
  d["gaps"] = gaps;
  py::list blocks;
  for (const auto& b : fw.placement.blocks) {
    py::dict e;
    e["j"] = b.j;
    e["c"] = b.c;
    e["copies"] = b.copies;
    e["points"] = b.points;
    e["exceptional"] = b.exceptional;
    e["diam_sq"] = b.diam_sq;
    e["corner"] = b.box.min_corner();
    blocks.append(e);
  }
  d["blocks"] = blocks;
  d["json"] = io::dump(io::family_to_json(fw));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Delone set constructions and checks";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("squared_distance", &squared_distance, py::arg("a"), py::arg("b"));
  m.def("diameter_squared", [](const std::vector<RationalVec>& pts) { return diameter_squared(pts); },
        py::arg("points"));

  py::class_<DeloneWindow>(m, "DeloneWindow")
      .def(py::init(&make_window), py::arg("points"), py::arg("min_corner"), py::arg("edges"),
           py::arg("fill") = "none",
           py::arg("blocks") = std::vector<std::pair<RationalVec, std::vector<Rational>>>{})
      .def_property_readonly("dim", &DeloneWindow::dim)
      .def_property_readonly("points", &DeloneWindow::points)
      .def("contains", &DeloneWindow::contains, py::arg("x"))
      .def("__len__", [](const DeloneWindow& w) { return w.points().size(); });

  m.def("packing_radius_sq", [](const DeloneWindow& w) { return packing_radius(w).radius_sq; }, py::arg("w"));
  m.def(
      "covering_radius_sq",
      [](const DeloneWindow& w, const RationalVec& lo, const std::vector<Rational>& edges) {
        return covering_radius(w, Box(lo, edges)).radius_sq;
      },
      py::arg("w"), py::arg("min_corner"), py::arg("edges"));
  m.def(
      "is_delone",
      [](const DeloneWindow& w, const Rational& r, const Rational& R2) {
        const DeloneReport d = is_delone(w, r, R2, w.window());
        py::dict out;
        out["holds"] = d.holds;
        out["min_distance_sq"] = d.min_distance_sq;
        out["covering_radius_sq"] = d.covering_radius_sq;
        return out;
      },
      py::arg("w"), py::arg("r"), py::arg("R2"), "Delone check over the whole window");

  m.def(
      "distortion",
      [](const std::vector<RationalVec>& src, const std::vector<RationalVec>& dst) {
        const DistortionReport r = distortion(Bijection(src, dst));
        py::dict out;
        out["lambda_squared"] = r.lambda_squared;
        out["witness_expand"] = r.witness_expand;
        out["witness_contract"] = r.witness_contract;
        return out;
      },
      py::arg("source"), py::arg("target"));
  m.def(
      "min_distortion",
      [](const std::vector<RationalVec>& A, const std::vector<RationalVec>& B, std::size_t cap) {
        const MinDistortion r = min_distortion_bruteforce(A, B, cap);
        py::dict out;
        out["lambda_squared"] = r.report.lambda_squared;
        out["permutation"] = r.permutation;
        return out;
      },
      py::arg("A"), py::arg("B"), py::arg("cap") = 9);

  m.def(
      "latticize",
      [](const DeloneWindow& w) {
        const LatticeResult r = latticize(w);
        py::dict out;
        out["sigma"] = py::int_(py::str(r.sigma.str()));
        out["points"] = r.pairing.target();
        if (r.distortion) out["lambda_squared"] = r.distortion->lambda_squared;
        return out;
      },
      py::arg("w"));

  m.def(
      "build_block",
      [](std::size_t dim, const Rational& lambda, const Rational& c, const Rational& k, long M_min, long N_min,
         long H_min) {
        const Block b = realize_block(derive_params(make_request(dim, lambda, c, k, M_min, N_min, H_min)));
        py::dict out;
        out["params"] = params_dict(b.params);
        out["points"] = b.set.points().points();
        out["exceptional"] = b.set.exceptional_count();
        py::list counting;
        for (const auto& lv : counting_ratios(b)) counting.append(py::make_tuple(lv.level, lv.min_ratio, lv.holds));
        out["counting"] = counting;
        out["tiling_json"] = io::dump(io::tiling_to_json(b.set.tiling()));
        return out;
      },
      py::arg("dim") = 2, py::arg("lambda_") = 1, py::arg("c") = 2, py::arg("k") = 1, py::arg("M_min") = 2,
      py::arg("N_min") = 1, py::arg("H_min") = 1);
  m.def(
      "stack_counts",
      [](std::size_t j, std::size_t dim, const Rational& lambda, const Rational& c, const Rational& k) {
        const Block b = realize_block(derive_params(make_request(dim, lambda, c, k, 2, 1, 1)));
        const Stack s = stack_blocks(b, j);
        return py::make_tuple(s.set.size(), s.set.exceptional_count());
      },
      py::arg("j"), py::arg("dim") = 2, py::arg("lambda_") = 1, py::arg("c") = 2, py::arg("k") = 1,
      "(points, exceptional) of a j-fold stack");

  m.def(
      "build_family",
      [](const std::string& bits, bool toy, std::size_t dim) {
        return family_dict(
            build_family_window({bits, 0, dim}, toy ? FamilyOverrides::toy() : FamilyOverrides{}));
      },
      py::arg("bits"), py::arg("toy") = true, py::arg("dim") = 2);
  m.def(
      "separation_witness",
      [](const std::string& alpha, const std::string& beta, std::size_t j, const Rational& lambda, bool toy) {
        const FamilyOverrides o = toy ? FamilyOverrides::toy() : FamilyOverrides{};
        const SeparationReport r =
            separation_witness(build_family_window({alpha, 0, 2}, o), build_family_window({beta, 0, 2}, o), j, lambda);
        py::dict out;
        out["separated"] = r.verdict == SeparationVerdict::Separated;
        out["ratio"] = r.ratio;
        out["threshold"] = r.threshold;
        out["gap_alpha"] = py::int_(py::str(r.gap_alpha.str()));
        out["gap_beta"] = py::int_(py::str(r.gap_beta.str()));
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("j") = 1, py::arg("lambda_") = 1, py::arg("toy") = true);

  m.def(
      "analyze_dichotomy",
      [](long M, long N, const std::string& kind, const Rational& param, long slab, const Rational& k,
         const Rational& eps, const Rational& a) {
        GridSpec g{2, M, N};
        GridMap f = identity_map();
        if (kind == "homothety") f = homothety_map(param);
        else if (kind == "shear") f = slab_shear_map(g, slab, RationalVec::unit(2, 0, param));
        else if (kind != "identity") throw InvalidArgument("map must be identity, homothety or shear");
        const DichotomyReport r = analyze_dichotomy(g, f, k, eps, a);
        py::dict out;
        out["verdict"] = r.verdict == DichotomyVerdict::Case1   ? "case1"
                         : r.verdict == DichotomyVerdict::Case2 ? "case2"
                                                                : "neither";
        out["counts"] = r.counts;
        out["required"] = r.required;
        return out;
      },
      py::arg("M"), py::arg("N"), py::arg("map") = "identity", py::arg("param") = 1, py::arg("slab") = 0,
      py::arg("k") = Rational(1, 10), py::arg("epsilon") = Rational(1, 100), py::arg("a") = Rational(5, 6));

  py::class_<VoxelPartition>(m, "VoxelPartition")
      .def(py::init<std::vector<long>, std::string>(), py::arg("resolution"), py::arg("labels"))
      .def_property_readonly("resolution", &VoxelPartition::resolution)
      .def_property_readonly("labels", &VoxelPartition::labels)
      .def("volume", [](const VoxelPartition& vp, const std::string& l) {
        return volume(vp, l == "P" ? Label::P : Label::Q);
      }, py::arg("label"))
      .def("shared_boundary_area", &shared_boundary_area)
      .def("refined", &VoxelPartition::refined)
      .def("lemma5", [](const VoxelPartition& vp, const Rational& alpha) {
        const Lemma5Report r = lemma5_check(vp, alpha);
        py::dict out;
        out["status"] = r.status == Lemma5Status::Holds   ? "holds"
                        : r.status == Lemma5Status::Fails ? "fails"
                                                          : "not_applicable";
        out["lhs"] = r.lhs;
        out["rhs"] = r.rhs;
        return out;
      }, py::arg("alpha"));

  m.def(
      "cube_union_surface",
      [](const std::vector<std::pair<RationalVec, Rational>>& cubes) {
        std::vector<Box> bx;
        for (const auto& [lo, e] : cubes) bx.push_back(Box::cube(lo, e));
        return cube_union_surface(bx);
      },
      py::arg("cubes"), "Cubes given as (min_corner, edge) pairs");
  m.def("alignment_scale_s_sq", &alignment_scale_s_sq, py::arg("epsilon"), py::arg("M"), py::arg("dist_sq"));
}
