#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fqg/io.hpp"
#include "fqg/moments.hpp"
#include "fqg/suites.hpp"

namespace py = pybind11;
using namespace fqg;

namespace {

py::object to_fraction(const Rational& r) { return py::module_::import("fractions").attr("Fraction")(r.str()); }

std::map<std::string, bool> report_dict(const Report& r) {
  std::map<std::string, bool> out;
  for (const auto& c : r.checks)
    if (!c.skipped) out[c.name] = c.passed;
  return out;
}

std::vector<std::pair<std::string, CycloNum>> table_rows(const MomentTable& t) {
  std::vector<std::pair<std::string, CycloNum>> rows;
  for (const auto& e : t.entries) rows.emplace_back(word_str(e.word), e.value);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_fqg, m) {
  m.doc() = "Exact computations on finite quantum groups";
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<CycloNum>(m, "Cyclo")
      .def(py::init([](std::int64_t p, std::int64_t q) { return CycloNum(Rational(p, q)); }), py::arg("p") = 0,
           py::arg("q") = 1)
      .def_static("root_of_unity", &CycloNum::root_of_unity, py::arg("m"), py::arg("e") = 1)
      .def_property_readonly("conductor", &CycloNum::conductor)
      .def("is_rational", &CycloNum::is_rational)
      .def("is_real", &CycloNum::is_real)
      .def("conj", &CycloNum::conj)
      .def("to_fraction", [](const CycloNum& x) { return to_fraction(x.to_rational()); })
      .def("__complex__", &CycloNum::embed)
      .def("__str__", &CycloNum::str)
      .def("__repr__", [](const CycloNum& x) { return "Cyclo(" + x.str() + ")"; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self);

  py::class_<AlgElement>(m, "Element")
      .def("star", &AlgElement::star)
      .def("is_normal", &AlgElement::is_normal)
      .def("is_zero", &AlgElement::is_zero)
      .def("coeff", &AlgElement::coeff)
      .def("__str__", &AlgElement::str)
      .def("__repr__", [](const AlgElement& a) { return "Element(" + a.str() + ")"; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self * CycloNum())
      .def(CycloNum() * py::self)
      .def(py::self == py::self);

  py::class_<QuantumGroup>(m, "QuantumGroup")
      .def_property_readonly("name", &QuantumGroup::name)
      .def_property_readonly("dim", &QuantumGroup::dim)
      .def("basis", [](const QuantumGroup& G, Index i) { return AlgElement::basis(G.algebra(), i); })
      .def("unit", [](const QuantumGroup& G) { return AlgElement::unit(G.algebra()); })
      .def("labels", [](const QuantumGroup& G) { return G.algebra().labels(); })
      .def("haar", &QuantumGroup::haar)
      .def("counit", &QuantumGroup::counit)
      .def("antipode", &QuantumGroup::antipode)
      .def("verify", [](const QuantumGroup& G) { return report_dict(verify_hopf(G)); })
      .def("verify_haar", [](const QuantumGroup& G) { return report_dict(verify_haar(G)); })
      .def("is_cocommutative", &verify_cocommutative)
      .def("to_json", [](const QuantumGroup& G) { return group_to_json(G).dump(2); });

  m.def("kp", &build_kp);
  m.def("sekine", &build_sekine, py::arg("n"));
  m.def("dual", &dual, py::arg("group"));
  m.def("dual_sekine", [](Index n) { return dual(build_sekine(n)); }, py::arg("n"));
  m.def("from_json", [](const std::string& s) {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw FormatError(e.what());
    }
    return group_from_json(j);
  });
  m.def("load", &load_group_file, py::arg("path"));

  py::class_<Corep>(m, "Corep")
      .def_readonly("label", &Corep::label)
      .def_readonly("d", &Corep::d)
      .def("__getitem__", [](const Corep& U, std::pair<std::size_t, std::size_t> ij) {
        if (ij.first >= U.d || ij.second >= U.d) throw py::index_error("entry out of range");
        return U(ij.first, ij.second);
      })
      .def("power", [](const Corep& U, unsigned k) { return corep_power(U, k); })
      .def("character", &corep_trace)
      .def("is_unitary", &is_unitary)
      .def("is_irreducible", &is_irreducible)
      .def("__repr__", [](const Corep& U) { return "Corep(" + U.label + ", d=" + std::to_string(U.d) + ")"; });

  m.def("irreps", [](const QuantumGroup& G) { return irrep_catalog(G).irreps; });
  m.def("is_corep", [](const QuantumGroup& G, const Corep& U) { return is_corep(G, U).ok(); });
  m.def("kp_fundamental", &kp_fundamental, py::arg("group"), py::arg("a") = 1, py::arg("j") = 1);
  m.def("sekine_fundamental", [](const QuantumGroup& G, std::int64_t u, std::int64_t v) { return sekine_two_dim(G, u, v); },
        py::arg("group"), py::arg("u"), py::arg("v"));
  m.def("dual_fundamental", &dual_fundamental);

  m.def("star_moments",
        [](const QuantumGroup& G, const AlgElement& a, unsigned max_order) {
          return table_rows(star_moments(G, a, max_order));
        },
        py::arg("group"), py::arg("element"), py::arg("max_order") = 8, py::call_guard<py::gil_scoped_release>());
  m.def("joint_moment", &joint_moment);
  m.def("cumulant", [](const QuantumGroup& G, const std::vector<AlgElement>& xs) { return cumulant(G, xs); });
  m.def("kp_joint_closed_form", [](const std::vector<unsigned>& ks) { return to_fraction(closed_form_kp_joint(ks)); });
  m.def("dual_moments", [](Index n, const std::vector<unsigned>& ks, bool derived) {
    return to_fraction(derived ? closed_form_dual_moments_derived(n, ks) : closed_form_dual_moments(n, ks));
  }, py::arg("n"), py::arg("ks"), py::arg("derived") = true);

  m.def("criterion_count", [] { return suites::kCriterionCount; });
  m.def("theorem_ids", &suites::theorem_ids);
  m.def("run_criterion",
        [](int c) {
          suites::Outcome o;
          {
            py::gil_scoped_release release;
            o = suites::run_criterion(c);
          }
          py::dict d;
          d["criterion"] = o.criterion;
          d["title"] = o.title;
          d["passed"] = o.passed;
          d["summary"] = o.summary;
          d["details"] = o.details;
          d["seconds"] = o.seconds;
          return d;
        },
        py::arg("criterion"));
}
