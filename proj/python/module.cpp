#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kuperberg/catalog.hpp"
#include "kuperberg/error.hpp"
#include "kuperberg/evaluator.hpp"
#include "kuperberg/heegaard.hpp"
#include "kuperberg/hopf_io.hpp"
#include "kuperberg/twist.hpp"

namespace py = pybind11;
using namespace kuperberg;

namespace {

// Scalars cross the boundary as their canonical text ("-1/2", "3 mod 7", "[1,0] zeta 3").
std::vector<std::string> vector_text(const Vector& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

py::list report_list(const Report& r) {
  py::list out;
  for (const auto& c : r.checks()) out.append(py::make_tuple(c.name, c.passed, c.witness));
  return out;
}

EvaluateOptions options(long degree, const std::string& convention, std::optional<std::uint64_t> budget) {
  EvaluateOptions o;
  o.degree_offset = degree;
  o.convention = parse_convention(convention);
  if (budget) o.budget = *budget;
  return o;
}

py::dict result_dict(const InvariantResult& r) {
  py::dict d;
  d["value"] = r.value.to_string();
  d["algebra"] = r.algebra;
  d["diagram"] = r.diagram;
  d["degree_offset"] = r.degree_offset;
  d["convention"] = std::string(to_string(r.convention));
  d["max_intermediate"] = r.stats.max_intermediate;
  d["join_pairs"] = r.stats.join_pairs;
  d["steps"] = r.stats.steps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Hopf algebra computations and Kuperberg invariants";

  // The exception type lives as long as the module; keep a borrowed pointer for the translator.
  static PyObject* error_type = py::exception<Error>(m, "KuperbergError").ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(e.what()));
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<HopfAlgebra>(m, "HopfAlgebra")
      .def_property_readonly("name", &HopfAlgebra::name)
      .def_property_readonly("dim", &HopfAlgebra::dim)
      .def_property_readonly("field", [](const HopfAlgebra& H) { return H.field().to_string(); })
      .def_property_readonly("basis", &HopfAlgebra::basis_labels)
      .def("check_axioms", [](const HopfAlgebra& H) { return report_list(check_hopf_axioms(H)); })
      .def("serialize", &serialize_hopf)
      .def("__repr__", [](const HopfAlgebra& H) {
        return "<HopfAlgebra " + H.name() + " dim " + std::to_string(H.dim()) + " over " + H.field().to_string() + ">";
      });

  m.def(
      "catalog",
      [](const std::string& name, std::optional<std::string> field, bool allow_degenerate) {
        CatalogOptions o;
        if (field) o.field = Field::parse(*field);
        o.allow_degenerate = allow_degenerate;
        return catalog(name, o);
      },
      py::arg("name"), py::arg("field") = py::none(), py::arg("allow_degenerate") = false);
  m.def("catalog_names", &catalog_names);
  m.def("parse_hopf", &parse_hopf, py::arg("text"), py::arg("verify") = true);
  m.def("load_hopf", &load_hopf, py::arg("path"), py::arg("verify") = true);

  m.def("integrals", [](const HopfAlgebra& H) {
    const IntegralPair P = compute_integrals(H);
    py::dict d;
    d["Lambda"] = vector_text(P.Lambda);
    d["lambda"] = vector_text(P.lambda);
    d["g"] = vector_text(P.g);
    d["alpha"] = vector_text(P.alpha);
    d["alpha_g"] = dot(P.alpha, P.g).to_string();
    d["checks"] = report_list(check_integrals(H, P));
    return d;
  });

  py::class_<FramedHeegaardDiagram>(m, "Diagram")
      .def_readonly("name", &FramedHeegaardDiagram::name)
      .def_readonly("genus", &FramedHeegaardDiagram::genus)
      .def_property_readonly("points",
                             [](const FramedHeegaardDiagram& d) {
                               std::vector<std::string> ids;
                               for (const auto& p : d.points) ids.push_back(p.id);
                               return ids;
                             })
      .def("serialize", &serialize_khd)
      .def("validate", [](const FramedHeegaardDiagram& d) { return report_list(validate(d)); })
      .def("exponents", [](const FramedHeegaardDiagram& d) {
        std::vector<std::tuple<std::string, long, long>> out;
        for (const auto& e : rotation_exponents(d)) out.emplace_back(e.point, e.s, e.t);
        return out;
      });
  m.def("builtin_diagram", [](const std::string& name) { return builtin_diagram(name); });
  m.def("builtin_diagram_names", &builtin_diagram_names);
  m.def("parse_khd", [](const std::string& text) { return parse_khd(text); });
  m.def("load_khd", &load_khd);

  m.def(
      "evaluate",
      [](const HopfAlgebra& H, const FramedHeegaardDiagram& d, long degree, const std::string& convention,
         std::optional<std::uint64_t> budget, bool naive) {
        const IntegralPair P = compute_integrals(H);
        const EvaluateOptions o = options(degree, convention, budget);
        return result_dict(naive ? evaluate_naive(H, P, d, o) : evaluate(H, P, d, o));
      },
      py::arg("algebra"), py::arg("diagram"), py::arg("degree_offset") = 0, py::arg("convention") = "g-action",
      py::arg("budget") = py::none(), py::arg("naive") = false);
  m.def("weeks_closed_form", [](const HopfAlgebra& H) { return weeks_closed_form(H, compute_integrals(H)).to_string(); });
  m.def("torus_closed_form", [](const HopfAlgebra& H) { return torus_closed_form(H, compute_integrals(H)).to_string(); });

  py::class_<Cocycle>(m, "Cocycle").def_property_readonly("terms", [](const Cocycle& c) { return c.F.size(); });
  m.def("load_cocycle", [](const std::string& path, const HopfAlgebra& H) { return verify_cocycle(H, load_cocycle(path, H)); });
  m.def("parse_cocycle", [](const std::string& text, const HopfAlgebra& H) { return verify_cocycle(H, parse_cocycle(text, H)); });
  m.def("idempotent_cocycle", [](const HopfAlgebra& H, std::size_t g, long c) {
    return verify_cocycle(H, idempotent_cocycle(H, H.basis_vector(g), H.scalar(c)));
  }, py::arg("algebra"), py::arg("grouplike_index"), py::arg("c"));
  m.def(
      "gauge_check",
      [](const HopfAlgebra& H, const Cocycle& C, const FramedHeegaardDiagram& d, const std::string& convention) {
        const GaugeResult g = gauge_check(H, compute_integrals(H), C, d, options(0, convention, std::nullopt));
        py::dict out;
        out["equal"] = g.equal;
        out["z"] = g.z.to_string();
        out["z_twisted"] = g.z_twisted.to_string();
        return out;
      },
      py::arg("algebra"), py::arg("cocycle"), py::arg("diagram"), py::arg("convention") = "g-action");

  m.def(
      "trace_identity_suite",
      [](const HopfAlgebra& H, int trials, std::uint64_t seed) {
        return report_list(trace_identity_suite(H, compute_integrals(H), trials, seed));
      },
      py::arg("algebra"), py::arg("trials") = 10, py::arg("seed") = 1);
  m.def(
      "exchange_identity_suite",
      [](const HopfAlgebra& H, int trials, std::uint64_t seed) {
        return report_list(lemma_suite(H, compute_integrals(H), trials, seed));
      },
      py::arg("algebra"), py::arg("trials") = 10, py::arg("seed") = 1);
  m.def(
      "cocycle_identity_suite",
      [](const HopfAlgebra& H, const Cocycle& C, std::size_t n_max, int trials, std::uint64_t seed) {
        return report_list(prop22_suite(H, compute_integrals(H), C, n_max, trials, seed));
      },
      py::arg("algebra"), py::arg("cocycle"), py::arg("n_max") = 4, py::arg("trials") = 10, py::arg("seed") = 1);
}
