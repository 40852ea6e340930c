#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latpatch/diagram.hpp"
#include "latpatch/error.hpp"
#include "latpatch/io.hpp"
#include "latpatch/pipeline.hpp"
#include "latpatch/structure.hpp"

namespace py = pybind11;
using namespace latpatch;

namespace {

py::dict flags_of(const Diagram& d) {
  const bool semimodular = is_semimodular(d.lattice());
  py::dict out;
  out["lattice"] = true;
  out["planar"] = !validate_diagram(d).has_value();
  out["semimodular"] = semimodular;
  out["slim"] = semimodular && is_slim(d);
  out["rectangular"] = is_rectangular(d);
  out["patch"] = semimodular && is_patch(d);
  return out;
}

py::dict witness_dict(const Lattice& l, const GluingWitness& w) {
  auto labels = [&](const ElementSet& s) {
    std::vector<std::string> out;
    for (Element e : s) out.push_back(l.name(e));
    return out;
  };
  py::dict out;
  out["ideal"] = labels(w.ideal);
  out["filter"] = labels(w.filter);
  out["chain"] = labels(w.chain);
  return out;
}

}  // namespace

PYBIND11_MODULE(_latpatch, m) {
  m.doc() = "Planar semimodular lattices and their decomposition into patch lattices";

  py::register_exception<LatticeError>(m, "LatticeError", PyExc_ValueError);

  py::class_<Diagram>(m, "Diagram")
      .def_property_readonly("size", &Diagram::size)
      .def_property_readonly("labels", [](const Diagram& d) { return d.lattice().names(); })
      .def_property_readonly("covers",
                             [](const Diagram& d) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& [a, b] : d.lattice().cover_pairs())
                                 out.emplace_back(d.lattice().name(a), d.lattice().name(b));
                               return out;
                             })
      .def("x", [](const Diagram& d, const std::string& label) {
        return format_rational(d.x(d.lattice().at(label)));
      })
      .def("height", [](const Diagram& d, const std::string& label) {
        return d.lattice().height(d.lattice().at(label));
      })
      .def("to_json", [](const Diagram& d) { return serialize(d); })
      .def("__eq__", [](const Diagram& a, const Diagram& b) { return a == b; })
      .def("__repr__", [](const Diagram& d) {
        return "<Diagram with " + std::to_string(d.size()) + " elements>";
      });

  m.def("parse_document", [](const std::string& text, std::size_t max_synth) {
    return parse_document(text, max_synth).diagram;
  }, py::arg("text"), py::arg("max_synth") = 16);
  m.def("serialize", [](const Diagram& d) { return serialize(d); });
  m.def("generate", &generate, py::arg("kind"), py::arg("params"), py::arg("seed") = 0);
  m.def("check", &flags_of);
  m.def("slim", [](const Diagram& d) {
    SlimResult r = slim(d);
    std::vector<std::string> eyes;
    for (const auto& e : r.eyes) eyes.push_back(e.label);
    return py::make_tuple(r.diagram, eyes);
  });
  m.def("rectangularize", [](const Diagram& d) {
    Rectangularization r = rectangularize(d);
    return py::make_tuple(r.diagram, r.steps.size());
  });
  m.def("decompose", [](const Diagram& d, std::size_t max_oracle, std::size_t max_synth) {
    return serialize_tree(decompose(d, PipelineOptions{max_oracle, max_synth}).tree);
  }, py::arg("diagram"), py::arg("max_oracle") = 14, py::arg("max_synth") = 16);
  m.def("sequence", [](const Diagram& d) {
    py::list out;
    for (const auto& e : sequence_of(decompose(d).tree)) {
      py::dict entry;
      entry["size"] = e.lattice.size();
      if (e.parts) entry["parts"] = py::make_tuple(e.parts->first, e.parts->second);
      else entry["parts"] = py::none();
      entry["chain_size"] = e.chain_size;
      out.append(entry);
    }
    return out;
  });
  m.def("verify", [](const std::string& tree_json, const Diagram& d) {
    return verify_tree(parse_tree(tree_json), d);
  }, "None when the tree document is a valid decomposition of the diagram, else the violation");
  m.def("oracle", [](const Diagram& d, std::size_t max_size) -> py::object {
    auto w = brute_force_gluing_search(d.lattice(), max_size);
    if (!w) return py::none();
    return witness_dict(d.lattice(), *w);
  }, py::arg("diagram"), py::arg("max_size") = 14);
  m.def("is_isomorphic", [](const Diagram& a, const Diagram& b) {
    return is_isomorphic(a.lattice(), b.lattice()).has_value();
  });
  m.def("export_dot", &export_dot);
}
