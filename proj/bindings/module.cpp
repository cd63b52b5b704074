#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pedcomb/counterexample.hpp"
#include "pedcomb/enumeration.hpp"
#include "pedcomb/io.hpp"
#include "pedcomb/isomorphism.hpp"
#include "pedcomb/pedigree.hpp"
#include "pedcomb/reconstruction.hpp"

namespace py = pybind11;
using namespace pedcomb;

namespace {

// Pedigrees cross the boundary as JSON text; the python package wraps them
// in dicts.
Pedigree parse(const std::string& text) { return pedigree_from_json(text); }

std::map<int, std::vector<int>> to_ordering_map(const py::dict& orderings) {
  std::map<int, std::vector<int>> out;
  for (auto item : orderings)
    out[item.first.cast<int>()] = item.second.cast<std::vector<int>>();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "pedigree reconstruction and enumeration core";

  py::register_exception<ResourceLimitError>(m, "ResourceLimitError");

  m.def("validate", [](const std::string& text) {
    parse(text);  // throws with the issue list on invalid input
    return true;
  });

  m.def("canonical_code", [](const std::string& text) {
    return canonical_code(parse(text)).hex();
  });

  m.def("sub_pedigree", [](const std::string& text, const std::vector<std::string>& keep) {
    return pedigree_to_json(sub_pedigree(parse(text), keep));
  });

  m.def("to_dot", [](const std::string& text) { return pedigree_to_dot(parse(text)); });

  m.def("find_isomorphism",
        [](const std::string& a, const std::string& b) -> py::object {
          auto iso = find_isomorphism(parse(a), parse(b));
          if (!iso) return py::none();
          py::dict out;
          for (auto [from, to] : iso->map) out[py::int_(from)] = py::int_(to);
          return out;
        });

  m.def("are_r_hypomorphic", [](const std::string& a, const std::string& b, int r) {
    return are_r_hypomorphic(parse(a), parse(b), r);
  });

  m.def("deck", [](const std::string& text, int r) {
    return deck_to_json(deck(parse(text), r));
  });

  m.def(
      "build_counterexample",
      [](int n, const py::dict& orderings, bool genderized) {
        CounterexampleOptions opt;
        opt.orderings = to_ordering_map(orderings);
        CounterexamplePair pair = build_counterexample(n, opt);
        Pedigree t = genderized ? genderize(pair.t) : pair.t;
        Pedigree u = genderized ? genderize(pair.u) : pair.u;
        return py::make_tuple(pedigree_to_json(t), pedigree_to_json(u));
      },
      py::arg("n"), py::arg("orderings") = py::dict(), py::arg("genderized") = false);

  m.def("genderize",
        [](const std::string& text) { return pedigree_to_json(genderize(parse(text))); });

  m.def("full_deck", [](const std::string& text) {
    return cards_to_json(full_deck(parse(text)));
  });

  m.def("reconstruct", [](const std::string& cards_text) {
    ReconOutcome out = reconstruct(cards_from_json(cards_text));
    py::dict result;
    result["status"] = to_string(out.status);
    result["note"] = out.note;
    result["pedigree"] =
        out.pedigree ? py::object(py::str(pedigree_to_json(*out.pedigree))) : py::none();
    return result;
  });

  m.def(
      "probe",
      [](const std::string& text, int r, int max_vertices) {
        ProbeResult res = brute_reconstructibility(parse(text), r, max_vertices);
        py::dict out;
        out["reconstructible"] = res.reconstructible;
        out["examined"] = res.examined;
        out["counterpart"] = res.counterpart
                                 ? py::object(py::str(pedigree_to_json(*res.counterpart)))
                                 : py::none();
        return out;
      },
      py::arg("pedigree"), py::arg("r"), py::arg("max_vertices"));

  m.def("stirling2", [](int n, int k) { return stirling2(n, k).convert_to<std::string>(); });

  m.def(
      "bounds",
      [](const std::string& model, int n, int d, int t) {
        py::dict out;
        std::optional<BigRat> lower;
        BigInt upper;
        if (model == "discrete") {
          auto b = bounds_N(n, d);
          lower = b.lower;
          upper = b.upper;
        } else if (model == "general") {
          auto b = bounds_M(n, d);
          lower = b.lower;
          upper = b.upper;
        } else if (model == "gap") {
          lower = bounded_gap_lower_M(n, d, t);
          upper = bounds_M(n, d).upper;
        } else {
          throw std::invalid_argument("model must be discrete, general or gap");
        }
        if (lower) {
          BigInt num = boost::multiprecision::numerator(*lower);
          BigInt den = boost::multiprecision::denominator(*lower);
          std::string text = num.convert_to<std::string>();
          if (den != 1) text += "/" + den.convert_to<std::string>();
          out["lower"] = text;
          out["site_bound"] = site_bound(*lower, n);
        } else {
          out["lower"] = py::none();
          out["site_bound"] = py::none();
        }
        out["upper"] = upper.convert_to<std::string>();
        return out;
      },
      py::arg("model"), py::arg("n"), py::arg("d"), py::arg("t") = 0);

  m.def(
      "census",
      [](int n, int d, bool strict) {
        return brute_count_N(n, d, strict).convert_to<std::string>();
      },
      py::arg("n"), py::arg("d"), py::arg("strict_population") = false);
}
