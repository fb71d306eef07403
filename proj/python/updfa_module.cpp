#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "updfa/builders.hpp"
#include "updfa/dfa.hpp"
#include "updfa/io.hpp"
#include "updfa/oracle.hpp"
#include "updfa/pascal.hpp"
#include "updfa/upcheck.hpp"

namespace py = pybind11;
using namespace updfa;

namespace {

std::vector<std::uint64_t> accepted_numbers(const Dfa& dfa, std::size_t limit) {
  Bitmap bits = accepted_bitmap(dfa, limit);
  std::vector<std::uint64_t> out;
  for (std::size_t n = 0; n < bits.size(); ++n) {
    if (bits.get(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::string> failure_strings(const UpReport& report) {
  std::vector<std::string> out;
  for (const UpFailure& f : report.failures) {
    std::ostringstream line;
    line << to_string(f.condition) << " scc=" << static_cast<std::int64_t>(
        f.scc == static_cast<std::uint32_t>(-1) ? -1 : f.scc)
         << " state=" << static_cast<std::int64_t>(
        f.state == kNoState ? -1 : f.state)
         << " digit=" << f.digit;
    if (f.reject != PascalReject::None) line << " reason=" << to_string(f.reject);
    out.push_back(line.str());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(updfa, m) {
  m.doc() =
      "Digit automata for ultimately periodic sets of numbers: Pascal\n"
      "automata, UP-set constructions, and a linear-time structural check\n"
      "deciding whether a DFA accepts an ultimately periodic set.";

  py::class_<Dfa>(m, "Dfa")
      .def(py::init([](unsigned base, State initial, std::vector<State> delta,
                       const std::vector<bool>& finals) {
             std::vector<char> f(finals.begin(), finals.end());
             return Dfa(base, initial, std::move(delta), std::move(f));
           }),
           py::arg("base"), py::arg("initial"), py::arg("delta"),
           py::arg("finals"),
           "Complete accessible DFA; delta is a flat table indexed by "
           "state*base+digit, finals a bool list per state.")
      .def_property_readonly("base", &Dfa::base)
      .def_property_readonly("state_count", &Dfa::state_count)
      .def_property_readonly("initial", &Dfa::initial)
      .def("is_final", &Dfa::is_final, py::arg("state"))
      .def("next", &Dfa::next, py::arg("state"), py::arg("digit"))
      .def("run", &Dfa::run, py::arg("state"), py::arg("word"))
      .def("accepts_word", &Dfa::accepts_word, py::arg("word"))
      .def("accepts_number", &Dfa::accepts_number, py::arg("n"))
      .def("final_states", &Dfa::final_states)
      .def("to_text", [](const Dfa& d) { return format_dfa(d); })
      .def("to_dot", [](const Dfa& d) { return to_dot(d); })
      .def_static("from_text",
                  [](const std::string& text) { return parse_dfa_string(text); },
                  py::arg("text"))
      .def("__eq__", [](const Dfa& a, const Dfa& b) { return a == b; })
      .def("__repr__", [](const Dfa& d) {
        std::ostringstream out;
        out << "Dfa(base=" << d.base() << ", states=" << d.state_count() << ")";
        return out.str();
      });

  py::class_<UpSet>(m, "UpSet")
      .def(py::init([](std::uint64_t period, std::vector<std::uint64_t> residues,
                       std::uint64_t threshold) {
             return UpSet{period, std::move(residues), threshold};
           }),
           py::arg("period"), py::arg("residues"), py::arg("threshold") = 0)
      .def_readonly("period", &UpSet::period)
      .def_readonly("residues", &UpSet::residues)
      .def_readonly("threshold", &UpSet::threshold)
      .def("contains", &UpSet::contains, py::arg("n"))
      .def("__eq__", [](const UpSet& a, const UpSet& b) { return a == b; })
      .def("__repr__", [](const UpSet& s) {
        std::ostringstream out;
        out << "UpSet(period=" << s.period << ", residues=[";
        for (std::size_t i = 0; i < s.residues.size(); ++i) {
          if (i) out << ", ";
          out << s.residues[i];
        }
        out << "], threshold=" << s.threshold << ")";
        return out.str();
      });

  py::class_<QuotientWitness>(m, "QuotientWitness")
      .def_readonly("period", &QuotientWitness::period)
      .def_readonly("residues", &QuotientWitness::residues)
      .def_readonly("s", &QuotientWitness::s)
      .def_readonly("t", &QuotientWitness::t)
      .def_readonly("marks", &QuotientWitness::marks);

  py::class_<UpReport>(m, "UpReport")
      .def_readonly("verdict", &UpReport::verdict)
      .def_property_readonly(
          "parameters",
          [](const UpReport& r) -> py::object {
            if (!r.parameters) return py::none();
            return py::cast(*r.parameters);
          })
      .def_property_readonly("failures", &failure_strings)
      .def("machine_report", [](const UpReport& r) { return render_machine(r); });

  m.def("value", &word_value, py::arg("word"), py::arg("base"),
        "Numeric value of an LSDF digit word.");
  m.def("lsdf_rep", &lsdf_rep, py::arg("n"), py::arg("base"),
        "Canonical LSDF representation (no trailing zero).");
  m.def("minimize", &minimize, py::arg("dfa"));
  m.def("canonical_form", &canonical_form, py::arg("dfa"));
  m.def("product_and", [](const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x && y; });
  });
  m.def("equivalent", &equivalent, py::arg("a"), py::arg("b"));
  m.def("is_group_automaton",
        [](const Dfa& d) { return group_permutations(d).has_value(); });

  m.def("mult_order", &mult_order, py::arg("base"), py::arg("modulus"));
  m.def("build_pascal", &build_generalized_pascal, py::arg("residues"),
        py::arg("period"), py::arg("base"),
        "Pascal automaton on (value mod period, length mod psi).");
  m.def("recognize_pascal_quotient",
        [](const Dfa& d) -> py::object {
          PascalRecognition rec = recognize_pascal_quotient(d);
          if (!rec.witness) return py::none();
          return py::cast(*rec.witness);
        },
        "Witness (period, residues, s, t, marking) if the DFA is a quotient "
        "of a Pascal automaton, else None.");
  m.def("pascal_reject_reason", [](const Dfa& d) {
    return to_string(recognize_pascal_quotient(d).reject);
  });

  m.def("crt_split", [](std::uint64_t period, unsigned base) {
    CrtSplit s = crt_split(period, base);
    return py::make_tuple(s.coprime_part, s.divisor_part, s.exponent);
  });
  m.def("divisor_tree", &divisor_tree, py::arg("d"), py::arg("base"),
        py::arg("accepted"));
  m.def("build_psa", &build_psa, py::arg("residues"), py::arg("period"),
        py::arg("base"));
  m.def("build_threshold", &build_threshold, py::arg("m"), py::arg("base"));
  m.def("build_up_automaton", &build_up_automaton, py::arg("set"),
        py::arg("base"));

  m.def("is_up", &is_up, py::arg("dfa"),
        "Minimize, then decide whether the accepted set of numbers is "
        "ultimately periodic.");
  m.def("is_up_minimal", &is_up_minimal, py::arg("dfa"),
        "Criterion check only; the input must already be minimal.");

  m.def("accepted_numbers", &accepted_numbers, py::arg("dfa"), py::arg("limit"));
  m.def("find_up_params",
        [](const std::vector<bool>& bits, std::uint64_t max_period,
           std::uint64_t max_threshold) -> py::object {
          Bitmap bm(bits.size());
          for (std::size_t i = 0; i < bits.size(); ++i) bm.set(i, bits[i]);
          auto found = find_up_params(bm, max_period, max_threshold);
          if (!found) return py::none();
          return py::cast(*found);
        },
        py::arg("bits"), py::arg("max_period"), py::arg("max_threshold"));

  m.attr("__version__") = "0.1.0";
}
