#include "itres/acceptance.hpp"
#include "itres/cli.hpp"
#include "itres/error.hpp"
#include "itres/localize.hpp"
#include "itres/mdeg.hpp"
#include "itres/multipoint.hpp"
#include "itres/residue.hpp"
#include "itres/tauint.hpp"
#include "itres/thom.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace itres;

namespace {

std::string render(const GradedPoly& p, const std::string& fmt) {
  if (fmt == "text") return to_string(p);
  if (fmt == "latex") return to_latex(p);
  if (fmt == "json") return to_json(p).dump();
  throw ValidationError("format must be text, latex or json");
}

MapGeometry geometry(int m, int n, int D) { return MapGeometry{m, n, D, std::nullopt}; }

QTable table_from(const std::optional<std::string>& qtable_json) {
  QTable t;
  if (qtable_json) t.load_json(Json::parse(*qtable_json));
  return t;
}

}  // namespace

PYBIND11_MODULE(_itres, m) {
  m.doc() = "Exact iterated residues at infinity and the formulas built on them";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<QTableExhausted>(m, "QTableExhausted", base.ptr());
  py::register_exception<InvalidForm>(m, "InvalidForm", base.ptr());

  m.def(
      "normalize", [](const std::string& text, const std::string& fmt) { return render(parse_poly(make_registry(), text), fmt); },
      py::arg("poly"), py::arg("fmt") = "text", "Parse a polynomial and print it canonically.");

  m.def(
      "multiply",
      [](const std::vector<std::string>& factors) {
        auto reg = make_registry();
        GradedPoly p(reg, Rational(1));
        for (const auto& f : factors) p *= parse_poly(reg, f);
        return to_string(p);
      },
      py::arg("factors"));

  m.def(
      "thom",
      [](int k, int mm, int n, int D, const std::string& fmt, std::optional<std::string> qtable) {
        auto reg = make_registry();
        return render(thom_polynomial_morin(reg, k, geometry(mm, n, D), table_from(qtable)), fmt);
      },
      py::arg("k"), py::arg("m"), py::arg("n"), py::arg("D") = -1, py::arg("fmt") = "text",
      py::arg("qtable") = py::none(), "Thom polynomial of A_{k-1} for maps C^m -> C^n.");

  m.def(
      "residual",
      [](int q, int mm, int n, int D, const std::string& fmt) {
        auto reg = make_registry();
        return render(residual_polynomial(reg, q, geometry(mm, n, D)), fmt);
      },
      py::arg("q"), py::arg("m"), py::arg("n"), py::arg("D") = -1, py::arg("fmt") = "text");

  m.def(
      "multipoint",
      [](int k, int mm, int n, const std::string& side, const std::string& convention) {
        auto reg = make_registry();
        if (side != "target" && side != "source") throw ValidationError("side must be target or source");
        if (convention != "sieve" && convention != "partition")
          throw ValidationError("convention must be sieve or partition");
        auto conv = convention == "sieve" ? TargetConvention::sieve : TargetConvention::partition;
        auto c = side == "target" ? multipoint_target_class(reg, k, geometry(mm, n, -1), conv)
                                  : multipoint_source_class(reg, k, geometry(mm, n, -1));
        return py::make_tuple(to_string(c), to_json(c).dump());
      },
      py::arg("k"), py::arg("m"), py::arg("n"), py::arg("side") = "target", py::arg("convention") = "sieve",
      "Returns (text, json).");

  m.def(
      "conventions_report", [](int k) { return to_string(conventions_report(k)); }, py::arg("k"));

  m.def(
      "tauint",
      [](int k, int mm, int r, int d, int D, bool equivariant, std::optional<std::vector<long>> split_model,
         std::optional<std::string> pairing_json) {
        IntegralSpec spec;
        spec.k_plus_1 = k + 1;
        spec.m = mm;
        spec.r = r;
        spec.d = d;
        spec.D = D;
        spec.mode = equivariant ? IntegralMode::equivariant : IntegralMode::absolute;
        std::unique_ptr<Pairing> pairing;
        if (split_model) pairing = std::make_unique<SplitModelPairing>(*split_model);
        if (pairing_json) pairing = std::make_unique<TablePairing>(Json::parse(*pairing_json));
        auto reg = make_registry();
        auto res = tautological_integral(reg, spec, pairing.get());
        Json j;
        j["terms"] = Json::array();
        for (const auto& t : res.terms) {
          Json e{{"sizes", t.sizes}, {"multiplicity", t.multiplicity.get_str()}, {"integrand", to_string(t.integrand)}};
          if (t.value) e["value"] = to_string(*t.value);
          j["terms"].push_back(e);
        }
        if (res.value) j["value"] = to_string(*res.value);
        j["warnings"] = res.warnings;
        return j.dump();
      },
      py::arg("k"), py::arg("m"), py::arg("r"), py::arg("d") = -1, py::arg("D") = -1, py::arg("equivariant") = false,
      py::arg("split_model") = py::none(), py::arg("pairing") = py::none(),
      "Tautological integral over k+1 points; returns a JSON string.");

  m.def(
      "multidegree",
      [](const std::vector<std::vector<int>>& gens, std::optional<std::vector<std::string>> weights) {
        auto reg = make_registry();
        if (gens.empty()) throw ValidationError("at least one generator is required");
        std::vector<GradedPoly> w;
        std::size_t n = gens.front().size();
        if (weights) {
          for (const auto& s : *weights) w.push_back(parse_poly(reg, s));
        } else {
          for (std::size_t i = 1; i <= n; ++i) w.push_back(GradedPoly::variable(reg, "eta" + std::to_string(i)));
        }
        return to_string(multidegree(MonomialIdeal(gens, w)));
      },
      py::arg("generators"), py::arg("weights") = py::none());

  m.def(
      "residue",
      [](const std::string& form_json, bool degree_shortcut) {
        auto reg = make_registry();
        ResidueOptions opts;
        opts.degree_shortcut = degree_shortcut;
        return to_string(iterated_residue(form_from_json(reg, Json::parse(form_json)), opts).value);
      },
      py::arg("form"), py::arg("degree_shortcut") = true, "Iterated residue of a rational form given as JSON.");

  m.def(
      "qtable", [](int k) { return to_string(builtin_qtable().polynomial(make_registry(), k)); }, py::arg("k"));

  m.def(
      "admissible_sequences", [](int k) { return admissible_sequences(k); }, py::arg("k"));

  m.def("selftest", [] {
    py::list out;
    for (const auto& r : run_acceptance()) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["pass"] = r.pass;
      d["detail"] = r.detail;
      d["seconds"] = r.seconds;
      out.append(d);
    }
    return out;
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command line; returns (exit code, stdout, stderr).");
}
