// Python module. Documents cross the boundary as plain dicts/lists through the
// json module; the C++ side works on nlohmann::json.

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "roumieu/cli.hpp"
#include "roumieu/error.hpp"
#include "roumieu/sequences.hpp"
#include "roumieu/symbol_analysis.hpp"
#include "roumieu/symbols.hpp"
#include "roumieu/verify.hpp"
#include "roumieu/weights.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace roumieu;

namespace {

json to_cpp(const py::object& obj) {
  const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return json::parse(text);
}

py::object to_py(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

RayConfig rays_from(const py::object& obj) {
  return obj.is_none() ? RayConfig{} : ray_config_from_json(to_cpp(obj));
}

RoumieuSequence sequence_from(const py::object& obj) {
  if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj))
    return RoumieuSequence::gevrey(obj.cast<double>());
  return RoumieuSequence::table(obj.cast<std::vector<double>>());
}

}  // namespace

PYBIND11_MODULE(_roumieu, m) {
  m.doc() = "Symbol calculus, hypoellipticity analysis, Roumieu sequences and estimate checks";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed", PyExc_RuntimeError);

  m.def(
      "p_tilde",
      [](const py::object& symbol, const std::vector<double>& xi) { return p_tilde(symbol_from_json(to_cpp(symbol)), xi); },
      py::arg("symbol"), py::arg("xi"), "Strength function: square root of the sum of |D^a Q(xi)|^2.");

  m.def(
      "evaluate",
      [](const py::object& symbol, const std::vector<double>& xi) { return eval(symbol_from_json(to_cpp(symbol)), xi); },
      py::arg("symbol"), py::arg("xi"));

  m.def(
      "estimate_d",
      [](const py::object& symbol, const py::object& rays) {
        return to_py(to_json(estimate_d(symbol_from_json(to_cpp(symbol)), rays_from(rays))));
      },
      py::arg("symbol"), py::arg("rays") = py::none(), "Estimate the hypoellipticity exponent d.");

  m.def(
      "check_hypoelliptic",
      [](const py::object& symbol, double d, const py::object& rays) {
        return to_py(to_json(check_hypoelliptic(symbol_from_json(to_cpp(symbol)), d, rays_from(rays))));
      },
      py::arg("symbol"), py::arg("d"), py::arg("rays") = py::none());

  m.def(
      "equally_strong",
      [](const py::object& p, const py::object& q, const py::object& rays) {
        return to_py(
            to_json(equally_strong(symbol_from_json(to_cpp(p)), symbol_from_json(to_cpp(q)), rays_from(rays))));
      },
      py::arg("p"), py::arg("q"), py::arg("rays") = py::none());

  m.def(
      "check_constant_strength",
      [](const py::object& op, int points, const py::object& rays) {
        return to_py(to_json(check_constant_strength(variable_from_json(to_cpp(op)), rays_from(rays), points)));
      },
      py::arg("operator"), py::arg("points") = 3, py::arg("rays") = py::none());

  m.def(
      "check_sequence",
      [](const py::object& seq, std::int64_t pmax) { return to_py(to_json(check_basic(sequence_from(seq), pmax))); },
      py::arg("sequence"), py::arg("pmax") = 60,
      "Condition checks for a Gevrey order (number) or a table of values (list).");

  m.def(
      "fit_power_bound",
      [](const py::object& seq, std::int64_t mu, std::int64_t nu, std::int64_t pmax) {
        return fit_power_bound(sequence_from(seq), mu, nu, pmax);
      },
      py::arg("sequence"), py::arg("mu"), py::arg("nu") = 1, py::arg("pmax") = 60);

  m.def(
      "fit_inclusion",
      [](const py::object& a, const py::object& b, std::int64_t pmax) {
        return to_py(to_json(fit_inclusion(sequence_from(a), sequence_from(b), pmax)));
      },
      py::arg("m"), py::arg("n"), py::arg("pmax") = 60);

  m.def(
      "check_weight_sandwich",
      [](const py::object& symbol, double delta, int j) {
        const auto h = symbol.is_none() ? WeightFunction::one_plus_norm(2)
                                        : WeightFunction::p_tilde_of(symbol_from_json(to_cpp(symbol)));
        return to_py(to_json(verify_lemma1(h, delta, j)));
      },
      py::arg("symbol"), py::arg("delta"), py::arg("j") = 2,
      "Ball-sup sandwich and power identity for the strength weight of a symbol (None: 1 + |xi| in 2D).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one command line; returns (exit code, stdout, stderr).");
}
