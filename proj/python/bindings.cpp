// Python bindings. Arbitrary-precision indices cross the boundary as Python
// ints, converted through their decimal form.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dichogen/cli.hpp"
#include "dichogen/genkernel.hpp"
#include "dichogen/genlang.hpp"
#include "dichogen/numtree.hpp"
#include "dichogen/stattests.hpp"
#include "dichogen/viz.hpp"

namespace py = pybind11;
using namespace dichogen;

namespace {

BigInt to_big(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

// Zero and Half map to the strings "0" and "1/2"; nodes to ints.
py::object to_py(const ExtNat& n) {
  if (n.is_node()) return to_py(n.value());
  return py::str(n.to_string());
}

class Generator {
 public:
  explicit Generator(lang::SpecConfig config)
      : config_(std::move(config)), spec_(lang::compile(config_)) {}

  static Generator from_builtin(const std::string& name) { return Generator(lang::builtin(name)); }
  static Generator from_file(const std::string& path) { return Generator(lang::load_spec(path)); }
  static Generator from_text(const std::string& text) {
    return Generator(lang::parse_spec_document(text));
  }

  const lang::SpecConfig& config() const { return config_; }
  const GeneratorSpec& spec() const { return spec_; }

 private:
  lang::SpecConfig config_;
  GeneratorSpec spec_;
};

py::dict result_to_dict(const stats::TestResult& r) {
  py::dict d;
  d["name"] = r.name;
  d["statistic"] = r.too_short ? py::object(py::none()) : py::object(py::float_(r.statistic));
  d["p_value"] = r.too_short ? py::object(py::none()) : py::object(py::float_(r.p_value));
  py::dict params;
  for (const auto& [k, v] : r.params) params[py::str(k)] = v;
  d["params"] = params;
  d["pass"] = r.pass;
  if (r.too_short) {
    d["too_short"] = py::dict(py::arg("required") = r.too_short->required,
                              py::arg("actual") = r.too_short->actual);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(dichogen, m) {
  m.doc() = "Dichotomic sequence generators on labeled binary trees.";

  py::register_exception<lang::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<lang::SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<lang::EvalError>(m, "EvalError", PyExc_ArithmeticError);

  py::class_<Generator>(m, "Generator")
      .def(py::init([](std::string expr, Value a, Value b, std::optional<Value> modulus) {
             lang::SpecConfig c;
             c.expr = std::move(expr);
             c.a = a;
             c.b = b;
             c.modulus = modulus;
             return Generator(std::move(c));
           }),
           py::arg("expr"), py::arg("a"), py::arg("b"), py::arg("modulus") = py::none())
      .def_static("builtin", &Generator::from_builtin, py::arg("name"))
      .def_static("from_file", &Generator::from_file, py::arg("path"))
      .def_static("from_text", &Generator::from_text, py::arg("text"))
      .def_property_readonly("expr", [](const Generator& g) { return g.config().expr; })
      .def_property_readonly("a", [](const Generator& g) { return g.config().a; })
      .def_property_readonly("b", [](const Generator& g) { return g.config().b; })
      .def("op", [](const Generator& g, Value x, Value y) { return g.spec().op(x, y); })
      .def("row", [](const Generator& g, std::int64_t k) { return row(g.spec(), k); },
           py::arg("level"))
      .def("extended_row",
           [](const Generator& g, std::int64_t k) { return extended_row(g.spec(), k); },
           py::arg("level"))
      .def(
          "access",
          [](const Generator& g, std::uint64_t k, const py::int_& i) {
            return dicho_access(g.spec(), k, to_big(i));
          },
          py::arg("level"), py::arg("index"))
      .def(
          "value",
          [](const Generator& g, const py::int_& n) {
            return eval_g(g.spec(), ExtNat::node(to_big(n)));
          },
          py::arg("n"))
      .def(
          "limit_value", [](const Generator& g, const py::int_& n) { return einf(g.spec(), to_big(n)); },
          py::arg("n"))
      .def(
          "continuativity",
          [](const Generator& g, std::int64_t depth) {
            const auto r = continuativity(g.spec(), depth);
            py::dict d;
            d["certificate"] = to_string(r.certificate);
            d["absorption"] = to_string(r.absorption);
            d["checked_level"] = r.checked_level;
            d["extended_continuative"] = r.extended_continuative;
            if (r.witness) {
              d["witness"] = py::make_tuple(r.witness->level, r.witness->index);
            } else {
              d["witness"] = py::none();
            }
            return d;
          },
          py::arg("depth") = 12)
      .def("__repr__", [](const Generator& g) {
        std::ostringstream os;
        os << "Generator(expr='" << g.config().expr << "', a=" << g.config().a
           << ", b=" << g.config().b << ")";
        return os.str();
      });

  m.def("builtins", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& info : lang::builtin_registry()) out.emplace_back(info.name, info.formula);
    return out;
  });

  m.def("parse", [](const std::string& src) { return lang::to_string(lang::parse(src)); },
        py::arg("expr"), "Parses an expression and returns its tree in constructor notation.");

  m.def("escheme_row", [](std::int64_t k) {
    py::list out;
    for (const auto& n : escheme_row(k)) out.append(to_py(n));
    return out;
  }, py::arg("level"));
  m.def("scheme_concat", [](std::size_t count) {
    py::list out;
    for (const auto& v : scheme_concat(count)) out.append(to_py(v));
    return out;
  }, py::arg("count"));
  m.def("identity_tree_value",
        [](const py::int_& n) { return to_py(identity_tree_value(ExtNat::node(to_big(n)))); },
        py::arg("n"));

  m.def("project_mod2", &stats::project_mod2, py::arg("values"));
  m.def(
      "run_battery",
      [](const Word& values, double alpha) {
        py::list out;
        for (const auto& r : stats::run_battery(values, alpha)) out.append(result_to_dict(r));
        return out;
      },
      py::arg("values"), py::arg("alpha") = stats::kDefaultAlpha);
  m.def(
      "battery_json",
      [](const Word& values, double alpha) {
        return stats::report_json(stats::run_battery(values, alpha));
      },
      py::arg("values"), py::arg("alpha") = stats::kDefaultAlpha);

  m.def("bar_svg", [](const Word& v) { return viz::bar_svg(v); }, py::arg("values"));
  m.def("dft_bar_svg", [](const Word& v) { return viz::dft_bar_svg(v); }, py::arg("values"));
  m.def("walk_svg", [](const Word& v) { return viz::walk_svg(v); }, py::arg("values"));
  m.def("scatter_svg",
        [](const std::vector<std::pair<double, double>>& p) { return viz::scatter_svg(p); },
        py::arg("points"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line front end; returns (exit_code, stdout, stderr).");
}
