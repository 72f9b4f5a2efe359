#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlab/io.hpp"

namespace py = pybind11;
using namespace mlab;
using io::json;

namespace {

json parse(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

json verdict(const algcore::Verdict& v) { return json{{"ok", v.ok}, {"failure", v.failure}}; }

template <class Fn>
json checked(Fn&& fn) {
  try {
    fn();
    return json{{"ok", true}, {"failure", ""}};
  } catch (const CheckFailure& e) {
    return json{{"ok", false}, {"failure", e.what()}};
  }
}

std::string check(const std::string& doc, const std::string& base) {
  const json j = parse(doc);
  const std::string kind = j.value("kind", std::string());
  json out;
  if (kind == "algebra") out = checked([&] { algcore::check_algebra(io::algebra_from_json(j, base)); });
  else if (kind == "coalgebra") out = checked([&] { algcore::check_coalgebra(io::coalgebra_from_json(j, base)); });
  else if (kind == "module") out = checked([&] { modcomod::check_module(io::module_from_json(j, base)); });
  else if (kind == "comodule") out = checked([&] { modcomod::check_comodule(io::comodule_from_json(j, base)); });
  else if (kind == "bimonoid") out = checked([&] { hopf::check_bimonoid(io::bimonoid_from_json(j, base)); });
  else if (kind == "module_comonoid")
    out = checked([&] { hopf::check_module_comonoid(io::module_comonoid_from_json(j, base)); });
  else if (kind == "comodule_monoid")
    out = checked([&] { hopf::check_comodule_monoid(io::comodule_monoid_from_json(j, base)); });
  else if (kind == "hopf_module") out = checked([&] { hopf::check_hopf_module(io::hopf_module_from_json(j, base)); });
  else if (kind == "module_monoid")
    out = checked([&] { hopf::check_module_monoid(io::module_monoid_from_json(j, base)); });
  else if (kind == "measuring") out = verdict(measuring::verify_measuring(io::measuring_from_json(j, base)));
  else throw SchemaError("check: unsupported kind '" + kind + "'");
  out["kind"] = kind;
  return out.dump();
}

std::string dual(const std::string& doc) {
  const json j = parse(doc);
  const std::string kind = j.value("kind", std::string());
  if (kind == "algebra") return io::to_json(algcore::dual_coalgebra(algcore::check_algebra(io::algebra_from_json(j)))).dump();
  if (kind == "coalgebra")
    return io::to_json(algcore::dual_algebra(algcore::check_coalgebra(io::coalgebra_from_json(j)))).dump();
  if (kind == "bimonoid") return io::to_json(hopf::dual_bimonoid(hopf::check_bimonoid(io::bimonoid_from_json(j)))).dump();
  throw SchemaError("dual: unsupported kind '" + kind + "'");
}

algcore::Algebra algebra(const std::string& s) { return algcore::check_algebra(io::algebra_from_json(parse(s))); }
algcore::Coalgebra coalgebra(const std::string& s) { return algcore::check_coalgebra(io::coalgebra_from_json(parse(s))); }

std::string standard(const std::string& name, const std::string& field, std::size_t n) {
  const auto f = exactlin::FieldSpec::from_name(field);
  if (name == "ground_algebra") return io::to_json(algcore::ground_algebra(f)).dump();
  if (name == "truncated_polynomial") return io::to_json(algcore::truncated_polynomial(f, n)).dump();
  if (name == "group_algebra_cyclic") return io::to_json(algcore::group_algebra_cyclic(f, n)).dump();
  if (name == "matrix_algebra") return io::to_json(algcore::matrix_algebra(f, n)).dump();
  if (name == "diagonal_algebra") return io::to_json(algcore::diagonal_algebra(f, n)).dump();
  if (name == "ground_coalgebra") return io::to_json(algcore::ground_coalgebra(f)).dump();
  if (name == "matrix_coalgebra") return io::to_json(algcore::matrix_coalgebra(f, n)).dump();
  if (name == "grouplike_coalgebra") return io::to_json(algcore::grouplike_coalgebra(f, n)).dump();
  if (name == "divided_power_coalgebra") return io::to_json(algcore::divided_power_coalgebra(f, n)).dump();
  if (name == "group_bimonoid_cyclic") return io::to_json(hopf::group_bimonoid_cyclic(f, n)).dump();
  if (name == "regular_hopf_module")
    return io::to_json(hopf::regular_hopf_module(hopf::group_bimonoid_cyclic(f, n))).dump();
  throw SchemaError("unknown standard structure '" + name + "'");
}

std::string pab(const std::string& a, const std::string& b, std::size_t degree) {
  return io::to_json(measuring::measuring_comonoid_truncated(algebra(a), algebra(b), degree)).dump();
}

std::string census(const std::string& a, const std::string& b, const std::string& c, std::size_t degree) {
  const auto r = measuring::adjunction_bijection_census(algebra(a), algebra(b), coalgebra(c), degree);
  return json{{"degree", r.degree},           {"p_dim", r.p_dim},         {"measurings", r.measurings},
              {"coalgebra_maps", r.coalgebra_maps}, {"injective", r.injective}, {"surjective", r.surjective},
              {"round_trip", r.round_trip},   {"ok", r.ok()}}
      .dump();
}

std::string isocomod(const std::string& a, const std::string& b, std::size_t v_dim, const std::string& n,
                     std::size_t degree) {
  const auto m = modcomod::check_module(io::module_from_json(parse(n)));
  const auto r = measuring::check_isocomod(algebra(a), algebra(b), v_dim, m, degree);
  return json{{"ok", r.ok}, {"lhs_dim", r.lhs_dim}, {"rhs_dim", r.rhs_dim}, {"detail", r.detail}}.dump();
}

std::vector<std::string> fib_corpus() {
  std::vector<std::string> out;
  for (const auto& c : fibcat::opfibred_corpus()) {
    const auto inst = io::instance_of(c);
    out.push_back(io::to_json(inst).dump());
    out.push_back(io::to_json(io::dualize(inst)).dump());
  }
  return out;
}

std::string fib_synthesize(const std::string& doc) {
  const auto inst = io::fincat_from_json(parse(doc));
  if (!inst.has_cell || !inst.has_base) throw SchemaError("fib_synthesize needs an adjoint problem");
  const bool opf = inst.cell.direction == fibcat::CellDirection::Opfibred;
  const fibcat::OpfibredAdjointProblem p =
      opf ? fibcat::OpfibredAdjointProblem{inst.cell, inst.base, inst.fibrewise}
          : fibcat::dualize(fibcat::FibredAdjointProblem{inst.cell, inst.base, inst.fibrewise});
  const auto s = fibcat::synthesize_right_adjoint(p);
  return json{{"name", inst.name},
              {"bijection", !fibcat::hom_bijection_failure(s.total).has_value()},
              {"natural", fibcat::hom_bijection_natural(s.total)},
              {"omega_invertible", fibcat::check_omega_invertible(s, p.cell.source)},
              {"preserves_liftings", fibcat::cocartesian_check(s.r, p.cell.target, p.cell.source)}}
      .dump();
}

std::string hopf_lift(const std::string& doc, std::size_t degree) {
  const auto x = hopf::check_hopf_module(io::hopf_module_from_json(parse(doc)));
  const auto r = hopf::hopf_lift_check(x, degree);
  json checks = json::object();
  for (std::size_t i = 0; i < r.checks.size(); ++i) checks[r.checks[i]] = bool(r.passed[i]);
  return json{{"ok", r.ok}, {"degree", r.degree}, {"checks", checks}}.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact measuring, Hopf and fibration checks; structures are JSON strings";
  py::register_exception<Error>(m, "Error");

  m.def("check", &check, py::arg("doc"), py::arg("base") = "");
  m.def("dual", &dual);
  m.def("standard", &standard, py::arg("name"), py::arg("field"), py::arg("n") = 0);
  m.def("convolution", [](const std::string& c, const std::string& a) {
    return io::to_json(algcore::convolution_algebra(coalgebra(c), algebra(a))).dump();
  });
  m.def("pab", &pab, py::arg("a"), py::arg("b"), py::arg("degree") = 2);
  m.def("census", &census, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("degree") = 2);
  m.def("isocomod", &isocomod, py::arg("a"), py::arg("b"), py::arg("v_dim"), py::arg("n"), py::arg("degree") = 2);
  m.def("fib_corpus", &fib_corpus);
  m.def("fib_synthesize", &fib_synthesize);
  m.def("hopf_lift", &hopf_lift, py::arg("doc"), py::arg("degree") = 2);
}
