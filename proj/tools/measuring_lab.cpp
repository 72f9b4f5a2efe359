// measuring-lab: structure checks, measuring truncations and fibration reports from JSON files.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlab/io.hpp"

using namespace mlab;
using algcore::Algebra;
using exactlin::FieldSpec;
using exactlin::Mat;
using io::json;
using modcomod::ModuleStructure;
namespace fs = std::filesystem;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kParse = 2, kBudget = 3, kTruncation = 4, kOtherError = 5 };

struct Options {
  std::size_t degree = 2;
  std::size_t mmax = 1;
  std::size_t vdim = 1;
  std::string field;
  std::string budget_file;
  std::string hints_file;
  std::string out;
  std::string cache_dir;
};

struct Limits {
  measuring::Budget budget;
  std::size_t max_category_morphisms = 40;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(const std::string& path, const json& content) {
    inputs_.push_back(json{{"path", path}, {"hash", io::hex64(io::content_hash(content))}});
  }
  bool check(const std::string& name, bool ok, json detail = nullptr) {
    json c{{"name", name}, {"verdict", ok ? "PASS" : "FAIL"}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    checks_.push_back(std::move(c));
    ok_ = ok_ && ok;
    return ok;
  }
  json& data() { return data_; }
  json& run() { return run_; }
  void error(const Error& e) {
    error_ = json{{"kind", e.kind()}, {"message", e.what()}};
    ok_ = false;
  }
  bool ok() const { return ok_; }
  bool errored() const { return !error_.is_null(); }

  json document() const {
    json j;
    j["command"] = command_;
    j["inputs"] = inputs_;
    j["verdict"] = errored() ? "ERROR" : ok_ ? "PASS" : "FAIL";
    j["checks"] = checks_;
    if (!data_.empty()) j["data"] = data_;
    if (errored()) j["error"] = error_;
    j["run"] = run_;
    return j;
  }

  void summary(std::ostream& os) const {
    std::size_t passed = 0;
    for (const auto& c : checks_) passed += c["verdict"] == "PASS";
    os << "measuring-lab " << command_ << ": " << document()["verdict"].get<std::string>() << " (" << passed << "/"
       << checks_.size() << " checks)\n";
    for (const auto& c : checks_)
      if (c["verdict"] == "FAIL") os << "  FAIL " << c["name"].get<std::string>() << "\n";
    if (errored()) os << "  " << error_["message"].get<std::string>() << "\n";
  }

 private:
  std::string command_;
  json inputs_ = json::array();
  json checks_ = json::array();
  json data_ = json::object();
  json run_ = json::object();
  json error_;
  bool ok_ = true;
};

Limits load_limits(const Options& o) {
  Limits l;
  if (o.budget_file.empty()) return l;
  const json j = io::parse_json_file(o.budget_file);
  l.budget.enumeration = j.value("enumeration", l.budget.enumeration);
  l.budget.max_cofree_dim = j.value("max_cofree_dim", l.budget.max_cofree_dim);
  l.max_category_morphisms = j.value("max_category_morphisms", l.max_category_morphisms);
  return l;
}

std::optional<fs::path> cache_dir(const Options& o) {
  if (!o.cache_dir.empty()) return fs::path(o.cache_dir);
  if (const char* env = std::getenv("MEASURING_LAB_CACHE"); env && *env) return fs::path(env);
  return std::nullopt;
}

io::Document load(Report& r, const std::string& path) {
  io::Document d = io::load_document(path);
  r.input(path, d.data);
  return d;
}

void require_kind(const io::Document& d, std::initializer_list<const char*> kinds) {
  for (const char* k : kinds)
    if (d.kind == k) return;
  throw SchemaError(d.path.string() + ": unexpected kind '" + d.kind + "'");
}

void require_field(const Options& o, const FieldSpec& f) {
  if (!o.field.empty()) exactlin::require_same_field(FieldSpec::from_name(o.field), f, "--field");
}

json failure_detail(const CheckFailure& e) {
  json d{{"kind", e.kind()}, {"message", e.what()}};
  if (auto* a = dynamic_cast<const algcore::AssociativityFailure*>(&e)) d["indices"] = {a->i, a->j, a->k};
  if (auto* a = dynamic_cast<const algcore::UnitFailure*>(&e)) d["indices"] = {a->i};
  if (auto* a = dynamic_cast<const algcore::CoassociativityFailure*>(&e)) d["indices"] = {a->i};
  if (auto* a = dynamic_cast<const algcore::CounitFailure*>(&e)) d["indices"] = {a->i};
  if (auto* a = dynamic_cast<const modcomod::ActionAssociativityFailure*>(&e)) d["indices"] = {a->i, a->j, a->k};
  if (auto* a = dynamic_cast<const modcomod::ActionUnitFailure*>(&e)) d["indices"] = {a->k};
  if (auto* a = dynamic_cast<const modcomod::CoactionCoassociativityFailure*>(&e)) d["indices"] = {a->i};
  if (auto* a = dynamic_cast<const modcomod::CoactionCounitFailure*>(&e)) d["indices"] = {a->i};
  if (auto* a = dynamic_cast<const hopf::DiagramFailure*>(&e)) {
    d["diagram"] = a->diagram;
    d["indices"] = a->indices;
  }
  return d;
}

/// Runs a throwing checker and records its verdict.
template <class Fn>
bool run_check(Report& r, const std::string& name, Fn&& fn) {
  try {
    fn();
    return r.check(name, true);
  } catch (const CheckFailure& e) {
    return r.check(name, false, failure_detail(e));
  }
}

/// Produced structures go to --out; without it they are embedded in the report.
void emit_structure(Report& r, const Options& o, const json& s) {
  if (o.out.empty()) {
    r.data()["result"] = s;
  } else {
    io::write_json_file(o.out, s);
    r.data()["written"] = o.out;
  }
}

// ---------------------------------------------------------------- check

void check_document(Report& r, const io::Document& d) {
  const json& j = d.data;
  const fs::path base = d.base();
  json info{{"path", d.path.string()}, {"kind", d.kind}};
  if (j.contains("name")) info["name"] = j["name"];
  if (j.contains("field")) info["field"] = j["field"];
  if (j.contains("dim")) info["dim"] = j["dim"];
  r.data()["structures"].push_back(info);
  const std::string label = d.path.filename().string() + ": ";
  if (d.kind == "algebra") {
    const auto a = io::algebra_from_json(j, base);
    run_check(r, label + "algebra axioms", [&] { algcore::check_algebra(a); });
  } else if (d.kind == "coalgebra") {
    const auto c = io::coalgebra_from_json(j, base);
    run_check(r, label + "coalgebra axioms", [&] { algcore::check_coalgebra(c); });
  } else if (d.kind == "module") {
    const auto m = io::module_from_json(j, base);
    run_check(r, label + "module axioms", [&] { modcomod::check_module(m); });
  } else if (d.kind == "comodule") {
    const auto x = io::comodule_from_json(j, base);
    run_check(r, label + "comodule axioms", [&] { modcomod::check_comodule(x); });
  } else if (d.kind == "bimonoid") {
    const auto h = io::bimonoid_from_json(j, base);
    run_check(r, label + "bimonoid axioms", [&] { hopf::check_bimonoid(h); });
  } else if (d.kind == "module_comonoid") {
    const auto m = io::module_comonoid_from_json(j, base);
    run_check(r, label + "module comonoid axioms", [&] { hopf::check_module_comonoid(m); });
  } else if (d.kind == "comodule_monoid") {
    const auto s = io::comodule_monoid_from_json(j, base);
    run_check(r, label + "comodule monoid axioms", [&] { hopf::check_comodule_monoid(s); });
  } else if (d.kind == "hopf_module") {
    const auto x = io::hopf_module_from_json(j, base);
    run_check(r, label + "Hopf module axioms", [&] { hopf::check_hopf_module(x); });
  } else if (d.kind == "module_monoid") {
    const auto n = io::module_monoid_from_json(j, base);
    run_check(r, label + "module monoid axioms", [&] { hopf::check_module_monoid(n); });
  } else if (d.kind == "algebra_morphism") {
    const auto f = io::algebra_morphism_from_json(j, base);
    const auto v = algcore::is_algebra_morphism(f);
    r.check(label + "algebra morphism", v.ok, v.ok ? json() : json(v.failure));
  } else if (d.kind == "coalgebra_morphism") {
    const auto g = io::coalgebra_morphism_from_json(j, base);
    const auto v = algcore::is_coalgebra_morphism(g);
    r.check(label + "coalgebra morphism", v.ok, v.ok ? json() : json(v.failure));
  } else if (d.kind == "measuring") {
    const auto m = io::measuring_from_json(j, base);
    const auto v = measuring::verify_measuring(m);
    r.check(label + "measuring identity", v.ok, v.ok ? json() : json(v.failure));
  } else if (d.kind == "fincat_instance") {
    const auto inst = io::fincat_from_json(j);
    r.check(label + "instance data valid", true);
    if (inst.has_cell) run_check(r, label + "cell valid", [&] { fibcat::validate(inst.cell); });
  } else if (d.kind == "pab_bundle") {
    const auto p = io::comonoid_bundle_from_json(j);
    const auto id = measuring::couniversal_factor(p, p.canonical_measuring).matrix;
    r.check(label + "couniversality self-check", id == Mat::identity(p.p_n.field, p.p_n.dim));
  } else if (d.kind == "qmn_bundle") {
    const auto q = io::comodule_bundle_from_json(j);
    const auto id = measuring::comodule_couniversal_factor(q, q.canonical()).k;
    r.check(label + "couniversality self-check", id == Mat::identity(q.q_n.over.field, q.q_n.dim));
  }
}

void cmd_check(Report& r, const std::vector<std::string>& paths) {
  r.data()["structures"] = json::array();
  for (const auto& p : paths) check_document(r, load(r, p));
}

// ---------------------------------------------------------------- constructions

void cmd_dual(Report& r, const Options& o, const std::string& path) {
  const io::Document d = load(r, path);
  require_kind(d, {"algebra", "coalgebra", "bimonoid"});
  json out;
  if (d.kind == "algebra") {
    const auto c = algcore::dual_coalgebra(algcore::check_algebra(io::algebra_from_json(d.data, d.base())));
    run_check(r, "dual passes coalgebra axioms", [&] { algcore::check_coalgebra(c); });
    out = io::to_json(c);
  } else if (d.kind == "coalgebra") {
    const auto a = algcore::dual_algebra(algcore::check_coalgebra(io::coalgebra_from_json(d.data, d.base())));
    run_check(r, "dual passes algebra axioms", [&] { algcore::check_algebra(a); });
    out = io::to_json(a);
  } else {
    const auto h = hopf::dual_bimonoid(hopf::check_bimonoid(io::bimonoid_from_json(d.data, d.base())));
    run_check(r, "dual passes bimonoid axioms", [&] { hopf::check_bimonoid(h); });
    out = io::to_json(h);
  }
  emit_structure(r, o, out);
}

void cmd_convolution(Report& r, const Options& o, const std::string& c_path, const std::string& a_path) {
  const io::Document dc = load(r, c_path), da = load(r, a_path);
  require_kind(dc, {"coalgebra"});
  require_kind(da, {"algebra"});
  const auto c = algcore::check_coalgebra(io::coalgebra_from_json(dc.data, dc.base()));
  const auto a = algcore::check_algebra(io::algebra_from_json(da.data, da.base()));
  const auto conv = algcore::convolution_algebra(c, a);
  run_check(r, "convolution passes algebra axioms", [&] { algcore::check_algebra(conv); });
  emit_structure(r, o, io::to_json(conv));
}

void cmd_restrict(Report& r, const Options& o, const std::string& f_path, const std::string& n_path) {
  const io::Document df = load(r, f_path), dn = load(r, n_path);
  require_kind(df, {"algebra_morphism"});
  require_kind(dn, {"module"});
  const auto f = io::algebra_morphism_from_json(df.data, df.base());
  const auto v = algcore::is_algebra_morphism(f);
  if (!r.check("algebra morphism", v.ok, v.ok ? json() : json(v.failure))) return;
  const auto n = modcomod::check_module(io::module_from_json(dn.data, dn.base()));
  const auto m = modcomod::restrict(f, n);
  run_check(r, "restriction passes module axioms", [&] { modcomod::check_module(m); });
  emit_structure(r, o, io::to_json(m));
}

void cmd_corestrict(Report& r, const Options& o, const std::string& g_path, const std::string& x_path) {
  const io::Document dg = load(r, g_path), dx = load(r, x_path);
  require_kind(dg, {"coalgebra_morphism"});
  require_kind(dx, {"comodule"});
  const auto g = io::coalgebra_morphism_from_json(dg.data, dg.base());
  const auto v = algcore::is_coalgebra_morphism(g);
  if (!r.check("coalgebra morphism", v.ok, v.ok ? json() : json(v.failure))) return;
  const auto x = modcomod::check_comodule(io::comodule_from_json(dx.data, dx.base()));
  const auto y = modcomod::corestrict(g, x);
  run_check(r, "corestriction passes comodule axioms", [&] { modcomod::check_comodule(y); });
  emit_structure(r, o, io::to_json(y));
}

void cmd_measure_verify(Report& r, const std::string& path) {
  const io::Document d = load(r, path);
  require_kind(d, {"measuring"});
  const auto m = io::measuring_from_json(d.data, d.base());
  const auto direct = measuring::measuring_identity(m);
  r.check("measuring identity on basis triples", direct.ok, direct.ok ? json() : json(direct.failure));
  const auto both = measuring::verify_measuring(m);
  r.check("adjunct is an algebra map into the convolution algebra", both.ok);
}

// ---------------------------------------------------------------- truncations

Algebra load_algebra(Report& r, const Options& o, const std::string& path) {
  const io::Document d = load(r, path);
  require_kind(d, {"algebra"});
  Algebra a = algcore::check_algebra(io::algebra_from_json(d.data, d.base()));
  require_field(o, a.field);
  return a;
}

std::vector<Mat> load_hints(Report& r, const Options& o, const Algebra& a, const Algebra& b) {
  if (o.hints_file.empty()) return {};
  const json j = io::parse_json_file(o.hints_file);
  r.input(o.hints_file, j);
  return io::hints_from_json(j, a, b);
}

bool comonoid_self_check(const measuring::TruncatedMeasuringComonoid& p, const measuring::Budget& budget) {
  if (!measuring::measuring_identity(p.canonical_measuring).ok) return false;
  return measuring::couniversal_factor(p, p.canonical_measuring, budget).matrix ==
         Mat::identity(p.p_n.field, p.p_n.dim);
}

/// P_n(A,B), through the cache when one is configured. Cached bundles are re-verified first.
measuring::TruncatedMeasuringComonoid truncation(Report& r, const Options& o, const Limits& l, const Algebra& a,
                                                 const Algebra& b, std::size_t degree, const std::vector<Mat>& hints) {
  if (o.mmax != 1) throw SchemaError("only --mmax 1 is supported");
  const auto dir = cache_dir(o);
  fs::path file;
  if (dir) {
    json hint_json = json::array();
    for (const auto& h : hints) hint_json.push_back(io::mat_json(h));
    const json key{{"a", io::to_json(a)}, {"b", io::to_json(b)}, {"degree", degree},
                   {"m_max", o.mmax}, {"field", a.field.name()}, {"hints", hint_json}};
    file = *dir / ("pab-" + io::hex64(io::content_hash(key)) + ".json");
    if (fs::exists(file)) {
      try {
        auto p = io::comonoid_bundle_from_json(io::parse_json_file(file));
        if (p.a == a && p.b == b && p.degree == degree && comonoid_self_check(p, l.budget)) {
          r.run()["cache"] = "hit";
          return p;
        }
      } catch (const Error&) {
      }
      r.run()["cache"] = "rejected";
    } else {
      r.run()["cache"] = "miss";
    }
  }
  auto p = measuring::measuring_comonoid_truncated(a, b, degree, hints, l.budget);
  if (dir) io::write_json_file(file, io::to_json(p));
  return p;
}

void cmd_pab(Report& r, const Options& o, const Limits& l, const std::string& a_path, const std::string& b_path) {
  const Algebra a = load_algebra(r, o, a_path), b = load_algebra(r, o, b_path);
  const auto hints = load_hints(r, o, a, b);
  const auto p = truncation(r, o, l, a, b, o.degree, hints);
  r.check("couniversality self-check", comonoid_self_check(p, l.budget));
  json dims = json::array();
  std::optional<std::size_t> stable;
  bool monotone = true;
  std::optional<measuring::TruncatedMeasuringComonoid> prev;
  for (std::size_t d = 0; d <= o.degree; ++d) {
    auto pd = d == o.degree ? p : measuring::measuring_comonoid_truncated(a, b, d, hints, l.budget);
    dims.push_back(pd.p_n.dim);
    if (prev) monotone = monotone && measuring::truncation_contains(*prev, pd);
    prev = std::move(pd);
  }
  for (std::size_t d = 0; d <= o.degree; ++d)
    if (dims[d] == dims[o.degree]) {
      stable = d;
      break;
    }
  r.check("lower truncations embed", monotone);
  r.data()["degree"] = o.degree;
  r.data()["dim"] = p.p_n.dim;
  r.data()["points"] = p.points.size();
  r.data()["dims_by_degree"] = dims;
  if (stable && *stable < o.degree)
    r.data()["stabilized_at"] = *stable;
  else
    r.data()["stabilized_at"] = nullptr;
  emit_structure(r, o, io::to_json(p));
}

ModuleStructure load_module(Report& r, const Options& o, const std::string& path) {
  const io::Document d = load(r, path);
  require_kind(d, {"module"});
  auto m = modcomod::check_module(io::module_from_json(d.data, d.base()));
  require_field(o, m.over.field);
  return m;
}

void cmd_qmn(Report& r, const Options& o, const Limits& l, const std::string& m_path, const std::string& n_path) {
  const auto m = load_module(r, o, m_path), n = load_module(r, o, n_path);
  const auto hints = load_hints(r, o, m.over, n.over);
  const auto p = truncation(r, o, l, m.over, n.over, o.degree, hints);
  const auto q = measuring::measuring_comodule_truncated(m, n, p);
  r.check("module measuring identity", measuring::verify_module_measuring(q.canonical()).ok);
  r.check("couniversality self-check",
          measuring::comodule_couniversal_factor(q, q.canonical(), l.budget).k ==
              Mat::identity(q.q_n.over.field, q.q_n.dim));
  r.data()["degree"] = o.degree;
  r.data()["p_dim"] = p.p_n.dim;
  r.data()["q_dim"] = q.q_n.dim;
  emit_structure(r, o, io::to_json(q));
}

void cmd_census(Report& r, const Options& o, const Limits& l, const std::string& a_path, const std::string& b_path,
                const std::string& c_path) {
  const Algebra a = load_algebra(r, o, a_path), b = load_algebra(r, o, b_path);
  const io::Document dc = load(r, c_path);
  require_kind(dc, {"coalgebra"});
  const auto c = algcore::check_coalgebra(io::coalgebra_from_json(dc.data, dc.base()));
  const auto rep = measuring::adjunction_bijection_census(a, b, c, o.degree, l.budget);
  r.data()["degree"] = rep.degree;
  r.data()["p_dim"] = rep.p_dim;
  r.data()["measurings"] = rep.measurings;
  r.data()["coalgebra_maps"] = rep.coalgebra_maps;
  r.check("counts agree", rep.measurings == rep.coalgebra_maps);
  r.check("factoring is injective", rep.injective);
  r.check("factoring is surjective", rep.surjective);
  r.check("couniversal factor round-trips", rep.round_trip);
}

void cmd_isocomod(Report& r, const Options& o, const Limits& l, const std::string& a_path, const std::string& b_path,
                  const std::string& n_path) {
  const Algebra a = load_algebra(r, o, a_path), b = load_algebra(r, o, b_path);
  const auto n = load_module(r, o, n_path);
  const auto hints = load_hints(r, o, a, b);
  const auto rep = measuring::check_isocomod(a, b, o.vdim, n, o.degree, hints, l.budget);
  r.data()["degree"] = rep.degree;
  r.data()["lhs_dim"] = rep.lhs_dim;
  r.data()["rhs_dim"] = rep.rhs_dim;
  r.data()["stabilized_at"] = rep.stabilized_at ? json(*rep.stabilized_at) : json(nullptr);
  r.check("comparison is a comodule isomorphism", rep.ok, rep.detail.empty() ? json() : json(rep.detail));
}

// ---------------------------------------------------------------- fibrations

io::FincatInstance load_instance(Report& r, const Limits& l, const std::string& path) {
  const io::Document d = load(r, path);
  require_kind(d, {"fincat_instance"});
  auto inst = io::fincat_from_json(d.data);
  auto within = [&](const fibcat::FiniteCategory& c) {
    if (c.nmor() > l.max_category_morphisms)
      throw BudgetExceeded(c.name + " has " + std::to_string(c.nmor()) + " morphisms");
  };
  if (inst.has_cell) {
    within(inst.cell.source.cat);
    within(inst.cell.target.cat);
  } else {
    within(fibcat::grothendieck(inst.indexed).cat);
  }
  r.data()["instance"] = inst.name;
  return inst;
}

void expect(Report& r, const io::FincatInstance& inst, const char* key, bool actual) {
  if (inst.expect.is_object() && inst.expect.contains(key))
    r.check(std::string("expected ") + key, inst.expect[key].get<bool>() == actual);
}

void fib_groth(Report& r, const io::FincatInstance& inst) {
  std::vector<const fibcat::IndexedCategory*> ics = {&inst.indexed};
  if (inst.has_cell) ics.push_back(&inst.cell.target.indexed);
  json totals = json::array();
  for (const auto* ic : ics) {
    const auto t = fibcat::grothendieck(*ic);
    const std::string tag = ic == &inst.indexed ? "source" : "target";
    totals.push_back(json{{"role", tag},
                          {"variance", t.opfibration() ? "covariant" : "contravariant"},
                          {"objects", t.cat.nobj()},
                          {"morphisms", t.cat.nmor()}});
    run_check(r, tag + ": total category valid", [&] { fibcat::validate(t.cat); });
    r.check(tag + ": chosen liftings are universal", fibcat::liftings_universal(t));
    r.check(tag + ": fibres and reindexing round-trip", fibcat::same_shape(fibcat::extract_indexed(t), *ic));
  }
  r.data()["totals"] = totals;
}

void fib_factor(Report& r, const io::FincatInstance& inst) {
  const auto t = inst.has_cell ? inst.cell.source : fibcat::grothendieck(inst.indexed);
  std::size_t unique = 0;
  json bad = json::array();
  for (std::size_t m = 0; m < t.cat.nmor(); ++m) {
    const auto f = fibcat::factorize(t, m);
    if (f.unique())
      ++unique;
    else
      bad.push_back(t.cat.morphisms[m].name);
  }
  r.data()["morphisms"] = t.cat.nmor();
  r.data()["unique_factorizations"] = unique;
  r.check("every morphism factors uniquely", bad.empty(), bad.empty() ? json() : bad);
}

void fib_adjoint(Report& r, const io::FincatInstance& inst) {
  if (!inst.has_cell || !inst.has_base || inst.fibrewise.empty())
    throw SchemaError("adjoint needs a cell, a base adjunction and fibrewise adjunctions");
  const bool opf = inst.cell.direction == fibcat::CellDirection::Opfibred;
  // Fibred problems are handled on the formal opposite.
  const fibcat::OpfibredAdjointProblem p =
      opf ? fibcat::OpfibredAdjointProblem{inst.cell, inst.base, inst.fibrewise}
          : fibcat::dualize(fibcat::FibredAdjointProblem{inst.cell, inst.base, inst.fibrewise});
  fibcat::Synthesis s;
  try {
    s = fibcat::synthesize_right_adjoint(p);
  } catch (const fibcat::BijectionFailure& e) {
    r.check("hom bijection", false, json{{"c", e.c}, {"d", e.d}, {"message", e.what()}});
    return;
  }
  const auto& c = p.cell.source;
  const auto& d = p.cell.target;
  r.check("hom bijection", !fibcat::hom_bijection_failure(s.total).has_value());
  r.check("hom bijection natural", fibcat::hom_bijection_natural(s.total));
  r.check("adjunction axioms", fibcat::adjunction_axioms(s.total));
  const bool omega = fibcat::check_omega_invertible(s, c);
  const bool cocart = fibcat::cocartesian_check(s.r, d, c);
  r.check("omega invertible iff adjoint preserves liftings", omega == cocart);
  r.check("adjunction lies over the base adjunction", fibcat::check_cat2_adjunction(c, d, s.total, p.base));
  r.check("fibrewise adjunctions re-extracted", fibcat::extract_fibrewise(c, d, s.total, p.base) == p.fibrewise);
  r.data()["direction"] = opf ? "opfibred" : "fibred";
  r.data()["synthesized"] = opf ? "right adjoint" : "left adjoint";
  r.data()["omega_invertible"] = omega;
  r.data()["adjoint_preserves_liftings"] = cocart;
  const auto& adj = opf ? s.r : fibcat::opposite(s.r);
  json objs = json::object();
  for (std::size_t x = 0; x < adj.source.nobj(); ++x) objs[adj.source.objects[x]] = adj.target.objects[adj.obj(x)];
  r.data()["adjoint_on_objects"] = objs;
  expect(r, inst, "omega_invertible", omega);
}

void fib_chi(Report& r, const io::FincatInstance& inst) {
  if (!inst.fixed_base || !inst.has_cell) throw SchemaError("chi needs a fixed-base instance");
  const io::FincatInstance fib = inst.cell.direction == fibcat::CellDirection::Fibred ? inst : io::dualize(inst);
  const auto rep = fibcat::fixed_base_fibred_adjoint_check(fib.cell, fib.fibrewise, fib.side);
  r.data()["side"] = fib.side == fibcat::Side::Left ? "left" : "right";
  r.data()["chi_invertible"] = rep.chi_invertible;
  r.data()["plain_adjoint"] = rep.plain_adjoint;
  r.data()["fibred_adjoint_exists"] = rep.fibred_adjoint_exists;
  r.check("chi invertible iff a fibred adjoint exists", rep.agree());
  expect(r, inst, "chi_invertible", rep.chi_invertible);
}

void fib_dual(Report& r, const Options& o, const io::FincatInstance& inst) {
  const auto d = io::dualize(inst);
  if (d.has_cell) run_check(r, "dual cell valid", [&] { fibcat::validate(d.cell); });
  const auto dd = io::dualize(d);
  r.check("dualizing twice restores the instance", dd.indexed == inst.indexed && dd.fibrewise == inst.fibrewise &&
                                                       (!inst.has_cell || dd.cell.k == inst.cell.k) &&
                                                       (!inst.has_base || dd.base == inst.base));
  emit_structure(r, o, io::to_json(d));
}

// ---------------------------------------------------------------- hopf

void cmd_hopf_check(Report& r, const std::vector<std::string>& paths) {
  r.data()["structures"] = json::array();
  for (const auto& p : paths) {
    const io::Document d = load(r, p);
    require_kind(d, {"bimonoid", "module_comonoid", "comodule_monoid", "hopf_module", "module_monoid"});
    check_document(r, d);
  }
}

void cmd_hopf_qmonoid(Report& r, const Options& o, const Limits& l, const std::string& m_path,
                      const std::string& n_path) {
  const io::Document dm = load(r, m_path), dn = load(r, n_path);
  require_kind(dm, {"module_comonoid"});
  require_kind(dn, {"module_monoid"});
  const auto m = hopf::check_module_comonoid(io::module_comonoid_from_json(dm.data, dm.base()));
  const auto n = hopf::check_module_monoid(io::module_monoid_from_json(dn.data, dn.base()));
  const auto q = hopf::qmn_comodule_monoid(m, n, o.degree, l.budget);
  run_check(r, "comodule monoid axioms", [&] { hopf::check_comodule_monoid(q.structure); });
  r.check("lax and direct multiplications agree", q.via_lax == q.direct);
  r.data()["degree"] = o.degree;
  r.data()["p_dim"] = q.p.p.p_n.dim;
  r.data()["q_dim"] = q.q.q_n.dim;
  emit_structure(r, o, io::to_json(q.structure));
}

void cmd_hopf_lift(Report& r, const Options& o, const Limits& l, const std::string& x_path) {
  const io::Document d = load(r, x_path);
  require_kind(d, {"hopf_module"});
  const auto x = hopf::check_hopf_module(io::hopf_module_from_json(d.data, d.base()));
  const auto rep = hopf::hopf_lift_check(x, o.degree, l.budget);
  for (std::size_t i = 0; i < rep.checks.size(); ++i) r.check(rep.checks[i], rep.passed[i]);
  if (rep.checks.empty()) r.check("lift", rep.ok, rep.detail);
  r.data()["degree"] = rep.degree;
  r.data()["p_dim"] = rep.p.p.p_n.dim;
  r.data()["orders_compared"] = rep.orders_compared;
  if (!rep.detail.empty()) r.data()["detail"] = rep.detail;
}

int exit_code(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const SchemaError*>(&e)) return kParse;
  if (dynamic_cast<const BudgetExceeded*>(&e)) return kBudget;
  if (dynamic_cast<const TruncationInsufficient*>(&e)) return kTruncation;
  if (dynamic_cast<const CheckFailure*>(&e)) return kCheckFailed;
  return kOtherError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for measurings, Hopf structures and fibrations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--degree", o.degree, "Truncation degree")->capture_default_str();
  app.add_option("--mmax", o.mmax, "Tensor-power bound for measurings (only 1)")->capture_default_str();
  app.add_option("--vdim", o.vdim, "Dimension of V for isocomod")->capture_default_str();
  app.add_option("--field", o.field, "Require inputs over this field (Q, F2, F3, ...)");
  app.add_option("--budget", o.budget_file, "Budget config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--hints", o.hints_file, "Candidate algebra maps (JSON)")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "Write the produced structure or the report here");
  app.add_option("--cache-dir", o.cache_dir, "Truncation cache (default: $MEASURING_LAB_CACHE)");

  std::vector<std::string> files;
  std::string a, b, c, sub;
  std::string command;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&, name] { command = name; });
    return s;
  };

  auto* check = add("check", "Run the axiom checker for each file's kind");
  check->add_option("files", files, "Structure files")->required()->check(CLI::ExistingFile);
  auto* dual = add("dual", "Dual of an algebra, coalgebra or bimonoid");
  dual->add_option("file", a)->required()->check(CLI::ExistingFile);
  auto* conv = add("convolution", "Convolution algebra Hom(C, A)");
  conv->add_option("coalgebra", a)->required()->check(CLI::ExistingFile);
  conv->add_option("algebra", b)->required()->check(CLI::ExistingFile);
  auto* restr = add("restrict", "Restriction of a module along an algebra morphism");
  restr->add_option("morphism", a)->required()->check(CLI::ExistingFile);
  restr->add_option("module", b)->required()->check(CLI::ExistingFile);
  auto* cores = add("corestrict", "Corestriction of a comodule along a coalgebra morphism");
  cores->add_option("morphism", a)->required()->check(CLI::ExistingFile);
  cores->add_option("comodule", b)->required()->check(CLI::ExistingFile);
  auto* mv = add("measure-verify", "Check a measuring C -> Hom(A, B) both ways");
  mv->add_option("measuring", a)->required()->check(CLI::ExistingFile);
  auto* pab = add("pab", "Truncated universal measuring comonoid P_n(A, B)");
  pab->add_option("a", a)->required()->check(CLI::ExistingFile);
  pab->add_option("b", b)->required()->check(CLI::ExistingFile);
  auto* qmn = add("qmn", "Truncated universal measuring comodule Q_n(M, N)");
  qmn->add_option("m", a)->required()->check(CLI::ExistingFile);
  qmn->add_option("n", b)->required()->check(CLI::ExistingFile);
  auto* census = add("census", "Count measurings C -> Hom(A, B) and coalgebra maps C -> P_n(A, B)");
  census->add_option("a", a)->required()->check(CLI::ExistingFile);
  census->add_option("b", b)->required()->check(CLI::ExistingFile);
  census->add_option("c", c)->required()->check(CLI::ExistingFile);
  auto* iso = add("isocomod", "Compare [V, N] (x) P_n with Q_n(A (x) V, N)");
  iso->add_option("a", a)->required()->check(CLI::ExistingFile);
  iso->add_option("b", b)->required()->check(CLI::ExistingFile);
  iso->add_option("n", c)->required()->check(CLI::ExistingFile);
  auto* fib = add("fib", "Grothendieck construction and adjoint synthesis on a finite instance");
  fib->add_option("action", sub)->required()->check(CLI::IsMember({"groth", "factor", "adjoint", "dual", "chi"}));
  fib->add_option("instance", a)->required()->check(CLI::ExistingFile);
  auto* hopf = add("hopf", "Bimonoid, Hopf module and lifting checks");
  hopf->add_option("action", sub)->required()->check(CLI::IsMember({"check", "qmonoid", "lift"}));
  hopf->add_option("files", files)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  const std::string label = (command == "fib" || command == "hopf") ? command + " " + sub : command;
  Report r(label);
  int code = kPass;
  const auto start = std::chrono::steady_clock::now();
  const bool produces = command == "dual" || command == "convolution" || command == "restrict" ||
                        command == "corestrict" || command == "pab" || command == "qmn" ||
                        (command == "fib" && sub == "dual") || (command == "hopf" && sub == "qmonoid");
  Options run = o;
  if (!produces) run.out.clear();
  try {
    const Limits l = load_limits(o);
    if (command == "check") cmd_check(r, files);
    else if (command == "dual") cmd_dual(r, run, a);
    else if (command == "convolution") cmd_convolution(r, run, a, b);
    else if (command == "restrict") cmd_restrict(r, run, a, b);
    else if (command == "corestrict") cmd_corestrict(r, run, a, b);
    else if (command == "measure-verify") cmd_measure_verify(r, a);
    else if (command == "pab") cmd_pab(r, run, l, a, b);
    else if (command == "qmn") cmd_qmn(r, run, l, a, b);
    else if (command == "census") cmd_census(r, run, l, a, b, c);
    else if (command == "isocomod") cmd_isocomod(r, run, l, a, b, c);
    else if (command == "fib") {
      const auto inst = load_instance(r, l, a);
      if (sub == "groth") fib_groth(r, inst);
      else if (sub == "factor") fib_factor(r, inst);
      else if (sub == "adjoint") fib_adjoint(r, inst);
      else if (sub == "chi") fib_chi(r, inst);
      else fib_dual(r, run, inst);
    } else if (command == "hopf") {
      if (sub == "check") cmd_hopf_check(r, files);
      else if (sub == "qmonoid") {
        if (files.size() != 2) throw SchemaError("hopf qmonoid takes a module comonoid and a module monoid");
        cmd_hopf_qmonoid(r, run, l, files[0], files[1]);
      } else {
        if (files.size() != 1) throw SchemaError("hopf lift takes one Hopf module");
        cmd_hopf_lift(r, run, l, files[0]);
      }
    }
    if (!r.ok()) code = kCheckFailed;
  } catch (const Error& e) {
    r.error(e);
    code = exit_code(e);
  } catch (const std::logic_error& e) {
    r.error(Error("InternalInconsistency", e.what()));
    code = kOtherError;
  }
  r.run()["elapsed_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  r.run()["exit_code"] = code;

  const json doc = r.document();
  if (!o.out.empty() && !produces)
    io::write_json_file(o.out, doc);
  else
    std::cout << doc.dump(2) << "\n";
  r.summary(std::cerr);
  return code;
}
