#include "mlab/io.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace mlab::io {

using fibcat::FiniteAdjunction;
using fibcat::FiniteCategory;
using fibcat::FiniteFunctor;
using fibcat::IndexedCategory;
using fibcat::Variance;
using modcomod::ComoduleStructure;
using modcomod::ModuleStructure;

namespace {

struct Ctx {
  fs::path base;
  std::optional<FieldSpec> field;
};

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
  return j.at(key);
}

const json& optional_array(const json& j, const char* key) {
  static const json empty = json::array();
  return j.contains(key) ? j.at(key) : empty;
}

const json& optional_object(const json& j, const char* key) {
  static const json empty = json::object();
  return j.contains(key) ? j.at(key) : empty;
}

std::size_t need_dim(const json& j, const char* key = "dim") {
  const json& d = need(j, key);
  if (!d.is_number_unsigned() && !(d.is_number_integer() && d.get<long long>() >= 0))
    throw SchemaError(std::string("'") + key + "' must be a non-negative integer");
  const auto n = d.get<std::size_t>();
  if (n == 0) throw SchemaError(std::string("'") + key + "' is zero");
  return n;
}

/// An inline object, or a relative path loaded against the current base.
std::pair<json, Ctx> resolve(const json& j, const Ctx& ctx) {
  if (j.is_string()) {
    const fs::path p = ctx.base / j.get<std::string>();
    json d = parse_json_file(p);
    return {d, Ctx{p.parent_path(), ctx.field}};
  }
  if (!j.is_object()) throw SchemaError("expected an object or a relative path");
  return {j, ctx};
}

FieldSpec field_of(const json& j, const Ctx& ctx) {
  std::optional<FieldSpec> f;
  if (j.contains("field")) {
    if (!j.at("field").is_string()) throw SchemaError("'field' must be a string");
    f = FieldSpec::from_name(j.at("field").get<std::string>());
  }
  if (f && ctx.field) exactlin::require_same_field(*ctx.field, *f, "nested structure");
  if (f) return *f;
  if (ctx.field) return *ctx.field;
  throw SchemaError("missing key 'field'");
}

void check_kind(const json& j, const char* kind) {
  if (j.contains("kind") && j.at("kind") != kind)
    throw SchemaError("expected kind '" + std::string(kind) + "', got " + j.at("kind").dump());
}

exactlin::Scalar parse_scalar(const FieldSpec& f, const json& v) {
  if (v.is_string()) return f.parse(v.get<std::string>());
  if (v.is_number_integer()) return f.reduce(exactlin::Scalar(v.get<long>()));
  throw SchemaError("scalar must be a string, got " + v.dump());
}

std::size_t index_in(const json& v, std::size_t bound, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<std::size_t>() >= bound)
    throw SchemaError(std::string(what) + ": index " + v.dump() + " out of range");
  return v.get<std::size_t>();
}

std::vector<std::string> labels_of(const json& j, std::size_t dim, const char* stem) {
  if (!j.contains("labels")) return algcore::default_labels(stem, dim);
  auto l = j.at("labels").get<std::vector<std::string>>();
  if (l.size() != dim) throw SchemaError("'labels' has the wrong length");
  return l;
}

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  }
}

Algebra read_algebra(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "algebra");
  Algebra a;
  a.field = field_of(j, ctx);
  a.name = j.value("name", std::string("A"));
  a.dim = need_dim(j);
  a.basis_labels = labels_of(j, a.dim, "e");
  a.mult = map_from_entries(a.field, need(j, "mult"), {a.dim, a.dim}, {a.dim}, "mult");
  a.unit = map_from_entries(a.field, need(j, "unit"), {}, {a.dim}, "unit");
  return a;
}

Coalgebra read_coalgebra(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "coalgebra");
  Coalgebra c;
  c.field = field_of(j, ctx);
  c.name = j.value("name", std::string("C"));
  c.dim = need_dim(j);
  c.basis_labels = labels_of(j, c.dim, "c");
  c.comult = map_from_entries(c.field, need(j, "comult"), {c.dim}, {c.dim, c.dim}, "comult");
  c.counit = map_from_entries(c.field, need(j, "counit"), {c.dim}, {}, "counit");
  return c;
}

ModuleStructure read_module(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "module");
  ModuleStructure m;
  const FieldSpec f = field_of(j, ctx);
  m.over = algcore::check_algebra(read_algebra(need(j, "over"), Ctx{ctx.base, f}));
  m.name = j.value("name", std::string("M"));
  m.dim = need_dim(j);
  m.action = map_from_entries(f, need(j, "action"), {m.over.dim, m.dim}, {m.dim}, "action");
  return m;
}

ComoduleStructure read_comodule(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "comodule");
  ComoduleStructure x;
  const FieldSpec f = field_of(j, ctx);
  x.over = algcore::check_coalgebra(read_coalgebra(need(j, "over"), Ctx{ctx.base, f}));
  x.name = j.value("name", std::string("X"));
  x.dim = need_dim(j);
  x.coaction = map_from_entries(f, need(j, "coaction"), {x.dim}, {x.dim, x.over.dim}, "coaction");
  return x;
}

hopf::Bimonoid read_bimonoid(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "bimonoid");
  hopf::Bimonoid h;
  h.name = j.value("name", std::string("H"));
  const FieldSpec f = field_of(j, ctx);
  const std::size_t n = need_dim(j);
  const auto labels = labels_of(j, n, "h");
  h.alg = Algebra{h.name, f, n, labels, map_from_entries(f, need(j, "mult"), {n, n}, {n}, "mult"),
                  map_from_entries(f, need(j, "unit"), {}, {n}, "unit")};
  h.coalg = Coalgebra{h.name, f, n, labels, map_from_entries(f, need(j, "comult"), {n}, {n, n}, "comult"),
                      map_from_entries(f, need(j, "counit"), {n}, {}, "counit")};
  return h;
}

hopf::ModuleComonoid read_module_comonoid(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "module_comonoid");
  const FieldSpec f = field_of(j, ctx);
  hopf::ModuleComonoid m;
  m.h = hopf::check_bimonoid(read_bimonoid(need(j, "h"), Ctx{ctx.base, f}));
  const std::string name = j.value("name", std::string("M"));
  const std::size_t n = need_dim(j);
  m.m = ModuleStructure{name, m.h.alg, n, map_from_entries(f, need(j, "action"), {m.h.dim(), n}, {n}, "action")};
  m.comonoid = Coalgebra{name, f, n, labels_of(j, n, "m"),
                         map_from_entries(f, need(j, "comult"), {n}, {n, n}, "comult"),
                         map_from_entries(f, need(j, "counit"), {n}, {}, "counit")};
  return m;
}

hopf::ComoduleMonoid read_comodule_monoid(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "comodule_monoid");
  const FieldSpec f = field_of(j, ctx);
  hopf::ComoduleMonoid s;
  s.h = hopf::check_bimonoid(read_bimonoid(need(j, "h"), Ctx{ctx.base, f}));
  const std::size_t n = need_dim(j);
  s.s = Algebra{j.value("name", std::string("S")), f, n, labels_of(j, n, "s"),
                map_from_entries(f, need(j, "mult"), {n, n}, {n}, "mult"),
                map_from_entries(f, need(j, "unit"), {}, {n}, "unit")};
  s.coaction = map_from_entries(f, need(j, "coaction"), {n}, {s.h.dim(), n}, "coaction");
  return s;
}

hopf::HopfModule read_hopf_module(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "hopf_module");
  const FieldSpec f = field_of(j, ctx);
  hopf::HopfModule x;
  x.s = hopf::check_comodule_monoid(read_comodule_monoid(need(j, "s"), Ctx{ctx.base, f}));
  x.m = hopf::check_module_comonoid(read_module_comonoid(need(j, "m"), Ctx{ctx.base, f}));
  x.dim = need_dim(j);
  x.action = map_from_entries(f, need(j, "action"), {x.s.s.dim, x.dim}, {x.dim}, "action");
  x.coaction = map_from_entries(f, need(j, "coaction"), {x.dim}, {x.m.m.dim, x.dim}, "coaction");
  return x;
}

hopf::ModuleMonoid read_module_monoid(const json& j0, const Ctx& c0) {
  auto [j, ctx] = resolve(j0, c0);
  check_kind(j, "module_monoid");
  const FieldSpec f = field_of(j, ctx);
  hopf::ModuleMonoid x;
  x.a = algcore::check_algebra(read_algebra(need(j, "a"), Ctx{ctx.base, f}));
  const std::string name = j.value("name", std::string("N"));
  const std::size_t n = need_dim(j);
  x.n = ModuleStructure{name, x.a, n, map_from_entries(f, need(j, "action"), {x.a.dim, n}, {n}, "action")};
  x.monoid = Algebra{name, f, n, labels_of(j, n, "n"), map_from_entries(f, need(j, "mult"), {n, n}, {n}, "mult"),
                     map_from_entries(f, need(j, "unit"), {}, {n}, "unit")};
  return x;
}

json header(const char* kind, const std::string& name, const FieldSpec& f) {
  json j;
  j["kind"] = kind;
  j["name"] = name;
  j["field"] = f.name();
  return j;
}

}  // namespace

// ---------------------------------------------------------------- files

json parse_json_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

Document load_document(const fs::path& p) {
  Document d{"", parse_json_file(p), p};
  if (!d.data.is_object() || !d.data.contains("kind") || !d.data.at("kind").is_string())
    throw SchemaError(p.string() + ": missing 'kind'");
  d.kind = d.data.at("kind").get<std::string>();
  static const std::set<std::string> kinds = {"algebra",         "coalgebra",   "module",         "comodule",
                                              "bimonoid",        "module_comonoid", "comodule_monoid",
                                              "hopf_module",     "module_monoid", "fincat_instance",
                                              "pab_bundle",      "qmn_bundle",      "algebra_morphism",
                                              "coalgebra_morphism", "measuring"};
  if (!kinds.count(d.kind)) throw SchemaError(p.string() + ": unknown kind '" + d.kind + "'");
  return d;
}

void write_json_file(const fs::path& p, const json& j) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw ParseError("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

std::uint64_t content_hash(const json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

// ---------------------------------------------------------------- scalars and matrices

json scalar_json(const FieldSpec& f, const exactlin::Scalar& x) { return f.format(x); }

json mat_json(const Mat& m) {
  json e = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [jj, v] : m.row_nz(i)) e.push_back(json::array({i, jj, scalar_json(m.field(), v)}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

Mat mat_from_json(const FieldSpec& f, const json& j) {
  return guarded([&] {
    const auto r = need(j, "rows").get<std::size_t>();
    const auto c = need(j, "cols").get<std::size_t>();
    Mat m(f, r, c);
    for (const json& e : need(j, "entries")) {
      if (!e.is_array() || e.size() != 3) throw SchemaError("matrix entry must be [i, j, value]");
      m.set(index_in(e[0], r, "matrix row"), index_in(e[1], c, "matrix column"), parse_scalar(f, e[2]));
    }
    return m;
  });
}

json vec_json(const FieldSpec& f, const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_json(f, x));
  return a;
}

Vec vec_from_json(const FieldSpec& f, const json& j) {
  if (!j.is_array()) throw SchemaError("vector must be an array");
  Vec v;
  for (const json& x : j) v.push_back(parse_scalar(f, x));
  return v;
}

json map_entries(const Mat& m, const std::vector<std::size_t>& in, const std::vector<std::size_t>& out) {
  json a = json::array();
  auto digits = [](std::size_t x, const std::vector<std::size_t>& radix) {
    std::vector<std::size_t> d(radix.size());
    for (std::size_t k = radix.size(); k-- > 0;) {
      d[k] = x % radix[k];
      x /= radix[k];
    }
    return d;
  };
  for (std::size_t col = 0; col < m.cols(); ++col)
    for (const auto& [row, v] : m.col_nz(col)) {
      json e = json::array();
      for (auto d : digits(col, in)) e.push_back(d);
      for (auto d : digits(row, out)) e.push_back(d);
      e.push_back(scalar_json(m.field(), v));
      a.push_back(e);
    }
  return a;
}

Mat map_from_entries(const FieldSpec& f, const json& j, const std::vector<std::size_t>& in,
                     const std::vector<std::size_t>& out, const char* what) {
  return guarded([&] {
    std::size_t rows = 1, cols = 1;
    for (auto d : out) rows *= d;
    for (auto d : in) cols *= d;
    Mat m(f, rows, cols);
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be a list of entries");
    const std::size_t arity = in.size() + out.size() + 1;
    for (const json& e : j) {
      if (!e.is_array() || e.size() != arity)
        throw SchemaError(std::string(what) + ": entry " + e.dump() + " needs " + std::to_string(arity) + " fields");
      std::size_t col = 0, row = 0, k = 0;
      for (auto d : in) col = col * d + index_in(e[k++], d, what);
      for (auto d : out) row = row * d + index_in(e[k++], d, what);
      m.add_to(row, col, parse_scalar(f, e[k]));
    }
    return m;
  });
}

// ---------------------------------------------------------------- writers

json to_json(const Algebra& a) {
  json j = header("algebra", a.name, a.field);
  j["dim"] = a.dim;
  j["labels"] = a.basis_labels.empty() ? algcore::default_labels("e", a.dim) : a.basis_labels;
  j["mult"] = map_entries(a.mult, {a.dim, a.dim}, {a.dim});
  j["unit"] = map_entries(a.unit, {}, {a.dim});
  return j;
}

json to_json(const Coalgebra& c) {
  json j = header("coalgebra", c.name, c.field);
  j["dim"] = c.dim;
  j["labels"] = c.basis_labels.empty() ? algcore::default_labels("c", c.dim) : c.basis_labels;
  j["comult"] = map_entries(c.comult, {c.dim}, {c.dim, c.dim});
  j["counit"] = map_entries(c.counit, {c.dim}, {});
  return j;
}

json to_json(const ModuleStructure& m) {
  json j = header("module", m.name, m.over.field);
  j["over"] = to_json(m.over);
  j["dim"] = m.dim;
  j["action"] = map_entries(m.action, {m.over.dim, m.dim}, {m.dim});
  return j;
}

json to_json(const ComoduleStructure& x) {
  json j = header("comodule", x.name, x.over.field);
  j["over"] = to_json(x.over);
  j["dim"] = x.dim;
  j["coaction"] = map_entries(x.coaction, {x.dim}, {x.dim, x.over.dim});
  return j;
}

json to_json(const hopf::Bimonoid& h) {
  json j = header("bimonoid", h.name, h.field());
  const std::size_t n = h.dim();
  j["dim"] = n;
  j["labels"] = h.alg.basis_labels.empty() ? algcore::default_labels("h", n) : h.alg.basis_labels;
  j["mult"] = map_entries(h.alg.mult, {n, n}, {n});
  j["unit"] = map_entries(h.alg.unit, {}, {n});
  j["comult"] = map_entries(h.coalg.comult, {n}, {n, n});
  j["counit"] = map_entries(h.coalg.counit, {n}, {});
  return j;
}

json to_json(const hopf::ModuleComonoid& m) {
  json j = header("module_comonoid", m.m.name, m.h.field());
  const std::size_t n = m.m.dim;
  j["h"] = to_json(m.h);
  j["dim"] = n;
  j["action"] = map_entries(m.m.action, {m.h.dim(), n}, {n});
  j["comult"] = map_entries(m.comonoid.comult, {n}, {n, n});
  j["counit"] = map_entries(m.comonoid.counit, {n}, {});
  return j;
}

json to_json(const hopf::ComoduleMonoid& s) {
  json j = header("comodule_monoid", s.s.name, s.h.field());
  const std::size_t n = s.s.dim;
  j["h"] = to_json(s.h);
  j["dim"] = n;
  j["mult"] = map_entries(s.s.mult, {n, n}, {n});
  j["unit"] = map_entries(s.s.unit, {}, {n});
  j["coaction"] = map_entries(s.coaction, {n}, {s.h.dim(), n});
  return j;
}

json to_json(const hopf::HopfModule& x) {
  json j = header("hopf_module", "N", x.s.h.field());
  j["s"] = to_json(x.s);
  j["m"] = to_json(x.m);
  j["dim"] = x.dim;
  j["action"] = map_entries(x.action, {x.s.s.dim, x.dim}, {x.dim});
  j["coaction"] = map_entries(x.coaction, {x.dim}, {x.m.m.dim, x.dim});
  return j;
}

json to_json(const hopf::ModuleMonoid& x) {
  json j = header("module_monoid", x.n.name, x.a.field);
  const std::size_t n = x.n.dim;
  j["a"] = to_json(x.a);
  j["dim"] = n;
  j["action"] = map_entries(x.n.action, {x.a.dim, n}, {n});
  j["mult"] = map_entries(x.monoid.mult, {n, n}, {n});
  j["unit"] = map_entries(x.monoid.unit, {}, {n});
  return j;
}

json to_json(const algcore::AlgebraMorphism& f) {
  json j = header("algebra_morphism", f.source.name + "->" + f.target.name, f.source.field);
  j["source"] = to_json(f.source);
  j["target"] = to_json(f.target);
  j["matrix"] = map_entries(f.matrix, {f.source.dim}, {f.target.dim});
  return j;
}

json to_json(const algcore::CoalgebraMorphism& g) {
  json j = header("coalgebra_morphism", g.source.name + "->" + g.target.name, g.source.field);
  j["source"] = to_json(g.source);
  j["target"] = to_json(g.target);
  j["matrix"] = map_entries(g.matrix, {g.source.dim}, {g.target.dim});
  return j;
}

json to_json(const measuring::MeasuringMap& m) {
  json j = header("measuring", "psi", m.c.field);
  j["c"] = to_json(m.c);
  j["a"] = to_json(m.a);
  j["b"] = to_json(m.b);
  j["psi"] = map_entries(m.psi, {m.c.dim}, {m.a.dim, m.b.dim});
  return j;
}

// ---------------------------------------------------------------- readers

Algebra algebra_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_algebra(j, Ctx{base, {}}); });
}
Coalgebra coalgebra_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_coalgebra(j, Ctx{base, {}}); });
}
ModuleStructure module_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_module(j, Ctx{base, {}}); });
}
ComoduleStructure comodule_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_comodule(j, Ctx{base, {}}); });
}
hopf::Bimonoid bimonoid_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_bimonoid(j, Ctx{base, {}}); });
}
hopf::ModuleComonoid module_comonoid_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_module_comonoid(j, Ctx{base, {}}); });
}
hopf::ComoduleMonoid comodule_monoid_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_comodule_monoid(j, Ctx{base, {}}); });
}
hopf::HopfModule hopf_module_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_hopf_module(j, Ctx{base, {}}); });
}
hopf::ModuleMonoid module_monoid_from_json(const json& j, const fs::path& base) {
  return guarded([&] { return read_module_monoid(j, Ctx{base, {}}); });
}

algcore::AlgebraMorphism algebra_morphism_from_json(const json& j0, const fs::path& b0) {
  return guarded([&] {
    auto [j, ctx] = resolve(j0, Ctx{b0, {}});
    check_kind(j, "algebra_morphism");
    const FieldSpec f = field_of(j, ctx);
    algcore::AlgebraMorphism m;
    m.source = algcore::check_algebra(read_algebra(need(j, "source"), Ctx{ctx.base, f}));
    m.target = algcore::check_algebra(read_algebra(need(j, "target"), Ctx{ctx.base, f}));
    m.matrix = map_from_entries(f, need(j, "matrix"), {m.source.dim}, {m.target.dim}, "matrix");
    return m;
  });
}

algcore::CoalgebraMorphism coalgebra_morphism_from_json(const json& j0, const fs::path& b0) {
  return guarded([&] {
    auto [j, ctx] = resolve(j0, Ctx{b0, {}});
    check_kind(j, "coalgebra_morphism");
    const FieldSpec f = field_of(j, ctx);
    algcore::CoalgebraMorphism m;
    m.source = algcore::check_coalgebra(read_coalgebra(need(j, "source"), Ctx{ctx.base, f}));
    m.target = algcore::check_coalgebra(read_coalgebra(need(j, "target"), Ctx{ctx.base, f}));
    m.matrix = map_from_entries(f, need(j, "matrix"), {m.source.dim}, {m.target.dim}, "matrix");
    return m;
  });
}

measuring::MeasuringMap measuring_from_json(const json& j0, const fs::path& b0) {
  return guarded([&] {
    auto [j, ctx] = resolve(j0, Ctx{b0, {}});
    check_kind(j, "measuring");
    const FieldSpec f = field_of(j, ctx);
    measuring::MeasuringMap m;
    m.c = algcore::check_coalgebra(read_coalgebra(need(j, "c"), Ctx{ctx.base, f}));
    m.a = algcore::check_algebra(read_algebra(need(j, "a"), Ctx{ctx.base, f}));
    m.b = algcore::check_algebra(read_algebra(need(j, "b"), Ctx{ctx.base, f}));
    m.psi = map_from_entries(f, need(j, "psi"), {m.c.dim}, {m.a.dim, m.b.dim}, "psi");
    return m;
  });
}

std::vector<Mat> hints_from_json(const json& j, const Algebra& a, const Algebra& b) {
  return guarded([&] {
    const json& maps = j.is_object() ? need(j, "maps") : j;
    if (!maps.is_array()) throw SchemaError("hints must be a list of maps");
    std::vector<Mat> out;
    for (const json& m : maps) out.push_back(map_from_entries(a.field, m, {a.dim}, {b.dim}, "hint"));
    return out;
  });
}

// ---------------------------------------------------------------- bundles

json to_json(const measuring::TruncatedMeasuringComonoid& p) {
  const FieldSpec& f = p.a.field;
  json j = header("pab_bundle", "P" + std::to_string(p.degree) + "(" + p.a.name + "," + p.b.name + ")", f);
  j["a"] = to_json(p.a);
  j["b"] = to_json(p.b);
  j["degree"] = p.degree;
  j["m_max"] = 1;
  json pts = json::array();
  for (const auto& m : p.points) pts.push_back(mat_json(m.matrix));
  j["points"] = pts;
  json el = json::array();
  for (const auto& v : p.point_elements) el.push_back(vec_json(f, v));
  j["point_elements"] = el;
  j["p_n"] = to_json(p.p_n);
  j["proj"] = mat_json(p.proj);
  j["cofree_dim"] = p.cofree_dim;
  j["embedding"] = mat_json(p.embedding);
  j["cofree_proj"] = mat_json(p.cofree_proj);
  j["cofree_counit"] = mat_json(p.cofree_counit);
  return j;
}

measuring::TruncatedMeasuringComonoid comonoid_bundle_from_json(const json& j) {
  return guarded([&] {
    check_kind(j, "pab_bundle");
    const Ctx ctx{{}, {}};
    const FieldSpec f = field_of(j, ctx);
    measuring::TruncatedMeasuringComonoid p;
    p.a = algcore::check_algebra(read_algebra(need(j, "a"), Ctx{{}, f}));
    p.b = algcore::check_algebra(read_algebra(need(j, "b"), Ctx{{}, f}));
    p.degree = need(j, "degree").get<std::size_t>();
    for (const json& m : need(j, "points")) p.points.push_back({p.a, p.b, mat_from_json(f, m)});
    for (const json& v : need(j, "point_elements")) p.point_elements.push_back(vec_from_json(f, v));
    p.p_n = algcore::check_coalgebra(read_coalgebra(need(j, "p_n"), Ctx{{}, f}));
    p.proj = mat_from_json(f, need(j, "proj"));
    p.canonical_measuring = {p.p_n, p.a, p.b, p.proj};
    p.cofree_dim = need(j, "cofree_dim").get<std::size_t>();
    p.embedding = mat_from_json(f, need(j, "embedding"));
    p.cofree_proj = mat_from_json(f, need(j, "cofree_proj"));
    p.cofree_counit = mat_from_json(f, need(j, "cofree_counit"));
    return p;
  });
}

json to_json(const measuring::TruncatedMeasuringComodule& q) {
  json j = header("qmn_bundle", "Q" + std::to_string(q.p.degree) + "(" + q.m.name + "," + q.n.name + ")",
                  q.p.a.field);
  j["p"] = to_json(q.p);
  j["m"] = to_json(q.m);
  j["n"] = to_json(q.n);
  j["q_n"] = to_json(q.q_n);
  j["proj"] = mat_json(q.proj);
  j["embedding"] = mat_json(q.embedding);
  return j;
}

measuring::TruncatedMeasuringComodule comodule_bundle_from_json(const json& j) {
  return guarded([&] {
    check_kind(j, "qmn_bundle");
    const FieldSpec f = field_of(j, Ctx{});
    measuring::TruncatedMeasuringComodule q;
    q.p = comonoid_bundle_from_json(need(j, "p"));
    q.m = modcomod::check_module(read_module(need(j, "m"), Ctx{{}, f}));
    q.n = modcomod::check_module(read_module(need(j, "n"), Ctx{{}, f}));
    q.q_n = modcomod::check_comodule(read_comodule(need(j, "q_n"), Ctx{{}, f}));
    q.proj = mat_from_json(f, need(j, "proj"));
    q.embedding = mat_from_json(f, need(j, "embedding"));
    return q;
  });
}

// ---------------------------------------------------------------- finite categories

json to_json(const FiniteCategory& c) {
  json j;
  j["name"] = c.name;
  j["objects"] = c.objects;
  json ms = json::array();
  for (const auto& m : c.morphisms)
    ms.push_back(json{{"name", m.name}, {"src", c.objects[m.src]}, {"tgt", c.objects[m.tgt]}});
  j["morphisms"] = ms;
  json ids = json::array();
  for (auto i : c.identity) ids.push_back(c.morphisms[i].name);
  j["identities"] = ids;
  json comp = json::array();
  for (std::size_t g = 0; g < c.nmor(); ++g)
    for (std::size_t f = 0; f < c.nmor(); ++f) {
      if (c.is_identity(g) || c.is_identity(f) || c.src(g) != c.tgt(f)) continue;
      comp.push_back(json::array({c.morphisms[g].name, c.morphisms[f].name, c.morphisms[c.compose(g, f)].name}));
    }
  j["compose"] = comp;
  return j;
}

FiniteCategory category_from_json(const json& j) {
  return guarded([&] {
    const std::string name = j.value("name", std::string("C"));
    if (j.contains("preorder")) {
      const json& p = j.at("preorder");
      const auto objs = need(p, "objects").get<std::vector<std::string>>();
      std::vector<std::pair<std::size_t, std::size_t>> arrows;
      auto idx = [&](const json& v) {
        const auto s = v.get<std::string>();
        for (std::size_t i = 0; i < objs.size(); ++i)
          if (objs[i] == s) return i;
        throw SchemaError("preorder: unknown object '" + s + "'");
      };
      for (const json& a : optional_array(p, "arrows")) arrows.emplace_back(idx(a.at(0)), idx(a.at(1)));
      return fibcat::preorder(name, objs, arrows);
    }
    const auto objs = need(j, "objects").get<std::vector<std::string>>();
    if (std::set<std::string>(objs.begin(), objs.end()).size() != objs.size())
      throw SchemaError(name + ": duplicate object names");
    auto obj = [&](const json& v) {
      const auto s = v.get<std::string>();
      for (std::size_t i = 0; i < objs.size(); ++i)
        if (objs[i] == s) return i;
      throw SchemaError(name + ": unknown object '" + s + "'");
    };
    std::vector<fibcat::Morphism> ms;
    std::map<std::string, std::size_t> by_name;
    for (const json& m : need(j, "morphisms")) {
      fibcat::Morphism mor{need(m, "name").get<std::string>(), obj(need(m, "src")), obj(need(m, "tgt"))};
      if (!by_name.emplace(mor.name, ms.size()).second)
        throw SchemaError(name + ": duplicate morphism '" + mor.name + "'");
      ms.push_back(mor);
    }
    auto mor = [&](const json& v) {
      const auto s = v.get<std::string>();
      auto it = by_name.find(s);
      if (it == by_name.end()) throw SchemaError(name + ": unknown morphism '" + s + "'");
      return it->second;
    };
    std::vector<std::size_t> ids;
    for (const json& v : need(j, "identities")) ids.push_back(mor(v));
    if (ids.size() != objs.size()) throw SchemaError(name + ": one identity per object required");
    std::vector<std::size_t> comp(ms.size() * ms.size(), fibcat::npos);
    for (const json& e : optional_array(j, "compose")) {
      if (!e.is_array() || e.size() != 3) throw SchemaError(name + ": compose entries are [g, f, g o f]");
      comp[mor(e[0]) * ms.size() + mor(e[1])] = mor(e[2]);
    }
    return fibcat::make_category(name, objs, ms, ids, comp);
  });
}

json functor_map_json(const FiniteFunctor& f) {
  json objs = json::object(), mors = json::object();
  for (std::size_t x = 0; x < f.source.nobj(); ++x) objs[f.source.objects[x]] = f.target.objects[f.obj(x)];
  for (std::size_t m = 0; m < f.source.nmor(); ++m)
    if (!f.source.is_identity(m)) mors[f.source.morphisms[m].name] = f.target.morphisms[f(m)].name;
  return json{{"objects", objs}, {"morphisms", mors}};
}

FiniteFunctor functor_from_json(const FiniteCategory& s, const FiniteCategory& t, const json& j) {
  return guarded([&] {
    std::vector<std::pair<std::string, std::string>> objs, mors;
    for (const auto& [k, v] : need(j, "objects").items()) objs.emplace_back(k, v.get<std::string>());
    for (const auto& [k, v] : optional_object(j, "morphisms").items()) mors.emplace_back(k, v.get<std::string>());
    FiniteFunctor f = fibcat::functor_by_names(s, t, objs, mors);
    fibcat::validate(f);
    return f;
  });
}

json to_json(const FiniteAdjunction& a) {
  const FiniteCategory& c = a.left.source;
  const FiniteCategory& d = a.left.target;
  json unit = json::object(), counit = json::object();
  for (std::size_t x = 0; x < c.nobj(); ++x) unit[c.objects[x]] = c.morphisms[a.unit[x]].name;
  for (std::size_t y = 0; y < d.nobj(); ++y) counit[d.objects[y]] = d.morphisms[a.counit[y]].name;
  return json{{"c", to_json(c)},   {"d", to_json(d)},   {"left", functor_map_json(a.left)},
              {"right", functor_map_json(a.right)}, {"unit", unit}, {"counit", counit}};
}

FiniteAdjunction adjunction_from_json(const FiniteCategory& c, const FiniteCategory& d, const json& j) {
  return guarded([&] {
    FiniteAdjunction a;
    a.left = functor_from_json(c, d, need(j, "left"));
    a.right = functor_from_json(d, c, need(j, "right"));
    a.unit.assign(c.nobj(), fibcat::npos);
    a.counit.assign(d.nobj(), fibcat::npos);
    for (const auto& [k, v] : need(j, "unit").items())
      a.unit[c.object_index(k)] = c.morphism_index(v.get<std::string>());
    for (const auto& [k, v] : need(j, "counit").items())
      a.counit[d.object_index(k)] = d.morphism_index(v.get<std::string>());
    for (auto u : a.unit)
      if (u == fibcat::npos) throw SchemaError("adjunction: unit component missing");
    for (auto u : a.counit)
      if (u == fibcat::npos) throw SchemaError("adjunction: counit component missing");
    fibcat::validate(a);
    return a;
  });
}

namespace {

FiniteAdjunction self_contained_adjunction(const json& j) {
  return adjunction_from_json(category_from_json(need(j, "c")), category_from_json(need(j, "d")), j);
}

std::string variance_name(Variance v) { return v == Variance::Covariant ? "covariant" : "contravariant"; }

}  // namespace

json to_json(const IndexedCategory& ic) {
  json fibres = json::object(), re = json::object();
  for (std::size_t x = 0; x < ic.base.nobj(); ++x) fibres[ic.base.objects[x]] = to_json(ic.fibres[x]);
  for (std::size_t f = 0; f < ic.base.nmor(); ++f)
    if (!ic.base.is_identity(f)) re[ic.base.morphisms[f].name] = functor_map_json(ic.reindex[f]);
  return json{{"base", to_json(ic.base)}, {"variance", variance_name(ic.variance)}, {"fibres", fibres}, {"reindex", re}};
}

IndexedCategory indexed_from_json(const json& j) {
  return guarded([&] {
    const FiniteCategory base = category_from_json(need(j, "base"));
    const std::string v = need(j, "variance").get<std::string>();
    if (v != "covariant" && v != "contravariant") throw SchemaError("variance must be covariant or contravariant");
    const Variance var = v == "covariant" ? Variance::Covariant : Variance::Contravariant;
    std::vector<FiniteCategory> fibres(base.nobj());
    std::vector<bool> seen(base.nobj(), false);
    for (const auto& [k, c] : need(j, "fibres").items()) {
      const std::size_t x = base.object_index(k);
      fibres[x] = category_from_json(c);
      seen[x] = true;
    }
    for (std::size_t x = 0; x < base.nobj(); ++x)
      if (!seen[x]) throw SchemaError("indexed category: no fibre over '" + base.objects[x] + "'");
    std::vector<std::pair<std::size_t, FiniteFunctor>> re;
    for (const auto& [k, fm] : optional_object(j, "reindex").items()) {
      const std::size_t f = base.morphism_index(k);
      const std::size_t from = var == Variance::Covariant ? base.src(f) : base.tgt(f);
      const std::size_t to = var == Variance::Covariant ? base.tgt(f) : base.src(f);
      re.emplace_back(f, functor_from_json(fibres[from], fibres[to], fm));
    }
    return fibcat::indexed_category(base, var, fibres, re);
  });
}

json to_json(const FincatInstance& inst) {
  json j;
  j["kind"] = "fincat_instance";
  j["name"] = inst.name;
  if (!inst.has_cell) {
    j["indexed"] = to_json(inst.indexed);
  } else {
    const fibcat::FibredCell& c = inst.cell;
    j["cell"] = json{{"direction", c.direction == fibcat::CellDirection::Opfibred ? "opfibred" : "fibred"},
                     {"source", to_json(c.source.indexed)},
                     {"target", to_json(c.target.indexed)},
                     {"base_functor", functor_map_json(c.f)},
                     {"total_functor", functor_map_json(c.k)}};
  }
  if (inst.has_base) j["base_adjunction"] = to_json(inst.base);
  if (!inst.fibrewise.empty()) {
    json fw = json::array();
    for (const auto& a : inst.fibrewise) fw.push_back(to_json(a));
    j["fibrewise"] = fw;
  }
  if (inst.fixed_base) j["fixed_base"] = json{{"side", inst.side == fibcat::Side::Left ? "left" : "right"}};
  if (!inst.expect.is_null()) j["expect"] = inst.expect;
  return j;
}

FincatInstance fincat_from_json(const json& j) {
  return guarded([&] {
    check_kind(j, "fincat_instance");
    FincatInstance inst;
    inst.name = j.value("name", std::string("instance"));
    if (j.contains("cell")) {
      const json& c = j.at("cell");
      const std::string dir = need(c, "direction").get<std::string>();
      if (dir != "opfibred" && dir != "fibred") throw SchemaError("cell direction must be opfibred or fibred");
      const fibcat::TotalCategory s = fibcat::grothendieck(indexed_from_json(need(c, "source")));
      const fibcat::TotalCategory t = fibcat::grothendieck(indexed_from_json(need(c, "target")));
      const FiniteFunctor f = functor_from_json(s.indexed.base, t.indexed.base, need(c, "base_functor"));
      FiniteFunctor k;
      if (c.contains("total_functor")) {
        k = functor_from_json(s.cat, t.cat, c.at("total_functor"));
      } else {
        std::vector<FiniteFunctor> fib;
        for (std::size_t x = 0; x < s.indexed.base.nobj(); ++x)
          fib.push_back(functor_from_json(s.fibre(x), t.fibre(f.obj(x)),
                                          need(need(c, "fibre_functors"), s.indexed.base.objects[x].c_str())));
        k = fibcat::strict_total_functor(s, t, f, fib);
      }
      inst.cell = {s, t, k, f, dir == "opfibred" ? fibcat::CellDirection::Opfibred : fibcat::CellDirection::Fibred};
      fibcat::validate(inst.cell);
      inst.has_cell = true;
      inst.indexed = s.indexed;
    } else {
      inst.indexed = indexed_from_json(need(j, "indexed"));
    }
    if (j.contains("base_adjunction")) {
      inst.base = self_contained_adjunction(j.at("base_adjunction"));
      inst.has_base = true;
    }
    for (const json& a : optional_array(j, "fibrewise")) inst.fibrewise.push_back(self_contained_adjunction(a));
    if (j.contains("fixed_base")) {
      inst.fixed_base = true;
      const std::string side = need(j.at("fixed_base"), "side").get<std::string>();
      if (side != "left" && side != "right") throw SchemaError("fixed_base side must be left or right");
      inst.side = side == "left" ? fibcat::Side::Left : fibcat::Side::Right;
    }
    if (j.contains("expect")) inst.expect = j.at("expect");
    return inst;
  });
}

FincatInstance dualize(const FincatInstance& inst) {
  FincatInstance d = inst;
  d.name = inst.name + "_dual";
  d.indexed = fibcat::dualize(inst.indexed);
  if (inst.has_cell) d.cell = fibcat::dualize(inst.cell);
  if (inst.has_base) d.base = fibcat::dualize(inst.base);
  d.fibrewise.clear();
  for (const auto& a : inst.fibrewise) d.fibrewise.push_back(fibcat::dualize(a));
  if (inst.fixed_base) d.side = inst.side == fibcat::Side::Left ? fibcat::Side::Right : fibcat::Side::Left;
  return d;
}

FincatInstance instance_of(const fibcat::CorpusInstance& c) {
  FincatInstance inst;
  inst.name = c.name;
  inst.indexed = c.problem.cell.source.indexed;
  inst.has_cell = true;
  inst.cell = c.problem.cell;
  inst.has_base = true;
  inst.base = c.problem.base;
  inst.fibrewise = c.problem.fibrewise;
  inst.expect = json{{"omega_invertible", c.omega_invertible}};
  return inst;
}

FincatInstance instance_of(const fibcat::FixedBaseInstance& c) {
  FincatInstance inst;
  inst.name = c.name;
  inst.indexed = c.cell.source.indexed;
  inst.has_cell = true;
  inst.cell = c.cell;
  inst.fibrewise = c.fibrewise;
  inst.fixed_base = true;
  inst.side = c.side;
  inst.expect = json{{"chi_invertible", c.chi_invertible}};
  return inst;
}

}  // namespace mlab::io
