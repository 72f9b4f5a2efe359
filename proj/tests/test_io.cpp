#include <gtest/gtest.h>

#include <filesystem>

#include "mlab/io.hpp"

using namespace mlab;
using namespace mlab::io;
using exactlin::FieldSpec;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec Q = FieldSpec::rationals();

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mlab_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Io, AlgebraRoundTrip) {
  for (const auto& a : {algcore::truncated_polynomial(F2, 2), algcore::group_algebra_cyclic(Q, 3),
                        algcore::matrix_algebra(Q, 2)}) {
    const Algebra b = algebra_from_json(to_json(a));
    EXPECT_EQ(a, b);
    EXPECT_EQ(b.basis_labels, a.basis_labels);
  }
}

TEST(Io, RationalScalarsAreStrings) {
  Algebra a = algcore::group_algebra_cyclic(Q, 2);
  a.unit.set(0, 0, exactlin::Scalar(3, 4));
  const json j = to_json(a);
  EXPECT_EQ(j["unit"][0][1], "3/4");
  EXPECT_EQ(algebra_from_json(j).unit.at(0, 0), exactlin::Scalar(3, 4));
}

TEST(Io, CoalgebraModuleComoduleRoundTrip) {
  const Coalgebra c = algcore::matrix_coalgebra(Q, 2);
  EXPECT_EQ(coalgebra_from_json(to_json(c)), c);
  const auto m = modcomod::regular_module(algcore::truncated_polynomial(F2, 2));
  EXPECT_TRUE(modcomod::same_structure(module_from_json(to_json(m)), m));
  const auto x = modcomod::regular_comodule(algcore::divided_power_coalgebra(F2, 3));
  EXPECT_TRUE(modcomod::same_structure(comodule_from_json(to_json(x)), x));
}

TEST(Io, HopfStructuresRoundTrip) {
  const hopf::Bimonoid h = hopf::group_bimonoid_cyclic(F2, 2);
  const hopf::Bimonoid h2 = bimonoid_from_json(to_json(h));
  EXPECT_EQ(h2.alg, h.alg);
  EXPECT_EQ(h2.coalg, h.coalg);
  const hopf::HopfModule x = hopf::regular_hopf_module(h);
  const hopf::HopfModule y = hopf_module_from_json(to_json(x));
  EXPECT_EQ(y.action, x.action);
  EXPECT_EQ(y.coaction, x.coaction);
  EXPECT_TRUE(hopf::hopf_module_axioms(y).ok) << hopf::hopf_module_axioms(y).failure;
  const auto mm = hopf::regular_module_monoid(algcore::truncated_polynomial(F2, 2));
  const auto v = hopf::module_monoid_axioms(module_monoid_from_json(to_json(mm)));
  EXPECT_TRUE(v.ok) << v.failure;
}

TEST(Io, ZeroDimensionRejected) {
  json j = to_json(algcore::ground_algebra(F2));
  j["dim"] = 0;
  EXPECT_THROW(algebra_from_json(j), SchemaError);
}

TEST(Io, BadScalarAndIndex) {
  json j = to_json(algcore::truncated_polynomial(F2, 2));
  j["unit"][0][1] = "x";
  EXPECT_THROW(algebra_from_json(j), ParseError);
  j = to_json(algcore::truncated_polynomial(F2, 2));
  j["mult"][0][0] = 7;
  EXPECT_THROW(algebra_from_json(j), SchemaError);
}

TEST(Io, BrokenAssociativityReportsTriple) {
  json j = to_json(algcore::truncated_polynomial(Q, 3));
  j["mult"].push_back(json::array({1, 1, 0, "1"}));
  const Algebra a = algebra_from_json(j);
  const auto v = algcore::algebra_axioms(a);
  EXPECT_FALSE(v.ok);
  EXPECT_THROW(algcore::check_algebra(a), algcore::AssociativityFailure);
}

TEST(Io, RelativeReferences) {
  const fs::path dir = scratch("refs");
  const Algebra a = algcore::truncated_polynomial(F2, 2);
  write_json_file(dir / "a.json", to_json(a));
  json m = to_json(modcomod::regular_module(a));
  m["over"] = "a.json";
  write_json_file(dir / "sub" / "m.json", m);
  m["over"] = "../a.json";
  write_json_file(dir / "sub" / "m.json", m);
  const Document d = load_document(dir / "sub" / "m.json");
  EXPECT_EQ(d.kind, "module");
  EXPECT_EQ(module_from_json(d.data, d.base()).over, a);
}

TEST(Io, FieldMismatchInNestedFile) {
  json m = to_json(modcomod::regular_module(algcore::truncated_polynomial(F2, 2)));
  m["field"] = "F3";
  EXPECT_THROW(module_from_json(m), FieldMismatch);
}

TEST(Io, UnknownKindRejected) {
  const fs::path dir = scratch("kind");
  write_json_file(dir / "x.json", json{{"kind", "sheaf"}});
  EXPECT_THROW(load_document(dir / "x.json"), SchemaError);
}

TEST(Io, PabBundleRoundTrip) {
  const auto p = measuring::measuring_comonoid_truncated(algcore::truncated_polynomial(F2, 2), algcore::ground_algebra(F2), 2);
  const auto q = comonoid_bundle_from_json(to_json(p));
  EXPECT_EQ(q.p_n, p.p_n);
  EXPECT_EQ(q.proj, p.proj);
  EXPECT_EQ(q.points.size(), p.points.size());
  EXPECT_EQ(to_json(q).dump(), to_json(p).dump());
}

TEST(Io, CategoryFormats) {
  const auto c = fibcat::preorder("c", {"a", "b", "c"}, {{0, 1}, {1, 2}});
  EXPECT_EQ(category_from_json(to_json(c)), c);
  const json shorthand = {{"name", "c"}, {"preorder", {{"objects", {"a", "b", "c"}}, {"arrows", json::array({json::array({"a", "b"}), json::array({"b", "c"})})}}}};
  EXPECT_EQ(category_from_json(shorthand), c);
}

TEST(Io, FincatCorpusRoundTrip) {
  for (const auto& c : fibcat::opfibred_corpus()) {
    const FincatInstance inst = instance_of(c);
    const FincatInstance back = fincat_from_json(to_json(inst));
    EXPECT_EQ(back.cell.k, inst.cell.k) << c.name;
    EXPECT_EQ(back.base, inst.base) << c.name;
    EXPECT_EQ(back.fibrewise, inst.fibrewise) << c.name;
    EXPECT_EQ(to_json(back).dump(), to_json(inst).dump()) << c.name;
    const FincatInstance dual = dualize(inst);
    EXPECT_EQ(fincat_from_json(to_json(dual)).cell.k, dual.cell.k) << c.name;
  }
  for (const auto& c : fibcat::fixed_base_corpus()) {
    const FincatInstance inst = instance_of(c);
    EXPECT_EQ(to_json(fincat_from_json(to_json(inst))).dump(), to_json(inst).dump()) << c.name;
  }
}
