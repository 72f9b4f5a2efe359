#include <gtest/gtest.h>

#include "mlab/hopf.hpp"

using namespace mlab::hopf;
using namespace mlab::algcore;
using mlab::exactlin::Subspace;
using mlab::exactlin::tensor;
using mlab::modcomod::for_each_matrix;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

std::vector<mlab::modcomod::ComoduleStructure> small_comodules(FieldSpec f) {
  using namespace mlab::modcomod;
  return {trivial_comodule(f, 1), trivial_comodule(f, 2), regular_comodule(group_coalgebra_cyclic(f, 2)),
          regular_comodule(dual_coalgebra(truncated_polynomial(f, 2)))};
}

std::vector<mlab::modcomod::ModuleStructure> small_modules(FieldSpec f) {
  using namespace mlab::modcomod;
  return {trivial_module(f, 1), trivial_module(f, 2), regular_module(group_algebra_cyclic(f, 2)),
          regular_module(truncated_polynomial(f, 2))};
}

}  // namespace

TEST(Bimonoid, Examples) {
  EXPECT_TRUE(ground_bimonoid(F2).validated);
  EXPECT_TRUE(group_bimonoid_cyclic(F2, 2).validated);
  EXPECT_TRUE(group_bimonoid_cyclic(Q, 3).validated);
  auto h = group_bimonoid_cyclic(F3, 3);
  EXPECT_TRUE(tensor_bimonoids(h, h).validated);
  Bimonoid bad = group_bimonoid_cyclic(F2, 2);
  bad.coalg = divided_power_coalgebra(F2, 2);
  EXPECT_FALSE(bimonoid_axioms(bad));
  EXPECT_THROW(check_bimonoid(bad), DiagramFailure);
}

TEST(Bimonoid, DualIsBimonoid) {
  for (const Bimonoid& h : {ground_bimonoid(Q), group_bimonoid_cyclic(F2, 2), group_bimonoid_cyclic(F3, 3),
                            tensor_bimonoids(group_bimonoid_cyclic(F2, 2), group_bimonoid_cyclic(F2, 2))})
    EXPECT_TRUE(bimonoid_axioms(dual_bimonoid(h)));
}

TEST(Structures, RegularOverGroundAndC2) {
  for (const Bimonoid& h : {ground_bimonoid(F2), group_bimonoid_cyclic(F2, 2), group_bimonoid_cyclic(Q, 3)}) {
    EXPECT_TRUE(module_comonoid_axioms(regular_module_comonoid(h)));
    EXPECT_TRUE(comodule_monoid_axioms(regular_comodule_monoid(h)));
    EXPECT_TRUE(hopf_module_axioms(regular_hopf_module(h)));
    EXPECT_TRUE(module_monoid_axioms(regular_module_monoid(h.alg)));
  }
}

TEST(Structures, FailuresNameTheDiagram) {
  auto h = group_bimonoid_cyclic(F2, 2);
  ComoduleMonoid s = regular_comodule_monoid(h);
  s.coaction = tensor(h.alg.unit, Mat::identity(F2, 2));  // trivial coaction 1 (x) s
  EXPECT_TRUE(comodule_monoid_axioms(s));
  HopfModule n = regular_hopf_module(h);
  n.coaction = tensor(h.alg.unit, Mat::identity(F2, 2));
  try {
    check_hopf_module(n);
    FAIL();
  } catch (const DiagramFailure& e) {
    EXPECT_EQ(e.diagram, "Hopf module compatibility");
    EXPECT_EQ(e.indices.size(), 2u);
  }
  ModuleMonoid noncomm{matrix_algebra(F2, 2), mlab::modcomod::regular_module(matrix_algebra(F2, 2)),
                       matrix_algebra(F2, 2)};
  EXPECT_FALSE(module_monoid_axioms(noncomm));
}

TEST(Structures, CoactionSides) {
  auto c = group_coalgebra_cyclic(F2, 2);
  auto reg = mlab::modcomod::regular_comodule(c);
  Mat left = left_from_right(reg.coaction, 2, 2);
  EXPECT_EQ(right_from_left(left, 2, 2), reg.coaction);
}

TEST(Chi, TrivialCases) {
  auto k1 = mlab::modcomod::trivial_comodule(F2, 1);
  auto m1 = mlab::modcomod::trivial_module(F2, 1);
  ChiMap c = chi_map(k1, k1, m1, m1);
  EXPECT_TRUE(c.ok());
  EXPECT_EQ(c.morphism.p, Mat::identity(F2, 1));
  EXPECT_EQ(c.morphism.f.matrix, Mat::identity(F2, 1));
}

TEST(Chi, BothDiagramsOnSmallQuadruplesOverF2) {
  auto xs = small_comodules(F2);
  auto ms = small_modules(F2);
  std::size_t n = 0;
  for (auto& x : xs)
    for (auto& y : xs)
      for (auto& m : ms)
        for (auto& nn : ms) {
          ChiMap c = chi_map(x, y, m, nn);
          EXPECT_TRUE(c.upper) << c.upper.failure;
          EXPECT_TRUE(c.lower) << c.lower.failure;
          EXPECT_TRUE(c.outer) << c.outer.failure;
          EXPECT_TRUE(c.braided) << c.braided.failure;
          ++n;
        }
  EXPECT_EQ(n, 256u);
}

TEST(Chi, Naturality) {
  using namespace mlab::modcomod;
  auto c = dual_coalgebra(truncated_polynomial(F2, 2));
  auto a = truncated_polynomial(F2, 2);
  auto x = regular_comodule(c);
  auto m = regular_module(a);
  auto id_x = GlobalComodMorphism{identity_morphism(c), x, x, Mat::identity(F2, 2)};
  std::size_t checked = 0;
  for_each_matrix(F2, 2, 2, [&](const Mat& kx) {
    GlobalComodMorphism kk{identity_morphism(c), x, x, kx};
    if (!check_global_morphism(kk)) return true;
    for_each_matrix(F2, 2, 2, [&](const Mat& lm) {
      GlobalModMorphism ll{identity_morphism(a), m, m, lm};
      if (!check_global_morphism(ll)) return true;
      auto h1 = hom_global(kk, ll), h2 = hom_global(id_x, ll);
      ChiMap src = chi_map(x, x, m, m);
      auto kt = GlobalComodMorphism{identity_morphism(tensor_coalgebras(c, c)), tensor_comodules(x, x),
                                    tensor_comodules(x, x), tensor(kx, Mat::identity(F2, 2))};
      auto lt = GlobalModMorphism{identity_morphism(tensor_algebras(a, a)), tensor_modules(m, m), tensor_modules(m, m),
                                  tensor(lm, lm)};
      auto ht = hom_global(kt, lt);
      EXPECT_EQ(src.morphism.p * tensor(h1.p, h2.p), ht.p * src.morphism.p);
      ++checked;
      return true;
    });
    return true;
  });
  EXPECT_GT(checked, 1u);
}

TEST(MeasuringBimonoid, GroundAndC2) {
  auto pk = measuring_bimonoid(ground_bimonoid(F2), ground_algebra(F2), 2);
  EXPECT_EQ(pk.bimonoid.dim(), 1u);
  auto h = group_bimonoid_cyclic(F2, 2);
  auto p = measuring_bimonoid(h, ground_algebra(F2), 2);
  EXPECT_EQ(p.bimonoid.dim(), 2u);
  EXPECT_TRUE(bimonoid_axioms(p.bimonoid));
}

TEST(QLax, UnitAndTrivialCases) {
  Algebra k = ground_algebra(F2);
  auto one = mlab::modcomod::trivial_module(F2, 1);
  auto pk = mlab::measuring::measuring_comonoid_truncated(k, k, 1);
  auto qk = mlab::measuring::measuring_comodule_truncated(one, one, pk);
  auto kk = tensor_algebras(k, k);
  auto pkk = mlab::measuring::measuring_comonoid_truncated(kk, kk, 1);
  auto qkk = mlab::measuring::measuring_comodule_truncated(mlab::modcomod::tensor_modules(one, one),
                                                           mlab::modcomod::tensor_modules(one, one), pkk);
  auto lax = q_lax_structure(qk, qk, qkk);
  EXPECT_EQ(lax.k, Mat::identity(F2, 1));

  Algebra a = truncated_polynomial(F2, 2);
  auto pa = mlab::measuring::measuring_comonoid_truncated(a, k, 2);
  auto qa = mlab::measuring::measuring_comodule_truncated(mlab::modcomod::regular_module(a), one, pa);
  auto pak = mlab::measuring::measuring_comonoid_truncated(tensor_algebras(a, k), kk, 2);
  auto qak = mlab::measuring::measuring_comodule_truncated(
      mlab::modcomod::tensor_modules(mlab::modcomod::regular_module(a), one), mlab::modcomod::tensor_modules(one, one),
      pak);
  auto unit_law = q_lax_structure(qa, qk, qak);
  Mat inv;
  EXPECT_TRUE(mlab::exactlin::invert(unit_law.k, inv));
}

TEST(QLax, DualNumbersRegular) {
  Algebra a = truncated_polynomial(F2, 2);
  Algebra k = ground_algebra(F2);
  auto one = mlab::modcomod::trivial_module(F2, 1);
  auto reg = mlab::modcomod::regular_module(a);
  auto p = mlab::measuring::measuring_comonoid_truncated(a, k, 2);
  auto q = mlab::measuring::measuring_comodule_truncated(reg, one, p);
  auto p2 = mlab::measuring::measuring_comonoid_truncated(tensor_algebras(a, a), tensor_algebras(k, k), 2);
  auto q2 = mlab::measuring::measuring_comodule_truncated(mlab::modcomod::tensor_modules(reg, reg),
                                                          mlab::modcomod::tensor_modules(one, one), p2);
  auto lax = q_lax_structure(q, q, q2);
  EXPECT_TRUE(mlab::modcomod::check_global_morphism(lax));
  EXPECT_EQ(q2.proj * lax.k,
            mlab::modcomod::hom_chi(F2, 2, 1, 2, 1) * tensor(q.proj, q.proj));
}

TEST(Qmn, GroundCase) {
  auto h = ground_bimonoid(F2);
  auto r = qmn_comodule_monoid(regular_module_comonoid(h), regular_module_monoid(ground_algebra(F2)), 1);
  EXPECT_EQ(r.structure.s.dim, 1u);
  EXPECT_TRUE(comodule_monoid_axioms(r.structure));
}

TEST(Qmn, CyclicGroupPipeline) {
  auto h = group_bimonoid_cyclic(F2, 2);
  auto r = qmn_comodule_monoid(regular_module_comonoid(h), regular_module_monoid(ground_algebra(F2)), 2);
  EXPECT_TRUE(comodule_monoid_axioms(r.structure));
  EXPECT_EQ(r.via_lax, r.direct);
  EXPECT_EQ(r.structure.s.dim, 2u);
}

TEST(Qmn, StableUnderDegree) {
  auto h = group_bimonoid_cyclic(F2, 2);
  auto lo = qmn_comodule_monoid(regular_module_comonoid(h), regular_module_monoid(ground_algebra(F2)), 2);
  auto hi = qmn_comodule_monoid(regular_module_comonoid(h), regular_module_monoid(ground_algebra(F2)), 3);
  EXPECT_TRUE(mlab::measuring::truncation_contains(lo.q, hi.q));
  EXPECT_EQ(lo.structure.s.dim, hi.structure.s.dim);
  EXPECT_EQ(lo.structure.s.mult, hi.structure.s.mult);
}

TEST(HopfLift, Ground) {
  auto r = hopf_lift_check(regular_hopf_module(ground_bimonoid(F2)), 1);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(HopfLift, CyclicGroupRegular) {
  auto r = hopf_lift_check(regular_hopf_module(group_bimonoid_cyclic(F2, 2)), 2);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_TRUE(r.orders_compared);
  EXPECT_TRUE(r.orders_agree);
  EXPECT_EQ(r.lifted.dim, 2u);
}

TEST(HopfLift, KleinFourRegular) {
  auto c2 = group_bimonoid_cyclic(F2, 2);
  auto r = hopf_lift_check(regular_hopf_module(tensor_bimonoids(c2, c2)), 2);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.lifted.dim, 4u);
}
