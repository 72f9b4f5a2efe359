#include <gtest/gtest.h>

#include "mlab/fibcat.hpp"

using namespace mlab::fibcat;

namespace {

FiniteCategory chain2(const std::string& a, const std::string& b) { return preorder(a + b, {a, b}, {{0, 1}}); }

/// Contravariant over 0 -> 1 with f^* : fibre(1) -> fibre(0) given by an object map.
IndexedCategory fibration_over_arrow(const FiniteCategory& f0, const FiniteCategory& f1, std::vector<std::size_t> pull) {
  const FiniteCategory b = arrow_category();
  return indexed_category(b, Variance::Contravariant, {f0, f1}, {{b.morphism_index("0->1"), monotone(f1, f0, pull)}});
}

/// Strict fibred functor over the identity from fibre object maps into thin fibres.
FibredCell strict_fibred(const TotalCategory& s, const TotalCategory& t, const std::vector<std::vector<std::size_t>>& maps) {
  std::vector<FiniteFunctor> fib;
  for (std::size_t x = 0; x < maps.size(); ++x) fib.push_back(monotone(s.fibre(x), t.fibre(x), maps[x]));
  const auto id = identity_functor(s.indexed.base);
  return {s, t, strict_total_functor(s, t, id, fib), id, CellDirection::Fibred};
}

std::vector<FiniteAdjunction> thin_left_adjoints(const FibredCell& s, const std::vector<std::vector<std::size_t>>& maps) {
  std::vector<FiniteAdjunction> out;
  for (std::size_t x = 0; x < maps.size(); ++x) {
    const FiniteFunctor sx = fibre_functor(s.source, s.target, s.k, x, x);
    out.push_back(thin_adjunction(monotone(sx.target, sx.source, maps[x]), sx));
  }
  return out;
}

std::vector<FiniteAdjunction> thin_right_adjoints(const FibredCell& s, const std::vector<std::vector<std::size_t>>& maps) {
  std::vector<FiniteAdjunction> out;
  for (std::size_t x = 0; x < maps.size(); ++x) {
    const FiniteFunctor sx = fibre_functor(s.source, s.target, s.k, x, x);
    out.push_back(thin_adjunction(sx, monotone(sx.target, sx.source, maps[x])));
  }
  return out;
}

std::size_t brute_morphism_count(const IndexedCategory& ic) {
  std::size_t n = 0;
  const FiniteCategory& b = ic.base;
  for (std::size_t f = 0; f < b.nmor(); ++f)
    for (std::size_t a = 0; a < ic.fibres[b.src(f)].nobj(); ++a)
      for (std::size_t c = 0; c < ic.fibres[b.tgt(f)].nobj(); ++c)
        n += ic.variance == Variance::Contravariant ? ic.fibres[b.src(f)].hom(a, ic.reindex[f].obj(c)).size()
                                                    : ic.fibres[b.tgt(f)].hom(ic.reindex[f].obj(a), c).size();
  return n;
}

IndexedCategory three_object_example() {
  return fibration_over_arrow(terminal_category(), arrow_category(), {0, 0});
}

}  // namespace

TEST(FiniteCategory, PreorderIsValid) {
  const FiniteCategory c = preorder("c", {"a", "b", "c"}, {{0, 1}, {1, 2}});
  EXPECT_NO_THROW(validate(c));
  EXPECT_EQ(c.nmor(), 6u);
  EXPECT_EQ(c.compose(c.morphism_index("b->c"), c.morphism_index("a->b")), c.morphism_index("a->c"));
  EXPECT_EQ(c.compose({c.morphism_index("b->c"), c.morphism_index("a->b"), c.identity[0]}), c.morphism_index("a->c"));
}

TEST(FiniteCategory, BrokenTableRejected) {
  // e o e = e while e swaps the parallel arrows f and g.
  std::vector<Morphism> ms = {{"id_a", 0, 0}, {"id_b", 1, 1}, {"f", 0, 1}, {"g", 0, 1}, {"e", 1, 1}};
  std::vector<std::size_t> comp(25, npos);
  comp[4 * 5 + 2] = 3;
  comp[4 * 5 + 3] = 2;
  comp[4 * 5 + 4] = 4;
  EXPECT_THROW(make_category("bad", {"a", "b"}, ms, {0, 1}, comp), CategoryInvalid);
}

TEST(FiniteCategory, OppositeInvolutive) {
  const FiniteCategory c = preorder("c", {"a", "b", "c"}, {{0, 1}, {0, 2}});
  EXPECT_EQ(opposite(opposite(c)), c);
  EXPECT_NO_THROW(validate(opposite(c)));
  EXPECT_EQ(opposite(c).src(c.morphism_index("a->b")), 1u);
}

TEST(FiniteCategory, IsoDetection) {
  const FiniteCategory c = preorder("xy", {"x", "y"}, {{0, 1}, {1, 0}});
  EXPECT_TRUE(c.is_iso(c.morphism_index("x->y")));
  EXPECT_FALSE(arrow_category().is_iso(arrow_category().morphism_index("0->1")));
}

TEST(FiniteFunctor, RejectsNonFunctor) {
  const FiniteCategory two = arrow_category();
  FiniteFunctor f = identity_functor(two);
  f.on_objects = {1, 0};
  EXPECT_THROW(validate(f), FunctorInvalid);
  EXPECT_THROW(monotone(two, two, {1, 0}), FunctorInvalid);
}

TEST(FiniteAdjunction, ReflectiveInclusion) {
  const FiniteCategory pq = chain2("p", "q");
  const FiniteCategory one = terminal_category();
  const FiniteAdjunction a = thin_adjunction(constant_functor(pq, one, 0), monotone(one, pq, {1}));
  EXPECT_TRUE(adjunction_axioms(a));
  EXPECT_FALSE(hom_bijection_failure(a).has_value());
  EXPECT_TRUE(hom_bijection_natural(a));
  EXPECT_EQ(dualize(dualize(a)), a);
  EXPECT_TRUE(adjunction_axioms(dualize(a)));
  // The inclusion of the initial object is not a right adjoint of the collapse.
  EXPECT_THROW(thin_adjunction(constant_functor(pq, one, 0), monotone(one, pq, {0})), AdjunctionInvalid);
}

TEST(FiniteAdjunction, SearchMatchesConstruction) {
  const FiniteCategory pq = chain2("p", "q");
  const FiniteCategory one = terminal_category();
  auto r = find_right_adjoint(constant_functor(pq, one, 0));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->right.obj(0), 1u);
  auto l = find_left_adjoint(constant_functor(pq, one, 0));
  ASSERT_TRUE(l.has_value());
  EXPECT_EQ(l->left.obj(0), 0u);
  // The discrete two-object category has no terminal object.
  EXPECT_FALSE(find_right_adjoint(constant_functor(discrete_category(2), one, 0)).has_value());
}

TEST(Grothendieck, ConstantTerminalFibreIsBase) {
  for (const FiniteCategory& base : {arrow_category(), preorder("v", {"a", "b", "c"}, {{0, 1}, {0, 2}})})
    for (Variance v : {Variance::Contravariant, Variance::Covariant}) {
      const TotalCategory t = grothendieck(constant_indexed(base, terminal_category(), v));
      EXPECT_TRUE(same_shape(t.cat, base));
      EXPECT_TRUE(liftings_universal(t));
    }
}

TEST(Grothendieck, ThreeObjectExample) {
  const IndexedCategory ic = three_object_example();
  const TotalCategory t = grothendieck(ic);
  EXPECT_EQ(t.cat.nobj(), 3u);
  EXPECT_EQ(t.cat.nmor(), brute_morphism_count(ic));
  EXPECT_EQ(t.cat.nmor(), 6u);
  EXPECT_TRUE(liftings_universal(t));
  EXPECT_NO_THROW(validate(t.projection));
}

TEST(Grothendieck, CovariantDualReversesLiftings) {
  const TotalCategory t = grothendieck(three_object_example());
  const TotalCategory d = dualize(t);
  EXPECT_TRUE(d.opfibration());
  EXPECT_EQ(d.cat.nobj(), t.cat.nobj());
  EXPECT_EQ(d.cat, opposite(t.cat));
  EXPECT_TRUE(liftings_universal(d));
  const std::size_t f = t.indexed.base.morphism_index("0->1");
  for (std::size_t o = 0; o < t.cat.nobj(); ++o) {
    if (t.base_of(o) != 1) continue;
    const std::size_t cart = t.lifting(f, o);
    EXPECT_TRUE(is_cartesian(t.projection, cart));
    EXPECT_EQ(d.lifting(f, o), cart);
    EXPECT_TRUE(is_cocartesian(d.projection, cart));
  }
  EXPECT_EQ(dualize(d).cat, t.cat);
}

TEST(Grothendieck, FibreExtractionRoundTrip) {
  std::vector<IndexedCategory> cases = {three_object_example(), dualize(three_object_example())};
  for (const auto& inst : opfibred_corpus()) {
    cases.push_back(inst.problem.cell.source.indexed);
    cases.push_back(inst.problem.cell.target.indexed);
  }
  for (const auto& ic : cases) EXPECT_TRUE(same_shape(extract_indexed(grothendieck(ic)), ic));
}

TEST(Grothendieck, NonCartesianMorphismDetected) {
  const TotalCategory t = grothendieck(fibration_over_arrow(chain2("p", "q"), terminal_category(), {1}));
  // (f, p -> q) over 0 -> 1 has a non-invertible fibre part.
  const std::size_t f = t.indexed.base.morphism_index("0->1");
  const std::size_t m = t.morphism(f, 0, t.fibre(0).morphism_index("p->q"));
  EXPECT_FALSE(is_cartesian(t.projection, m));
  EXPECT_TRUE(is_cartesian(t.projection, t.lifting(f, t.object(1, 0))));
}

TEST(Factorize, IdentityAndLifting) {
  for (const TotalCategory& t : {grothendieck(three_object_example()), dualize(grothendieck(three_object_example()))}) {
    for (std::size_t o = 0; o < t.cat.nobj(); ++o) {
      const Factorization fz = factorize(t, t.cat.identity[o]);
      EXPECT_EQ(fz.vertical, t.cat.identity[o]);
      EXPECT_EQ(fz.lifting, t.cat.identity[o]);
      EXPECT_TRUE(fz.unique());
    }
    const FiniteCategory& b = t.indexed.base;
    for (std::size_t f = 0; f < b.nmor(); ++f)
      for (std::size_t o = 0; o < t.cat.nobj(); ++o) {
        if (t.base_of(o) != (t.opfibration() ? b.src(f) : b.tgt(f))) continue;
        const std::size_t l = t.lifting(f, o);
        const Factorization fz = factorize(t, l);
        EXPECT_EQ(fz.lifting, l);
        EXPECT_TRUE(t.cat.is_identity(fz.vertical));
      }
  }
}

TEST(Factorize, UniqueEverywhere) {
  std::vector<TotalCategory> ts = {grothendieck(three_object_example())};
  ts.push_back(dualize(ts[0]));
  for (const auto& inst : opfibred_corpus()) {
    ts.push_back(inst.problem.cell.source);
    ts.push_back(inst.problem.cell.target);
  }
  for (const auto& t : ts)
    for (std::size_t m = 0; m < t.cat.nmor(); ++m) {
      const Factorization fz = factorize(t, m);
      EXPECT_TRUE(fz.unique()) << t.cat.morphisms[m].name;
      const std::size_t back = t.opfibration() ? t.cat.compose(fz.vertical, fz.lifting) : t.cat.compose(fz.lifting, fz.vertical);
      EXPECT_EQ(back, m);
    }
}

TEST(ReindexIso, IdentityCell) {
  const TotalCategory t = grothendieck(three_object_example());
  const FibredCell c = identity_cell(t);
  EXPECT_NO_THROW(validate(c));
  const ReindexIso tau = reindex_commute_iso(c, t.indexed.base.morphism_index("0->1"));
  for (std::size_t v : tau.components) EXPECT_TRUE(t.fibre(0).is_identity(v));
  EXPECT_TRUE(reindex_iso_natural(c, tau));
}

TEST(ReindexIso, StrictCellHasIdentityComponents) {
  for (const auto& inst : opfibred_corpus()) {
    const FibredCell& c = inst.problem.cell;
    const FiniteCategory& b = c.source.indexed.base;
    for (std::size_t f = 0; f < b.nmor(); ++f) {
      const ReindexIso s = reindex_commute_iso(c, f);
      for (std::size_t v : s.components) EXPECT_TRUE(c.target.fibre(c.f.obj(b.tgt(f))).is_identity(v)) << inst.name;
      EXPECT_TRUE(reindex_iso_natural(c, s));
    }
  }
}

TEST(ReindexIso, NonIdentityVerticalIso) {
  // A has one object per fibre; B_0 has two isomorphic objects x, y and f^* e = x.
  const TotalCategory a = grothendieck(fibration_over_arrow(preorder("a", {"a"}, {}), preorder("b", {"b"}, {}), {0}));
  const FiniteCategory xy = preorder("xy", {"x", "y"}, {{0, 1}, {1, 0}});
  const TotalCategory b = grothendieck(fibration_over_arrow(xy, preorder("e", {"e"}, {}), {0}));
  const std::size_t f = a.indexed.base.morphism_index("0->1");
  FiniteFunctor s{a.cat, b.cat, {b.object(0, 1), b.object(1, 0)}, {}};
  for (std::size_t m = 0; m < a.cat.nmor(); ++m) {
    if (a.is_vertical(m)) {
      s.on_morphisms.push_back(b.cat.identity[s.obj(a.cat.src(m))]);
    } else {
      s.on_morphisms.push_back(b.morphism(f, 0, xy.morphism_index("y->x")));
    }
  }
  const FibredCell cell{a, b, s, identity_functor(a.indexed.base), CellDirection::Fibred};
  ASSERT_NO_THROW(validate(cell));
  const ReindexIso tau = reindex_commute_iso(cell, f);
  ASSERT_EQ(tau.components.size(), 1u);
  EXPECT_EQ(tau.components[0], xy.morphism_index("x->y"));
  EXPECT_FALSE(xy.is_identity(tau.components[0]));
  EXPECT_TRUE(reindex_iso_natural(cell, tau));
}

TEST(Synthesis, IdentityInstance) {
  const auto corpus = opfibred_corpus();
  const auto& p = corpus.at(0).problem;
  ASSERT_EQ(corpus[0].name, "identity");
  const Synthesis s = synthesize_right_adjoint(p);
  EXPECT_EQ(s.r, identity_functor(p.cell.target.cat));
  EXPECT_TRUE(check_omega_invertible(s, p.cell.source));
  EXPECT_TRUE(cocartesian_check(s.r, p.cell.target, p.cell.source));
  EXPECT_TRUE(check_cat2_adjunction(p.cell.source, p.cell.target, s.total, p.base));
}

TEST(Synthesis, CorpusProperties) {
  const auto corpus = opfibred_corpus();
  ASSERT_GE(corpus.size(), 5u);
  for (const auto& inst : corpus) {
    SCOPED_TRACE(inst.name);
    const auto& p = inst.problem;
    const Synthesis s = synthesize_right_adjoint(p);
    EXPECT_FALSE(hom_bijection_failure(s.total).has_value());
    EXPECT_TRUE(hom_bijection_natural(s.total));
    const bool omega = check_omega_invertible(s, p.cell.source);
    EXPECT_EQ(omega, inst.omega_invertible);
    EXPECT_EQ(omega, cocartesian_check(s.r, p.cell.target, p.cell.source));
    EXPECT_TRUE(check_cat2_adjunction(p.cell.source, p.cell.target, s.total, p.base));
    const auto back = extract_fibrewise(p.cell.source, p.cell.target, s.total, p.base);
    ASSERT_EQ(back.size(), p.fibrewise.size());
    for (std::size_t y = 0; y < back.size(); ++y) {
      EXPECT_TRUE(adjunction_axioms(back[y]));
      EXPECT_EQ(back[y], p.fibrewise[y]);
    }
  }
}

TEST(Synthesis, AgreesWithUniversalArrowSearch) {
  for (const auto& inst : opfibred_corpus()) {
    const auto& p = inst.problem;
    const Synthesis s = synthesize_right_adjoint(p);
    auto found = find_right_adjoint(p.cell.k);
    ASSERT_TRUE(found.has_value()) << inst.name;
    // All fibres are skeletal posets, so right adjoints agree on the nose on objects.
    EXPECT_EQ(found->right.on_objects, s.r.on_objects) << inst.name;
  }
}

TEST(Synthesis, OmegaFailureStillAdjoint) {
  for (const auto& inst : opfibred_corpus()) {
    if (inst.name != "omega_fail") continue;
    const Synthesis s = synthesize_right_adjoint(inst.problem);
    EXPECT_TRUE(adjunction_axioms(s.total));
    EXPECT_FALSE(check_omega_invertible(s, inst.problem.cell.source));
    EXPECT_FALSE(cocartesian_check(s.r, inst.problem.cell.target, inst.problem.cell.source));
    std::size_t bad = 0;
    for (const auto& o : s.omega)
      if (!inst.problem.cell.source.fibre(o.fibre).is_iso(o.component)) ++bad;
    EXPECT_EQ(bad, 1u);
  }
}

TEST(Synthesis, WrongFibrewiseAdjunctionRejected) {
  auto corpus = opfibred_corpus();
  auto p = corpus.at(1).problem;
  ASSERT_EQ(corpus[1].name, "reflective");
  p.fibrewise[1] = p.fibrewise[0];
  EXPECT_THROW(synthesize_right_adjoint(p), FibrewiseAdjunctionInvalid);
  p = corpus[1].problem;
  std::swap(p.fibrewise[0].unit, p.fibrewise[0].counit);
  EXPECT_THROW(synthesize_right_adjoint(p), FibrewiseAdjunctionInvalid);
}

TEST(Cat2, NonVerticalAutomorphismDetected) {
  const FiniteCategory base = discrete_category(2);
  const TotalCategory t = grothendieck(constant_indexed(base, terminal_category(), Variance::Covariant));
  const FiniteAdjunction id = identity_adjunction(t.cat);
  EXPECT_TRUE(check_cat2_adjunction(t, t, id, identity_adjunction(base)));
  FiniteFunctor swap{t.cat, t.cat, {1, 0}, {1, 0}};
  ASSERT_NO_THROW(validate(swap));
  FiniteAdjunction bad = id;
  bad.right = compose(id.right, swap);
  EXPECT_FALSE(check_cat2_adjunction(t, t, bad, identity_adjunction(base)));
}

TEST(Dualize, Involutive) {
  for (const auto& inst : opfibred_corpus()) {
    const auto& p = inst.problem;
    const OpfibredAdjointProblem back = dualize(dualize(p));
    EXPECT_EQ(back.cell.k, p.cell.k);
    EXPECT_EQ(back.cell.f, p.cell.f);
    EXPECT_EQ(back.cell.source.cat, p.cell.source.cat);
    EXPECT_EQ(back.cell.target.indexed, p.cell.target.indexed);
    EXPECT_EQ(back.base, p.base);
    EXPECT_EQ(back.fibrewise, p.fibrewise);
  }
}

TEST(Dualize, FibrationTheoremOnOpposites) {
  for (const auto& inst : opfibred_corpus()) {
    SCOPED_TRACE(inst.name);
    const FibredAdjointProblem q = dualize(inst.problem);
    ASSERT_NO_THROW(validate(q.cell));
    EXPECT_FALSE(q.cell.source.opfibration());
    const TotalCategory& a = q.cell.target;
    const TotalCategory& b = q.cell.source;
    const Synthesis s = synthesize_left_adjoint(q);
    EXPECT_TRUE(adjunction_axioms(s.total));
    EXPECT_EQ(s.total.right, q.cell.k);
    EXPECT_TRUE(hom_bijection_natural(s.total));
    EXPECT_EQ(check_omega_invertible(s, b), cartesian_check(s.r, a, b));
    EXPECT_EQ(check_omega_invertible(s, b), inst.omega_invertible);
    EXPECT_TRUE(check_cat2_adjunction(a, b, s.total, q.base));
    EXPECT_EQ(extract_fibrewise(a, b, s.total, q.base), q.fibrewise);
  }
}

TEST(FixedBase, IdentityFunctor) {
  const TotalCategory t = grothendieck(three_object_example());
  const FibredCell c = identity_cell(t);
  std::vector<FiniteAdjunction> fib;
  for (std::size_t x = 0; x < 2; ++x) fib.push_back(identity_adjunction(t.fibre(x)));
  for (Side side : {Side::Left, Side::Right}) {
    const FixedBaseReport r = fixed_base_fibred_adjoint_check(c, fib, side);
    EXPECT_TRUE(r.chi_invertible);
    for (const auto& [f, a, chi] : r.chi) EXPECT_TRUE(t.fibre(t.indexed.base.src(f)).is_identity(chi));
    EXPECT_TRUE(r.fibred_adjoint_exists);
    EXPECT_TRUE(r.agree());
  }
  EXPECT_TRUE(fixed_base_fibred_adjoint_check(c, fib, Side::Left).synthesized_fibred);
}

TEST(FixedBase, LeftAdjointWithInvertibleChi) {
  const TotalCategory b = grothendieck(fibration_over_arrow(chain2("m", "n"), chain2("r", "s"), {0, 1}));
  const TotalCategory a = grothendieck(fibration_over_arrow(preorder("d", {"d"}, {}), preorder("e", {"e"}, {}), {0}));
  const FibredCell s = strict_fibred(b, a, {{0, 0}, {0, 0}});
  const FixedBaseReport r = fixed_base_fibred_adjoint_check(s, thin_left_adjoints(s, {{0}, {0}}), Side::Left);
  EXPECT_TRUE(r.chi_invertible);
  EXPECT_TRUE(r.plain_adjoint);
  EXPECT_TRUE(r.synthesized_fibred);
  EXPECT_TRUE(r.fibred_adjoint_exists);
  EXPECT_TRUE(r.agree());
}

TEST(FixedBase, ChiFailureLeavesPlainAdjoint) {
  const TotalCategory b = grothendieck(fibration_over_arrow(chain2("m", "n"), preorder("*", {"*"}, {}), {1}));
  const TotalCategory a = grothendieck(fibration_over_arrow(preorder("d", {"d"}, {}), preorder("e", {"e"}, {}), {0}));
  const FibredCell s = strict_fibred(b, a, {{0, 0}, {0}});
  const FixedBaseReport r = fixed_base_fibred_adjoint_check(s, thin_left_adjoints(s, {{0}, {0}}), Side::Left);
  EXPECT_FALSE(r.chi_invertible);
  EXPECT_TRUE(r.plain_adjoint);
  EXPECT_FALSE(r.synthesized_fibred);
  EXPECT_FALSE(r.fibred_adjoint_exists);
  EXPECT_TRUE(r.agree());
}

TEST(FixedBase, RightSide) {
  const TotalCategory a = grothendieck(fibration_over_arrow(preorder("d", {"d"}, {}), preorder("e", {"e"}, {}), {0}));
  for (bool good : {true, false}) {
    const TotalCategory b =
        grothendieck(fibration_over_arrow(chain2("p", "q"), chain2("u", "v"), good ? std::vector<std::size_t>{0, 1}
                                                                                    : std::vector<std::size_t>{0, 0}));
    const FibredCell s = strict_fibred(b, a, {{0, 0}, {0, 0}});
    const FixedBaseReport r = fixed_base_fibred_adjoint_check(s, thin_right_adjoints(s, {{1}, {1}}), Side::Right);
    EXPECT_EQ(r.chi_invertible, good);
    EXPECT_EQ(r.fibred_adjoint_exists, good);
    EXPECT_TRUE(r.agree());
  }
}

TEST(FixedBase, CorpusAgrees) {
  for (const FixedBaseInstance& inst : fixed_base_corpus()) {
    const FixedBaseReport r = fixed_base_fibred_adjoint_check(inst.cell, inst.fibrewise, inst.side);
    EXPECT_EQ(r.chi_invertible, inst.chi_invertible) << inst.name;
    EXPECT_TRUE(r.agree()) << inst.name;
  }
}
