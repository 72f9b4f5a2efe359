#include "mlab/hopf.hpp"

#include <algorithm>
#include <optional>

namespace mlab::hopf {

using algcore::AlgebraMorphism;
using algcore::CoalgebraMorphism;
using exactlin::permute_factors;
using exactlin::Scalar;
using exactlin::swap_map;
using exactlin::tensor;
using measuring::hom_mat;
using modcomod::hom_chi;
using modcomod::hom_map;

namespace {

std::string index_text(const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s;
}

using Failure = std::optional<DiagramFailure>;

Failure compare(const std::string& name, const Mat& lhs, const Mat& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return DiagramFailure(name + " (shape)", {});
  auto [i, j] = lhs.first_difference(rhs);
  if (i < 0) return std::nullopt;
  return DiagramFailure(name, {static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
}

Verdict verdict_of(const Failure& f) { return f ? Verdict::fail(f->what()) : Verdict::pass(); }

Mat middle_swap(FieldSpec f, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return permute_factors(f, {a, b, c, d}, {0, 2, 1, 3});
}

Mat eye(FieldSpec f, std::size_t n) { return Mat::identity(f, n); }

/// (F(x)G) (U1 c V1) (P(x)R) for P: U -> U1(x)U2, R: V -> V1(x)V2, F on U1(x)V1, G on U2(x)V2.
Mat twisted(const Mat& fm, const Mat& gm, const Mat& pm, const Mat& rm, std::size_t du2, std::size_t dv2) {
  const FieldSpec& f = fm.field();
  const std::size_t dv1 = rm.rows() / dv2;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> fc(fm.cols()), gc(gm.cols());
  for (std::size_t j = 0; j < fm.cols(); ++j) fc[j] = fm.col_nz(j);
  for (std::size_t j = 0; j < gm.cols(); ++j) gc[j] = gm.col_nz(j);
  Mat out(f, fm.rows() * gm.rows(), pm.cols() * rm.cols());
  for (std::size_t u = 0; u < pm.cols(); ++u) {
    auto pu = pm.col_nz(u);
    for (std::size_t v = 0; v < rm.cols(); ++v)
      for (auto& [k1, a] : pu)
        for (auto& [k2, b] : rm.col_nz(v)) {
          const Scalar ab = a * b;
          for (auto& [w1, x] : fc[(k1 / du2) * dv1 + k2 / dv2])
            for (auto& [w2, y] : gc[(k1 % du2) * dv2 + k2 % dv2])
              out.add_to(w1 * gm.rows() + w2, u * rm.cols() + v, ab * x * y);
        }
  }
  return out;
}

/// Left comodule axioms for N -> C(x)N.
Failure left_comodule_failure(const std::string& name, const Coalgebra& c, std::size_t dim, const Mat& chi) {
  const FieldSpec& f = c.field;
  if (chi.rows() != c.dim * dim || chi.cols() != dim) return DiagramFailure(name + " coaction shape", {});
  if (auto e = compare(name + " coassociativity", tensor(c.comult, eye(f, dim)) * chi, tensor(eye(f, c.dim), chi) * chi))
    return e;
  return compare(name + " counit", tensor(c.counit, eye(f, dim)) * chi, eye(f, dim));
}

Failure bimonoid_failure(const Bimonoid& h) {
  if (h.alg.dim != h.coalg.dim || !(h.alg.field == h.coalg.field)) return DiagramFailure("bimonoid carrier", {});
  if (!algcore::algebra_axioms(h.alg)) return DiagramFailure("bimonoid algebra axioms", {});
  if (!algcore::coalgebra_axioms(h.coalg)) return DiagramFailure("bimonoid coalgebra axioms", {});
  const FieldSpec f = h.field();
  const std::size_t d = h.dim();
  const Mat& m = h.alg.mult;
  const Mat& dl = h.coalg.comult;
  if (auto e = compare("comultiplication multiplicative", dl * m,
                       twisted(m, m, dl, dl, d, d)))
    return e;
  if (auto e = compare("counit multiplicative", h.coalg.counit * m, tensor(h.coalg.counit, h.coalg.counit))) return e;
  if (auto e = compare("unit comultiplicative", dl * h.alg.unit, tensor(h.alg.unit, h.alg.unit))) return e;
  return compare("counit of unit", h.coalg.counit * h.alg.unit, eye(f, 1));
}

Failure module_comonoid_failure(const ModuleComonoid& mc) {
  if (auto e = bimonoid_failure(mc.h)) return e;
  if (!(mc.m.over == mc.h.alg)) return DiagramFailure("module is not over the bimonoid", {});
  if (!modcomod::module_axioms(mc.m)) return DiagramFailure("module axioms", {});
  if (mc.comonoid.dim != mc.m.dim || !algcore::coalgebra_axioms(mc.comonoid))
    return DiagramFailure("comonoid axioms", {});
  const std::size_t dh = mc.h.dim(), dm = mc.m.dim;
  const Mat& nu = mc.m.action;
  if (auto e = compare("module comonoid comultiplication", mc.comonoid.comult * nu,
                       twisted(nu, nu, mc.h.coalg.comult, mc.comonoid.comult, dh, dm)))
    return e;
  return compare("module comonoid counit", mc.comonoid.counit * nu, tensor(mc.h.coalg.counit, mc.comonoid.counit));
}

Failure comodule_monoid_failure(const ComoduleMonoid& s) {
  if (auto e = bimonoid_failure(s.h)) return e;
  if (!algcore::algebra_axioms(s.s)) return DiagramFailure("monoid axioms", {});
  if (auto e = left_comodule_failure("comodule monoid", s.h.coalg, s.s.dim, s.coaction)) return e;
  const std::size_t ds = s.s.dim;
  if (auto e = compare("comodule monoid multiplication", s.coaction * s.s.mult,
                       twisted(s.h.alg.mult, s.s.mult, s.coaction, s.coaction, ds, ds)))
    return e;
  return compare("comodule monoid unit", s.coaction * s.s.unit, tensor(s.h.alg.unit, s.s.unit));
}

Failure hopf_module_failure(const HopfModule& n) {
  if (auto e = comodule_monoid_failure(n.s)) return e;
  if (auto e = module_comonoid_failure(n.m)) return e;
  const Bimonoid& h = n.s.h;
  if (!(h.alg == n.m.h.alg) || !(h.coalg == n.m.h.coalg)) return DiagramFailure("S and M over different bimonoids", {});
  const std::size_t ds = n.s.s.dim, dn = n.dim;
  Algebra sv = n.s.s;
  sv.validated = true;
  if (!modcomod::module_axioms({"N", sv, dn, n.action})) return DiagramFailure("Hopf module action", {});
  if (auto e = left_comodule_failure("Hopf module", n.m.comonoid, dn, n.coaction)) return e;
  return compare("Hopf module compatibility", n.coaction * n.action,
                 twisted(n.m.m.action, n.action, n.s.coaction, n.coaction, ds, dn));
}

Failure module_monoid_failure(const ModuleMonoid& n) {
  if (!algcore::algebra_axioms(n.a)) return DiagramFailure("algebra axioms", {});
  const FieldSpec f = n.a.field;
  const std::size_t da = n.a.dim, dn = n.n.dim;
  if (auto e = compare("commutativity", n.a.mult, n.a.mult * swap_map(f, da, da))) return e;
  if (!(n.n.over == n.a) || !modcomod::module_axioms(n.n)) return DiagramFailure("module axioms", {});
  if (n.monoid.dim != dn || !algcore::algebra_axioms(n.monoid)) return DiagramFailure("monoid axioms", {});
  return compare("module monoid multiplication", n.n.action * tensor(n.a.mult, n.monoid.mult),
                 n.monoid.mult * tensor(n.n.action, n.n.action) * middle_swap(f, da, da, dn, dn));
}

template <class T>
T checked(T raw, const Failure& f) {
  if (f) throw *f;
  return raw;
}

Mat hom_column(const Mat& linear_map) { return Mat::column(linear_map.field(), measuring::hom_vec(linear_map)); }

Algebra algebra_on(const std::string& name, FieldSpec f, std::size_t dim, Mat mult, Mat unit) {
  return algcore::check_algebra({name, f, dim, algcore::default_labels("e", dim), std::move(mult), std::move(unit)});
}

/// P(x)P -> Hom(H,A), p(x)p' |-> mu_A (psi(p) (x) psi(p')) Delta_H.
Mat product_measuring(const Bimonoid& h, const Algebra& a, const Mat& proj) {
  const FieldSpec f = a.field;
  return hom_map(h.coalg.comult, a.mult) * hom_chi(f, h.dim(), a.dim, h.dim(), a.dim) * tensor(proj, proj);
}

GlobalComodMorphism factor_product(const TruncatedMeasuringComodule& q1, const TruncatedMeasuringComodule& q2,
                                   const TruncatedMeasuringComodule& target, const Mat& underlying_psi,
                                   const Coalgebra& source_coalg, const Mat& post, const measuring::Budget& budget) {
  const FieldSpec f = q1.m.over.field;
  ComoduleStructure x = modcomod::tensor_comodules(q1.q_n, q2.q_n);
  Mat rho = post * hom_chi(f, q1.m.dim, q1.n.dim, q2.m.dim, q2.n.dim) * tensor(q1.proj, q2.proj);
  measuring::MeasuringMap u{source_coalg, target.p.a, target.p.b, underlying_psi};
  return measuring::comodule_couniversal_factor(target, {u, x, target.m, target.n, rho}, budget);
}

}  // namespace

DiagramFailure::DiagramFailure(std::string name, std::vector<std::size_t> idx)
    : CheckFailure("DiagramFailure", name + (idx.empty() ? "" : " at (" + index_text(idx) + ")")),
      diagram(std::move(name)),
      indices(std::move(idx)) {}

Verdict bimonoid_axioms(const Bimonoid& h) { return verdict_of(bimonoid_failure(h)); }
Verdict module_comonoid_axioms(const ModuleComonoid& m) { return verdict_of(module_comonoid_failure(m)); }
Verdict comodule_monoid_axioms(const ComoduleMonoid& s) { return verdict_of(comodule_monoid_failure(s)); }
Verdict hopf_module_axioms(const HopfModule& n) { return verdict_of(hopf_module_failure(n)); }
Verdict module_monoid_axioms(const ModuleMonoid& n) { return verdict_of(module_monoid_failure(n)); }

Bimonoid check_bimonoid(Bimonoid raw) {
  raw = checked(std::move(raw), bimonoid_failure(raw));
  raw.alg = algcore::check_algebra(std::move(raw.alg));
  raw.coalg = algcore::check_coalgebra(std::move(raw.coalg));
  raw.validated = true;
  return raw;
}
ModuleComonoid check_module_comonoid(ModuleComonoid raw) { return checked(std::move(raw), module_comonoid_failure(raw)); }
ComoduleMonoid check_comodule_monoid(ComoduleMonoid raw) { return checked(std::move(raw), comodule_monoid_failure(raw)); }
HopfModule check_hopf_module(HopfModule raw) { return checked(std::move(raw), hopf_module_failure(raw)); }
ModuleMonoid check_module_monoid(ModuleMonoid raw) { return checked(std::move(raw), module_monoid_failure(raw)); }

Mat left_from_right(const Mat& right, std::size_t dim, std::size_t dc) {
  return swap_map(right.field(), dim, dc) * right;
}
Mat right_from_left(const Mat& left, std::size_t dim, std::size_t dc) {
  return swap_map(left.field(), dc, dim) * left;
}

Bimonoid ground_bimonoid(FieldSpec f) {
  return check_bimonoid({"k", algcore::ground_algebra(f), algcore::ground_coalgebra(f)});
}

Bimonoid group_bimonoid_cyclic(FieldSpec f, std::size_t n) {
  return check_bimonoid(
      {"k[C" + std::to_string(n) + "]", algcore::group_algebra_cyclic(f, n), algcore::group_coalgebra_cyclic(f, n)});
}

Bimonoid tensor_bimonoids(const Bimonoid& a, const Bimonoid& b) {
  return check_bimonoid({a.name + "(x)" + b.name, algcore::tensor_algebras(a.alg, b.alg),
                         algcore::tensor_coalgebras(a.coalg, b.coalg)});
}

Bimonoid dual_bimonoid(const Bimonoid& h) {
  return check_bimonoid({h.name + "*", algcore::dual_algebra(h.coalg), algcore::dual_coalgebra(h.alg)});
}

ModuleComonoid regular_module_comonoid(const Bimonoid& h) {
  return check_module_comonoid({h, modcomod::regular_module(h.alg), h.coalg});
}

ComoduleMonoid regular_comodule_monoid(const Bimonoid& h) {
  return check_comodule_monoid({h, h.alg, h.coalg.comult});
}

HopfModule regular_hopf_module(const Bimonoid& h) {
  return check_hopf_module(
      {regular_comodule_monoid(h), regular_module_comonoid(h), h.dim(), h.alg.mult, h.coalg.comult});
}

ModuleMonoid regular_module_monoid(const Algebra& a) {
  return check_module_monoid({a, modcomod::regular_module(a), a});
}

// ---------------------------------------------------------------- chi

ChiMap chi_map(const ComoduleStructure& x, const ComoduleStructure& y, const ModuleStructure& m,
               const ModuleStructure& n) {
  const FieldSpec f = m.over.field;
  const std::size_t c = x.over.dim, d = y.over.dim, a = m.over.dim, b = n.over.dim;
  const std::size_t dx = x.dim, dy = y.dim, dm = m.dim, dn = n.dim;
  ModuleStructure src = modcomod::tensor_modules(modcomod::hom_module(x, m), modcomod::hom_module(y, n));
  ModuleStructure tgt =
      modcomod::hom_module(modcomod::tensor_comodules(x, y), modcomod::tensor_modules(m, n));
  ChiMap out;
  out.morphism = {AlgebraMorphism{src.over, tgt.over, hom_chi(f, c, a, d, b)}, src, tgt, hom_chi(f, dx, dm, dy, dn)};

  const Mat act_x = hom_map(swap_map(f, dx, c) * x.coaction, m.action);
  const Mat act_y = hom_map(swap_map(f, dy, d) * y.coaction, n.action);
  const Mat l1 = permute_factors(f, {c * a, d * b, dx * dm, dy * dn}, {0, 2, 1, 3});
  const Mat l2 = tensor(hom_chi(f, c, a, dx, dm), hom_chi(f, d, b, dy, dn));
  const Mat l3 = tensor(act_x, act_y);
  const Mat l4 = hom_chi(f, dx, dm, dy, dn);
  const Mat mid = hom_chi(f, c * dx, a * dm, d * dy, b * dn);
  const Mat r1 = tensor(hom_chi(f, c, a, d, b), hom_chi(f, dx, dm, dy, dn));
  const Mat r2 = hom_chi(f, c * d, a * b, dx * dy, dm * dn);
  const Mat r3 = hom_map(tensor(eye(f, c), tensor(swap_map(f, dx, d), eye(f, dy))),
                         tensor(eye(f, a), tensor(swap_map(f, b, dm), eye(f, dn))));
  const Mat r4 = hom_map(tensor(swap_map(f, dx, c) * x.coaction, swap_map(f, dy, d) * y.coaction),
                         tensor(m.action, n.action));
  out.upper = verdict_of(compare("chi upper rectangle", mid * l2 * l1, r3 * r2 * r1));
  out.lower = verdict_of(compare("chi lower square", l4 * l3, r4 * mid));
  out.outer = verdict_of(compare("chi outer diagram", l4 * l3 * l2 * l1, r4 * r3 * r2 * r1));
  if (out.outer.ok) out.outer = modcomod::check_global_morphism(out.morphism);
  out.braided = verdict_of(compare("chi braiding", hom_map(swap_map(f, dx, d), swap_map(f, b, dm)) * hom_chi(f, d, b, dx, dm),
                                   hom_chi(f, dx, dm, d, b) * swap_map(f, d * b, dx * dm)));
  return out;
}

// ---------------------------------------------------------------- lax structure and functoriality

GlobalComodMorphism q_lax_structure(const TruncatedMeasuringComodule& q1, const TruncatedMeasuringComodule& q2,
                                    const TruncatedMeasuringComodule& q12, const measuring::Budget& budget) {
  const FieldSpec f = q1.m.over.field;
  if (!(q12.p.a == algcore::tensor_algebras(q1.p.a, q2.p.a)) || !(q12.p.b == algcore::tensor_algebras(q1.p.b, q2.p.b)))
    throw SchemaError("q_lax_structure: target is not over the tensor algebras");
  if (q12.m.dim != q1.m.dim * q2.m.dim || q12.n.dim != q1.n.dim * q2.n.dim)
    throw DimMismatch("q_lax_structure: target modules are not the tensor modules");
  Coalgebra pp = algcore::tensor_coalgebras(q1.p.p_n, q2.p.p_n);
  Mat psi = hom_chi(f, q1.p.a.dim, q1.p.b.dim, q2.p.a.dim, q2.p.b.dim) * tensor(q1.p.proj, q2.p.proj);
  return factor_product(q1, q2, q12, psi, pp, eye(f, q12.m.dim * q12.n.dim), budget);
}

GlobalComodMorphism q_functor(const TruncatedMeasuringComodule& source, const TruncatedMeasuringComodule& target,
                              const GlobalModMorphism& fm, const GlobalModMorphism& gm,
                              const measuring::Budget& budget) {
  if (!modcomod::check_global_morphism(fm) || !modcomod::check_global_morphism(gm))
    throw SchemaError("q_functor: arguments are not module morphisms");
  Mat psi = hom_map(fm.f.matrix, gm.f.matrix) * source.p.proj;
  Mat rho = hom_map(fm.p, gm.p) * source.proj;
  measuring::MeasuringMap u{source.p.p_n, target.p.a, target.p.b, psi};
  return measuring::comodule_couniversal_factor(target, {u, source.q_n, target.m, target.n, rho}, budget);
}

MeasuringBimonoid measuring_bimonoid(const Bimonoid& h, const Algebra& a, std::size_t degree,
                                     const measuring::Budget& budget) {
  if (!algcore::is_commutative(a)) throw SchemaError("measuring_bimonoid needs a commutative algebra");
  MeasuringBimonoid out;
  out.p = measuring::measuring_comonoid_truncated(h.alg, a, degree, {}, budget);
  const auto& p = out.p;
  const FieldSpec f = a.field;
  Coalgebra pp = algcore::tensor_coalgebras(p.p_n, p.p_n);
  auto mult = measuring::couniversal_factor(p, {pp, h.alg, a, product_measuring(h, a, p.proj)}, budget);
  auto unit = measuring::couniversal_factor(
      p, {algcore::ground_coalgebra(f), h.alg, a, hom_column(a.unit * h.coalg.counit)}, budget);
  out.bimonoid = check_bimonoid(
      {"P" + std::to_string(degree) + "(" + h.name + "," + a.name + ")",
       algebra_on(p.p_n.name, f, p.p_n.dim, mult.matrix, unit.matrix), p.p_n});
  return out;
}

QmnMonoid qmn_comodule_monoid(const ModuleComonoid& m, const ModuleMonoid& n, std::size_t degree,
                              const measuring::Budget& budget) {
  check_module_comonoid(m);
  check_module_monoid(n);
  const Bimonoid& h = m.h;
  const FieldSpec f = h.field();
  QmnMonoid out;
  out.p = measuring_bimonoid(h, n.a, degree, budget);
  out.q = measuring::measuring_comodule_truncated(m.m, n.n, out.p.p);
  const auto& q = out.q;
  const auto& p = out.p.p;
  const std::size_t dq = q.q_n.dim;

  Coalgebra pp = algcore::tensor_coalgebras(p.p_n, p.p_n);
  auto direct = factor_product(q, q, q, product_measuring(h, n.a, p.proj), pp,
                               hom_map(m.comonoid.comult, n.monoid.mult), budget);
  out.direct = direct.k;

  Algebra hh = algcore::tensor_algebras(h.alg, h.alg), aa = algcore::tensor_algebras(n.a, n.a);
  auto p12 = measuring::measuring_comonoid_truncated(hh, aa, degree, {}, budget);
  auto q12 = measuring::measuring_comodule_truncated(modcomod::tensor_modules(m.m, m.m),
                                                     modcomod::tensor_modules(n.n, n.n), p12);
  auto lax = q_lax_structure(q, q, q12, budget);
  GlobalModMorphism delta_m{{h.alg, hh, h.coalg.comult}, m.m, q12.m, m.comonoid.comult};
  GlobalModMorphism mu_n{{aa, n.a, n.a.mult}, q12.n, n.n, n.monoid.mult};
  auto functor = q_functor(q12, q, delta_m, mu_n, budget);
  out.via_lax = functor.k * lax.k;

  ComoduleStructure one = modcomod::trivial_comodule(f, 1);
  one.over = algcore::ground_coalgebra(f);
  measuring::MeasuringMap u{one.over, h.alg, n.a, hom_column(n.a.unit * h.coalg.counit)};
  auto unit = measuring::comodule_couniversal_factor(
      q, {u, one, m.m, n.n, hom_column(n.monoid.unit * m.comonoid.counit)}, budget);

  out.structure = check_comodule_monoid(
      {out.p.bimonoid, algebra_on(q.q_n.name, f, dq, out.direct, unit.k), left_from_right(q.q_n.coaction, dq, p.p_n.dim)});
  return out;
}

// ---------------------------------------------------------------- lifting Hopf modules

HopfLiftReport hopf_lift_check(const HopfModule& x, std::size_t degree, const measuring::Budget& budget) {
  check_hopf_module(x);
  const Bimonoid& h = x.s.h;
  const FieldSpec f = h.field();
  const ComoduleMonoid reg_s = regular_comodule_monoid(h);
  if (!(x.s.s == reg_s.s) || x.s.coaction != reg_s.coaction || x.m.m.action != h.alg.mult ||
      !(x.m.comonoid == h.coalg))
    throw SchemaError("hopf_lift_check needs S = M = H regular");
  HopfLiftReport rep;
  rep.degree = degree;
  auto record = [&](const std::string& name, bool v) {
    rep.checks.push_back(name);
    rep.passed.push_back(v);
    if (!v && rep.detail.empty()) rep.detail = name;
  };
  const Algebra k = algcore::ground_algebra(f);
  ModuleStructure unit_mod = modcomod::trivial_module(f, 1);
  unit_mod.over = k;
  rep.p = measuring_bimonoid(h, k, degree, budget);
  const auto& p = rep.p.p;
  const Bimonoid& b = rep.p.bimonoid;
  ModuleStructure x_mod = modcomod::check_module({"X", h.alg, x.dim, x.action});
  rep.q_x = measuring::measuring_comodule_truncated(x_mod, unit_mod, p);
  auto q_h = measuring::measuring_comodule_truncated(modcomod::regular_module(h.alg), unit_mod, p);

  Bimonoid dual = dual_bimonoid(h);
  record("dual bimonoid", static_cast<bool>(bimonoid_axioms(dual)));
  auto fd = measuring::finite_dual(h.alg);
  auto iso = measuring::couniversal_factor(p, fd.evaluation, budget);
  rep.dual_iso = iso.matrix;
  Mat inv;
  record("finite dual to P_n invertible", exactlin::invert(iso.matrix, inv));
  record("finite dual to P_n coalgebra map", static_cast<bool>(algcore::is_coalgebra_morphism(iso)));
  record("finite dual to P_n algebra map",
         static_cast<bool>(algcore::is_algebra_morphism({dual.alg, b.alg, iso.matrix})));

  measuring::ModuleMeasuringMap reg{p.canonical_measuring, modcomod::regular_comodule(p.p_n), q_h.m, q_h.n, p.proj};
  auto phi = measuring::comodule_couniversal_factor(q_h, reg, budget);
  rep.q_h_iso = phi.k;
  record("P_n to Q_n(H,k) comodule isomorphism",
         exactlin::invert(phi.k, inv) && phi.g.matrix == eye(f, p.p_n.dim));

  Coalgebra pp = algcore::tensor_coalgebras(p.p_n, p.p_n);
  auto act = factor_product(q_h, rep.q_x, rep.q_x, product_measuring(h, k, p.proj), pp,
                            hom_map(x.coaction, eye(f, 1)), budget);
  record("action over the product of P_n", act.g.matrix == b.alg.mult);
  const std::size_t dq = rep.q_x.q_n.dim;
  rep.lifted = {regular_comodule_monoid(b), regular_module_comonoid(b), dq, act.k * tensor(phi.k, eye(f, dq)),
                left_from_right(rep.q_x.q_n.coaction, dq, p.p_n.dim)};
  record("lifted action is a module", static_cast<bool>(modcomod::module_axioms({"Q", b.alg, dq, rep.lifted.action})));
  Verdict hv = hopf_module_axioms(rep.lifted);
  record("lifted Hopf module", hv.ok);

  // the other order: lax structure first, then functoriality along the coaction of X
  try {
    Algebra hh = algcore::tensor_algebras(h.alg, h.alg), kk = algcore::tensor_algebras(k, k);
    auto p12 = measuring::measuring_comonoid_truncated(hh, kk, degree, {}, budget);
    auto q12 = measuring::measuring_comodule_truncated(
        modcomod::tensor_modules(modcomod::regular_module(h.alg), x_mod),
        modcomod::tensor_modules(unit_mod, unit_mod), p12);
    auto lax = q_lax_structure(q_h, rep.q_x, q12, budget);
    GlobalModMorphism chi_x{{h.alg, hh, h.coalg.comult}, x_mod, q12.m, x.coaction};
    GlobalModMorphism mu_k{{kk, k, k.mult}, q12.n, unit_mod, k.mult};
    auto fun = q_functor(q12, rep.q_x, chi_x, mu_k, budget);
    rep.orders_agree = fun.k * lax.k == act.k;
    record("construction orders agree", rep.orders_agree);
    rep.orders_compared = true;
  } catch (const BudgetExceeded&) {
  } catch (const TruncationInsufficient&) {
  }
  rep.ok = std::all_of(rep.passed.begin(), rep.passed.end(), [](bool v) { return v; });
  if (!hv.ok) rep.detail += ": " + hv.failure;
  return rep;
}

}  // namespace mlab::hopf
