#include "mlab/modcomod.hpp"

#include <map>

namespace mlab::modcomod {

using exactlin::permute_factors;
using exactlin::require_same_field;
using exactlin::swap_map;
using exactlin::tensor;

ActionAssociativityFailure::ActionAssociativityFailure(std::size_t i_, std::size_t j_, std::size_t k_)
    : CheckFailure("ActionAssociativityFailure",
                   "(a" + std::to_string(i_) + "a" + std::to_string(j_) + ").m" + std::to_string(k_) +
                       " != a" + std::to_string(i_) + ".(a" + std::to_string(j_) + ".m" +
                       std::to_string(k_) + ")"),
      i(i_), j(j_), k(k_) {}

ActionUnitFailure::ActionUnitFailure(std::size_t k_)
    : CheckFailure("ActionUnitFailure", "1.m" + std::to_string(k_) + " != m" + std::to_string(k_)),
      k(k_) {}

CoactionCoassociativityFailure::CoactionCoassociativityFailure(std::size_t i_)
    : CheckFailure("CoactionCoassociativityFailure",
                   "(delta(x)1)delta != (1(x)Delta)delta at x" + std::to_string(i_)),
      i(i_) {}

CoactionCounitFailure::CoactionCounitFailure(std::size_t i_)
    : CheckFailure("CoactionCounitFailure", "(1(x)eps)delta != id at x" + std::to_string(i_)),
      i(i_) {}

bool same_structure(const ModuleStructure& a, const ModuleStructure& b) {
  return a.dim == b.dim && a.over == b.over && a.action == b.action;
}

bool same_structure(const ComoduleStructure& a, const ComoduleStructure& b) {
  return a.dim == b.dim && a.over == b.over && a.coaction == b.coaction;
}

namespace {

void module_shapes(const ModuleStructure& m) {
  if (m.dim == 0) throw SchemaError("module of dimension 0");
  if (m.action.rows() != m.dim || m.action.cols() != m.over.dim * m.dim)
    throw DimMismatch("action must be dim x (dimA*dim)");
  require_same_field(m.action.field(), m.over.field, "module");
}

void comodule_shapes(const ComoduleStructure& x) {
  if (x.dim == 0) throw SchemaError("comodule of dimension 0");
  if (x.coaction.rows() != x.dim * x.over.dim || x.coaction.cols() != x.dim)
    throw DimMismatch("coaction must be (dim*dimC) x dim");
  require_same_field(x.coaction.field(), x.over.field, "comodule");
}

void axpy(const FieldSpec& f, Vec& y, const Scalar& a, const Vec& x) {
  if (sgn(a) == 0) return;
  for (std::size_t t = 0; t < x.size(); ++t)
    if (sgn(x[t]) != 0) y[t] = f.reduce(y[t] + a * x[t]);
}

}  // namespace

ModuleStructure check_module(ModuleStructure raw) {
  algcore::require_valid(raw.over, "check_module");
  module_shapes(raw);
  const Algebra& A = raw.over;
  const std::size_t da = A.dim, dm = raw.dim;
  const FieldSpec& f = A.field;
  std::vector<Vec> act(da * dm);
  for (std::size_t c = 0; c < da * dm; ++c) act[c] = raw.action.col(c);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      Vec ij = A.product(i, j);
      for (std::size_t k = 0; k < dm; ++k) {
        Vec left(dm), right(dm);
        for (std::size_t s = 0; s < da; ++s) axpy(f, left, ij[s], act[s * dm + k]);
        const Vec& jk = act[j * dm + k];
        for (std::size_t t = 0; t < dm; ++t) axpy(f, right, jk[t], act[i * dm + t]);
        if (left != right) throw ActionAssociativityFailure(i, j, k);
      }
    }
  for (std::size_t k = 0; k < dm; ++k) {
    Vec v(dm);
    for (std::size_t s = 0; s < da; ++s) axpy(f, v, A.unit.at(s, 0), act[s * dm + k]);
    Vec e(dm);
    e[k] = 1;
    if (v != e) throw ActionUnitFailure(k);
  }
  raw.validated = true;
  return raw;
}

ComoduleStructure check_comodule(ComoduleStructure raw) {
  algcore::require_valid(raw.over, "check_comodule");
  comodule_shapes(raw);
  const Coalgebra& C = raw.over;
  const std::size_t dc = C.dim, dx = raw.dim;
  const FieldSpec& f = C.field;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> d(dx), dC(dc);
  for (std::size_t i = 0; i < dx; ++i) d[i] = raw.coaction.col_nz(i);
  for (std::size_t i = 0; i < dc; ++i) dC[i] = C.comult.col_nz(i);
  for (std::size_t i = 0; i < dx; ++i) {
    std::map<std::size_t, Scalar> left, right;
    for (auto& [st, x] : d[i]) {
      const std::size_t s = st / dc, t = st % dc;
      for (auto& [uv, y] : d[s]) left[uv * dc + t] += x * y;
      for (auto& [ab, y] : dC[t]) right[s * dc * dc + ab] += x * y;
    }
    auto clean = [&](std::map<std::size_t, Scalar>& m) {
      for (auto it = m.begin(); it != m.end();) {
        it->second = f.reduce(it->second);
        it = sgn(it->second) == 0 ? m.erase(it) : std::next(it);
      }
    };
    clean(left);
    clean(right);
    if (left != right) throw CoactionCoassociativityFailure(i);
  }
  for (std::size_t i = 0; i < dx; ++i) {
    Vec v(dx);
    for (auto& [st, x] : d[i]) v[st / dc] = f.reduce(v[st / dc] + x * C.counit.at(0, st % dc));
    Vec e(dx);
    e[i] = 1;
    if (v != e) throw CoactionCounitFailure(i);
  }
  raw.validated = true;
  return raw;
}

Verdict module_axioms(const ModuleStructure& m) {
  try {
    check_module(m);
  } catch (const Error& e) {
    return Verdict::fail(e.what());
  }
  return Verdict::pass();
}

Verdict comodule_axioms(const ComoduleStructure& x) {
  try {
    check_comodule(x);
  } catch (const Error& e) {
    return Verdict::fail(e.what());
  }
  return Verdict::pass();
}

ModuleStructure regular_module(const Algebra& a) {
  return check_module({a.name + "_reg", a, a.dim, a.mult});
}

ComoduleStructure regular_comodule(const Coalgebra& c) {
  return check_comodule({c.name + "_reg", c, c.dim, c.comult});
}

ModuleStructure trivial_module(FieldSpec f, std::size_t n) {
  return check_module({"k^" + std::to_string(n), algcore::ground_algebra(f), n, Mat::identity(f, n)});
}

ComoduleStructure trivial_comodule(FieldSpec f, std::size_t n) {
  return check_comodule(
      {"k^" + std::to_string(n), algcore::ground_coalgebra(f), n, Mat::identity(f, n)});
}

ComoduleStructure cofree_comodule(std::size_t v_dim, const Coalgebra& d) {
  Mat coaction = tensor(Mat::identity(d.field, v_dim), d.comult);
  return check_comodule({"k^" + std::to_string(v_dim) + "(x)" + d.name, d, v_dim * d.dim, coaction});
}

ModuleStructure restrict(const AlgebraMorphism& f, const ModuleStructure& n) {
  if (!(f.target == n.over)) throw DimMismatch("restrict: module is not over the target algebra");
  Mat action = n.action * tensor(f.matrix, Mat::identity(n.action.field(), n.dim));
  return check_module({n.name, f.source, n.dim, action});
}

ComoduleStructure corestrict(const CoalgebraMorphism& g, const ComoduleStructure& x) {
  if (!(g.source == x.over)) throw DimMismatch("corestrict: comodule is not over the source coalgebra");
  Mat coaction = tensor(Mat::identity(x.coaction.field(), x.dim), g.matrix) * x.coaction;
  return check_comodule({x.name, g.target, x.dim, coaction});
}

Verdict check_global_morphism(const GlobalModMorphism& mor) {
  const Mat& p = mor.p;
  if (p.rows() != mor.target.dim || p.cols() != mor.source.dim)
    throw DimMismatch("global module morphism carrier shape");
  if (mor.f.matrix.rows() != mor.target.over.dim || mor.f.matrix.cols() != mor.source.over.dim)
    throw DimMismatch("global module morphism base shape");
  Mat lhs = p * mor.source.action;
  Mat rhs = mor.target.action * tensor(mor.f.matrix, p);
  if (lhs != rhs) {
    auto [r, c] = lhs.first_difference(rhs);
    return Verdict::fail("p(a.m) != f(a).p(m) at a" + std::to_string(c / mor.source.dim) + ", m" +
                         std::to_string(c % mor.source.dim) + ", coordinate " + std::to_string(r));
  }
  return Verdict::pass();
}

Verdict check_global_morphism(const GlobalComodMorphism& mor) {
  const Mat& k = mor.k;
  if (k.rows() != mor.target.dim || k.cols() != mor.source.dim)
    throw DimMismatch("global comodule morphism carrier shape");
  if (mor.g.matrix.rows() != mor.target.over.dim || mor.g.matrix.cols() != mor.source.over.dim)
    throw DimMismatch("global comodule morphism base shape");
  Mat lhs = tensor(k, mor.g.matrix) * mor.source.coaction;
  Mat rhs = mor.target.coaction * k;
  if (lhs != rhs) {
    auto [r, c] = lhs.first_difference(rhs);
    return Verdict::fail("(k(x)g)delta_X != delta_Y k at x" + std::to_string(c) + ", coordinate " +
                         std::to_string(r));
  }
  return Verdict::pass();
}

GlobalModMorphism compose(const GlobalModMorphism& second, const GlobalModMorphism& first) {
  return {{first.f.source, second.f.target, second.f.matrix * first.f.matrix},
          first.source,
          second.target,
          second.p * first.p};
}

GlobalComodMorphism compose(const GlobalComodMorphism& second, const GlobalComodMorphism& first) {
  return {{first.g.source, second.g.target, second.g.matrix * first.g.matrix},
          first.source,
          second.target,
          second.k * first.k};
}

GlobalModMorphism cartesian_lifting(const AlgebraMorphism& f, const ModuleStructure& n) {
  ModuleStructure fn = restrict(f, n);
  return {f, fn, n, Mat::identity(n.action.field(), n.dim)};
}

GlobalComodMorphism cocartesian_lifting(const CoalgebraMorphism& g, const ComoduleStructure& x) {
  ComoduleStructure gx = corestrict(g, x);
  return {g, x, gx, Mat::identity(x.coaction.field(), x.dim)};
}

ModFactorization factor_global(const GlobalModMorphism& mor) {
  GlobalModMorphism cart = cartesian_lifting(mor.f, mor.target);
  GlobalModMorphism vert{algcore::identity_morphism(mor.source.over), mor.source, cart.source, mor.p};
  if (!check_global_morphism(vert)) throw CheckFailure("NotAMorphism", "factor_global: input is not a morphism");
  return {vert, cart};
}

ComodFactorization factor_global(const GlobalComodMorphism& mor) {
  GlobalComodMorphism cocart = cocartesian_lifting(mor.g, mor.source);
  GlobalComodMorphism vert{algcore::identity_morphism(mor.target.over), cocart.target, mor.target, mor.k};
  if (!check_global_morphism(vert)) throw CheckFailure("NotAMorphism", "factor_global: input is not a morphism");
  return {cocart, vert};
}

Mat hom_map(const Mat& f, const Mat& g) { return tensor(f.transpose(), g); }

Mat hom_chi(FieldSpec f, std::size_t dv1, std::size_t dw1, std::size_t dv2, std::size_t dw2) {
  return permute_factors(f, {dv1, dw1, dv2, dw2}, {0, 2, 1, 3});
}

Algebra hom_algebra(const Coalgebra& c, const Algebra& a) {
  if (algcore::is_cocommutative(c)) return algcore::convolution_algebra(c, a);
  return algcore::convolution_algebra(algcore::coopposite(c), a);
}

ModuleStructure hom_module(const ComoduleStructure& x, const ModuleStructure& m) {
  require_same_field(x.over.field, m.over.field, "hom_module");
  algcore::require_valid(x.over, "hom_module");
  algcore::require_valid(m.over, "hom_module");
  Algebra alg = hom_algebra(x.over, m.over);
  const std::size_t dc = x.over.dim, da = m.over.dim, dx = x.dim, dm = m.dim;
  const std::size_t dh = dx * dm;
  const FieldSpec& f = alg.field;
  Mat action(f, dh, alg.dim * dh);
  // f = e_(c,a), g = e_(s,m'): (f.g)(x_r) = delta[(s,c),r] a.m'
  for (std::size_t r = 0; r < dx; ++r)
    for (auto& [st, coef] : x.coaction.col_nz(r)) {
      const std::size_t s = st / dc, c = st % dc;
      for (std::size_t a = 0; a < da; ++a)
        for (std::size_t mm = 0; mm < dm; ++mm) {
          const std::size_t col = (c * da + a) * dh + (s * dm + mm);
          for (auto& [q, y] : m.action.col_nz(a * dm + mm)) action.add_to(r * dm + q, col, coef * y);
        }
    }
  return check_module({"[" + x.name + "," + m.name + "]", alg, dh, action});
}

AlgebraMorphism hom_algebra_map(const CoalgebraMorphism& g, const AlgebraMorphism& f) {
  return {hom_algebra(g.target, f.source), hom_algebra(g.source, f.target), hom_map(g.matrix, f.matrix)};
}

GlobalModMorphism hom_global(const GlobalComodMorphism& k, const GlobalModMorphism& l) {
  return {hom_algebra_map(k.g, l.f), hom_module(k.target, l.source), hom_module(k.source, l.target),
          hom_map(k.k, l.p)};
}

ComoduleStructure tensor_comodules(const ComoduleStructure& x, const ComoduleStructure& y) {
  require_same_field(x.over.field, y.over.field, "tensor_comodules");
  Coalgebra cd = algcore::tensor_coalgebras(x.over, y.over);
  const FieldSpec& f = cd.field;
  Mat mid = permute_factors(f, {x.dim, x.over.dim, y.dim, y.over.dim}, {0, 2, 1, 3});
  Mat coaction = mid * tensor(x.coaction, y.coaction);
  return check_comodule({x.name + "(x)" + y.name, cd, x.dim * y.dim, coaction});
}

ModuleStructure tensor_modules(const ModuleStructure& m, const ModuleStructure& n) {
  require_same_field(m.over.field, n.over.field, "tensor_modules");
  Algebra ab = algcore::tensor_algebras(m.over, n.over);
  const FieldSpec& f = ab.field;
  Mat mid = permute_factors(f, {m.over.dim, n.over.dim, m.dim, n.dim}, {0, 2, 1, 3});
  Mat action = tensor(m.action, n.action) * mid;
  return check_module({m.name + "(x)" + n.name, ab, m.dim * n.dim, action});
}

ActionIsoReport verify_action_isos(const ComoduleStructure& x, const ComoduleStructure& y,
                                   const ModuleStructure& m, const std::optional<ComoduleStructure>& z) {
  ActionIsoReport rep;
  const FieldSpec& f = m.over.field;
  auto iso_check = [&](const std::string& name, const ModuleStructure& src, const ModuleStructure& tgt) {
    // Under the fixed basis conventions both the carrier map and the algebra map are identities.
    bool shapes = src.dim == tgt.dim && src.over.dim == tgt.over.dim;
    if (!shapes) {
      rep.record(name, false);
      return;
    }
    AlgebraMorphism alg{src.over, tgt.over, Mat::identity(f, src.over.dim)};
    AlgebraMorphism alg_inv{tgt.over, src.over, Mat::identity(f, src.over.dim)};
    GlobalModMorphism fwd{alg, src, tgt, Mat::identity(f, src.dim)};
    GlobalModMorphism bwd{alg_inv, tgt, src, Mat::identity(f, src.dim)};
    rep.record(name + ": algebra map", static_cast<bool>(algcore::is_algebra_morphism(alg)));
    rep.record(name + ": inverse algebra map", static_cast<bool>(algcore::is_algebra_morphism(alg_inv)));
    rep.record(name + ": module morphism", static_cast<bool>(check_global_morphism(fwd)));
    rep.record(name + ": inverse module morphism", static_cast<bool>(check_global_morphism(bwd)));
  };

  ModuleStructure curried_src = hom_module(tensor_comodules(x, y), m);
  ModuleStructure curried_tgt = hom_module(x, hom_module(y, m));
  iso_check("currying [X(x)Y,M] -> [X,[Y,M]]", curried_src, curried_tgt);

  ComoduleStructure unit = trivial_comodule(f, 1);
  iso_check("unit [I,M] -> M", hom_module(unit, m), m);

  if (z) {
    // Both bracketings of three comodules and both currying routes reach [X,[Y,[Z,M]]].
    ComoduleStructure left = tensor_comodules(tensor_comodules(x, y), *z);
    ComoduleStructure right = tensor_comodules(x, tensor_comodules(y, *z));
    rep.record("associator of comodules is the identity", same_structure(left, right));
    ModuleStructure end = hom_module(x, hom_module(y, hom_module(*z, m)));
    ModuleStructure via_left = hom_module(tensor_comodules(x, y), hom_module(*z, m));
    ModuleStructure via_right = hom_module(x, hom_module(tensor_comodules(y, *z), m));
    iso_check("[(XY)Z,M] -> [XY,[Z,M]]", hom_module(left, m), via_left);
    iso_check("[XY,[Z,M]] -> [X,[Y,[Z,M]]]", via_left, end);
    iso_check("[X(YZ),M] -> [X,[YZ,M]]", hom_module(right, m), via_right);
    iso_check("[X,[YZ,M]] -> [X,[Y,[Z,M]]]", via_right, end);
    // triangle: [X(x)I,M] -> [X,[I,M]] -> [X,M] agrees with the unitor
    ComoduleStructure xi = tensor_comodules(x, unit);
    iso_check("[X(x)I,M] -> [X,[I,M]]", hom_module(xi, m), hom_module(x, hom_module(unit, m)));
    iso_check("[X,[I,M]] -> [X,M]", hom_module(x, hom_module(unit, m)), hom_module(x, m));
    rep.record("right unitor X(x)I = X", xi.coaction == x.coaction);
  }
  return rep;
}

}  // namespace mlab::modcomod
