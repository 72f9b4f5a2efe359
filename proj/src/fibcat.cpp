#include "mlab/fibcat.hpp"

#include <algorithm>

namespace mlab::fibcat {

FibrewiseAdjunctionInvalid::FibrewiseAdjunctionInvalid(std::size_t y, const std::string& w)
    : CheckFailure("FibrewiseAdjunctionInvalid", "object " + std::to_string(y) + ": " + w), object(y) {}

BijectionFailure::BijectionFailure(std::size_t c_, std::size_t d_, const std::string& w)
    : CheckFailure("BijectionFailure", "(" + std::to_string(c_) + "," + std::to_string(d_) + "): " + w),
      c(c_),
      d(d_) {}

// ---------------------------------------------------------------- categories

std::size_t FiniteCategory::compose(std::size_t g, std::size_t f) const {
  const std::size_t r = comp[g * nmor() + f];
  if (r == npos) throw CategoryInvalid(name + ": " + morphisms[g].name + " o " + morphisms[f].name + " undefined");
  return r;
}

std::size_t FiniteCategory::compose(std::initializer_list<std::size_t> chain) const {
  auto it = chain.end();
  std::size_t acc = *--it;
  while (it != chain.begin()) acc = compose(*--it, acc);
  return acc;
}

std::vector<std::size_t> FiniteCategory::hom(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < nmor(); ++m)
    if (src(m) == a && tgt(m) == b) out.push_back(m);
  return out;
}

std::optional<std::size_t> FiniteCategory::inverse(std::size_t m) const {
  for (std::size_t g : hom(tgt(m), src(m)))
    if (compose(g, m) == identity[src(m)] && compose(m, g) == identity[tgt(m)]) return g;
  return std::nullopt;
}

std::size_t FiniteCategory::object_index(const std::string& n) const {
  auto it = std::find(objects.begin(), objects.end(), n);
  if (it == objects.end()) throw SchemaError(name + ": no object " + n);
  return static_cast<std::size_t>(it - objects.begin());
}

std::size_t FiniteCategory::morphism_index(const std::string& n) const {
  for (std::size_t m = 0; m < nmor(); ++m)
    if (morphisms[m].name == n) return m;
  throw SchemaError(name + ": no morphism " + n);
}

void validate(const FiniteCategory& c) {
  const std::size_t n = c.nmor();
  if (c.identity.size() != c.nobj()) throw CategoryInvalid(c.name + ": identity table size");
  if (c.comp.size() != n * n) throw CategoryInvalid(c.name + ": composition table size");
  for (const auto& m : c.morphisms)
    if (m.src >= c.nobj() || m.tgt >= c.nobj()) throw CategoryInvalid(c.name + ": endpoint of " + m.name);
  for (std::size_t x = 0; x < c.nobj(); ++x) {
    const std::size_t i = c.identity[x];
    if (i >= n || c.src(i) != x || c.tgt(i) != x) throw CategoryInvalid(c.name + ": identity at " + c.objects[x]);
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t r = c.comp[g * n + f];
      const bool composable = c.tgt(f) == c.src(g);
      if (composable != (r != npos))
        throw CategoryInvalid(c.name + ": composite " + c.morphisms[g].name + " o " + c.morphisms[f].name);
      if (r == npos) continue;
      if (r >= n || c.src(r) != c.src(f) || c.tgt(r) != c.tgt(g))
        throw CategoryInvalid(c.name + ": composite endpoints " + c.morphisms[g].name + " o " + c.morphisms[f].name);
    }
  for (std::size_t f = 0; f < n; ++f)
    if (c.compose(c.identity[c.tgt(f)], f) != f || c.compose(f, c.identity[c.src(f)]) != f)
      throw CategoryInvalid(c.name + ": unit law at " + c.morphisms[f].name);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t g = 0; g < n; ++g) {
      if (c.src(h) != c.tgt(g)) continue;
      const std::size_t hg = c.compose(h, g);
      for (std::size_t f = 0; f < n; ++f) {
        if (c.src(g) != c.tgt(f)) continue;
        if (c.compose(hg, f) != c.compose(h, c.compose(g, f)))
          throw CategoryInvalid(c.name + ": associativity at (" + c.morphisms[h].name + "," + c.morphisms[g].name +
                                "," + c.morphisms[f].name + ")");
      }
    }
}

FiniteCategory preorder(std::string name, std::vector<std::string> objects,
                        const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
  const std::size_t k = objects.size();
  std::vector<std::vector<bool>> le(k, std::vector<bool>(k, false));
  for (std::size_t x = 0; x < k; ++x) le[x][x] = true;
  for (auto [a, b] : arrows) le.at(a).at(b) = true;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (le[a][m] && le[m][b]) le[a][b] = true;
  FiniteCategory c;
  c.name = std::move(name);
  c.objects = std::move(objects);
  c.identity.assign(k, npos);
  std::vector<std::vector<std::size_t>> idx(k, std::vector<std::size_t>(k, npos));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (!le[a][b]) continue;
      idx[a][b] = c.morphisms.size();
      if (a == b) c.identity[a] = idx[a][b];
      c.morphisms.push_back({a == b ? "id_" + c.objects[a] : c.objects[a] + "->" + c.objects[b], a, b});
    }
  const std::size_t n = c.nmor();
  c.comp.assign(n * n, npos);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (c.tgt(f) == c.src(g)) c.comp[g * n + f] = idx[c.src(f)][c.tgt(g)];
  return c;
}

FiniteCategory terminal_category() { return preorder("1", {"*"}, {}); }
FiniteCategory arrow_category() { return preorder("2", {"0", "1"}, {{0, 1}}); }

FiniteCategory discrete_category(std::size_t n) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  return preorder("discrete" + std::to_string(n), std::move(objs), {});
}

FiniteCategory make_category(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
                             std::vector<std::size_t> identity, std::vector<std::size_t> comp) {
  FiniteCategory c{std::move(name), std::move(objects), std::move(morphisms), std::move(identity), std::move(comp)};
  const std::size_t n = c.nmor();
  if (c.comp.empty()) c.comp.assign(n * n, npos);
  if (c.comp.size() != n * n || c.identity.size() != c.nobj()) throw CategoryInvalid(c.name + ": table sizes");
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (c.comp[g * n + f] != npos || c.tgt(f) != c.src(g)) continue;
      if (c.is_identity(g)) c.comp[g * n + f] = f;
      else if (c.is_identity(f)) c.comp[g * n + f] = g;
    }
  validate(c);
  return c;
}

FiniteCategory opposite(const FiniteCategory& c) {
  FiniteCategory o;
  const std::string suffix = "^op";
  o.name = c.name.size() >= suffix.size() && c.name.ends_with(suffix) ? c.name.substr(0, c.name.size() - suffix.size())
                                                                       : c.name + suffix;
  o.objects = c.objects;
  o.identity = c.identity;
  for (const auto& m : c.morphisms) o.morphisms.push_back({m.name, m.tgt, m.src});
  const std::size_t n = c.nmor();
  o.comp.assign(n * n, npos);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) o.comp[g * n + f] = c.comp[f * n + g];
  return o;
}

bool same_shape(const FiniteCategory& a, const FiniteCategory& b) {
  if (a.nobj() != b.nobj() || a.nmor() != b.nmor() || a.identity != b.identity || a.comp != b.comp) return false;
  for (std::size_t m = 0; m < a.nmor(); ++m)
    if (a.src(m) != b.src(m) || a.tgt(m) != b.tgt(m)) return false;
  return true;
}

// ---------------------------------------------------------------- functors

void validate(const FiniteFunctor& f) {
  const auto& s = f.source;
  const auto& t = f.target;
  if (f.on_objects.size() != s.nobj() || f.on_morphisms.size() != s.nmor())
    throw FunctorInvalid(s.name + " -> " + t.name + ": table sizes");
  for (std::size_t x : f.on_objects)
    if (x >= t.nobj()) throw FunctorInvalid("object out of range");
  for (std::size_t m = 0; m < s.nmor(); ++m) {
    const std::size_t fm = f(m);
    if (fm >= t.nmor() || t.src(fm) != f.obj(s.src(m)) || t.tgt(fm) != f.obj(s.tgt(m)))
      throw FunctorInvalid("endpoints of " + s.morphisms[m].name);
  }
  for (std::size_t x = 0; x < s.nobj(); ++x)
    if (f(s.identity[x]) != t.identity[f.obj(x)]) throw FunctorInvalid("identity at " + s.objects[x]);
  for (std::size_t g = 0; g < s.nmor(); ++g)
    for (std::size_t h = 0; h < s.nmor(); ++h)
      if (s.tgt(h) == s.src(g) && f(s.compose(g, h)) != t.compose(f(g), f(h)))
        throw FunctorInvalid("composition at (" + s.morphisms[g].name + "," + s.morphisms[h].name + ")");
}

FiniteFunctor identity_functor(const FiniteCategory& c) {
  FiniteFunctor f{c, c, {}, {}};
  for (std::size_t x = 0; x < c.nobj(); ++x) f.on_objects.push_back(x);
  for (std::size_t m = 0; m < c.nmor(); ++m) f.on_morphisms.push_back(m);
  return f;
}

FiniteFunctor compose(const FiniteFunctor& g, const FiniteFunctor& f) {
  if (!(f.target == g.source)) throw FunctorInvalid("compose: " + f.target.name + " vs " + g.source.name);
  FiniteFunctor r{f.source, g.target, {}, {}};
  for (std::size_t x : f.on_objects) r.on_objects.push_back(g.obj(x));
  for (std::size_t m : f.on_morphisms) r.on_morphisms.push_back(g(m));
  return r;
}

FiniteFunctor opposite(const FiniteFunctor& f) {
  return {opposite(f.source), opposite(f.target), f.on_objects, f.on_morphisms};
}

FiniteFunctor functor_by_names(const FiniteCategory& s, const FiniteCategory& t,
                               const std::vector<std::pair<std::string, std::string>>& objects,
                               const std::vector<std::pair<std::string, std::string>>& morphisms) {
  FiniteFunctor f{s, t, std::vector<std::size_t>(s.nobj(), npos), std::vector<std::size_t>(s.nmor(), npos)};
  for (const auto& [a, b] : objects) f.on_objects[s.object_index(a)] = t.object_index(b);
  for (const auto& [a, b] : morphisms) f.on_morphisms[s.morphism_index(a)] = t.morphism_index(b);
  for (std::size_t x = 0; x < s.nobj(); ++x)
    if (f.on_objects[x] == npos) throw FunctorInvalid("object " + s.objects[x] + " unmapped");
  for (std::size_t m = 0; m < s.nmor(); ++m)
    if (f.on_morphisms[m] == npos) {
      if (!s.is_identity(m)) throw FunctorInvalid("morphism " + s.morphisms[m].name + " unmapped");
      f.on_morphisms[m] = t.identity[f.obj(s.src(m))];
    }
  validate(f);
  return f;
}

FiniteFunctor constant_functor(const FiniteCategory& s, const FiniteCategory& t, std::size_t object) {
  return {s, t, std::vector<std::size_t>(s.nobj(), object), std::vector<std::size_t>(s.nmor(), t.identity.at(object))};
}

FiniteFunctor monotone(const FiniteCategory& s, const FiniteCategory& t, std::vector<std::size_t> objects) {
  FiniteFunctor f{s, t, std::move(objects), {}};
  if (f.on_objects.size() != s.nobj()) throw FunctorInvalid("monotone: object map size");
  for (std::size_t m = 0; m < s.nmor(); ++m) {
    const auto h = t.hom(f.obj(s.src(m)), f.obj(s.tgt(m)));
    if (h.size() != 1) throw FunctorInvalid("monotone: " + s.morphisms[m].name + " has no unique image");
    f.on_morphisms.push_back(h[0]);
  }
  validate(f);
  return f;
}

bool is_natural(const NatTrans& t) {
  const auto& s = t.from.source;
  const auto& d = t.from.target;
  if (t.components.size() != s.nobj()) return false;
  for (std::size_t x = 0; x < s.nobj(); ++x) {
    const std::size_t c = t.components[x];
    if (c >= d.nmor() || d.src(c) != t.from.obj(x) || d.tgt(c) != t.to.obj(x)) return false;
  }
  for (std::size_t m = 0; m < s.nmor(); ++m)
    if (d.compose(t.to(m), t.components[s.src(m)]) != d.compose(t.components[s.tgt(m)], t.from(m))) return false;
  return true;
}

// ---------------------------------------------------------------- adjunctions

namespace {

std::string adjunction_failure(const FiniteAdjunction& a) {
  const FiniteFunctor& l = a.left;
  const FiniteFunctor& r = a.right;
  if (!(l.source == r.target) || !(l.target == r.source)) return "functors do not form a pair";
  const FiniteCategory& c = l.source;
  const FiniteCategory& d = l.target;
  try {
    validate(l);
    validate(r);
  } catch (const FunctorInvalid& e) {
    return e.what();
  }
  if (!is_natural({identity_functor(c), compose(r, l), a.unit})) return "unit not natural";
  if (!is_natural({compose(l, r), identity_functor(d), a.counit})) return "counit not natural";
  for (std::size_t x = 0; x < c.nobj(); ++x)
    if (d.compose(a.counit[l.obj(x)], l(a.unit[x])) != d.identity[l.obj(x)])
      return "left triangle at " + c.objects[x];
  for (std::size_t y = 0; y < d.nobj(); ++y)
    if (c.compose(r(a.counit[y]), a.unit[r.obj(y)]) != c.identity[r.obj(y)])
      return "right triangle at " + d.objects[y];
  return {};
}

}  // namespace

void validate(const FiniteAdjunction& a) {
  if (auto w = adjunction_failure(a); !w.empty()) throw AdjunctionInvalid(w);
}

bool adjunction_axioms(const FiniteAdjunction& a) { return adjunction_failure(a).empty(); }

FiniteAdjunction identity_adjunction(const FiniteCategory& c) {
  auto id = identity_functor(c);
  return {id, id, c.identity, c.identity};
}

FiniteAdjunction dualize(const FiniteAdjunction& a) {
  return {opposite(a.right), opposite(a.left), a.counit, a.unit};
}

FiniteAdjunction thin_adjunction(const FiniteFunctor& left, const FiniteFunctor& right) {
  const FiniteCategory& c = left.source;
  const FiniteCategory& d = left.target;
  FiniteAdjunction a{left, right, {}, {}};
  for (std::size_t x = 0; x < c.nobj(); ++x) {
    const auto h = c.hom(x, right.obj(left.obj(x)));
    if (h.size() != 1) throw AdjunctionInvalid("no unit at " + c.objects[x]);
    a.unit.push_back(h[0]);
  }
  for (std::size_t y = 0; y < d.nobj(); ++y) {
    const auto h = d.hom(left.obj(right.obj(y)), y);
    if (h.size() != 1) throw AdjunctionInvalid("no counit at " + d.objects[y]);
    a.counit.push_back(h[0]);
  }
  validate(a);
  return a;
}

std::optional<std::pair<std::size_t, std::size_t>> hom_bijection_failure(const FiniteAdjunction& a) {
  const FiniteCategory& c = a.left.source;
  const FiniteCategory& d = a.left.target;
  for (std::size_t x = 0; x < c.nobj(); ++x)
    for (std::size_t y = 0; y < d.nobj(); ++y) {
      const auto lhs = d.hom(a.left.obj(x), y);
      const auto rhs = c.hom(x, a.right.obj(y));
      std::vector<std::size_t> image;
      for (std::size_t n : lhs) image.push_back(c.compose(a.right(n), a.unit[x]));
      std::sort(image.begin(), image.end());
      if (lhs.size() != rhs.size() || std::adjacent_find(image.begin(), image.end()) != image.end())
        return std::make_pair(x, y);
    }
  return std::nullopt;
}

bool hom_bijection_natural(const FiniteAdjunction& a) {
  const FiniteCategory& c = a.left.source;
  const FiniteCategory& d = a.left.target;
  auto phi = [&](std::size_t x, std::size_t n) { return c.compose(a.right(n), a.unit[x]); };
  for (std::size_t n = 0; n < d.nmor(); ++n)
    for (std::size_t x = 0; x < c.nobj(); ++x) {
      if (d.src(n) != a.left.obj(x)) continue;
      for (std::size_t u = 0; u < c.nmor(); ++u)
        if (c.tgt(u) == x && phi(c.src(u), d.compose(n, a.left(u))) != c.compose(phi(x, n), u)) return false;
      for (std::size_t v = 0; v < d.nmor(); ++v)
        if (d.src(v) == d.tgt(n) && phi(x, d.compose(v, n)) != c.compose(a.right(v), phi(x, n))) return false;
    }
  return true;
}

std::optional<FiniteAdjunction> find_right_adjoint(const FiniteFunctor& left, const FiniteFunctor* vertical_over) {
  const FiniteCategory& c = left.source;
  const FiniteCategory& d = left.target;
  FiniteFunctor right{d, c, std::vector<std::size_t>(d.nobj(), npos), std::vector<std::size_t>(d.nmor(), npos)};
  std::vector<std::size_t> counit(d.nobj(), npos);
  auto universal = [&](std::size_t r, std::size_t e) {
    for (std::size_t x = 0; x < c.nobj(); ++x) {
      const auto lhs = d.hom(left.obj(x), d.tgt(e));
      const auto rhs = c.hom(x, r);
      if (lhs.size() != rhs.size()) return false;
      std::vector<std::size_t> image;
      for (std::size_t f : rhs) image.push_back(d.compose(e, left(f)));
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
    }
    return true;
  };
  for (std::size_t y = 0; y < d.nobj() ; ++y) {
    for (std::size_t r = 0; r < c.nobj() && counit[y] == npos; ++r)
      for (std::size_t e : d.hom(left.obj(r), y)) {
        if (vertical_over && !vertical_over->target.is_identity((*vertical_over)(e))) continue;
        if (universal(r, e)) {
          right.on_objects[y] = r;
          counit[y] = e;
          break;
        }
      }
    if (counit[y] == npos) return std::nullopt;
  }
  // The unique f with counit o L(f) = target.
  auto lift = [&](std::size_t x, std::size_t y, std::size_t target) {
    for (std::size_t f : c.hom(x, right.obj(y)))
      if (d.compose(counit[y], left(f)) == target) return f;
    return npos;
  };
  for (std::size_t g = 0; g < d.nmor(); ++g)
    right.on_morphisms[g] = lift(right.obj(d.src(g)), d.tgt(g), d.compose(g, counit[d.src(g)]));
  std::vector<std::size_t> unit;
  for (std::size_t x = 0; x < c.nobj(); ++x) unit.push_back(lift(x, left.obj(x), d.identity[left.obj(x)]));
  FiniteAdjunction a{left, right, std::move(unit), std::move(counit)};
  validate(a);
  return a;
}

std::optional<FiniteAdjunction> find_left_adjoint(const FiniteFunctor& right, const FiniteFunctor* vertical_over) {
  std::optional<FiniteFunctor> v;
  if (vertical_over) v = opposite(*vertical_over);
  auto a = find_right_adjoint(opposite(right), v ? &*v : nullptr);
  if (!a) return std::nullopt;
  return dualize(*a);
}

// ---------------------------------------------------------------- indexed categories

void validate(const IndexedCategory& ic) {
  const FiniteCategory& b = ic.base;
  validate(b);
  if (ic.fibres.size() != b.nobj()) throw IndexedInvalid("one fibre per base object");
  if (ic.reindex.size() != b.nmor()) throw IndexedInvalid("one reindexing per base morphism");
  for (const auto& f : ic.fibres) validate(f);
  const bool contra = ic.variance == Variance::Contravariant;
  for (std::size_t f = 0; f < b.nmor(); ++f) {
    const FiniteFunctor& r = ic.reindex[f];
    const std::size_t from = contra ? b.tgt(f) : b.src(f);
    const std::size_t to = contra ? b.src(f) : b.tgt(f);
    if (!(r.source == ic.fibres[from]) || !(r.target == ic.fibres[to]))
      throw IndexedInvalid("reindexing along " + b.morphisms[f].name + " has the wrong fibres");
    validate(r);
  }
  for (std::size_t x = 0; x < b.nobj(); ++x)
    if (!(ic.reindex[b.identity[x]] == identity_functor(ic.fibres[x])))
      throw IndexedInvalid("reindexing along the identity at " + b.objects[x]);
  for (std::size_t g = 0; g < b.nmor(); ++g)
    for (std::size_t f = 0; f < b.nmor(); ++f) {
      if (b.tgt(f) != b.src(g)) continue;
      const FiniteFunctor expect =
          contra ? compose(ic.reindex[f], ic.reindex[g]) : compose(ic.reindex[g], ic.reindex[f]);
      if (!(ic.reindex[b.compose(g, f)] == expect))
        throw IndexedInvalid("reindexing not split at (" + b.morphisms[g].name + "," + b.morphisms[f].name + ")");
    }
}

IndexedCategory indexed_category(const FiniteCategory& base, Variance v, std::vector<FiniteCategory> fibres,
                                 const std::vector<std::pair<std::size_t, FiniteFunctor>>& reindex) {
  IndexedCategory ic{base, v, std::move(fibres), {}};
  std::vector<std::optional<FiniteFunctor>> r(base.nmor());
  for (const auto& [f, fun] : reindex) r.at(f) = fun;
  for (std::size_t f = 0; f < base.nmor(); ++f) {
    if (!r[f] && base.is_identity(f)) r[f] = identity_functor(ic.fibres.at(base.src(f)));
    if (!r[f]) throw IndexedInvalid("no reindexing along " + base.morphisms[f].name);
    ic.reindex.push_back(*r[f]);
  }
  validate(ic);
  return ic;
}

IndexedCategory constant_indexed(const FiniteCategory& base, const FiniteCategory& fibre, Variance v) {
  return indexed_category(base, v, std::vector<FiniteCategory>(base.nobj(), fibre), [&] {
    std::vector<std::pair<std::size_t, FiniteFunctor>> r;
    for (std::size_t f = 0; f < base.nmor(); ++f) r.emplace_back(f, identity_functor(fibre));
    return r;
  }());
}

IndexedCategory dualize(const IndexedCategory& ic) {
  IndexedCategory d;
  d.base = opposite(ic.base);
  d.variance = ic.variance == Variance::Contravariant ? Variance::Covariant : Variance::Contravariant;
  for (const auto& f : ic.fibres) d.fibres.push_back(opposite(f));
  for (const auto& r : ic.reindex) d.reindex.push_back(opposite(r));
  return d;
}

bool same_shape(const IndexedCategory& a, const IndexedCategory& b) {
  if (a.variance != b.variance || !same_shape(a.base, b.base) || a.fibres.size() != b.fibres.size() ||
      a.reindex.size() != b.reindex.size())
    return false;
  for (std::size_t x = 0; x < a.fibres.size(); ++x)
    if (!same_shape(a.fibres[x], b.fibres[x])) return false;
  for (std::size_t f = 0; f < a.reindex.size(); ++f)
    if (a.reindex[f].on_objects != b.reindex[f].on_objects || a.reindex[f].on_morphisms != b.reindex[f].on_morphisms)
      return false;
  return true;
}

// ---------------------------------------------------------------- total categories

std::size_t TotalCategory::morphism(std::size_t f, std::size_t over, std::size_t phi) const {
  auto it = key_index.find({f, over, phi});
  if (it == key_index.end())
    throw CheckFailure("NoSuchMorphism", cat.name + ": (" + indexed.base.morphisms.at(f).name + ", " +
                                             std::to_string(over) + ", " + std::to_string(phi) + ")");
  return it->second;
}

std::size_t TotalCategory::vertical(std::size_t x, std::size_t phi) const {
  const FiniteCategory& fib = fibre(x);
  return morphism(indexed.base.identity[x], opfibration() ? fib.src(phi) : fib.tgt(phi), phi);
}

bool TotalCategory::is_vertical(std::size_t m) const { return indexed.base.is_identity(base_part(m)); }

std::size_t TotalCategory::lifting(std::size_t f, std::size_t obj) const {
  const auto [x, a] = object_pair.at(obj);
  const FiniteCategory& b = indexed.base;
  if (opfibration()) {
    if (b.src(f) != x) throw CheckFailure("NoSuchMorphism", "cocartesian lifting from the wrong object");
    return morphism(f, a, fibre(b.tgt(f)).identity[reindex(f).obj(a)]);
  }
  if (b.tgt(f) != x) throw CheckFailure("NoSuchMorphism", "cartesian lifting into the wrong object");
  return morphism(f, a, fibre(b.src(f)).identity[reindex(f).obj(a)]);
}

TotalCategory grothendieck(const IndexedCategory& ic) {
  validate(ic);
  TotalCategory t;
  t.indexed = ic;
  const FiniteCategory& b = ic.base;
  const bool co = ic.variance == Variance::Covariant;
  FiniteCategory& c = t.cat;
  c.name = (co ? "opgroth(" : "groth(") + b.name + ")";
  t.object_at.resize(b.nobj());
  for (std::size_t x = 0; x < b.nobj(); ++x)
    for (std::size_t a = 0; a < ic.fibres[x].nobj(); ++a) {
      t.object_at[x].push_back(c.objects.size());
      t.object_pair.emplace_back(x, a);
      c.objects.push_back(ic.fibres[x].objects[a] + "@" + b.objects[x]);
    }
  for (std::size_t f = 0; f < b.nmor(); ++f) {
    const std::size_t from = co ? b.src(f) : b.tgt(f);  // fibre the reindexing acts on
    const std::size_t to = co ? b.tgt(f) : b.src(f);    // fibre holding phi
    const FiniteFunctor& r = ic.reindex[f];
    const FiniteCategory& fib = ic.fibres[to];
    for (std::size_t phi = 0; phi < fib.nmor(); ++phi)
      for (std::size_t over = 0; over < ic.fibres[from].nobj(); ++over) {
        if ((co ? fib.src(phi) : fib.tgt(phi)) != r.obj(over)) continue;
        const std::size_t s = co ? t.object_at[b.src(f)][over] : t.object_at[b.src(f)][fib.src(phi)];
        const std::size_t e = co ? t.object_at[b.tgt(f)][fib.tgt(phi)] : t.object_at[b.tgt(f)][over];
        t.key_index[{f, over, phi}] = c.morphisms.size();
        t.morphism_key.emplace_back(f, over, phi);
        c.morphisms.push_back({b.morphisms[f].name + "|" + ic.fibres[from].objects[over] + "|" + fib.morphisms[phi].name,
                               s, e});
      }
  }
  for (std::size_t o = 0; o < c.nobj(); ++o) {
    const auto [x, a] = t.object_pair[o];
    c.identity.push_back(t.key_index.at({b.identity[x], a, ic.fibres[x].identity[a]}));
  }
  const std::size_t n = c.nmor();
  c.comp.assign(n * n, npos);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (c.tgt(f) != c.src(g)) continue;
      const auto [bf, of, pf] = t.morphism_key[f];
      const auto [bg, og, pg] = t.morphism_key[g];
      const std::size_t bgf = b.compose(bg, bf);
      std::size_t key;
      if (co) {
        const FiniteCategory& fz = ic.fibres[b.tgt(bg)];
        key = t.key_index.at({bgf, of, fz.compose(pg, ic.reindex[bg](pf))});
      } else {
        const FiniteCategory& fx = ic.fibres[b.src(bf)];
        key = t.key_index.at({bgf, og, fx.compose(ic.reindex[bf](pg), pf)});
      }
      c.comp[g * n + f] = key;
    }
  validate(c);
  t.projection = FiniteFunctor{c, b, {}, {}};
  for (const auto& [x, a] : t.object_pair) t.projection.on_objects.push_back(x);
  for (const auto& k : t.morphism_key) t.projection.on_morphisms.push_back(std::get<0>(k));
  validate(t.projection);
  return t;
}

TotalCategory dualize(const TotalCategory& t) { return grothendieck(dualize(t.indexed)); }

IndexedCategory extract_indexed(const TotalCategory& t) {
  const FiniteCategory& b = t.indexed.base;
  const FiniteCategory& c = t.cat;
  IndexedCategory ic;
  ic.base = b;
  ic.variance = t.indexed.variance;
  std::vector<std::vector<std::size_t>> local(b.nobj());  // total morphism -> position in its fibre
  std::vector<std::size_t> pos(c.nmor(), npos), opos(c.nobj(), npos);
  for (std::size_t x = 0; x < b.nobj(); ++x) {
    FiniteCategory fib;
    fib.name = "fibre(" + b.objects[x] + ")";
    for (std::size_t o = 0; o < c.nobj(); ++o)
      if (t.projection.obj(o) == x) {
        opos[o] = fib.objects.size();
        fib.objects.push_back(c.objects[o]);
      }
    for (std::size_t m = 0; m < c.nmor(); ++m)
      if (t.projection(m) == b.identity[x]) {
        pos[m] = fib.morphisms.size();
        local[x].push_back(m);
        fib.morphisms.push_back({c.morphisms[m].name, opos[c.src(m)], opos[c.tgt(m)]});
      }
    for (std::size_t o = 0; o < c.nobj(); ++o)
      if (t.projection.obj(o) == x) fib.identity.push_back(pos[c.identity[o]]);
    const std::size_t n = fib.nmor();
    fib.comp.assign(n * n, npos);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f)
        if (fib.tgt(f) == fib.src(g)) fib.comp[g * n + f] = pos[c.compose(local[x][g], local[x][f])];
    ic.fibres.push_back(std::move(fib));
  }
  // Reindexing from the cleavage: the codomain (domain) of the chosen lifting, and factorization on morphisms.
  const bool co = t.opfibration();
  for (std::size_t f = 0; f < b.nmor(); ++f) {
    const std::size_t from = co ? b.src(f) : b.tgt(f);
    const std::size_t to = co ? b.tgt(f) : b.src(f);
    FiniteFunctor r{ic.fibres[from], ic.fibres[to], {}, {}};
    for (std::size_t o = 0; o < c.nobj(); ++o) {
      if (t.projection.obj(o) != from) continue;
      const std::size_t l = t.lifting(f, o);
      r.on_objects.push_back(opos[co ? c.tgt(l) : c.src(l)]);
    }
    for (std::size_t m : local[from]) {
      const std::size_t ls = t.lifting(f, c.src(m));
      const std::size_t lt = t.lifting(f, c.tgt(m));
      // Unique vertical v with v o ls = lt o m (opfibration) or lt o v = m o ls (fibration).
      std::size_t found = npos;
      for (std::size_t v : local[to]) {
        if (co && c.src(v) == c.tgt(ls) && c.tgt(v) == c.tgt(lt) && c.compose(v, ls) == c.compose(lt, m)) found = v;
        if (!co && c.src(v) == c.src(ls) && c.tgt(v) == c.src(lt) && c.compose(lt, v) == c.compose(m, ls)) found = v;
      }
      if (found == npos) throw IndexedInvalid("reindexing of " + c.morphisms[m].name + " does not factor");
      r.on_morphisms.push_back(pos[found]);
    }
    ic.reindex.push_back(std::move(r));
  }
  return ic;
}

bool is_cocartesian(const FiniteFunctor& p, std::size_t u) {
  const FiniteCategory& e = p.source;
  const FiniteCategory& b = p.target;
  const std::size_t a = e.src(u), t = e.tgt(u);
  for (std::size_t v = 0; v < e.nmor(); ++v) {
    if (e.src(v) != a) continue;
    const std::size_t c = e.tgt(v);
    for (std::size_t h : b.hom(p.obj(t), p.obj(c))) {
      if (b.compose(h, p(u)) != p(v)) continue;
      std::size_t count = 0;
      for (std::size_t w : e.hom(t, c))
        if (p(w) == h && e.compose(w, u) == v) ++count;
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_cartesian(const FiniteFunctor& p, std::size_t u) {
  const FiniteCategory& e = p.source;
  const FiniteCategory& b = p.target;
  const std::size_t a = e.src(u), t = e.tgt(u);
  for (std::size_t v = 0; v < e.nmor(); ++v) {
    if (e.tgt(v) != t) continue;
    const std::size_t c = e.src(v);
    for (std::size_t h : b.hom(p.obj(c), p.obj(a))) {
      if (b.compose(p(u), h) != p(v)) continue;
      std::size_t count = 0;
      for (std::size_t w : e.hom(c, a))
        if (p(w) == h && e.compose(u, w) == v) ++count;
      if (count != 1) return false;
    }
  }
  return true;
}

bool liftings_universal(const TotalCategory& t) {
  const FiniteCategory& b = t.indexed.base;
  for (std::size_t f = 0; f < b.nmor(); ++f)
    for (std::size_t o = 0; o < t.cat.nobj(); ++o) {
      if (t.base_of(o) != (t.opfibration() ? b.src(f) : b.tgt(f))) continue;
      const std::size_t l = t.lifting(f, o);
      if (!(t.opfibration() ? is_cocartesian(t.projection, l) : is_cartesian(t.projection, l))) return false;
    }
  return true;
}

Factorization factorize(const TotalCategory& t, std::size_t mor) {
  const FiniteCategory& c = t.cat;
  const FiniteCategory& b = t.indexed.base;
  const auto [f, over, phi] = t.morphism_key.at(mor);
  Factorization r;
  if (t.opfibration()) {
    r.lifting = t.lifting(f, c.src(mor));
    r.vertical = t.vertical(b.tgt(f), phi);
    for (std::size_t v = 0; v < c.nmor(); ++v)
      if (t.is_vertical(v) && c.src(v) == c.tgt(r.lifting) && c.compose(v, r.lifting) == mor) ++r.candidates;
  } else {
    r.lifting = t.lifting(f, c.tgt(mor));
    r.vertical = t.vertical(b.src(f), phi);
    for (std::size_t v = 0; v < c.nmor(); ++v)
      if (t.is_vertical(v) && c.tgt(v) == c.src(r.lifting) && c.compose(r.lifting, v) == mor) ++r.candidates;
  }
  return r;
}

FiniteFunctor strict_total_functor(const TotalCategory& s, const TotalCategory& t, const FiniteFunctor& f,
                                   const std::vector<FiniteFunctor>& fibres) {
  const FiniteCategory& b = s.indexed.base;
  FiniteFunctor k{s.cat, t.cat, {}, {}};
  for (const auto& [x, a] : s.object_pair) k.on_objects.push_back(t.object(f.obj(x), fibres.at(x).obj(a)));
  const bool co = s.opfibration();
  for (const auto& [g, over, phi] : s.morphism_key) {
    const std::size_t from = co ? b.src(g) : b.tgt(g);
    const std::size_t to = co ? b.tgt(g) : b.src(g);
    k.on_morphisms.push_back(t.morphism(f(g), fibres[from].obj(over), fibres[to](phi)));
  }
  validate(k);
  return k;
}

FiniteFunctor fibre_functor(const TotalCategory& s, const TotalCategory& t, const FiniteFunctor& k, std::size_t x,
                            std::size_t fx) {
  const FiniteCategory& src = s.fibre(x);
  FiniteFunctor r{src, t.fibre(fx), {}, {}};
  for (std::size_t a = 0; a < src.nobj(); ++a) {
    const std::size_t o = k.obj(s.object(x, a));
    if (t.base_of(o) != fx) throw CellInvalid("fibre functor leaves the fibre over " + t.indexed.base.objects[fx]);
    r.on_objects.push_back(t.fibre_of(o));
  }
  for (std::size_t phi = 0; phi < src.nmor(); ++phi) {
    const std::size_t m = k(s.vertical(x, phi));
    if (!t.is_vertical(m)) throw CellInvalid("image of a vertical morphism is not vertical");
    r.on_morphisms.push_back(t.fibre_part(m));
  }
  return r;
}

// ---------------------------------------------------------------- cells

bool square_commutes(const FibredCell& c) {
  if (!(c.k.source == c.source.cat) || !(c.k.target == c.target.cat) || !(c.f.source == c.source.indexed.base) ||
      !(c.f.target == c.target.indexed.base))
    return false;
  return compose(c.target.projection, c.k) == compose(c.f, c.source.projection);
}

bool preserves_liftings(const FibredCell& c) {
  const bool co = c.direction == CellDirection::Opfibred;
  for (std::size_t u = 0; u < c.source.cat.nmor(); ++u) {
    if (co ? !is_cocartesian(c.source.projection, u) : !is_cartesian(c.source.projection, u)) continue;
    if (co ? !is_cocartesian(c.target.projection, c.k(u)) : !is_cartesian(c.target.projection, c.k(u))) return false;
  }
  return true;
}

void validate(const FibredCell& c) {
  const bool co = c.direction == CellDirection::Opfibred;
  if (c.source.opfibration() != co || c.target.opfibration() != co)
    throw CellInvalid("cell direction does not match the variance of its totals");
  validate(c.k);
  validate(c.f);
  if (!square_commutes(c)) throw CellInvalid("square does not commute");
  if (!preserves_liftings(c)) throw CellInvalid(co ? "cocartesian morphism not preserved" : "cartesian morphism not preserved");
}

FibredCell identity_cell(const TotalCategory& t) {
  return {t, t, identity_functor(t.cat), identity_functor(t.indexed.base),
          t.opfibration() ? CellDirection::Opfibred : CellDirection::Fibred};
}

FibredCell dualize(const FibredCell& c) {
  return {dualize(c.source), dualize(c.target), opposite(c.k), opposite(c.f),
          c.direction == CellDirection::Opfibred ? CellDirection::Fibred : CellDirection::Opfibred};
}

namespace {

/// Fibre part of the vertical factor of K applied to the chosen lifting of f at o.
std::size_t comparison(const FibredCell& c, std::size_t f, std::size_t o) {
  const std::size_t img = c.k(c.source.lifting(f, o));
  const TotalCategory& t = c.target;
  const FiniteCategory& tc = t.cat;
  const std::size_t ff = c.f(f);
  if (t.opfibration()) {
    const std::size_t l = t.lifting(ff, tc.src(img));
    for (std::size_t v = 0; v < tc.nmor(); ++v)
      if (t.is_vertical(v) && tc.src(v) == tc.tgt(l) && tc.tgt(v) == tc.tgt(img) && tc.compose(v, l) == img)
        return t.fibre_part(v);
  } else {
    const std::size_t l = t.lifting(ff, tc.tgt(img));
    for (std::size_t v = 0; v < tc.nmor(); ++v)
      if (t.is_vertical(v) && tc.tgt(v) == tc.src(l) && tc.src(v) == tc.src(img) && tc.compose(l, v) == img)
        return t.fibre_part(v);
  }
  throw CellInvalid("image of a chosen lifting does not factor");
}

}  // namespace

ReindexIso reindex_commute_iso(const FibredCell& c, std::size_t f) {
  const FiniteCategory& b = c.source.indexed.base;
  const bool co = c.direction == CellDirection::Opfibred;
  const std::size_t x = co ? b.src(f) : b.tgt(f);
  const std::size_t over = co ? c.f.obj(b.tgt(f)) : c.f.obj(b.src(f));
  ReindexIso r{f, {}};
  for (std::size_t a = 0; a < c.source.fibre(x).nobj(); ++a) {
    const std::size_t v = comparison(c, f, c.source.object(x, a));
    if (co) {
      r.components.push_back(v);
    } else {
      auto inv = c.target.fibre(over).inverse(v);
      if (!inv) throw CellInvalid("cartesian comparison is not invertible");
      r.components.push_back(*inv);
    }
  }
  return r;
}

bool reindex_iso_natural(const FibredCell& c, const ReindexIso& iso) {
  const FiniteCategory& b = c.source.indexed.base;
  const std::size_t f = iso.f;
  const bool co = c.direction == CellDirection::Opfibred;
  const std::size_t x = co ? b.src(f) : b.tgt(f);  // fibre the reindexing acts on
  const std::size_t y = co ? b.tgt(f) : b.src(f);
  const FiniteFunctor kx = fibre_functor(c.source, c.target, c.k, x, c.f.obj(x));
  const FiniteFunctor ky = fibre_functor(c.source, c.target, c.k, y, c.f.obj(y));
  const FiniteFunctor& rs = c.source.reindex(f);
  const FiniteFunctor& rt = c.target.reindex(c.f(f));
  const FiniteCategory& fib = c.target.fibre(c.f.obj(y));
  // sigma : rt kx => ky rs (opfibred); tau : rt kx => ky rs (fibred).
  for (std::size_t m = 0; m < c.source.fibre(x).nmor(); ++m) {
    const std::size_t a = c.source.fibre(x).src(m), a2 = c.source.fibre(x).tgt(m);
    if (fib.compose(iso.components[a2], rt(kx(m))) != fib.compose(ky(rs(m)), iso.components[a])) return false;
  }
  return true;
}

// ---------------------------------------------------------------- adjoint synthesis

FibredAdjointProblem dualize(const OpfibredAdjointProblem& p) {
  FibredAdjointProblem d{dualize(p.cell), dualize(p.base), {}};
  for (const auto& a : p.fibrewise) d.fibrewise.push_back(dualize(a));
  return d;
}

OpfibredAdjointProblem dualize(const FibredAdjointProblem& p) {
  OpfibredAdjointProblem d{dualize(p.cell), dualize(p.base), {}};
  for (const auto& a : p.fibrewise) d.fibrewise.push_back(dualize(a));
  return d;
}

FiniteFunctor special_functor(const OpfibredAdjointProblem& p, std::size_t y) {
  const std::size_t gy = p.base.right.obj(y);
  const FiniteFunctor k = fibre_functor(p.cell.source, p.cell.target, p.cell.k, gy, p.base.left.obj(gy));
  return compose(p.cell.target.reindex(p.base.counit.at(y)), k);
}

Synthesis synthesize_right_adjoint(const OpfibredAdjointProblem& p) {
  const FibredCell& cell = p.cell;
  if (cell.direction != CellDirection::Opfibred) throw CellInvalid("synthesis needs an opfibred cell");
  validate(cell);
  validate(p.base);
  if (!(p.base.left == cell.f)) throw CellInvalid("base adjunction's left adjoint is not the cell's base functor");
  const TotalCategory& c = cell.source;
  const TotalCategory& d = cell.target;
  const FiniteCategory& ybase = d.indexed.base;
  const FiniteFunctor& k = cell.k;
  const FiniteFunctor& g = p.base.right;
  const FiniteFunctor& fb = p.base.left;
  const auto& eta = p.base.unit;
  const auto& eps = p.base.counit;
  if (p.fibrewise.size() != ybase.nobj()) throw FibrewiseAdjunctionInvalid(p.fibrewise.size(), "one per base object");
  for (std::size_t y = 0; y < ybase.nobj(); ++y) {
    const FiniteAdjunction& a = p.fibrewise[y];
    if (!(a.left == special_functor(p, y))) throw FibrewiseAdjunctionInvalid(y, "left adjoint is not (eps_Y)_! K_GY");
    if (auto w = adjunction_failure(a); !w.empty()) throw FibrewiseAdjunctionInvalid(y, w);
  }

  // sigma^f_o inverted: K_{X'} f_! a -> (Ff)_! K_X a in D_{FX'}.
  auto sigma_inverse = [&](std::size_t f, std::size_t o) {
    const std::size_t s = comparison(cell, f, o);
    auto inv = d.fibre(fb.obj(c.indexed.base.tgt(f))).inverse(s);
    if (!inv) throw CellInvalid("cocartesian comparison is not invertible");
    return *inv;
  };

  Synthesis out;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> omega;
  for (std::size_t h = 0; h < ybase.nmor(); ++h) {
    const std::size_t y = ybase.src(h), w = ybase.tgt(h);
    const FiniteAdjunction& ay = p.fibrewise[y];
    const FiniteAdjunction& aw = p.fibrewise[w];
    const std::size_t gh = g(h), gy = g.obj(y), gw = g.obj(w);
    const FiniteCategory& cw = c.fibre(gw);
    for (std::size_t dd = 0; dd < d.fibre(y).nobj(); ++dd) {
      const std::size_t c1 = ay.right.obj(dd);
      const std::size_t c2 = c.reindex(gh).obj(c1);
      const std::size_t e1 = aw.unit[c2];
      const std::size_t t = d.reindex(eps[w])(sigma_inverse(gh, c.object(gy, c1)));
      const std::size_t u = d.reindex(h)(ay.counit[dd]);
      if (d.fibre(w).tgt(t) != d.fibre(w).src(u))
        throw CheckFailure("SynthesisInvalid", "pasting for omega does not compose at " + ybase.morphisms[h].name);
      const std::size_t om = cw.compose({aw.right(u), aw.right(t), e1});
      omega[{h, dd}] = om;
      out.omega.push_back({h, dd, gw, om});
    }
  }

  FiniteFunctor r{d.cat, c.cat, {}, {}};
  for (const auto& [y, dd] : d.object_pair) r.on_objects.push_back(c.object(g.obj(y), p.fibrewise[y].right.obj(dd)));
  for (const auto& [h, over, psi] : d.morphism_key) {
    const std::size_t w = ybase.tgt(h);
    const std::size_t phi = c.fibre(g.obj(w)).compose(p.fibrewise[w].right(psi), omega.at({h, over}));
    r.on_morphisms.push_back(c.morphism(g(h), p.fibrewise[ybase.src(h)].right.obj(over), phi));
  }
  validate(r);

  std::vector<std::size_t> zeta, xi;
  for (std::size_t o = 0; o < c.cat.nobj(); ++o) {
    const auto [x, a] = c.object_pair[o];
    const std::size_t fx = fb.obj(x);
    const std::size_t lhat = d.reindex(eps[fx])(sigma_inverse(eta[x], o));
    const std::size_t a2 = c.reindex(eta[x]).obj(a);
    const FiniteAdjunction& afx = p.fibrewise[fx];
    const std::size_t phi = c.fibre(g.obj(fx)).compose(afx.right(lhat), afx.unit[a2]);
    zeta.push_back(c.morphism(eta[x], a, phi));
  }
  for (std::size_t o = 0; o < d.cat.nobj(); ++o) {
    const auto [y, dd] = d.object_pair[o];
    const std::size_t over = d.fibre_of(k.obj(c.object(g.obj(y), p.fibrewise[y].right.obj(dd))));
    xi.push_back(d.morphism(eps[y], over, p.fibrewise[y].counit[dd]));
  }
  out.r = r;
  out.total = {k, r, std::move(zeta), std::move(xi)};
  if (auto bad = hom_bijection_failure(out.total)) throw BijectionFailure(bad->first, bad->second, "hom sets do not match");
  if (auto w = adjunction_failure(out.total); !w.empty()) throw BijectionFailure(npos, npos, w);
  return out;
}

Synthesis dualize(const Synthesis& s) { return {opposite(s.r), dualize(s.total), s.omega}; }

Synthesis synthesize_left_adjoint(const FibredAdjointProblem& p) {
  if (p.cell.direction != CellDirection::Fibred) throw CellInvalid("left synthesis needs a fibred cell");
  return dualize(synthesize_right_adjoint(dualize(p)));
}

bool check_omega_invertible(const Synthesis& s, const TotalCategory& c) {
  return std::all_of(s.omega.begin(), s.omega.end(),
                     [&](const OmegaComponent& o) { return c.fibre(o.fibre).is_iso(o.component); });
}

bool cocartesian_check(const FiniteFunctor& r, const TotalCategory& d, const TotalCategory& c) {
  for (std::size_t u = 0; u < d.cat.nmor(); ++u)
    if (is_cocartesian(d.projection, u) && !is_cocartesian(c.projection, r(u))) return false;
  return true;
}

bool cartesian_check(const FiniteFunctor& l, const TotalCategory& a, const TotalCategory& b) {
  for (std::size_t u = 0; u < a.cat.nmor(); ++u)
    if (is_cartesian(a.projection, u) && !is_cartesian(b.projection, l(u))) return false;
  return true;
}

bool check_cat2_adjunction(const TotalCategory& c, const TotalCategory& d, const FiniteAdjunction& total,
                           const FiniteAdjunction& base) {
  const FiniteFunctor& k = total.left;
  const FiniteFunctor& r = total.right;
  if (!(k.source == c.cat) || !(k.target == d.cat) || !(r.source == d.cat) || !(r.target == c.cat)) return false;
  if (!(base.left.source == c.indexed.base) || !(base.left.target == d.indexed.base)) return false;
  if (!(compose(d.projection, k) == compose(base.left, c.projection))) return false;
  if (!(compose(c.projection, r) == compose(base.right, d.projection))) return false;
  for (std::size_t o = 0; o < c.cat.nobj(); ++o)
    if (total.unit.at(o) >= c.cat.nmor() || c.projection(total.unit[o]) != base.unit[c.base_of(o)]) return false;
  for (std::size_t o = 0; o < d.cat.nobj(); ++o)
    if (total.counit.at(o) >= d.cat.nmor() || d.projection(total.counit[o]) != base.counit[d.base_of(o)]) return false;
  return true;
}

std::vector<FiniteAdjunction> extract_fibrewise(const TotalCategory& c, const TotalCategory& d,
                                                const FiniteAdjunction& total, const FiniteAdjunction& base) {
  if (!c.opfibration()) {
    auto out = extract_fibrewise(dualize(d), dualize(c), dualize(total), dualize(base));
    for (auto& a : out) a = dualize(a);
    return out;
  }
  const FiniteFunctor& k = total.left;
  const FiniteFunctor& r = total.right;
  std::vector<FiniteAdjunction> out;
  for (std::size_t y = 0; y < d.indexed.base.nobj(); ++y) {
    const std::size_t gy = base.right.obj(y);
    const std::size_t ey = base.counit[y];
    const FiniteFunctor ly = compose(d.reindex(ey), fibre_functor(c, d, k, gy, base.left.obj(gy)));
    const FiniteFunctor ry = fibre_functor(d, c, r, y, gy);
    FiniteAdjunction a{ly, ry, {}, {}};
    for (std::size_t dd = 0; dd < d.fibre(y).nobj(); ++dd) a.counit.push_back(d.fibre_part(total.counit[d.object(y, dd)]));
    for (std::size_t a1 = 0; a1 < c.fibre(gy).nobj(); ++a1) {
      const std::size_t o = c.object(gy, a1);
      const std::size_t m = d.morphism(ey, d.fibre_of(k.obj(o)), d.fibre(y).identity[ly.obj(a1)]);
      const std::size_t n = c.cat.compose(r(m), total.unit[o]);
      if (!c.is_vertical(n)) throw AdjunctionInvalid("extracted unit is not vertical");
      a.unit.push_back(c.fibre_part(n));
    }
    out.push_back(std::move(a));
  }
  return out;
}

FixedBaseReport fixed_base_fibred_adjoint_check(const FibredCell& s, const std::vector<FiniteAdjunction>& fibrewise,
                                                Side side) {
  if (s.direction != CellDirection::Fibred) throw CellInvalid("fixed-base check needs a fibred cell");
  validate(s);
  const TotalCategory& bt = s.source;
  const TotalCategory& at = s.target;
  const FiniteCategory& x = bt.indexed.base;
  if (!(s.f == identity_functor(x))) throw CellInvalid("base functor is not the identity");
  if (fibrewise.size() != x.nobj()) throw FibrewiseAdjunctionInvalid(fibrewise.size(), "one per base object");
  for (std::size_t i = 0; i < x.nobj(); ++i) {
    const FiniteFunctor sx = fibre_functor(bt, at, s.k, i, i);
    const FiniteAdjunction& a = fibrewise[i];
    if (!((side == Side::Left ? a.right : a.left) == sx)) throw FibrewiseAdjunctionInvalid(i, "adjoint of S_X expected");
    if (auto w = adjunction_failure(a); !w.empty()) throw FibrewiseAdjunctionInvalid(i, w);
  }
  FixedBaseReport rep;
  rep.side = side;
  rep.chi_invertible = true;
  for (std::size_t f = 0; f < x.nmor(); ++f) {
    const std::size_t xs = x.src(f), ys = x.tgt(f);
    const ReindexIso tau = reindex_commute_iso(s, f);  // f^* S_Y b -> S_X f^* b
    const FiniteAdjunction& ax = fibrewise[xs];
    const FiniteAdjunction& ay = fibrewise[ys];
    const FiniteFunctor& fa = at.reindex(f);
    const FiniteFunctor& fb = bt.reindex(f);
    const FiniteCategory& bx = bt.fibre(xs);
    const FiniteCategory& ax_cat = at.fibre(xs);
    if (side == Side::Left) {
      for (std::size_t a = 0; a < at.fibre(ys).nobj(); ++a) {
        const std::size_t ly = ay.left.obj(a);
        const std::size_t step1 = ax.left(fa(ay.unit[a]));
        const std::size_t step2 = ax.left(tau.components[ly]);
        const std::size_t step3 = ax.counit[fb.obj(ly)];
        const std::size_t chi = bx.compose({step3, step2, step1});
        rep.chi.emplace_back(f, a, chi);
        rep.chi_invertible = rep.chi_invertible && bx.is_iso(chi);
      }
    } else {
      for (std::size_t a = 0; a < at.fibre(ys).nobj(); ++a) {
        const std::size_t ry = ay.right.obj(a);
        const std::size_t e1 = ax.unit[fb.obj(ry)];
        auto inv = ax_cat.inverse(tau.components[ry]);
        const std::size_t chi = bx.compose({ax.right(fa(ay.counit[a])), ax.right(*inv), e1});
        rep.chi.emplace_back(f, a, chi);
        rep.chi_invertible = rep.chi_invertible && bx.is_iso(chi);
      }
    }
  }
  if (side == Side::Left) {
    try {
      const Synthesis syn = synthesize_left_adjoint({s, identity_adjunction(x), fibrewise});
      rep.plain_adjoint = true;
      rep.synthesized_fibred = cartesian_check(syn.r, at, bt);
    } catch (const CheckFailure&) {
      rep.plain_adjoint = false;
    }
    auto found = find_left_adjoint(s.k, &at.projection);
    rep.fibred_adjoint_exists = found && cartesian_check(found->left, at, bt);
  } else {
    rep.plain_adjoint = find_right_adjoint(s.k).has_value();
    auto found = find_right_adjoint(s.k, &at.projection);
    rep.fibred_adjoint_exists = found && cartesian_check(found->right, at, bt);
  }
  return rep;
}

// ---------------------------------------------------------------- corpus

namespace {

FiniteCategory chain(std::string name, std::vector<std::string> objs) {
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (std::size_t i = 0; i + 1 < objs.size(); ++i) arrows.emplace_back(i, i + 1);
  return preorder(std::move(name), std::move(objs), arrows);
}

/// Covariant indexed category over 2 with a single push-forward along 0 -> 1.
IndexedCategory over_arrow(FiniteCategory f0, FiniteCategory f1, std::vector<std::size_t> push) {
  const FiniteCategory b = arrow_category();
  FiniteFunctor p = monotone(f0, f1, std::move(push));
  return indexed_category(b, Variance::Covariant, {std::move(f0), std::move(f1)}, {{b.morphism_index("0->1"), p}});
}

struct Builder {
  TotalCategory c, d;
  FiniteFunctor fbase, gbase;
  FiniteAdjunction base;
  FiniteFunctor k;

  Builder(const IndexedCategory& ic, const IndexedCategory& id, FiniteFunctor f, FiniteFunctor g,
          const std::vector<FiniteFunctor>& kfib)
      : c(grothendieck(ic)), d(grothendieck(id)), fbase(std::move(f)), gbase(std::move(g)) {
    base = thin_adjunction(fbase, gbase);
    k = strict_total_functor(c, d, fbase, kfib);
  }

  /// Right adjoints R_Y given by object maps.
  OpfibredAdjointProblem problem(const std::vector<std::vector<std::size_t>>& rmaps) const {
    OpfibredAdjointProblem p{{c, d, k, fbase, CellDirection::Opfibred}, base, {}};
    for (std::size_t y = 0; y < d.indexed.base.nobj(); ++y) {
      const FiniteFunctor l = special_functor(p, y);
      p.fibrewise.push_back(thin_adjunction(l, monotone(l.target, l.source, rmaps[y])));
    }
    return p;
  }
};

}  // namespace

std::vector<CorpusInstance> opfibred_corpus() {
  std::vector<CorpusInstance> out;
  const FiniteCategory two = arrow_category();
  const FiniteCategory one = terminal_category();
  const FiniteCategory pq = chain("pq", {"p", "q"});
  const FiniteCategory uv = chain("uv", {"u", "v"});
  const FiniteCategory st = chain("st", {"s", "t"});
  const FiniteCategory ee = chain("ee", {"e", "e'"});
  const FiniteCategory star = preorder("star", {"*"}, {});
  const FiniteCategory dd = preorder("d", {"d"}, {});
  const FiniteCategory e1 = preorder("e", {"e"}, {});
  const auto id2 = identity_functor(two);

  {
    const IndexedCategory ic = over_arrow(pq, uv, {0, 1});
    Builder b(ic, ic, id2, id2, {identity_functor(pq), identity_functor(uv)});
    out.push_back({"identity", b.problem({{0, 1}, {0, 1}}), true});
  }
  {
    Builder b(over_arrow(pq, uv, {0, 1}), over_arrow(dd, e1, {0}), id2, id2,
              {constant_functor(pq, dd, 0), constant_functor(uv, e1, 0)});
    out.push_back({"reflective", b.problem({{1}, {1}}), true});
  }
  {
    Builder b(over_arrow(star, uv, {0}), over_arrow(dd, e1, {0}), id2, id2,
              {constant_functor(star, dd, 0), constant_functor(uv, e1, 0)});
    out.push_back({"omega_fail", b.problem({{0}, {1}}), false});
  }
  {
    const IndexedCategory ic = constant_indexed(one, pq, Variance::Covariant);
    const FiniteFunctor f = monotone(one, two, {0});
    const FiniteFunctor g = monotone(two, one, {0, 0});
    Builder b(ic, over_arrow(st, e1, {0, 0}), f, g, {monotone(pq, st, {0, 1})});
    out.push_back({"base_change_fail", b.problem({{0, 1}, {1}}), false});
  }
  {
    const IndexedCategory ic = constant_indexed(one, pq, Variance::Covariant);
    const FiniteFunctor f = monotone(one, two, {0});
    const FiniteFunctor g = monotone(two, one, {0, 0});
    Builder b(ic, over_arrow(st, ee, {0, 1}), f, g, {monotone(pq, st, {0, 1})});
    out.push_back({"base_change", b.problem({{0, 1}, {0, 1}}), true});
  }
  return out;
}

namespace {

IndexedCategory pulled_over_arrow(FiniteCategory f0, FiniteCategory f1, std::vector<std::size_t> pull) {
  const FiniteCategory b = arrow_category();
  FiniteFunctor p = monotone(f1, f0, std::move(pull));
  return indexed_category(b, Variance::Contravariant, {std::move(f0), std::move(f1)}, {{b.morphism_index("0->1"), p}});
}

FixedBaseInstance fixed_instance(std::string name, const IndexedCategory& src, const IndexedCategory& tgt,
                                 const std::vector<std::vector<std::size_t>>& smaps,
                                 const std::vector<std::vector<std::size_t>>& adj, Side side, bool chi) {
  const TotalCategory s = grothendieck(src), t = grothendieck(tgt);
  std::vector<FiniteFunctor> fib;
  for (std::size_t x = 0; x < smaps.size(); ++x) fib.push_back(monotone(s.fibre(x), t.fibre(x), smaps[x]));
  const FiniteFunctor id = identity_functor(s.indexed.base);
  FixedBaseInstance out{std::move(name), {s, t, strict_total_functor(s, t, id, fib), id, CellDirection::Fibred}, {},
                        side, chi};
  for (std::size_t x = 0; x < adj.size(); ++x) {
    const FiniteFunctor sx = fibre_functor(s, t, out.cell.k, x, x);
    const FiniteFunctor other = monotone(sx.target, sx.source, adj[x]);
    out.fibrewise.push_back(side == Side::Left ? thin_adjunction(other, sx) : thin_adjunction(sx, other));
  }
  return out;
}

}  // namespace

std::vector<FixedBaseInstance> fixed_base_corpus() {
  const FiniteCategory mn = chain("mn", {"m", "n"});
  const FiniteCategory rs = chain("rs", {"r", "s"});
  const FiniteCategory pq = chain("pq", {"p", "q"});
  const FiniteCategory uv = chain("uv", {"u", "v"});
  const FiniteCategory star = preorder("star", {"*"}, {});
  const FiniteCategory dd = preorder("d", {"d"}, {});
  const FiniteCategory e1 = preorder("e", {"e"}, {});
  const IndexedCategory small = pulled_over_arrow(dd, e1, {0});
  return {
      fixed_instance("left_reflective", pulled_over_arrow(mn, rs, {0, 1}), small, {{0, 0}, {0, 0}}, {{0}, {0}},
                     Side::Left, true),
      fixed_instance("left_chi_fail", pulled_over_arrow(mn, star, {1}), small, {{0, 0}, {0}}, {{0}, {0}}, Side::Left,
                     false),
      fixed_instance("right_coreflective", pulled_over_arrow(pq, uv, {0, 1}), small, {{0, 0}, {0, 0}}, {{1}, {1}},
                     Side::Right, true),
      fixed_instance("right_chi_fail", pulled_over_arrow(pq, uv, {0, 0}), small, {{0, 0}, {0, 0}}, {{1}, {1}},
                     Side::Right, false),
  };
}

}  // namespace mlab::fibcat
