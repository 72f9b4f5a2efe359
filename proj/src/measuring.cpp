#include "mlab/measuring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace mlab::measuring {

using exactlin::Echelon;
using exactlin::tensor;
using algcore::convolution_algebra;
using algcore::is_algebra_morphism;
using algcore::is_coalgebra_morphism;

HintInvalid::HintInvalid(std::size_t i)
    : Error("HintInvalid", "hint " + std::to_string(i) + " is not an algebra map"), index(i) {}

namespace {

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

struct Term {
  std::size_t l, r;
  Scalar c;
};

/// Comultiplication kept column-sparse; the dense matrix is never formed for large truncations.
struct SparseCoalg {
  FieldSpec f;
  std::size_t dim = 0;
  std::vector<std::vector<Term>> delta;
  Vec counit;
};

SparseCoalg sparse_of(const Coalgebra& c) {
  SparseCoalg s{c.field, c.dim, std::vector<std::vector<Term>>(c.dim), Vec(c.dim)};
  for (std::size_t i = 0; i < c.dim; ++i) {
    for (auto& [lr, x] : c.comult.col_nz(i)) s.delta[i].push_back({lr / c.dim, lr % c.dim, x});
    s.counit[i] = c.counit.at(0, i);
  }
  return s;
}

Coalgebra dense_of(const SparseCoalg& s, const std::string& name) {
  Coalgebra c;
  c.name = name;
  c.field = s.f;
  c.dim = s.dim;
  c.comult = Mat(s.f, s.dim * s.dim, s.dim);
  c.counit = Mat(s.f, 1, s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) {
    for (auto& t : s.delta[i]) c.comult.add_to(t.l * s.dim + t.r, i, t.c);
    c.counit.set(0, i, s.counit[i]);
  }
  return c;
}

using Accum = std::unordered_map<std::size_t, Scalar>;

void clean(const FieldSpec& f, Accum& m) {
  for (auto it = m.begin(); it != m.end();) {
    it->second = f.reduce(it->second);
    it = sgn(it->second) == 0 ? m.erase(it) : std::next(it);
  }
}

/// Delta(v) as a sparse map keyed by l*dim+r.
Accum delta_of(const SparseCoalg& s, const SparseVec& v) {
  Accum out;
  for (auto& [i, x] : v)
    for (auto& t : s.delta[i]) out[t.l * s.dim + t.r] += x * t.c;
  clean(s.f, out);
  return out;
}

/// For each coordinate, the annihilator rows that are nonzero there.
std::vector<SparseVec> by_coordinate(const Subspace& ann, std::size_t n) {
  std::vector<SparseVec> col(n);
  for (std::size_t q = 0; q < ann.dim(); ++q)
    for (auto& [i, a] : ann.basis().row_nz(q)) col[i].push_back({q, a});
  return col;
}

Subspace from_solutions(const Subspace& d, const Echelon& e) {
  Subspace sol = e.solutions();
  if (sol.dim() == 0) return Subspace::zero(d.field(), d.ambient_dim());
  return Subspace::span(sol.basis() * d.basis());
}

/// Feeds constraint rows, stopping once the solution space is zero.
void feed(Echelon& e, const std::map<std::size_t, SparseVec>& rows, std::size_t d) {
  for (auto& [key, row] : rows) {
    e.add_sparse(row);
    if (e.rank() == d) return;
  }
}

Subspace subcoalgebra_fixpoint(const SparseCoalg& s, Subspace d) {
  const FieldSpec& f = s.f;
  const std::size_t n = s.dim;
  while (d.dim() > 0) {
    Subspace ann = exactlin::annihilator(d);
    if (ann.dim() == 0) return d;
    auto col = by_coordinate(ann, n);
    std::map<std::size_t, SparseVec> rows;
    for (std::size_t r = 0; r < d.dim(); ++r) {
      Accum acc;
      for (auto& [key, x] : delta_of(s, d.basis().row_nz(r))) {
        const std::size_t i = key / n, j = key % n;
        for (auto& [q, a] : col[i]) acc[2 * (q * n + j)] += a * x;
        for (auto& [q, a] : col[j]) acc[2 * (q * n + i) + 1] += a * x;
      }
      clean(f, acc);
      for (auto& [k, v] : acc) rows[k].push_back({r, v});
    }
    Echelon e(f, d.dim());
    feed(e, rows, d.dim());
    if (e.rank() == 0) return d;
    d = from_solutions(d, e);
  }
  return d;
}

Subspace subcomodule_fixpoint(const ComoduleStructure& x, Subspace d) {
  const FieldSpec& f = x.over.field;
  const std::size_t n = x.dim, dc = x.over.dim;
  std::vector<SparseVec> coact(n);
  for (std::size_t i = 0; i < n; ++i) coact[i] = x.coaction.col_nz(i);
  while (d.dim() > 0) {
    Subspace ann = exactlin::annihilator(d);
    if (ann.dim() == 0) return d;
    auto col = by_coordinate(ann, n);
    std::map<std::size_t, SparseVec> rows;
    for (std::size_t r = 0; r < d.dim(); ++r) {
      Accum acc;
      for (auto& [i, v] : d.basis().row_nz(r))
        for (auto& [key, y] : coact[i]) {
          const std::size_t xi = key / dc, c = key % dc;
          for (auto& [q, a] : col[xi]) acc[q * dc + c] += a * v * y;
        }
      clean(f, acc);
      for (auto& [k, v] : acc) rows[k].push_back({r, v});
    }
    Echelon e(f, d.dim());
    feed(e, rows, d.dim());
    if (e.rank() == 0) return d;
    d = from_solutions(d, e);
  }
  return d;
}

/// Position of each pivot column in the rref basis.
std::vector<long> pivot_positions(const Subspace& d) {
  std::vector<long> pos(d.ambient_dim(), -1);
  for (std::size_t s = 0; s < d.pivots().size(); ++s) pos[d.pivots()[s]] = static_cast<long>(s);
  return pos;
}

Coalgebra restrict_sparse(const SparseCoalg& s, const Subspace& d, const std::string& name) {
  const std::size_t k = d.dim(), n = s.dim;
  auto pos = pivot_positions(d);
  Coalgebra out;
  out.name = name;
  out.field = s.f;
  out.dim = k;
  out.comult = Mat(s.f, k * k, k);
  out.counit = Mat(s.f, 1, k);
  for (std::size_t r = 0; r < k; ++r) {
    auto row = d.basis().row_nz(r);
    Scalar e = 0;
    for (auto& [i, x] : row) e += x * s.counit[i];
    out.counit.set(0, r, e);
    for (auto& [key, x] : delta_of(s, row)) {
      const long a = pos[key / n], b = pos[key % n];
      if (a >= 0 && b >= 0) out.comult.set(static_cast<std::size_t>(a) * k + b, r, x);
    }
  }
  return algcore::check_coalgebra(out);
}

/// psi(c)(e_a) for every c and a.
std::vector<std::vector<Vec>> hom_table(const Mat& psi, std::size_t da, std::size_t db) {
  std::vector<std::vector<Vec>> t(psi.cols(), std::vector<Vec>(da, Vec(db)));
  for (std::size_t c = 0; c < psi.cols(); ++c)
    for (auto& [ab, x] : psi.col_nz(c)) t[c][ab / db][ab % db] = x;
  return t;
}

Vec apply_hom(const std::vector<Vec>& phi, const Vec& a, const FieldSpec& f) {
  Vec out(phi.empty() ? 0 : phi[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0)
      for (std::size_t b = 0; b < out.size(); ++b) out[b] += a[i] * phi[i][b];
  for (auto& x : out) x = f.reduce(x);
  return out;
}

/// y.z in B.
Vec mult_in(const Algebra& b, const Vec& y, const Vec& z) {
  Vec out(b.dim);
  for (std::size_t i = 0; i < b.dim; ++i) {
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < b.dim; ++j) {
      if (sgn(z[j]) == 0) continue;
      for (auto& [k, x] : b.mult.col_nz(i * b.dim + j)) out[k] += y[i] * z[j] * x;
    }
  }
  for (auto& x : out) x = b.field.reduce(x);
  return out;
}

/// b.n for b in B and n in N.
Vec act(const ModuleStructure& m, const Vec& a, const Vec& v) {
  Vec out(m.dim);
  const FieldSpec& f = m.over.field;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < m.dim; ++j) {
      if (sgn(v[j]) == 0) continue;
      for (auto& [k, x] : m.action.col_nz(i * m.dim + j)) out[k] += a[i] * v[j] * x;
    }
  }
  for (auto& x : out) x = f.reduce(x);
  return out;
}

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (b != 0 && r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

/// Defect of the measuring constraints for every cofree basis element, as the columns of a matrix.
Mat measuring_defects(const SparseCoalg& t, const Mat& proj, const Algebra& a, const Algebra& b) {
  const FieldSpec& f = a.field;
  const std::size_t da = a.dim, db = b.dim;
  auto table = hom_table(proj, da, db);
  std::vector<bool> live(t.dim);
  for (std::size_t i = 0; i < t.dim; ++i) live[i] = !proj.col_nz(i).empty();
  std::vector<std::vector<Vec>> prods(da, std::vector<Vec>(da));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) prods[i][j] = a.product(i, j);
  const Vec one_a = a.unit.col(0), one_b = b.unit.col(0);
  Mat out(f, da * da * db + db, t.dim);
  for (std::size_t c = 0; c < t.dim; ++c) {
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        Vec v = live[c] ? apply_hom(table[c], prods[i][j], f) : Vec(db);
        for (auto& term : t.delta[c]) {
          if (!live[term.l] || !live[term.r]) continue;
          Vec w = mult_in(b, table[term.l][i], table[term.r][j]);
          for (std::size_t k = 0; k < db; ++k) v[k] -= term.c * w[k];
        }
        for (std::size_t k = 0; k < db; ++k) out.set((i * da + j) * db + k, c, v[k]);
      }
    Vec u = live[c] ? apply_hom(table[c], one_a, f) : Vec(db);
    for (std::size_t k = 0; k < db; ++k) out.set(da * da * db + k, c, u[k] - t.counit[c] * one_b[k]);
  }
  return out;
}

struct Cofree {
  SparseCoalg s;
  Mat proj;
  std::vector<std::size_t> degree;
  std::vector<std::vector<std::size_t>> path, word;
  std::vector<std::size_t> point_index;
};

std::size_t first_nonzero(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) return i;
  return v.size();
}

Cofree build_cofree(FieldSpec f, std::size_t dv, const std::vector<Vec>& points, std::size_t n,
                    const Budget& budget) {
  const std::size_t np = points.size();
  // letters[u][w]: allowed labels on an arrow u -> w
  std::vector<std::vector<std::vector<std::size_t>>> letters(np, std::vector<std::vector<std::size_t>>(np));
  for (std::size_t u = 0; u < np; ++u)
    for (std::size_t w = 0; w < np; ++w) {
      std::size_t skip = dv;
      if (u != w) {
        Vec diff(dv);
        for (std::size_t i = 0; i < dv; ++i) diff[i] = f.reduce(points[u][i] - points[w][i]);
        skip = first_nonzero(diff);
      }
      for (std::size_t i = 0; i < dv; ++i)
        if (i != skip) letters[u][w].push_back(i);
    }
  Cofree c;
  std::map<std::vector<std::size_t>, std::size_t> index;
  auto key_of = [](const std::vector<std::size_t>& p, const std::vector<std::size_t>& w) {
    std::vector<std::size_t> k = p;
    k.insert(k.end(), w.begin(), w.end());
    return k;
  };
  for (std::size_t k = 0; k <= n && np > 0; ++k) {
    std::vector<std::size_t> p(k + 1, 0);
    while (true) {
      std::vector<const std::vector<std::size_t>*> steps;
      bool empty = false;
      for (std::size_t j = 0; j < k; ++j) {
        steps.push_back(&letters[p[j]][p[j + 1]]);
        empty = empty || steps.back()->empty();
      }
      if (!empty) {
        std::vector<std::size_t> pos(k, 0);
        while (true) {
          std::vector<std::size_t> w(k);
          for (std::size_t j = 0; j < k; ++j) w[j] = (*steps[j])[pos[j]];
          index[key_of(p, w)] = c.degree.size();
          c.degree.push_back(k);
          c.path.push_back(p);
          c.word.push_back(w);
          if (c.degree.size() > budget.max_cofree_dim)
            throw BudgetExceeded("cofree truncation exceeds " + std::to_string(budget.max_cofree_dim));
          std::size_t j = k;
          while (j > 0 && ++pos[j - 1] == steps[j - 1]->size()) pos[--j] = 0;
          if (j == 0) break;
        }
      }
      std::size_t j = k + 1;
      while (j > 0 && ++p[j - 1] == np) p[--j] = 0;
      if (j == 0) break;
    }
  }
  const std::size_t dim = c.degree.size();
  c.s = SparseCoalg{f, dim, std::vector<std::vector<Term>>(dim), Vec(dim)};
  c.proj = Mat(f, dv, dim);
  c.point_index.resize(np);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& p = c.path[i];
    const auto& w = c.word[i];
    const std::size_t k = w.size();
    if (k == 0) {
      c.s.counit[i] = 1;
      c.point_index[p[0]] = i;
      for (std::size_t v = 0; v < dv; ++v) c.proj.set(v, i, points[p[0]][v]);
    } else if (k == 1) {
      c.proj.set(w[0], i, 1);
    }
    for (std::size_t j = 0; j <= k; ++j) {
      std::vector<std::size_t> lp(p.begin(), p.begin() + j + 1), rp(p.begin() + j, p.end());
      std::vector<std::size_t> lw(w.begin(), w.begin() + j), rw(w.begin() + j, w.end());
      c.s.delta[i].push_back({index.at(key_of(lp, lw)), index.at(key_of(rp, rw)), Scalar(1)});
    }
  }
  return c;
}

std::vector<Vec> point_vectors(const std::vector<AlgebraMorphism>& pts) {
  std::vector<Vec> out;
  for (auto& p : pts) out.push_back(hom_vec(p.matrix));
  return out;
}

/// phi(a_i a_j) == phi(a_i) phi(a_j) on basis pairs, stopping at the first failure.
bool multiplicative(const Algebra& a, const Algebra& b, const Mat& phi) {
  std::vector<Vec> img(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) img[i] = phi.col(i);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      if (phi.apply(a.product(i, j)) != mult_in(b, img[i], img[j])) return false;
  return true;
}

void require_measuring_shape(const MeasuringMap& m) {
  if (m.psi.rows() != m.a.dim * m.b.dim || m.psi.cols() != m.c.dim)
    throw DimMismatch("measuring map must be (dimA*dimB) x dimC");
  exactlin::require_same_field(m.a.field, m.b.field, "measuring");
  exactlin::require_same_field(m.a.field, m.c.field, "measuring");
}

// ---- iterated projections, the uniqueness certificate of couniversal_factor

using Tens = std::map<std::uint64_t, Scalar>;

/// level[c] = psi^{(x)(k+1)} Delta^{(k)}(e_c), built from the previous level.
std::vector<Tens> next_level(const SparseCoalg& s, const Mat& psi, const std::vector<Tens>& prev,
                             std::uint64_t stride) {
  std::vector<SparseVec> cols(s.dim);
  for (std::size_t c = 0; c < s.dim; ++c) cols[c] = psi.col_nz(c);
  std::vector<Tens> out(s.dim);
  for (std::size_t c = 0; c < s.dim; ++c) {
    for (auto& t : s.delta[c])
      for (auto& [i, x] : cols[t.l])
        for (auto& [w, y] : prev[t.r]) out[c][i * stride + w] += t.c * x * y;
    for (auto it = out[c].begin(); it != out[c].end();) {
      it->second = s.f.reduce(it->second);
      it = sgn(it->second) == 0 ? out[c].erase(it) : std::next(it);
    }
  }
  return out;
}

std::vector<Tens> first_level(const SparseCoalg& s, const Mat& psi) {
  std::vector<Tens> out(s.dim);
  for (std::size_t c = 0; c < s.dim; ++c)
    for (auto& [i, x] : psi.col_nz(c)) out[c][i] = x;
  return out;
}

/// Grouplikes of c are the algebra maps c* -> k.
std::vector<Vec> grouplikes_by_enumeration(const Coalgebra& c, const Budget& budget) {
  std::vector<Vec> out;
  if (!c.field.is_prime() || checked_pow(c.field.p, c.dim, budget.enumeration) > budget.enumeration) return out;
  Algebra dual = algcore::dual_algebra(c);
  Algebra k = algcore::ground_algebra(c.field);
  const Vec one = dual.unit.col(0);
  modcomod::for_each_matrix(c.field, 1, c.dim, [&](const Mat& g) {
    if (g.apply(one) == Vec{Scalar(1)} && multiplicative(dual, k, g)) out.push_back(g.row(0));
    return true;
  });
  return out;
}

/// Length of the filtration G, G^G, ... starting at span(grouplikes); nullopt if it stalls below C.
std::optional<std::size_t> wedge_length(const Coalgebra& c, const std::vector<Vec>& g) {
  const std::size_t n = c.dim;
  Subspace g0 = Subspace::span(c.field, n, g);
  Subspace cur = g0;
  Subspace ann_g = exactlin::annihilator(g0);
  for (std::size_t len = 0; len <= n; ++len) {
    if (cur.dim() == n) return len;
    Subspace ann_c = exactlin::annihilator(cur);
    Mat cons(c.field, ann_g.dim() * ann_c.dim(), n);
    for (std::size_t col = 0; col < n; ++col)
      for (auto& [jk, x] : c.comult.col_nz(col)) {
        const std::size_t j = jk / n, k = jk % n;
        for (std::size_t a = 0; a < ann_g.dim(); ++a)
          for (std::size_t b = 0; b < ann_c.dim(); ++b)
            cons.add_to(a * ann_c.dim() + b, col, ann_g.basis().at(a, j) * ann_c.basis().at(b, k) * x);
      }
    Subspace next = exactlin::kernel(cons);
    if (next.dim() == cur.dim()) return std::nullopt;
    cur = next;
  }
  return std::nullopt;
}

[[noreturn]] void diagnose(const TruncatedMeasuringComonoid& p, const MeasuringMap& m, const Budget& budget) {
  auto g = grouplikes_by_enumeration(m.c, budget);
  for (std::size_t i = 0; i < m.c.dim && !m.c.field.is_prime(); ++i) {
    Mat e = Mat::column(m.c.field, unit_vec(m.c.dim, i));
    if (m.c.comult * e == tensor(e, e)) g.push_back(e.col(0));
  }
  auto pts = point_vectors(p.points);
  for (auto& v : g) {
    Vec image = m.psi.apply(v);
    if (std::find(pts.begin(), pts.end(), image) == pts.end())
      throw UnmatchedPoint("a grouplike of '" + m.c.name + "' maps to an algebra map outside the points");
  }
  if (!g.empty() || m.c.dim == 0) {
    auto len = wedge_length(m.c, g);
    if (!len) throw UnmatchedPoint("'" + m.c.name + "' has a simple subcoalgebra of dimension > 1");
    throw TruncationInsufficient("needs degree " + std::to_string(*len) + ", truncation has degree " +
                                 std::to_string(p.degree));
  }
  throw TruncationInsufficient("no factorization through the degree-" + std::to_string(p.degree) +
                               " truncation");
}

}  // namespace

// ---------------------------------------------------------------- hom vectors

Vec hom_vec(const Mat& l) {
  Vec v(l.rows() * l.cols());
  for (std::size_t b = 0; b < l.rows(); ++b)
    for (std::size_t a = 0; a < l.cols(); ++a) v[a * l.rows() + b] = l.at(b, a);
  return v;
}

Mat hom_mat(FieldSpec f, const Vec& v, std::size_t da, std::size_t db) {
  Mat m(f, db, da);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b) m.set(b, a, v[a * db + b]);
  return m;
}

// ---------------------------------------------------------------- measurings

Verdict measuring_identity(const MeasuringMap& m) {
  require_measuring_shape(m);
  const FieldSpec& f = m.a.field;
  const std::size_t da = m.a.dim, db = m.b.dim;
  auto table = hom_table(m.psi, da, db);
  const Vec one_a = m.a.unit.col(0), one_b = m.b.unit.col(0);
  for (std::size_t c = 0; c < m.c.dim; ++c) {
    auto d = m.c.comult.col_nz(c);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        Vec lhs = apply_hom(table[c], m.a.product(i, j), f);
        Vec rhs(db);
        for (auto& [lr, x] : d) {
          Vec w = mult_in(m.b, table[lr / m.c.dim][i], table[lr % m.c.dim][j]);
          for (std::size_t k = 0; k < db; ++k) rhs[k] = f.reduce(rhs[k] + x * w[k]);
        }
        if (lhs != rhs)
          return Verdict::fail("psi(c" + std::to_string(c) + ")(a" + std::to_string(i) + "a" + std::to_string(j) +
                               ") != sum psi(c_1)(a) psi(c_2)(a')");
      }
    Vec u = apply_hom(table[c], one_a, f);
    for (std::size_t k = 0; k < db; ++k)
      if (u[k] != f.reduce(m.c.counit.at(0, c) * one_b[k]))
        return Verdict::fail("psi(c" + std::to_string(c) + ")(1) != eps(c) 1");
  }
  return Verdict::pass();
}

Mat measuring_adjunct(const MeasuringMap& m) {
  require_measuring_shape(m);
  const std::size_t db = m.b.dim;
  Mat adj(m.a.field, m.c.dim * db, m.a.dim);
  for (std::size_t c = 0; c < m.c.dim; ++c)
    for (auto& [ab, x] : m.psi.col_nz(c)) adj.set(c * db + ab % db, ab / db, x);
  return adj;
}

Verdict verify_measuring(const MeasuringMap& m) {
  Verdict direct = measuring_identity(m);
  Verdict adjunct = is_algebra_morphism({m.a, convolution_algebra(m.c, m.b), measuring_adjunct(m)});
  if (direct.ok != adjunct.ok) throw std::logic_error("measuring routes disagree");
  return direct;
}

std::vector<AlgebraMorphism> algebra_maps(const Algebra& a, const Algebra& b, const std::vector<Mat>& hints,
                                          const Budget& budget) {
  exactlin::require_same_field(a.field, b.field, "algebra_maps");
  std::vector<AlgebraMorphism> validated;
  for (std::size_t i = 0; i < hints.size(); ++i) {
    Mat h = hints[i];
    if (h.rows() != b.dim || h.cols() != a.dim) throw HintInvalid(i);
    Mat r(a.field, b.dim, a.dim);
    for (std::size_t x = 0; x < b.dim; ++x)
      for (std::size_t y = 0; y < a.dim; ++y) r.set(x, y, h.at(x, y));
    AlgebraMorphism f{a, b, r};
    if (!is_algebra_morphism(f)) throw HintInvalid(i);
    if (std::none_of(validated.begin(), validated.end(), [&](auto& g) { return g.matrix == r; }))
      validated.push_back(f);
  }
  if (a.dim == 1) {
    Mat u = b.unit.scaled(a.field.inv(a.unit.at(0, 0)));
    return {AlgebraMorphism{a, b, u}};
  }
  if (!a.field.is_prime()) return validated;
  const std::uint64_t count = checked_pow(a.field.p, a.dim * b.dim, budget.enumeration);
  if (count > budget.enumeration) {
    if (!hints.empty()) return validated;
    throw BudgetExceeded("algebra map enumeration needs " + std::to_string(a.field.p) + "^" +
                         std::to_string(a.dim * b.dim) + " candidates");
  }
  std::vector<AlgebraMorphism> out;
  const Vec one_a = a.unit.col(0), one_b = b.unit.col(0);
  modcomod::for_each_matrix(a.field, b.dim, a.dim, [&](const Mat& m) {
    if (m.apply(one_a) != one_b || !multiplicative(a, b, m)) return true;
    out.push_back({a, b, m});
    return true;
  });
  for (std::size_t i = 0; i < validated.size(); ++i)
    if (std::none_of(out.begin(), out.end(), [&](auto& g) { return g.matrix == validated[i].matrix; }))
      throw HintInvalid(i);
  return out;
}

// ---------------------------------------------------------------- largest sub-structures

Subspace largest_subcoalgebra_in(const Coalgebra& c, const Subspace& w) {
  if (w.ambient_dim() != c.dim) throw AmbientMismatch("largest_subcoalgebra_in");
  return subcoalgebra_fixpoint(sparse_of(c), w);
}

Subspace largest_subcomodule_in(const ComoduleStructure& x, const Subspace& w) {
  if (w.ambient_dim() != x.dim) throw AmbientMismatch("largest_subcomodule_in");
  return subcomodule_fixpoint(x, w);
}

Coalgebra restrict_coalgebra(const Coalgebra& c, const Subspace& d) {
  return restrict_sparse(sparse_of(c), d, c.name + "|sub");
}

ComoduleStructure restrict_comodule(const ComoduleStructure& x, const Subspace& d) {
  const std::size_t k = d.dim(), dc = x.over.dim;
  auto pos = pivot_positions(d);
  ComoduleStructure out{x.name + "|sub", x.over, k, Mat(x.over.field, k * dc, k)};
  for (std::size_t r = 0; r < k; ++r) {
    Accum acc;
    for (auto& [i, v] : d.basis().row_nz(r))
      for (auto& [key, y] : x.coaction.col_nz(i)) acc[key] += v * y;
    clean(x.over.field, acc);
    for (auto& [key, y] : acc) {
      const long s = pos[key / dc];
      if (s >= 0) out.coaction.set(static_cast<std::size_t>(s) * dc + key % dc, r, y);
    }
  }
  return modcomod::check_comodule(out);
}

// ---------------------------------------------------------------- cofree truncation and P_n

CofreeTruncation pointed_cofree_truncation(FieldSpec f, std::size_t v_dim, const std::vector<Vec>& points,
                                           std::size_t n, const Budget& budget) {
  Cofree c = build_cofree(f, v_dim, points, n, budget);
  CofreeTruncation out;
  out.coalg = algcore::check_coalgebra(dense_of(c.s, "T" + std::to_string(n)));
  out.proj = c.proj;
  out.degree = c.degree;
  out.path = c.path;
  out.word = c.word;
  out.point_index = c.point_index;
  return out;
}

TruncatedMeasuringComonoid measuring_comonoid_truncated(const Algebra& a, const Algebra& b, std::size_t n,
                                                        const std::vector<Mat>& hints, const Budget& budget) {
  algcore::require_valid(a, "measuring_comonoid_truncated");
  algcore::require_valid(b, "measuring_comonoid_truncated");
  TruncatedMeasuringComonoid p;
  p.a = a;
  p.b = b;
  p.degree = n;
  p.points = algebra_maps(a, b, hints, budget);
  auto pts = point_vectors(p.points);
  Cofree t = build_cofree(a.field, a.dim * b.dim, pts, n, budget);
  Subspace w = exactlin::kernel(measuring_defects(t.s, t.proj, a, b));
  Subspace d = subcoalgebra_fixpoint(t.s, w);
  p.p_n = restrict_sparse(t.s, d, "P" + std::to_string(n) + "(" + a.name + "," + b.name + ")");
  p.cofree_dim = t.s.dim;
  p.embedding = d.basis();
  p.cofree_proj = t.proj;
  p.cofree_counit = Mat(a.field, 1, t.s.dim);
  for (std::size_t i = 0; i < t.s.dim; ++i) p.cofree_counit.set(0, i, t.s.counit[i]);
  p.proj = t.proj * d.basis().transpose();
  auto pos = pivot_positions(d);
  for (std::size_t u = 0; u < pts.size(); ++u) {
    Vec e(d.dim());
    const long s = pos[t.point_index[u]];
    if (s < 0) throw std::logic_error("grouplike missing from the truncation");
    e[static_cast<std::size_t>(s)] = 1;
    p.point_elements.push_back(e);
  }
  p.canonical_measuring = {p.p_n, a, b, p.proj};
  if (!verify_measuring(p.canonical_measuring)) throw std::logic_error("canonical measuring fails");
  return p;
}

FiniteDual finite_dual(const Algebra& a) {
  Coalgebra c = algcore::dual_coalgebra(a);
  Algebra k = algcore::ground_algebra(a.field);
  return {c, {c, a, k, Mat::identity(a.field, a.dim)}};
}

CoalgebraMorphism couniversal_factor(const TruncatedMeasuringComonoid& p, const MeasuringMap& m,
                                     const Budget& budget) {
  require_measuring_shape(m);
  if (m.a.dim != p.a.dim || m.b.dim != p.b.dim) throw DimMismatch("couniversal_factor: algebras differ");
  if (!verify_measuring(m)) throw NotMeasuring(verify_measuring(m).failure);
  const FieldSpec& f = m.a.field;
  const std::size_t dp = p.p_n.dim, dc = m.c.dim;
  const std::uint64_t dv = m.a.dim * m.b.dim;
  SparseCoalg sp = sparse_of(p.p_n), sc = sparse_of(m.c);
  auto lp = first_level(sp, p.proj);
  auto lc = first_level(sc, m.psi);
  Echelon e(f, dp + dc);
  auto covered = [&] {
    std::size_t k = 0;
    for (auto c : e.pivot_cols()) k += c < dp;
    return k == dp;
  };
  const std::size_t max_level = 2 * p.degree + 2;
  std::uint64_t stride = dv;
  for (std::size_t level = 0;; ++level) {
    std::map<std::uint64_t, SparseVec> rows;
    for (std::size_t j = 0; j < dp; ++j)
      for (auto& [idx, x] : lp[j]) rows[idx].push_back({j, x});
    for (std::size_t c = 0; c < dc; ++c)
      for (auto& [idx, x] : lc[c]) rows[idx].push_back({dp + c, x});
    for (auto& [idx, row] : rows) e.add_sparse(row);
    if (covered()) break;
    if (level == max_level) throw CheckFailure("FactorizationNotUnique", "iterated projections of P_n are not injective");
    if (stride > (std::uint64_t(1) << 62) / std::max<std::uint64_t>(dv, 1))
      throw BudgetExceeded("iterated projection index overflow");
    lp = next_level(sp, p.proj, lp, stride);
    lc = next_level(sc, m.psi, lc, stride);
    stride *= dv;
  }
  for (auto c : e.pivot_cols())
    if (c >= dp) diagnose(p, m, budget);
  Mat h(f, dp, dc);
  Mat rr = e.reduced_rows();
  auto piv = e.pivot_cols();
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t c = 0; c < dc; ++c) h.set(piv[r], c, rr.at(r, dp + c));
  CoalgebraMorphism out{m.c, p.p_n, h};
  if (!is_coalgebra_morphism(out) || p.proj * h != m.psi) diagnose(p, m, budget);
  return out;
}

CensusReport adjunction_bijection_census(const Algebra& a, const Algebra& b, const Coalgebra& c,
                                         std::size_t degree, const Budget& budget) {
  const FieldSpec& f = a.field;
  if (!f.is_prime()) throw SchemaError("census requires a prime field");
  const std::size_t dv = a.dim * b.dim;
  if (checked_pow(f.p, c.dim * dv, budget.enumeration) > budget.enumeration)
    throw BudgetExceeded("census over " + std::to_string(f.p) + "^" + std::to_string(c.dim * dv) + " maps");
  TruncatedMeasuringComonoid p = measuring_comonoid_truncated(a, b, degree, {}, budget);
  CensusReport rep;
  rep.degree = degree;
  rep.p_dim = p.p_n.dim;
  if (checked_pow(f.p, c.dim * rep.p_dim, budget.enumeration) > budget.enumeration)
    throw BudgetExceeded("coalgebra map enumeration into P_n");
  std::set<std::string> images;
  modcomod::for_each_matrix(f, dv, c.dim, [&](const Mat& psi) {
    MeasuringMap m{c, a, b, psi};
    if (!verify_measuring(m)) return true;
    ++rep.measurings;
    CoalgebraMorphism h = couniversal_factor(p, m, budget);
    rep.round_trip = rep.round_trip && p.proj * h.matrix == psi;
    images.insert(h.matrix.to_string());
    return true;
  });
  rep.injective = images.size() == rep.measurings;
  modcomod::for_each_matrix(f, rep.p_dim, c.dim, [&](const Mat& g) {
    CoalgebraMorphism h{c, p.p_n, g};
    if (!is_coalgebra_morphism(h)) return true;
    ++rep.coalgebra_maps;
    MeasuringMap m{c, a, b, p.proj * g};
    if (!verify_measuring(m) || couniversal_factor(p, m, budget).matrix != g) rep.surjective = false;
    return true;
  });
  return rep;
}

// ---------------------------------------------------------------- Q_n

ModuleMeasuringMap TruncatedMeasuringComodule::canonical() const {
  return {p.canonical_measuring, q_n, m, n, proj};
}

TruncatedMeasuringComodule measuring_comodule_truncated(const ModuleStructure& m, const ModuleStructure& n,
                                                        const TruncatedMeasuringComonoid& p) {
  return measuring_comodule_truncated(m, n, p, Mat(m.over.field, 0, m.dim * n.dim * p.p_n.dim));
}

TruncatedMeasuringComodule measuring_comodule_truncated(const ModuleStructure& m, const ModuleStructure& n,
                                                        const TruncatedMeasuringComonoid& p,
                                                        const Mat& extra) {
  if (!(m.over == p.a) || !(n.over == p.b)) throw SchemaError("modules must be over the algebras of P_n");
  const FieldSpec& f = m.over.field;
  const std::size_t dm = m.dim, dn = n.dim, dp = p.p_n.dim, da = p.a.dim, db = p.b.dim;
  const std::size_t dh = dm * dn, dx = dh * dp;
  ComoduleStructure cof = modcomod::cofree_comodule(dh, p.p_n);
  auto table = hom_table(p.proj, da, db);
  Mat defects(f, da * dm * dn + extra.rows(), dx);
  for (std::size_t hm = 0; hm < dm; ++hm)
    for (std::size_t hn = 0; hn < dn; ++hn)
      for (std::size_t s = 0; s < dp; ++s) {
        const std::size_t col = (hm * dn + hn) * dp + s;
        const Scalar eps = p.p_n.counit.at(0, s);
        for (std::size_t a = 0; a < da; ++a) {
          Vec bn = act(n, table[s][a], unit_vec(dn, hn));
          for (std::size_t x = 0; x < dm; ++x) {
            const Scalar am = m.action.at(hm, a * dm + x);
            for (std::size_t k = 0; k < dn; ++k) {
              Scalar v = (k == hn ? eps * am : Scalar(0)) - (x == hm ? bn[k] : Scalar(0));
              defects.set((a * dm + x) * dn + k, col, f.reduce(v));
            }
          }
        }
      }
  for (std::size_t r = 0; r < extra.rows(); ++r)
    for (std::size_t c = 0; c < dx; ++c) defects.set(da * dm * dn + r, c, extra.at(r, c));
  Subspace w = exactlin::kernel(defects);
  Subspace d = subcomodule_fixpoint(cof, w);
  TruncatedMeasuringComodule q;
  q.p = p;
  q.m = m;
  q.n = n;
  q.q_n = restrict_comodule(cof, d);
  q.q_n.name = "Q" + std::to_string(p.degree) + "(" + m.name + "," + n.name + ")";
  q.embedding = d.basis();
  Mat cproj(f, dh, dx);
  for (std::size_t h = 0; h < dh; ++h)
    for (std::size_t s = 0; s < dp; ++s) cproj.set(h, h * dp + s, p.p_n.counit.at(0, s));
  q.proj = cproj * d.basis().transpose();
  if (!verify_module_measuring(q.canonical())) throw std::logic_error("canonical module measuring fails");
  return q;
}

Verdict module_measuring_identity(const ModuleMeasuringMap& r) {
  const ModuleStructure &m = r.m, &n = r.n;
  const ComoduleStructure& x = r.x;
  const FieldSpec& f = m.over.field;
  const std::size_t dm = m.dim, dn = n.dim, dc = x.over.dim, da = m.over.dim;
  if (r.rho.rows() != dm * dn || r.rho.cols() != x.dim) throw DimMismatch("rho must be (dimM*dimN) x dimX");
  if (!(x.over == r.underlying.c)) throw SchemaError("comodule is not over the measuring coalgebra");
  auto psi = hom_table(r.underlying.psi, da, n.over.dim);
  auto rho = hom_table(r.rho, dm, dn);
  for (std::size_t xi = 0; xi < x.dim; ++xi) {
    auto d = x.coaction.col_nz(xi);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t mi = 0; mi < dm; ++mi) {
        Vec lhs = apply_hom(rho[xi], m.action.col(a * dm + mi), f);
        Vec rhs(dn);
        for (auto& [key, y] : d) {
          Vec t = act(n, psi[key % dc][a], rho[key / dc][mi]);
          for (std::size_t k = 0; k < dn; ++k) rhs[k] = f.reduce(rhs[k] + y * t[k]);
        }
        if (lhs != rhs)
          return Verdict::fail("rho(x" + std::to_string(xi) + ")(a" + std::to_string(a) + ".m" + std::to_string(mi) +
                               ") != sum psi(x_1)(a) rho(x_0)(m)");
      }
  }
  return Verdict::pass();
}

Verdict module_measuring_via_adjunct(const ModuleMeasuringMap& r) {
  const std::size_t dm = r.m.dim, dn = r.n.dim;
  Mat adj_rho(r.m.over.field, r.x.dim * dn, dm);
  for (std::size_t xi = 0; xi < r.x.dim; ++xi)
    for (auto& [mn, y] : r.rho.col_nz(xi)) adj_rho.set(xi * dn + mn % dn, mn / dn, y);
  ModuleStructure h = modcomod::hom_module(r.x, r.n);
  Mat lhs = adj_rho * r.m.action;
  Mat rhs = h.action * tensor(measuring_adjunct(r.underlying), adj_rho);
  if (lhs != rhs) return Verdict::fail("adjunct M -> Hom(X,N) is not equivariant");
  return Verdict::pass();
}

Verdict verify_module_measuring(const ModuleMeasuringMap& r) {
  Verdict direct = module_measuring_identity(r);
  Verdict adjunct = module_measuring_via_adjunct(r);
  if (direct.ok != adjunct.ok) throw std::logic_error("module measuring routes disagree");
  return direct;
}

GlobalComodMorphism comodule_couniversal_factor(const TruncatedMeasuringComodule& q, const ModuleMeasuringMap& r,
                                                const Budget& budget) {
  if (!verify_module_measuring(r)) throw NotMeasuring(module_measuring_identity(r).failure);
  CoalgebraMorphism h = couniversal_factor(q.p, r.underlying, budget);
  const FieldSpec& f = r.m.over.field;
  const std::size_t dp = q.p.p_n.dim, dc = r.x.over.dim, dh = r.m.dim * r.n.dim;
  // x |-> sum rho(x_0) (x) h(x_1)
  Mat lift(f, dh * dp, r.x.dim);
  for (std::size_t xi = 0; xi < r.x.dim; ++xi)
    for (auto& [key, y] : r.x.coaction.col_nz(xi)) {
      const std::size_t x0 = key / dc, c = key % dc;
      for (auto& [hv, z] : r.rho.col_nz(x0))
        for (auto& [s, w] : h.matrix.col_nz(c)) lift.add_to(hv * dp + s, xi, y * z * w);
    }
  Subspace qs = Subspace::span(q.embedding);
  Mat k(f, q.q_n.dim, r.x.dim);
  for (std::size_t xi = 0; xi < r.x.dim; ++xi) {
    Vec v = lift.col(xi);
    if (!qs.contains(v))
      throw ImageEscapesTruncation("image of x" + std::to_string(xi) + " leaves " + q.q_n.name);
    Vec co = qs.coords(v);
    for (std::size_t s = 0; s < co.size(); ++s) k.set(s, xi, co[s]);
  }
  GlobalComodMorphism out{h, r.x, q.q_n, k};
  if (!modcomod::check_global_morphism(out) || q.proj * k != r.rho)
    throw std::logic_error("comodule couniversal factor failed its own check");
  return out;
}

// ---------------------------------------------------------------- the comodule isomorphism

namespace {

struct IsoAttempt {
  bool ok = false;
  std::size_t lhs = 0, rhs = 0;
  Mat k;
  std::string detail;
};

IsoAttempt iso_at(const Algebra& a, const Algebra& b, std::size_t dv, const ModuleStructure& n, std::size_t degree,
                  const std::vector<Mat>& hints, const Budget& budget) {
  const FieldSpec& f = a.field;
  const std::size_t da = a.dim, dn = n.dim;
  TruncatedMeasuringComonoid p = measuring_comonoid_truncated(a, b, degree, hints, budget);
  ModuleStructure m = modcomod::tensor_modules(modcomod::regular_module(a), modcomod::trivial_module(f, dv));
  m.over = a;
  m.name = a.name + "(x)k" + std::to_string(dv);
  TruncatedMeasuringComodule q = measuring_comodule_truncated(m, n, p);
  const std::size_t dp = p.p_n.dim, dh = dv * dn;
  ComoduleStructure x = modcomod::cofree_comodule(dh, p.p_n);
  // rho(f(x)s)(a(x)v) = psi(s)(a) . f(v)
  auto psi = hom_table(p.proj, da, b.dim);
  Mat rho(f, da * dv * dn, dh * dp);
  for (std::size_t v = 0; v < dv; ++v)
    for (std::size_t nn = 0; nn < dn; ++nn)
      for (std::size_t s = 0; s < dp; ++s)
        for (std::size_t ai = 0; ai < da; ++ai) {
          Vec out = act(n, psi[s][ai], unit_vec(dn, nn));
          for (std::size_t k = 0; k < dn; ++k)
            rho.set((ai * dv + v) * dn + k, (v * dn + nn) * dp + s, out[k]);
        }
  IsoAttempt at;
  at.lhs = x.dim;
  at.rhs = q.q_n.dim;
  ModuleMeasuringMap r{p.canonical_measuring, x, m, n, rho};
  if (!verify_module_measuring(r)) {
    at.detail = "evident map is not a module measuring";
    return at;
  }
  GlobalComodMorphism k = comodule_couniversal_factor(q, r, budget);
  at.k = k.k;
  Mat inv;
  if (x.dim != q.q_n.dim || !exactlin::invert(k.k, inv)) {
    at.detail = "comparison map is not invertible";
    return at;
  }
  GlobalComodMorphism back{algcore::identity_morphism(p.p_n), q.q_n, x, inv};
  at.ok = k.g.matrix == Mat::identity(f, dp) && static_cast<bool>(modcomod::check_global_morphism(back));
  if (!at.ok) at.detail = "inverse is not a comodule map";
  return at;
}

}  // namespace

IsoComodReport check_isocomod(const Algebra& a, const Algebra& b, std::size_t v_dim, const ModuleStructure& n,
                              std::size_t degree, const std::vector<Mat>& hints, const Budget& budget) {
  IsoComodReport rep;
  rep.degree = degree;
  IsoAttempt top = iso_at(a, b, v_dim, n, degree, hints, budget);
  rep.ok = top.ok;
  rep.lhs_dim = top.lhs;
  rep.rhs_dim = top.rhs;
  rep.comparison = top.k;
  rep.detail = top.detail;
  if (rep.ok) {
    std::size_t first = degree;
    for (std::size_t d = degree; d-- > 0;) {
      IsoAttempt lo = iso_at(a, b, v_dim, n, d, hints, budget);
      if (!lo.ok || lo.lhs != top.lhs || lo.rhs != top.rhs) break;
      first = d;
    }
    rep.stabilized_at = first;
  }
  return rep;
}

// ---------------------------------------------------------------- monotonicity

namespace {

Mat pad_cols(const Mat& m, std::size_t cols) {
  Mat out(m.field(), m.rows(), cols);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (auto& [j, x] : m.row_nz(i)) out.set(i, j, x);
  return out;
}

/// Rows of q's basis inside Hom(M,N) (x) T_hi.
Mat q_in_cofree(const TruncatedMeasuringComodule& q, std::size_t t_dim) {
  const std::size_t dh = q.m.dim * q.n.dim, dp = q.p.p_n.dim;
  Mat e = pad_cols(q.p.embedding, t_dim);
  Mat out(q.embedding.field(), q.embedding.rows(), dh * t_dim);
  for (std::size_t r = 0; r < q.embedding.rows(); ++r)
    for (auto& [hs, x] : q.embedding.row_nz(r))
      for (auto& [t, y] : e.row_nz(hs % dp)) out.add_to(r, (hs / dp) * t_dim + t, x * y);
  return out;
}

}  // namespace

bool truncation_contains(const TruncatedMeasuringComonoid& lo, const TruncatedMeasuringComonoid& hi) {
  if (lo.cofree_dim > hi.cofree_dim || !(lo.a == hi.a) || !(lo.b == hi.b)) return false;
  Mat e = pad_cols(lo.embedding, hi.cofree_dim);
  if (!Subspace::span(hi.embedding).contains(Subspace::span(e))) return false;
  return hi.cofree_proj * e.transpose() == lo.proj;
}

bool truncation_contains(const TruncatedMeasuringComodule& lo, const TruncatedMeasuringComodule& hi) {
  if (!truncation_contains(lo.p, hi.p)) return false;
  const std::size_t t = hi.p.cofree_dim, dh = lo.m.dim * lo.n.dim;
  Mat l = q_in_cofree(lo, t), h = q_in_cofree(hi, t);
  if (!Subspace::span(h).contains(Subspace::span(l))) return false;
  Mat cproj(l.field(), dh, dh * t);
  for (std::size_t x = 0; x < dh; ++x)
    for (std::size_t s = 0; s < t; ++s) cproj.set(x, x * t + s, hi.p.cofree_counit.at(0, s));
  return cproj * l.transpose() == lo.proj && cproj * h.transpose() == hi.proj;
}

}  // namespace mlab::measuring
