#include "mlab/algcore.hpp"

#include <map>

namespace mlab::algcore {

using exactlin::require_same_field;

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

AssociativityFailure::AssociativityFailure(std::size_t i_, std::size_t j_, std::size_t k_)
    : CheckFailure("AssociativityFailure", "(e" + std::to_string(i_) + "e" + std::to_string(j_) +
                                               ")e" + std::to_string(k_) + " != e" +
                                               std::to_string(i_) + "(e" + std::to_string(j_) +
                                               "e" + std::to_string(k_) + ")"),
      i(i_), j(j_), k(k_) {}

UnitFailure::UnitFailure(std::string side_, std::size_t i_)
    : CheckFailure("UnitFailure", side_ + " unit law fails at e" + std::to_string(i_)),
      side(std::move(side_)), i(i_) {}

CoassociativityFailure::CoassociativityFailure(std::size_t i_)
    : CheckFailure("CoassociativityFailure", "coassociativity fails at e" + std::to_string(i_)),
      i(i_) {}

CounitFailure::CounitFailure(std::string side_, std::size_t i_)
    : CheckFailure("CounitFailure", side_ + " counit law fails at e" + std::to_string(i_)),
      side(std::move(side_)), i(i_) {}

std::vector<std::string> default_labels(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

void check_shapes(const Algebra& a) {
  const std::size_t n = a.dim;
  if (n == 0) throw SchemaError("algebra of dimension 0");
  if (a.mult.rows() != n || a.mult.cols() != n * n)
    throw DimMismatch("multiplication must be " + std::to_string(n) + "x" + std::to_string(n * n));
  if (a.unit.rows() != n || a.unit.cols() != 1) throw DimMismatch("unit must be a column");
  if (!(a.mult.field() == a.field) || !(a.unit.field() == a.field))
    throw FieldMismatch("algebra tensors over another field");
  if (!a.basis_labels.empty() && a.basis_labels.size() != n)
    throw DimMismatch("basis label count");
}

void check_shapes(const Coalgebra& c) {
  const std::size_t n = c.dim;
  if (n == 0) throw SchemaError("coalgebra of dimension 0");
  if (c.comult.rows() != n * n || c.comult.cols() != n)
    throw DimMismatch("comultiplication must be " + std::to_string(n * n) + "x" + std::to_string(n));
  if (c.counit.rows() != 1 || c.counit.cols() != n) throw DimMismatch("counit must be a row");
  if (!(c.comult.field() == c.field) || !(c.counit.field() == c.field))
    throw FieldMismatch("coalgebra tensors over another field");
  if (!c.basis_labels.empty() && c.basis_labels.size() != n)
    throw DimMismatch("basis label count");
}

namespace {

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

void axpy(const FieldSpec& f, Vec& y, const Scalar& a, const Vec& x) {
  if (sgn(a) == 0) return;
  for (std::size_t t = 0; t < x.size(); ++t)
    if (sgn(x[t]) != 0) y[t] = f.reduce(y[t] + a * x[t]);
}

// First failure, or empty string.
std::string algebra_failure(const Algebra& a, std::size_t* idx, std::string* side) {
  const std::size_t n = a.dim;
  const FieldSpec& f = a.field;
  std::vector<Vec> prod(n * n);
  for (std::size_t i = 0; i < n * n; ++i) prod[i] = a.mult.col(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec left(n), right(n);
        const Vec& ij = prod[i * n + j];
        const Vec& jk = prod[j * n + k];
        for (std::size_t s = 0; s < n; ++s) {
          axpy(f, left, ij[s], prod[s * n + k]);
          axpy(f, right, jk[s], prod[i * n + s]);
        }
        if (left != right) {
          idx[0] = i, idx[1] = j, idx[2] = k;
          return "assoc";
        }
      }
  Vec eta = a.unit.col(0);
  for (std::size_t i = 0; i < n; ++i) {
    Vec left(n), right(n);
    for (std::size_t s = 0; s < n; ++s) {
      axpy(f, left, eta[s], prod[s * n + i]);
      axpy(f, right, eta[s], prod[i * n + s]);
    }
    if (left != unit_vec(n, i)) {
      *side = "left";
      idx[0] = i;
      return "unit";
    }
    if (right != unit_vec(n, i)) {
      *side = "right";
      idx[0] = i;
      return "unit";
    }
  }
  return {};
}

std::string coalgebra_failure(const Coalgebra& c, std::size_t* idx, std::string* side) {
  const std::size_t n = c.dim;
  const FieldSpec& f = c.field;
  std::vector<SparseVec> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = c.comult.col_nz(i);
  for (std::size_t i = 0; i < n; ++i) {
    std::map<std::size_t, Scalar> left, right;
    for (auto& [jk, x] : d[i]) {
      const std::size_t j = jk / n, k = jk % n;
      for (auto& [ab, y] : d[j]) left[ab * n + k] += x * y;
      for (auto& [ab, y] : d[k]) right[j * n * n + ab] += x * y;
    }
    auto clean = [&](std::map<std::size_t, Scalar>& m) {
      for (auto it = m.begin(); it != m.end();) {
        it->second = f.reduce(it->second);
        it = sgn(it->second) == 0 ? m.erase(it) : std::next(it);
      }
    };
    clean(left);
    clean(right);
    if (left != right) {
      idx[0] = i;
      return "coassoc";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec left(n), right(n);
    for (auto& [jk, x] : d[i]) {
      const std::size_t j = jk / n, k = jk % n;
      left[k] = f.reduce(left[k] + c.counit.at(0, j) * x);
      right[j] = f.reduce(right[j] + c.counit.at(0, k) * x);
    }
    if (left != unit_vec(n, i)) {
      *side = "left";
      idx[0] = i;
      return "counit";
    }
    if (right != unit_vec(n, i)) {
      *side = "right";
      idx[0] = i;
      return "counit";
    }
  }
  return {};
}

}  // namespace

Verdict algebra_axioms(const Algebra& a) {
  try {
    check_algebra(a);
  } catch (const Error& e) {
    return Verdict::fail(e.what());
  }
  return Verdict::pass();
}

Verdict coalgebra_axioms(const Coalgebra& c) {
  try {
    check_coalgebra(c);
  } catch (const Error& e) {
    return Verdict::fail(e.what());
  }
  return Verdict::pass();
}

Algebra check_algebra(Algebra raw) {
  check_shapes(raw);
  std::size_t idx[3] = {0, 0, 0};
  std::string side;
  std::string why = algebra_failure(raw, idx, &side);
  if (why == "assoc") throw AssociativityFailure(idx[0], idx[1], idx[2]);
  if (why == "unit") throw UnitFailure(side, idx[0]);
  if (raw.basis_labels.empty()) raw.basis_labels = default_labels("e", raw.dim);
  raw.validated = true;
  return raw;
}

Coalgebra check_coalgebra(Coalgebra raw) {
  check_shapes(raw);
  std::size_t idx[1] = {0};
  std::string side;
  std::string why = coalgebra_failure(raw, idx, &side);
  if (why == "coassoc") throw CoassociativityFailure(idx[0]);
  if (why == "counit") throw CounitFailure(side, idx[0]);
  if (raw.basis_labels.empty()) raw.basis_labels = default_labels("c", raw.dim);
  raw.validated = true;
  return raw;
}

void require_valid(const Algebra& a, const char* where) {
  if (!a.validated) throw SchemaError(std::string(where) + ": algebra '" + a.name + "' not validated");
}

void require_valid(const Coalgebra& c, const char* where) {
  if (!c.validated)
    throw SchemaError(std::string(where) + ": coalgebra '" + c.name + "' not validated");
}

namespace {

std::vector<std::string> star_labels(const std::vector<std::string>& l) {
  std::vector<std::string> out;
  for (auto& s : l) out.push_back(s + "*");
  return out;
}

std::vector<std::string> pair_labels(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b, const char* sep) {
  std::vector<std::string> out;
  for (auto& x : a)
    for (auto& y : b) out.push_back(x + sep + y);
  return out;
}

}  // namespace

Coalgebra dual_coalgebra(const Algebra& a) {
  require_valid(a, "dual_coalgebra");
  Coalgebra c{a.name + "*", a.field, a.dim, star_labels(a.basis_labels), a.mult.transpose(),
              a.unit.transpose()};
  return check_coalgebra(std::move(c));
}

Algebra dual_algebra(const Coalgebra& c) {
  require_valid(c, "dual_algebra");
  Algebra a{c.name + "*", c.field, c.dim, star_labels(c.basis_labels), c.comult.transpose(),
            c.counit.transpose()};
  return check_algebra(std::move(a));
}

Algebra convolution_algebra(const Coalgebra& c, const Algebra& a) {
  require_same_field(c.field, a.field, "convolution_algebra");
  require_valid(c, "convolution_algebra");
  require_valid(a, "convolution_algebra");
  const std::size_t dc = c.dim, da = a.dim, n = dc * da;
  const FieldSpec& f = a.field;
  Mat mult(f, n, n * n);
  // (e_ij * e_kl)(c_r) = sum Delta[(i,k),r] a_j a_l
  for (std::size_t r = 0; r < dc; ++r)
    for (auto& [ik, x] : c.comult.col_nz(r)) {
      const std::size_t i = ik / dc, k = ik % dc;
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t l = 0; l < da; ++l) {
          const std::size_t col = (i * da + j) * n + (k * da + l);
          for (auto& [s, y] : a.mult.col_nz(j * da + l)) mult.add_to(r * da + s, col, x * y);
        }
    }
  Mat unit(f, n, 1);
  for (std::size_t r = 0; r < dc; ++r)
    for (std::size_t s = 0; s < da; ++s) unit.set(r * da + s, 0, c.counit.at(0, r) * a.unit.at(s, 0));
  Algebra out{"[" + c.name + "," + a.name + "]", f, n,
              pair_labels(c.basis_labels, a.basis_labels, "->"), mult, unit};
  return check_algebra(std::move(out));
}

Algebra tensor_algebras(const Algebra& a, const Algebra& b) {
  require_same_field(a.field, b.field, "tensor_algebras");
  require_valid(a, "tensor_algebras");
  require_valid(b, "tensor_algebras");
  const FieldSpec& f = a.field;
  Mat mid = exactlin::permute_factors(f, {a.dim, b.dim, a.dim, b.dim}, {0, 2, 1, 3});
  Mat mult = exactlin::tensor(a.mult, b.mult) * mid;
  Mat unit = exactlin::tensor(a.unit, b.unit);
  Algebra out{a.name + "(x)" + b.name, f, a.dim * b.dim,
              pair_labels(a.basis_labels, b.basis_labels, "(x)"), mult, unit};
  return check_algebra(std::move(out));
}

Coalgebra tensor_coalgebras(const Coalgebra& c, const Coalgebra& d) {
  require_same_field(c.field, d.field, "tensor_coalgebras");
  require_valid(c, "tensor_coalgebras");
  require_valid(d, "tensor_coalgebras");
  const FieldSpec& f = c.field;
  Mat mid = exactlin::permute_factors(f, {c.dim, c.dim, d.dim, d.dim}, {0, 2, 1, 3});
  Mat comult = mid * exactlin::tensor(c.comult, d.comult);
  Mat counit = exactlin::tensor(c.counit, d.counit);
  Coalgebra out{c.name + "(x)" + d.name, f, c.dim * d.dim,
                pair_labels(c.basis_labels, d.basis_labels, "(x)"), comult, counit};
  return check_coalgebra(std::move(out));
}

Coalgebra coopposite(const Coalgebra& c) {
  Coalgebra out = c;
  out.name = c.name + "^cop";
  out.comult = exactlin::swap_map(c.field, c.dim, c.dim) * c.comult;
  out.validated = false;
  return check_coalgebra(std::move(out));
}

Algebra opposite(const Algebra& a) {
  Algebra out = a;
  out.name = a.name + "^op";
  out.mult = a.mult * exactlin::swap_map(a.field, a.dim, a.dim);
  out.validated = false;
  return check_algebra(std::move(out));
}

Verdict is_algebra_morphism(const AlgebraMorphism& f) {
  const Mat& F = f.matrix;
  if (F.rows() != f.target.dim || F.cols() != f.source.dim)
    throw DimMismatch("algebra morphism matrix shape");
  require_same_field(f.source.field, f.target.field, "is_algebra_morphism");
  Mat lhs = F * f.source.mult;
  Mat rhs = f.target.mult * exactlin::tensor(F, F);
  if (lhs != rhs) {
    auto [r, c] = lhs.first_difference(rhs);
    const std::size_t n = f.source.dim;
    return Verdict::fail("multiplicativity f(e" + std::to_string(c / n) + "e" +
                         std::to_string(c % n) + ") at coordinate " + std::to_string(r));
  }
  if (F * f.source.unit != f.target.unit) return Verdict::fail("unit: f(1) != 1");
  return Verdict::pass();
}

Verdict is_coalgebra_morphism(const CoalgebraMorphism& g) {
  const Mat& G = g.matrix;
  if (G.rows() != g.target.dim || G.cols() != g.source.dim)
    throw DimMismatch("coalgebra morphism matrix shape");
  require_same_field(g.source.field, g.target.field, "is_coalgebra_morphism");
  // (G(x)G) Delta_src, column by column to stay sparse.
  const std::size_t nt = g.target.dim;
  for (std::size_t i = 0; i < g.source.dim; ++i) {
    Vec lhs(nt * nt), rhs(nt * nt);
    for (auto& [jk, x] : g.source.comult.col_nz(i)) {
      const std::size_t j = jk / g.source.dim, k = jk % g.source.dim;
      for (auto& [a, ya] : G.col_nz(j))
        for (auto& [b, yb] : G.col_nz(k)) lhs[a * nt + b] += x * ya * yb;
    }
    for (auto& [j, x] : G.col_nz(i))
      for (auto& [ab, y] : g.target.comult.col_nz(j)) rhs[ab] += x * y;
    for (auto& v : lhs) v = g.source.field.reduce(v);
    for (auto& v : rhs) v = g.source.field.reduce(v);
    if (lhs != rhs)
      return Verdict::fail("comultiplicativity (g(x)g)Delta != Delta g at e" + std::to_string(i));
  }
  if (g.target.counit * G != g.source.counit) return Verdict::fail("counit: eps g != eps");
  return Verdict::pass();
}

bool is_commutative(const Algebra& a) {
  return a.mult * exactlin::swap_map(a.field, a.dim, a.dim) == a.mult;
}

bool is_cocommutative(const Coalgebra& c) {
  return exactlin::swap_map(c.field, c.dim, c.dim) * c.comult == c.comult;
}

std::vector<std::pair<std::size_t, Scalar>> comult_apply(const Coalgebra& c, const Vec& v) {
  std::map<std::size_t, Scalar> acc;
  for (std::size_t i = 0; i < c.dim; ++i) {
    if (sgn(v[i]) == 0) continue;
    for (auto& [jk, x] : c.comult.col_nz(i)) acc[jk] += v[i] * x;
  }
  SparseVec out;
  for (auto& [k, x] : acc) {
    Scalar y = c.field.reduce(x);
    if (sgn(y) != 0) out.emplace_back(k, y);
  }
  return out;
}

// ---------------------------------------------------------------- standard structures

Algebra ground_algebra(FieldSpec f) {
  return check_algebra({"k", f, 1, {"1"}, Mat::identity(f, 1), Mat::identity(f, 1)});
}

Coalgebra ground_coalgebra(FieldSpec f) {
  return check_coalgebra({"k", f, 1, {"1"}, Mat::identity(f, 1), Mat::identity(f, 1)});
}

Algebra truncated_polynomial(FieldSpec f, std::size_t n) {
  Mat mult(f, n, n * n), unit(f, n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) mult.set(i + j, i * n + j, 1);
  unit.set(0, 0, 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  return check_algebra({"k[x]/(x^" + std::to_string(n) + ")", f, n, labels, mult, unit});
}

Algebra group_algebra_cyclic(FieldSpec f, std::size_t n) {
  Mat mult(f, n, n * n), unit(f, n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mult.set((i + j) % n, i * n + j, 1);
  unit.set(0, 0, 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : "g^" + std::to_string(i));
  return check_algebra({"k[C" + std::to_string(n) + "]", f, n, labels, mult, unit});
}

Algebra diagonal_algebra(FieldSpec f, std::size_t n) {
  Mat mult(f, n, n * n), unit(f, n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    mult.set(i, i * n + i, 1);
    unit.set(i, 0, 1);
  }
  return check_algebra({"k^" + std::to_string(n), f, n, default_labels("p", n), mult, unit});
}

Algebra matrix_algebra(FieldSpec f, std::size_t n) {
  const std::size_t d = n * n;
  Mat mult(f, d, d * d), unit(f, d, 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back("e" + std::to_string(i) + std::to_string(j));
      for (std::size_t l = 0; l < n; ++l) mult.set(i * n + l, (i * n + j) * d + (j * n + l), 1);
    }
  for (std::size_t i = 0; i < n; ++i) unit.set(i * n + i, 0, 1);
  return check_algebra({"M" + std::to_string(n), f, d, labels, mult, unit});
}

Coalgebra matrix_coalgebra(FieldSpec f, std::size_t n) {
  const std::size_t d = n * n;
  Mat comult(f, d * d, d), counit(f, 1, d);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back("e" + std::to_string(i) + std::to_string(j));
      for (std::size_t k = 0; k < n; ++k) comult.set((i * n + k) * d + (k * n + j), i * n + j, 1);
      if (i == j) counit.set(0, i * n + j, 1);
    }
  return check_coalgebra({"M" + std::to_string(n) + "*", f, d, labels, comult, counit});
}

Coalgebra divided_power_coalgebra(FieldSpec f, std::size_t n) {
  Mat comult(f, n * n, n), counit(f, 1, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i <= k; ++i) comult.set(i * n + (k - i), k, 1);
  counit.set(0, 0, 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : "x" + std::to_string(i));
  return check_coalgebra({"D" + std::to_string(n), f, n, labels, comult, counit});
}

Coalgebra grouplike_coalgebra(FieldSpec f, std::size_t n) {
  Mat comult(f, n * n, n), counit(f, 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    comult.set(i * n + i, i, 1);
    counit.set(0, i, 1);
  }
  return check_coalgebra({"kG" + std::to_string(n), f, n, default_labels("g", n), comult, counit});
}

Coalgebra group_coalgebra_cyclic(FieldSpec f, std::size_t n) {
  Coalgebra c = grouplike_coalgebra(f, n);
  c.name = "k[C" + std::to_string(n) + "]";
  c.basis_labels.clear();
  for (std::size_t i = 0; i < n; ++i) c.basis_labels.push_back(i == 0 ? "1" : "g^" + std::to_string(i));
  return c;
}

AlgebraMorphism identity_morphism(const Algebra& a) {
  return {a, a, Mat::identity(a.field, a.dim)};
}

CoalgebraMorphism identity_morphism(const Coalgebra& c) {
  return {c, c, Mat::identity(c.field, c.dim)};
}

AlgebraMorphism unit_morphism(const Algebra& a) {
  return {ground_algebra(a.field), a, a.unit};
}

CoalgebraMorphism counit_morphism(const Coalgebra& c) {
  return {c, ground_coalgebra(c.field), c.counit};
}

}  // namespace mlab::algcore
