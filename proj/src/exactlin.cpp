#include "mlab/exactlin.hpp"

#include <algorithm>
#include <sstream>
#include <variant>

namespace mlab::exactlin {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime_number(p)) throw SchemaError("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1ULL << 31)) throw SchemaError("modulus too large");
  return {FieldKind::PrimeField, p};
}

Scalar FieldSpec::reduce(const Scalar& x) const {
  if (!is_prime()) {
    Scalar y = x;
    y.canonicalize();
    return y;
  }
  mpz_class P(static_cast<unsigned long>(p));
  mpz_class n = x.get_num() % P;
  if (n < 0) n += P;
  mpz_class d = x.get_den() % P;
  if (d == 0) throw Error("DivisionByZero", "denominator divisible by p");
  if (d != 1) {
    mpz_class di;
    mpz_invert(di.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
    n = (n * di) % P;
  }
  return Scalar(n);
}

Scalar FieldSpec::inv(const Scalar& x) const {
  if (x == 0) throw Error("DivisionByZero", "inverse of zero");
  if (!is_prime()) return Scalar(1) / x;
  mpz_class P(static_cast<unsigned long>(p)), r;
  mpz_class n = x.get_num();
  mpz_invert(r.get_mpz_t(), n.get_mpz_t(), P.get_mpz_t());
  return Scalar(r);
}

Scalar FieldSpec::parse(const std::string& s) const {
  Scalar q;
  std::string t;
  for (char ch : s)
    if (ch != ' ') t.push_back(ch);
  if (t.empty() || q.set_str(t, 10) != 0) throw ParseError("bad scalar '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  return reduce(q);
}

std::string FieldSpec::format(const Scalar& x) const { return x.get_str(); }

std::string FieldSpec::name() const {
  return is_prime() ? "F" + std::to_string(p) : std::string("Q");
}

FieldSpec FieldSpec::from_name(const std::string& s) {
  if (s == "Q" || s == "QQ" || s == "rationals") return rationals();
  std::string t = s;
  if (!t.empty() && (t[0] == 'F' || t[0] == 'f')) t = t.substr(1);
  if (t.rfind("_", 0) == 0) t = t.substr(1);
  try {
    std::size_t used = 0;
    unsigned long long p = std::stoull(t, &used);
    if (used != t.size()) throw ParseError("bad field '" + s + "'");
    return prime(p);
  } catch (const std::logic_error&) {
    throw ParseError("bad field '" + s + "'");
  }
}

void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* where) {
  if (!(a == b)) throw FieldMismatch(std::string(where) + ": " + a.name() + " vs " + b.name());
}

// ---------------------------------------------------------------- Mat

Mat::Mat(FieldSpec f, std::size_t rows, std::size_t cols)
    : f_(f), r_(rows), c_(cols), a_(rows * cols) {}

Mat Mat::identity(FieldSpec f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

Mat Mat::from_rows(FieldSpec f, const std::vector<Vec>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  Mat m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DimMismatch("ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Mat Mat::from_ints(FieldSpec f, const std::vector<std::vector<long>>& rows) {
  std::vector<Vec> v;
  for (auto& r : rows) {
    Vec x;
    for (long e : r) x.emplace_back(e);
    v.push_back(std::move(x));
  }
  return from_rows(f, v);
}

Mat Mat::column(FieldSpec f, const Vec& v) {
  Mat m(f, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

Mat Mat::row_vector(FieldSpec f, const Vec& v) {
  Mat m(f, 1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m.set(0, i, v[i]);
  return m;
}

void Mat::set(std::size_t i, std::size_t j, const Scalar& v) { a_[i * c_ + j] = f_.reduce(v); }

void Mat::add_to(std::size_t i, std::size_t j, const Scalar& v) {
  Scalar& e = a_[i * c_ + j];
  e = f_.reduce(e + v);
}

Vec Mat::row(std::size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vec Mat::col(std::size_t j) const {
  Vec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = a_[i * c_ + j];
  return v;
}

std::vector<std::pair<std::size_t, Scalar>> Mat::col_nz(std::size_t j) const {
  std::vector<std::pair<std::size_t, Scalar>> out;
  for (std::size_t i = 0; i < r_; ++i)
    if (sgn(a_[i * c_ + j]) != 0) out.emplace_back(i, a_[i * c_ + j]);
  return out;
}

std::vector<std::pair<std::size_t, Scalar>> Mat::row_nz(std::size_t i) const {
  std::vector<std::pair<std::size_t, Scalar>> out;
  for (std::size_t j = 0; j < c_; ++j)
    if (sgn(a_[i * c_ + j]) != 0) out.emplace_back(j, a_[i * c_ + j]);
  return out;
}

namespace {

std::vector<std::uint64_t> to_words(const std::vector<Scalar>& a) {
  std::vector<std::uint64_t> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = a[i].get_num().get_ui();
  return w;
}

}  // namespace

Mat Mat::operator*(const Mat& o) const {
  require_same_field(f_, o.f_, "Mat::operator*");
  if (c_ != o.r_) throw DimMismatch("product " + std::to_string(r_) + "x" + std::to_string(c_) +
                                    " * " + std::to_string(o.r_) + "x" + std::to_string(o.c_));
  Mat out(f_, r_, o.c_);
  if (f_.is_prime()) {
    const std::uint64_t p = f_.p;
    auto A = to_words(a_), B = to_words(o.a_);
    std::vector<std::uint64_t> C(r_ * o.c_, 0);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        std::uint64_t x = A[i * c_ + k];
        if (!x) continue;
        const std::uint64_t* brow = &B[k * o.c_];
        std::uint64_t* crow = &C[i * o.c_];
        for (std::size_t j = 0; j < o.c_; ++j)
          if (brow[j]) crow[j] = (crow[j] + x * brow[j]) % p;
      }
    for (std::size_t i = 0; i < C.size(); ++i)
      if (C[i]) out.a_[i] = static_cast<unsigned long>(C[i]);
    return out;
  }
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Scalar& x = a_[i * c_ + k];
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) {
        const Scalar& y = o.a_[k * o.c_ + j];
        if (sgn(y) != 0) out.a_[i * o.c_ + j] += x * y;
      }
    }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  require_same_field(f_, o.f_, "Mat::operator+");
  if (r_ != o.r_ || c_ != o.c_) throw DimMismatch("sum of differently shaped matrices");
  Mat out(f_, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_.reduce(a_[i] + o.a_[i]);
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  require_same_field(f_, o.f_, "Mat::operator-");
  if (r_ != o.r_ || c_ != o.c_) throw DimMismatch("difference of differently shaped matrices");
  Mat out(f_, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_.reduce(a_[i] - o.a_[i]);
  return out;
}

Mat Mat::scaled(const Scalar& s) const {
  Mat out(f_, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (sgn(a_[i]) != 0) out.a_[i] = f_.reduce(a_[i] * s);
  return out;
}

Mat Mat::transpose() const {
  Mat out(f_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out.a_[j * r_ + i] = a_[i * c_ + j];
  return out;
}

Vec Mat::apply(const Vec& v) const {
  if (v.size() != c_) throw DimMismatch("apply: vector length");
  Vec out(r_);
  for (std::size_t i = 0; i < r_; ++i) {
    Scalar s = 0;
    for (std::size_t j = 0; j < c_; ++j)
      if (sgn(v[j]) != 0 && sgn(a_[i * c_ + j]) != 0) s += a_[i * c_ + j] * v[j];
    out[i] = f_.reduce(s);
  }
  return out;
}

Mat Mat::col_range(std::size_t c0, std::size_t n) const {
  Mat out(f_, r_, n);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < n; ++j) out.a_[i * n + j] = a_[i * c_ + c0 + j];
  return out;
}

Mat Mat::select_cols(const std::vector<std::size_t>& cols) const {
  Mat out(f_, r_, cols.size());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out.a_[i * cols.size() + j] = a_[i * c_ + cols[j]];
  return out;
}

Mat Mat::select_rows(const std::vector<std::size_t>& rows) const {
  Mat out(f_, rows.size(), c_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < c_; ++j) out.a_[i * c_ + j] = a_[rows[i] * c_ + j];
  return out;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

std::size_t Mat::nnz() const {
  return std::count_if(a_.begin(), a_.end(), [](const Scalar& x) { return sgn(x) != 0; });
}

bool Mat::operator==(const Mat& o) const {
  return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

std::pair<long, long> Mat::first_difference(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) return {-2, -2};
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (a_[i * c_ + j] != o.a_[i * c_ + j]) return {static_cast<long>(i), static_cast<long>(j)};
  return {-1, -1};
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << a_[i * c_ + j].get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- echelon engine

namespace {

struct OpsQ {
  using T = mpq_class;
  bool zero(const T& x) const { return sgn(x) == 0; }
  T from(const Scalar& s) const { return s; }
  Scalar to(const T& x) const { return x; }
  T inv(const T& x) const { return T(1) / x; }
  T mul(const T& a, const T& b) const { return a * b; }
  // a -= b*c
  void submul(T& a, const T& b, const T& c) const { a -= b * c; }
  T neg(const T& x) const { return -x; }
};

struct OpsP {
  using T = std::uint64_t;
  std::uint64_t p;
  bool zero(T x) const { return x == 0; }
  T from(const Scalar& s) const { return s.get_num().get_ui() % p; }
  Scalar to(T x) const { return Scalar(static_cast<unsigned long>(x)); }
  T inv(T x) const {
    T r = 1, b = x % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  T mul(T a, T b) const { return a * b % p; }
  void submul(T& a, T b, T c) const { a = (a + p - b * c % p) % p; }
  T neg(T x) const { return x ? p - x : 0; }
};

template <class Ops>
struct EchelonT {
  using T = typename Ops::T;
  Ops ops;
  std::size_t n;
  std::vector<std::vector<T>> rows;   // sorted by pivot
  std::vector<std::size_t> piv;       // pivot column of each row
  std::vector<long> row_of_col;       // -1 if column has no pivot

  EchelonT(Ops o, std::size_t ncols) : ops(o), n(ncols), row_of_col(ncols, -1) {}

  bool insert(std::vector<T> r) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const T c = r[piv[k]];
      if (ops.zero(c)) continue;
      const auto& R = rows[k];
      for (std::size_t j = piv[k]; j < n; ++j)
        if (!ops.zero(R[j])) ops.submul(r[j], c, R[j]);
    }
    std::size_t pc = 0;
    while (pc < n && ops.zero(r[pc])) ++pc;
    if (pc == n) return false;
    const T iv = ops.inv(r[pc]);
    for (std::size_t j = pc; j < n; ++j)
      if (!ops.zero(r[j])) r[j] = ops.mul(r[j], iv);
    for (auto& R : rows) {
      const T c = R[pc];
      if (ops.zero(c)) continue;
      for (std::size_t j = pc; j < n; ++j)
        if (!ops.zero(r[j])) ops.submul(R[j], c, r[j]);
    }
    auto pos = std::lower_bound(piv.begin(), piv.end(), pc) - piv.begin();
    rows.insert(rows.begin() + pos, std::move(r));
    piv.insert(piv.begin() + pos, pc);
    std::fill(row_of_col.begin(), row_of_col.end(), -1);
    for (std::size_t k = 0; k < piv.size(); ++k) row_of_col[piv[k]] = static_cast<long>(k);
    return true;
  }

  bool add(const Vec& v) {
    std::vector<T> r(n);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = ops.from(v[j]);
      any = any || !ops.zero(r[j]);
    }
    return any && insert(std::move(r));
  }

  bool add_sparse(const std::vector<std::pair<std::size_t, Scalar>>& v) {
    if (v.empty()) return false;
    std::vector<T> r(n);
    for (auto& [j, x] : v) r[j] = ops.from(x);
    return insert(std::move(r));
  }

  Mat row_mat(const FieldSpec& f) const {
    Mat m(f, rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!ops.zero(rows[i][j])) m.set(i, j, ops.to(rows[i][j]));
    return m;
  }

  std::vector<Vec> kernel_vecs() const {
    std::vector<Vec> out;
    for (std::size_t fc = 0; fc < n; ++fc) {
      if (row_of_col[fc] >= 0) continue;
      Vec v(n);
      v[fc] = 1;
      for (std::size_t k = 0; k < rows.size(); ++k)
        if (!ops.zero(rows[k][fc])) v[piv[k]] = ops.to(ops.neg(rows[k][fc]));
      out.push_back(std::move(v));
    }
    return out;
  }
};

}  // namespace

struct Echelon::Impl {
  FieldSpec f;
  std::variant<EchelonT<OpsQ>, EchelonT<OpsP>> e;
  Impl(FieldSpec fs, std::size_t n)
      : f(fs),
        e(fs.is_prime() ? decltype(e)(EchelonT<OpsP>(OpsP{fs.p}, n))
                        : decltype(e)(EchelonT<OpsQ>(OpsQ{}, n))) {}
};

Echelon::Echelon(FieldSpec f, std::size_t ncols) : impl_(std::make_unique<Impl>(f, ncols)) {}
Echelon::~Echelon() = default;
Echelon::Echelon(Echelon&&) noexcept = default;
Echelon& Echelon::operator=(Echelon&&) noexcept = default;

bool Echelon::add(const Vec& row) {
  if (row.size() != ncols()) throw DimMismatch("Echelon::add row length");
  return std::visit([&](auto& e) { return e.add(row); }, impl_->e);
}
bool Echelon::add_sparse(const std::vector<std::pair<std::size_t, Scalar>>& row) {
  return std::visit([&](auto& e) { return e.add_sparse(row); }, impl_->e);
}
std::size_t Echelon::rank() const {
  return std::visit([](auto& e) { return e.rows.size(); }, impl_->e);
}
std::size_t Echelon::ncols() const {
  return std::visit([](auto& e) { return e.n; }, impl_->e);
}
Mat Echelon::reduced_rows() const {
  return std::visit([&](auto& e) { return e.row_mat(impl_->f); }, impl_->e);
}
std::vector<std::size_t> Echelon::pivot_cols() const {
  return std::visit([](auto& e) { return e.piv; }, impl_->e);
}
Subspace Echelon::row_space() const {
  Mat m = std::visit([&](auto& e) { return e.row_mat(impl_->f); }, impl_->e);
  return Subspace::span(m);
}
Subspace Echelon::solutions() const {
  auto vs = std::visit([](auto& e) { return e.kernel_vecs(); }, impl_->e);
  return Subspace::span(impl_->f, ncols(), vs);
}

// ---------------------------------------------------------------- rref & subspaces

std::pair<Mat, std::vector<std::size_t>> rref(const Mat& m) {
  Echelon e(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.add_sparse(m.row_nz(i));
  Mat basis = e.reduced_rows();
  std::vector<std::size_t> piv = e.pivot_cols();
  Mat out(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) out.set(i, j, basis.at(i, j));
  return {out, piv};
}

std::size_t rank(const Mat& m) {
  Echelon e(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.add_sparse(m.row_nz(i));
  return e.rank();
}

Subspace Subspace::zero(FieldSpec f, std::size_t ambient) {
  Subspace s;
  s.basis_ = Mat(f, 0, ambient);
  return s;
}

Subspace Subspace::full(FieldSpec f, std::size_t ambient) {
  Subspace s;
  s.basis_ = Mat::identity(f, ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Subspace Subspace::span(const Mat& rows) {
  auto [r, piv] = rref(rows);
  Subspace s;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < piv.size(); ++i) keep.push_back(i);
  s.basis_ = r.select_rows(keep);
  s.pivots_ = piv;
  return s;
}

Subspace Subspace::span(FieldSpec f, std::size_t ambient, const std::vector<Vec>& vs) {
  Mat m(f, vs.size(), ambient);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < ambient; ++j)
      if (sgn(vs[i][j]) != 0) m.set(i, j, vs[i][j]);
  return span(m);
}

Vec Subspace::residual(const Vec& v) const {
  if (v.size() != ambient_dim()) throw AmbientMismatch("residual: vector length");
  const FieldSpec& f = field();
  Vec r = v;
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    Scalar c = r[pivots_[k]];
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (sgn(basis_.at(k, j)) != 0) r[j] = f.reduce(r[j] - c * basis_.at(k, j));
  }
  return r;
}

bool Subspace::contains(const Vec& v) const {
  Vec r = residual(v);
  return std::all_of(r.begin(), r.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

bool Subspace::contains(const Subspace& o) const {
  if (o.ambient_dim() != ambient_dim()) throw AmbientMismatch("contains");
  for (std::size_t i = 0; i < o.dim(); ++i)
    if (!contains(o.basis_.row(i))) return false;
  return true;
}

Vec Subspace::coords(const Vec& v) const {
  Vec c(pivots_.size());
  for (std::size_t k = 0; k < pivots_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

Subspace kernel(const Mat& m) {
  Echelon e(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.add_sparse(m.row_nz(i));
  return e.solutions();
}

Subspace annihilator(const Subspace& u) { return kernel(u.basis()); }

Subspace sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw AmbientMismatch("sum");
  require_same_field(u.field(), v.field(), "sum");
  Echelon e(u.field(), u.ambient_dim());
  for (std::size_t i = 0; i < u.dim(); ++i) e.add_sparse(u.basis().row_nz(i));
  for (std::size_t i = 0; i < v.dim(); ++i) e.add_sparse(v.basis().row_nz(i));
  return e.row_space();
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw AmbientMismatch("intersect");
  require_same_field(u.field(), v.field(), "intersect");
  return annihilator(sum(annihilator(u), annihilator(v)));
}

Mat tensor(const Mat& a, const Mat& b) {
  require_same_field(a.field(), b.field(), "tensor");
  Mat out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a.at(i, j);
      if (sgn(x) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const Scalar& y = b.at(k, l);
          if (sgn(y) != 0) out.set(i * b.rows() + k, j * b.cols() + l, x * y);
        }
    }
  return out;
}

Mat tensor(const std::vector<const Mat*>& factors) {
  if (factors.empty()) throw DimMismatch("empty tensor");
  Mat out = *factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, *factors[i]);
  return out;
}

bool invert(const Mat& m, Mat& out) {
  if (m.rows() != m.cols()) return false;
  const std::size_t n = m.rows();
  Mat aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, n + i, 1);
  }
  auto [r, piv] = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return false;
  out = r.col_range(n, n);
  return true;
}

Mat swap_map(FieldSpec f, std::size_t dv, std::size_t dw) {
  Mat s(f, dv * dw, dv * dw);
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t j = 0; j < dw; ++j) s.set(j * dv + i, i * dw + j, 1);
  return s;
}

Mat permute_factors(FieldSpec f, const std::vector<std::size_t>& dims,
                    const std::vector<std::size_t>& perm) {
  const std::size_t k = dims.size();
  if (perm.size() != k) throw DimMismatch("permute_factors");
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  std::vector<std::size_t> odims(k);
  for (std::size_t i = 0; i < k; ++i) odims[perm[i]] = dims[i];
  Mat out(f, total, total);
  std::vector<std::size_t> idx(k, 0), oidx(k);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = k; i-- > 0;) {
      idx[i] = rem % dims[i];
      rem /= dims[i];
    }
    for (std::size_t i = 0; i < k; ++i) oidx[perm[i]] = idx[i];
    std::size_t o = 0;
    for (std::size_t i = 0; i < k; ++i) o = o * odims[i] + oidx[i];
    out.set(o, flat, 1);
  }
  return out;
}

}  // namespace mlab::exactlin
