#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mlab/errors.hpp"

namespace mlab::exactlin {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

enum class FieldKind { Rationals, PrimeField };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p);

  bool is_prime() const { return kind == FieldKind::PrimeField; }
  /// Canonical representative: lowest terms, or an integer in [0,p).
  Scalar reduce(const Scalar& x) const;
  Scalar inv(const Scalar& x) const;
  Scalar parse(const std::string& s) const;
  std::string format(const Scalar& x) const;
  /// "Q" or "F<p>".
  std::string name() const;
  static FieldSpec from_name(const std::string& s);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime_number(std::uint64_t n);
void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* where);

/// Dense row-major matrix over a FieldSpec; entries are always canonical.
class Mat {
 public:
  Mat() = default;
  Mat(FieldSpec f, std::size_t rows, std::size_t cols);

  static Mat identity(FieldSpec f, std::size_t n);
  static Mat from_rows(FieldSpec f, const std::vector<Vec>& rows);
  static Mat from_ints(FieldSpec f, const std::vector<std::vector<long>>& rows);
  static Mat column(FieldSpec f, const Vec& v);
  static Mat row_vector(FieldSpec f, const Vec& v);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  const FieldSpec& field() const { return f_; }

  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& v);
  void add_to(std::size_t i, std::size_t j, const Scalar& v);

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  /// Nonzero entries of column j as (row, value).
  std::vector<std::pair<std::size_t, Scalar>> col_nz(std::size_t j) const;
  std::vector<std::pair<std::size_t, Scalar>> row_nz(std::size_t i) const;

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Scalar& s) const;
  Mat transpose() const;
  Vec apply(const Vec& v) const;
  /// Columns [c0, c0+n) as a new matrix.
  Mat col_range(std::size_t c0, std::size_t n) const;
  Mat select_cols(const std::vector<std::size_t>& cols) const;
  Mat select_rows(const std::vector<std::size_t>& rows) const;

  bool is_zero() const;
  std::size_t nnz() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  /// First (i,j) where the matrices differ, or (-1,-1).
  std::pair<long, long> first_difference(const Mat& o) const;
  std::string to_string() const;

 private:
  FieldSpec f_;
  std::size_t r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

/// Row space held in reduced row-echelon form.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(FieldSpec f, std::size_t ambient);
  static Subspace full(FieldSpec f, std::size_t ambient);
  /// Span of the rows of m.
  static Subspace span(const Mat& rows);
  static Subspace span(FieldSpec f, std::size_t ambient, const std::vector<Vec>& vs);

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const FieldSpec& field() const { return basis_.field(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  /// Coefficients of v in the basis rows; v must lie in the subspace.
  Vec coords(const Vec& v) const;
  /// v minus its pivot-projection: zero iff v lies in the subspace.
  Vec residual(const Vec& v) const;
  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

 private:
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

std::pair<Mat, std::vector<std::size_t>> rref(const Mat& m);
std::size_t rank(const Mat& m);
Subspace kernel(const Mat& m);
/// Vectors orthogonal to u under the standard pairing.
Subspace annihilator(const Subspace& u);
Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);
/// Kronecker product; e_i (x) e_j has index i*dim(W)+j.
Mat tensor(const Mat& a, const Mat& b);
Mat tensor(const std::vector<const Mat*>& factors);
/// Inverse of a square matrix; false when singular.
bool invert(const Mat& m, Mat& out);

/// Swap V(x)W -> W(x)V.
Mat swap_map(FieldSpec f, std::size_t dv, std::size_t dw);
/// Permutation on V1(x)...(x)Vk sending factor i to position perm[i].
Mat permute_factors(FieldSpec f, const std::vector<std::size_t>& dims,
                    const std::vector<std::size_t>& perm);

/// Incremental echelon form of a growing set of rows; used to accumulate linear
/// constraints without materializing them.
class Echelon {
 public:
  Echelon(FieldSpec f, std::size_t ncols);
  ~Echelon();
  Echelon(Echelon&&) noexcept;
  Echelon& operator=(Echelon&&) noexcept;

  /// Reduces and inserts row; returns true if the rank grew.
  bool add(const Vec& row);
  bool add_sparse(const std::vector<std::pair<std::size_t, Scalar>>& row);
  std::size_t rank() const;
  std::size_t ncols() const;
  Mat reduced_rows() const;
  std::vector<std::size_t> pivot_cols() const;
  /// Row space as a Subspace.
  Subspace row_space() const;
  /// Solutions of the accumulated homogeneous system.
  Subspace solutions() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mlab::exactlin
