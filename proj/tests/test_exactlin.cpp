#include <gtest/gtest.h>

#include <random>

#include "mlab/exactlin.hpp"

using namespace mlab::exactlin;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

Mat random_mat(FieldSpec f, std::size_t r, std::size_t c, std::mt19937& rng) {
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar(static_cast<long>(rng() % f.p)));
  return m;
}

// Brute force: all x in F_p^n with m x = 0.
std::size_t brute_kernel_size(const Mat& m) {
  const std::size_t n = m.cols(), p = m.field().p;
  std::size_t total = 1, count = 0;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Vec x(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= p) x[i] = static_cast<long>(c % p);
    Vec y = m.apply(x);
    bool zero = true;
    for (auto& e : y) zero = zero && sgn(e) == 0;
    count += zero;
  }
  return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(FieldSpec, ReducesCanonically) {
  EXPECT_EQ(Q.parse("6/8"), Scalar(3, 4));
  EXPECT_EQ(Q.parse("-2/-4"), Scalar(1, 2));
  EXPECT_EQ(F3.parse("-1"), Scalar(2));
  EXPECT_EQ(F3.parse("1/2"), Scalar(2));
  EXPECT_EQ(FieldSpec::prime(5).inv(Scalar(2)), Scalar(3));
  EXPECT_THROW(FieldSpec::prime(4), mlab::SchemaError);
  EXPECT_THROW(F2.parse("1/2"), mlab::Error);
  EXPECT_EQ(FieldSpec::from_name("F7"), FieldSpec::prime(7));
  EXPECT_EQ(FieldSpec::from_name("Q"), Q);
}

TEST(Rref, IdentityAndZero) {
  auto [r, piv] = rref(Mat::identity(Q, 2));
  EXPECT_EQ(r, Mat::identity(Q, 2));
  EXPECT_EQ(piv, (std::vector<std::size_t>{0, 1}));
  auto [z, zp] = rref(Mat(Q, 3, 2));
  EXPECT_EQ(z, Mat(Q, 3, 2));
  EXPECT_TRUE(zp.empty());
}

TEST(Rref, AllOnesOverF2) {
  auto [r, piv] = rref(Mat::from_ints(F2, {{1, 1}, {1, 1}}));
  EXPECT_EQ(r, Mat::from_ints(F2, {{1, 1}, {0, 0}}));
  EXPECT_EQ(piv, std::vector<std::size_t>{0});
}

TEST(Rref, RationalExample) {
  auto [r, piv] = rref(Mat::from_ints(Q, {{2, 4, 1}, {1, 2, 3}}));
  Mat expect(Q, 2, 3);
  expect.set(0, 0, 1), expect.set(0, 1, 2), expect.set(1, 2, 1);
  EXPECT_EQ(r, expect);
  EXPECT_EQ(piv, (std::vector<std::size_t>{0, 2}));
}

TEST(Kernel, Basics) {
  EXPECT_EQ(kernel(Mat::identity(Q, 3)).dim(), 0u);
  EXPECT_EQ(kernel(Mat(Q, 2, 4)).dim(), 4u);
  Subspace k = kernel(Mat::from_ints(Q, {{1, 1}}));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_TRUE(k.contains(Vec{1, -1}));
  EXPECT_FALSE(k.contains(Vec{1, 1}));
}

TEST(Kernel, RankNullityMatchesEnumerationOverF2) {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    Mat m = random_mat(F2, r, c, rng);
    Subspace k = kernel(m);
    EXPECT_EQ(rank(m) + k.dim(), c);
    EXPECT_EQ(ipow(2, k.dim()), brute_kernel_size(m));
    for (std::size_t i = 0; i < k.dim(); ++i)
      for (auto& e : m.apply(k.basis().row(i))) EXPECT_EQ(sgn(e), 0);
  }
}

TEST(Kernel, RankNullityMatchesEnumerationOverF3) {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    Mat m = random_mat(F3, r, c, rng);
    EXPECT_EQ(ipow(3, kernel(m).dim()), brute_kernel_size(m));
  }
}

TEST(Rref, Idempotent) {
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    Mat m = random_mat(F3, 1 + rng() % 5, 1 + rng() % 5, rng);
    auto r1 = rref(m).first;
    EXPECT_EQ(rref(r1).first, r1);
  }
  Mat q = Mat::from_ints(Q, {{3, 1, 4}, {1, 5, 9}, {2, 6, 5}});
  auto r1 = rref(q).first;
  EXPECT_EQ(rref(r1).first, r1);
}

TEST(Subspace, IntersectExamples) {
  Subspace u = Subspace::span(Mat::from_ints(Q, {{1, 0, 0}, {0, 1, 0}}));
  Subspace v = Subspace::span(Mat::from_ints(Q, {{0, 1, 0}, {0, 0, 1}}));
  Subspace w = intersect(u, v);
  EXPECT_EQ(w, Subspace::span(Mat::from_ints(Q, {{0, 1, 0}})));
  EXPECT_EQ(intersect(u, u), u);
  EXPECT_EQ(intersect(u, Subspace::full(Q, 3)), u);
  EXPECT_THROW(intersect(u, Subspace::full(Q, 2)), mlab::AmbientMismatch);
}

TEST(Subspace, DimensionFormulaRandom) {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 6;
    Subspace u = Subspace::span(random_mat(F2, rng() % 5, n, rng));
    Subspace v = Subspace::span(random_mat(F2, rng() % 5, n, rng));
    Subspace i = intersect(u, v), s = sum(u, v);
    EXPECT_EQ(u.dim() + v.dim(), i.dim() + s.dim());
    EXPECT_TRUE(u.contains(i));
    EXPECT_TRUE(v.contains(i));
    EXPECT_TRUE(s.contains(u));
    // oracle: count common vectors by enumeration
    std::size_t common = 0;
    for (std::size_t code = 0; code < ipow(2, n); ++code) {
      Vec x(n);
      for (std::size_t b = 0; b < n; ++b) x[b] = static_cast<long>((code >> b) & 1);
      common += u.contains(x) && v.contains(x);
    }
    EXPECT_EQ(common, ipow(2, i.dim()));
  }
}

TEST(Tensor, Kronecker) {
  EXPECT_EQ(tensor(Mat::identity(Q, 2), Mat::identity(Q, 3)), Mat::identity(Q, 6));
  EXPECT_TRUE(tensor(Mat::identity(Q, 2), Mat(Q, 2, 2)).is_zero());
  EXPECT_EQ(tensor(Mat::from_ints(Q, {{2}}), Mat::from_ints(Q, {{3}})), Mat::from_ints(Q, {{6}}));
  Mat a = Mat::from_ints(Q, {{1, 2}, {0, 1}}), b = Mat::from_ints(Q, {{0, 1}});
  Mat t = tensor(a, b);
  EXPECT_EQ(t.at(0, 1), Scalar(1));   // a00*b01 at (0*1+0, 0*2+1)
  EXPECT_EQ(t.at(0, 3), Scalar(2));   // a01*b01 at (0, 1*2+1)
  EXPECT_THROW(tensor(a, Mat::identity(F2, 1)), mlab::FieldMismatch);
}

TEST(Tensor, AssociativeRandom) {
  std::mt19937 rng(9);
  for (int t = 0; t < 30; ++t) {
    Mat a = random_mat(F3, 1 + rng() % 3, 1 + rng() % 3, rng);
    Mat b = random_mat(F3, 1 + rng() % 3, 1 + rng() % 3, rng);
    Mat c = random_mat(F3, 1 + rng() % 3, 1 + rng() % 3, rng);
    EXPECT_EQ(tensor(tensor(a, b), c), tensor(a, tensor(b, c)));
  }
}

TEST(Tensor, SwapAndPermutation) {
  Mat s = swap_map(Q, 2, 3);
  Mat a = Mat::from_ints(Q, {{1, 2}, {3, 4}}), b = Mat::from_ints(Q, {{5, 6, 7}, {8, 9, 1}, {2, 3, 4}});
  EXPECT_EQ(s * tensor(a, b), tensor(b, a) * swap_map(Q, 2, 3));
  EXPECT_EQ(permute_factors(Q, {2, 3}, {1, 0}), s);
  Mat inv;
  ASSERT_TRUE(invert(a, inv));
  EXPECT_EQ(a * inv, Mat::identity(Q, 2));
  EXPECT_FALSE(invert(Mat::from_ints(Q, {{1, 1}, {1, 1}}), inv));
}

TEST(Echelon, IncrementalMatchesBatch) {
  std::mt19937 rng(13);
  Mat m = random_mat(F3, 8, 5, rng);
  Echelon e(F3, 5);
  for (std::size_t i = 0; i < m.rows(); ++i) e.add(m.row(i));
  EXPECT_EQ(e.row_space(), Subspace::span(m));
  EXPECT_EQ(e.solutions(), kernel(m));
}
