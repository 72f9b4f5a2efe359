#include <gtest/gtest.h>

#include "mlab/algcore.hpp"

using namespace mlab::algcore;
using mlab::exactlin::tensor;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

}  // namespace

TEST(CheckAlgebra, Valid) {
  EXPECT_TRUE(ground_algebra(Q).validated);
  Algebra d = truncated_polynomial(Q, 2);
  EXPECT_EQ(d.product(1, 1), (Vec{0, 0}));
  EXPECT_TRUE(matrix_algebra(Q, 2).validated);
  EXPECT_TRUE(group_algebra_cyclic(F3, 3).validated);
}

TEST(CheckAlgebra, UnitFailureNamed) {
  // e1*e1 = e2, everything else zero, unit e1
  Mat mult(Q, 2, 4);
  mult.set(1, 0, 1);
  Mat unit(Q, 2, 1);
  unit.set(0, 0, 1);
  try {
    check_algebra({"bad", Q, 2, {}, mult, unit});
    FAIL() << "expected UnitFailure";
  } catch (const UnitFailure& e) {
    EXPECT_EQ(e.kind(), "UnitFailure");
    EXPECT_EQ(e.side, "left");
    EXPECT_EQ(e.i, 0u);
  }
}

TEST(CheckAlgebra, AssociativityFailureNamed) {
  Algebra a = truncated_polynomial(Q, 3);
  Algebra bad = a;
  bad.mult.set(0, 1 * 3 + 1, 1);  // x*x gains a 1-component
  bad.validated = false;
  EXPECT_THROW(check_algebra(bad), AssociativityFailure);
}

TEST(CheckCoalgebra, Examples) {
  EXPECT_TRUE(ground_coalgebra(Q).validated);
  Coalgebra line = divided_power_coalgebra(Q, 2);
  EXPECT_EQ(line.comult.col(1), (Vec{0, 1, 1, 0}));
  EXPECT_TRUE(matrix_coalgebra(Q, 2).validated);
  Coalgebra bad = line;
  bad.counit.set(0, 1, 1);
  EXPECT_THROW(check_coalgebra(bad), CounitFailure);
  bad = line;
  bad.comult.set(2, 1, 2);  // Delta(x) = 1(x)x + 2 x(x)1
  EXPECT_THROW(check_coalgebra(bad), CoassociativityFailure);
}

TEST(Duals, DualNumbers) {
  Coalgebra c = dual_coalgebra(truncated_polynomial(Q, 2));
  // Delta(x*) = 1*(x)x* + x*(x)1*, Delta(1*) = 1*(x)1*
  EXPECT_EQ(c.comult.col(0), (Vec{1, 0, 0, 0}));
  EXPECT_EQ(c.comult.col(1), (Vec{0, 1, 1, 0}));
  EXPECT_EQ(c.counit.row(0), (Vec{1, 0}));
  EXPECT_EQ(dual_coalgebra(ground_algebra(Q)), ground_coalgebra(Q));
  EXPECT_EQ(dual_algebra(ground_coalgebra(Q)), ground_algebra(Q));
}

TEST(Duals, GroupAlgebraF2) {
  Coalgebra c = dual_coalgebra(group_algebra_cyclic(F2, 2));
  // Delta(g*) = sum_{hk=g} h*(x)k* : g = 1*g = g*1
  EXPECT_EQ(c.comult.col(1), (Vec{0, 1, 1, 0}));
  EXPECT_EQ(c.comult.col(0), (Vec{1, 0, 0, 1}));
}

TEST(Duals, DoubleDualIsIdentity) {
  for (const Algebra& a : {truncated_polynomial(Q, 3), matrix_algebra(Q, 2), group_algebra_cyclic(F3, 3),
                           diagonal_algebra(F2, 2)})
    EXPECT_EQ(dual_algebra(dual_coalgebra(a)), a);
  EXPECT_EQ(dual_algebra(matrix_coalgebra(Q, 2)), matrix_algebra(Q, 2));
}

TEST(Convolution, ReducesToKnownCases) {
  Algebra a = truncated_polynomial(Q, 2);
  EXPECT_EQ(convolution_algebra(ground_coalgebra(Q), a), a);
  Coalgebra m = matrix_coalgebra(Q, 2);
  EXPECT_EQ(convolution_algebra(m, ground_algebra(Q)), dual_algebra(m));
  Algebra big = convolution_algebra(m, a);
  EXPECT_EQ(big.dim, 8u);
  EXPECT_TRUE(big.validated);
}

TEST(Convolution, ProductOracle) {
  // (f*g)(c) = m(f(x)g)Delta(c) evaluated pointwise on every pair of basis maps
  Coalgebra c = matrix_coalgebra(F3, 2);
  Algebra a = group_algebra_cyclic(F3, 3);
  Algebra conv = convolution_algebra(c, a);
  for (std::size_t f = 0; f < conv.dim; ++f)
    for (std::size_t g = 0; g < conv.dim; ++g) {
      Vec prod = conv.product(f, g);
      for (std::size_t r = 0; r < c.dim; ++r) {
        Vec expect(a.dim);
        for (auto& [ik, x] : c.comult.col_nz(r)) {
          std::size_t i = ik / c.dim, k = ik % c.dim;
          if (f / a.dim != i || g / a.dim != k) continue;
          Vec ajl = a.product(f % a.dim, g % a.dim);
          for (std::size_t s = 0; s < a.dim; ++s) expect[s] = F3.reduce(expect[s] + x * ajl[s]);
        }
        for (std::size_t s = 0; s < a.dim; ++s) EXPECT_EQ(prod[r * a.dim + s], expect[s]);
      }
    }
}

TEST(Convolution, CurryingIsAlgebraIsomorphism) {
  // [C(x)D, A] and [C, [D, A]] share the basis ordering, so currying is the identity matrix.
  Coalgebra c = dual_coalgebra(truncated_polynomial(F2, 2));
  Coalgebra d = grouplike_coalgebra(F2, 2);
  Algebra a = truncated_polynomial(F2, 2);
  Algebra lhs = convolution_algebra(tensor_coalgebras(c, d), a);
  Algebra rhs = convolution_algebra(c, convolution_algebra(d, a));
  EXPECT_TRUE(is_algebra_morphism({lhs, rhs, Mat::identity(F2, lhs.dim)}));
  Coalgebra c3 = divided_power_coalgebra(Q, 3);
  Algebra a3 = truncated_polynomial(Q, 3);
  Algebra l3 = convolution_algebra(tensor_coalgebras(c3, ground_coalgebra(Q)), a3);
  EXPECT_TRUE(is_algebra_morphism({l3, convolution_algebra(c3, convolution_algebra(ground_coalgebra(Q), a3)),
                                   Mat::identity(Q, l3.dim)}));
}

TEST(Tensor, GroupAlgebraOfKleinFour) {
  Algebra c2 = group_algebra_cyclic(F2, 2);
  Algebra t = tensor_algebras(c2, c2);
  // basis (i,j) <-> g^i h^j at index 2i+j; product adds exponents mod 2
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      std::size_t z = (((x >> 1) ^ (y >> 1)) << 1) | ((x & 1) ^ (y & 1));
      Vec e(4);
      e[z] = 1;
      EXPECT_EQ(t.product(x, y), e);
    }
  EXPECT_EQ(tensor_algebras(c2, ground_algebra(F2)).mult, c2.mult);
  EXPECT_EQ(tensor_algebras(ground_algebra(F2), ground_algebra(F2)), ground_algebra(F2));
  EXPECT_EQ(tensor_coalgebras(matrix_coalgebra(Q, 2), ground_coalgebra(Q)).comult,
            matrix_coalgebra(Q, 2).comult);
}

TEST(Tensor, DualCommutesWithTensor) {
  Algebra a = truncated_polynomial(F3, 2), b = group_algebra_cyclic(F3, 3);
  EXPECT_EQ(dual_coalgebra(tensor_algebras(a, b)).comult,
            tensor_coalgebras(dual_coalgebra(a), dual_coalgebra(b)).comult);
}

TEST(Morphisms, Examples) {
  Algebra a = truncated_polynomial(Q, 2), k = ground_algebra(Q);
  EXPECT_TRUE(is_algebra_morphism(identity_morphism(a)));
  EXPECT_FALSE(is_algebra_morphism({a, k, Mat(Q, 1, 2)}));
  EXPECT_TRUE(is_algebra_morphism({a, k, Mat::from_ints(Q, {{1, 0}})}));
  EXPECT_FALSE(is_algebra_morphism({a, k, Mat::from_ints(Q, {{1, 1}})}));
  EXPECT_TRUE(is_algebra_morphism(unit_morphism(a)));
  Coalgebra c = dual_coalgebra(a);
  EXPECT_TRUE(is_coalgebra_morphism(identity_morphism(c)));
  EXPECT_TRUE(is_coalgebra_morphism(counit_morphism(c)));
  EXPECT_FALSE(is_coalgebra_morphism({c, c, Mat(Q, 2, 2)}));
  EXPECT_THROW(is_algebra_morphism({a, k, Mat(Q, 2, 2)}), mlab::DimMismatch);
}

TEST(Morphisms, EnumerateAlgebraMapsOverF2) {
  // oracle for later modules: k[x]/(x^2) -> F2 has exactly one algebra map, as does F2[C2] -> F2
  for (const Algebra& a : {truncated_polynomial(F2, 2), group_algebra_cyclic(F2, 2)}) {
    int count = 0;
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v)
        count += static_cast<bool>(is_algebra_morphism({a, ground_algebra(F2), Mat::from_ints(F2, {{u, v}})}));
    EXPECT_EQ(count, 1);
  }
}

TEST(Coopposite, MatrixCoalgebra) {
  Coalgebra m = matrix_coalgebra(Q, 2);
  EXPECT_FALSE(is_cocommutative(m));
  EXPECT_EQ(coopposite(coopposite(m)).comult, m.comult);
  EXPECT_TRUE(is_cocommutative(dual_coalgebra(group_algebra_cyclic(F3, 3))));
  EXPECT_FALSE(is_commutative(matrix_algebra(Q, 2)));
  EXPECT_EQ(opposite(opposite(matrix_algebra(Q, 2))), matrix_algebra(Q, 2));
}
