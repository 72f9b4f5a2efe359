#pragma once

#include <string>
#include <vector>

#include "mlab/exactlin.hpp"

namespace mlab::algcore {

using exactlin::FieldSpec;
using exactlin::Mat;
using exactlin::Scalar;
using exactlin::Vec;

/// Finite-dimensional algebra by structure constants.
/// mult is dim x dim^2 (the map A(x)A -> A), unit is dim x 1.
struct Algebra {
  std::string name;
  FieldSpec field;
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  Mat mult;
  Mat unit;
  bool validated = false;

  /// Product of basis elements as a coefficient vector.
  Vec product(std::size_t i, std::size_t j) const { return mult.col(i * dim + j); }
  bool operator==(const Algebra& o) const {
    return field == o.field && dim == o.dim && mult == o.mult && unit == o.unit;
  }
};

/// comult is dim^2 x dim (C -> C(x)C), counit is 1 x dim.
struct Coalgebra {
  std::string name;
  FieldSpec field;
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  Mat comult;
  Mat counit;
  bool validated = false;

  bool operator==(const Coalgebra& o) const {
    return field == o.field && dim == o.dim && comult == o.comult && counit == o.counit;
  }
};

struct AlgebraMorphism {
  Algebra source, target;
  Mat matrix;  // target.dim x source.dim
};

struct CoalgebraMorphism {
  Coalgebra source, target;
  Mat matrix;
};

/// Outcome of a boolean check; failure names the violated identity.
struct Verdict {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

struct AssociativityFailure : CheckFailure {
  std::size_t i, j, k;
  AssociativityFailure(std::size_t i_, std::size_t j_, std::size_t k_);
};
struct UnitFailure : CheckFailure {
  std::string side;
  std::size_t i;
  UnitFailure(std::string side_, std::size_t i_);
};
struct CoassociativityFailure : CheckFailure {
  std::size_t i;
  explicit CoassociativityFailure(std::size_t i_);
};
struct CounitFailure : CheckFailure {
  std::string side;
  std::size_t i;
  CounitFailure(std::string side_, std::size_t i_);
};

std::vector<std::string> default_labels(const std::string& stem, std::size_t n);
/// Checks shapes only.
void check_shapes(const Algebra& a);
void check_shapes(const Coalgebra& c);

Algebra check_algebra(Algebra raw);
Coalgebra check_coalgebra(Coalgebra raw);
/// Non-throwing forms.
Verdict algebra_axioms(const Algebra& a);
Verdict coalgebra_axioms(const Coalgebra& c);
void require_valid(const Algebra& a, const char* where);
void require_valid(const Coalgebra& c, const char* where);

Coalgebra dual_coalgebra(const Algebra& a);
Algebra dual_algebra(const Coalgebra& c);
/// Hom(C,A) with basis e_ij : c_i -> a_j at index i*dimA+j.
Algebra convolution_algebra(const Coalgebra& c, const Algebra& a);
Algebra tensor_algebras(const Algebra& a, const Algebra& b);
Coalgebra tensor_coalgebras(const Coalgebra& c, const Coalgebra& d);
/// Same carrier, comultiplication followed by the swap.
Coalgebra coopposite(const Coalgebra& c);
Algebra opposite(const Algebra& a);

Verdict is_algebra_morphism(const AlgebraMorphism& f);
Verdict is_coalgebra_morphism(const CoalgebraMorphism& g);

bool is_commutative(const Algebra& a);
bool is_cocommutative(const Coalgebra& c);

/// Comultiplication of a vector, as a sparse vector on C(x)C.
std::vector<std::pair<std::size_t, Scalar>> comult_apply(const Coalgebra& c, const Vec& v);

// Standard structures.
Algebra ground_algebra(FieldSpec f);
Coalgebra ground_coalgebra(FieldSpec f);
/// k[x]/(x^n), basis 1, x, ..., x^{n-1}.
Algebra truncated_polynomial(FieldSpec f, std::size_t n);
/// k[C_n], basis g^0..g^{n-1}.
Algebra group_algebra_cyclic(FieldSpec f, std::size_t n);
/// k^n with orthogonal idempotents.
Algebra diagonal_algebra(FieldSpec f, std::size_t n);
/// M_n(k) with matrix units e_ij at index i*n+j.
Algebra matrix_algebra(FieldSpec f, std::size_t n);
/// M_n(k)* with Delta(e_ij) = sum_k e_ik (x) e_kj.
Coalgebra matrix_coalgebra(FieldSpec f, std::size_t n);
/// Divided power coalgebra truncated at degree n-1.
Coalgebra divided_power_coalgebra(FieldSpec f, std::size_t n);
/// n grouplikes.
Coalgebra grouplike_coalgebra(FieldSpec f, std::size_t n);
/// k[C_n] coalgebra with Delta(g)=g(x)g.
Coalgebra group_coalgebra_cyclic(FieldSpec f, std::size_t n);

AlgebraMorphism identity_morphism(const Algebra& a);
CoalgebraMorphism identity_morphism(const Coalgebra& c);
/// eta_A : k -> A.
AlgebraMorphism unit_morphism(const Algebra& a);
/// epsilon_C : C -> k.
CoalgebraMorphism counit_morphism(const Coalgebra& c);

}  // namespace mlab::algcore
