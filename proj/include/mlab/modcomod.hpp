#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlab/algcore.hpp"

namespace mlab::modcomod {

using algcore::Algebra;
using algcore::AlgebraMorphism;
using algcore::Coalgebra;
using algcore::CoalgebraMorphism;
using algcore::Verdict;
using exactlin::FieldSpec;
using exactlin::Mat;
using exactlin::Scalar;
using exactlin::Vec;

/// Left module: action is dim x (A.dim * dim), basis a_i (x) m_j at i*dim+j.
struct ModuleStructure {
  std::string name;
  Algebra over;
  std::size_t dim = 0;
  Mat action;
  bool validated = false;
};

/// Right comodule: coaction is (dim * C.dim) x dim, basis x_i (x) c_j at i*C.dim+j.
struct ComoduleStructure {
  std::string name;
  Coalgebra over;
  std::size_t dim = 0;
  Mat coaction;
  bool validated = false;
};

bool same_structure(const ModuleStructure& a, const ModuleStructure& b);
bool same_structure(const ComoduleStructure& a, const ComoduleStructure& b);

struct ActionAssociativityFailure : CheckFailure {
  std::size_t i, j, k;
  ActionAssociativityFailure(std::size_t i_, std::size_t j_, std::size_t k_);
};
struct ActionUnitFailure : CheckFailure {
  std::size_t k;
  explicit ActionUnitFailure(std::size_t k_);
};
struct CoactionCoassociativityFailure : CheckFailure {
  std::size_t i;
  explicit CoactionCoassociativityFailure(std::size_t i_);
};
struct CoactionCounitFailure : CheckFailure {
  std::size_t i;
  explicit CoactionCounitFailure(std::size_t i_);
};

ModuleStructure check_module(ModuleStructure raw);
ComoduleStructure check_comodule(ComoduleStructure raw);
Verdict module_axioms(const ModuleStructure& m);
Verdict comodule_axioms(const ComoduleStructure& x);

ModuleStructure regular_module(const Algebra& a);
ComoduleStructure regular_comodule(const Coalgebra& c);
/// k^n over the ground algebra / coalgebra.
ModuleStructure trivial_module(FieldSpec f, std::size_t n);
ComoduleStructure trivial_comodule(FieldSpec f, std::size_t n);
/// V(x)D with coaction 1(x)Delta.
ComoduleStructure cofree_comodule(std::size_t v_dim, const Coalgebra& d);

ModuleStructure restrict(const AlgebraMorphism& f, const ModuleStructure& n);
ComoduleStructure corestrict(const CoalgebraMorphism& g, const ComoduleStructure& x);

/// A morphism M_A -> N_B of Mod over f with underlying p.
struct GlobalModMorphism {
  AlgebraMorphism f;
  ModuleStructure source, target;
  Mat p;
};

/// A morphism X_C -> Y_D of Comod over g with underlying k.
struct GlobalComodMorphism {
  CoalgebraMorphism g;
  ComoduleStructure source, target;
  Mat k;
};

Verdict check_global_morphism(const GlobalModMorphism& mor);
Verdict check_global_morphism(const GlobalComodMorphism& mor);

GlobalModMorphism compose(const GlobalModMorphism& second, const GlobalModMorphism& first);
GlobalComodMorphism compose(const GlobalComodMorphism& second, const GlobalComodMorphism& first);

/// Cart(f,N): f*N -> N with identity carrier.
GlobalModMorphism cartesian_lifting(const AlgebraMorphism& f, const ModuleStructure& n);
/// Cocart(g,X): X -> g_!X with identity carrier.
GlobalComodMorphism cocartesian_lifting(const CoalgebraMorphism& g, const ComoduleStructure& x);

struct ModFactorization {
  GlobalModMorphism vertical;   // M -> f*N over id
  GlobalModMorphism cartesian;  // f*N -> N over f
};
struct ComodFactorization {
  GlobalComodMorphism cocartesian;  // X -> g_!X over g
  GlobalComodMorphism vertical;     // g_!X -> Y over id
};

ModFactorization factor_global(const GlobalModMorphism& mor);
ComodFactorization factor_global(const GlobalComodMorphism& mor);

/// [f,g] : [V,W] -> [V',W'], h |-> g h f, for f: V'->V and g: W->W'.
Mat hom_map(const Mat& f, const Mat& g);
/// chi : [V1,W1](x)[V2,W2] -> [V1(x)V2, W1(x)W2].
Mat hom_chi(FieldSpec f, std::size_t dv1, std::size_t dw1, std::size_t dv2, std::size_t dw2);

/// The algebra acting on Hom(X,M) for X over C and M over A.
/// With right comodules this is the convolution algebra on the co-opposite of C.
Algebra hom_algebra(const Coalgebra& c, const Algebra& a);
/// Hom(X,M) with (f.g)(x) = sum f(x_1) . g(x_0).
ModuleStructure hom_module(const ComoduleStructure& x, const ModuleStructure& m);
/// [k,l] : Hom(Y,M) -> Hom(X,N) over [g,f], for k: X_C -> Y_D and l: M_A -> N_B.
GlobalModMorphism hom_global(const GlobalComodMorphism& k, const GlobalModMorphism& l);
/// [g,f] : [D,A] -> [C,B] as an algebra morphism between hom algebras.
AlgebraMorphism hom_algebra_map(const CoalgebraMorphism& g, const AlgebraMorphism& f);

ComoduleStructure tensor_comodules(const ComoduleStructure& x, const ComoduleStructure& y);
ModuleStructure tensor_modules(const ModuleStructure& m, const ModuleStructure& n);

struct ActionIsoReport {
  bool ok = true;
  std::vector<std::string> checks;    // names in order
  std::vector<bool> passed;
  void record(const std::string& name, bool v) {
    checks.push_back(name);
    passed.push_back(v);
    ok = ok && v;
  }
};

/// Currying [X(x)Y,M] ~ [X,[Y,M]], unit [I,M] ~ M, and their coherence when z is given.
ActionIsoReport verify_action_isos(const ComoduleStructure& x, const ComoduleStructure& y,
                                   const ModuleStructure& m,
                                   const std::optional<ComoduleStructure>& z = std::nullopt);

/// Exhaustive enumeration of all matrices rows x cols over F_p, calling fn on each.
/// fn returns false to stop early.
template <class Fn>
void for_each_matrix(FieldSpec f, std::size_t rows, std::size_t cols, Fn&& fn) {
  const std::size_t n = rows * cols;
  std::vector<unsigned long> digits(n, 0);
  while (true) {
    Mat m(f, rows, cols);
    for (std::size_t i = 0; i < n; ++i)
      if (digits[i]) m.set(i / cols, i % cols, Scalar(digits[i]));
    if (!fn(m)) return;
    std::size_t i = 0;
    while (i < n && ++digits[i] == f.p) digits[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace mlab::modcomod
