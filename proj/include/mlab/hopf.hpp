#pragma once

#include <string>
#include <vector>

#include "mlab/measuring.hpp"

namespace mlab::hopf {

using algcore::Algebra;
using algcore::Coalgebra;
using algcore::Verdict;
using exactlin::FieldSpec;
using exactlin::Mat;
using measuring::TruncatedMeasuringComodule;
using measuring::TruncatedMeasuringComonoid;
using modcomod::ComoduleStructure;
using modcomod::GlobalComodMorphism;
using modcomod::GlobalModMorphism;
using modcomod::ModuleStructure;

/// A commuting-diagram violation; indices are the first differing matrix entry.
struct DiagramFailure : CheckFailure {
  std::string diagram;
  std::vector<std::size_t> indices;
  DiagramFailure(std::string name, std::vector<std::size_t> idx);
};

struct Bimonoid {
  std::string name;
  Algebra alg;
  Coalgebra coalg;
  bool validated = false;
  std::size_t dim() const { return alg.dim; }
  FieldSpec field() const { return alg.field; }
};

/// M over H with a coalgebra structure on the same carrier.
struct ModuleComonoid {
  Bimonoid h;
  ModuleStructure m;
  Coalgebra comonoid;
};

/// S with a left coaction S -> H(x)S, index h*dimS+s.
struct ComoduleMonoid {
  Bimonoid h;
  Algebra s;
  Mat coaction;
};

/// N with action S(x)N -> N and left coaction N -> M(x)N.
struct HopfModule {
  ComoduleMonoid s;
  ModuleComonoid m;
  std::size_t dim = 0;
  Mat action;
  Mat coaction;
};

/// N over a commutative A with an algebra structure on the same carrier.
struct ModuleMonoid {
  Algebra a;
  ModuleStructure n;
  Algebra monoid;
};

Verdict bimonoid_axioms(const Bimonoid& h);
Verdict module_comonoid_axioms(const ModuleComonoid& m);
Verdict comodule_monoid_axioms(const ComoduleMonoid& s);
Verdict hopf_module_axioms(const HopfModule& n);
Verdict module_monoid_axioms(const ModuleMonoid& n);

/// Throwing forms; DiagramFailure names the diagram.
Bimonoid check_bimonoid(Bimonoid raw);
ModuleComonoid check_module_comonoid(ModuleComonoid raw);
ComoduleMonoid check_comodule_monoid(ComoduleMonoid raw);
HopfModule check_hopf_module(HopfModule raw);
ModuleMonoid check_module_monoid(ModuleMonoid raw);

/// Left and right coactions differ by the swap.
Mat left_from_right(const Mat& right_coaction, std::size_t dim, std::size_t dim_c);
Mat right_from_left(const Mat& left_coaction, std::size_t dim, std::size_t dim_c);

// Standard structures.
Bimonoid ground_bimonoid(FieldSpec f);
/// k[C_n] with g grouplike.
Bimonoid group_bimonoid_cyclic(FieldSpec f, std::size_t n);
Bimonoid tensor_bimonoids(const Bimonoid& a, const Bimonoid& b);
/// dual_algebra of the coalgebra part with dual_coalgebra of the algebra part.
Bimonoid dual_bimonoid(const Bimonoid& h);
ModuleComonoid regular_module_comonoid(const Bimonoid& h);
ComoduleMonoid regular_comodule_monoid(const Bimonoid& h);
HopfModule regular_hopf_module(const Bimonoid& h);
ModuleMonoid regular_module_monoid(const Algebra& commutative);

struct ChiMap {
  GlobalModMorphism morphism;
  Verdict upper;    // upper rectangle of the left diagram
  Verdict lower;    // bottom square of the left diagram
  Verdict outer;    // the whole left diagram
  Verdict braided;  // the right diagram
  bool ok() const { return upper.ok && lower.ok && outer.ok && braided.ok; }
};

/// [X,M](x)[Y,N] -> [X(x)Y, M(x)N] over [C,A](x)[D,B] -> [C(x)D, A(x)B].
ChiMap chi_map(const ComoduleStructure& x, const ComoduleStructure& y, const ModuleStructure& m,
               const ModuleStructure& n);

/// Q_n(M,N)(x)Q_n(M',N') -> Q_n(M(x)M', N(x)N').
GlobalComodMorphism q_lax_structure(const TruncatedMeasuringComodule& q1, const TruncatedMeasuringComodule& q2,
                                    const TruncatedMeasuringComodule& q12,
                                    const measuring::Budget& budget = {});

/// Q_n on a pair (f: M -> M' over alpha, g: N -> N' over beta): Q_n(M',N) -> Q_n(M,N').
GlobalComodMorphism q_functor(const TruncatedMeasuringComodule& source, const TruncatedMeasuringComodule& target,
                              const GlobalModMorphism& f, const GlobalModMorphism& g,
                              const measuring::Budget& budget = {});

/// P_n(H,A) with the multiplication and unit induced by H and commutative A.
struct MeasuringBimonoid {
  TruncatedMeasuringComonoid p;
  Bimonoid bimonoid;
};
MeasuringBimonoid measuring_bimonoid(const Bimonoid& h, const Algebra& a, std::size_t degree,
                                     const measuring::Budget& budget = {});

struct QmnMonoid {
  MeasuringBimonoid p;
  TruncatedMeasuringComodule q;
  ComoduleMonoid structure;
  Mat via_lax;     // multiplication through q_lax_structure and Q(delta_M, mu_N)
  Mat direct;      // multiplication from the direct measuring
};

QmnMonoid qmn_comodule_monoid(const ModuleComonoid& m, const ModuleMonoid& n, std::size_t degree,
                              const measuring::Budget& budget = {});

struct HopfLiftReport {
  bool ok = false;
  std::size_t degree = 0;
  MeasuringBimonoid p;
  TruncatedMeasuringComodule q_x;
  Mat dual_iso;           // finite_dual(H) -> P_n, coalgebra and algebra isomorphism
  Mat q_h_iso;            // P_n -> Q_n(H,k), comodule isomorphism
  HopfModule lifted;      // over the bimonoid P_n
  bool orders_compared = false;  // false when the second order is out of budget
  bool orders_agree = false;
  std::vector<std::string> checks;
  std::vector<bool> passed;
  std::string detail;
};

/// Q_n(X,k) as an H°-Hopf module, for X a Hopf module with S = M = H regular.
HopfLiftReport hopf_lift_check(const HopfModule& x, std::size_t degree, const measuring::Budget& budget = {});

}  // namespace mlab::hopf
