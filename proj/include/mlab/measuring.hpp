#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlab/modcomod.hpp"

namespace mlab::measuring {

using algcore::Algebra;
using algcore::AlgebraMorphism;
using algcore::Coalgebra;
using algcore::CoalgebraMorphism;
using algcore::Verdict;
using exactlin::FieldSpec;
using exactlin::Mat;
using exactlin::Scalar;
using exactlin::Subspace;
using exactlin::Vec;
using modcomod::ComoduleStructure;
using modcomod::GlobalComodMorphism;
using modcomod::ModuleStructure;

struct HintInvalid : Error {
  std::size_t index;
  explicit HintInvalid(std::size_t i);
};
struct UnmatchedPoint : Error {
  explicit UnmatchedPoint(const std::string& w) : Error("UnmatchedPoint", w) {}
};
struct NotMeasuring : Error {
  explicit NotMeasuring(const std::string& w) : Error("NotMeasuring", w) {}
};
struct ImageEscapesTruncation : Error {
  explicit ImageEscapesTruncation(const std::string& w) : Error("ImageEscapesTruncation", w) {}
};

/// Enumeration and size limits. Every overrun raises BudgetExceeded.
struct Budget {
  std::uint64_t enumeration = std::uint64_t(1) << 20;
  std::size_t max_cofree_dim = 2000;
};

/// Hom(A,B) is stored as a vector with e_a |-> e_b at index a*dimB+b.
Vec hom_vec(const Mat& linear_map);
Mat hom_mat(FieldSpec f, const Vec& v, std::size_t dim_a, std::size_t dim_b);

/// psi : C -> Hom(A,B), a (dimA*dimB) x dimC matrix.
struct MeasuringMap {
  Coalgebra c;
  Algebra a, b;
  Mat psi;
};

/// Elementwise measuring identities on all basis triples.
Verdict measuring_identity(const MeasuringMap& m);
/// The adjunct A -> [C,B] as a matrix (dimC*dimB) x dimA.
Mat measuring_adjunct(const MeasuringMap& m);
/// Checks both routes; throws std::logic_error if they disagree.
Verdict verify_measuring(const MeasuringMap& m);

/// Over F_p within budget: all algebra maps. Otherwise exactly the validated hints.
std::vector<AlgebraMorphism> algebra_maps(const Algebra& a, const Algebra& b,
                                          const std::vector<Mat>& hints = {}, const Budget& budget = {});

/// The largest subcoalgebra of c inside w (rref basis).
Subspace largest_subcoalgebra_in(const Coalgebra& c, const Subspace& w);
/// The largest subcomodule of x inside w.
Subspace largest_subcomodule_in(const ComoduleStructure& x, const Subspace& w);
/// Structure restricted to a subcoalgebra / subcomodule, in the coordinates of its rref basis.
Coalgebra restrict_coalgebra(const Coalgebra& c, const Subspace& d);
ComoduleStructure restrict_comodule(const ComoduleStructure& x, const Subspace& d);

/// Path coalgebra on the points: degree-k basis words run along vertex sequences (phi_0..phi_k).
/// Between distinct points the letter at the pivot of phi-psi is omitted.
struct CofreeTruncation {
  Coalgebra coalg;
  Mat proj;  // dimV x dim
  std::vector<std::size_t> degree;
  std::vector<std::vector<std::size_t>> path;
  std::vector<std::vector<std::size_t>> word;
  std::vector<std::size_t> point_index;  // basis index of g_phi
};
CofreeTruncation pointed_cofree_truncation(FieldSpec f, std::size_t v_dim, const std::vector<Vec>& points,
                                           std::size_t n, const Budget& budget = {});

struct TruncatedMeasuringComonoid {
  Algebra a, b;
  std::size_t degree = 0;
  std::vector<AlgebraMorphism> points;
  std::vector<Vec> point_elements;  // coordinates of g_phi in p_n
  Coalgebra p_n;
  Mat proj;  // (dimA*dimB) x dim p_n
  MeasuringMap canonical_measuring;
  std::size_t cofree_dim = 0;
  Mat embedding;      // rows: basis of p_n inside the cofree truncation
  Mat cofree_proj;    // dimV x cofree_dim
  Mat cofree_counit;  // 1 x cofree_dim
};

TruncatedMeasuringComonoid measuring_comonoid_truncated(const Algebra& a, const Algebra& b, std::size_t n,
                                                        const std::vector<Mat>& hints = {},
                                                        const Budget& budget = {});

struct FiniteDual {
  Coalgebra coalg;
  MeasuringMap evaluation;
};
FiniteDual finite_dual(const Algebra& a);

/// The unique h : C -> P_n with proj h = psi.
CoalgebraMorphism couniversal_factor(const TruncatedMeasuringComonoid& p, const MeasuringMap& psi,
                                     const Budget& budget = {});

struct CensusReport {
  std::size_t degree = 0;
  std::size_t p_dim = 0;
  std::size_t measurings = 0;
  std::size_t coalgebra_maps = 0;
  bool injective = true;
  bool surjective = true;
  bool round_trip = true;
  bool ok() const { return measurings == coalgebra_maps && injective && surjective && round_trip; }
};
CensusReport adjunction_bijection_census(const Algebra& a, const Algebra& b, const Coalgebra& c,
                                         std::size_t degree, const Budget& budget = {});

/// rho : X -> Hom(M,N), a (dimM*dimN) x dimX matrix.
struct ModuleMeasuringMap {
  MeasuringMap underlying;
  ComoduleStructure x;
  ModuleStructure m, n;
  Mat rho;
};

struct TruncatedMeasuringComodule {
  TruncatedMeasuringComonoid p;
  ModuleStructure m, n;
  ComoduleStructure q_n;
  Mat proj;        // (dimM*dimN) x dim q_n
  Mat embedding;   // rows: basis of q_n inside Hom(M,N) (x) p_n
  ModuleMeasuringMap canonical() const;
};

TruncatedMeasuringComodule measuring_comodule_truncated(const ModuleStructure& m, const ModuleStructure& n,
                                                        const TruncatedMeasuringComonoid& p);
/// Same, with extra linear constraints on the carrier Hom(M,N) (x) p_n (rows are functionals).
TruncatedMeasuringComodule measuring_comodule_truncated(const ModuleStructure& m, const ModuleStructure& n,
                                                        const TruncatedMeasuringComonoid& p,
                                                        const Mat& extra_constraints);

Verdict module_measuring_identity(const ModuleMeasuringMap& r);
/// The identity checked as equivariance of the adjunct M -> Hom(X,N).
Verdict module_measuring_via_adjunct(const ModuleMeasuringMap& r);
Verdict verify_module_measuring(const ModuleMeasuringMap& r);

GlobalComodMorphism comodule_couniversal_factor(const TruncatedMeasuringComodule& q, const ModuleMeasuringMap& r,
                                                const Budget& budget = {});

struct IsoComodReport {
  bool ok = false;
  std::size_t degree = 0;
  std::size_t lhs_dim = 0;  // [V,N] (x) P_n
  std::size_t rhs_dim = 0;  // Q_n(A(x)V, N)
  std::optional<std::size_t> stabilized_at;
  Mat comparison;
  std::string detail;
};

/// Compares [V,N] (x) P_n with Q_n(A(x)V, N) through the couniversal map.
IsoComodReport check_isocomod(const Algebra& a, const Algebra& b, std::size_t v_dim, const ModuleStructure& n,
                              std::size_t degree, const std::vector<Mat>& hints = {}, const Budget& budget = {});

/// lo sits inside hi as a subcoalgebra (subcomodule) with the same projection.
bool truncation_contains(const TruncatedMeasuringComonoid& lo, const TruncatedMeasuringComonoid& hi);
bool truncation_contains(const TruncatedMeasuringComodule& lo, const TruncatedMeasuringComodule& hi);

}  // namespace mlab::measuring
