#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mlab/errors.hpp"

namespace mlab::fibcat {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct FiniteAdjunction;
struct IndexedCategory;

struct CategoryInvalid : CheckFailure {
  explicit CategoryInvalid(const std::string& w) : CheckFailure("CategoryInvalid", w) {}
};
struct FunctorInvalid : CheckFailure {
  explicit FunctorInvalid(const std::string& w) : CheckFailure("FunctorInvalid", w) {}
};
struct AdjunctionInvalid : CheckFailure {
  explicit AdjunctionInvalid(const std::string& w) : CheckFailure("AdjunctionInvalid", w) {}
};
struct IndexedInvalid : CheckFailure {
  explicit IndexedInvalid(const std::string& w) : CheckFailure("IndexedInvalid", w) {}
};
struct CellInvalid : CheckFailure {
  explicit CellInvalid(const std::string& w) : CheckFailure("CellInvalid", w) {}
};
struct FibrewiseAdjunctionInvalid : CheckFailure {
  std::size_t object;
  FibrewiseAdjunctionInvalid(std::size_t y, const std::string& w);
};
struct BijectionFailure : CheckFailure {
  std::size_t c, d;
  BijectionFailure(std::size_t c, std::size_t d, const std::string& w);
};

struct Morphism {
  std::string name;
  std::size_t src = 0, tgt = 0;
  bool operator==(const Morphism&) const = default;
};

/// Objects and morphisms are indices; comp[g * nmor + f] = g o f or npos.
struct FiniteCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::size_t> identity;
  std::vector<std::size_t> comp;

  std::size_t nobj() const { return objects.size(); }
  std::size_t nmor() const { return morphisms.size(); }
  std::size_t src(std::size_t m) const { return morphisms[m].src; }
  std::size_t tgt(std::size_t m) const { return morphisms[m].tgt; }
  /// g o f; throws CategoryInvalid when not composable.
  std::size_t compose(std::size_t g, std::size_t f) const;
  std::size_t compose(std::initializer_list<std::size_t> chain) const;  // left to right as written: a o b o c
  std::vector<std::size_t> hom(std::size_t a, std::size_t b) const;
  bool is_identity(std::size_t m) const { return identity[src(m)] == m; }
  std::optional<std::size_t> inverse(std::size_t m) const;
  bool is_iso(std::size_t m) const { return inverse(m).has_value(); }
  std::size_t object_index(const std::string& n) const;
  std::size_t morphism_index(const std::string& n) const;
  bool operator==(const FiniteCategory& o) const {
    return objects == o.objects && morphisms == o.morphisms && identity == o.identity && comp == o.comp;
  }
};

/// Exhaustive: total on composable pairs, associative, unital. Throws CategoryInvalid.
void validate(const FiniteCategory& c);

/// Thin category on the reflexive-transitive closure of the given arrows.
FiniteCategory preorder(std::string name, std::vector<std::string> objects,
                        const std::vector<std::pair<std::size_t, std::size_t>>& arrows);
FiniteCategory terminal_category();
/// 0 -> 1.
FiniteCategory arrow_category();
FiniteCategory discrete_category(std::size_t n);
/// Category with the given explicit data; missing entries of comp are filled from identities.
FiniteCategory make_category(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
                             std::vector<std::size_t> identity, std::vector<std::size_t> comp);
FiniteCategory opposite(const FiniteCategory& c);

struct FiniteFunctor {
  FiniteCategory source, target;
  std::vector<std::size_t> on_objects, on_morphisms;
  std::size_t operator()(std::size_t m) const { return on_morphisms[m]; }
  std::size_t obj(std::size_t x) const { return on_objects[x]; }
  bool operator==(const FiniteFunctor& o) const {
    return source == o.source && target == o.target && on_objects == o.on_objects && on_morphisms == o.on_morphisms;
  }
};

void validate(const FiniteFunctor& f);
FiniteFunctor identity_functor(const FiniteCategory& c);
/// g o f.
FiniteFunctor compose(const FiniteFunctor& g, const FiniteFunctor& f);
FiniteFunctor opposite(const FiniteFunctor& f);
/// Functor from object and morphism names; unnamed identities follow the object map.
FiniteFunctor functor_by_names(const FiniteCategory& s, const FiniteCategory& t,
                               const std::vector<std::pair<std::string, std::string>>& objects,
                               const std::vector<std::pair<std::string, std::string>>& morphisms);
/// The unique functor into the terminal category, and constant functors.
FiniteFunctor constant_functor(const FiniteCategory& s, const FiniteCategory& t, std::size_t object);

/// Functor into a thin category from its object map.
FiniteFunctor monotone(const FiniteCategory& s, const FiniteCategory& t, std::vector<std::size_t> objects);
/// Unit and counit of left -| right between thin categories; throws AdjunctionInvalid.
FiniteAdjunction thin_adjunction(const FiniteFunctor& left, const FiniteFunctor& right);
/// Equality of the data with names ignored.
bool same_shape(const FiniteCategory& a, const FiniteCategory& b);
bool same_shape(const IndexedCategory& a, const IndexedCategory& b);

/// Components indexed by objects of the common source.
struct NatTrans {
  FiniteFunctor from, to;
  std::vector<std::size_t> components;
};
bool is_natural(const NatTrans& t);

/// left: C -> D, right: D -> C, unit c -> RLc in C, counit LRd -> d in D.
struct FiniteAdjunction {
  FiniteFunctor left, right;
  std::vector<std::size_t> unit, counit;
  bool operator==(const FiniteAdjunction& o) const {
    return left == o.left && right == o.right && unit == o.unit && counit == o.counit;
  }
};

/// Naturality of unit and counit and both triangle identities. Throws AdjunctionInvalid.
void validate(const FiniteAdjunction& a);
bool adjunction_axioms(const FiniteAdjunction& a);
FiniteAdjunction identity_adjunction(const FiniteCategory& c);
/// L -| R becomes R^op -| L^op.
FiniteAdjunction dualize(const FiniteAdjunction& a);
/// n : Lc -> d goes to R(n) o unit_c; checks bijectivity for every (c, d).
std::optional<std::pair<std::size_t, std::size_t>> hom_bijection_failure(const FiniteAdjunction& a);
/// Both naturality squares of the hom bijection, over all test morphisms.
bool hom_bijection_natural(const FiniteAdjunction& a);

/// Universal-arrow search: for each d an object Rd with counit LRd -> d.
/// With `vertical_over`, counits must map to identities under that functor on D.
std::optional<FiniteAdjunction> find_right_adjoint(const FiniteFunctor& left,
                                                   const FiniteFunctor* vertical_over = nullptr);
std::optional<FiniteAdjunction> find_left_adjoint(const FiniteFunctor& right,
                                                  const FiniteFunctor* vertical_over = nullptr);

enum class Variance { Contravariant, Covariant };

/// Split indexed category. reindex[f] is f^*: fibre(tgt f) -> fibre(src f) when contravariant,
/// f_!: fibre(src f) -> fibre(tgt f) when covariant.
struct IndexedCategory {
  FiniteCategory base;
  Variance variance = Variance::Contravariant;
  std::vector<FiniteCategory> fibres;
  std::vector<FiniteFunctor> reindex;
  bool operator==(const IndexedCategory& o) const {
    return base == o.base && variance == o.variance && fibres == o.fibres && reindex == o.reindex;
  }
};

void validate(const IndexedCategory& ic);
/// Identities are filled in; every non-identity base morphism needs an entry.
IndexedCategory indexed_category(const FiniteCategory& base, Variance v, std::vector<FiniteCategory> fibres,
                                 const std::vector<std::pair<std::size_t, FiniteFunctor>>& reindex);
/// Same fibre at every object, identity reindexing.
IndexedCategory constant_indexed(const FiniteCategory& base, const FiniteCategory& fibre, Variance v);
IndexedCategory dualize(const IndexedCategory& ic);

/// Grothendieck category. Objects (X, a); morphisms (f, phi) with
/// phi : a -> f^*b (contravariant) or phi : f_!a -> b (covariant).
struct TotalCategory {
  IndexedCategory indexed;
  FiniteCategory cat;
  FiniteFunctor projection;
  std::vector<std::pair<std::size_t, std::size_t>> object_pair;  // (X, a)
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> morphism_key;  // (f, over, phi)
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> key_index;
  std::vector<std::vector<std::size_t>> object_at;  // [X][a]

  bool opfibration() const { return indexed.variance == Variance::Covariant; }
  std::size_t object(std::size_t x, std::size_t a) const { return object_at[x][a]; }
  std::size_t base_of(std::size_t obj) const { return object_pair[obj].first; }
  std::size_t fibre_of(std::size_t obj) const { return object_pair[obj].second; }
  /// (f, phi) as a morphism; `over` is the object the reindexing is applied to.
  std::size_t morphism(std::size_t f, std::size_t over, std::size_t phi) const;
  /// Vertical morphism at X for a fibre morphism.
  std::size_t vertical(std::size_t x, std::size_t phi) const;
  bool is_vertical(std::size_t m) const;
  /// Cocart(f, a) from (X,a), or Cart(f, b) into (Y,b).
  std::size_t lifting(std::size_t f, std::size_t obj) const;
  std::size_t base_part(std::size_t m) const { return std::get<0>(morphism_key[m]); }
  std::size_t fibre_part(std::size_t m) const { return std::get<2>(morphism_key[m]); }
  const FiniteCategory& fibre(std::size_t x) const { return indexed.fibres[x]; }
  const FiniteFunctor& reindex(std::size_t f) const { return indexed.reindex[f]; }
};

TotalCategory grothendieck(const IndexedCategory& ic);
/// The opposite total category, which is grothendieck(dualize(indexed)).
TotalCategory dualize(const TotalCategory& t);
/// Fibres and reindexing read back from the total category and its cleavage.
IndexedCategory extract_indexed(const TotalCategory& t);

/// Universal property of (co)cartesian morphisms with respect to p, checked exhaustively.
bool is_cartesian(const FiniteFunctor& p, std::size_t u);
bool is_cocartesian(const FiniteFunctor& p, std::size_t u);
bool liftings_universal(const TotalCategory& t);

/// mor = vertical o lifting (opfibration) or lifting o vertical (fibration).
struct Factorization {
  std::size_t vertical = npos;
  std::size_t lifting = npos;
  std::size_t candidates = 0;  // vertical morphisms through which mor factors with this lifting
  bool unique() const { return candidates == 1; }
};
Factorization factorize(const TotalCategory& t, std::size_t mor);

/// Total functor of a strict cell from the base functor and the fibre functors.
FiniteFunctor strict_total_functor(const TotalCategory& s, const TotalCategory& t, const FiniteFunctor& f,
                                   const std::vector<FiniteFunctor>& fibres);

/// Restriction of a total functor to the fibre over x, landing over fx.
FiniteFunctor fibre_functor(const TotalCategory& s, const TotalCategory& t, const FiniteFunctor& k, std::size_t x,
                            std::size_t fx);

enum class CellDirection { Fibred, Opfibred };

/// K : source.cat -> target.cat over F : source base -> target base.
struct FibredCell {
  TotalCategory source, target;
  FiniteFunctor k, f;
  CellDirection direction = CellDirection::Opfibred;
};

/// The square commutes and K preserves (co)cartesian morphisms.
bool square_commutes(const FibredCell& c);
bool preserves_liftings(const FibredCell& c);
void validate(const FibredCell& c);
FibredCell identity_cell(const TotalCategory& t);
FibredCell dualize(const FibredCell& c);

/// tau^f_b : (Ff)^* S_Y b -> S_X f^* b for a fibred cell, or
/// sigma^f_a : (Ff)_! K_X a -> K_Y f_! a for an opfibred cell; fibre morphisms over the target.
/// Indexed by the fibre object b (resp. a) the reindexing acts on.
struct ReindexIso {
  std::size_t f;
  std::vector<std::size_t> components;
};
ReindexIso reindex_commute_iso(const FibredCell& c, std::size_t f);
bool reindex_iso_natural(const FibredCell& c, const ReindexIso& iso);

/// (K,F) opfibred with F -| G and, for each Y, (eps_Y)_! K_{GY} -| R_Y.
struct OpfibredAdjointProblem {
  FibredCell cell;
  FiniteAdjunction base;
  std::vector<FiniteAdjunction> fibrewise;
};

/// (S,G) fibred with F -| G and, for each X, L_X -| eta_X^* S_{FX}.
struct FibredAdjointProblem {
  FibredCell cell;
  FiniteAdjunction base;
  std::vector<FiniteAdjunction> fibrewise;
};

FibredAdjointProblem dualize(const OpfibredAdjointProblem& p);
OpfibredAdjointProblem dualize(const FibredAdjointProblem& p);

/// (eps_Y)_! o K_{GY} : C_{GY} -> D_Y.
FiniteFunctor special_functor(const OpfibredAdjointProblem& p, std::size_t y);

struct OmegaComponent {
  std::size_t h, d;       // base morphism h : Y -> W in the target base, d in D_Y
  std::size_t fibre;      // GW
  std::size_t component;  // (Gh)_! R_Y d -> R_W h_! d in C_{GW}
};

/// The synthesized adjoint. For a fibred problem `r` is the left adjoint L and
/// `total` is L -| S; omega is then the dual mate.
struct Synthesis {
  FiniteFunctor r;
  FiniteAdjunction total;
  std::vector<OmegaComponent> omega;
};

/// Throws FibrewiseAdjunctionInvalid(Y) or BijectionFailure(C,D).
Synthesis synthesize_right_adjoint(const OpfibredAdjointProblem& p);
/// Runs synthesize_right_adjoint on the formal opposite.
Synthesis synthesize_left_adjoint(const FibredAdjointProblem& p);
Synthesis dualize(const Synthesis& s);

bool check_omega_invertible(const Synthesis& s, const TotalCategory& c);
/// R preserves cocartesian morphisms, by the universal property.
bool cocartesian_check(const FiniteFunctor& r, const TotalCategory& d, const TotalCategory& c);
bool cartesian_check(const FiniteFunctor& l, const TotalCategory& a, const TotalCategory& b);

/// U R = G V and (unit, eta), (counit, eps) above each other; also V K = F U.
bool check_cat2_adjunction(const TotalCategory& c, const TotalCategory& d, const FiniteAdjunction& total,
                           const FiniteAdjunction& base);

/// Fibrewise (eps_Y)_! K_{GY} -| R_Y read back from an adjunction K -| R over F -| G.
std::vector<FiniteAdjunction> extract_fibrewise(const TotalCategory& c, const TotalCategory& d,
                                                const FiniteAdjunction& total, const FiniteAdjunction& base);

enum class Side { Left, Right };

struct FixedBaseReport {
  Side side = Side::Left;
  /// (f, b, chi) with chi : L_X f^* b -> f^* L_Y b (left) or f^* R_Y b -> R_X f^* b (right).
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> chi;
  bool chi_invertible = false;
  bool plain_adjoint = false;        // left side: synthesized by the dual construction
  bool synthesized_fibred = false;   // left side: synthesized adjoint is cartesian
  bool fibred_adjoint_exists = false;  // universal-arrow search with vertical (co)units, then cartesian test
  bool agree() const {
    return chi_invertible == fibred_adjoint_exists && (side == Side::Right || synthesized_fibred == chi_invertible);
  }
};

/// S : B -> A fibred over the identity; fibrewise[X] is L_X -| S_X or S_X -| R_X.
FixedBaseReport fixed_base_fibred_adjoint_check(const FibredCell& s, const std::vector<FiniteAdjunction>& fibrewise,
                                                Side side);

/// Named instances used by the tests, the CLI corpus and the acceptance suite.
struct CorpusInstance {
  std::string name;
  OpfibredAdjointProblem problem;
  bool omega_invertible = false;
};
std::vector<CorpusInstance> opfibred_corpus();

/// Fibred cells over an identity base with fibrewise adjoints on one side.
struct FixedBaseInstance {
  std::string name;
  FibredCell cell;
  std::vector<FiniteAdjunction> fibrewise;
  Side side = Side::Left;
  bool chi_invertible = false;
};
std::vector<FixedBaseInstance> fixed_base_corpus();

}  // namespace mlab::fibcat
