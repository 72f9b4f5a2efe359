#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlab/fibcat.hpp"
#include "mlab/hopf.hpp"
#include "mlab/measuring.hpp"

namespace mlab::io {

using json = nlohmann::ordered_json;
using algcore::Algebra;
using algcore::Coalgebra;
using exactlin::FieldSpec;
using exactlin::Mat;
using exactlin::Vec;
namespace fs = std::filesystem;

/// Structure files carry "kind" and "field"; nested structures are inline objects
/// or relative paths resolved against the directory of the enclosing file.
struct Document {
  std::string kind;
  json data;
  fs::path path;
  fs::path base() const { return path.parent_path(); }
};

Document load_document(const fs::path& p);
json parse_json_file(const fs::path& p);
void write_json_file(const fs::path& p, const json& j);
/// FNV-1a of the canonical dump.
std::uint64_t content_hash(const json& j);
std::string hex64(std::uint64_t h);

json scalar_json(const FieldSpec& f, const exactlin::Scalar& x);
json mat_json(const Mat& m);
Mat mat_from_json(const FieldSpec& f, const json& j);
json vec_json(const FieldSpec& f, const Vec& v);
Vec vec_from_json(const FieldSpec& f, const json& j);

/// Structure constants as entries [inputs..., outputs..., "c"] in mixed radix.
json map_entries(const Mat& m, const std::vector<std::size_t>& in, const std::vector<std::size_t>& out);
Mat map_from_entries(const FieldSpec& f, const json& j, const std::vector<std::size_t>& in,
                     const std::vector<std::size_t>& out, const char* what);

json to_json(const Algebra& a);
json to_json(const Coalgebra& c);
json to_json(const modcomod::ModuleStructure& m);
json to_json(const modcomod::ComoduleStructure& x);
json to_json(const hopf::Bimonoid& h);
json to_json(const hopf::ModuleComonoid& m);
json to_json(const hopf::ComoduleMonoid& s);
json to_json(const hopf::HopfModule& n);
json to_json(const hopf::ModuleMonoid& n);

/// Readers return the top-level structure unchecked; nested structures are validated.
Algebra algebra_from_json(const json& j, const fs::path& base = {});
Coalgebra coalgebra_from_json(const json& j, const fs::path& base = {});
modcomod::ModuleStructure module_from_json(const json& j, const fs::path& base = {});
modcomod::ComoduleStructure comodule_from_json(const json& j, const fs::path& base = {});
hopf::Bimonoid bimonoid_from_json(const json& j, const fs::path& base = {});
hopf::ModuleComonoid module_comonoid_from_json(const json& j, const fs::path& base = {});
hopf::ComoduleMonoid comodule_monoid_from_json(const json& j, const fs::path& base = {});
hopf::HopfModule hopf_module_from_json(const json& j, const fs::path& base = {});
hopf::ModuleMonoid module_monoid_from_json(const json& j, const fs::path& base = {});

json to_json(const algcore::AlgebraMorphism& f);
json to_json(const algcore::CoalgebraMorphism& g);
json to_json(const measuring::MeasuringMap& m);
algcore::AlgebraMorphism algebra_morphism_from_json(const json& j, const fs::path& base = {});
algcore::CoalgebraMorphism coalgebra_morphism_from_json(const json& j, const fs::path& base = {});
/// psi entries are [c, a, b, "v"]: psi(c)(e_a) has coefficient v on e_b.
measuring::MeasuringMap measuring_from_json(const json& j, const fs::path& base = {});
/// Candidate algebra maps A -> B, each a list of entries [a, b, "v"].
std::vector<Mat> hints_from_json(const json& j, const Algebra& a, const Algebra& b);

/// Truncation bundles.
json to_json(const measuring::TruncatedMeasuringComonoid& p);
measuring::TruncatedMeasuringComonoid comonoid_bundle_from_json(const json& j);
json to_json(const measuring::TruncatedMeasuringComodule& q);
measuring::TruncatedMeasuringComodule comodule_bundle_from_json(const json& j);

// Finite categories. Categories are object/morphism lists with a composition table,
// or {"preorder": {"objects": [...], "arrows": [[a, b], ...]}}.
json to_json(const fibcat::FiniteCategory& c);
fibcat::FiniteCategory category_from_json(const json& j);
/// {"objects": {...}, "morphisms": {...}} by name; identities may be omitted.
json functor_map_json(const fibcat::FiniteFunctor& f);
fibcat::FiniteFunctor functor_from_json(const fibcat::FiniteCategory& s, const fibcat::FiniteCategory& t,
                                        const json& j);
json to_json(const fibcat::FiniteAdjunction& a);
fibcat::FiniteAdjunction adjunction_from_json(const fibcat::FiniteCategory& c, const fibcat::FiniteCategory& d,
                                              const json& j);
json to_json(const fibcat::IndexedCategory& ic);
fibcat::IndexedCategory indexed_from_json(const json& j);

/// A fincat_instance: an indexed category alone, an adjoint problem, or a fixed-base problem.
struct FincatInstance {
  std::string name;
  fibcat::IndexedCategory indexed;  // source of the cell when a cell is present
  bool has_cell = false;
  fibcat::FibredCell cell;
  bool has_base = false;
  fibcat::FiniteAdjunction base;
  std::vector<fibcat::FiniteAdjunction> fibrewise;
  bool fixed_base = false;
  fibcat::Side side = fibcat::Side::Left;
  json expect;
};
json to_json(const FincatInstance& inst);
FincatInstance fincat_from_json(const json& j);
FincatInstance dualize(const FincatInstance& inst);
FincatInstance instance_of(const fibcat::CorpusInstance& c);
FincatInstance instance_of(const fibcat::FixedBaseInstance& c);

}  // namespace mlab::io
