// Writes the standard corpus and its manifest into the given directory.

#include <iostream>

#include "mlab/io.hpp"

using namespace mlab;
using algcore::Algebra;
using algcore::Coalgebra;
using exactlin::Mat;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Writer {
  fs::path root;
  json entries = json::array();

  void put(const std::string& rel, json doc) {
    io::write_json_file(root / rel, doc);
    entries.push_back(json{{"path", rel}, {"kind", doc["kind"]}, {"name", doc.value("name", std::string())}});
  }
};

/// Replaces an inline nested structure by a path relative to the file being written.
json ref(json doc, const char* key, const std::string& rel_from_file) {
  doc[key] = rel_from_file;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make-corpus <dir>\n";
    return 2;
  }
  Writer w{argv[1]};
  const auto F2 = exactlin::FieldSpec::prime(2);
  const auto F3 = exactlin::FieldSpec::prime(3);
  const auto Q = exactlin::FieldSpec::rationals();

  const Algebra k2 = algcore::ground_algebra(F2);
  const Algebra dual_numbers = algcore::truncated_polynomial(F2, 2);
  const Algebra f2c2 = algcore::group_algebra_cyclic(F2, 2);
  w.put("algebras/k_f2.json", io::to_json(k2));
  w.put("algebras/dual_numbers.json", io::to_json(dual_numbers));
  w.put("algebras/f2_c2.json", io::to_json(f2c2));
  w.put("algebras/f2_x3.json", io::to_json(algcore::truncated_polynomial(F2, 3)));
  w.put("algebras/f3_c3.json", io::to_json(algcore::group_algebra_cyclic(F3, 3)));
  w.put("algebras/q_c2.json", io::to_json(algcore::group_algebra_cyclic(Q, 2)));
  w.put("algebras/m2_q.json", io::to_json(algcore::matrix_algebra(Q, 2)));

  w.put("coalgebras/k_f2.json", io::to_json(algcore::ground_coalgebra(F2)));
  w.put("coalgebras/dual_numbers_dual.json", io::to_json(algcore::dual_coalgebra(dual_numbers)));
  w.put("coalgebras/grouplike2_f2.json", io::to_json(algcore::grouplike_coalgebra(F2, 2)));
  w.put("coalgebras/divided_power2_f2.json", io::to_json(algcore::divided_power_coalgebra(F2, 2)));
  w.put("coalgebras/m2_q_dual.json", io::to_json(algcore::matrix_coalgebra(Q, 2)));

  w.put("modules/dual_numbers_regular.json",
        ref(io::to_json(modcomod::regular_module(dual_numbers)), "over", "../algebras/dual_numbers.json"));
  w.put("modules/k_f2.json", ref(io::to_json(modcomod::trivial_module(F2, 1)), "over", "../algebras/k_f2.json"));
  w.put("modules/f2_c2_regular.json",
        ref(io::to_json(modcomod::regular_module(f2c2)), "over", "../algebras/f2_c2.json"));
  w.put("comodules/dual_numbers_dual_regular.json",
        ref(io::to_json(modcomod::regular_comodule(algcore::dual_coalgebra(dual_numbers))), "over",
            "../coalgebras/dual_numbers_dual.json"));

  algcore::AlgebraMorphism aug{dual_numbers, k2, Mat::from_ints(F2, {{1, 0}})};
  w.put("morphisms/dual_numbers_augmentation.json",
        ref(ref(io::to_json(aug), "source", "../algebras/dual_numbers.json"), "target", "../algebras/k_f2.json"));
  const Coalgebra g2 = algcore::grouplike_coalgebra(F2, 2);
  algcore::CoalgebraMorphism fold{g2, algcore::ground_coalgebra(F2), Mat::from_ints(F2, {{1, 1}})};
  w.put("morphisms/grouplike2_fold.json", ref(ref(io::to_json(fold), "source", "../coalgebras/grouplike2_f2.json"),
                                              "target", "../coalgebras/k_f2.json"));
  w.put("measurings/dual_numbers_evaluation.json", io::to_json(measuring::finite_dual(dual_numbers).evaluation));

  const hopf::Bimonoid h = hopf::group_bimonoid_cyclic(F2, 2);
  w.put("hopf/f2_c2_bimonoid.json", io::to_json(h));
  w.put("hopf/f2_c2_module_comonoid.json",
        ref(io::to_json(hopf::regular_module_comonoid(h)), "h", "f2_c2_bimonoid.json"));
  w.put("hopf/f2_c2_comodule_monoid.json",
        ref(io::to_json(hopf::regular_comodule_monoid(h)), "h", "f2_c2_bimonoid.json"));
  w.put("hopf/f2_c2_hopf_module.json",
        ref(ref(io::to_json(hopf::regular_hopf_module(h)), "s", "f2_c2_comodule_monoid.json"), "m",
            "f2_c2_module_comonoid.json"));
  w.put("hopf/k_module_monoid.json",
        ref(io::to_json(hopf::regular_module_monoid(k2)), "a", "../algebras/k_f2.json"));
  w.put("hopf/dual_numbers_module_monoid.json",
        ref(io::to_json(hopf::regular_module_monoid(dual_numbers)), "a", "../algebras/dual_numbers.json"));

  for (const auto& c : fibcat::opfibred_corpus()) {
    const auto inst = io::instance_of(c);
    w.put("fincat/" + c.name + ".json", io::to_json(inst));
    w.put("fincat/" + c.name + "_dual.json", io::to_json(io::dualize(inst)));
  }
  for (const auto& c : fibcat::fixed_base_corpus()) w.put("fincat/" + c.name + ".json", io::to_json(io::instance_of(c)));

  io::write_json_file(w.root / "manifest.json", json{{"corpus", w.entries}});
  std::cerr << "wrote " << w.entries.size() << " documents to " << w.root << "\n";
  return 0;
}
