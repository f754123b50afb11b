#pragma once

#include <filesystem>
#include <map>

#include "json.hpp"

#include "bicat/bidiagram.hpp"
#include "bicat/nerve.hpp"

namespace bicat {

using json = nlohmann::json;

// JSON documents carry a "schema" tag. Identifiers are array indices and
// every table is a list of tuples sorted by key, so writing is
// deterministic and read∘write is the identity on bytes.
//
//   bicategory   objects, one_cells [s,t], two_cells [s,t], id1, id2,
//                lunit, runit, vcomp [β,α,β·α], hcomp1 [g,f,g∘f],
//                hcomp2 [β,α,β∘α], assoc [h,g,f,a], optional labels
//   laxfunctor   source, target (bicategory document or relative path),
//                obj, one, two, unit, comp [g,f,F̂]
//   transformation  kind, source, target (laxfunctor), comp, nat
//   modification    source, target (transformation), comp
//   bidiagram    base, fibers, pull, pull2, chi [g,f,t], chi_unit,
//                xi [β,α,m], xi_id, chi2 [β,α,m], omega [h,g,f,m],
//                gamma, delta; functors and transformations inside carry
//                only their tables, their endpoints being determined by
//                the base
//   simplicial_set  N, count, face, degen, degenerate
// Structural problems raise MalformedTable.

json to_json(const Bicategory& B);
json to_json(const LaxFunctor& F);  // endpoints inline
json to_json(const Transformation& t);
json to_json(const Modification& m);
json to_json(const LaxBidiagram& D);
json to_json(const SimplicialSet& X);
json to_json(const HomologyResult& h);
// Boundary matrices as [row, col, value] triples per degree.
json chain_complex_json(const ChainComplex& C);

std::string dump(const json& j);  // two-space indent, trailing newline

// Reads documents, resolving path references relative to the referring
// file and sharing each referenced file's object.
class Loader {
 public:
  json read_file(const std::filesystem::path& p) const;

  BicatPtr bicategory(const json& j, const std::filesystem::path& dir = {});
  FunPtr functor(const json& j, const std::filesystem::path& dir = {});
  TransPtr transformation(const json& j, const std::filesystem::path& dir = {});
  ModPtr modification(const json& j, const std::filesystem::path& dir = {});
  BidiagramPtr bidiagram(const json& j, const std::filesystem::path& dir = {});
  SimplicialSet simplicial_set(const json& j) const;

 private:
  json resolve(const json& ref, const std::filesystem::path& dir, std::filesystem::path& where) const;
  std::map<std::string, BicatPtr> bicats_;
  std::map<std::string, FunPtr> functors_;
  std::map<std::string, TransPtr> transformations_;
};

std::string schema_of(const json& j);

}  // namespace bicat
