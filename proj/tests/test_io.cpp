#include <catch_amalgamated.hpp>

#include <fstream>

#include "bicat/fiber.hpp"
#include "bicat/io.hpp"

using namespace bicat;
namespace fs = std::filesystem;

namespace {

FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "bicat_io_test";
  fs::create_directories(d);
  return d / name;
}

void write(const fs::path& p, const json& j) { std::ofstream(p) << dump(j); }

}  // namespace

TEST_CASE("bicategories round-trip bit-exactly") {
  for (const auto& [name, B] : corpus_bicategories()) {
    INFO(name);
    json j = to_json(*B);
    Loader L;
    BicatPtr B2 = L.bicategory(j);
    CHECK(same_tables(*B, *B2));
    CHECK(dump(to_json(*B2)) == dump(j));
  }
}

TEST_CASE("constructed bicategories round-trip") {
  BicatPtr sp2 = corpus_bicategory("signed_poset2");
  for (BicatPtr B : {grothendieck(hom_bidiagram(sp2, 1))->total, comma(sp2, 2)->bic,
                     grothendieck_oplax(fiber_bidiagram(corpus_functors()[0].functor)->O)->total}) {
    json j = to_json(*B);
    Loader L;
    CHECK(dump(to_json(*L.bicategory(j))) == dump(j));
  }
}

TEST_CASE("functors round-trip with their endpoints") {
  for (const auto& [name, F] : corpus_functors()) {
    INFO(name);
    json j = to_json(*F);
    Loader L;
    FunPtr F2 = L.functor(j);
    CHECK(dump(to_json(*F2)) == dump(j));
    CHECK(same_tables(*F->src, *F2->src));
    CHECK(validate_lax_functor(*F2).ok() == validate_lax_functor(*F).ok());
  }
}

TEST_CASE("transformations and modifications round-trip") {
  for (std::string name : {"poset2", "sigma_z2", "sigma_z2_twisted"}) {
    CommaContraction R = comma_contraction(corpus_bicategory(name), 0);
    json j = to_json(*R.contraction);
    Loader L;
    TransPtr t = L.transformation(j);
    CHECK(dump(to_json(*t)) == dump(j));
    CHECK(validate_transformation(*t).ok());
    Modification m = identity_modification(R.contraction);
    json mj = to_json(m);
    ModPtr m2 = L.modification(mj);
    CHECK(dump(to_json(*m2)) == dump(mj));
    CHECK(validate_modification(*m2).ok());
  }
}

TEST_CASE("bidiagrams round-trip and stay coherent") {
  std::vector<BidiagramPtr> Ds;
  for (std::string name : {"poset2", "sigma_z2_twisted", "signed_poset2", "sigma_idem"}) {
    BicatPtr B = corpus_bicategory(name);
    Ds.push_back(hom_bidiagram(B, 0));
    Ds.push_back(constant_bidiagram(B));
  }
  for (const auto& [name, F] : corpus_functors())
    if (name == "sign" || name == "twisted_simplex") Ds.push_back(fiber_bidiagram(F)->O.dual);
  for (const auto& D : Ds) {
    INFO(D->name);
    json j = to_json(*D);
    Loader L;
    BidiagramPtr D2 = L.bidiagram(j);
    CHECK(dump(to_json(*D2)) == dump(j));
    CHECK(check_components(*D2).ok());
    CHECK(check_coherence(*D2).ok());
  }
}

TEST_CASE("simplicial sets and homology serialize deterministically") {
  NervePtr X = nerve(corpus_bicategory("sigma_z2"), {.N = 3});
  json j = to_json(X->X);
  Loader L;
  SimplicialSet Y = L.simplicial_set(j);
  CHECK(dump(to_json(Y)) == dump(j));
  CHECK(check_simplicial_identities(Y).ok());
  CHECK(dump(to_json(homology(Y, 2))) == dump(to_json(homology(X->X, 2))));
  json c = chain_complex_json(normalized_chains(Y));
  CHECK(c["schema"] == "chain_complex");
}

TEST_CASE("path references resolve relative to the referring file and are shared") {
  FunPtr F;
  for (const auto& [name, G] : corpus_functors())
    if (name == "sign") F = G;
  fs::path dir = scratch("refs");
  fs::create_directories(dir / "cats");
  write(dir / "cats" / "src.json", to_json(*F->src));
  write(dir / "cats" / "tgt.json", to_json(*F->tgt));
  json j = to_json(*F);
  j["source"] = "cats/src.json";
  j["target"] = "cats/tgt.json";
  write(dir / "f.json", j);
  Loader L;
  FunPtr F2 = L.functor(L.read_file(dir / "f.json"), dir);
  CHECK(validate_lax_functor(*F2).ok());
  CHECK(F2->src == L.bicategory(json("cats/src.json"), dir));
}

TEST_CASE("malformed documents raise MalformedTable") {
  json B = to_json(*corpus_bicategory("poset1"));
  Loader L;
  SECTION("missing field") {
    json j = B;
    j.erase("assoc");
    CHECK_THROWS_AS(L.bicategory(j), MalformedTable);
  }
  SECTION("wrong schema") {
    json j = B;
    j["schema"] = "laxfunctor";
    CHECK_THROWS_AS(L.bicategory(j), MalformedTable);
  }
  SECTION("malformed tuple") {
    json j = B;
    j["vcomp"][0] = json::array({0, 1});
    CHECK_THROWS_AS(L.bicategory(j), MalformedTable);
  }
  SECTION("functor index out of range") {
    FunPtr F = corpus_functors()[0].functor;
    json j = to_json(*F);
    j["obj"][0] = 99;
    CHECK_THROWS_AS(L.functor(j), MalformedTable);
  }
  SECTION("functor table of the wrong length") {
    FunPtr F = corpus_functors()[0].functor;
    json j = to_json(*F);
    j["two"].erase(0);
    CHECK_THROWS_AS(L.functor(j), MalformedTable);
  }
  SECTION("unparsable file") {
    fs::path p = scratch("broken.json");
    std::ofstream(p) << "{\"schema\": ";
    CHECK_THROWS_AS(L.read_file(p), MalformedTable);
  }
  SECTION("simplicial set face leaving the set") {
    json j = to_json(nerve(corpus_bicategory("poset1"), {.N = 2})->X);
    j["face"][1][0][0] = 42;
    CHECK_THROWS_AS(L.simplicial_set(j), MalformedTable);
  }
}
