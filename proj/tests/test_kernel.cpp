#include <catch_amalgamated.hpp>

#include <random>

#include "bicat/corpus.hpp"

using namespace bicat;

TEST_CASE("every corpus bicategory validates, including derived triangles") {
  for (const auto& [name, B] : corpus_bicategories()) {
    INFO(name);
    Report r = validate_bicategory(*B);
    CHECK(r.ok());
    if (!r.ok()) WARN(r.str());
  }
}

TEST_CASE("r_1 equals l_1 in every corpus bicategory") {
  for (const auto& [name, B] : corpus_bicategories())
    for (ObjId a = 0; a < B->n_obj(); ++a) CHECK(B->r(B->id1[a]) == B->l(B->id1[a]));
}

TEST_CASE("eval of simple terms") {
  BicatPtr B = corpus_bicategory("sigma_z2");
  OneId g = 1;
  CHECK(eval_one(*B, term::comp(term::gen(g), term::gen(g))) == B->id1[0]);
  CHECK(eval_two(*B, term::id2(term::gen(g))) == B->id2[g]);
  OneT one = term::id1(0);
  TwoT t = term::vc(term::runit(one), term::runit_inv(one));
  OneId oo = B->comp(B->id1[0], B->id1[0]);
  CHECK(eval_two(*B, t) == B->id2[oo]);
}

TEST_CASE("ill-typed terms raise IllTypedTerm") {
  BicatPtr B = corpus_bicategory("poset2");
  // 0<=1 composed after 1<=2 in the wrong order
  OneId f01 = B->hom(0, 1)[0], f12 = B->hom(1, 2)[0];
  CHECK_THROWS_AS(eval_one(*B, term::comp(term::gen(f01), term::gen(f12))), IllTypedTerm);
  CHECK(eval_one(*B, term::comp(term::gen(f12), term::gen(f01))) == B->hom(0, 2)[0]);
}

TEST_CASE("vertical re-association does not change the value") {
  BicatPtr B = corpus_bicategory("sigma_z2_twisted");
  // 2-cells on the 1-cell 1: +1 (id 2) and -1 (id 3)
  TwoT m = term::two(3), p = term::two(2);
  CHECK(eval_two(*B, term::vc(m, term::vc(m, p))) == eval_two(*B, term::vc(term::vc(m, m), p)));
  CHECK(eval_two(*B, term::vc(m, m)) == 2);
}

TEST_CASE("is_iso_two detects non-invertible cells") {
  BicatPtr B = corpus_bicategory("sigma_sigma_idem");
  CHECK(is_iso_two(*B, 0));
  CHECK_FALSE(is_iso_two(*B, 1));
  for (const auto& [name, C] : corpus_bicategories())
    for (auto [k, c] : C->assoc) CHECK(is_iso_two(*C, c));
}

TEST_CASE("the twisted associator is not trivial") {
  BicatPtr B = corpus_bicategory("sigma_z2_twisted");
  CHECK(B->a(1, 1, 1) == 3);
  CHECK(B->a(1, 0, 1) == B->id2[0]);
}

TEST_CASE("duals of corpus bicategories validate") {
  for (const auto& [name, B] : corpus_bicategories()) {
    INFO(name);
    CHECK(validate_bicategory(op(*B)).ok());
    CHECK(validate_bicategory(co(*B)).ok());
    CHECK(validate_bicategory(coop(*B)).ok());
    CHECK(same_tables(coop(coop(*B)), *B));
  }
}

TEST_CASE("a single pentagon perturbation is reported once with its tuple") {
  // In the signed poset [4] the associator a_{2<=3,1<=2,0<=1} lies in one
  // pentagon without identity 1-cells; the identity-padded ones cancel.
  Bicategory B = signed_poset(4);
  auto e = [&](int i, int j) { return B.hom(i, j)[0]; };
  REQUIRE(validate_bicategory(B).ok());
  TwoId a = B.a(e(2, 3), e(1, 2), e(0, 1));
  B.set_assoc(e(2, 3), e(1, 2), e(0, 1), a + 1);
  B.finalize();
  Report r = validate_bicategory(B);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].axiom == "pentagon");
  CHECK(r.violations[0].cells == std::vector<int>{e(3, 4), e(2, 3), e(1, 2), e(0, 1)});
}

TEST_CASE("pentagon mutations in the twisted suspension touch only the pentagon") {
  // Flipping a_{1,1,1} alone yields the trivial cocycle, still coherent.
  Bicategory C = *corpus_bicategory("sigma_z2_twisted");
  C.set_assoc(1, 1, 1, 2);
  C.finalize();
  CHECK(validate_bicategory(C).ok());
  // Flipping a_{1,1,0} breaks the cocycle condition.
  Bicategory B = *corpus_bicategory("sigma_z2_twisted");
  B.set_assoc(1, 1, 0, 1);
  B.finalize();
  Report r = validate_bicategory(B, {.derived = false});
  CHECK(r.count("pentagon") >= 1);
  for (const auto& v : r.violations) CHECK(v.axiom == "pentagon");
}

TEST_CASE("missing table entries are malformed") {
  Bicategory B = *corpus_bicategory("sigma_z2");
  B.hcomp1.erase(key2(1, 1));
  CHECK_THROWS_AS(B.finalize(), MalformedTable);
}

TEST_CASE("mistyped composite is malformed") {
  Bicategory B = *corpus_bicategory("poset2");
  OneId f01 = B.hom(0, 1)[0], f12 = B.hom(1, 2)[0];
  B.set_hcomp1(f12, f01, f01);
  CHECK_THROWS_AS(B.finalize(), MalformedTable);
}
