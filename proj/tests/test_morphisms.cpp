#include <catch_amalgamated.hpp>

#include <set>

#include "bicat/corpus.hpp"

using namespace bicat;

namespace {

FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }
TransPtr share(Transformation t) { return std::make_shared<const Transformation>(std::move(t)); }

// Pseudo transformation 1 ⇒ 1 on a suspension of an abelian group, with
// component the 1-cell g and identity naturality cells.
Transformation shift(FunPtr I, OneId g) {
  const Bicategory& B = *I->tgt;
  Transformation t;
  t.name = "shift" + std::to_string(g);
  t.kind = TKind::Pseudo;
  t.F = I;
  t.G = I;
  t.comp = {g};
  for (OneId f = 0; f < B.n_one(); ++f) t.nat.push_back(B.id2[B.comp(g, f)]);
  return t;
}

// ΣZ3 → ΣZ2w, everything to the unit object, constraints from a table.
LaxFunctor collapse(const std::map<std::pair<int, int>, int>& signs) {
  BicatPtr A = corpus_bicategory("sigma_z3"), B = corpus_bicategory("sigma_z2_twisted");
  LaxFunctor F;
  F.name = "collapse";
  F.src = A;
  F.tgt = B;
  F.obj = {0};
  F.one = {0, 0, 0};
  F.two = {0, 0, 0};
  for (int g = 0; g < 3; ++g)
    for (int f = 0; f < 3; ++f) {
      auto it = signs.find({g, f});
      F.comp[key2(g, f)] = it == signs.end() ? 0 : it->second;
    }
  F.unit = {0};
  return F;
}

}  // namespace

TEST_CASE("identity and corpus functors validate") {
  for (const auto& [name, B] : corpus_bicategories()) CHECK(validate_lax_functor(identity_functor(B)).ok());
  for (const auto& [name, F] : corpus_functors()) {
    INFO(name);
    CHECK(validate_lax_functor(*F).ok());
  }
}

TEST_CASE("functor flags") {
  std::map<std::string, FunPtr> fs;
  for (const auto& [name, F] : corpus_functors()) fs[name] = F;
  CHECK(fs["sign"]->is_strict());
  CHECK(fs["lax_simplex"]->is_normal());
  CHECK_FALSE(fs["lax_simplex"]->is_pseudo());
}

TEST_CASE("composition is associative and unital on the nose") {
  std::map<std::string, FunPtr> fs;
  for (const auto& [name, F] : corpus_functors()) fs[name] = F;
  const LaxFunctor& d1 = *fs["d1"];
  const LaxFunctor& s0 = *fs["s0"];
  LaxFunctor I = identity_functor(d1.tgt);
  CHECK(same_functor(compose_lax_functors(I, d1), d1));
  CHECK(same_functor(compose_lax_functors(d1, identity_functor(d1.src)), d1));
  LaxFunctor a = compose_lax_functors(compose_lax_functors(d1, s0), d1);
  LaxFunctor b = compose_lax_functors(d1, compose_lax_functors(s0, d1));
  CHECK(same_functor(a, b));
  CHECK(validate_lax_functor(a).ok());
  LaxFunctor ss = compose_lax_functors(*fs["sign"], *fs["z2_to_s3"]);
  CHECK(ss.is_strict());
  CHECK(ss.one == std::vector<OneId>{0, 1});
}

TEST_CASE("composite with a lax functor stays lax and valid") {
  std::map<std::string, FunPtr> fs;
  for (const auto& [name, F] : corpus_functors()) fs[name] = F;
  LaxFunctor c = compose_lax_functors(*fs["lax_simplex"], *fs["d1"]);
  CHECK(validate_lax_functor(c).ok());
}

TEST_CASE("a perturbed constraint flags exactly the hexagons that contain it") {
  LaxFunctor good = collapse({});
  REQUIRE(validate_lax_functor(good).ok());
  LaxFunctor bad = collapse({{{1, 2}, 1}});
  Report r = validate_lax_functor(bad);
  REQUIRE_FALSE(r.ok());
  const Bicategory& A = *bad.src;
  // instances (h,g,f) using F̂ at (h,g), (hg,f), (g,f) or (h,gf)
  std::set<std::vector<int>> expect;
  for (int h = 0; h < 3; ++h)
    for (int g = 0; g < 3; ++g)
      for (int f = 0; f < 3; ++f) {
        auto is = [](int x, int y) { return x == 1 && y == 2; };
        int hg = A.comp(h, g), gf = A.comp(g, f);
        int uses = is(h, g) + is(hg, f) + is(g, f) + is(h, gf);
        if (uses % 2 == 1) expect.insert({h, g, f});
      }
  std::set<std::vector<int>> got;
  for (const auto& v : r.violations) {
    CHECK(v.axiom == "functor.hexagon");
    got.insert(v.cells);
  }
  CHECK(got == expect);
}

TEST_CASE("pseudo composite of shifts in sigma Z2 multiplies components") {
  BicatPtr B = corpus_bicategory("sigma_z2");
  FunPtr I = share(identity_functor(B));
  for (OneId g = 0; g < 2; ++g)
    for (OneId h = 0; h < 2; ++h) {
      Transformation a = shift(I, g), b = shift(I, h);
      REQUIRE(validate_transformation(a).ok());
      PseudoComposite pc = compose_pseudo_transformations(b, a);
      CHECK(validate_transformation(*pc.composite).ok());
      CHECK(pc.composite->comp[0] == B->comp(h, g));
      CHECK(validate_modification(*pc.interchange).ok());
      CHECK(is_invertible(*pc.interchange));
    }
}

TEST_CASE("composites of identities are identities") {
  BicatPtr B = corpus_bicategory("signed_poset2");
  FunPtr I = share(identity_functor(B));
  Transformation one = identity_transformation(I);
  PseudoComposite pc = compose_pseudo_transformations(one, one);
  Transformation oneI = identity_transformation(pc.composite->F);
  CHECK(pc.composite->comp == oneI.comp);
  CHECK(pc.composite->nat == oneI.nat);
  CHECK(validate_modification(*pc.interchange).ok());
}

TEST_CASE("non-trivial sign transformation on the signed poset") {
  BicatPtr B = corpus_bicategory("signed_poset2");
  FunPtr I = share(identity_functor(B));
  // α̂_f = (−1)^{tgt−src}: additive along composites, trivial on identities
  Transformation t;
  t.name = "sign";
  t.kind = TKind::Pseudo;
  t.F = I;
  t.G = I;
  for (ObjId x = 0; x < B->n_obj(); ++x) t.comp.push_back(B->id1[x]);
  for (OneId f = 0; f < B->n_one(); ++f) {
    int s = (B->tgt(f) - B->src(f)) % 2;
    t.nat.push_back(B->id2[f] + s);
  }
  CHECK(validate_transformation(t).ok());
  Transformation v = vertical_compose(t, t);
  CHECK(validate_transformation(v).ok());
  // twice the sign is trivial up to the unit constraints
  for (OneId f = 0; f < B->n_one(); ++f) CHECK(B->is_identity(v.nat[f]));
  Transformation bad = t;
  bad.nat[B->hom(0, 2)[0]] = B->id2[B->hom(0, 2)[0]] + 1;
  Report r = validate_transformation(bad);
  CHECK(r.count("transformation.composition") > 0);
  auto s = share(t);
  Modification m = identity_modification(s);
  CHECK(validate_modification(m).ok());
}

TEST_CASE("whiskering and coop of transformations validate") {
  BicatPtr B = corpus_bicategory("sigma_z2");
  FunPtr I = share(identity_functor(B));
  Transformation a = shift(I, 1);
  FunPtr II = share(compose_lax_functors(*I, *I));
  CHECK(validate_transformation(whisker_left(I, a, II, II)).ok());
  CHECK(validate_transformation(whisker_right(a, I, II, II)).ok());
  auto Bc = std::make_shared<const Bicategory>(coop(*B));
  FunPtr Ic = share(coop_functor(*I, Bc, Bc));
  CHECK(validate_lax_functor(*Ic).ok());
  CHECK(validate_transformation(coop_transformation(a, Ic, Ic)).ok());
}

TEST_CASE("mistyped component data raise SourceTargetMismatch") {
  BicatPtr B = corpus_bicategory("poset2");
  LaxFunctor F = identity_functor(B);
  F.one[B->hom(0, 1)[0]] = B->hom(1, 2)[0];
  CHECK_THROWS_AS(validate_lax_functor(F), SourceTargetMismatch);
}
