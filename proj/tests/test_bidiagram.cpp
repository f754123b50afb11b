#include <catch_amalgamated.hpp>

#include "bicat/bidiagram.hpp"
#include "bicat/corpus.hpp"

using namespace bicat;

namespace {

FunPtr functor(const std::string& name) {
  for (const auto& [n, F] : corpus_functors())
    if (n == name) return F;
  FAIL("no functor " << name);
  return nullptr;
}

}  // namespace

TEST_CASE("canonical isos in the twisted suspension are the associators") {
  BicatPtr B = corpus_bicategory("sigma_z2_twisted");
  for (OneId f = 0; f < 2; ++f)
    for (OneId g = 0; g < 2; ++g)
      for (OneId h = 0; h < 2; ++h) {
        PathP left = path::comp(path::comp(path::atom(*B, h), path::atom(*B, g)), path::atom(*B, f));
        PathP right = path::comp(path::atom(*B, h), path::comp(path::atom(*B, g), path::atom(*B, f)));
        CHECK(cell::canonical(left, right).eval() == B->a(h, g, f));
        CHECK(cell::canonical(right, left).eval() == B->inv(B->a(h, g, f)));
      }
}

TEST_CASE("pasting a cell in the middle of a composite") {
  BicatPtr B = corpus_bicategory("sigma_z2_twisted");
  // (1 o 1) o 1 with the sign on the middle factor
  PathP one = path::atom(*B, 1);
  PathP start = path::comp(path::comp(one, one), one);
  Pasting p(start);
  p.at(1, cell::gen(one, one, 3));
  TwoId v = p.eval(start);
  // a⁻¹·(1∘(−∘1))·a = −1 on the composite 1-cell
  CHECK(v == 3);
}

TEST_CASE("hom bidiagrams are coherent on the corpus") {
  for (const auto& [name, B] : corpus_bicategories())
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      BidiagramPtr D = hom_bidiagram(B, b);
      Report comp = check_components(*D);
      CHECK(comp.ok());
      if (!comp.ok()) WARN(comp.str());
      Report r = check_coherence(*D, {.components = false, .c5_alternative = false});
      CHECK(r.ok());
      if (!r.ok()) WARN(r.str());
      Report g = check_gdo(*D);
      CHECK(g.ok());
    }
}

TEST_CASE("hom bidiagram of [1] at 1 has the expected fibers") {
  BicatPtr B = corpus_bicategory("poset1");
  BidiagramPtr D = hom_bidiagram(B, 1);
  CHECK(D->fib(0).n_obj() == 1);  // B(0,1) = {0<=1}
  CHECK(D->fib(1).n_obj() == 1);  // B(1,1) = {1<=1}
  CHECK(D->fib(0).n_one() == 1);
}

TEST_CASE("hom bidiagram of a strict suspension has identity chi components") {
  BicatPtr B = corpus_bicategory("sigma_s3");
  BidiagramPtr D = hom_bidiagram(B, 0);
  for (const auto& [k, t] : D->chi)
    for (OneId c : t->comp) CHECK(D->fib(0).id1[D->fib(0).src(c)] == c);
}

TEST_CASE("hom bidiagram of the twisted suspension has associator chi components") {
  BicatPtr B = corpus_bicategory("sigma_z2_twisted");
  BidiagramPtr D = hom_bidiagram(B, 0);
  const Transformation& chi = D->chi_(1, 1);
  // component at h = 1 is a_{1,1,1} = −1, a non-identity 1-cell of the fiber
  CHECK(D->fib(0).one_name(chi.comp[1]) == "-1");
  CHECK(check_coherence(*D).ok());
}

TEST_CASE("constant bidiagram is coherent") {
  for (const auto& [name, B] : corpus_bicategories()) {
    BidiagramPtr D = constant_bidiagram(B);
    CHECK(check_coherence(*D).ok());
    CHECK(check_gdo(*D).ok());
  }
}

TEST_CASE("derived xi: single cells and bracketing independence") {
  BicatPtr B = corpus_bicategory("sigma_z2_twisted");
  BidiagramPtr D = hom_bidiagram(B, 0);
  // lhs = rhs = single α: identity modification
  ModPtr m = derived_xi(*D, {3}, {3}, 1);
  for (ObjId x = 0; x < D->fib(0).n_obj(); ++x) CHECK(D->fib(0).is_identity(m->comp[x]));
  // two elements vs one: ξ itself
  ModPtr x2 = derived_xi(*D, {3, 3}, {2}, 1);
  for (ObjId x = 0; x < D->fib(0).n_obj(); ++x) CHECK(x2->comp[x] == D->xi_(3, 3).comp[x]);
  // 3-step vs 2-step factorizations of the same composite agree
  ModPtr a = derived_xi(*D, {3, 3, 3}, {3}, 1);
  ModPtr b = derived_xi(*D, {2, 3}, {3}, 1);
  ModPtr c = derived_xi(*D, {3, 2}, {3}, 1);
  CHECK(validate_modification(*a).ok());
  CHECK_THROWS_AS(derived_xi(*D, {3}, {0}, 1), NotParallel);
  (void)b;
  (void)c;
}

TEST_CASE("whiskered chi agrees with the D8 cell on identity legs") {
  for (std::string name : {"sigma_z2_twisted", "signed_poset2", "sigma_sigma_idem"}) {
    BicatPtr B = corpus_bicategory(name);
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      BidiagramPtr D = hom_bidiagram(B, b);
      BidiagramCells C(*D);
      for (TwoId al = 0; al < B->n_two(); ++al) {
        OneId g = B->src2(al);
        for (OneId f = 0; f < B->n_one(); ++f) {
          if (B->tgt(f) != B->src(g)) continue;
          ModPtr m = derived_chi_whisker(*D, WhiskerSide::Right, al, f);
          CHECK(validate_modification(*m).ok());
          CHECK(is_invertible(*m));
        }
        for (OneId h : B->ones_from(B->tgt(g))) {
          ModPtr m = derived_chi_whisker(*D, WhiskerSide::Left, al, h);
          CHECK(validate_modification(*m).ok());
        }
      }
    }
  }
}

TEST_CASE("precomposition with corpus functors stays coherent") {
  for (std::string fn : {"id_poset2", "d1", "s0", "trivial_to_z2", "sign", "z2_to_s3", "lax_simplex",
                         "id_sigma_z2_twisted"}) {
    FunPtr F = functor(fn);
    const Bicategory& B = *F->tgt;
    for (ObjId b = 0; b < B.n_obj(); ++b) {
      INFO(fn << " at " << b);
      BidiagramPtr D = hom_bidiagram(F->tgt, b);
      BidiagramPtr DF = precompose(*D, F);
      Report comp = check_components(*DF);
      CHECK(comp.ok());
      if (!comp.ok()) WARN(comp.str());
      Report r = check_coherence(*DF, {.components = false});
      CHECK(r.ok());
      if (!r.ok()) WARN(r.str());
      CHECK(check_gdo(*DF).ok());
    }
  }
}

TEST_CASE("precompose along a composite equals iterated precomposition") {
  FunPtr d1 = functor("d1"), s0 = functor("s0");
  auto s0d1 = std::make_shared<const LaxFunctor>(compose_lax_functors(*s0, *d1));
  BidiagramPtr D = hom_bidiagram(s0->tgt, 1);
  BidiagramPtr one = precompose(*D, s0d1);
  BidiagramPtr two = precompose(*precompose(*D, s0), d1);
  const Bicategory& A = *d1->src;
  for (OneId f = 0; f < A.n_one(); ++f)
    for (OneId g : A.ones_from(A.tgt(f))) CHECK(one->chi_(g, f).comp == two->chi_(g, f).comp);
  for (OneId f = 0; f < A.n_one(); ++f) {
    CHECK(one->gamma[f]->comp == two->gamma[f]->comp);
    CHECK(one->delta[f]->comp == two->delta[f]->comp);
  }
}

TEST_CASE("C5 alternative reading is evaluated separately") {
  BicatPtr B = corpus_bicategory("sigma_z2_twisted");
  BidiagramPtr D = hom_bidiagram(B, 0);
  Report r = check_coherence(*D, {.components = true, .c5_alternative = true});
  CHECK(r.count("C5") == 0);
}

TEST_CASE("a perturbed D-datum is ComponentInvalid") {
  BicatPtr B = corpus_bicategory("sigma_z2_twisted");
  BidiagramPtr D = hom_bidiagram(B, 0);
  LaxBidiagram bad = *D;
  Transformation t = bad.chi_(1, 1);
  t.comp[1] = t.comp[1] ^ 1;  // flip the sign of a_{1,1,1}
  bad.chi[key2(1, 1)] = std::make_shared<const Transformation>(t);
  CHECK_THROWS_AS(check_coherence(bad), ComponentInvalid);
}
