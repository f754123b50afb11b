#include <catch_amalgamated.hpp>

#include "bicat/corpus.hpp"
#include "bicat/grothendieck.hpp"

using namespace bicat;

namespace {

FunPtr functor(const std::string& name) {
  for (const auto& [n, F] : corpus_functors())
    if (n == name) return F;
  FAIL("no functor " << name);
  return nullptr;
}

FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }

void check_valid(const Bicategory& T) {
  Report r = validate_bicategory(T);
  CHECK(r.ok());
  if (!r.ok()) WARN(r.str());
}

}  // namespace

TEST_CASE("Grothendieck construction of hom bidiagrams is a bicategory") {
  for (const auto& [name, B] : corpus_bicategories())
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      GrothPtr G = grothendieck(hom_bidiagram(B, b));
      check_valid(*G->total);
      CHECK(G->input_pseudo);
      CHECK(G->structure_invertible);
    }
}

TEST_CASE("Grothendieck construction of the constant bidiagram is the base") {
  for (const auto& [name, B] : corpus_bicategories()) {
    INFO(name);
    GrothPtr G = grothendieck(constant_bidiagram(B));
    const Bicategory& T = *G->total;
    check_valid(T);
    REQUIRE(T.n_obj() == B->n_obj());
    REQUIRE(T.n_one() == B->n_one());
    REQUIRE(T.n_two() == B->n_two());
    LaxFunctor P = projection(*G);
    // cells are listed in base order, so P is the identity on ids
    for (OneId k = 0; k < T.n_one(); ++k) CHECK(P.one[k] == k);
    for (TwoId c = 0; c < T.n_two(); ++c) CHECK(P.two[c] == c);
    for (auto [k, a] : B->assoc) CHECK(T.assoc.at(k) == a);
    for (OneId f = 0; f < B->n_one(); ++f) {
      CHECK(T.lunit[f] == B->lunit[f]);
      CHECK(T.runit[f] == B->runit[f]);
    }
  }
}

TEST_CASE("hom bidiagram of the suspension of Z/2 gives the indiscrete bicategory on two objects") {
  GrothPtr G = grothendieck(hom_bidiagram(corpus_bicategory("sigma_z2"), 0));
  const Bicategory& T = *G->total;
  CHECK(T.n_obj() == 2);
  for (ObjId x = 0; x < 2; ++x)
    for (ObjId y = 0; y < 2; ++y) CHECK(T.hom(x, y).size() == 1);
  // locally discrete: only identity 2-cells
  CHECK(T.n_two() == T.n_one());
  for (TwoId c = 0; c < T.n_two(); ++c) CHECK(T.is_identity(c));
}

TEST_CASE("identity 1-cells are (chi_a x, 1_a)") {
  for (std::string name : {"sigma_z2_twisted", "signed_poset2", "poset2"}) {
    BicatPtr B = corpus_bicategory(name);
    BidiagramPtr D = hom_bidiagram(B, B->n_obj() - 1);
    GrothPtr G = grothendieck(D);
    for (ObjId c = 0; c < G->total->n_obj(); ++c) {
      auto [x, a] = G->objs[c];
      const auto& o = G->ones[G->total->id1[c]];
      CHECK(o.f == B->id1[a]);
      CHECK(o.y == x);
      CHECK(o.u == D->chi_unit[a]->comp[x]);
    }
  }
}

TEST_CASE("a 2-cell is invertible exactly when both components are") {
  for (const auto& [name, B] : corpus_bicategories())
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      GrothPtr G = grothendieck(hom_bidiagram(B, b));
      for (TwoId c = 0; c < G->total->n_two(); ++c) CHECK(is_iso_two(*G->total, c) == components_invertible(*G, c));
    }
}

TEST_CASE("projection is strict and valid") {
  for (std::string name : {"sigma_z2_twisted", "signed_poset2", "sigma_idem"}) {
    BicatPtr B = corpus_bicategory(name);
    GrothPtr G = grothendieck(hom_bidiagram(B, 0));
    LaxFunctor P = projection(*G);
    CHECK(validate_lax_functor(P).ok());
    CHECK(P.is_strict());
  }
}

TEST_CASE("J is a pseudofunctor onto the fiber and P J is constant") {
  for (std::string name : {"sigma_z2_twisted", "signed_poset2", "sigma_s3", "sigma_idem"}) {
    BicatPtr B = corpus_bicategory(name);
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      GrothPtr G = grothendieck(hom_bidiagram(B, b));
      for (ObjId a = 0; a < B->n_obj(); ++a) {
        INFO(name << " at " << b << ", fiber " << a);
        LaxFunctor J = embedding_J(G, a);
        Report r = validate_lax_functor(J);
        CHECK(r.ok());
        if (!r.ok()) WARN(r.str());
        CHECK(J.is_pseudo());
        LaxFunctor PJ = compose_lax_functors(projection(*G), J);
        for (ObjId o : PJ.obj) CHECK(o == a);
        for (OneId f : PJ.one) CHECK(f == B->id1[a]);
      }
    }
  }
}

TEST_CASE("induced functor is valid and lies over F") {
  for (std::string fn : {"d1", "s0", "trivial_to_z2", "sign", "z2_to_s3", "lax_simplex", "id_sigma_z2_twisted",
                         "twisted_simplex"}) {
    FunPtr F = functor(fn);
    for (ObjId b = 0; b < F->tgt->n_obj(); ++b) {
      INFO(fn << " at " << b);
      GrothPtr GD = grothendieck(hom_bidiagram(F->tgt, b));
      Induced I = induced_functor(GD, F);
      check_valid(*I.src->total);
      Report r = validate_lax_functor(*I.Fbar);
      CHECK(r.ok());
      if (!r.ok()) WARN(r.str());
      LaxFunctor PF = compose_lax_functors(projection(*GD), *I.Fbar);
      LaxFunctor FP = compose_lax_functors(*F, projection(*I.src));
      CHECK(first_difference(PF, FP) == "");
    }
  }
}

TEST_CASE("mediating functor recovers the legs of the square") {
  for (std::string fn : {"d1", "sign", "lax_simplex", "twisted_simplex"}) {
    FunPtr F = functor(fn);
    GrothPtr GD = grothendieck(hom_bidiagram(F->tgt, 0));
    Induced I = induced_functor(GD, F);
    // The square P∘1 = F∘P for the cone (P, F̄) over ∫(DF).
    FunPtr L = share(projection(*I.src));
    FunPtr M = I.Fbar;
    LaxFunctor N = mediating(I, L, M);
    Report r = validate_lax_functor(N);
    CHECK(r.ok());
    if (!r.ok()) WARN(r.str());
    CHECK(first_difference(compose_lax_functors(projection(*I.src), N), *L) == "");
    CHECK(first_difference(compose_lax_functors(*I.Fbar, N), *M) == "");
    CHECK(same_functor(N, identity_functor(I.src->total)));
  }
}

TEST_CASE("mediating functor recovers the embedding of a fiber") {
  for (std::string fn : {"twisted_simplex", "lax_simplex", "sign"}) {
    FunPtr F = functor(fn);
    GrothPtr GD = grothendieck(hom_bidiagram(F->tgt, 0));
    Induced I = induced_functor(GD, F);
    for (ObjId a = 0; a < F->src->n_obj(); ++a) {
      INFO(fn << " fiber " << a);
      LaxFunctor N0 = embedding_J(I.src, a);
      FunPtr L = share(compose_lax_functors(projection(*I.src), N0));
      FunPtr M = share(compose_lax_functors(*I.Fbar, N0));
      LaxFunctor N = mediating(I, L, M);
      CHECK(first_difference(N, N0) == "");
    }
  }
}

TEST_CASE("mediating functor rejects a square that does not commute") {
  FunPtr F = functor("d1");
  GrothPtr GD = grothendieck(hom_bidiagram(F->tgt, 0));
  Induced I = induced_functor(GD, F);
  FunPtr M = I.Fbar;
  // L = identity on the wrong bicategory: F∘L ≠ P∘M
  FunPtr L = share(identity_functor(F->src));
  CHECK_THROWS_AS(mediating(I, L, M), SquareMismatch);
}

TEST_CASE("initial collapse on posets") {
  for (std::string name : {"poset1", "poset2"}) {
    BicatPtr B = corpus_bicategory(name);
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      GrothPtr G = grothendieck(hom_bidiagram(B, b));
      InitialCollapse R = initial_collapse(G);
      CHECK(R.initial == 0);
      Report k = validate_lax_functor(*R.K);
      CHECK(k.ok());
      if (!k.ok()) WARN(k.str());
      Report e = validate_transformation(*R.eps);
      CHECK(e.ok());
      if (!e.ok()) WARN(e.str());
      Report h = validate_transformation(*R.eta);
      CHECK(h.ok());
      if (!h.ok()) WARN(h.str());
    }
  }
}

TEST_CASE("initial collapse over a poset with non-discrete fibers") {
  FunPtr F = functor("twisted_simplex");
  REQUIRE(validate_lax_functor(*F).ok());
  GrothPtr G = grothendieck(precompose(*hom_bidiagram(F->tgt, 0), F));
  check_valid(*G->total);
  InitialCollapse R = initial_collapse(G);
  CHECK(R.initial == 0);
  for (const FunPtr& H : {R.J, R.K}) {
    Report r = validate_lax_functor(*H);
    CHECK(r.ok());
    if (!r.ok()) WARN(r.str());
    CHECK(H->is_pseudo());
  }
  for (const TransPtr& t : {R.eps, R.eta}) {
    Report r = validate_transformation(*t);
    CHECK(r.ok());
    if (!r.ok()) WARN(r.str());
  }
  // ε(x,a) = (1, 0_a)
  const BidiagramPtr& D = G->D;
  for (ObjId c = 0; c < G->total->n_obj(); ++c) {
    const auto& o = G->ones[R.eps->comp[c]];
    CHECK(D->fib(0).is_identity(D->fib(0).id2[o.u]));
    CHECK(o.u == D->fib(0).id1[D->fib(0).src(o.u)]);
    CHECK(o.f == D->B().hom(0, G->objs[c].a)[0]);
  }
}

TEST_CASE("initial collapse needs an initial object") {
  GrothPtr G = grothendieck(hom_bidiagram(corpus_bicategory("signed_poset2"), 0));
  CHECK_THROWS_AS(initial_collapse(G), NoInitialObject);
  GrothPtr S = grothendieck(hom_bidiagram(corpus_bicategory("sigma_z2"), 0));
  CHECK_THROWS_AS(initial_collapse(S), NoInitialObject);
}

TEST_CASE("lax bidiagrams give bicategories with l and r agreeing on units") {
  for (const auto& [name, B] : corpus_bicategories()) {
    GrothPtr G = grothendieck(hom_bidiagram(B, 0));
    const Bicategory& T = *G->total;
    for (ObjId c = 0; c < T.n_obj(); ++c) CHECK(T.lunit[T.id1[c]] == T.runit[T.id1[c]]);
  }
}

TEST_CASE("oplax Grothendieck construction of a constant bidiagram") {
  for (std::string name : {"sigma_z2_twisted", "poset2"}) {
    BicatPtr B = corpus_bicategory(name);
    auto Bc = std::make_shared<const Bicategory>(coop(*B));
    OplaxBidiagram O{"const", B, constant_bidiagram(Bc)};
    CHECK(check_coherence_oplax(O).ok());
    OplaxGrothPtr G = grothendieck_oplax(O);
    check_valid(*G->total);
    CHECK(same_tables(*G->total, *B));
    LaxFunctor P = projection_oplax(*G);
    CHECK(validate_lax_functor(P).ok());
  }
}
