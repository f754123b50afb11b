#include <catch_amalgamated.hpp>

#include "bicat/fiber.hpp"

using namespace bicat;

namespace {

FunPtr functor(const std::string& name) {
  for (const auto& [n, F] : corpus_functors())
    if (n == name) return F;
  FAIL("no functor " << name);
  return nullptr;
}

FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }

void check_ok(const Report& r) {
  CHECK(r.ok());
  if (!r.ok()) WARN(r.str());
}

bool indiscrete_category(const Bicategory& T) {
  for (ObjId x = 0; x < T.n_obj(); ++x)
    for (ObjId y = 0; y < T.n_obj(); ++y)
      if (T.hom(x, y).size() != 1) return false;
  for (TwoId c = 0; c < T.n_two(); ++c)
    if (!T.is_identity(c)) return false;
  return true;
}

const std::vector<std::string> kFunctors = {"d1", "s0", "trivial_to_z2", "sign", "z2_to_s3", "lax_simplex",
                                            "id_sigma_z2_twisted", "twisted_simplex"};

}  // namespace

TEST_CASE("comma of [1] at 1 has two objects and one non-identity arrow") {
  FiberPtr C = comma(corpus_bicategory("poset1"), 1);
  const Bicategory& T = *C->bic;
  check_ok(validate_bicategory(T));
  CHECK(T.n_obj() == 2);
  int non_id = 0;
  for (OneId k = 0; k < T.n_one(); ++k)
    if (T.id1[T.src(k)] != k) ++non_id;
  CHECK(non_id == 1);
  CHECK(T.n_two() == T.n_one());
}

TEST_CASE("comma of the suspension of Z/3 is indiscrete on three objects") {
  FiberPtr C = comma(corpus_bicategory("sigma_z3"), 0);
  check_ok(validate_bicategory(*C->bic));
  CHECK(C->bic->n_obj() == 3);
  CHECK(indiscrete_category(*C->bic));
}

TEST_CASE("identity 1-cell of (f,a) has fiber component r inverse then 1 o F-hat") {
  for (std::string fn : {"lax_simplex", "twisted_simplex", "sign"}) {
    FunPtr F = functor(fn);
    const Bicategory& B = *F->tgt;
    for (ObjId b = 0; b < B.n_obj(); ++b) {
      FiberPtr H = homotopy_fiber(F, b);
      for (ObjId c = 0; c < H->bic->n_obj(); ++c) {
        auto [f, a] = H->objs[c];
        const auto& o = H->ones[H->bic->id1[c]];
        CHECK(o.beta == B.vc(B.whisker_l(f, F->unit[a]), B.inv(B.r(f))));
        CHECK(o.u == F->src->id1[a]);
        CHECK(o.f2 == f);
      }
    }
  }
}

TEST_CASE("phi: 1 -> Z/2 has a discrete fiber on two objects") {
  FiberPtr H = homotopy_fiber(functor("trivial_to_z2"), 0);
  const Bicategory& T = *H->bic;
  check_ok(validate_bicategory(T));
  CHECK(T.n_obj() == 2);
  CHECK(T.n_one() == 2);
  CHECK(T.n_two() == 2);
  for (OneId k = 0; k < T.n_one(); ++k) CHECK(T.id1[T.src(k)] == k);
}

TEST_CASE("identity on the suspension of Z/2 has an indiscrete fiber on two objects") {
  FiberPtr H = homotopy_fiber(functor("id_sigma_z2"), 0);
  check_ok(validate_bicategory(*H->bic));
  CHECK(H->bic->n_obj() == 2);
  CHECK(indiscrete_category(*H->bic));
}

TEST_CASE("homotopy fibers are bicategories whose 2-cells satisfy the admission condition") {
  for (const auto& fn : kFunctors) {
    FunPtr F = functor(fn);
    for (ObjId b = 0; b < F->tgt->n_obj(); ++b) {
      INFO(fn << " at " << b);
      FiberPtr H = homotopy_fiber(F, b);
      check_ok(validate_bicategory(*H->bic));
      check_ok(check_fiber_tables(*H));
    }
  }
  for (const auto& [name, B] : corpus_bicategories())
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      FiberPtr C = comma(B, b);
      check_ok(validate_bicategory(*C->bic));
      check_ok(check_fiber_tables(*C));
    }
}

TEST_CASE("direct and generic homotopy fibers are isomorphic") {
  int pairs = 0;
  for (const auto& fn : kFunctors) {
    FunPtr F = functor(fn);
    for (ObjId b = 0; b < F->tgt->n_obj(); ++b) {
      INFO(fn << " at " << b);
      FiberRoutes R = fiber_routes(homotopy_fiber(F, b));
      check_ok(R.report);
      check_ok(validate_lax_functor(*R.iso));
      ++pairs;
    }
  }
  for (const auto& [name, B] : corpus_bicategories())
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      FiberRoutes R = fiber_routes(comma(B, b));
      check_ok(R.report);
      ++pairs;
    }
  CHECK(pairs >= 5);
}

TEST_CASE("a mutated table breaks the route isomorphism") {
  FiberPtr H = homotopy_fiber(functor("id_sigma_z2_twisted"), 0);
  FiberRoutes R = fiber_routes(H);
  REQUIRE(R.report.ok());
  LaxFunctor I = *R.iso;
  // send a non-identity 2-cell to the image of an identity
  const Bicategory& T = *H->bic;
  bool changed = false;
  for (TwoId c = 0; c < T.n_two() && !changed; ++c)
    if (!T.is_identity(c)) {
      I.two[c] = I.two[T.id2[T.src2(c)]];
      changed = true;
    }
  REQUIRE(changed);
  CHECK_FALSE(check_isomorphism(I).ok());
}

TEST_CASE("projection of a homotopy fiber is strict and valid") {
  for (const auto& fn : kFunctors) {
    FunPtr F = functor(fn);
    LaxFunctor P = fiber_projection(homotopy_fiber(F, 0));
    check_ok(validate_lax_functor(P));
    CHECK(P.is_strict());
  }
}

TEST_CASE("pushforward is a strict 2-functor") {
  for (const auto& fn : kFunctors) {
    FunPtr F = functor(fn);
    const Bicategory& B = *F->tgt;
    std::vector<FiberPtr> fib;
    for (ObjId b = 0; b < B.n_obj(); ++b) fib.push_back(homotopy_fiber(F, b));
    for (OneId p = 0; p < B.n_one(); ++p) {
      INFO(fn << " along " << B.one_name(p));
      LaxFunctor P = pushforward(fib[B.src(p)], fib[B.tgt(p)], p);
      check_ok(validate_lax_functor(P));
      CHECK(P.is_strict());
    }
  }
}

TEST_CASE("pushforward along an identity maps f to 1 o f") {
  FunPtr F = functor("twisted_simplex");
  const Bicategory& B = *F->tgt;
  FiberPtr H = homotopy_fiber(F, 0);
  LaxFunctor P = pushforward(H, H, B.id1[0]);
  for (ObjId c = 0; c < H->bic->n_obj(); ++c) {
    auto [f, a] = H->objs[c];
    CHECK(H->objs[P.obj[c]].f == B.comp(B.id1[0], f));
    CHECK(H->objs[P.obj[c]].a == a);
  }
}

TEST_CASE("pushforward along the generator swaps the fiber of 1 -> Z/2") {
  FunPtr F = functor("trivial_to_z2");
  FiberPtr H = homotopy_fiber(F, 0);
  const Bicategory& B = *F->tgt;
  OneId g = B.id1[0] == 0 ? 1 : 0;
  LaxFunctor P = pushforward(H, H, g);
  CHECK(P.obj[0] == 1);
  CHECK(P.obj[1] == 0);
  check_ok(check_isomorphism(P));
}

TEST_CASE("fiber comparison F-bar_b is valid") {
  for (const auto& fn : kFunctors) {
    FunPtr F = functor(fn);
    for (ObjId b = 0; b < F->tgt->n_obj(); ++b) {
      INFO(fn << " at " << b);
      LaxFunctor C = fiber_comparison(homotopy_fiber(F, b), comma(F->tgt, b));
      check_ok(validate_lax_functor(C));
    }
  }
}

TEST_CASE("fiber bidiagram data validate in their own orientation") {
  for (const auto& fn : kFunctors) {
    INFO(fn);
    FiberBidiagramPtr FB = fiber_bidiagram(functor(fn));
    for (const auto& t : FB->push2) check_ok(validate_transformation(*t));
    for (const auto& [k, t] : FB->chi) check_ok(validate_transformation(*t));
    for (const auto& t : FB->chi_unit) check_ok(validate_transformation(*t));
  }
}

TEST_CASE("sigma_* has component (sigma o f, 1_a)") {
  FunPtr F = functor("twisted_simplex");
  const Bicategory& A = *F->src;
  const Bicategory& B = *F->tgt;
  FiberBidiagramPtr FB = fiber_bidiagram(F);
  for (TwoId s = 0; s < B.n_two(); ++s) {
    OneId p = B.src2(s), p2 = B.tgt2(s);
    const HomotopyFiber& Sb = *FB->fiber[B.src(p)];
    const HomotopyFiber& Tb = *FB->fiber[B.tgt(p)];
    for (ObjId x = 0; x < Sb.bic->n_obj(); ++x) {
      auto [f, a] = Sb.objs[x];
      const auto& o = Tb.ones[FB->push2[s]->comp[x]];
      OneId pf = B.comp(p2, f);
      CHECK(o.u == A.id1[a]);
      CHECK(o.beta == B.vc(B.vc(B.whisker_l(pf, F->unit[a]), B.inv(B.r(pf))), B.whisker_r(s, f)));
    }
  }
}

TEST_CASE("p_* q_* and (p q)_* differ by chi") {
  FunPtr F = functor("lax_simplex");
  FiberBidiagramPtr FB = fiber_bidiagram(F);
  const Bicategory& B = *F->tgt;
  for (const auto& [k, t] : FB->chi) {
    OneId p2 = int(k >> 32), p = int(k & 0xffffffffu);
    CHECK(same_functor(*t->F, *FB->push[B.comp(p2, p)]));
    CHECK(same_functor(*t->G, compose_lax_functors(*FB->push[p2], *FB->push[p])));
    check_ok(validate_transformation(*t));
  }
}

TEST_CASE("fiber bidiagram satisfies the coherence axioms") {
  for (const auto& fn : kFunctors) {
    INFO(fn);
    FiberBidiagramPtr FB = fiber_bidiagram(functor(fn));
    check_ok(check_coherence_oplax(FB->O));
  }
}

TEST_CASE("xi is the identity at identity 2-cells") {
  FiberBidiagramPtr FB = fiber_bidiagram(functor("twisted_simplex"));
  const LaxBidiagram& D = *FB->O.dual;
  const Bicategory& C = D.B();
  for (OneId f = 0; f < C.n_one(); ++f) {
    TwoId i = C.id2[f];
    const Modification& m = D.xi_(i, i);
    for (TwoId c : m.comp) CHECK(D.fib(C.src(f)).is_identity(c));
  }
}

TEST_CASE("fibers of the identity on Z/2 are all indiscrete on two objects") {
  FiberBidiagramPtr FB = fiber_bidiagram(functor("id_sigma_z2"));
  for (const auto& H : FB->fiber) CHECK(indiscrete_category(*H->bic));
}

TEST_CASE("total bicategory, Q, L and iota") {
  for (std::string fn : {"trivial_to_z2", "d1", "sign", "lax_simplex", "twisted_simplex", "id_sigma_z2_twisted"}) {
    INFO(fn);
    FunPtr F = functor(fn);
    TotalPtr T = total_fiber(fiber_bidiagram(F));
    check_ok(validate_bicategory(T->total()));
    TotalQL R = total_Q_L(T);
    check_ok(validate_lax_functor(*R.Q));
    check_ok(validate_lax_functor(*R.L));
    check_ok(validate_transformation(*R.iota));
    CHECK(R.Q->is_pseudo());
    CHECK(R.Q->is_normal());
    CHECK(first_difference(compose_lax_functors(*R.Q, *R.L), identity_functor(F->src)) == "");
  }
}

TEST_CASE("Q of a 2-cell is r after alpha") {
  FunPtr F = functor("twisted_simplex");
  TotalPtr T = total_fiber(fiber_bidiagram(F));
  TotalQL R = total_Q_L(T);
  const Bicategory& A = *F->src;
  const Bicategory& X = T->total();
  for (TwoId c = 0; c < X.n_two(); ++c) {
    OneId u2 = T->one_of(X.tgt2(c)).u;
    CHECK(R.Q->two[c] == A.vc(A.r(u2), T->two_of(c).alpha));
  }
}

TEST_CASE("iota has component (1_f o F-hat_a, 1_a, f)") {
  FunPtr F = functor("lax_simplex");
  TotalPtr T = total_fiber(fiber_bidiagram(F));
  TotalQL R = total_Q_L(T);
  const Bicategory& B = *F->tgt;
  for (ObjId c = 0; c < T->total().n_obj(); ++c) {
    auto [f, a, b] = T->obj_of(c);
    auto o = T->one_of(R.iota->comp[c]);
    CHECK(o.beta == B.whisker_l(f, F->unit[a]));
    CHECK(o.u == F->src->id1[a]);
    CHECK(o.p == f);
  }
}

TEST_CASE("total comparison and the two diagrams") {
  for (std::string fn : {"trivial_to_z2", "d1", "sign", "lax_simplex", "twisted_simplex"}) {
    FunPtr F = functor(fn);
    TotalPtr TF = total_fiber(fiber_bidiagram(F));
    TotalPtr TB = total_fiber(fiber_bidiagram(share(identity_functor(F->tgt))));
    LaxFunctor Fbar = total_comparison(TF, TB);
    INFO(fn);
    check_ok(validate_lax_functor(Fbar));
    for (ObjId b = 0; b < F->tgt->n_obj(); ++b) {
      INFO("at " << b);
      check_ok(check_fiber_diagrams(TF, TB, b));
    }
  }
}

TEST_CASE("comma contraction is a valid oplax transformation") {
  for (const auto& [name, B] : corpus_bicategories())
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      CommaContraction R = comma_contraction(B, b);
      check_ok(validate_lax_functor(*R.Ct));
      check_ok(validate_transformation(*R.contraction));
      const Bicategory& Bb = *B;
      ObjId top = R.comma->obj(Bb.id1[b], b);
      const auto& o = R.comma->ones[R.contraction->comp[top]];
      CHECK(o.beta == Bb.inv(Bb.l(Bb.id1[b])));
      CHECK(o.u == Bb.id1[b]);
    }
}

TEST_CASE("monoidal fiber of the identity on Z/2 and tensoring") {
  FiberPtr K = monoidal_fiber(functor("id_sigma_z2"));
  CHECK(indiscrete_category(*K->bic));
  const Bicategory& B = K->B();
  for (OneId z = 0; z < B.n_one(); ++z) {
    LaxFunctor P = tensor_endofunctor(K, z);
    check_ok(validate_lax_functor(P));
    CHECK(P.is_strict());
  }
}

TEST_CASE("tensoring with the unit is isomorphic to the identity through l") {
  for (std::string fn : {"id_sigma_z2_twisted", "z2_to_s3", "sign"}) {
    FunPtr F = functor(fn);
    FiberPtr K = monoidal_fiber(F);
    const Bicategory& B = K->B();
    const Bicategory& A = K->A();
    const Bicategory& T = *K->bic;
    FunPtr P = share(tensor_endofunctor(K, B.id1[0]));
    FunPtr I = share(identity_functor(K->bic));
    Transformation t;
    t.name = "l";
    t.kind = TKind::Pseudo;
    t.F = P;
    t.G = I;
    for (ObjId c = 0; c < T.n_obj(); ++c) {
      auto [f, a] = K->objs[c];
      TwoId beta = B.vc(B.vc(B.whisker_l(f, F->unit[a]), B.inv(B.r(f))), B.l(f));
      t.comp.push_back(K->one(beta, A.id1[a], f));
    }
    for (OneId k = 0; k < T.n_one(); ++k) {
      OneId u = K->ones[k].u;
      TwoId al = A.vc(A.inv(A.r(u)), A.l(u));
      t.nat.push_back(K->two(al, T.comp(t.comp[T.tgt(k)], P->one[k]), T.comp(k, t.comp[T.src(k)])));
    }
    INFO(fn);
    check_ok(validate_transformation(t));
  }
}

namespace {

// The associator of z2_twisted with the component at (x,y,z) replaced by
// the other automorphism.
MonoidalCategory flip_assoc(int x, int y, int z) {
  MonoidalCategory M = z2_twisted();
  int& v = M.assoc.at(key3(x, y, z));
  auto [s, t] = M.C.mor[v];
  for (int m = 0; m < int(M.C.mor.size()); ++m)
    if (m != v && M.C.mor[m].first == s && M.C.mor[m].second == t) {
      v = m;
      break;
    }
  return M;
}

}  // namespace

TEST_CASE("suspension validation detects a broken pentagon") {
  check_ok(validate_bicategory(suspension(z2_twisted())));
  Report r = validate_bicategory(suspension(flip_assoc(1, 1, 0)));
  CHECK(r.count("pentagon") > 0);
  // flipping (1,1,1) gives the trivial associator, which is coherent
  check_ok(validate_bicategory(suspension(flip_assoc(1, 1, 1))));
}

TEST_CASE("right multiplication gives the comma bicategory of the suspension") {
  for (MonoidalCategory M : {discrete_monoidal(cyclic_group(2)), discrete_monoidal(symmetric_group3()), z2_twisted(),
                             discrete_monoidal(idempotent_monoid())}) {
    INFO(M.name);
    ActionGrothendieck R = action_grothendieck(right_multiplication(M));
    check_ok(R.report);
    check_ok(validate_bicategory(*R.G->total));
    auto SM = std::make_shared<const Bicategory>(suspension(M));
    FiberPtr C = comma(SM, 0);
    // (f,x,b) ↦ (f, x, b) and m ↦ m
    const Bicategory& T = *R.G->total;
    LaxFunctor I;
    I.name = "action-to-comma";
    I.src = R.G->total;
    I.tgt = C->bic;
    for (ObjId a = 0; a < T.n_obj(); ++a) I.obj.push_back(C->obj(R.G->objs[a].x, 0));
    I.one.assign(T.n_one(), -1);
    for (std::size_t i = 0; i < R.ones.size(); ++i) {
      auto [f, x, b] = R.ones[i];
      I.one[R.one_map[i]] = C->one(f, x, b);
    }
    I.two.assign(T.n_two(), -1);
    for (std::size_t i = 0; i < R.twos.size(); ++i) I.two[R.two_map[i]] = C->two(R.twos[i].m, I.one[R.one_map[R.twos[i].src]]);
    for (OneId f = 0; f < T.n_one(); ++f)
      for (OneId g : T.ones_from(T.tgt(f))) I.comp[key2(g, f)] = C->bic->id2[C->bic->comp(I.one[g], I.one[f])];
    for (ObjId x = 0; x < T.n_obj(); ++x) I.unit.push_back(C->bic->id2[C->bic->id1[I.obj[x]]]);
    check_ok(check_isomorphism(I));
  }
}

TEST_CASE("trivial action gives N itself") {
  Category N;
  N.obj_label = {"x", "y"};
  N.mor = {{0, 0}, {1, 1}, {0, 1}};
  N.id = {0, 1};
  N.comp = {{key2(0, 0), 0}, {key2(1, 1), 1}, {key2(2, 0), 2}, {key2(1, 2), 2}};
  ActionGrothendieck R = action_grothendieck(trivial_action(N));
  check_ok(R.report);
  const Bicategory& T = *R.G->total;
  CHECK(T.n_obj() == 2);
  CHECK(T.n_one() == 3);
  CHECK(T.n_two() == 3);
  check_ok(validate_bicategory(T));
}

TEST_CASE("Z/2 acting on itself gives the indiscrete category on two objects") {
  ActionGrothendieck R = action_grothendieck(right_multiplication(discrete_monoidal(cyclic_group(2))));
  CHECK(R.G->total->n_obj() == 2);
  CHECK(indiscrete_category(*R.G->total));
}

TEST_CASE("an incoherent action is rejected") {
  ActionCategory N = right_multiplication(z2_twisted());
  // replace one χ component by the other automorphism
  bool changed = false;
  for (auto& [k, v] : N.chi) {
    int a = int(k >> 42), x = int((k >> 21) & 0x1fffff), y = int(k & 0x1fffff);
    if (a == 1 && x == 1 && y == 1) {
      auto [s, t] = N.N.mor[v];
      for (int m = 0; m < int(N.N.mor.size()); ++m)
        if (m != v && N.N.mor[m].first == s && N.N.mor[m].second == t) {
          v = m;
          changed = true;
          break;
        }
    }
  }
  REQUIRE(changed);
  CHECK_THROWS_AS(action_grothendieck(N), IncoherentAction);
}
