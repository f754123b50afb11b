#include "bicat/fiber.hpp"

namespace bicat {

namespace {

FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }
TransPtr share(Transformation t) { return std::make_shared<const Transformation>(std::move(t)); }

// Identity constraints for a functor that preserves composition on the nose.
void fill_strict(LaxFunctor& F) {
  const Bicategory& A = *F.src;
  const Bicategory& B = *F.tgt;
  F.comp.clear();
  F.unit.clear();
  for (OneId f = 0; f < A.n_one(); ++f)
    for (OneId g : A.ones_from(A.tgt(f))) F.comp[key2(g, f)] = B.id2[B.comp(F.one[g], F.one[f])];
  for (ObjId x = 0; x < A.n_obj(); ++x) F.unit.push_back(B.id2[B.id1[F.obj[x]]]);
}

// 1_{a′}∘u ⇒ u ⇒ u∘1_a.
TwoId unit_swap(const Bicategory& A, OneId u) { return A.vc(A.inv(A.r(u)), A.l(u)); }

}  // namespace

// ---------------------------------------------------------------------------

ObjId HomotopyFiber::obj(OneId f, ObjId a) const {
  auto it = obj_index.find(key2(f, a));
  if (it == obj_index.end()) throw NotComposable("homotopy fiber: no object (f,a)");
  return it->second;
}

OneId HomotopyFiber::one(TwoId beta, OneId u, OneId f2) const {
  auto it = one_index.find(key3(beta, u, f2));
  if (it == one_index.end()) throw NotComposable("homotopy fiber: no 1-cell (beta,u)");
  return it->second;
}

TwoId HomotopyFiber::two(TwoId alpha, OneId src) const {
  auto it = two_index.find(key2(alpha, src));
  if (it == two_index.end()) throw NotComposable("homotopy fiber: no 2-cell alpha at this 1-cell");
  return it->second;
}

TwoId HomotopyFiber::two(TwoId alpha, OneId src, OneId tgt) const {
  TwoId c = two(alpha, src);
  if (bic->tgt2(c) != tgt)
    throw IncoherentInput("homotopy fiber: 2-cell " + A().two_name(alpha) + " does not reach the expected 1-cell");
  return c;
}

TwoId HomotopyFiber::carry(TwoId alpha, TwoId beta, OneId f2) const {
  return B().vc(B().whisker_l(f2, F->two[alpha]), beta);
}

FiberPtr homotopy_fiber(FunPtr Fp, ObjId b) {
  const LaxFunctor& F = *Fp;
  const Bicategory& A = *F.src;
  const Bicategory& B = *F.tgt;
  if (b < 0 || b >= B.n_obj()) throw SourceTargetMismatch("homotopy fiber: no object " + std::to_string(b));
  auto H = std::make_shared<HomotopyFiber>();
  H->F = Fp;
  H->b = b;
  auto T = std::make_shared<Bicategory>();
  T->name = F.name + "/" + B.obj_name(b);
  H->bic = T;

  for (ObjId a = 0; a < A.n_obj(); ++a)
    for (OneId f : B.hom(F.obj[a], b)) {
      H->obj_index[key2(f, a)] = T->add_obj("(" + B.one_name(f) + "," + A.obj_name(a) + ")");
      H->objs.push_back({f, a});
    }
  std::vector<std::vector<OneId>> out(T->n_obj());
  for (OneId u = 0; u < A.n_one(); ++u) {
    ObjId a = A.src(u), a2 = A.tgt(u);
    OneId Fu = F.one[u];
    for (OneId f : B.hom(F.obj[a], b))
      for (OneId f2 : B.hom(F.obj[a2], b))
        for (TwoId beta : B.hom2(f, B.comp(f2, Fu))) {
          ObjId s = H->obj(f, a);
          OneId k = T->add_one(s, H->obj(f2, a2), "(" + B.two_name(beta) + "," + A.one_name(u) + ")");
          H->one_index[key3(beta, u, f2)] = k;
          H->ones.push_back({beta, u, f2});
          out[s].push_back(k);
        }
  }
  std::vector<std::vector<TwoId>> twos_at(T->n_obj());
  for (OneId k = 0; k < T->n_one(); ++k) {
    const auto o = H->ones[k];
    for (TwoId al : A.twos_from(o.u)) {
      OneId t = H->one(H->carry(al, o.beta, o.f2), A.tgt2(al), o.f2);
      TwoId c = T->add_two(k, t, A.two_name(al));
      H->two_index[key2(al, k)] = c;
      H->twos.push_back({al, k});
      twos_at[T->src(k)].push_back(c);
    }
  }
  const HomotopyFiber& Hr = *H;

  for (ObjId c = 0; c < T->n_obj(); ++c) {
    auto [f, a] = H->objs[c];
    TwoId beta = B.vc(B.whisker_l(f, F.unit[a]), B.inv(B.r(f)));
    T->id1[c] = H->one(beta, A.id1[a], f);
  }
  for (OneId k = 0; k < T->n_one(); ++k) T->id2[k] = H->two(A.id2[H->ones[k].u], k);

  // (γ,v)∘(β,u) = (γ⊚β, v∘u)
  auto compose = [&](OneId k2, OneId k1) {
    const auto& o1 = Hr.ones[k1];
    const auto& o2 = Hr.ones[k2];
    OneId Fu = F.one[o1.u], Fv = F.one[o2.u];
    TwoId g = B.vc(B.whisker_l(o2.f2, F.hat(o2.u, o1.u)),
                   B.vc(B.a(o2.f2, Fv, Fu), B.vc(B.whisker_r(o2.beta, Fu), o1.beta)));
    return Hr.one(g, A.comp(o2.u, o1.u), o2.f2);
  };
  for (OneId k1 = 0; k1 < T->n_one(); ++k1)
    for (OneId k2 : out[T->tgt(k1)]) T->set_hcomp1(k2, k1, compose(k2, k1));
  auto comp1 = [&](OneId k2, OneId k1) { return T->hcomp1.at(key2(k2, k1)); };

  for (TwoId c = 0; c < T->n_two(); ++c) {
    const auto [al, k] = H->twos[c];
    OneId t = T->tgt2(c);
    for (TwoId al2 : A.twos_from(A.tgt2(al))) T->set_vcomp(H->two(al2, t), c, H->two(A.vc(al2, al), k));
  }
  for (TwoId c1 = 0; c1 < T->n_two(); ++c1) {
    const auto [al1, k1] = H->twos[c1];
    for (TwoId c2 : twos_at[T->tgt(k1)]) {
      const auto [al2, k2] = H->twos[c2];
      T->set_hcomp2(c2, c1, H->two(A.hc(al2, al1), comp1(k2, k1)));
    }
  }
  for (OneId k1 = 0; k1 < T->n_one(); ++k1)
    for (OneId k2 : out[T->tgt(k1)])
      for (OneId k3 : out[T->tgt(k2)]) {
        TwoId al = A.a(H->ones[k3].u, H->ones[k2].u, H->ones[k1].u);
        T->set_assoc(k3, k2, k1, H->two(al, comp1(comp1(k3, k2), k1), comp1(k3, comp1(k2, k1))));
      }
  for (OneId k = 0; k < T->n_one(); ++k) {
    OneId u = H->ones[k].u;
    T->lunit[k] = H->two(A.l(u), comp1(T->id1[T->tgt(k)], k), k);
    T->runit[k] = H->two(A.r(u), comp1(k, T->id1[T->src(k)]), k);
  }
  T->finalize();
  return H;
}

FiberPtr comma(BicatPtr B, ObjId b) {
  LaxFunctor I = identity_functor(B);
  I.name = "1";
  return homotopy_fiber(share(std::move(I)), b);
}

Report check_fiber_tables(const HomotopyFiber& H) {
  const Bicategory& A = H.A();
  const Bicategory& T = *H.bic;
  Report rep;
  for (TwoId c = 0; c < T.n_two(); ++c) {
    const auto [al, k] = H.twos[c];
    const auto& s = H.ones[k];
    const auto& t = H.ones[T.tgt2(c)];
    if (s.u != A.src2(al) || t.u != A.tgt2(al) || t.f2 != s.f2 || t.beta != H.carry(al, s.beta, s.f2))
      rep.add("fiber.admission", {c});
  }
  auto alpha = [&](TwoId c) { return H.twos[c].alpha; };
  for (auto [k, v] : T.vcomp) {
    int b = int(k >> 32), a = int(k & 0xffffffffu);
    if (alpha(v) != A.vc(alpha(b), alpha(a))) rep.add("fiber.vcomp", {b, a});
  }
  for (auto [k, v] : T.hcomp2) {
    int b = int(k >> 32), a = int(k & 0xffffffffu);
    if (alpha(v) != A.hc(alpha(b), alpha(a))) rep.add("fiber.hcomp2", {b, a});
  }
  for (auto [k, v] : T.assoc) {
    int h = int(k >> 42), g = int((k >> 21) & 0x1fffff), f = int(k & 0x1fffff);
    if (alpha(v) != A.a(H.ones[h].u, H.ones[g].u, H.ones[f].u)) rep.add("fiber.assoc", {h, g, f});
  }
  for (OneId k = 0; k < T.n_one(); ++k) {
    if (alpha(T.l(k)) != A.l(H.ones[k].u)) rep.add("fiber.lunit", {k});
    if (alpha(T.r(k)) != A.r(H.ones[k].u)) rep.add("fiber.runit", {k});
    if (alpha(T.id2[k]) != A.id2[H.ones[k].u]) rep.add("fiber.id2", {k});
  }
  return rep;
}

FiberRoutes fiber_routes(FiberPtr Hp) {
  const HomotopyFiber& H = *Hp;
  const LaxFunctor& F = *H.F;
  const Bicategory& B = H.B();
  FiberRoutes R;
  R.direct = Hp;
  R.generic = grothendieck(precompose(*hom_bidiagram(F.tgt, H.b), H.F));
  const Grothendieck& G = *R.generic;
  std::vector<HomFiber> HF;
  for (ObjId x = 0; x < B.n_obj(); ++x) HF.push_back(hom_fiber(B, x, H.b));
  const Bicategory& T = *H.bic;
  LaxFunctor I;
  I.name = "iso";
  I.src = H.bic;
  I.tgt = G.total;
  for (const auto& [f, a] : H.objs) I.obj.push_back(G.obj(HF[F.obj[a]].obj.at(f), a));
  for (OneId k = 0; k < T.n_one(); ++k) {
    const auto& o = H.ones[k];
    ObjId a = T.src(k), a2 = T.tgt(k);
    OneId m = HF[F.obj[H.objs[a].a]].mor.at(o.beta);
    I.one.push_back(G.one(m, o.u, HF[F.obj[H.objs[a2].a]].obj.at(o.f2)));
  }
  for (TwoId c = 0; c < T.n_two(); ++c) {
    const auto [al, k] = H.twos[c];
    ObjId a = H.objs[T.src(k)].a;
    OneId m = HF[F.obj[a]].mor.at(H.ones[T.tgt2(c)].beta);
    I.two.push_back(G.two(G.D->fib(a).id2[m], al, I.one[k]));
  }
  fill_strict(I);
  R.iso = share(std::move(I));
  R.report = check_isomorphism(*R.iso);
  return R;
}

LaxFunctor fiber_projection(FiberPtr Hp) {
  const HomotopyFiber& H = *Hp;
  LaxFunctor P;
  P.name = "P";
  P.src = H.bic;
  P.tgt = H.F->src;
  for (const auto& o : H.objs) P.obj.push_back(o.a);
  for (const auto& o : H.ones) P.one.push_back(o.u);
  for (const auto& t : H.twos) P.two.push_back(t.alpha);
  fill_strict(P);
  return P;
}

LaxFunctor pushforward(FiberPtr Sp, FiberPtr Tp, OneId p) {
  const HomotopyFiber& S = *Sp;
  const HomotopyFiber& T = *Tp;
  const Bicategory& B = S.B();
  if (S.F.get() != T.F.get()) throw SourceTargetMismatch("pushforward between fibers of different functors");
  if (B.src(p) != S.b || B.tgt(p) != T.b) throw SourceTargetMismatch("pushforward: 1-cell does not join the fibers");
  const LaxFunctor& F = *S.F;
  LaxFunctor P;
  P.name = B.one_name(p) + "_*";
  P.src = S.bic;
  P.tgt = T.bic;
  for (const auto& [f, a] : S.objs) P.obj.push_back(T.obj(B.comp(p, f), a));
  for (const auto& o : S.ones) {
    TwoId beta = B.vc(B.ainv(p, o.f2, F.one[o.u]), B.whisker_l(p, o.beta));
    P.one.push_back(T.one(beta, o.u, B.comp(p, o.f2)));
  }
  for (const auto& [al, k] : S.twos) P.two.push_back(T.two(al, P.one[k]));
  fill_strict(P);
  return P;
}

LaxFunctor fiber_comparison(FiberPtr Hp, FiberPtr Cp) {
  const HomotopyFiber& H = *Hp;
  const HomotopyFiber& Cm = *Cp;
  const LaxFunctor& F = *H.F;
  if (!same_tables(*Cm.F->src, *F.tgt) || Cm.b != H.b)
    throw SourceTargetMismatch("fiber comparison: target is not the comma bicategory at the same object");
  const Bicategory& A = *F.src;
  const Bicategory& T = *H.bic;
  const Bicategory& C = *Cm.bic;
  LaxFunctor P;
  P.name = "Fbar_" + std::to_string(H.b);
  P.src = H.bic;
  P.tgt = Cm.bic;
  for (const auto& [f, a] : H.objs) P.obj.push_back(Cm.obj(f, F.obj[a]));
  for (const auto& o : H.ones) P.one.push_back(Cm.one(o.beta, F.one[o.u], o.f2));
  for (const auto& [al, k] : H.twos) P.two.push_back(Cm.two(F.two[al], P.one[k]));
  for (OneId k1 = 0; k1 < T.n_one(); ++k1)
    for (OneId k2 : T.ones_from(T.tgt(k1))) {
      TwoId hat = F.hat(H.ones[k2].u, H.ones[k1].u);
      P.comp[key2(k2, k1)] = Cm.two(hat, C.comp(P.one[k2], P.one[k1]), P.one[T.comp(k2, k1)]);
    }
  for (ObjId c = 0; c < T.n_obj(); ++c)
    P.unit.push_back(Cm.two(F.unit[H.objs[c].a], C.id1[P.obj[c]], P.one[T.id1[c]]));
  (void)A;
  return P;
}

// ---------------------------------------------------------------------------
// The fiber bidiagram.

namespace {

// A path in a fiber of the dual bidiagram whose leaves all have A-part an
// identity, read as a word of identities in A. Composition in coop(T) is
// reversed.
struct Mirror {
  const Bicategory& A;
  std::unordered_map<const Bicategory*, const HomotopyFiber*> fib;

  PathP operator()(const PathP& p) const {
    switch (p->kind) {
      case Path::Atom: {
        const HomotopyFiber& H = *fib.at(p->B);
        if (!A.is_identity(A.id2[H.ones[p->id].u]) || H.ones[p->id].u != A.id1[A.src(H.ones[p->id].u)])
          throw IllTypedTerm("fiber path leaf with non-identity A-part");
        return path::id(A, H.objs[p->B->src(p->id)].a);
      }
      case Path::Id:
        return path::id(A, fib.at(p->B)->objs[p->id].a);
      case Path::Comp:
        return path::comp((*this)(p->r), (*this)(p->l));
      case Path::Apply:
        return (*this)(p->r);
    }
    throw IllTypedTerm("unknown path kind");
  }

  // The dual 2-cell s ⇒ t, which is the fiber 2-cell t ⇒ s over the
  // canonical A-isomorphism between the mirrored words.
  TwoId component(const PathP& s, const PathP& t) const {
    const HomotopyFiber& H = *fib.at(s->B);
    TwoId al = cell::canonical((*this)(t), (*this)(s)).eval();
    return H.two(al, path::eval(t), path::eval(s));
  }
};

}  // namespace

FiberBidiagramPtr fiber_bidiagram(FunPtr Fp) {
  const LaxFunctor& F = *Fp;
  const Bicategory& A = *F.src;
  BicatPtr Bp = F.tgt;
  const Bicategory& B = *Bp;
  auto R = std::make_shared<FiberBidiagram>();
  R->F = Fp;
  for (ObjId b = 0; b < B.n_obj(); ++b) R->fiber.push_back(homotopy_fiber(Fp, b));
  const auto& fib = R->fiber;

  for (OneId p = 0; p < B.n_one(); ++p) R->push.push_back(share(pushforward(fib[B.src(p)], fib[B.tgt(p)], p)));

  // (1_f∘F̂_a)·r⁻¹_f: f ⇒ f∘F1_a
  auto unit_fix = [&](OneId f, ObjId a) { return B.vc(B.whisker_l(f, F.unit[a]), B.inv(B.r(f))); };

  // σ_*: component σ⊚f = (1∘F̂_a)·r⁻¹·(σ∘1_f)
  for (TwoId s = 0; s < B.n_two(); ++s) {
    OneId p = B.src2(s), p2 = B.tgt2(s);
    const HomotopyFiber& Sb = *fib[B.src(p)];
    const HomotopyFiber& Tb = *fib[B.tgt(p)];
    const Bicategory& T = *Tb.bic;
    const LaxFunctor& P = *R->push[p];
    const LaxFunctor& P2 = *R->push[p2];
    Transformation t;
    t.name = B.two_name(s) + "_*";
    t.kind = TKind::Pseudo;
    t.F = R->push[p];
    t.G = R->push[p2];
    for (ObjId x = 0; x < Sb.bic->n_obj(); ++x) {
      auto [f, a] = Sb.objs[x];
      TwoId beta = B.vc(unit_fix(B.comp(p2, f), a), B.whisker_r(s, f));
      t.comp.push_back(Tb.one(beta, A.id1[a], B.comp(p2, f)));
    }
    for (OneId k = 0; k < Sb.bic->n_one(); ++k) {
      const Bicategory& X = *Sb.bic;
      OneId u = Sb.ones[k].u;
      t.nat.push_back(Tb.two(unit_swap(A, u), T.comp(t.comp[X.tgt(k)], P.one[k]), T.comp(P2.one[k], t.comp[X.src(k)])));
    }
    R->push2.push_back(share(std::move(t)));
  }

  // χ_{p′,p}: (p′∘p)_* ⇒ p′_*p_*, component ((1∘F̂_a)·r⁻¹·a_{p′,p,f}, 1_a)
  for (OneId p = 0; p < B.n_one(); ++p)
    for (OneId p2 : B.ones_from(B.tgt(p))) {
      const HomotopyFiber& Sb = *fib[B.src(p)];
      const HomotopyFiber& Tb = *fib[B.tgt(p2)];
      const Bicategory& X = *Sb.bic;
      const Bicategory& T = *Tb.bic;
      FunPtr S = R->push[B.comp(p2, p)];
      FunPtr G = share(compose_lax_functors(*R->push[p2], *R->push[p]));
      Transformation t;
      t.name = "chi_" + B.one_name(p2) + "," + B.one_name(p);
      t.kind = TKind::Pseudo;
      t.F = S;
      t.G = G;
      for (ObjId x = 0; x < X.n_obj(); ++x) {
        auto [f, a] = Sb.objs[x];
        OneId f2 = B.comp(p2, B.comp(p, f));
        t.comp.push_back(Tb.one(B.vc(unit_fix(f2, a), B.a(p2, p, f)), A.id1[a], f2));
      }
      for (OneId k = 0; k < X.n_one(); ++k)
        t.nat.push_back(Tb.two(unit_swap(A, Sb.ones[k].u), T.comp(t.comp[X.tgt(k)], S->one[k]),
                               T.comp(G->one[k], t.comp[X.src(k)])));
      R->chi[key2(p2, p)] = share(std::move(t));
    }

  // χ_b: (1_b)_* ⇒ 1, component ((1∘F̂_a)·r⁻¹·l_f, 1_a)
  for (ObjId b = 0; b < B.n_obj(); ++b) {
    const HomotopyFiber& Tb = *fib[b];
    const Bicategory& T = *Tb.bic;
    FunPtr S = R->push[B.id1[b]];
    FunPtr G = share(identity_functor(Tb.bic));
    Transformation t;
    t.name = "chi_" + B.obj_name(b);
    t.kind = TKind::Pseudo;
    t.F = S;
    t.G = G;
    for (ObjId x = 0; x < T.n_obj(); ++x) {
      auto [f, a] = Tb.objs[x];
      t.comp.push_back(Tb.one(B.vc(unit_fix(f, a), B.l(f)), A.id1[a], f));
    }
    for (OneId k = 0; k < T.n_one(); ++k)
      t.nat.push_back(Tb.two(unit_swap(A, Tb.ones[k].u), T.comp(t.comp[T.tgt(k)], S->one[k]),
                             T.comp(k, t.comp[T.src(k)])));
    R->chi_unit.push_back(share(std::move(t)));
  }

  // The lax dual over B^coop with fibers T_b^coop.
  auto Cp = std::make_shared<const Bicategory>(coop(B));
  const Bicategory& C = *Cp;
  auto D = std::make_shared<LaxBidiagram>();
  D->name = F.name + "/-";
  D->base = Cp;
  Mirror M{A, {}};
  for (ObjId b = 0; b < B.n_obj(); ++b) {
    auto Db = std::make_shared<const Bicategory>(coop(*fib[b]->bic));
    M.fib[Db.get()] = fib[b].get();
    D->fiber.push_back(Db);
  }
  for (OneId p = 0; p < B.n_one(); ++p)
    D->pull.push_back(share(coop_functor(*R->push[p], D->fiber[B.src(p)], D->fiber[B.tgt(p)])));
  for (TwoId s = 0; s < B.n_two(); ++s)
    D->pull2.push_back(share(coop_transformation(*R->push2[s], D->pull[B.tgt2(s)], D->pull[B.src2(s)])));
  for (OneId f = 0; f < C.n_one(); ++f)
    for (OneId g : C.ones_from(C.tgt(f)))
      D->chi[key2(g, f)] = share(coop_transformation(*R->chi.at(key2(f, g)), D->pull_comp(g, f), D->pull[C.comp(g, f)]));
  for (ObjId b = 0; b < B.n_obj(); ++b)
    D->chi_unit.push_back(share(coop_transformation(*R->chi_unit[b], D->ident(b), D->pull[C.id1[b]])));

  const LaxBidiagram& Dr = *D;
  BidiagramCells K(Dr);
  for (TwoId al = 0; al < C.n_two(); ++al)
    for (TwoId be : C.twos_from(C.tgt2(al))) {
      TwoId ba = C.vc(be, al);
      D->xi[key2(be, al)] = make_modification("xi", expected::xi_src(Dr, be, al), D->pull2[ba], [&](ObjId x) {
        return M.component(path::comp(K.star(be, x), K.star(al, x)), K.star(ba, x));
      });
    }
  for (OneId f = 0; f < C.n_one(); ++f) {
    const LaxFunctor& Pf = Dr.f_(f);
    D->xi_id.push_back(make_modification("xi_f", expected::xi_id_src(Dr, f), D->pull2[C.id2[f]], [&](ObjId x) {
      return M.component(path::id(*Pf.tgt, Pf.obj[x]), K.star(C.id2[f], x));
    }));
  }
  for (TwoId al = 0; al < C.n_two(); ++al)
    for (OneId g : C.ones_from(C.tgt(C.src2(al))))
      for (TwoId be : C.twos_from(g)) {
        OneId f = C.src2(al), h = C.tgt2(al), k = C.tgt2(be);
        D->chi2[key2(be, al)] = make_modification(
            "chi2", expected::chi2_src(Dr, be, al), expected::chi2_tgt(Dr, be, al), [&](ObjId x) {
              PathP s = path::comp(K.star(C.hc(be, al), x), K.chi(g, f, x));
              PathP t = path::seq({K.chi(k, h, x), K.star(al, Dr.f_(k).obj[x]), K.pull(f, K.star(be, x))});
              return M.component(s, t);
            });
      }
  for (OneId f = 0; f < C.n_one(); ++f)
    for (OneId g : C.ones_from(C.tgt(f)))
      for (OneId h : C.ones_from(C.tgt(g))) {
        OneId hg = C.comp(h, g), gf = C.comp(g, f);
        D->omega[key3(h, g, f)] = make_modification(
            "omega", expected::omega_src(Dr, h, g, f), expected::omega_tgt(Dr, h, g, f), [&](ObjId x) {
              PathP s = path::seq({K.star(C.a(h, g, f), x), K.chi(hg, f, x), K.pull(f, K.chi(h, g, x))});
              PathP t = path::comp(K.chi(h, gf, x), K.chi(g, f, Dr.f_(h).obj[x]));
              return M.component(s, t);
            });
      }
  for (OneId f = 0; f < C.n_one(); ++f) {
    ObjId a = C.src(f), b = C.tgt(f);
    const LaxFunctor& Pf = Dr.f_(f);
    D->gamma.push_back(make_modification("gamma", expected::gamma_src(Dr, f), expected::ident_trans(Dr, f), [&](ObjId x) {
      PathP s = path::seq({K.star(C.l(f), x), K.chi(C.id1[b], f, x), K.pull(f, K.chi_u(b, x))});
      return M.component(s, path::id(*Pf.tgt, Pf.obj[x]));
    }));
    D->delta.push_back(make_modification("delta", expected::delta_src(Dr, f), expected::ident_trans(Dr, f), [&](ObjId x) {
      PathP s = path::seq({K.star(C.r(f), x), K.chi(f, C.id1[a], x), K.chi_u(a, Pf.obj[x])});
      return M.component(s, path::id(*Pf.tgt, Pf.obj[x]));
    }));
  }
  R->O = OplaxBidiagram{D->name, Bp, D};
  return R;
}

// ---------------------------------------------------------------------------
// The total bicategory ∫_B F↓.

TotalPtr total_fiber(FiberBidiagramPtr FB, bool check) {
  auto T = std::make_shared<TotalFiber>();
  T->FB = FB;
  T->G = grothendieck_oplax(FB->O, check);
  return T;
}

ObjId TotalFiber::obj(OneId f, ObjId a, ObjId b) const { return G->obj(FB->fiber[b]->obj(f, a), b); }

OneId TotalFiber::one(TwoId beta, OneId u, OneId p, ObjId src, ObjId tgt) const {
  const Bicategory& B = *FB->F->tgt;
  Obj s = obj_of(src), t = obj_of(tgt);
  if (B.src(p) != s.b || B.tgt(p) != t.b) throw NotComposable("total fiber: base 1-cell does not join the objects");
  OneId w = FB->fiber[t.b]->one(beta, u, t.f);
  return G->one(w, p, G->obj_prov(src).x);
}

TwoId TotalFiber::two(TwoId alpha, TwoId sigma, OneId X, OneId Y) const {
  const Bicategory& B = *FB->F->tgt;
  ObjId b2 = B.tgt(B.src2(sigma));
  TwoId phi = FB->fiber[b2]->two(alpha, G->one_prov(X).u);
  return G->dual->two(phi, sigma, Y);
}

TotalFiber::Obj TotalFiber::obj_of(ObjId c) const {
  auto o = G->obj_prov(c);
  auto [f, a] = FB->fiber[o.a]->objs[o.x];
  return {f, a, o.a};
}

TotalFiber::One TotalFiber::one_of(OneId k) const {
  const Bicategory& B = *FB->F->tgt;
  auto o = G->one_prov(k);
  const auto& w = FB->fiber[B.tgt(o.f)]->ones[o.u];
  return {w.beta, w.u, o.f};
}

TotalFiber::Two TotalFiber::two_of(TwoId c) const {
  const Bicategory& B = *FB->F->tgt;
  auto t = G->two_prov(c);
  ObjId b2 = B.tgt(B.src2(t.alpha));
  return {FB->fiber[b2]->twos[t.phi].alpha, t.alpha};
}

TotalQL total_Q_L(TotalPtr Tp) {
  const TotalFiber& T = *Tp;
  const LaxFunctor& F = *T.FB->F;
  const Bicategory& A = *F.src;
  const Bicategory& B = *F.tgt;
  const Bicategory& X = T.total();
  TotalQL R;
  R.T = Tp;

  LaxFunctor Q;
  Q.name = "Q";
  Q.src = T.G->total;
  Q.tgt = F.src;
  for (ObjId c = 0; c < X.n_obj(); ++c) Q.obj.push_back(T.obj_of(c).a);
  for (OneId k = 0; k < X.n_one(); ++k) Q.one.push_back(T.one_of(k).u);
  for (TwoId c = 0; c < X.n_two(); ++c) Q.two.push_back(A.vc(A.r(T.one_of(X.tgt2(c)).u), T.two_of(c).alpha));
  for (OneId k1 = 0; k1 < X.n_one(); ++k1)
    for (OneId k2 : X.ones_from(X.tgt(k1)))
      Q.comp[key2(k2, k1)] = A.inv(A.r(A.comp(Q.one[k2], Q.one[k1])));
  for (ObjId c = 0; c < X.n_obj(); ++c) Q.unit.push_back(A.id2[A.id1[Q.obj[c]]]);
  R.Q = share(std::move(Q));

  LaxFunctor L;
  L.name = "L";
  L.src = F.src;
  L.tgt = T.G->total;
  for (ObjId a = 0; a < A.n_obj(); ++a) L.obj.push_back(T.obj(B.id1[F.obj[a]], a, F.obj[a]));
  for (OneId u = 0; u < A.n_one(); ++u) {
    OneId Fu = F.one[u];
    L.one.push_back(T.one(B.vc(B.inv(B.l(Fu)), B.r(Fu)), u, Fu, L.obj[A.src(u)], L.obj[A.tgt(u)]));
  }
  for (TwoId al = 0; al < A.n_two(); ++al) {
    OneId u = A.src2(al), v = A.tgt2(al);
    L.two.push_back(T.two(A.vc(A.inv(A.r(v)), al), F.two[al], L.one[u], L.one[v]));
  }
  for (OneId u = 0; u < A.n_one(); ++u)
    for (OneId v : A.ones_from(A.tgt(u))) {
      OneId vu = A.comp(v, u);
      L.comp[key2(v, u)] = T.two(A.id2[A.comp(vu, A.id1[A.src(u)])], F.hat(v, u), X.comp(L.one[v], L.one[u]), L.one[vu]);
    }
  for (ObjId a = 0; a < A.n_obj(); ++a)
    L.unit.push_back(T.two(A.inv(A.r(A.id1[a])), F.unit[a], X.id1[L.obj[a]], L.one[A.id1[a]]));
  R.L = share(std::move(L));

  R.LQ = share(compose_lax_functors(*R.L, *R.Q));
  R.id_total = share(identity_functor(T.G->total));
  Transformation t;
  t.name = "iota";
  t.kind = TKind::Oplax;
  t.F = R.LQ;
  t.G = R.id_total;
  for (ObjId c = 0; c < X.n_obj(); ++c) {
    auto [f, a, b] = T.obj_of(c);
    t.comp.push_back(T.one(B.whisker_l(f, F.unit[a]), A.id1[a], f, R.LQ->obj[c], c));
  }
  for (OneId k = 0; k < X.n_one(); ++k) {
    auto o = T.one_of(k);
    ObjId a = A.src(o.u);
    OneId one_a = A.id1[a];
    TwoId al = A.whisker_r(A.whisker_r(A.inv(A.l(o.u)), one_a), one_a);
    OneId Xk = X.comp(k, t.comp[X.src(k)]);
    OneId Yk = X.comp(t.comp[X.tgt(k)], R.LQ->one[k]);
    t.nat.push_back(T.two(al, o.beta, Xk, Yk));
  }
  R.iota = share(std::move(t));
  return R;
}

LaxFunctor total_comparison(TotalPtr TFp, TotalPtr TBp) {
  const TotalFiber& TF = *TFp;
  const TotalFiber& TB = *TBp;
  const LaxFunctor& F = *TF.FB->F;
  const Bicategory& A = *F.src;
  const Bicategory& B = *F.tgt;
  if (!same_tables(*TB.FB->F->src, B) || !TB.FB->F->is_strict())
    throw SourceTargetMismatch("total comparison: target is not the comma total of the same base");
  const Bicategory& X = TF.total();
  const Bicategory& Y = TB.total();
  LaxFunctor P;
  P.name = "Fbar";
  P.src = TF.G->total;
  P.tgt = TB.G->total;
  for (ObjId c = 0; c < X.n_obj(); ++c) {
    auto [f, a, b] = TF.obj_of(c);
    P.obj.push_back(TB.obj(f, F.obj[a], b));
  }
  for (OneId k = 0; k < X.n_one(); ++k) {
    auto o = TF.one_of(k);
    P.one.push_back(TB.one(o.beta, F.one[o.u], o.p, P.obj[X.src(k)], P.obj[X.tgt(k)]));
  }
  for (TwoId c = 0; c < X.n_two(); ++c) {
    auto t = TF.two_of(c);
    OneId u2 = TF.one_of(X.tgt2(c)).u;
    TwoId al = B.vc(B.inv(B.r(F.one[u2])), B.vc(F.two[A.r(u2)], F.two[t.alpha]));
    P.two.push_back(TB.two(al, t.sigma, P.one[X.src2(c)], P.one[X.tgt2(c)]));
  }
  for (OneId k1 = 0; k1 < X.n_one(); ++k1)
    for (OneId k2 : X.ones_from(X.tgt(k1))) {
      auto o1 = TF.one_of(k1), o2 = TF.one_of(k2);
      ObjId a = A.src(o1.u);
      OneId one_Fa = B.id1[F.obj[a]];
      OneId vu = A.comp(o2.u, o1.u);
      TwoId ft = B.vc(B.whisker_r(F.two[A.inv(A.r(vu))], one_Fa), B.whisker_r(F.hat(o2.u, o1.u), one_Fa));
      P.comp[key2(k2, k1)] = TB.two(ft, B.id2[B.comp(o2.p, o1.p)], Y.comp(P.one[k2], P.one[k1]), P.one[X.comp(k2, k1)]);
    }
  for (ObjId c = 0; c < X.n_obj(); ++c) {
    auto [f, a, b] = TF.obj_of(c);
    OneId one_Fa = B.id1[F.obj[a]];
    TwoId ft = B.vc(B.whisker_r(F.unit[a], one_Fa), B.inv(B.r(one_Fa)));
    P.unit.push_back(TB.two(ft, B.id2[B.id1[b]], Y.id1[P.obj[c]], P.one[X.id1[c]]));
  }
  return P;
}

LaxFunctor total_embedding(TotalPtr Tp, ObjId b) {
  const TotalFiber& T = *Tp;
  LaxFunctor J = coop_functor(embedding_J(T.G->dual, b), T.FB->fiber[b]->bic, T.G->total);
  J.name = "J_" + std::to_string(b);
  return J;
}

LaxFunctor constant_functor(BicatPtr Xp, BicatPtr Bp, ObjId b) {
  const Bicategory& X = *Xp;
  const Bicategory& B = *Bp;
  BicatPtr Z = std::make_shared<const Bicategory>(poset(0));
  LaxFunctor T;
  T.name = "!";
  T.src = Xp;
  T.tgt = Z;
  T.obj.assign(X.n_obj(), 0);
  T.one.assign(X.n_one(), Z->id1[0]);
  T.two.assign(X.n_two(), Z->id2[Z->id1[0]]);
  fill_strict(T);
  LaxFunctor K;
  K.name = B.obj_name(b);
  K.src = Z;
  K.tgt = Bp;
  K.obj = {b};
  K.one = {B.id1[b]};
  K.two = {B.id2[B.id1[b]]};
  K.comp[key2(Z->id1[0], Z->id1[0])] = B.l(B.id1[b]);
  K.unit = {B.id2[B.id1[b]]};
  return compose_lax_functors(K, T);
}

Report check_fiber_diagrams(TotalPtr TF, TotalPtr TB, ObjId b) {
  const LaxFunctor& F = *TF->FB->F;
  FiberPtr Fb = TF->FB->fiber[b];
  FiberPtr Bb = TB->FB->fiber[b];
  LaxFunctor JF = total_embedding(TF, b);
  LaxFunctor JB = total_embedding(TB, b);
  TotalQL qf = total_Q_L(TF);
  TotalQL qb = total_Q_L(TB);
  LaxFunctor PF = projection_oplax(*TF->G);
  LaxFunctor PB = projection_oplax(*TB->G);
  LaxFunctor Fbar = total_comparison(TF, TB);
  LaxFunctor Fbar_b = fiber_comparison(Fb, Bb);
  Report rep;
  auto same = [&](const std::string& name, const LaxFunctor& x, const LaxFunctor& y) {
    std::string d = first_difference(x, y);
    if (!d.empty()) rep.add(name, {b}, d);
  };
  same("A.upper: Q J = P", compose_lax_functors(*qf.Q, JF), fiber_projection(Fb));
  same("A.lower: Q J = P", compose_lax_functors(*qb.Q, JB), fiber_projection(Bb));
  same("A.left: Fbar J = J Fbar", compose_lax_functors(Fbar, JF), compose_lax_functors(JB, Fbar_b));
  same("A.right: Q Fbar = F Q", compose_lax_functors(*qb.Q, Fbar), compose_lax_functors(F, *qf.Q));
  same("B.right: P J = b", compose_lax_functors(PB, JB), constant_functor(Bb->bic, F.tgt, b));
  same("B.lower: P Fbar = P", compose_lax_functors(PB, Fbar), PF);
  same("B.outer: P J = b", compose_lax_functors(PF, JF), constant_functor(Fb->bic, F.tgt, b));
  return rep;
}

CommaContraction comma_contraction(BicatPtr Bp, ObjId b) {
  const Bicategory& B = *Bp;
  CommaContraction R;
  R.comma = comma(Bp, b);
  const HomotopyFiber& Cm = *R.comma;
  const Bicategory& X = *Cm.bic;
  R.id = share(identity_functor(Cm.bic));
  ObjId top = Cm.obj(B.id1[b], b);
  LaxFunctor Ct = constant_functor(Cm.bic, Cm.bic, top);
  Ct.name = "Ct";
  R.Ct = share(std::move(Ct));
  Transformation t;
  t.name = "contraction";
  t.kind = TKind::Oplax;
  t.F = R.id;
  t.G = R.Ct;
  for (ObjId c = 0; c < X.n_obj(); ++c) {
    OneId f = Cm.objs[c].f;
    t.comp.push_back(Cm.one(B.inv(B.l(f)), f, B.id1[b]));
  }
  for (OneId k = 0; k < X.n_one(); ++k) {
    const auto& o = Cm.ones[k];
    OneId f = Cm.objs[X.src(k)].f;
    OneId s = X.comp(R.Ct->one[k], t.comp[X.src(k)]);
    OneId e = X.comp(t.comp[X.tgt(k)], k);
    t.nat.push_back(Cm.two(B.vc(o.beta, B.l(f)), s, e));
  }
  R.contraction = share(std::move(t));
  return R;
}

FiberPtr monoidal_fiber(FunPtr F) {
  if (F->src->n_obj() != 1 || F->tgt->n_obj() != 1)
    throw SourceTargetMismatch("monoidal fiber: functor between one-object bicategories expected");
  return homotopy_fiber(F, 0);
}

LaxFunctor tensor_endofunctor(FiberPtr K, OneId z) {
  LaxFunctor P = pushforward(K, K, z);
  P.name = K->B().one_name(z) + "(x)-";
  return P;
}

// ---------------------------------------------------------------------------
// Actions.

namespace {

int find_inverse(const Category& C, int m) {
  auto [s, t] = C.mor[m];
  for (int n = 0; n < int(C.mor.size()); ++n) {
    if (C.mor[n].first != t || C.mor[n].second != s) continue;
    auto a = C.comp.find(key2(n, m));
    auto b = C.comp.find(key2(m, n));
    if (a != C.comp.end() && b != C.comp.end() && a->second == C.id[s] && b->second == C.id[t]) return n;
  }
  throw MalformedTable("morphism has no inverse");
}

int lookup(const Table& t, std::uint64_t k, const char* what) {
  auto it = t.find(k);
  if (it == t.end()) throw MalformedTable(std::string("action table missing entry: ") + what);
  return it->second;
}

TwoId forced_action(const Bicategory& fib, OneId s, OneId t, const std::string& what) {
  if (s != t) throw IncoherentAction(what + ": square does not commute");
  return fib.id2[s];
}

ModPtr forced_action_mod(const std::string& name, TransPtr s, TransPtr t) {
  const Bicategory& fib = *s->F->tgt;
  return make_modification(name, s, t, [&](ObjId x) { return forced_action(fib, s->comp[x], t->comp[x], name); });
}

}  // namespace

ActionCategory right_multiplication(const MonoidalCategory& M) {
  ActionCategory N;
  N.name = M.name + " acting on itself";
  N.M = M;
  N.N = M.C;
  N.act_obj = M.tensor_obj;
  N.act_mor = M.tensor_mor;
  N.chi = M.assoc;
  for (int m : M.runit) N.chi_unit.push_back(find_inverse(M.C, m));
  return N;
}

ActionCategory trivial_action(const Category& C) {
  ActionCategory N;
  N.name = "trivial action";
  N.M = discrete_monoidal(trivial_group());
  N.N = C;
  int e = N.M.C.id[N.M.unit];
  for (int a = 0; a < int(C.obj_label.size()); ++a) {
    N.act_obj[key2(a, N.M.unit)] = a;
    N.chi[key3(a, N.M.unit, N.M.unit)] = C.id[a];
    N.chi_unit.push_back(C.id[a]);
  }
  for (int f = 0; f < int(C.mor.size()); ++f) N.act_mor[key2(f, e)] = f;
  return N;
}

BidiagramPtr action_bidiagram(const ActionCategory& N) {
  const MonoidalCategory& M = N.M;
  auto SMp = std::make_shared<const Bicategory>(suspension(M));
  const Bicategory& SM = *SMp;
  auto Xp = std::make_shared<const Bicategory>(locally_discrete(N.N, N.name));
  const Bicategory& X = *Xp;
  auto D = std::make_shared<LaxBidiagram>();
  D->name = N.name;
  D->base = SMp;
  D->fiber = {Xp};
  auto act = [&](int a, int x) { return lookup(N.act_obj, key2(a, x), "a(x)x"); };
  auto actm = [&](int f, int m) { return lookup(N.act_mor, key2(f, m), "f(x)m"); };

  for (OneId x = 0; x < SM.n_one(); ++x) {
    LaxFunctor F;
    F.name = "-(x)" + SM.one_name(x);
    F.src = Xp;
    F.tgt = Xp;
    int ix = M.C.id[x];
    for (ObjId a = 0; a < X.n_obj(); ++a) F.obj.push_back(act(a, x));
    for (OneId f = 0; f < X.n_one(); ++f) F.one.push_back(actm(f, ix));
    F.two = F.one;
    for (OneId f = 0; f < X.n_one(); ++f)
      for (OneId g : X.ones_from(X.tgt(f)))
        F.comp[key2(g, f)] = forced_action(X, X.comp(F.one[g], F.one[f]), F.one[X.comp(g, f)], F.name + " on composites");
    for (ObjId a = 0; a < X.n_obj(); ++a)
      F.unit.push_back(forced_action(X, X.id1[F.obj[a]], F.one[X.id1[a]], F.name + " on identities"));
    D->pull.push_back(share(std::move(F)));
  }
  for (TwoId m = 0; m < SM.n_two(); ++m) {
    Transformation t;
    t.name = "1(x)" + SM.two_name(m);
    t.kind = TKind::Pseudo;
    t.F = D->pull[SM.src2(m)];
    t.G = D->pull[SM.tgt2(m)];
    for (ObjId a = 0; a < X.n_obj(); ++a) t.comp.push_back(actm(X.id1[a], m));
    for (OneId f = 0; f < X.n_one(); ++f)
      t.nat.push_back(forced_action(X, X.comp(t.comp[X.tgt(f)], t.F->one[f]), X.comp(t.G->one[f], t.comp[X.src(f)]), t.name));
    D->pull2.push_back(share(std::move(t)));
  }
  for (OneId f = 0; f < SM.n_one(); ++f)
    for (OneId g = 0; g < SM.n_one(); ++g) {
      Transformation t;
      t.name = "chi";
      t.kind = TKind::Pseudo;
      t.F = D->pull_comp(g, f);
      t.G = D->pull[SM.comp(g, f)];
      for (ObjId a = 0; a < X.n_obj(); ++a) t.comp.push_back(lookup(N.chi, key3(a, g, f), "chi"));
      for (OneId u = 0; u < X.n_one(); ++u)
        t.nat.push_back(forced_action(X, X.comp(t.comp[X.tgt(u)], t.F->one[u]), X.comp(t.G->one[u], t.comp[X.src(u)]), "chi"));
      D->chi[key2(g, f)] = share(std::move(t));
    }
  {
    Transformation t;
    t.name = "chi_I";
    t.kind = TKind::Pseudo;
    t.F = D->ident(0);
    t.G = D->pull[SM.id1[0]];
    if (int(N.chi_unit.size()) != X.n_obj()) throw MalformedTable("action: chi_I has the wrong size");
    t.comp = N.chi_unit;
    for (OneId u = 0; u < X.n_one(); ++u)
      t.nat.push_back(forced_action(X, X.comp(t.comp[X.tgt(u)], u), X.comp(t.G->one[u], t.comp[X.src(u)]), "chi_I"));
    D->chi_unit.push_back(share(std::move(t)));
  }
  const LaxBidiagram& Dr = *D;
  for (TwoId al = 0; al < SM.n_two(); ++al)
    for (TwoId be : SM.twos_from(SM.tgt2(al)))
      D->xi[key2(be, al)] = forced_action_mod("xi", expected::xi_src(Dr, be, al), D->pull2[SM.vc(be, al)]);
  for (OneId f = 0; f < SM.n_one(); ++f)
    D->xi_id.push_back(forced_action_mod("xi_f", expected::xi_id_src(Dr, f), D->pull2[SM.id2[f]]));
  for (TwoId al = 0; al < SM.n_two(); ++al)
    for (TwoId be = 0; be < SM.n_two(); ++be)
      D->chi2[key2(be, al)] = forced_action_mod("chi2", expected::chi2_src(Dr, be, al), expected::chi2_tgt(Dr, be, al));
  for (OneId f = 0; f < SM.n_one(); ++f)
    for (OneId g = 0; g < SM.n_one(); ++g)
      for (OneId h = 0; h < SM.n_one(); ++h)
        D->omega[key3(h, g, f)] =
            forced_action_mod("omega", expected::omega_src(Dr, h, g, f), expected::omega_tgt(Dr, h, g, f));
  for (OneId f = 0; f < SM.n_one(); ++f) {
    D->gamma.push_back(forced_action_mod("gamma", expected::gamma_src(Dr, f), expected::ident_trans(Dr, f)));
    D->delta.push_back(forced_action_mod("delta", expected::delta_src(Dr, f), expected::ident_trans(Dr, f)));
  }
  Report r;
  try {
    r = check_coherence(Dr);
  } catch (const ComponentInvalid& e) {
    throw IncoherentAction(std::string("action: ") + e.what());
  }
  if (!r.ok()) throw IncoherentAction("action is not coherent: " + r.str(3));
  return D;
}

ActionGrothendieck action_grothendieck(const ActionCategory& N) {
  BidiagramPtr D = action_bidiagram(N);
  ActionGrothendieck R;
  R.G = grothendieck(D, false);
  const Grothendieck& G = *R.G;
  const Category& C = N.N;
  const Category& MC = N.M.C;
  const Bicategory& X = D->fib(0);
  int n_obj = int(C.obj_label.size());
  std::unordered_map<std::uint64_t, int> one_at;
  for (int a = 0; a < n_obj; ++a)
    for (int x = 0; x < int(MC.obj_label.size()); ++x)
      for (int b = 0; b < n_obj; ++b) {
        int bx = N.act_obj.at(key2(b, x));
        for (int f = 0; f < int(C.mor.size()); ++f)
          if (C.mor[f].first == a && C.mor[f].second == bx) {
            one_at[key3(f, x, b)] = int(R.ones.size());
            R.ones.push_back({f, x, b});
            R.one_map.push_back(G.one(f, x, b));
          }
      }
  for (int i = 0; i < int(R.ones.size()); ++i) {
    auto [f, x, b] = R.ones[i];
    for (int m = 0; m < int(MC.mor.size()); ++m) {
      if (MC.mor[m].first != x) continue;
      int g = C.comp.at(key2(N.act_mor.at(key2(C.id[b], m)), f));
      int j = one_at.at(key3(g, MC.mor[m].second, b));
      (void)j;
      R.twos.push_back({m, i});
      R.two_map.push_back(G.two(X.id2[g], m, R.one_map[i]));
    }
  }
  auto bijective = [&](const std::vector<int>& v, int n, const char* what) {
    std::vector<char> hit(n, 0);
    bool ok = int(v.size()) == n;
    for (int c : v) {
      if (c < 0 || c >= n || hit[c]) ok = false;
      else hit[c] = 1;
    }
    if (!ok) R.report.add(std::string("action.bijective.") + what, {});
  };
  const Bicategory& T = *G.total;
  if (T.n_obj() != n_obj) R.report.add("action.bijective.objects", {});
  bijective(R.one_map, T.n_one(), "1-cells");
  bijective(R.two_map, T.n_two(), "2-cells");
  return R;
}

}  // namespace bicat
