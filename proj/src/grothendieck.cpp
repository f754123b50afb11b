#include "bicat/grothendieck.hpp"

namespace bicat {

namespace {

FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }
TransPtr share(Transformation t) { return std::make_shared<const Transformation>(std::move(t)); }

template <class M>
int find_or_throw(const M& m, std::uint64_t k, const std::string& what) {
  auto it = m.find(k);
  if (it == m.end()) throw NotComposable("no " + what + " in the Grothendieck construction");
  return it->second;
}

}  // namespace

ObjId Grothendieck::obj(ObjId x, ObjId a) const { return find_or_throw(obj_index, key2(x, a), "object"); }
OneId Grothendieck::one(OneId u, OneId f, ObjId y) const {
  return find_or_throw(one_index, key3(u, f, y), "1-cell");
}
TwoId Grothendieck::two(TwoId phi, TwoId alpha, OneId src) const {
  return find_or_throw(two_index, key3(phi, alpha, src), "2-cell");
}

namespace {

// Builds ∫D. Each structure 2-cell is a pasting in the fiber over the
// source object; the comment above each method gives its leaves.
class Builder {
 public:
  explicit Builder(BidiagramPtr Dp) : D(*Dp), B(D.B()), C(D) {
    G = std::make_shared<Grothendieck>();
    G->D = Dp;
  }

  std::shared_ptr<Grothendieck> run() {
    auto T = std::make_shared<Bicategory>();
    T->name = "groth(" + D.name + ")";
    cells(*T);
    structure(*T);
    T->finalize();
    G->total = T;
    G->input_pseudo = D.is_pseudo();
    G->structure_invertible = true;
    for (auto [k, c] : T->assoc) G->structure_invertible &= T->is_iso(c);
    for (OneId k = 0; k < T->n_one(); ++k)
      G->structure_invertible &= T->is_iso(T->lunit[k]) && T->is_iso(T->runit[k]);
    return G;
  }

 private:
  const LaxBidiagram& D;
  const Bicategory& B;
  BidiagramCells C;
  std::shared_ptr<Grothendieck> G;
  // Composable pairs and triples of 1-cells of ∫D, filled by cells().
  std::vector<std::vector<OneId>> out_;

  const Bicategory& fib_of(OneId k) const { return D.fib(B.src(G->ones[k].f)); }
  ObjId src_obj(OneId k) const { return D.fib(B.src(G->ones[k].f)).src(G->ones[k].u); }
  PathP u_path(OneId k) const { return path::atom(fib_of(k), G->ones[k].u); }

  // Fiber path of the composite (u′,f′)∘(u,f): χz∘(f*u′∘u).
  PathP comp_path(OneId k2, OneId k1) const {
    const auto& o1 = G->ones[k1];
    const auto& o2 = G->ones[k2];
    return path::seq({C.chi(o2.f, o1.f, o2.y), C.pull(o1.f, u_path(k2)), u_path(k1)});
  }

  void cells(Bicategory& T) {
    for (ObjId a = 0; a < B.n_obj(); ++a)
      for (ObjId x = 0; x < D.fib(a).n_obj(); ++x) {
        G->obj_index[key2(x, a)] = T.add_obj("(" + D.fib(a).obj_name(x) + "," + B.obj_name(a) + ")");
        G->objs.push_back({x, a});
      }
    for (OneId f = 0; f < B.n_one(); ++f) {
      ObjId a = B.src(f), b = B.tgt(f);
      const Bicategory& Fa = D.fib(a);
      const LaxFunctor& P = D.f_(f);
      for (ObjId y = 0; y < D.fib(b).n_obj(); ++y)
        for (ObjId x = 0; x < Fa.n_obj(); ++x)
          for (OneId u : Fa.hom(x, P.obj[y])) {
            OneId k = T.add_one(G->obj(x, a), G->obj(y, b), "(" + Fa.one_name(u) + "," + B.one_name(f) + ")");
            G->one_index[key3(u, f, y)] = k;
            G->ones.push_back({u, f, y});
          }
    }
    out_.assign(T.n_obj(), {});
    for (OneId k = 0; k < T.n_one(); ++k) out_[T.src(k)].push_back(k);
    for (OneId k = 0; k < T.n_one(); ++k) {
      const auto& o = G->ones[k];
      const Bicategory& Fa = fib_of(k);
      ObjId x = src_obj(k);
      for (TwoId al : B.twos_from(o.f)) {
        OneId g = B.tgt2(al);
        OneId s1 = Fa.comp(D.pull2[al]->comp[o.y], o.u);
        for (OneId v : Fa.hom(x, D.f_(g).obj[o.y])) {
          OneId t = G->one(v, g, o.y);
          for (TwoId phi : Fa.hom2(s1, v)) {
            TwoId c = T.add_two(k, t, "(" + Fa.two_name(phi) + "," + B.two_name(al) + ")");
            G->two_index[key3(phi, al, k)] = c;
            G->twos.push_back({phi, al, k});
          }
        }
      }
    }
  }

  OneId comp1(OneId k2, OneId k1) const {
    const auto& o1 = G->ones[k1];
    const auto& o2 = G->ones[k2];
    OneId u = path::eval(comp_path(k2, k1));
    return G->one(u, B.comp(o2.f, o1.f), o2.y);
  }

  // 1̇_{(u,f)}: [1_f*y, u] → ξ_f⁻¹ → [u]
  TwoId identity2(OneId k) const {
    const auto& o = G->ones[k];
    Pasting p(path::comp(C.star(B.id2[o.f], o.y), u_path(k)));
    p.at(0, cell::inv(C.xi_id(o.f, o.y)));
    return G->two(p.eval(u_path(k)), B.id2[o.f], k);
  }

  // ψ⊙φ: [(β·α)*y, u] → ξ⁻¹ → [β*y, α*y, u] → φ → [β*y, v] → ψ → [w]
  TwoId vertical(TwoId c2, TwoId c1) const {
    const auto& t1 = G->twos[c1];
    const auto& t2 = G->twos[c2];
    OneId k = t1.src;
    const auto& o = G->ones[k];
    const Bicategory& Fa = fib_of(k);
    OneId v = Fa.tgt2(t1.phi), w = Fa.tgt2(t2.phi);
    TwoId ba = B.vc(t2.alpha, t1.alpha);
    Pasting p(path::comp(C.star(ba, o.y), u_path(k)));
    p.at(0, cell::inv(C.xi(t2.alpha, t1.alpha, o.y)));
    p.at(1, cell::gen(path::comp(C.star(t1.alpha, o.y), u_path(k)), path::atom(Fa, v), t1.phi));
    p.at(0, cell::gen(path::comp(C.star(t2.alpha, o.y), path::atom(Fa, v)), path::atom(Fa, w), t2.phi));
    return G->two(p.eval(path::atom(Fa, w)), ba, k);
  }

  // φ′⊚φ: [(α′∘α)*z, χ_{f′,f}z, f*u′, u] → χ_{α′,α} → [χ_{g′,g}z, α*g′*z, f*α′*z, f*u′, u]
  //   → f*φ′ → [χ, α*g′*z, f*v′, u] → α̂*_{v′} → [χ, g*v′, α*y, u] → φ → [χ, g*v′, v]
  TwoId horizontal(TwoId c2, TwoId c1, OneId src) const {
    const auto& t1 = G->twos[c1];
    const auto& t2 = G->twos[c2];
    OneId k1 = t1.src, k2 = t2.src;
    const auto& o1 = G->ones[k1];
    const auto& o2 = G->ones[k2];
    const Bicategory& Fa = fib_of(k1);
    const Bicategory& Fb = fib_of(k2);
    TwoId al = t1.alpha, al2 = t2.alpha;
    OneId f = o1.f, g = B.tgt2(al), g2 = B.tgt2(al2);
    ObjId y = o1.y, z = o2.y;
    OneId v = Fa.tgt2(t1.phi), v2 = Fb.tgt2(t2.phi);
    PathP pv2 = path::atom(Fb, v2), pv = path::atom(Fa, v);
    TwoId h = B.hc(al2, al);
    Pasting p(path::comp(C.star(h, z), comp_path(k2, k1)));
    p.at(0, C.chi2(al2, al, z));
    p.at(2, cell::apply(D.f_(f), cell::gen(path::comp(C.star(al2, z), u_path(k2)), pv2, t2.phi)));
    p.at(1, C.star_nat(al, pv2));
    p.at(2, cell::gen(path::comp(C.star(al, y), u_path(k1)), pv, t1.phi));
    PathP target = path::seq({C.chi(g2, g, z), C.pull(g, pv2), pv});
    return G->two(p.eval(target), h, src);
  }

  // å: [a*t, χ_{hg,f}t, f*χ_{h,g}t, f*g*w, f*v, u] → ω → [χ_{h,gf}t, χ_{g,f}h*t, f*g*w, f*v, u]
  //   → χ̂_{w} → [χ_{h,gf}t, (gf)*w, χ_{g,f}z, f*v, u]
  TwoId assoc(OneId k3, OneId k2, OneId k1, OneId src) const {
    const auto& o1 = G->ones[k1];
    const auto& o2 = G->ones[k2];
    const auto& o3 = G->ones[k3];
    OneId f = o1.f, g = o2.f, h = o3.f;
    OneId hg = B.comp(h, g), gf = B.comp(g, f);
    ObjId z = o2.y, t = o3.y;
    TwoId a = B.a(h, g, f);
    PathP wv = path::seq({C.chi(h, g, t), C.pull(g, u_path(k3)), u_path(k2)});
    Pasting p(path::comp(C.star(a, t), path::seq({C.chi(hg, f, t), C.pull(f, wv), u_path(k1)})));
    p.at(0, C.omega(h, g, f, t));
    p.at(1, C.chi_nat(g, f, u_path(k3)));
    PathP target = path::seq({C.chi(h, gf, t), C.pull(gf, u_path(k3)), C.chi(g, f, z), C.pull(f, u_path(k2)),
                              u_path(k1)});
    return G->two(p.eval(target), a, src);
  }

  // l̊: [l*y, χ_{1,f}y, f*χ_b y, u] → γ → [u]
  TwoId left_unit(OneId k, OneId src) const {
    const auto& o = G->ones[k];
    ObjId b = B.tgt(o.f);
    OneId one = B.id1[b];
    Pasting p(path::comp(C.star(B.l(o.f), o.y),
                         path::seq({C.chi(one, o.f, o.y), C.pull(o.f, C.chi_u(b, o.y)), u_path(k)})));
    p.at(0, C.gamma(o.f, o.y));
    return G->two(p.eval(u_path(k)), B.l(o.f), src);
  }

  // r̊: [r*y, χ_{f,1}y, 1_a*u, χ_a x] → χ̂_a⁻¹ → [r*y, χ_{f,1}y, χ_a f*y, u] → δ → [u]
  TwoId right_unit(OneId k, OneId src) const {
    const auto& o = G->ones[k];
    ObjId a = B.src(o.f);
    OneId one = B.id1[a];
    ObjId x = src_obj(k);
    Pasting p(path::comp(C.star(B.r(o.f), o.y),
                         path::seq({C.chi(o.f, one, o.y), C.pull(one, u_path(k)), C.chi_u(a, x)})));
    p.at(2, cell::inv(C.unit_nat(a, u_path(k))));
    p.at(0, C.delta(o.f, o.y));
    return G->two(p.eval(u_path(k)), B.r(o.f), src);
  }

  void structure(Bicategory& T) {
    for (ObjId c = 0; c < T.n_obj(); ++c) {
      auto [x, a] = G->objs[c];
      T.id1[c] = G->one(D.chi_unit[a]->comp[x], B.id1[a], x);
    }
    for (OneId k = 0; k < T.n_one(); ++k) T.id2[k] = identity2(k);
    for (OneId k1 = 0; k1 < T.n_one(); ++k1)
      for (OneId k2 : out_[T.tgt(k1)]) T.set_hcomp1(k2, k1, comp1(k2, k1));
    // hom2 lists are only available after finalize, so group 2-cells here.
    std::vector<std::vector<TwoId>> from(T.n_one());
    for (TwoId c = 0; c < T.n_two(); ++c) from[T.src2(c)].push_back(c);
    for (TwoId c1 = 0; c1 < T.n_two(); ++c1)
      for (TwoId c2 : from[T.tgt2(c1)]) T.set_vcomp(c2, c1, vertical(c2, c1));
    // Horizontal composition of 2-cells, by pairs of source 1-cells.
    for (OneId k1 = 0; k1 < T.n_one(); ++k1)
      for (OneId k2 : out_[T.tgt(k1)]) {
        OneId src = comp1(k2, k1);
        for (TwoId c1 : from[k1])
          for (TwoId c2 : from[k2]) T.set_hcomp2(c2, c1, horizontal(c2, c1, src));
      }
    for (OneId k1 = 0; k1 < T.n_one(); ++k1)
      for (OneId k2 : out_[T.tgt(k1)])
        for (OneId k3 : out_[T.tgt(k2)]) T.set_assoc(k3, k2, k1, assoc(k3, k2, k1, comp1(comp1(k3, k2), k1)));
    for (OneId k = 0; k < T.n_one(); ++k) {
      T.lunit[k] = left_unit(k, comp1(T.id1[T.tgt(k)], k));
      T.runit[k] = right_unit(k, comp1(k, T.id1[T.src(k)]));
    }
  }
};

}  // namespace

GrothPtr grothendieck(BidiagramPtr D, bool check) {
  if (check) {
    Report r = check_coherence(*D);
    if (!r.ok()) throw IncoherentInput(r.str(5));
  }
  return Builder(std::move(D)).run();
}

bool components_invertible(const Grothendieck& G, TwoId c) {
  const auto& t = G.twos[c];
  const auto& o = G.ones[t.src];
  const Bicategory& B = G.D->B();
  return B.is_iso(t.alpha) && G.D->fib(B.src(o.f)).is_iso(t.phi);
}

LaxFunctor projection(const Grothendieck& G) {
  const Bicategory& T = *G.total;
  const Bicategory& B = G.D->B();
  LaxFunctor P;
  P.name = "P";
  P.src = G.total;
  P.tgt = G.D->base;
  for (const auto& o : G.objs) {
    P.obj.push_back(o.a);
    P.unit.push_back(B.id2[B.id1[o.a]]);
  }
  for (const auto& o : G.ones) P.one.push_back(o.f);
  for (const auto& t : G.twos) P.two.push_back(t.alpha);
  for (auto [k, v] : T.hcomp1) P.comp[k] = B.id2[P.one[v]];
  return P;
}

Induced induced_functor(GrothPtr GD, FunPtr Fp) {
  const LaxFunctor& F = *Fp;
  const LaxBidiagram& D = *GD->D;
  Induced I;
  I.F = Fp;
  I.tgt = GD;
  I.src = grothendieck(precompose(D, Fp));
  const Grothendieck& S = *I.src;
  const Bicategory& TS = *S.total;
  const Bicategory& TD = *GD->total;
  LaxFunctor Fb;
  Fb.name = F.name + "-bar";
  Fb.src = S.total;
  Fb.tgt = GD->total;
  for (const auto& o : S.objs) Fb.obj.push_back(GD->obj(o.x, F.obj[o.a]));
  for (const auto& o : S.ones) Fb.one.push_back(GD->one(o.u, F.one[o.f], o.y));
  for (const auto& t : S.twos) Fb.two.push_back(GD->two(t.phi, F.two[t.alpha], Fb.one[t.src]));
  // (a⁻¹, F̂_{g,f}): F̂*z∘(χz∘(Ff*v∘u)) ⇒ (F̂*z∘χz)∘(Ff*v∘u)
  for (auto [key, k] : TS.hcomp1) {
    OneId k2 = int(key >> 32), k1 = int(key & 0xffffffffu);
    const auto& o1 = S.ones[k1];
    const auto& o2 = S.ones[k2];
    const Bicategory& X = D.fib(F.obj[S.D->B().src(o1.f)]);
    TwoId hat = F.hat(o2.f, o1.f);
    OneId hz = D.pull2[hat]->comp[o2.y];
    OneId chi = D.chi_(F.one[o2.f], F.one[o1.f]).comp[o2.y];
    OneId W = X.comp(D.f_(F.one[o1.f]).one[o2.u], o1.u);
    OneId src = TD.comp(Fb.one[k2], Fb.one[k1]);
    Fb.comp[key] = GD->two(X.ainv(hz, chi, W), hat, src);
  }
  // (1, F̂_a) on F̂_a*x∘χx
  for (ObjId c = 0; c < TS.n_obj(); ++c) {
    const auto& o = S.objs[c];
    const Bicategory& X = D.fib(F.obj[o.a]);
    OneId k = S.D->chi_unit[o.a]->comp[o.x];
    Fb.unit.push_back(GD->two(X.id2[k], F.unit[o.a], TD.id1[Fb.obj[c]]));
  }
  I.Fbar = share(std::move(Fb));
  return I;
}

LaxFunctor mediating(const Induced& I, FunPtr Lp, FunPtr Mp) {
  const LaxFunctor& F = *I.F;
  const LaxFunctor& L = *Lp;
  const LaxFunctor& M = *Mp;
  const Grothendieck& GD = *I.tgt;
  const Grothendieck& S = *I.src;
  const LaxBidiagram& D = *GD.D;
  const LaxBidiagram& DF = *S.D;
  const Bicategory& Cb = *L.src;
  if (M.src.get() != L.src.get() && !same_tables(*M.src, *L.src))
    throw SquareMismatch("L and M have different sources");
  LaxFunctor FL = compose_lax_functors(F, L);
  LaxFunctor PM = compose_lax_functors(projection(GD), M);
  std::string diff = first_difference(FL, PM);
  if (!diff.empty()) throw SquareMismatch("F∘L and P∘M differ: " + diff);

  BidiagramCells C(D);
  LaxFunctor N;
  N.name = "N";
  N.src = L.src;
  N.tgt = S.total;
  const Bicategory& TS = *S.total;
  for (ObjId c = 0; c < Cb.n_obj(); ++c) N.obj.push_back(S.obj(GD.objs[M.obj[c]].x, L.obj[c]));
  for (OneId f = 0; f < Cb.n_one(); ++f) {
    const auto& o = GD.ones[M.one[f]];
    N.one.push_back(S.one(o.u, L.one[f], o.y));
  }
  for (TwoId al = 0; al < Cb.n_two(); ++al)
    N.two.push_back(S.two(GD.twos[M.two[al]].phi, L.two[al], N.one[Cb.src2(al)]));

  // N̂_{g,f}: [FL̂*z, χ_F z, W] → split χ_F → [FL̂*z, F̂*z, χz, W] → ξ → [(FL̂·F̂)*z, χz, W] → D̂ → [D(gf)]
  for (auto [key, m] : M.comp) {
    OneId g = int(key >> 32), f = int(key & 0xffffffffu);
    const auto& Df = GD.ones[M.one[f]];
    const auto& Dg = GD.ones[M.one[g]];
    const auto& Dgf = GD.ones[M.one[Cb.comp(g, f)]];
    const Bicategory& X = D.fib(F.obj[L.obj[Cb.src(f)]]);
    OneId Lf = L.one[f], Lg = L.one[g];
    OneId FLf = F.one[Lf], FLg = F.one[Lg];
    ObjId z = Dg.y;
    TwoId FLhat = F.two[L.hat(g, f)], Fhat = F.hat(Lg, Lf);
    PathP chiF = path::atom(X, DF.chi_(Lg, Lf).comp[z]);
    PathP W = path::comp(C.pull(FLf, path::atom(D.fib(F.obj[L.obj[Cb.tgt(f)]]), Dg.u)), path::atom(X, Df.u));
    Pasting p(path::comp(C.star(FLhat, z), path::comp(chiF, W)));
    p.at(1, cell::gen(chiF, path::comp(C.star(Fhat, z), C.chi(FLg, FLf, z)), X.id2[path::eval(chiF)]));
    p.at(0, C.xi(FLhat, Fhat, z));
    TwoId both = D.B().vc(FLhat, Fhat);
    PathP dgf = path::atom(X, Dgf.u);
    p.at(0, cell::gen(path::seq({C.star(both, z), C.chi(FLg, FLf, z), C.pull(FLf, path::atom(D.fib(F.obj[L.obj[Cb.tgt(f)]]), Dg.u)),
                                 path::atom(X, Df.u)}),
                      dgf, GD.twos[m].phi));
    N.comp[key] = S.two(p.eval(dgf), L.hat(g, f), TS.comp(N.one[g], N.one[f]));
  }
  // N̂_c: [FL̂_c*x, χ_F x] → split → [FL̂_c*x, F̂*x, χx] → ξ → [(FL̂_c·F̂)*x, χx] → D̂_c → [D1_c]
  for (ObjId c = 0; c < Cb.n_obj(); ++c) {
    const auto& Dc = GD.objs[M.obj[c]];
    ObjId x = Dc.x, La = L.obj[c], FLa = F.obj[La];
    const Bicategory& X = D.fib(FLa);
    TwoId FLhat = F.two[L.unit[c]], Fhat = F.unit[La];
    PathP chiF = path::atom(X, DF.chi_unit[La]->comp[x]);
    Pasting p(path::comp(C.star(FLhat, x), chiF));
    p.at(1, cell::gen(chiF, path::comp(C.star(Fhat, x), C.chi_u(FLa, x)), X.id2[path::eval(chiF)]));
    p.at(0, C.xi(FLhat, Fhat, x));
    TwoId both = D.B().vc(FLhat, Fhat);
    PathP d1 = path::atom(X, GD.ones[M.one[Cb.id1[c]]].u);
    p.at(0, cell::gen(path::comp(C.star(both, x), C.chi_u(FLa, x)), d1, GD.twos[M.unit[c]].phi));
    N.unit.push_back(S.two(p.eval(d1), L.unit[c], TS.id1[N.obj[c]]));
  }
  return N;
}

LaxFunctor embedding_J(GrothPtr Gp, ObjId a) {
  const Grothendieck& G = *Gp;
  const LaxBidiagram& D = *G.D;
  const Bicategory& B = D.B();
  const Bicategory& X = D.fib(a);
  const Bicategory& T = *G.total;
  BidiagramCells C(D);
  OneId one = B.id1[a];
  TwoId i1 = B.id2[one];
  LaxFunctor J;
  J.name = "J";
  J.src = D.fiber[a];
  J.tgt = G.total;
  for (ObjId x = 0; x < X.n_obj(); ++x) J.obj.push_back(G.obj(x, a));
  auto chi = [&](ObjId y) { return D.chi_unit[a]->comp[y]; };
  for (OneId u = 0; u < X.n_one(); ++u) J.one.push_back(G.one(X.comp(chi(X.tgt(u)), u), one, X.tgt(u)));
  // φ̃: [1_{1_a}*y, χy, u] → ξ⁻¹ → [χy, u] → φ → [χy, v]
  for (TwoId phi = 0; phi < X.n_two(); ++phi) {
    OneId u = X.src2(phi), v = X.tgt2(phi);
    ObjId y = X.tgt(u);
    Pasting p(path::comp(C.star(i1, y), path::comp(C.chi_u(a, y), path::atom(X, u))));
    p.at(0, cell::inv(C.xi_id(one, y)));
    p.at(1, cell::gen(path::atom(X, u), path::atom(X, v), phi));
    PathP target = path::comp(C.chi_u(a, y), path::atom(X, v));
    J.two.push_back(G.two(p.eval(target), i1, J.one[u]));
  }
  // Ĵ_{v,u}: [l*z, χ_{1,1}z, 1*χz, 1*v, χy, u] → χ̂⁻¹ → [l*z, χ_{1,1}z, 1*χz, χz, v, u] → γ → [χz, v, u]
  for (OneId u = 0; u < X.n_one(); ++u)
    for (OneId v : X.ones_from(X.tgt(u))) {
      ObjId y = X.tgt(u), z = X.tgt(v);
      PathP pu = path::atom(X, u), pv = path::atom(X, v);
      PathP comp = path::seq({C.chi(one, one, z), C.pull(one, path::comp(C.chi_u(a, z), pv)), C.chi_u(a, y), pu});
      Pasting p(path::comp(C.star(B.l(one), z), comp));
      p.at(3, cell::inv(C.unit_nat(a, pv)));
      p.at(0, C.gamma(one, z));
      PathP target = path::comp(C.chi_u(a, z), path::comp(pv, pu));
      J.comp[key2(v, u)] = G.two(p.eval(target), B.l(one), T.comp(J.one[v], J.one[u]));
    }
  // Ĵ_x: [1_{1_a}*x, χx] → ξ⁻¹ → [χx]
  for (ObjId x = 0; x < X.n_obj(); ++x) {
    Pasting p(path::comp(C.star(i1, x), C.chi_u(a, x)));
    p.at(0, cell::inv(C.xi_id(one, x)));
    PathP target = path::comp(C.chi_u(a, x), path::id(X, x));
    J.unit.push_back(G.two(p.eval(target), i1, T.id1[J.obj[x]]));
  }
  return J;
}

InitialCollapse initial_collapse(GrothPtr Gp) {
  const Grothendieck& G = *Gp;
  const LaxBidiagram& D = *G.D;
  const Bicategory& B = D.B();
  const Bicategory& T = *G.total;
  for (TwoId c = 0; c < B.n_two(); ++c)
    if (!B.is_identity(c)) throw NoInitialObject("base is not locally discrete");
  ObjId zero = -1;
  for (ObjId o = 0; o < B.n_obj() && zero < 0; ++o) {
    bool ok = true;
    for (ObjId a = 0; a < B.n_obj() && ok; ++a) ok = B.hom(o, a).size() == 1;
    if (ok) zero = o;
  }
  if (zero < 0) throw NoInitialObject("no object with exactly one 1-cell to every object");
  auto to = [&](ObjId a) { return B.hom(zero, a)[0]; };
  const Bicategory& L0 = D.fib(zero);
  BidiagramCells C(D);
  InitialCollapse R;
  R.initial = zero;
  R.J = share(embedding_J(Gp, zero));

  LaxFunctor K;
  K.name = "K";
  K.src = G.total;
  K.tgt = D.fiber[zero];
  for (const auto& o : G.objs) K.obj.push_back(D.f_(to(o.a)).obj[o.x]);
  auto Kpath = [&](OneId k) {
    const auto& o = G.ones[k];
    ObjId a = B.src(o.f);
    return path::comp(C.chi(o.f, to(a), o.y), C.pull(to(a), path::atom(D.fib(a), o.u)));
  };
  for (OneId k = 0; k < T.n_one(); ++k) K.one.push_back(path::eval(Kpath(k)));
  // K(φ,1): [χy, 0_a*u] → insert 0_a*ξ_f → [χy, 0_a*1_f*y, 0_a*u] → 0_a*φ → [χy, 0_a*v]
  for (TwoId c = 0; c < T.n_two(); ++c) {
    const auto& t = G.twos[c];
    const auto& o = G.ones[t.src];
    ObjId a = B.src(o.f);
    const Bicategory& Fa = D.fib(a);
    OneId v = Fa.tgt2(t.phi);
    Pasting p(Kpath(t.src));
    p.at(1, cell::apply(D.f_(to(a)), C.xi_id(o.f, o.y)));
    p.at(1, cell::apply(D.f_(to(a)), cell::gen(path::comp(C.star(t.alpha, o.y), path::atom(Fa, o.u)),
                                               path::atom(Fa, v), t.phi)));
    K.two.push_back(p.eval(Kpath(T.tgt2(c))));
  }
  // K̂: [χ_{g,0_b}z, 0_b*v, χ_{f,0_a}y, 0_a*u] → χ̂⁻¹ → [χ_{g,0_b}z, χ_{f,0_a}g*z, 0_a*f*v, 0_a*u]
  //   → ω⁻¹ → [a*z, χ_{gf,0_a}z, 0_a*χ_{g,f}z, 0_a*f*v, 0_a*u] → ξ⁻¹ → [χ_{gf,0_a}z, 0_a*χ_{g,f}z, ...]
  for (auto [key, k] : T.hcomp1) {
    OneId k2 = int(key >> 32), k1 = int(key & 0xffffffffu);
    const auto& o1 = G.ones[k1];
    const auto& o2 = G.ones[k2];
    OneId f = o1.f, g = o2.f;
    ObjId a = B.src(f), b = B.src(g);
    OneId z0 = to(a);
    Pasting p(path::comp(Kpath(k2), Kpath(k1)));
    p.at(1, cell::inv(C.chi_nat(f, z0, path::atom(D.fib(b), o2.u))));
    p.at(0, cell::inv(C.omega(g, f, z0, o2.y)));
    p.at(0, cell::inv(C.xi_id(B.comp(B.comp(g, f), z0), o2.y)));
    PathP w = path::seq({C.chi(g, f, o2.y), C.pull(f, path::atom(D.fib(b), o2.u)), path::atom(D.fib(a), o1.u)});
    K.comp[key] = p.eval(path::comp(C.chi(B.comp(g, f), z0, o2.y), C.pull(z0, w)));
  }
  // K̂_{(x,a)}: [] → γ⁻¹ → [l*x, χ_{1,0_a}x, 0_a*χ_a x] → ξ⁻¹ → [χ_{1,0_a}x, 0_a*χ_a x]
  for (ObjId c = 0; c < T.n_obj(); ++c) {
    const auto& o = G.objs[c];
    OneId z0 = to(o.a);
    Pasting p(path::id(L0, K.obj[c]));
    p.at(0, cell::inv(C.gamma(z0, o.x)));
    p.at(0, cell::inv(C.xi_id(z0, o.x)));
    K.unit.push_back(p.eval(Kpath(T.id1[c])));
  }
  R.K = share(std::move(K));
  R.JK = share(compose_lax_functors(*R.J, *R.K));
  R.KJ = share(compose_lax_functors(*R.K, *R.J));
  R.id_total = share(identity_functor(G.total));
  R.id_fiber = share(identity_functor(D.fiber[zero]));

  // ε(x,a) = (1_{0_a*x}, 0_a).
  // ε̂: [1_{0_b}*y, χ_{0_b,1}y, χ_0 0_b*y, χ_{f,0_a}y, 0_a*u] → δ → [χ_{f,0_a}y, 0_a*u]
  Transformation eps;
  eps.name = "epsilon";
  eps.kind = TKind::Pseudo;
  eps.F = R.JK;
  eps.G = R.id_total;
  for (ObjId c = 0; c < T.n_obj(); ++c) {
    const auto& o = G.objs[c];
    eps.comp.push_back(G.one(L0.id1[R.K->obj[c]], to(o.a), o.x));
  }
  OneId one0 = B.id1[zero];
  for (OneId k = 0; k < T.n_one(); ++k) {
    const auto& o = G.ones[k];
    ObjId a = B.src(o.f), b = B.tgt(o.f);
    OneId zb = to(b), za = to(a);
    ObjId yb = D.f_(zb).obj[o.y];
    PathP start = path::seq({C.star(B.id2[zb], o.y), C.chi(zb, one0, o.y), C.pull(one0, path::id(L0, yb)),
                             C.chi_u(zero, yb), C.chi(o.f, za, o.y), C.pull(za, path::atom(D.fib(a), o.u))});
    Pasting p(start);
    p.at(0, C.delta(zb, o.y));
    PathP target = path::comp(C.chi(o.f, za, o.y),
                              path::comp(C.pull(za, path::atom(D.fib(a), o.u)), path::id(L0, R.K->obj[T.src(k)])));
    OneId src = T.comp(eps.comp[T.tgt(k)], R.JK->one[k]);
    eps.nat.push_back(G.two(p.eval(target), B.id2[zb], src));
  }
  R.eps = share(std::move(eps));

  // η x = χ_0 x.
  // η̂_u: [χy, u] → χ̂ → [1*u, χx] → γ⁻¹ → [l*y, χ_{1,1}y, 1*χy, 1*u, χx] → ξ⁻¹ → [χ_{1,1}y, 1*χy, 1*u, χx]
  Transformation eta;
  eta.name = "eta";
  eta.kind = TKind::Pseudo;
  eta.F = R.id_fiber;
  eta.G = R.KJ;
  for (ObjId x = 0; x < L0.n_obj(); ++x) eta.comp.push_back(D.chi_unit[zero]->comp[x]);
  for (OneId u = 0; u < L0.n_one(); ++u) {
    ObjId x = L0.src(u), y = L0.tgt(u);
    PathP pu = path::atom(L0, u);
    Pasting p(path::comp(C.chi_u(zero, y), pu));
    p.at(0, C.unit_nat(zero, pu));
    p.at(0, cell::inv(C.gamma(one0, y)));
    p.at(0, cell::inv(C.xi_id(one0, y)));
    PathP target = path::comp(path::comp(C.chi(one0, one0, y), C.pull(one0, path::comp(C.chi_u(zero, y), pu))),
                              C.chi_u(zero, x));
    eta.nat.push_back(p.eval(target));
  }
  R.eta = share(std::move(eta));
  return R;
}

Report check_coherence_oplax(const OplaxBidiagram& G, CoherenceOptions opt) { return check_coherence(*G.dual, opt); }

OplaxGrothendieck::One OplaxGrothendieck::one_prov(OneId k) const {
  const auto& o = dual->ones[k];
  return {o.u, o.f, o.y};
}

OplaxGrothPtr grothendieck_oplax(const OplaxBidiagram& G, bool check) {
  auto R = std::make_shared<OplaxGrothendieck>();
  R->G = G;
  R->dual = grothendieck(G.dual, check);
  auto T = std::make_shared<Bicategory>(coop(*R->dual->total));
  T->name = "groth(" + G.name + ")";
  R->total = T;
  return R;
}

LaxFunctor projection_oplax(const OplaxGrothendieck& G) {
  LaxFunctor P = coop_functor(projection(*G.dual), G.total, G.G.base);
  P.name = "P";
  return P;
}

}  // namespace bicat
