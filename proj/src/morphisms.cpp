#include "bicat/morphisms.hpp"

#include <sstream>

namespace bicat {

TwoId LaxFunctor::hat(OneId g, OneId f) const {
  auto it = comp.find(key2(g, f));
  if (it == comp.end()) throw NotComposable("functor constraint at (" + std::to_string(g) + "," + std::to_string(f) + ")");
  return it->second;
}

bool LaxFunctor::is_pseudo() const {
  for (auto [k, v] : comp)
    if (!tgt->is_iso(v)) return false;
  for (TwoId u : unit)
    if (!tgt->is_iso(u)) return false;
  return true;
}

bool LaxFunctor::is_normal() const {
  for (TwoId u : unit)
    if (!tgt->is_identity(u)) return false;
  return true;
}

bool LaxFunctor::is_strict() const {
  if (!is_normal()) return false;
  for (auto [k, v] : comp)
    if (!tgt->is_identity(v)) return false;
  return true;
}

namespace {

std::string tup(std::initializer_list<int> xs) {
  std::string s = "(";
  bool first = true;
  for (int x : xs) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + ")";
}

}  // namespace

Report validate_lax_functor(const LaxFunctor& F) {
  const Bicategory& A = *F.src;
  const Bicategory& B = *F.tgt;
  Report rep;
  if (int(F.obj.size()) != A.n_obj() || int(F.one.size()) != A.n_one() || int(F.two.size()) != A.n_two() ||
      int(F.unit.size()) != A.n_obj())
    throw SourceTargetMismatch("functor " + F.name + ": map sizes do not match the source");
  for (ObjId x = 0; x < A.n_obj(); ++x)
    if (F.obj[x] < 0 || F.obj[x] >= B.n_obj()) throw SourceTargetMismatch("object image out of range");
  for (OneId f = 0; f < A.n_one(); ++f) {
    OneId Ff = F.one[f];
    if (Ff < 0 || Ff >= B.n_one() || B.src(Ff) != F.obj[A.src(f)] || B.tgt(Ff) != F.obj[A.tgt(f)])
      throw SourceTargetMismatch("functor " + F.name + ": 1-cell image of " + std::to_string(f) + " mistyped");
  }
  for (TwoId a = 0; a < A.n_two(); ++a) {
    TwoId Fa = F.two[a];
    if (Fa < 0 || Fa >= B.n_two() || B.src2(Fa) != F.one[A.src2(a)] || B.tgt2(Fa) != F.one[A.tgt2(a)])
      throw SourceTargetMismatch("functor " + F.name + ": 2-cell image of " + std::to_string(a) + " mistyped");
  }
  for (ObjId x = 0; x < A.n_obj(); ++x) {
    TwoId u = F.unit[x];
    if (u < 0 || u >= B.n_two() || B.src2(u) != B.id1[F.obj[x]] || B.tgt2(u) != F.one[A.id1[x]])
      throw SourceTargetMismatch("functor " + F.name + ": unit constraint at " + std::to_string(x) + " mistyped");
  }
  for (OneId f = 0; f < A.n_one(); ++f)
    for (OneId g : A.ones_from(A.tgt(f))) {
      auto it = F.comp.find(key2(g, f));
      if (it == F.comp.end()) throw SourceTargetMismatch("functor " + F.name + ": missing constraint " + tup({g, f}));
      TwoId c = it->second;
      if (c < 0 || c >= B.n_two() || B.src2(c) != B.comp(F.one[g], F.one[f]) || B.tgt2(c) != F.one[A.comp(g, f)])
        throw SourceTargetMismatch("functor " + F.name + ": constraint " + tup({g, f}) + " mistyped");
    }
  // Hom-functoriality.
  for (OneId f = 0; f < A.n_one(); ++f)
    if (F.two[A.id2[f]] != B.id2[F.one[f]]) rep.add("functor.identity", {f});
  for (TwoId a = 0; a < A.n_two(); ++a)
    for (TwoId b : A.twos_from(A.tgt2(a)))
      if (F.two[A.vc(b, a)] != B.vc(F.two[b], F.two[a])) rep.add("functor.vcomp", {b, a});
  // Naturality of F̂_{g,f}.
  for (TwoId a = 0; a < A.n_two(); ++a) {
    OneId f = A.src2(a), f2 = A.tgt2(a);
    for (OneId g : A.ones_from(A.tgt(f)))
      for (TwoId b : A.twos_from(g)) {
        OneId g2 = A.tgt2(b);
        TwoId lhs = B.vc(F.hat(g2, f2), B.hc(F.two[b], F.two[a]));
        TwoId rhs = B.vc(F.two[A.hc(b, a)], F.hat(g, f));
        if (lhs != rhs) rep.add("functor.natural", {b, a});
      }
  }
  // Hexagon.
  for (OneId f = 0; f < A.n_one(); ++f)
    for (OneId g : A.ones_from(A.tgt(f)))
      for (OneId h : A.ones_from(A.tgt(g))) {
        OneId Ff = F.one[f], Fg = F.one[g], Fh = F.one[h];
        TwoId lhs = B.vc(F.hat(h, A.comp(g, f)), B.vc(B.whisker_l(Fh, F.hat(g, f)), B.a(Fh, Fg, Ff)));
        TwoId rhs = B.vc(F.two[A.a(h, g, f)], B.vc(F.hat(A.comp(h, g), f), B.whisker_r(F.hat(h, g), Ff)));
        if (lhs != rhs) rep.add("functor.hexagon", {h, g, f});
      }
  // Unit squares.
  for (OneId f = 0; f < A.n_one(); ++f) {
    ObjId a = A.src(f), b = A.tgt(f);
    OneId Ff = F.one[f];
    TwoId lhs = B.vc(F.two[A.l(f)], B.vc(F.hat(A.id1[b], f), B.whisker_r(F.unit[b], Ff)));
    if (lhs != B.l(Ff)) rep.add("functor.left_unit", {f});
    TwoId rhs = B.vc(F.two[A.r(f)], B.vc(F.hat(f, A.id1[a]), B.whisker_l(Ff, F.unit[a])));
    if (rhs != B.r(Ff)) rep.add("functor.right_unit", {f});
  }
  return rep;
}

LaxFunctor identity_functor(BicatPtr B) {
  LaxFunctor F;
  F.name = "1";
  F.src = B;
  F.tgt = B;
  for (ObjId x = 0; x < B->n_obj(); ++x) {
    F.obj.push_back(x);
    F.unit.push_back(B->id2[B->id1[x]]);
  }
  for (OneId f = 0; f < B->n_one(); ++f) F.one.push_back(f);
  for (TwoId a = 0; a < B->n_two(); ++a) F.two.push_back(a);
  for (auto [k, v] : B->hcomp1) F.comp[k] = B->id2[v];
  return F;
}

LaxFunctor compose_lax_functors(const LaxFunctor& G, const LaxFunctor& F) {
  if (F.tgt.get() != G.src.get() && !same_tables(*F.tgt, *G.src))
    throw SourceTargetMismatch("cannot compose " + G.name + " after " + F.name);
  const Bicategory& A = *F.src;
  const Bicategory& C = *G.tgt;
  LaxFunctor H;
  H.name = G.name + "." + F.name;
  H.src = F.src;
  H.tgt = G.tgt;
  for (ObjId x = 0; x < A.n_obj(); ++x) {
    H.obj.push_back(G.obj[F.obj[x]]);
    H.unit.push_back(C.vc(G.two[F.unit[x]], G.unit[F.obj[x]]));
  }
  for (OneId f = 0; f < A.n_one(); ++f) H.one.push_back(G.one[F.one[f]]);
  for (TwoId a = 0; a < A.n_two(); ++a) H.two.push_back(G.two[F.two[a]]);
  for (auto [k, v] : F.comp) {
    OneId g = int(k >> 32), f = int(k & 0xffffffffu);
    H.comp[k] = C.vc(G.two[v], G.hat(F.one[g], F.one[f]));
  }
  return H;
}

LaxFunctor coop_functor(const LaxFunctor& F, BicatPtr src_coop, BicatPtr tgt_coop) {
  LaxFunctor H;
  H.name = F.name + "^coop";
  H.src = src_coop;
  H.tgt = tgt_coop;
  H.obj = F.obj;
  H.one = F.one;
  H.two = F.two;
  const Bicategory& B = *F.tgt;
  for (TwoId u : F.unit) H.unit.push_back(B.inv(u));
  for (auto [k, v] : F.comp) {
    OneId g = int(k >> 32), f = int(k & 0xffffffffu);
    H.comp[key2(f, g)] = B.inv(v);
  }
  return H;
}

bool same_functor(const LaxFunctor& F, const LaxFunctor& G) { return first_difference(F, G).empty(); }

std::string first_difference(const LaxFunctor& F, const LaxFunctor& G) {
  if (F.obj != G.obj) return "object map";
  if (F.one != G.one) {
    for (std::size_t i = 0; i < F.one.size() && i < G.one.size(); ++i)
      if (F.one[i] != G.one[i]) return "1-cell map at " + std::to_string(i);
    return "1-cell map size";
  }
  if (F.two != G.two) {
    for (std::size_t i = 0; i < F.two.size() && i < G.two.size(); ++i)
      if (F.two[i] != G.two[i]) return "2-cell map at " + std::to_string(i);
    return "2-cell map size";
  }
  if (F.unit != G.unit) return "unit constraint";
  if (F.comp != G.comp) {
    for (auto [k, v] : F.comp) {
      auto it = G.comp.find(k);
      if (it == G.comp.end() || it->second != v)
        return "composition constraint at (" + std::to_string(k >> 32) + "," + std::to_string(k & 0xffffffffu) + ")";
    }
    return "composition constraint domain";
  }
  return {};
}

Report check_isomorphism(const LaxFunctor& F) {
  const Bicategory& A = *F.src;
  const Bicategory& B = *F.tgt;
  Report rep;
  if (!F.is_strict()) rep.add("iso.strict", {});
  auto bijective = [&](const std::vector<int>& m, int n, const char* what) {
    std::vector<char> hit(n, 0);
    bool ok = int(m.size()) == n;
    for (int v : m) {
      if (v < 0 || v >= n || hit[v]) ok = false;
      else hit[v] = 1;
    }
    if (!ok) rep.add(std::string("iso.bijective.") + what, {});
  };
  bijective(F.obj, B.n_obj(), "objects");
  bijective(F.one, B.n_one(), "1-cells");
  bijective(F.two, B.n_two(), "2-cells");
  if (!rep.ok()) return rep;
  for (OneId f = 0; f < A.n_one(); ++f)
    if (B.src(F.one[f]) != F.obj[A.src(f)] || B.tgt(F.one[f]) != F.obj[A.tgt(f)]) rep.add("iso.typing1", {f});
  for (TwoId c = 0; c < A.n_two(); ++c)
    if (B.src2(F.two[c]) != F.one[A.src2(c)] || B.tgt2(F.two[c]) != F.one[A.tgt2(c)]) rep.add("iso.typing2", {c});
  for (ObjId x = 0; x < A.n_obj(); ++x)
    if (F.one[A.id1[x]] != B.id1[F.obj[x]]) rep.add("iso.id1", {x});
  for (OneId f = 0; f < A.n_one(); ++f) {
    if (F.two[A.id2[f]] != B.id2[F.one[f]]) rep.add("iso.id2", {f});
    if (F.two[A.l(f)] != B.l(F.one[f])) rep.add("iso.lunit", {f});
    if (F.two[A.r(f)] != B.r(F.one[f])) rep.add("iso.runit", {f});
  }
  for (auto [k, v] : A.vcomp) {
    int b = int(k >> 32), a = int(k & 0xffffffffu);
    if (F.two[v] != B.vc(F.two[b], F.two[a])) rep.add("iso.vcomp", {b, a});
  }
  for (auto [k, v] : A.hcomp1) {
    int g = int(k >> 32), f = int(k & 0xffffffffu);
    if (F.one[v] != B.comp(F.one[g], F.one[f])) rep.add("iso.hcomp1", {g, f});
  }
  for (auto [k, v] : A.hcomp2) {
    int b = int(k >> 32), a = int(k & 0xffffffffu);
    if (F.two[v] != B.hc(F.two[b], F.two[a])) rep.add("iso.hcomp2", {b, a});
  }
  for (auto [k, v] : A.assoc) {
    int h = int(k >> 42), g = int((k >> 21) & 0x1fffff), f = int(k & 0x1fffff);
    if (F.two[v] != B.a(F.one[h], F.one[g], F.one[f])) rep.add("iso.assoc", {h, g, f});
  }
  return rep;
}

std::string to_string(TKind k) {
  switch (k) {
    case TKind::Lax: return "lax";
    case TKind::Oplax: return "oplax";
    case TKind::Pseudo: return "pseudo";
  }
  return "?";
}

Report validate_transformation(const Transformation& t) {
  const LaxFunctor& F = *t.F;
  const LaxFunctor& G = *t.G;
  const Bicategory& A = *F.src;
  const Bicategory& B = *F.tgt;
  Report rep;
  if (int(t.comp.size()) != A.n_obj() || int(t.nat.size()) != A.n_one())
    throw SourceTargetMismatch("transformation " + t.name + ": data sizes do not match the source");
  for (ObjId x = 0; x < A.n_obj(); ++x) {
    OneId c = t.comp[x];
    if (c < 0 || c >= B.n_one() || B.src(c) != F.obj[x] || B.tgt(c) != G.obj[x])
      throw SourceTargetMismatch("transformation " + t.name + ": component at " + std::to_string(x) + " mistyped");
  }
  const bool oplax = t.kind == TKind::Oplax;
  for (OneId f = 0; f < A.n_one(); ++f) {
    OneId ca = t.comp[A.src(f)], cb = t.comp[A.tgt(f)];
    OneId s = B.comp(cb, F.one[f]), g = B.comp(G.one[f], ca);
    if (oplax) std::swap(s, g);
    TwoId n = t.nat[f];
    if (n < 0 || n >= B.n_two() || B.src2(n) != s || B.tgt2(n) != g)
      throw SourceTargetMismatch("transformation " + t.name + ": naturality at " + std::to_string(f) + " mistyped");
    if (t.kind == TKind::Pseudo && !B.is_iso(n)) rep.add("transformation.invertible", {f});
  }
  // Naturality in 2-cells.
  for (TwoId s = 0; s < A.n_two(); ++s) {
    OneId f = A.src2(s), f2 = A.tgt2(s);
    OneId ca = t.comp[A.src(f)], cb = t.comp[A.tgt(f)];
    TwoId lhs, rhs;
    if (!oplax) {
      lhs = B.vc(B.whisker_r(G.two[s], ca), t.nat[f]);
      rhs = B.vc(t.nat[f2], B.whisker_l(cb, F.two[s]));
    } else {
      lhs = B.vc(t.nat[f2], B.whisker_r(G.two[s], ca));
      rhs = B.vc(B.whisker_l(cb, F.two[s]), t.nat[f]);
    }
    if (lhs != rhs) rep.add("transformation.natural", {s});
  }
  // Compatibility with composition.
  for (OneId f = 0; f < A.n_one(); ++f)
    for (OneId g : A.ones_from(A.tgt(f))) {
      OneId gf = A.comp(g, f);
      OneId aa = t.comp[A.src(f)], ab = t.comp[A.tgt(f)], ac = t.comp[A.tgt(g)];
      OneId Ff = F.one[f], Fg = F.one[g], Gf = G.one[f], Gg = G.one[g];
      TwoId lhs, rhs;
      if (!oplax) {
        lhs = B.vc(t.nat[gf], B.whisker_l(ac, F.hat(g, f)));
        rhs = B.whisker_r(t.nat[g], Ff);
        rhs = B.vc(B.a(Gg, ab, Ff), B.vc(rhs, B.ainv(ac, Fg, Ff)));
        rhs = B.vc(B.whisker_l(Gg, t.nat[f]), rhs);
        rhs = B.vc(B.ainv(Gg, Gf, aa), rhs);
        rhs = B.vc(B.whisker_r(G.hat(g, f), aa), rhs);
      } else {
        lhs = B.vc(t.nat[gf], B.whisker_r(G.hat(g, f), aa));
        rhs = B.vc(B.whisker_l(Gg, t.nat[f]), B.a(Gg, Gf, aa));
        rhs = B.vc(B.ainv(Gg, ab, Ff), rhs);
        rhs = B.vc(B.whisker_r(t.nat[g], Ff), rhs);
        rhs = B.vc(B.a(ac, Fg, Ff), rhs);
        rhs = B.vc(B.whisker_l(ac, F.hat(g, f)), rhs);
      }
      if (lhs != rhs) rep.add("transformation.composition", {g, f});
    }
  // Compatibility with identities.
  for (ObjId x = 0; x < A.n_obj(); ++x) {
    OneId ax = t.comp[x];
    OneId one_x = A.id1[x];
    TwoId lhs, rhs;
    if (!oplax) {
      lhs = B.vc(t.nat[one_x], B.whisker_l(ax, F.unit[x]));
      rhs = B.vc(B.whisker_r(G.unit[x], ax), B.vc(B.inv(B.l(ax)), B.r(ax)));
    } else {
      lhs = B.vc(t.nat[one_x], B.whisker_r(G.unit[x], ax));
      rhs = B.vc(B.whisker_l(ax, F.unit[x]), B.vc(B.inv(B.r(ax)), B.l(ax)));
    }
    if (lhs != rhs) rep.add("transformation.unit", {x});
  }
  return rep;
}

Transformation identity_transformation(FunPtr F) {
  const Bicategory& B = *F->tgt;
  const Bicategory& A = *F->src;
  Transformation t;
  t.name = "1_" + F->name;
  t.kind = TKind::Pseudo;
  t.F = F;
  t.G = F;
  for (ObjId x = 0; x < A.n_obj(); ++x) t.comp.push_back(B.id1[F->obj[x]]);
  for (OneId f = 0; f < A.n_one(); ++f) {
    OneId Ff = F->one[f];
    t.nat.push_back(B.vc(B.inv(B.r(Ff)), B.l(Ff)));
  }
  return t;
}

Transformation vertical_compose(const Transformation& beta, const Transformation& alpha) {
  if (alpha.G.get() != beta.F.get() && !same_functor(*alpha.G, *beta.F))
    throw SourceTargetMismatch("vertical composite of " + beta.name + " after " + alpha.name);
  TKind k = alpha.kind;
  if (alpha.kind != beta.kind) {
    bool lax_ok = alpha.kind != TKind::Oplax && beta.kind != TKind::Oplax;
    if (!lax_ok) throw KindMismatch("vertical composite of oplax with lax");
    k = TKind::Lax;
  }
  const Bicategory& A = *alpha.F->src;
  const Bicategory& B = *alpha.F->tgt;
  const LaxFunctor& F = *alpha.F;
  const LaxFunctor& G = *alpha.G;
  const LaxFunctor& H = *beta.G;
  Transformation t;
  t.name = beta.name + "." + alpha.name;
  t.kind = k;
  t.F = alpha.F;
  t.G = beta.G;
  for (ObjId x = 0; x < A.n_obj(); ++x) t.comp.push_back(B.comp(beta.comp[x], alpha.comp[x]));
  for (OneId f = 0; f < A.n_one(); ++f) {
    ObjId a = A.src(f), b = A.tgt(f);
    OneId aa = alpha.comp[a], ab = alpha.comp[b], ba = beta.comp[a], bb = beta.comp[b];
    OneId Ff = F.one[f], Gf = G.one[f], Hf = H.one[f];
    TwoId c;
    if (k != TKind::Oplax) {
      c = B.a(bb, ab, Ff);
      c = B.vc(B.whisker_l(bb, alpha.nat[f]), c);
      c = B.vc(B.ainv(bb, Gf, aa), c);
      c = B.vc(B.whisker_r(beta.nat[f], aa), c);
      c = B.vc(B.a(Hf, ba, aa), c);
    } else {
      c = B.ainv(Hf, ba, aa);
      c = B.vc(B.whisker_r(beta.nat[f], aa), c);
      c = B.vc(B.a(bb, Gf, aa), c);
      c = B.vc(B.whisker_l(bb, alpha.nat[f]), c);
      c = B.vc(B.ainv(bb, ab, Ff), c);
    }
    t.nat.push_back(c);
  }
  return t;
}

Transformation whisker_left(FunPtr H, const Transformation& alpha, FunPtr HF, FunPtr HG) {
  const Bicategory& A = *alpha.F->src;
  const Bicategory& C = *H->tgt;
  const LaxFunctor& F = *alpha.F;
  const LaxFunctor& G = *alpha.G;
  Transformation t;
  t.name = H->name + alpha.name;
  t.kind = alpha.kind;
  t.F = HF;
  t.G = HG;
  for (ObjId x = 0; x < A.n_obj(); ++x) t.comp.push_back(H->one[alpha.comp[x]]);
  for (OneId f = 0; f < A.n_one(); ++f) {
    OneId aa = alpha.comp[A.src(f)], ab = alpha.comp[A.tgt(f)];
    OneId Ff = F.one[f], Gf = G.one[f];
    TwoId c;
    if (alpha.kind != TKind::Oplax)
      c = C.vc(C.inv(H->hat(Gf, aa)), C.vc(H->two[alpha.nat[f]], H->hat(ab, Ff)));
    else
      c = C.vc(C.inv(H->hat(ab, Ff)), C.vc(H->two[alpha.nat[f]], H->hat(Gf, aa)));
    t.nat.push_back(c);
  }
  return t;
}

Transformation whisker_right(const Transformation& alpha, FunPtr K, FunPtr FK, FunPtr GK) {
  const Bicategory& A = *K->src;
  Transformation t;
  t.name = alpha.name + K->name;
  t.kind = alpha.kind;
  t.F = FK;
  t.G = GK;
  for (ObjId x = 0; x < A.n_obj(); ++x) t.comp.push_back(alpha.comp[K->obj[x]]);
  for (OneId f = 0; f < A.n_one(); ++f) t.nat.push_back(alpha.nat[K->one[f]]);
  return t;
}

Transformation coop_transformation(const Transformation& alpha, FunPtr Gc, FunPtr Fc) {
  Transformation t;
  t.name = alpha.name + "^coop";
  t.kind = alpha.kind;
  t.F = Gc;
  t.G = Fc;
  t.comp = alpha.comp;
  t.nat = alpha.nat;
  return t;
}

Report validate_modification(const Modification& m) {
  const Transformation& al = *m.alpha;
  const Transformation& be = *m.beta;
  const Bicategory& A = *al.F->src;
  const Bicategory& B = *al.F->tgt;
  Report rep;
  if ((al.kind == TKind::Oplax) != (be.kind == TKind::Oplax))
    throw KindMismatch("modification between lax and oplax transformations");
  if (int(m.comp.size()) != A.n_obj()) throw SourceTargetMismatch("modification " + m.name + ": wrong size");
  for (ObjId x = 0; x < A.n_obj(); ++x) {
    TwoId c = m.comp[x];
    if (c < 0 || c >= B.n_two() || B.src2(c) != al.comp[x] || B.tgt2(c) != be.comp[x])
      throw SourceTargetMismatch("modification " + m.name + ": component at " + std::to_string(x) + " mistyped");
  }
  const LaxFunctor& F = *al.F;
  const LaxFunctor& G = *al.G;
  for (OneId f = 0; f < A.n_one(); ++f) {
    ObjId a = A.src(f), b = A.tgt(f);
    TwoId lhs, rhs;
    if (al.kind != TKind::Oplax) {
      lhs = B.vc(B.whisker_l(G.one[f], m.comp[a]), al.nat[f]);
      rhs = B.vc(be.nat[f], B.whisker_r(m.comp[b], F.one[f]));
    } else {
      lhs = B.vc(B.whisker_r(m.comp[b], F.one[f]), al.nat[f]);
      rhs = B.vc(be.nat[f], B.whisker_l(G.one[f], m.comp[a]));
    }
    if (lhs != rhs) rep.add("modification.square", {f});
  }
  return rep;
}

bool is_invertible(const Modification& m) {
  const Bicategory& B = *m.alpha->F->tgt;
  for (TwoId c : m.comp)
    if (!B.is_iso(c)) return false;
  return true;
}

Modification identity_modification(TransPtr alpha) {
  Modification m;
  m.name = "1_" + alpha->name;
  const Bicategory& B = *alpha->F->tgt;
  for (OneId c : alpha->comp) m.comp.push_back(B.id2[c]);
  m.alpha = alpha;
  m.beta = alpha;
  return m;
}

PseudoComposite compose_pseudo_transformations(const Transformation& beta, const Transformation& alpha) {
  if (alpha.kind != TKind::Pseudo || beta.kind != TKind::Pseudo)
    throw KindMismatch("compose_pseudo_transformations needs pseudo transformations");
  PseudoComposite r;
  auto mk = [](const LaxFunctor& G, const LaxFunctor& F) {
    return std::make_shared<const LaxFunctor>(compose_lax_functors(G, F));
  };
  r.GF = mk(*beta.F, *alpha.F);
  r.GF2 = mk(*beta.F, *alpha.G);
  r.G2F = mk(*beta.G, *alpha.F);
  r.G2F2 = mk(*beta.G, *alpha.G);
  r.G_alpha = std::make_shared<const Transformation>(whisker_left(beta.F, alpha, r.GF, r.GF2));
  r.beta_F2 = std::make_shared<const Transformation>(whisker_right(beta, alpha.G, r.GF2, r.G2F2));
  r.G2_alpha = std::make_shared<const Transformation>(whisker_left(beta.G, alpha, r.G2F, r.G2F2));
  r.beta_F = std::make_shared<const Transformation>(whisker_right(beta, alpha.F, r.GF, r.G2F));
  r.composite = std::make_shared<const Transformation>(vertical_compose(*r.beta_F2, *r.G_alpha));
  r.other = std::make_shared<const Transformation>(vertical_compose(*r.G2_alpha, *r.beta_F));
  Modification m;
  m.name = "interchange(" + beta.name + "," + alpha.name + ")";
  m.alpha = r.composite;
  m.beta = r.other;
  for (ObjId x = 0; x < alpha.F->src->n_obj(); ++x) m.comp.push_back(beta.nat[alpha.comp[x]]);
  r.interchange = std::make_shared<const Modification>(std::move(m));
  return r;
}

// ---------------------------------------------------------------------------

namespace path {

PathP atom(const Bicategory& B, OneId u) {
  return std::make_shared<const Path>(Path{Path::Atom, &B, u, {}, {}, nullptr});
}
PathP id(const Bicategory& B, ObjId x) {
  return std::make_shared<const Path>(Path{Path::Id, &B, x, {}, {}, nullptr});
}
PathP comp(PathP l, PathP r) {
  const Bicategory* B = l->B;
  if (B != r->B) throw IllTypedTerm("composite of paths in different bicategories");
  if (src(l) != tgt(r)) throw IllTypedTerm("composite of non-composable paths " + show(l) + " o " + show(r));
  return std::make_shared<const Path>(Path{Path::Comp, B, -1, std::move(l), std::move(r), nullptr});
}
PathP apply(const LaxFunctor& F, PathP p) {
  if (p->B != F.src.get()) throw IllTypedTerm("functor " + F.name + " applied to a path outside its source");
  return std::make_shared<const Path>(Path{Path::Apply, F.tgt.get(), -1, {}, std::move(p), &F});
}
PathP apply_chain(const std::vector<const LaxFunctor*>& chain, PathP p) {
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) p = apply(**it, p);
  return p;
}
PathP seq(std::vector<PathP> ps) {
  if (ps.empty()) throw IllTypedTerm("empty path sequence");
  PathP acc = ps.back();
  for (int i = int(ps.size()) - 2; i >= 0; --i) acc = comp(ps[i], acc);
  return acc;
}
OneId eval(const PathP& p) {
  switch (p->kind) {
    case Path::Atom: return p->id;
    case Path::Id: return p->B->id1[p->id];
    case Path::Comp: return p->B->comp(eval(p->l), eval(p->r));
    case Path::Apply: return p->F->one[eval(p->r)];
  }
  return -1;
}
ObjId src(const PathP& p) {
  switch (p->kind) {
    case Path::Atom: return p->B->src(p->id);
    case Path::Id: return p->id;
    case Path::Comp: return src(p->r);
    case Path::Apply: return p->F->obj[src(p->r)];
  }
  return -1;
}
ObjId tgt(const PathP& p) {
  switch (p->kind) {
    case Path::Atom: return p->B->tgt(p->id);
    case Path::Id: return p->id;
    case Path::Comp: return tgt(p->l);
    case Path::Apply: return p->F->obj[tgt(p->r)];
  }
  return -1;
}
std::string show(const PathP& p) {
  switch (p->kind) {
    case Path::Atom: return p->B->one_name(p->id);
    case Path::Id: return "1_" + p->B->obj_name(p->id);
    case Path::Comp: return "(" + show(p->l) + " o " + show(p->r) + ")";
    case Path::Apply: return p->F->name + "[" + show(p->r) + "]";
  }
  return "?";
}

}  // namespace path

namespace {

// A leaf of a normal form: a functor chain applied to an atom.
struct Leaf {
  std::vector<const LaxFunctor*> chain;  // outermost first
  const Bicategory* base;
  OneId atom;
  bool operator==(const Leaf& o) const { return chain == o.chain && base == o.base && atom == o.atom; }
};

PathP leaf_path(const Leaf& lf) {
  return path::apply_chain(lf.chain, path::atom(*lf.base, lf.atom));
}

struct Normal {
  std::vector<Leaf> leaves;
  std::vector<OneId> vals;  // evaluated leaves, in the path's bicategory
  ObjId obj;                // source object, used when leaves is empty
  TwoT cell;                // from the path to the right-nested composite
};

// Right-nested composite of vals[i..], or the identity at obj when empty.
OneId rn_val(const Bicategory& B, const std::vector<OneId>& vals, std::size_t i, ObjId obj) {
  if (i >= vals.size()) return B.id1[obj];
  OneId acc = vals.back();
  for (std::size_t j = vals.size() - 1; j-- > i;) acc = B.comp(vals[j], acc);
  return acc;
}

// 2-cell rn(S)∘rn(T) ⇒ rn(S++T) in B.
TwoT append_cell(const Bicategory& B, const std::vector<OneId>& S, ObjId sobj, const std::vector<OneId>& T, ObjId tobj) {
  if (T.empty()) return term::runit(term::gen(rn_val(B, S, 0, sobj)));
  if (S.empty()) return term::lunit(term::gen(rn_val(B, T, 0, tobj)));
  // (s1∘S')∘T ⇒ s1∘(S'∘T) ⇒ s1∘rn(S'++T)
  std::vector<OneId> rest(S.begin() + 1, S.end());
  OneId s1 = S[0];
  if (rest.empty()) return term::id2(term::comp(term::gen(s1), term::gen(rn_val(B, T, 0, tobj))));
  TwoT a = term::assoc(term::gen(s1), term::gen(rn_val(B, rest, 0, sobj)), term::gen(rn_val(B, T, 0, tobj)));
  TwoT inner = append_cell(B, rest, sobj, T, tobj);
  return term::vc(term::hc(term::id2(s1), inner), a);
}

Normal normalize(const PathP& p) {
  const Bicategory& B = *p->B;
  Normal n;
  n.obj = path::src(p);
  switch (p->kind) {
    case Path::Atom:
      n.leaves.push_back({{}, p->B, p->id});
      n.vals.push_back(p->id);
      n.cell = term::id2(p->id);
      return n;
    case Path::Id:
      n.cell = term::id2(term::id1(p->id));
      return n;
    case Path::Comp: {
      Normal a = normalize(p->l), b = normalize(p->r);
      n.leaves = a.leaves;
      n.leaves.insert(n.leaves.end(), b.leaves.begin(), b.leaves.end());
      n.vals = a.vals;
      n.vals.insert(n.vals.end(), b.vals.begin(), b.vals.end());
      n.obj = b.obj;
      n.cell = term::vc(append_cell(B, a.vals, a.obj, b.vals, b.obj), term::hc(a.cell, b.cell));
      return n;
    }
    case Path::Apply: {
      const LaxFunctor& F = *p->F;
      const Bicategory& A = *F.src;
      Normal in = normalize(p->r);
      TwoT step = term::two(F.two[eval_two(A, in.cell)]);
      for (auto lf : in.leaves) {
        lf.chain.insert(lf.chain.begin(), &F);
        n.leaves.push_back(std::move(lf));
      }
      for (OneId v : in.vals) n.vals.push_back(F.one[v]);
      n.obj = F.obj[in.obj];
      // F(rn(vals)) ⇒ rn(F vals)
      TwoT dist;
      if (in.vals.empty()) {
        TwoId u = F.unit[in.obj];
        if (!B.is_iso(u)) throw IllTypedTerm("canonical iso needs invertible unit constraint of " + F.name);
        dist = term::two(B.inv(u));
      } else {
        // peel from the right: F(v_i∘rest) ⇒ Fv_i∘F(rest)
        std::size_t k = in.vals.size();
        dist = term::id2(F.one[in.vals[k - 1]]);
        for (std::size_t i = k - 1; i-- > 0;) {
          OneId rest = rn_val(A, in.vals, i + 1, in.obj);
          TwoId h = F.hat(in.vals[i], rest);
          if (!B.is_iso(h)) throw IllTypedTerm("canonical iso needs invertible constraint of " + F.name);
          dist = term::vc(term::hc(term::id2(F.one[in.vals[i]]), dist), term::two(B.inv(h)));
        }
      }
      n.cell = term::vc(dist, step);
      return n;
    }
  }
  return n;
}

}  // namespace

namespace cell {

Cell gen(PathP src, PathP tgt, TwoId c) {
  const Bicategory& B = *src->B;
  if (tgt->B != src->B) throw IllTypedTerm("cell endpoints in different bicategories");
  if (c < 0 || c >= B.n_two()) throw IllTypedTerm("unknown 2-cell");
  OneId s = path::eval(src), t = path::eval(tgt);
  if (B.src2(c) != s || B.tgt2(c) != t)
    throw IllTypedTerm("2-cell " + B.two_name(c) + " does not go " + path::show(src) + " => " + path::show(tgt));
  return {std::move(src), std::move(tgt), term::two(c), &B};
}

Cell id(PathP p) {
  const Bicategory* B = p->B;
  OneId v = path::eval(p);
  return {p, p, term::id2(v), B};
}

Cell canonical(PathP from, PathP to) {
  const Bicategory* B = from->B;
  if (to->B != B) throw IllTypedTerm("canonical iso between different bicategories");
  Normal a = normalize(from), b = normalize(to);
  if (!(a.leaves == b.leaves) || (a.leaves.empty() && a.obj != b.obj))
    throw IllTypedTerm("no canonical iso " + path::show(from) + " => " + path::show(to));
  return {from, to, term::vc(term::inv(b.cell), a.cell), B};
}

Cell apply(const LaxFunctor& F, const Cell& c) {
  TwoId v = c.eval();
  return {path::apply(F, c.src), path::apply(F, c.tgt), term::two(F.two[v]), F.tgt.get()};
}

Cell inv(const Cell& c) { return {c.tgt, c.src, term::inv(c.t), c.B}; }

Cell then(const Cell& first, const Cell& second) {
  Cell k = canonical(first.tgt, second.src);
  return {first.src, second.tgt, term::vc(second.t, term::vc(k.t, first.t)), first.B};
}

Cell hcomp(const Cell& b, const Cell& a) {
  return {path::comp(b.src, a.src), path::comp(b.tgt, a.tgt), term::hc(b.t, a.t), b.B};
}

}  // namespace cell

Pasting::Pasting(PathP start) : B_(start->B), obj_(path::src(start)), start_(start) {
  Normal n = normalize(start);
  for (const auto& lf : n.leaves) cur_.push_back(leaf_path(lf));
  acc_ = n.cell;
}

namespace {

PathP assemble(const Bicategory& B, const std::vector<PathP>& xs, ObjId obj) {
  if (xs.empty()) return path::id(B, obj);
  return path::seq(xs);
}

}  // namespace

Pasting& Pasting::at(int pos, const Cell& c) {
  if (c.B != B_) throw IllTypedTerm("pasting step in a different bicategory");
  Normal ns = normalize(c.src);
  int k = int(ns.leaves.size());
  if (pos < 0 || pos + k > int(cur_.size()))
    throw IllTypedTerm("pasting step out of range at " + std::to_string(pos) + " in " + state());
  for (int i = 0; i < k; ++i) {
    Normal li = normalize(cur_[pos + i]);
    if (!(li.leaves[0] == ns.leaves[i]))
      throw IllTypedTerm("pasting step " + path::show(c.src) + " does not match " + state() + " at " +
                         std::to_string(pos));
  }
  std::vector<PathP> prefix(cur_.begin(), cur_.begin() + pos);
  std::vector<PathP> suffix(cur_.begin() + pos + k, cur_.end());
  PathP suf = suffix.empty() ? nullptr : path::seq(suffix);
  auto build = [&](const PathP& mid, TwoT* whisk, const TwoT* midcell) {
    PathP p = suf ? path::comp(mid, suf) : mid;
    TwoT w;
    if (whisk) w = suf ? term::hc(*midcell, term::id2(path::eval(suf))) : *midcell;
    for (int i = int(prefix.size()) - 1; i >= 0; --i) {
      p = path::comp(prefix[i], p);
      if (whisk) w = term::hc(term::id2(path::eval(prefix[i])), w);
    }
    if (whisk) *whisk = w;
    return p;
  };
  TwoT w;
  PathP before = build(c.src, &w, &c.t);
  PathP after = build(c.tgt, nullptr, nullptr);
  PathP cur_path = assemble(*B_, cur_, obj_);
  Cell k1 = cell::canonical(cur_path, before);
  std::vector<PathP> next = prefix;
  Normal nt = normalize(c.tgt);
  for (const auto& lf : nt.leaves) next.push_back(leaf_path(lf));
  next.insert(next.end(), suffix.begin(), suffix.end());
  Cell k2 = cell::canonical(after, assemble(*B_, next, obj_));
  acc_ = term::vc(k2.t, term::vc(w, term::vc(k1.t, acc_)));
  cur_ = std::move(next);
  return *this;
}

Cell Pasting::finish(PathP target) const {
  Cell k = cell::canonical(assemble(*B_, cur_, obj_), target);
  return {start_, target, term::vc(k.t, acc_), B_};
}

std::string Pasting::state() const {
  std::string s = "[";
  for (std::size_t i = 0; i < cur_.size(); ++i) s += (i ? ", " : "") + path::show(cur_[i]);
  return s + "]";
}

Cell nat_cell(const Transformation& t, OneId u, const std::vector<const LaxFunctor*>& Fchain,
              const std::vector<const LaxFunctor*>& Gchain, PathP inner_u) {
  const Bicategory& B = *t.F->tgt;
  const Bicategory& A = *t.F->src;
  PathP ca = path::atom(B, t.comp[A.src(u)]);
  PathP cb = path::atom(B, t.comp[A.tgt(u)]);
  PathP Fu = path::apply_chain(Fchain, inner_u);
  PathP Gu = path::apply_chain(Gchain, inner_u);
  if (t.kind == TKind::Oplax) return cell::gen(path::comp(Gu, ca), path::comp(cb, Fu), t.nat[u]);
  return cell::gen(path::comp(cb, Fu), path::comp(Gu, ca), t.nat[u]);
}

}  // namespace bicat
