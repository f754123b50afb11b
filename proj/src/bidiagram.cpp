#include "bicat/bidiagram.hpp"

#include <functional>

namespace bicat {

namespace {

template <class M>
const typename M::mapped_type::element_type& lookup(const M& m, std::uint64_t k, const char* what) {
  auto it = m.find(k);
  if (it == m.end() || !it->second) throw ComponentInvalid(std::string("missing ") + what);
  return *it->second;
}

FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }
TransPtr share(Transformation t) { return std::make_shared<const Transformation>(std::move(t)); }

bool same_transformation(const Transformation& a, const Transformation& b) {
  return a.comp == b.comp && a.nat == b.nat && same_functor(*a.F, *b.F) && same_functor(*a.G, *b.G);
}

}  // namespace

const Transformation& LaxBidiagram::chi_(OneId g, OneId f) const { return lookup(chi, key2(g, f), "chi"); }
const Modification& LaxBidiagram::xi_(TwoId b, TwoId a) const { return lookup(xi, key2(b, a), "xi"); }
const Modification& LaxBidiagram::chi2_(TwoId b, TwoId a) const { return lookup(chi2, key2(b, a), "chi2"); }
const Modification& LaxBidiagram::omega_(OneId h, OneId g, OneId f) const {
  return lookup(omega, key3(h, g, f), "omega");
}

FunPtr LaxBidiagram::pull_comp(OneId g, OneId f) const {
  auto k = std::make_pair(g, f);
  auto it = comp_cache_.find(k);
  if (it != comp_cache_.end()) return it->second;
  FunPtr F = share(compose_lax_functors(*pull[f], *pull[g]));
  comp_cache_[k] = F;
  return F;
}

FunPtr LaxBidiagram::ident(ObjId b) const {
  auto it = ident_cache_.find(b);
  if (it != ident_cache_.end()) return it->second;
  FunPtr F = share(identity_functor(fiber[b]));
  ident_cache_[b] = F;
  return F;
}

bool LaxBidiagram::is_pseudo() const {
  for (const auto& [k, t] : chi)
    if (t->kind != TKind::Pseudo) return false;
  for (const auto& t : chi_unit)
    if (t->kind != TKind::Pseudo) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace expected {

TransPtr alpha_beta(const LaxBidiagram& D, TwoId beta, TwoId alpha) {
  const Bicategory& B = D.B();
  OneId f = B.src2(alpha), h = B.tgt2(alpha), g = B.src2(beta), k = B.tgt2(beta);
  FunPtr fk = D.pull_comp(k, f), hk = D.pull_comp(k, h), fg = D.pull_comp(g, f);
  Transformation right = whisker_right(*D.pull2[alpha], D.pull[k], fk, hk);
  Transformation left = whisker_left(D.pull[f], *D.pull2[beta], fg, fk);
  return share(vertical_compose(right, left));
}

TransPtr xi_src(const LaxBidiagram& D, TwoId beta, TwoId alpha) {
  return share(vertical_compose(*D.pull2[beta], *D.pull2[alpha]));
}

TransPtr xi_id_src(const LaxBidiagram& D, OneId f) { return share(identity_transformation(D.pull[f])); }

TransPtr chi2_src(const LaxBidiagram& D, TwoId beta, TwoId alpha) {
  const Bicategory& B = D.B();
  TwoId ba = B.hc(beta, alpha);
  return share(vertical_compose(*D.pull2[ba], D.chi_(B.src2(beta), B.src2(alpha))));
}

TransPtr chi2_tgt(const LaxBidiagram& D, TwoId beta, TwoId alpha) {
  const Bicategory& B = D.B();
  return share(vertical_compose(D.chi_(B.tgt2(beta), B.tgt2(alpha)), *alpha_beta(D, beta, alpha)));
}

TransPtr omega_src(const LaxBidiagram& D, OneId h, OneId g, OneId f) {
  const Bicategory& B = D.B();
  OneId hg = B.comp(h, g);
  FunPtr f_gh = share(compose_lax_functors(*D.pull[f], *D.pull_comp(h, g)));
  Transformation fchi = whisker_left(D.pull[f], D.chi_(h, g), f_gh, D.pull_comp(hg, f));
  Transformation inner = vertical_compose(D.chi_(hg, f), fchi);
  return share(vertical_compose(*D.pull2[B.a(h, g, f)], inner));
}

TransPtr omega_tgt(const LaxBidiagram& D, OneId h, OneId g, OneId f) {
  const Bicategory& B = D.B();
  OneId gf = B.comp(g, f);
  FunPtr fg_h = share(compose_lax_functors(*D.pull_comp(g, f), *D.pull[h]));
  Transformation chih = whisker_right(D.chi_(g, f), D.pull[h], fg_h, D.pull_comp(h, gf));
  return share(vertical_compose(D.chi_(h, gf), chih));
}

TransPtr gamma_src(const LaxBidiagram& D, OneId f) {
  const Bicategory& B = D.B();
  ObjId b = B.tgt(f);
  OneId one = B.id1[b];
  FunPtr f_id = share(compose_lax_functors(*D.pull[f], *D.ident(b)));
  Transformation fchi = whisker_left(D.pull[f], *D.chi_unit[b], f_id, D.pull_comp(one, f));
  Transformation inner = vertical_compose(D.chi_(one, f), fchi);
  return share(vertical_compose(*D.pull2[B.l(f)], inner));
}

TransPtr delta_src(const LaxBidiagram& D, OneId f) {
  const Bicategory& B = D.B();
  ObjId a = B.src(f);
  OneId one = B.id1[a];
  FunPtr id_f = share(compose_lax_functors(*D.ident(a), *D.pull[f]));
  Transformation chif = whisker_right(*D.chi_unit[a], D.pull[f], id_f, D.pull_comp(f, one));
  Transformation inner = vertical_compose(D.chi_(f, one), chif);
  return share(vertical_compose(*D.pull2[B.r(f)], inner));
}

TransPtr ident_trans(const LaxBidiagram& D, OneId f) { return share(identity_transformation(D.pull[f])); }

}  // namespace expected

// ---------------------------------------------------------------------------

Report check_components(const LaxBidiagram& D) {
  const Bicategory& B = D.B();
  Report rep;
  auto sub = [&](const Report& r, const std::string& what) { rep.merge(r, what + ": "); };
  auto endpoints = [&](const Modification& m, const TransPtr& s, const TransPtr& t, const std::string& what,
                       std::vector<int> idx) {
    if (!same_transformation(*m.alpha, *s)) rep.add(what + ".source", idx);
    if (!same_transformation(*m.beta, *t)) rep.add(what + ".target", idx);
    if (!is_invertible(m)) rep.add(what + ".invertible", idx);
    sub(validate_modification(m), what);
  };
  if (int(D.fiber.size()) != B.n_obj() || int(D.pull.size()) != B.n_one() || int(D.pull2.size()) != B.n_two() ||
      int(D.chi_unit.size()) != B.n_obj() || int(D.xi_id.size()) != B.n_one() || int(D.gamma.size()) != B.n_one() ||
      int(D.delta.size()) != B.n_one())
    throw ComponentInvalid("bidiagram data sized inconsistently with the base");
  for (ObjId b = 0; b < B.n_obj(); ++b) sub(validate_bicategory(D.fib(b)), "fiber " + B.obj_name(b));
  for (OneId f = 0; f < B.n_one(); ++f) {
    const LaxFunctor& F = D.f_(f);
    if (F.src != D.fiber[B.tgt(f)] || F.tgt != D.fiber[B.src(f)]) rep.add("D2.typing", {f});
    if (!F.is_pseudo()) rep.add("D2.pseudo", {f});
    sub(validate_lax_functor(F), "D2");
  }
  for (TwoId al = 0; al < B.n_two(); ++al) {
    const Transformation& t = *D.pull2[al];
    if (t.kind != TKind::Pseudo) rep.add("D3.pseudo", {al});
    if (!same_functor(*t.F, *D.pull[B.src2(al)]) || !same_functor(*t.G, *D.pull[B.tgt2(al)]))
      rep.add("D3.typing", {al});
    sub(validate_transformation(t), "D3");
  }
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f))) {
      const Transformation& t = D.chi_(g, f);
      if (t.kind != TKind::Pseudo) rep.add("D4.pseudo", {g, f});
      if (!same_functor(*t.F, *D.pull_comp(g, f)) || !same_functor(*t.G, *D.pull[B.comp(g, f)]))
        rep.add("D4.typing", {g, f});
      sub(validate_transformation(t), "D4");
    }
  for (ObjId b = 0; b < B.n_obj(); ++b) {
    const Transformation& t = *D.chi_unit[b];
    if (t.kind != TKind::Pseudo) rep.add("D5.pseudo", {b});
    if (!same_functor(*t.F, *D.ident(b)) || !same_functor(*t.G, *D.pull[B.id1[b]])) rep.add("D5.typing", {b});
    sub(validate_transformation(t), "D5");
  }
  for (TwoId al = 0; al < B.n_two(); ++al)
    for (TwoId be : B.twos_from(B.tgt2(al)))
      endpoints(D.xi_(be, al), expected::xi_src(D, be, al), D.pull2[B.vc(be, al)], "D6", {be, al});
  for (OneId f = 0; f < B.n_one(); ++f)
    endpoints(*D.xi_id[f], expected::xi_id_src(D, f), D.pull2[B.id2[f]], "D7", {f});
  for (TwoId al = 0; al < B.n_two(); ++al) {
    ObjId b = B.tgt(B.src2(al));
    for (OneId g : B.ones_from(b))
      for (TwoId be : B.twos_from(g))
        endpoints(D.chi2_(be, al), expected::chi2_src(D, be, al), expected::chi2_tgt(D, be, al), "D8", {be, al});
  }
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f)))
      for (OneId h : B.ones_from(B.tgt(g)))
        endpoints(D.omega_(h, g, f), expected::omega_src(D, h, g, f), expected::omega_tgt(D, h, g, f), "D9",
                  {h, g, f});
  for (OneId f = 0; f < B.n_one(); ++f) {
    endpoints(*D.gamma[f], expected::gamma_src(D, f), expected::ident_trans(D, f), "D10.gamma", {f});
    endpoints(*D.delta[f], expected::delta_src(D, f), expected::ident_trans(D, f), "D10.delta", {f});
  }
  return rep;
}

// ---------------------------------------------------------------------------

PathP BidiagramCells::comp(const Transformation& t, ObjId x) const {
  return path::atom(*t.F->tgt, t.comp[x]);
}
PathP BidiagramCells::pull(OneId f, PathP p) const { return path::apply(D.f_(f), std::move(p)); }
PathP BidiagramCells::star(TwoId alpha, ObjId x) const { return comp(*D.pull2[alpha], x); }
PathP BidiagramCells::chi(OneId g, OneId f, ObjId x) const { return comp(D.chi_(g, f), x); }
PathP BidiagramCells::chi_u(ObjId b, ObjId x) const { return comp(*D.chi_unit[b], x); }

Cell BidiagramCells::xi(TwoId beta, TwoId alpha, ObjId x) const {
  const Modification& m = D.xi_(beta, alpha);
  return cell::gen(path::comp(star(beta, x), star(alpha, x)), star(D.B().vc(beta, alpha), x), m.comp[x]);
}

Cell BidiagramCells::xi_id(OneId f, ObjId x) const {
  const LaxFunctor& F = D.f_(f);
  return cell::gen(path::id(*F.tgt, F.obj[x]), star(D.B().id2[f], x), D.xi_id[f]->comp[x]);
}

Cell BidiagramCells::chi2(TwoId beta, TwoId alpha, ObjId x) const {
  const Bicategory& B = D.B();
  OneId f = B.src2(alpha), h = B.tgt2(alpha), g = B.src2(beta), k = B.tgt2(beta);
  const Modification& m = D.chi2_(beta, alpha);
  PathP s = path::comp(star(B.hc(beta, alpha), x), chi(g, f, x));
  PathP t = path::seq({chi(k, h, x), star(alpha, D.f_(k).obj[x]), pull(f, star(beta, x))});
  return cell::gen(s, t, m.comp[x]);
}

Cell BidiagramCells::omega(OneId h, OneId g, OneId f, ObjId x) const {
  const Bicategory& B = D.B();
  OneId hg = B.comp(h, g), gf = B.comp(g, f);
  const Modification& m = D.omega_(h, g, f);
  PathP s = path::seq({star(B.a(h, g, f), x), chi(hg, f, x), pull(f, chi(h, g, x))});
  PathP t = path::comp(chi(h, gf, x), chi(g, f, D.f_(h).obj[x]));
  return cell::gen(s, t, m.comp[x]);
}

Cell BidiagramCells::gamma(OneId f, ObjId x) const {
  const Bicategory& B = D.B();
  ObjId b = B.tgt(f);
  PathP s = path::seq({star(B.l(f), x), chi(B.id1[b], f, x), pull(f, chi_u(b, x))});
  const LaxFunctor& F = D.f_(f);
  return cell::gen(s, path::id(*F.tgt, F.obj[x]), D.gamma[f]->comp[x]);
}

Cell BidiagramCells::delta(OneId f, ObjId x) const {
  const Bicategory& B = D.B();
  ObjId a = B.src(f);
  const LaxFunctor& F = D.f_(f);
  PathP s = path::seq({star(B.r(f), x), chi(f, B.id1[a], x), chi_u(a, F.obj[x])});
  return cell::gen(s, path::id(*F.tgt, F.obj[x]), D.delta[f]->comp[x]);
}

Cell BidiagramCells::chi_nat(OneId g, OneId f, PathP u) const {
  const Bicategory& B = D.B();
  return nat_cell(D.chi_(g, f), path::eval(u), {&D.f_(f), &D.f_(g)}, {&D.f_(B.comp(g, f))}, u);
}

Cell BidiagramCells::star_nat(TwoId alpha, PathP u) const {
  const Bicategory& B = D.B();
  return nat_cell(*D.pull2[alpha], path::eval(u), {&D.f_(B.src2(alpha))}, {&D.f_(B.tgt2(alpha))}, u);
}

Cell BidiagramCells::unit_nat(ObjId b, PathP u) const {
  return nat_cell(*D.chi_unit[b], path::eval(u), {}, {&D.f_(D.B().id1[b])}, u);
}

namespace {

// Left-normed ξ composite of a list of 2-cells, from the composite of their
// images to the image of their composite.
Cell xi_fold(const BidiagramCells& C, const std::vector<TwoId>& cells, OneId f, ObjId x, TwoId* total) {
  const Bicategory& B = C.D.B();
  if (cells.empty()) {
    *total = B.id2[f];
    return C.xi_id(f, x);
  }
  std::vector<PathP> leaves;
  for (auto it = cells.rbegin(); it != cells.rend(); ++it) leaves.push_back(C.star(*it, x));
  PathP start = path::seq(leaves);
  Pasting p(start);
  TwoId acc = cells[0];
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (B.tgt2(acc) != B.src2(cells[i])) throw NotParallel("2-cell list is not composable");
    p.at(p.size() - 2, C.xi(cells[i], acc, x));
    acc = B.vc(cells[i], acc);
  }
  *total = acc;
  return p.finish(C.star(acc, x));
}

}  // namespace

Cell BidiagramCells::xi_chain(const std::vector<TwoId>& lhs, const std::vector<TwoId>& rhs, OneId f,
                              ObjId x) const {
  TwoId tl, tr;
  Cell a = xi_fold(*this, lhs, f, x, &tl);
  Cell b = xi_fold(*this, rhs, f, x, &tr);
  const Bicategory& B = D.B();
  if (B.src2(tl) != B.src2(tr) || B.tgt2(tl) != B.tgt2(tr)) throw NotParallel("xi chain endpoints differ");
  if (tl != tr) throw NotParallel("xi chain composites differ: " + B.two_name(tl) + " vs " + B.two_name(tr));
  return cell::then(a, cell::inv(b));
}

void BidiagramCells::xi_chain_at(Pasting& p, int pos, const std::vector<TwoId>& lhs,
                                 const std::vector<TwoId>& rhs, OneId f, ObjId x) const {
  p.at(pos, xi_chain(lhs, rhs, f, x));
}

Cell BidiagramCells::chi_alpha_f(TwoId alpha, OneId f, ObjId x) const {
  const Bicategory& B = D.B();
  OneId g = B.src2(alpha), g2 = B.tgt2(alpha);
  Pasting p(path::comp(star(B.whisker_r(alpha, f), x), chi(g, f, x)));
  p.at(0, chi2(alpha, B.id2[f], x));
  p.at(1, cell::inv(xi_id(f, D.f_(g2).obj[x])));
  return p.finish(path::comp(chi(g2, f, x), pull(f, star(alpha, x))));
}

Cell BidiagramCells::chi_h_alpha(OneId h, TwoId alpha, ObjId x) const {
  const Bicategory& B = D.B();
  OneId g = B.src2(alpha), g2 = B.tgt2(alpha);
  Pasting p(path::comp(star(B.whisker_l(h, alpha), x), chi(h, g, x)));
  p.at(0, chi2(B.id2[h], alpha, x));
  p.at(2, cell::apply(D.f_(g), cell::inv(xi_id(h, x))));
  return p.finish(path::comp(chi(h, g2, x), star(alpha, D.f_(h).obj[x])));
}

// ---------------------------------------------------------------------------

namespace {

TransPtr path_transformation(const LaxBidiagram& D, const std::vector<TwoId>& cells, OneId f) {
  if (cells.empty()) return share(identity_transformation(D.pull[f]));
  TransPtr acc = D.pull2[cells[0]];
  for (std::size_t i = 1; i < cells.size(); ++i) acc = share(vertical_compose(*D.pull2[cells[i]], *acc));
  return acc;
}

}  // namespace

ModPtr derived_xi(const LaxBidiagram& D, const std::vector<TwoId>& lhs, const std::vector<TwoId>& rhs, OneId f) {
  const Bicategory& B = D.B();
  auto ends = [&](const std::vector<TwoId>& cs) {
    if (cs.empty()) return std::make_pair(f, f);
    return std::make_pair(B.src2(cs.front()), B.tgt2(cs.back()));
  };
  if (ends(lhs) != ends(rhs)) throw NotParallel("derived xi: paths do not share endpoints");
  OneId base = ends(lhs).first;
  BidiagramCells C(D);
  return make_modification("xi-chain", path_transformation(D, lhs, base), path_transformation(D, rhs, base),
                           [&](ObjId x) { return C.xi_chain(lhs, rhs, base, x).eval(); });
}

ModPtr derived_chi_whisker(const LaxBidiagram& D, WhiskerSide side, TwoId alpha, OneId other) {
  const Bicategory& B = D.B();
  BidiagramCells C(D);
  OneId g = B.src2(alpha), g2 = B.tgt2(alpha);
  if (side == WhiskerSide::Right) {
    OneId f = other;
    if (B.tgt(f) != B.src(g)) throw NotComposable("chi_{alpha,f}: 1-cell does not compose");
    TransPtr s = share(vertical_compose(*D.pull2[B.whisker_r(alpha, f)], D.chi_(g, f)));
    FunPtr fg = D.pull_comp(g, f), fg2 = D.pull_comp(g2, f);
    TransPtr t = share(vertical_compose(D.chi_(g2, f), whisker_left(D.pull[f], *D.pull2[alpha], fg, fg2)));
    return make_modification("chi_alpha_f", s, t, [&](ObjId x) { return C.chi_alpha_f(alpha, f, x).eval(); });
  }
  OneId h = other;
  if (B.src(h) != B.tgt(g)) throw NotComposable("chi_{h,alpha}: 1-cell does not compose");
  TransPtr s = share(vertical_compose(*D.pull2[B.whisker_l(h, alpha)], D.chi_(h, g)));
  FunPtr gh = D.pull_comp(h, g), g2h = D.pull_comp(h, g2);
  TransPtr t = share(vertical_compose(D.chi_(h, g2), whisker_right(*D.pull2[alpha], D.pull[h], gh, g2h)));
  return make_modification("chi_h_alpha", s, t, [&](ObjId x) { return C.chi_h_alpha(h, alpha, x).eval(); });
}

// ---------------------------------------------------------------------------

namespace {

// Runs one equation instance, converting construction failures into
// violations so that a single broken instance does not hide the rest.
void equation(Report& rep, const std::string& axiom, std::vector<int> idx, const std::function<bool()>& fn) {
  try {
    if (!fn()) rep.add(axiom, std::move(idx));
  } catch (const Error& e) {
    rep.add(axiom, std::move(idx), e.what());
  }
}

}  // namespace

Report check_coherence(const LaxBidiagram& D, CoherenceOptions opt) {
  if (opt.components) {
    Report comp;
    try {
      comp = check_components(D);
    } catch (const ComponentInvalid&) {
      throw;
    } catch (const Error& e) {
      throw ComponentInvalid(e.what());
    }
    if (!comp.ok()) throw ComponentInvalid(comp.str(5));
  }
  const Bicategory& B = D.B();
  BidiagramCells C(D);
  Report rep;
  auto objs = [&](ObjId b) { return D.fib(b).n_obj(); };
  auto obj_of = [&](OneId f, ObjId x) { return D.f_(f).obj[x]; };

  // C1
  for (TwoId al = 0; al < B.n_two(); ++al)
    for (TwoId be : B.twos_from(B.tgt2(al)))
      for (TwoId ze : B.twos_from(B.tgt2(be))) {
        ObjId b = B.tgt(B.src2(al));
        for (ObjId x = 0; x < objs(b); ++x)
          equation(rep, "C1", {ze, be, al, x}, [&] {
            PathP start = path::seq({C.star(ze, x), C.star(be, x), C.star(al, x)});
            TwoId total = B.vc(ze, B.vc(be, al));
            Pasting lhs(start);
            lhs.at(1, C.xi(be, al, x)).at(0, C.xi(ze, B.vc(be, al), x));
            Pasting rhs(start);
            rhs.at(0, C.xi(ze, be, x)).at(0, C.xi(B.vc(ze, be), al, x));
            return lhs.eval(C.star(total, x)) == rhs.eval(C.star(total, x));
          });
      }

  // C2
  for (TwoId al = 0; al < B.n_two(); ++al) {
    OneId f = B.src2(al), g = B.tgt2(al);
    ObjId b = B.tgt(f);
    for (ObjId x = 0; x < objs(b); ++x) {
      const LaxFunctor& F = D.f_(f);
      equation(rep, "C2.right", {al, x}, [&] {
        PathP start = path::comp(C.star(al, x), path::id(*F.tgt, F.obj[x]));
        Pasting p(start);
        p.at(1, C.xi_id(f, x)).at(0, C.xi(al, B.id2[f], x));
        return p.eval(C.star(al, x)) == cell::canonical(start, C.star(al, x)).eval();
      });
      const LaxFunctor& G = D.f_(g);
      equation(rep, "C2.left", {al, x}, [&] {
        PathP start = path::comp(path::id(*G.tgt, G.obj[x]), C.star(al, x));
        Pasting p(start);
        p.at(0, C.xi_id(g, x)).at(0, C.xi(B.id2[g], al, x));
        return p.eval(C.star(al, x)) == cell::canonical(start, C.star(al, x)).eval();
      });
    }
  }

  // C3
  for (TwoId al = 0; al < B.n_two(); ++al)
    for (TwoId al2 : B.twos_from(B.tgt2(al))) {
      OneId f = B.src2(al);
      ObjId b = B.tgt(f);
      for (OneId g : B.ones_from(b))
        for (TwoId be : B.twos_from(g))
          for (TwoId be2 : B.twos_from(B.tgt2(be))) {
            ObjId c = B.tgt(g);
            OneId g2 = B.tgt2(be2), f2 = B.tgt2(al2);
            for (ObjId x = 0; x < objs(c); ++x)
              equation(rep, "C3", {be2, be, al2, al, x}, [&] {
                PathP start = path::seq({C.star(B.hc(be2, al2), x), C.star(B.hc(be, al), x), C.chi(g, f, x)});
                TwoId bb = B.vc(be2, be), aa = B.vc(al2, al);
                PathP target =
                    path::seq({C.chi(g2, f2, x), C.star(aa, obj_of(g2, x)), C.pull(f, C.star(bb, x))});
                Pasting lhs(start);
                lhs.at(1, C.chi2(be, al, x));
                lhs.at(0, C.chi2(be2, al2, x));
                lhs.at(2, cell::inv(C.star_nat(al, C.star(be2, x))));
                lhs.at(1, C.xi(al2, al, obj_of(g2, x)));
                lhs.at(2, cell::apply(D.f_(f), C.xi(be2, be, x)));
                Pasting rhs(start);
                rhs.at(0, C.xi(B.hc(be2, al2), B.hc(be, al), x));
                rhs.at(0, C.chi2(bb, aa, x));
                return lhs.eval(target) == rhs.eval(target);
              });
          }
    }

  // C4
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f))) {
      ObjId c = B.tgt(g);
      OneId gf = B.comp(g, f);
      for (ObjId x = 0; x < objs(c); ++x)
        equation(rep, "C4", {g, f, x}, [&] {
          PathP start = C.chi(g, f, x);
          PathP target = path::comp(C.star(B.id2[gf], x), C.chi(g, f, x));
          Pasting lhs(start);
          lhs.at(0, C.xi_id(gf, x));
          Pasting rhs(start);
          rhs.at(1, cell::hcomp(C.xi_id(f, obj_of(g, x)), cell::apply(D.f_(f), C.xi_id(g, x))));
          rhs.at(0, cell::inv(C.chi2(B.id2[g], B.id2[f], x)));
          return lhs.eval(target) == rhs.eval(target);
        });
    }

  // C5
  for (TwoId al = 0; al < B.n_two(); ++al) {
    OneId f = B.src2(al), f2 = B.tgt2(al);
    for (OneId g : B.ones_from(B.tgt(f)))
      for (TwoId be : B.twos_from(g)) {
        OneId g2 = B.tgt2(be);
        for (OneId h : B.ones_from(B.tgt(g)))
          for (TwoId ze : B.twos_from(h)) {
            OneId h2 = B.tgt2(ze);
            ObjId d = B.tgt(h);
            TwoId zb = B.hc(ze, be), ba = B.hc(be, al);
            TwoId z_ba = B.hc(ze, ba), zb_a = B.hc(zb, al);
            TwoId a1 = B.a(h, g, f), a2 = B.a(h2, g2, f2);
            for (ObjId x = 0; x < objs(d); ++x) {
              ObjId hx2 = obj_of(h2, x), ghx2 = obj_of(g2, hx2);
              auto build = [&](bool alt, TwoId* lv, TwoId* rv) {
                PathP start =
                    path::seq({C.star(z_ba, x), C.star(a1, x), C.chi(B.comp(h, g), f, x), C.pull(f, C.chi(h, g, x))});
                PathP target = path::seq({C.chi(h2, B.comp(g2, f2), x), C.chi(g2, f2, hx2), C.star(al, ghx2),
                                          C.pull(f, C.star(be, hx2)), C.pull(f, C.pull(g, C.star(ze, x)))});
                Pasting A(start);
                C.xi_chain_at(A, 0, {a1, z_ba}, {zb_a, a2}, f, x);
                A.at(1, C.chi2(zb, al, x));
                A.at(3, cell::apply(D.f_(f), C.chi2(ze, be, x)));
                A.at(2, C.star_nat(al, C.chi(h2, g2, x)));
                A.at(0, C.omega(h2, g2, f2, x));
                Pasting A2(start);
                A2.at(1, C.omega(h, g, f, x));
                A2.at(0, C.chi2(ze, ba, x));
                A2.at(2, cell::inv(C.chi_nat(g, f, C.star(ze, x))));
                A2.at(1, C.chi2(be, al, hx2));
                if (!alt) {
                  *lv = A.eval(target);
                  *rv = A2.eval(target);
                  return;
                }
                // Correction through the (4)-modification component on one side.
                PathP target2 = path::seq({C.chi(h2, B.comp(g2, f2), x), C.chi(g2, f2, hx2),
                                           C.pull(f2, C.star(be, hx2)), C.star(al, obj_of(g, hx2)),
                                           C.pull(f, C.pull(g, C.star(ze, x)))});
                A.at(2, C.star_nat(al, C.star(be, hx2)));
                *lv = A.eval(target2);
                *rv = A2.eval(target);
              };
              equation(rep, "C5", {ze, be, al, x}, [&] {
                TwoId l, r;
                build(false, &l, &r);
                return l == r;
              });
              if (opt.c5_alternative)
                equation(rep, "C5.alt", {ze, be, al, x}, [&] {
                  TwoId l, r;
                  build(true, &l, &r);
                  return l == r;
                });
            }
          }
      }
  }

  // C6
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f)))
      for (OneId h : B.ones_from(B.tgt(g)))
        for (OneId k : B.ones_from(B.tgt(h))) {
          ObjId e = B.tgt(k);
          OneId kh = B.comp(k, h), hg = B.comp(h, g), gf = B.comp(g, f);
          OneId khg = B.comp(kh, g);
          TwoId a_hgf = B.a(h, g, f), a_k_hg_f = B.a(k, hg, f), a_khg = B.a(k, h, g);
          TwoId a_k_h_gf = B.a(k, h, gf), a_kh_g_f = B.a(kh, g, f);
          for (ObjId x = 0; x < objs(e); ++x)
            equation(rep, "C6", {k, h, g, f, x}, [&] {
              ObjId kx = obj_of(k, x), hkx = obj_of(h, kx);
              PathP start = path::seq({C.star(B.whisker_l(k, a_hgf), x), C.star(a_k_hg_f, x),
                                       C.star(B.whisker_r(a_khg, f), x), C.chi(khg, f, x),
                                       C.pull(f, C.chi(kh, g, x)), C.pull(f, C.pull(g, C.chi(k, h, x)))});
              PathP target = path::seq({C.chi(k, B.comp(h, gf), x), C.chi(h, gf, kx), C.chi(g, f, hkx)});
              Pasting lhs(start);
              C.xi_chain_at(lhs, 0, {B.whisker_r(a_khg, f), a_k_hg_f, B.whisker_l(k, a_hgf)}, {a_kh_g_f, a_k_h_gf},
                            f, x);
              lhs.at(1, C.omega(kh, g, f, x));
              lhs.at(2, C.chi_nat(g, f, C.chi(k, h, x)));
              lhs.at(0, C.omega(k, h, gf, x));
              Pasting rhs(start);
              rhs.at(2, C.chi_alpha_f(a_khg, f, x));
              rhs.at(3, cell::apply(D.f_(f), C.omega(k, h, g, x)));
              rhs.at(1, C.omega(k, hg, f, x));
              rhs.at(0, C.chi_h_alpha(k, a_hgf, x));
              rhs.at(1, C.omega(h, g, f, kx));
              return lhs.eval(target) == rhs.eval(target);
            });
        }

  // C7
  for (TwoId al = 0; al < B.n_two(); ++al) {
    OneId f = B.src2(al), g = B.tgt2(al);
    ObjId a = B.src(f), b = B.tgt(f);
    OneId ia = B.id1[a], ib = B.id1[b];
    for (ObjId x = 0; x < objs(b); ++x) {
      equation(rep, "C7.delta", {al, x}, [&] {
        PathP start = path::seq({C.star(B.r(g), x), C.star(B.whisker_r(al, ia), x), C.chi(f, ia, x),
                                 C.chi_u(a, obj_of(f, x))});
        Pasting lhs(start);
        C.xi_chain_at(lhs, 0, {B.whisker_r(al, ia), B.r(g)}, {B.r(f), al}, f, x);
        lhs.at(1, C.delta(f, x));
        Pasting rhs(start);
        rhs.at(1, C.chi_alpha_f(al, ia, x));
        rhs.at(2, cell::inv(C.unit_nat(a, C.star(al, x))));
        rhs.at(0, C.delta(g, x));
        return lhs.eval(C.star(al, x)) == rhs.eval(C.star(al, x));
      });
      equation(rep, "C7.gamma", {al, x}, [&] {
        PathP start = path::seq({C.star(B.l(g), x), C.star(B.whisker_l(ib, al), x), C.chi(ib, f, x),
                                 C.pull(f, C.chi_u(b, x))});
        Pasting lhs(start);
        C.xi_chain_at(lhs, 0, {B.whisker_l(ib, al), B.l(g)}, {B.l(f), al}, f, x);
        lhs.at(1, C.gamma(f, x));
        Pasting rhs(start);
        rhs.at(1, C.chi_h_alpha(ib, al, x));
        rhs.at(2, C.star_nat(al, C.chi_u(b, x)));
        rhs.at(0, C.gamma(g, x));
        return lhs.eval(C.star(al, x)) == rhs.eval(C.star(al, x));
      });
    }
  }

  // C8
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f))) {
      ObjId b = B.tgt(f), c = B.tgt(g);
      OneId ib = B.id1[b], g1 = B.comp(g, ib);
      for (ObjId x = 0; x < objs(c); ++x)
        equation(rep, "C8", {g, f, x}, [&] {
          ObjId gx = obj_of(g, x);
          PathP start = path::seq({C.star(B.whisker_r(B.r(g), f), x), C.chi(g1, f, x), C.pull(f, C.chi(g, ib, x)),
                                   C.pull(f, C.chi_u(b, gx))});
          PathP target = C.chi(g, f, x);
          Pasting lhs(start);
          C.xi_chain_at(lhs, 0, {B.whisker_r(B.r(g), f)}, {B.a(g, ib, f), B.whisker_l(g, B.l(f))}, -1, x);
          lhs.at(1, C.omega(g, ib, f, x));
          lhs.at(0, C.chi_h_alpha(g, B.l(f), x));
          lhs.at(1, C.gamma(f, gx));
          Pasting rhs(start);
          rhs.at(0, C.chi_alpha_f(B.r(g), f, x));
          rhs.at(1, cell::apply(D.f_(f), C.delta(g, x)));
          return lhs.eval(target) == rhs.eval(target);
        });
    }
  return rep;
}

// ---------------------------------------------------------------------------

Report check_gdo(const LaxBidiagram& D) {
  const Bicategory& B = D.B();
  BidiagramCells C(D);
  Report rep;
  auto objs = [&](ObjId b) { return D.fib(b).n_obj(); };
  auto obj_of = [&](OneId f, ObjId x) { return D.f_(f).obj[x]; };
  for (ObjId a = 0; a < B.n_obj(); ++a) {
    OneId ia = B.id1[a];
    for (ObjId x = 0; x < objs(a); ++x)
      equation(rep, "gdo.i", {a, x}, [&] {
        PathP start = path::seq({C.star(B.l(ia), x), C.chi(ia, ia, x), C.pull(ia, C.chi_u(a, x)), C.chi_u(a, x)});
        PathP target = C.chi_u(a, x);
        Pasting lhs(start);
        lhs.at(0, C.gamma(ia, x));
        Pasting rhs(start);
        rhs.at(2, cell::inv(C.unit_nat(a, C.chi_u(a, x))));
        if (B.r(ia) != B.l(ia)) throw IncoherentInput("r_1 differs from l_1 in the base");
        rhs.at(0, C.delta(ia, x));
        return lhs.eval(target) == rhs.eval(target);
      });
  }
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f))) {
      ObjId a = B.src(f), c = B.tgt(g);
      OneId ia = B.id1[a], ic = B.id1[c], gf = B.comp(g, f);
      OneId one_g = B.comp(ic, g);
      for (ObjId x = 0; x < objs(c); ++x) {
        PathP target = C.chi(g, f, x);
        equation(rep, "gdo.ii.left", {g, f, x}, [&] {
          PathP start = path::seq({C.star(B.whisker_r(B.l(g), f), x), C.chi(one_g, f, x), C.pull(f, C.chi(ic, g, x)),
                                   C.pull(f, C.pull(g, C.chi_u(c, x)))});
          Pasting lhs(start);
          C.xi_chain_at(lhs, 0, {B.whisker_r(B.l(g), f)}, {B.a(ic, g, f), B.l(gf)}, -1, x);
          lhs.at(1, C.omega(ic, g, f, x));
          lhs.at(2, C.chi_nat(g, f, C.chi_u(c, x)));
          lhs.at(0, C.gamma(gf, x));
          Pasting rhs(start);
          rhs.at(0, C.chi_alpha_f(B.l(g), f, x));
          rhs.at(1, cell::apply(D.f_(f), C.gamma(g, x)));
          return lhs.eval(target) == rhs.eval(target);
        });
        equation(rep, "gdo.ii.right", {g, f, x}, [&] {
          ObjId gx = obj_of(g, x);
          PathP start = path::seq({C.star(B.r(gf), x), C.chi(gf, ia, x), C.pull(ia, C.chi(g, f, x)),
                                   C.chi_u(a, obj_of(f, gx))});
          Pasting lhs(start);
          C.xi_chain_at(lhs, 0, {B.r(gf)}, {B.a(g, f, ia), B.whisker_l(g, B.r(f))}, -1, x);
          lhs.at(1, C.omega(g, f, ia, x));
          lhs.at(0, C.chi_h_alpha(g, B.r(f), x));
          lhs.at(1, C.delta(f, gx));
          Pasting rhs(start);
          rhs.at(2, cell::inv(C.unit_nat(a, C.chi(g, f, x))));
          rhs.at(0, C.delta(gf, x));
          return lhs.eval(target) == rhs.eval(target);
        });
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------

BidiagramPtr precompose(const LaxBidiagram& D, FunPtr Fp) {
  const LaxFunctor& F = *Fp;
  const Bicategory& A = *F.src;
  const Bicategory& B = D.B();
  if (F.tgt.get() != D.base.get() && !same_tables(*F.tgt, B))
    throw SourceTargetMismatch("precompose: functor target is not the base");
  auto G = std::make_shared<LaxBidiagram>();
  G->name = D.name + "." + F.name;
  G->base = F.src;
  for (ObjId a = 0; a < A.n_obj(); ++a) G->fiber.push_back(D.fiber[F.obj[a]]);
  for (OneId f = 0; f < A.n_one(); ++f) G->pull.push_back(D.pull[F.one[f]]);
  for (TwoId al = 0; al < A.n_two(); ++al) G->pull2.push_back(D.pull2[F.two[al]]);
  for (OneId f = 0; f < A.n_one(); ++f)
    for (OneId g : A.ones_from(A.tgt(f))) {
      Transformation t = vertical_compose(*D.pull2[F.hat(g, f)], D.chi_(F.one[g], F.one[f]));
      t.F = G->pull_comp(g, f);
      G->chi[key2(g, f)] = share(std::move(t));
    }
  for (ObjId a = 0; a < A.n_obj(); ++a) {
    Transformation t = vertical_compose(*D.pull2[F.unit[a]], *D.chi_unit[F.obj[a]]);
    t.F = G->ident(a);
    G->chi_unit.push_back(share(std::move(t)));
  }
  for (TwoId al = 0; al < A.n_two(); ++al)
    for (TwoId be : A.twos_from(A.tgt2(al))) G->xi[key2(be, al)] = D.xi.at(key2(F.two[be], F.two[al]));
  for (OneId f = 0; f < A.n_one(); ++f) G->xi_id.push_back(D.xi_id[F.one[f]]);

  const LaxBidiagram& Gr = *G;
  BidiagramCells C(D);
  auto obj_of = [&](OneId f, ObjId x) { return D.f_(f).obj[x]; };

  for (TwoId al = 0; al < A.n_two(); ++al)
    for (OneId g : A.ones_from(A.tgt(A.src2(al))))
      for (TwoId be : A.twos_from(g)) {
        OneId f = A.src2(al), h = A.tgt2(al), k = A.tgt2(be);
        TwoId Fal = F.two[al], Fbe = F.two[be];
        TwoId hat_gf = F.hat(g, f), hat_kh = F.hat(k, h);
        G->chi2[key2(be, al)] = make_modification(
            "chi_F", expected::chi2_src(Gr, be, al), expected::chi2_tgt(Gr, be, al), [&](ObjId x) {
              PathP start = path::seq({C.star(F.two[A.hc(be, al)], x), C.star(hat_gf, x),
                                       C.chi(F.one[g], F.one[f], x)});
              PathP target = path::seq({C.star(hat_kh, x), C.chi(F.one[k], F.one[h], x),
                                        C.star(Fal, obj_of(F.one[k], x)), C.pull(F.one[f], C.star(Fbe, x))});
              Pasting p(start);
              C.xi_chain_at(p, 0, {hat_gf, F.two[A.hc(be, al)]}, {B.hc(Fbe, Fal), hat_kh}, -1, x);
              p.at(1, C.chi2(Fbe, Fal, x));
              return p.eval(target);
            });
      }

  for (OneId f = 0; f < A.n_one(); ++f)
    for (OneId g : A.ones_from(A.tgt(f)))
      for (OneId h : A.ones_from(A.tgt(g))) {
        OneId Ff = F.one[f], Fg = F.one[g], Fh = F.one[h];
        OneId hg = A.comp(h, g), gf = A.comp(g, f);
        TwoId hat_hg = F.hat(h, g), hat_hg_f = F.hat(hg, f), hat_gf = F.hat(g, f), hat_h_gf = F.hat(h, gf);
        TwoId Fa = F.two[A.a(h, g, f)];
        G->omega[key3(h, g, f)] = make_modification(
            "omega_F", expected::omega_src(Gr, h, g, f), expected::omega_tgt(Gr, h, g, f), [&](ObjId x) {
              PathP start = path::seq({C.star(Fa, x), C.star(hat_hg_f, x), C.chi(F.one[hg], Ff, x),
                                       C.pull(Ff, path::comp(C.star(hat_hg, x), C.chi(Fh, Fg, x)))});
              ObjId hx = obj_of(Fh, x);
              PathP target = path::seq({C.star(hat_h_gf, x), C.chi(Fh, F.one[gf], x), C.star(hat_gf, hx),
                                        C.chi(Fg, Ff, hx)});
              Pasting p(start);
              p.at(2, cell::inv(C.chi_alpha_f(hat_hg, Ff, x)));
              C.xi_chain_at(p, 0, {B.whisker_r(hat_hg, Ff), hat_hg_f, Fa},
                            {B.a(Fh, Fg, Ff), B.whisker_l(Fh, hat_gf), hat_h_gf}, -1, x);
              p.at(2, C.omega(Fh, Fg, Ff, x));
              p.at(1, C.chi_h_alpha(Fh, hat_gf, x));
              return p.eval(target);
            });
      }

  for (OneId f = 0; f < A.n_one(); ++f) {
    ObjId a = A.src(f), b = A.tgt(f);
    OneId Ff = F.one[f];
    TwoId ub = F.unit[b], ua = F.unit[a];
    TwoId hat_1f = F.hat(A.id1[b], f), hat_f1 = F.hat(f, A.id1[a]);
    G->gamma.push_back(
        make_modification("gamma_F", expected::gamma_src(Gr, f), expected::ident_trans(Gr, f), [&](ObjId x) {
          PathP start = path::seq({C.star(F.two[A.l(f)], x), C.star(hat_1f, x), C.chi(F.one[A.id1[b]], Ff, x),
                                   C.pull(Ff, path::comp(C.star(ub, x), C.chi_u(F.obj[b], x)))});
          const LaxFunctor& Pf = D.f_(Ff);
          Pasting p(start);
          p.at(2, cell::inv(C.chi_alpha_f(ub, Ff, x)));
          C.xi_chain_at(p, 0, {B.whisker_r(ub, Ff), hat_1f, F.two[A.l(f)]}, {B.l(Ff)}, -1, x);
          p.at(0, C.gamma(Ff, x));
          return p.eval(path::id(*Pf.tgt, Pf.obj[x]));
        }));
    G->delta.push_back(
        make_modification("delta_F", expected::delta_src(Gr, f), expected::ident_trans(Gr, f), [&](ObjId x) {
          ObjId fx = obj_of(Ff, x);
          PathP start = path::seq({C.star(F.two[A.r(f)], x), C.star(hat_f1, x), C.chi(Ff, F.one[A.id1[a]], x),
                                   C.star(ua, fx), C.chi_u(F.obj[a], fx)});
          const LaxFunctor& Pf = D.f_(Ff);
          Pasting p(start);
          p.at(2, cell::inv(C.chi_h_alpha(Ff, ua, x)));
          C.xi_chain_at(p, 0, {B.whisker_l(Ff, ua), hat_f1, F.two[A.r(f)]}, {B.r(Ff)}, -1, x);
          p.at(0, C.delta(Ff, x));
          return p.eval(path::id(*Pf.tgt, Pf.obj[x]));
        }));
  }
  return G;
}

// ---------------------------------------------------------------------------

HomFiber hom_fiber(const Bicategory& B, ObjId x, ObjId b) {
  HomFiber H;
  Category C;
  for (OneId f : B.hom(x, b)) {
    H.obj[f] = int(C.obj_label.size());
    H.obj_global.push_back(f);
    C.obj_label.push_back(B.one_name(f));
  }
  for (OneId f : B.hom(x, b))
    for (OneId g : B.hom(x, b))
      for (TwoId al : B.hom2(f, g)) {
        H.mor[al] = int(C.mor.size());
        C.mor.push_back({H.obj[f], H.obj[g]});
        C.mor_label.push_back(B.two_name(al));
      }
  C.id.resize(C.obj_label.size());
  for (OneId f : B.hom(x, b)) C.id[H.obj[f]] = H.mor[B.id2[f]];
  for (const auto& [al, m] : H.mor)
    for (TwoId be : B.twos_from(B.tgt2(al))) C.comp[key2(H.mor.at(be), m)] = H.mor.at(B.vc(be, al));
  auto bic = std::make_shared<Bicategory>(locally_discrete(C, "hom(" + B.obj_name(x) + "," + B.obj_name(b) + ")"));
  H.bic = bic;
  return H;
}

namespace {

// Naturality cell in a locally discrete bicategory: exists only between
// equal 1-cells, where it is the identity.
TwoId forced(const Bicategory& fib, OneId s, OneId t, const std::string& what) {
  if (s != t) throw IncoherentInput(what + ": square does not commute in a hom-category");
  return fib.id2[s];
}

// A modification between transformations into locally discrete fibers is
// the identity where source and target components agree.
ModPtr forced_mod(const std::string& name, TransPtr s, TransPtr t) {
  const Bicategory& fib = *s->F->tgt;
  return make_modification(name, s, t, [&](ObjId x) { return forced(fib, s->comp[x], t->comp[x], name); });
}

}  // namespace

BidiagramPtr hom_bidiagram(BicatPtr Bp, ObjId b) {
  const Bicategory& B = *Bp;
  auto D = std::make_shared<LaxBidiagram>();
  D->name = "hom(-," + B.obj_name(b) + ")";
  D->base = Bp;
  std::vector<HomFiber> H;
  for (ObjId x = 0; x < B.n_obj(); ++x) {
    H.push_back(hom_fiber(B, x, b));
    D->fiber.push_back(H.back().bic);
  }
  // f*: B(y,b) -> B(x,b), h ↦ h∘f
  for (OneId f = 0; f < B.n_one(); ++f) {
    ObjId x = B.src(f), y = B.tgt(f);
    const HomFiber &Hy = H[y], &Hx = H[x];
    LaxFunctor F;
    F.name = B.one_name(f) + "*";
    F.src = Hy.bic;
    F.tgt = Hx.bic;
    for (OneId h : Hy.obj_global) F.obj.push_back(Hx.obj.at(B.comp(h, f)));
    F.one.assign(Hy.bic->n_one(), -1);
    for (const auto& [al, m] : Hy.mor) F.one[m] = Hx.mor.at(B.whisker_r(al, f));
    F.two = F.one;  // locally discrete: 2-cells are identities named by their 1-cells
    const Bicategory& T = *Hx.bic;
    for (OneId v = 0; v < Hy.bic->n_one(); ++v)
      for (OneId u : Hy.bic->ones_from(Hy.bic->tgt(v)))
        F.comp[key2(u, v)] = T.id2[F.one[Hy.bic->comp(u, v)]];
    for (ObjId o = 0; o < Hy.bic->n_obj(); ++o) F.unit.push_back(T.id2[T.id1[F.obj[o]]]);
    D->pull.push_back(share(std::move(F)));
  }
  // α*: f* ⇒ g*, component 1_h∘α
  for (TwoId al = 0; al < B.n_two(); ++al) {
    OneId f = B.src2(al);
    ObjId x = B.src(f), y = B.tgt(f);
    const HomFiber &Hy = H[y], &Hx = H[x];
    const Bicategory& T = *Hx.bic;
    Transformation t;
    t.name = B.two_name(al) + "*";
    t.kind = TKind::Pseudo;
    t.F = D->pull[f];
    t.G = D->pull[B.tgt2(al)];
    for (OneId h : Hy.obj_global) t.comp.push_back(Hx.mor.at(B.whisker_l(h, al)));
    for (OneId u = 0; u < Hy.bic->n_one(); ++u) {
      ObjId s = Hy.bic->src(u), e = Hy.bic->tgt(u);
      t.nat.push_back(forced(T, T.comp(t.comp[e], t.F->one[u]), T.comp(t.G->one[u], t.comp[s]), t.name));
    }
    D->pull2.push_back(share(std::move(t)));
  }
  // χ_{g,f}: component a_{h,g,f}
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f))) {
      ObjId x = B.src(f), z = B.tgt(g);
      const HomFiber &Hz = H[z], &Hx = H[x];
      const Bicategory& T = *Hx.bic;
      Transformation t;
      t.name = "chi";
      t.kind = TKind::Pseudo;
      t.F = D->pull_comp(g, f);
      t.G = D->pull[B.comp(g, f)];
      for (OneId h : Hz.obj_global) t.comp.push_back(Hx.mor.at(B.a(h, g, f)));
      for (OneId u = 0; u < Hz.bic->n_one(); ++u) {
        ObjId s = Hz.bic->src(u), e = Hz.bic->tgt(u);
        t.nat.push_back(forced(T, T.comp(t.comp[e], t.F->one[u]), T.comp(t.G->one[u], t.comp[s]), "chi"));
      }
      D->chi[key2(g, f)] = share(std::move(t));
    }
  // χ_x: component r_h⁻¹
  for (ObjId x = 0; x < B.n_obj(); ++x) {
    const HomFiber& Hx = H[x];
    const Bicategory& T = *Hx.bic;
    Transformation t;
    t.name = "chi_" + B.obj_name(x);
    t.kind = TKind::Pseudo;
    t.F = D->ident(x);
    t.G = D->pull[B.id1[x]];
    for (OneId h : Hx.obj_global) t.comp.push_back(Hx.mor.at(B.inv(B.r(h))));
    for (OneId u = 0; u < T.n_one(); ++u) {
      ObjId s = T.src(u), e = T.tgt(u);
      t.nat.push_back(forced(T, T.comp(t.comp[e], u), T.comp(t.G->one[u], t.comp[s]), t.name));
    }
    D->chi_unit.push_back(share(std::move(t)));
  }
  const LaxBidiagram& Dr = *D;
  for (TwoId al = 0; al < B.n_two(); ++al)
    for (TwoId be : B.twos_from(B.tgt2(al)))
      D->xi[key2(be, al)] = forced_mod("xi", expected::xi_src(Dr, be, al), D->pull2[B.vc(be, al)]);
  for (OneId f = 0; f < B.n_one(); ++f)
    D->xi_id.push_back(forced_mod("xi_f", expected::xi_id_src(Dr, f), D->pull2[B.id2[f]]));
  for (TwoId al = 0; al < B.n_two(); ++al)
    for (OneId g : B.ones_from(B.tgt(B.src2(al))))
      for (TwoId be : B.twos_from(g))
        D->chi2[key2(be, al)] = forced_mod("chi2", expected::chi2_src(Dr, be, al), expected::chi2_tgt(Dr, be, al));
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f)))
      for (OneId h : B.ones_from(B.tgt(g)))
        D->omega[key3(h, g, f)] =
            forced_mod("omega", expected::omega_src(Dr, h, g, f), expected::omega_tgt(Dr, h, g, f));
  for (OneId f = 0; f < B.n_one(); ++f) {
    D->gamma.push_back(forced_mod("gamma", expected::gamma_src(Dr, f), expected::ident_trans(Dr, f)));
    D->delta.push_back(forced_mod("delta", expected::delta_src(Dr, f), expected::ident_trans(Dr, f)));
  }
  return D;
}

BicatPtr terminal_bicategory() {
  auto T = std::make_shared<Bicategory>();
  T->name = "1";
  ObjId o = T->add_obj("*");
  OneId u = T->add_one(o, o, "1");
  TwoId c = T->add_two(u, u, "1");
  T->id1 = {u};
  T->id2 = {c};
  T->lunit = {c};
  T->runit = {c};
  T->set_hcomp1(u, u, u);
  T->set_vcomp(c, c, c);
  T->set_hcomp2(c, c, c);
  T->set_assoc(u, u, u, c);
  T->finalize();
  return T;
}

BidiagramPtr constant_bidiagram(BicatPtr Bp) { return constant_bidiagram(Bp, terminal_bicategory()); }

BidiagramPtr constant_bidiagram(BicatPtr Bp, BicatPtr Xp) {
  const Bicategory& B = *Bp;
  const Bicategory& X = *Xp;
  for (ObjId x = 0; x < X.n_obj(); ++x) {
    OneId i = X.id1[x];
    if (X.comp(i, i) != i || !X.is_identity(X.l(i)))
      throw IncoherentInput("constant bidiagram needs a fiber with 1∘1 = 1 and l_1 = 1");
  }
  auto D = std::make_shared<LaxBidiagram>();
  D->name = "const(" + X.name + ")";
  D->base = Bp;
  D->fiber.assign(B.n_obj(), Xp);
  FunPtr I = share(identity_functor(Xp));
  D->pull.assign(B.n_one(), I);
  Transformation one = identity_transformation(I);
  one.kind = TKind::Pseudo;
  auto constant = [&](FunPtr F, FunPtr G) {
    Transformation t = one;
    t.name = "1";
    t.F = F;
    t.G = G;
    return share(std::move(t));
  };
  for (TwoId al = 0; al < B.n_two(); ++al) D->pull2.push_back(constant(I, I));
  const LaxBidiagram& Dr = *D;
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f))) D->chi[key2(g, f)] = constant(Dr.pull_comp(g, f), I);
  for (ObjId b = 0; b < B.n_obj(); ++b) D->chi_unit.push_back(constant(Dr.ident(b), I));
  // Every transformation involved has components 1_x, so the identity
  // components are well typed.
  auto mod = [&](TransPtr s, TransPtr t) {
    return make_modification("1", s, t, [&X](ObjId x) { return X.id2[X.id1[x]]; });
  };
  for (TwoId al = 0; al < B.n_two(); ++al)
    for (TwoId be : B.twos_from(B.tgt2(al))) D->xi[key2(be, al)] = mod(expected::xi_src(Dr, be, al), D->pull2[B.vc(be, al)]);
  for (OneId f = 0; f < B.n_one(); ++f) D->xi_id.push_back(mod(expected::xi_id_src(Dr, f), D->pull2[B.id2[f]]));
  for (TwoId al = 0; al < B.n_two(); ++al)
    for (OneId g : B.ones_from(B.tgt(B.src2(al))))
      for (TwoId be : B.twos_from(g))
        D->chi2[key2(be, al)] = mod(expected::chi2_src(Dr, be, al), expected::chi2_tgt(Dr, be, al));
  for (OneId f = 0; f < B.n_one(); ++f)
    for (OneId g : B.ones_from(B.tgt(f)))
      for (OneId h : B.ones_from(B.tgt(g)))
        D->omega[key3(h, g, f)] = mod(expected::omega_src(Dr, h, g, f), expected::omega_tgt(Dr, h, g, f));
  for (OneId f = 0; f < B.n_one(); ++f) {
    D->gamma.push_back(mod(expected::gamma_src(Dr, f), expected::ident_trans(Dr, f)));
    D->delta.push_back(mod(expected::delta_src(Dr, f), expected::ident_trans(Dr, f)));
  }
  return D;
}

}  // namespace bicat
