#include "bicat/kernel.hpp"

#include <algorithm>
#include <sstream>

namespace bicat {

const std::vector<int> Bicategory::empty_;

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& v : other.violations)
    violations.push_back({prefix.empty() ? v.axiom : prefix + "/" + v.axiom, v.cells, v.detail});
}

std::size_t Report::count(const std::string& axiom) const {
  return std::count_if(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.axiom == axiom; });
}

std::string Report::str(std::size_t limit) const {
  std::ostringstream os;
  std::size_t n = 0;
  for (const auto& v : violations) {
    if (n++ == limit) {
      os << "... (" << violations.size() - limit << " more)\n";
      break;
    }
    os << v.axiom << " (";
    for (std::size_t i = 0; i < v.cells.size(); ++i) os << (i ? "," : "") << v.cells[i];
    os << ")";
    if (!v.detail.empty()) os << " " << v.detail;
    os << "\n";
  }
  return os.str();
}

ObjId Bicategory::add_obj(std::string label) {
  if (label.empty()) label = "x" + std::to_string(obj_label.size());
  obj_label.push_back(std::move(label));
  id1.push_back(-1);
  finalized_ = false;
  return int(obj_label.size()) - 1;
}

OneId Bicategory::add_one(ObjId s, ObjId t, std::string label) {
  one.emplace_back(s, t);
  if (!label.empty() || !one_label.empty()) {
    one_label.resize(one.size() - 1);
    one_label.push_back(std::move(label));
  }
  id2.push_back(-1);
  lunit.push_back(-1);
  runit.push_back(-1);
  finalized_ = false;
  return int(one.size()) - 1;
}

TwoId Bicategory::add_two(OneId s, OneId t, std::string label) {
  two.emplace_back(s, t);
  if (!label.empty() || !two_label.empty()) {
    two_label.resize(two.size() - 1);
    two_label.push_back(std::move(label));
  }
  finalized_ = false;
  return int(two.size()) - 1;
}

std::string Bicategory::obj_name(ObjId x) const { return obj_label[x]; }
std::string Bicategory::one_name(OneId f) const {
  if (f < int(one_label.size()) && !one_label[f].empty()) return one_label[f];
  return "f" + std::to_string(f);
}
std::string Bicategory::two_name(TwoId a) const {
  if (a < int(two_label.size()) && !two_label[a].empty()) return two_label[a];
  return "c" + std::to_string(a);
}

namespace {

int lookup(const Table& t, std::uint64_t k) {
  auto it = t.find(k);
  return it == t.end() ? -1 : it->second;
}

}  // namespace

int Bicategory::find_comp(OneId g, OneId f) const { return lookup(hcomp1, key2(g, f)); }
int Bicategory::find_vc(TwoId b, TwoId a) const { return lookup(vcomp, key2(b, a)); }
int Bicategory::find_hc(TwoId b, TwoId a) const { return lookup(hcomp2, key2(b, a)); }

OneId Bicategory::comp(OneId g, OneId f) const {
  int h = find_comp(g, f);
  if (h < 0) throw NotComposable("1-cells " + one_name(g) + " o " + one_name(f));
  return h;
}

TwoId Bicategory::vc(TwoId b, TwoId a) const {
  int c = find_vc(b, a);
  if (c < 0) throw NotComposable("2-cells " + two_name(b) + " . " + two_name(a));
  return c;
}

TwoId Bicategory::hc(TwoId b, TwoId a) const {
  int c = find_hc(b, a);
  if (c < 0) throw NotComposable("2-cells " + two_name(b) + " o " + two_name(a));
  return c;
}

TwoId Bicategory::a(OneId h, OneId g, OneId f) const {
  int c = lookup(assoc, key3(h, g, f));
  if (c < 0) throw NotComposable("associator at " + one_name(h) + "," + one_name(g) + "," + one_name(f));
  return c;
}

TwoId Bicategory::inv(TwoId c) const {
  int d = inverse_.at(c);
  if (d < 0) throw NotComposable("2-cell " + two_name(c) + " is not invertible");
  return d;
}

const std::vector<OneId>& Bicategory::hom(ObjId a, ObjId b) const {
  auto it = homs1_.find(key2(a, b));
  return it == homs1_.end() ? empty_ : it->second;
}

const std::vector<TwoId>& Bicategory::hom2(OneId f, OneId g) const {
  auto it = homs2_.find(key2(f, g));
  return it == homs2_.end() ? empty_ : it->second;
}

void Bicategory::finalize() {
  const int n0 = n_obj(), n1 = n_one(), n2 = n_two();
  if (n0 >= (1 << 21) || n1 >= (1 << 21) || n2 >= (1 << 21))
    throw MalformedTable("too many cells for the packed index");
  auto bad = [](const std::string& m) { throw MalformedTable(m); };
  for (int f = 0; f < n1; ++f) {
    auto [s, t] = one[f];
    if (s < 0 || s >= n0 || t < 0 || t >= n0) bad("1-cell " + std::to_string(f) + " has an invalid endpoint");
  }
  for (int c = 0; c < n2; ++c) {
    auto [s, t] = two[c];
    if (s < 0 || s >= n1 || t < 0 || t >= n1) bad("2-cell " + std::to_string(c) + " has an invalid endpoint");
    if (one[s] != one[t]) bad("2-cell " + std::to_string(c) + " between non-parallel 1-cells");
  }
  homs1_.clear();
  homs2_.clear();
  from1_.assign(n0, {});
  from2_.assign(n1, {});
  for (int f = 0; f < n1; ++f) {
    homs1_[key2(one[f].first, one[f].second)].push_back(f);
    from1_[one[f].first].push_back(f);
  }
  for (int c = 0; c < n2; ++c) {
    homs2_[key2(two[c].first, two[c].second)].push_back(c);
    from2_[two[c].first].push_back(c);
  }
  if (int(id1.size()) != n0) bad("id1 has wrong length");
  if (int(id2.size()) != n1 || int(lunit.size()) != n1 || int(runit.size()) != n1)
    bad("per-1-cell table has wrong length");
  for (int x = 0; x < n0; ++x) {
    OneId i = id1[x];
    if (i < 0 || i >= n1 || one[i] != std::make_pair(x, x)) bad("id1[" + std::to_string(x) + "] mistyped");
  }
  for (int f = 0; f < n1; ++f) {
    TwoId i = id2[f];
    if (i < 0 || i >= n2 || two[i] != std::make_pair(f, f)) bad("id2[" + std::to_string(f) + "] mistyped");
  }
  // Totality and typing of composition tables.
  for (int f = 0; f < n1; ++f)
    for (OneId g : from1_[one[f].second]) {
      int h = find_comp(g, f);
      if (h < 0) bad("hcomp1 missing (" + std::to_string(g) + "," + std::to_string(f) + ")");
      if (h >= n1 || one[h] != std::make_pair(one[f].first, one[g].second))
        bad("hcomp1 (" + std::to_string(g) + "," + std::to_string(f) + ") mistyped");
    }
  if (int(hcomp1.size()) != [&] {
        std::size_t n = 0;
        for (int f = 0; f < n1; ++f) n += from1_[one[f].second].size();
        return int(n);
      }())
    bad("hcomp1 has entries for non-composable pairs");
  std::size_t nv = 0, nh = 0;
  for (int a = 0; a < n2; ++a) {
    for (TwoId b : from2_[two[a].second]) {
      ++nv;
      int c = find_vc(b, a);
      if (c < 0) bad("vcomp missing (" + std::to_string(b) + "," + std::to_string(a) + ")");
      if (c >= n2 || two[c] != std::make_pair(two[a].first, two[b].second))
        bad("vcomp (" + std::to_string(b) + "," + std::to_string(a) + ") mistyped");
    }
  }
  if (vcomp.size() != nv) bad("vcomp has entries for non-composable pairs");
  for (int a = 0; a < n2; ++a) {
    ObjId mid = one[two[a].first].second;
    for (OneId g : from1_[mid])
      for (TwoId b : from2_[g]) {
        ++nh;
        int c = find_hc(b, a);
        if (c < 0) bad("hcomp2 missing (" + std::to_string(b) + "," + std::to_string(a) + ")");
        if (c >= n2) bad("hcomp2 out of range");
        OneId s = find_comp(two[b].first, two[a].first), t = find_comp(two[b].second, two[a].second);
        if (two[c] != std::make_pair(s, t))
          bad("hcomp2 (" + std::to_string(b) + "," + std::to_string(a) + ") mistyped");
      }
  }
  if (hcomp2.size() != nh) bad("hcomp2 has entries for non-composable pairs");
  std::size_t na = 0;
  for (int f = 0; f < n1; ++f)
    for (OneId g : from1_[one[f].second])
      for (OneId h : from1_[one[g].second]) {
        ++na;
        int c = lookup(assoc, key3(h, g, f));
        if (c < 0) bad("assoc missing (" + std::to_string(h) + "," + std::to_string(g) + "," + std::to_string(f) + ")");
        OneId s = find_comp(find_comp(h, g), f), t = find_comp(h, find_comp(g, f));
        if (c >= n2 || two[c] != std::make_pair(s, t))
          bad("assoc (" + std::to_string(h) + "," + std::to_string(g) + "," + std::to_string(f) + ") mistyped");
      }
  if (assoc.size() != na) bad("assoc has entries for non-composable triples");
  for (int f = 0; f < n1; ++f) {
    OneId lf = find_comp(id1[one[f].second], f), rf = find_comp(f, id1[one[f].first]);
    if (lunit[f] < 0 || lunit[f] >= n2 || two[lunit[f]] != std::make_pair(lf, f))
      bad("lunit[" + std::to_string(f) + "] mistyped");
    if (runit[f] < 0 || runit[f] >= n2 || two[runit[f]] != std::make_pair(rf, f))
      bad("runit[" + std::to_string(f) + "] mistyped");
  }
  // Inverse cache by table search.
  inverse_.assign(n2, -1);
  for (int c = 0; c < n2; ++c) {
    if (inverse_[c] >= 0) continue;
    auto [s, t] = two[c];
    for (TwoId d : hom2(t, s)) {
      if (find_vc(d, c) == id2[s] && find_vc(c, d) == id2[t]) {
        inverse_[c] = d;
        inverse_[d] = c;
        break;
      }
    }
  }
  finalized_ = true;
}

namespace term {

OneT gen(OneId f) { return std::make_shared<OneTerm>(OneTerm{OneTerm::Gen, f, {}, {}}); }
OneT id1(ObjId x) { return std::make_shared<OneTerm>(OneTerm{OneTerm::Id1, x, {}, {}}); }
OneT comp(OneT g, OneT f) { return std::make_shared<OneTerm>(OneTerm{OneTerm::HComp, -1, std::move(g), std::move(f)}); }

namespace {
TwoT mk(TwoTerm::Kind k, int id = -1, TwoT l = {}, TwoT r = {}, OneT h = {}, OneT g = {}, OneT f = {}) {
  return std::make_shared<TwoTerm>(TwoTerm{k, id, std::move(l), std::move(r), std::move(h), std::move(g), std::move(f)});
}
}  // namespace

TwoT two(TwoId a) { return mk(TwoTerm::Gen, a); }
TwoT id2(OneT f) { return mk(TwoTerm::Id2, -1, {}, {}, {}, {}, std::move(f)); }
TwoT id2(OneId f) { return id2(gen(f)); }
TwoT vc(TwoT b, TwoT a) { return mk(TwoTerm::VComp, -1, std::move(b), std::move(a)); }
TwoT hc(TwoT b, TwoT a) { return mk(TwoTerm::HComp, -1, std::move(b), std::move(a)); }
TwoT assoc(OneT h, OneT g, OneT f) { return mk(TwoTerm::Assoc, -1, {}, {}, std::move(h), std::move(g), std::move(f)); }
TwoT assoc_inv(OneT h, OneT g, OneT f) {
  return mk(TwoTerm::AssocInv, -1, {}, {}, std::move(h), std::move(g), std::move(f));
}
TwoT lunit(OneT f) { return mk(TwoTerm::LUnit, -1, {}, {}, {}, {}, std::move(f)); }
TwoT lunit_inv(OneT f) { return mk(TwoTerm::LUnitInv, -1, {}, {}, {}, {}, std::move(f)); }
TwoT runit(OneT f) { return mk(TwoTerm::RUnit, -1, {}, {}, {}, {}, std::move(f)); }
TwoT runit_inv(OneT f) { return mk(TwoTerm::RUnitInv, -1, {}, {}, {}, {}, std::move(f)); }
TwoT inv(TwoT a) { return mk(TwoTerm::Inv, -1, std::move(a)); }

std::string show(const OneT& t) {
  switch (t->kind) {
    case OneTerm::Gen: return "f" + std::to_string(t->id);
    case OneTerm::Id1: return "1_" + std::to_string(t->id);
    case OneTerm::HComp: return "(" + show(t->l) + " o " + show(t->r) + ")";
  }
  return "?";
}

std::string show(const TwoT& t) {
  switch (t->kind) {
    case TwoTerm::Gen: return "c" + std::to_string(t->id);
    case TwoTerm::Id2: return "1[" + show(t->f) + "]";
    case TwoTerm::VComp: return "(" + show(t->l) + " . " + show(t->r) + ")";
    case TwoTerm::HComp: return "(" + show(t->l) + " o " + show(t->r) + ")";
    case TwoTerm::Assoc: return "a[" + show(t->h) + "," + show(t->g) + "," + show(t->f) + "]";
    case TwoTerm::AssocInv: return "a^-1[" + show(t->h) + "," + show(t->g) + "," + show(t->f) + "]";
    case TwoTerm::LUnit: return "l[" + show(t->f) + "]";
    case TwoTerm::LUnitInv: return "l^-1[" + show(t->f) + "]";
    case TwoTerm::RUnit: return "r[" + show(t->f) + "]";
    case TwoTerm::RUnitInv: return "r^-1[" + show(t->f) + "]";
    case TwoTerm::Inv: return "inv(" + show(t->l) + ")";
  }
  return "?";
}

}  // namespace term

OneId eval_one(const Bicategory& B, const OneT& t) {
  switch (t->kind) {
    case OneTerm::Gen:
      if (t->id < 0 || t->id >= B.n_one()) throw IllTypedTerm("unknown 1-cell in " + term::show(t));
      return t->id;
    case OneTerm::Id1:
      if (t->id < 0 || t->id >= B.n_obj()) throw IllTypedTerm("unknown object in " + term::show(t));
      return B.id1[t->id];
    case OneTerm::HComp: {
      OneId f = eval_one(B, t->r);
      OneId g = eval_one(B, t->l);
      int h = B.find_comp(g, f);
      if (h < 0) throw IllTypedTerm(term::show(t));
      return h;
    }
  }
  throw IllTypedTerm("bad term");
}

TwoId eval_two(const Bicategory& B, const TwoT& t) {
  switch (t->kind) {
    case TwoTerm::Gen:
      if (t->id < 0 || t->id >= B.n_two()) throw IllTypedTerm("unknown 2-cell in " + term::show(t));
      return t->id;
    case TwoTerm::Id2: return B.id2[eval_one(B, t->f)];
    case TwoTerm::VComp: {
      TwoId a = eval_two(B, t->r);
      TwoId b = eval_two(B, t->l);
      int c = B.find_vc(b, a);
      if (c < 0) throw IllTypedTerm(term::show(t));
      return c;
    }
    case TwoTerm::HComp: {
      TwoId a = eval_two(B, t->r);
      TwoId b = eval_two(B, t->l);
      int c = B.find_hc(b, a);
      if (c < 0) throw IllTypedTerm(term::show(t));
      return c;
    }
    case TwoTerm::Assoc:
    case TwoTerm::AssocInv: {
      OneId f = eval_one(B, t->f), g = eval_one(B, t->g), h = eval_one(B, t->h);
      if (B.find_comp(g, f) < 0 || B.find_comp(h, g) < 0) throw IllTypedTerm(term::show(t));
      TwoId c = B.a(h, g, f);
      if (t->kind == TwoTerm::Assoc) return c;
      if (!B.is_iso(c)) throw IllTypedTerm("non-invertible " + term::show(t));
      return B.inv(c);
    }
    case TwoTerm::LUnit: return B.l(eval_one(B, t->f));
    case TwoTerm::RUnit: return B.r(eval_one(B, t->f));
    case TwoTerm::LUnitInv:
    case TwoTerm::RUnitInv: {
      OneId f = eval_one(B, t->f);
      TwoId c = t->kind == TwoTerm::LUnitInv ? B.l(f) : B.r(f);
      if (!B.is_iso(c)) throw IllTypedTerm("non-invertible " + term::show(t));
      return B.inv(c);
    }
    case TwoTerm::Inv: {
      TwoId c = eval_two(B, t->l);
      if (!B.is_iso(c)) throw IllTypedTerm("non-invertible " + term::show(t));
      return B.inv(c);
    }
  }
  throw IllTypedTerm("bad term");
}

bool is_iso_two(const Bicategory& B, TwoId c) { return B.is_iso(c); }

Report validate_bicategory(const Bicategory& B, ValidateOptions opt) {
  if (!B.finalized()) throw MalformedTable("bicategory not finalized");
  Report rep;
  const int n1 = B.n_one(), n2 = B.n_two();
  // Hom-categories.
  for (TwoId a = 0; a < n2; ++a) {
    if (B.vc(B.id2[B.tgt2(a)], a) != a) rep.add("hom.left_unit", {a});
    if (B.vc(a, B.id2[B.src2(a)]) != a) rep.add("hom.right_unit", {a});
    for (TwoId b : B.twos_from(B.tgt2(a))) {
      TwoId ba = B.vc(b, a);
      for (TwoId c : B.twos_from(B.tgt2(b)))
        if (B.vc(c, ba) != B.vc(B.vc(c, b), a)) rep.add("hom.assoc", {c, b, a});
    }
  }
  // Functoriality of horizontal composition.
  for (OneId f = 0; f < n1; ++f)
    for (OneId g : B.ones_from(B.tgt(f)))
      if (B.hc(B.id2[g], B.id2[f]) != B.id2[B.comp(g, f)]) rep.add("interchange.identity", {g, f});
  for (TwoId a = 0; a < n2; ++a)
    for (TwoId b : B.twos_from(B.tgt2(a))) {
      TwoId ba = B.vc(b, a);
      ObjId mid = B.tgt(B.src2(a));
      for (OneId g : B.ones_from(mid))
        for (TwoId a2 : B.twos_from(g))
          for (TwoId b2 : B.twos_from(B.tgt2(a2)))
            if (B.vc(B.hc(b2, b), B.hc(a2, a)) != B.hc(B.vc(b2, a2), ba)) rep.add("interchange", {b2, b, a2, a});
    }
  // Constraints invertible and natural.
  for (OneId f = 0; f < n1; ++f) {
    if (!B.is_iso(B.l(f))) rep.add("lunit.invertible", {f});
    if (!B.is_iso(B.r(f))) rep.add("runit.invertible", {f});
    TwoId one_b = B.id2[B.id1[B.tgt(f)]], one_a = B.id2[B.id1[B.src(f)]];
    for (TwoId a : B.twos_from(f)) {
      OneId f2 = B.tgt2(a);
      if (B.vc(B.l(f2), B.hc(one_b, a)) != B.vc(a, B.l(f))) rep.add("lunit.natural", {a});
      if (B.vc(B.r(f2), B.hc(a, one_a)) != B.vc(a, B.r(f))) rep.add("runit.natural", {a});
    }
  }
  for (OneId f = 0; f < n1; ++f)
    for (OneId g : B.ones_from(B.tgt(f)))
      for (OneId h : B.ones_from(B.tgt(g))) {
        TwoId a0 = B.a(h, g, f);
        if (!B.is_iso(a0)) rep.add("assoc.invertible", {h, g, f});
        for (TwoId al : B.twos_from(f))
          for (TwoId be : B.twos_from(g))
            for (TwoId ga : B.twos_from(h)) {
              TwoId lhs = B.vc(B.a(B.tgt2(ga), B.tgt2(be), B.tgt2(al)), B.hc(B.hc(ga, be), al));
              TwoId rhs = B.vc(B.hc(ga, B.hc(be, al)), a0);
              if (lhs != rhs) rep.add("assoc.natural", {ga, be, al});
            }
      }
  // Pentagon and triangle.
  for (OneId f = 0; f < n1; ++f)
    for (OneId g : B.ones_from(B.tgt(f))) {
      OneId gf = B.comp(g, f);
      for (OneId h : B.ones_from(B.tgt(g))) {
        OneId hg = B.comp(h, g);
        for (OneId k : B.ones_from(B.tgt(h))) {
          OneId kh = B.comp(k, h);
          TwoId lhs = B.vc(B.a(k, h, gf), B.a(kh, g, f));
          TwoId rhs = B.vc(B.whisker_l(k, B.a(h, g, f)), B.vc(B.a(k, hg, f), B.whisker_r(B.a(k, h, g), f)));
          if (lhs != rhs) rep.add("pentagon", {k, h, g, f});
        }
      }
    }
  for (OneId f = 0; f < n1; ++f)
    for (OneId g : B.ones_from(B.tgt(f))) {
      OneId one_b = B.id1[B.tgt(f)];
      TwoId lhs = B.vc(B.whisker_l(g, B.l(f)), B.a(g, one_b, f));
      if (lhs != B.whisker_r(B.r(g), f)) rep.add("triangle", {g, f});
      if (!opt.derived) continue;
      OneId gf = B.comp(g, f);
      OneId one_c = B.id1[B.tgt(g)], one_a = B.id1[B.src(f)];
      if (B.vc(B.l(gf), B.a(one_c, g, f)) != B.whisker_r(B.l(g), f)) rep.add("triangle.left", {g, f});
      if (B.vc(B.whisker_l(g, B.r(f)), B.a(g, f, one_a)) != B.r(gf)) rep.add("triangle.right", {g, f});
    }
  if (opt.derived)
    for (ObjId x = 0; x < B.n_obj(); ++x)
      if (B.r(B.id1[x]) != B.l(B.id1[x])) rep.add("unit.r_equals_l", {x});
  return rep;
}

namespace {

Bicategory copy_cells(const Bicategory& B, bool rev1, bool rev2) {
  Bicategory D;
  D.name = B.name;
  D.obj_label = B.obj_label;
  D.one_label = B.one_label;
  D.two_label = B.two_label;
  D.one = B.one;
  if (rev1)
    for (auto& p : D.one) std::swap(p.first, p.second);
  D.two = B.two;
  if (rev2)
    for (auto& p : D.two) std::swap(p.first, p.second);
  D.id1 = B.id1;
  D.id2 = B.id2;
  return D;
}

}  // namespace

Bicategory op(const Bicategory& B) {
  Bicategory D = copy_cells(B, true, false);
  D.name = B.name.empty() ? "" : B.name + "^op";
  D.vcomp = B.vcomp;
  for (auto [k, v] : B.hcomp1) D.hcomp1[key2(int(k & 0xffffffffu), int(k >> 32))] = v;
  for (auto [k, v] : B.hcomp2) D.hcomp2[key2(int(k & 0xffffffffu), int(k >> 32))] = v;
  for (auto [k, v] : B.assoc) {
    int h = int(k >> 42), g = int((k >> 21) & 0x1fffff), f = int(k & 0x1fffff);
    D.assoc[key3(f, g, h)] = B.inv(v);
  }
  D.lunit = B.runit;
  D.runit = B.lunit;
  D.finalize();
  return D;
}

Bicategory co(const Bicategory& B) {
  Bicategory D = copy_cells(B, false, true);
  D.name = B.name.empty() ? "" : B.name + "^co";
  for (auto [k, v] : B.vcomp) D.vcomp[key2(int(k & 0xffffffffu), int(k >> 32))] = v;
  D.hcomp1 = B.hcomp1;
  D.hcomp2 = B.hcomp2;
  for (auto [k, v] : B.assoc) D.assoc[k] = B.inv(v);
  D.lunit.resize(B.n_one());
  D.runit.resize(B.n_one());
  for (OneId f = 0; f < B.n_one(); ++f) {
    D.lunit[f] = B.inv(B.l(f));
    D.runit[f] = B.inv(B.r(f));
  }
  D.finalize();
  return D;
}

Bicategory coop(const Bicategory& B) {
  Bicategory D = copy_cells(B, true, true);
  D.name = B.name.empty() ? "" : B.name + "^coop";
  for (auto [k, v] : B.vcomp) D.vcomp[key2(int(k & 0xffffffffu), int(k >> 32))] = v;
  for (auto [k, v] : B.hcomp1) D.hcomp1[key2(int(k & 0xffffffffu), int(k >> 32))] = v;
  for (auto [k, v] : B.hcomp2) D.hcomp2[key2(int(k & 0xffffffffu), int(k >> 32))] = v;
  for (auto [k, v] : B.assoc) {
    int h = int(k >> 42), g = int((k >> 21) & 0x1fffff), f = int(k & 0x1fffff);
    D.assoc[key3(f, g, h)] = v;
  }
  D.lunit.resize(B.n_one());
  D.runit.resize(B.n_one());
  for (OneId f = 0; f < B.n_one(); ++f) {
    D.lunit[f] = B.inv(B.r(f));
    D.runit[f] = B.inv(B.l(f));
  }
  D.finalize();
  return D;
}

Bicategory locally_discrete(const Category& C, std::string name) {
  Bicategory B;
  B.name = std::move(name);
  for (const auto& s : C.obj_label) B.add_obj(s);
  for (std::size_t m = 0; m < C.mor.size(); ++m)
    B.add_one(C.mor[m].first, C.mor[m].second, m < C.mor_label.size() ? C.mor_label[m] : std::string{});
  for (int m = 0; m < int(C.mor.size()); ++m) {
    TwoId c = B.add_two(m, m);
    B.id2[m] = c;
  }
  for (int x = 0; x < int(C.id.size()); ++x) B.id1[x] = C.id[x];
  for (auto [k, v] : C.comp) {
    int g = int(k >> 32), f = int(k & 0xffffffffu);
    B.set_hcomp1(g, f, v);
    B.set_hcomp2(g, f, v);  // 2-cell ids coincide with 1-cell ids
  }
  for (int m = 0; m < int(C.mor.size()); ++m) {
    B.set_vcomp(m, m, m);
    B.lunit[m] = m;
    B.runit[m] = m;
  }
  for (int f = 0; f < int(C.mor.size()); ++f)
    for (int g = 0; g < int(C.mor.size()); ++g) {
      if (C.mor[f].second != C.mor[g].first) continue;
      int gf = C.comp.at(key2(g, f));
      for (int h = 0; h < int(C.mor.size()); ++h) {
        if (C.mor[g].second != C.mor[h].first) continue;
        int lhs = C.comp.at(key2(C.comp.at(key2(h, g)), f));
        int rhs = C.comp.at(key2(h, gf));
        if (lhs != rhs) throw MalformedTable("category composition is not associative");
        B.set_assoc(h, g, f, lhs);
      }
    }
  B.finalize();
  return B;
}

bool same_tables(const Bicategory& A, const Bicategory& B) {
  return A.obj_label.size() == B.obj_label.size() && A.one == B.one && A.two == B.two && A.id1 == B.id1 &&
         A.id2 == B.id2 && A.lunit == B.lunit && A.runit == B.runit && A.vcomp == B.vcomp &&
         A.hcomp1 == B.hcomp1 && A.hcomp2 == B.hcomp2 && A.assoc == B.assoc;
}

}  // namespace bicat
