#pragma once

#include "bicat/kernel.hpp"

namespace bicat {

struct LaxFunctor {
  std::string name;
  BicatPtr src, tgt;
  std::vector<ObjId> obj;
  std::vector<OneId> one;
  std::vector<TwoId> two;
  Table comp;              // key2(g,f) -> F̂_{g,f}: Fg∘Ff ⇒ F(g∘f)
  std::vector<TwoId> unit; // F̂_a: 1_{Fa} ⇒ F(1_a)

  TwoId hat(OneId g, OneId f) const;
  bool is_pseudo() const;
  bool is_normal() const;
  bool is_strict() const;
};
using FunPtr = std::shared_ptr<const LaxFunctor>;

Report validate_lax_functor(const LaxFunctor& F);
LaxFunctor identity_functor(BicatPtr B);
LaxFunctor compose_lax_functors(const LaxFunctor& G, const LaxFunctor& F);
// F^coop: A^coop -> B^coop, defined for pseudo F.
LaxFunctor coop_functor(const LaxFunctor& F, BicatPtr src_coop, BicatPtr tgt_coop);
// Equality of all maps and constraint tables.
bool same_functor(const LaxFunctor& F, const LaxFunctor& G);
std::string first_difference(const LaxFunctor& F, const LaxFunctor& G);
// F is an isomorphism of bicategories: strict, bijective on objects,
// 1-cells and 2-cells, and preserving identities, both compositions and
// a, l, r.
Report check_isomorphism(const LaxFunctor& F);

enum class TKind { Lax, Oplax, Pseudo };
std::string to_string(TKind k);

// Lax and pseudo: α̂_f: αb∘Ff ⇒ Gf∘αa.  Oplax: α̂_f: Gf∘αa ⇒ αb∘Ff.
struct Transformation {
  std::string name;
  TKind kind = TKind::Lax;
  FunPtr F, G;
  std::vector<OneId> comp;
  std::vector<TwoId> nat;
};
using TransPtr = std::shared_ptr<const Transformation>;

Report validate_transformation(const Transformation& t);
Transformation identity_transformation(FunPtr F);
// First α, then β.
Transformation vertical_compose(const Transformation& beta, const Transformation& alpha);
// H∘α for pseudo H.
Transformation whisker_left(FunPtr H, const Transformation& alpha, FunPtr HF, FunPtr HG);
// α∘K.
Transformation whisker_right(const Transformation& alpha, FunPtr K, FunPtr FK, FunPtr GK);
// α^coop: G^coop ⇒ F^coop for pseudo α.
Transformation coop_transformation(const Transformation& alpha, FunPtr Gc, FunPtr Fc);

struct Modification {
  std::string name;
  TransPtr alpha, beta;
  std::vector<TwoId> comp;
};
using ModPtr = std::shared_ptr<const Modification>;

Report validate_modification(const Modification& m);
bool is_invertible(const Modification& m);
Modification identity_modification(TransPtr alpha);

// βα = βF′∘Gα for α: F ⇒ F′ (A→B), β: G ⇒ G′ (B→C).
struct PseudoComposite {
  FunPtr GF, GF2, G2F, G2F2;  // GF, GF′, G′F, G′F′
  TransPtr G_alpha, beta_F2, G2_alpha, beta_F;
  TransPtr composite;         // βF′∘Gα: GF ⇒ G′F′
  TransPtr other;             // G′α∘βF
  ModPtr interchange;         // βF′∘Gα ⇛ G′α∘βF, component β̂_{αa}
};
PseudoComposite compose_pseudo_transformations(const Transformation& beta, const Transformation& alpha);

// ---------------------------------------------------------------------------
// Pasting: 1-cell paths with functor applications, canonical isomorphisms
// between paths with the same leaves, and stepwise rewriting.

struct Path;
using PathP = std::shared_ptr<const Path>;

struct Path {
  enum Kind { Atom, Id, Comp, Apply } kind;
  const Bicategory* B;      // where the path lives
  int id = -1;              // Atom: 1-cell, Id: object
  PathP l, r;               // Comp(l, r) = l∘r; Apply inner in r
  const LaxFunctor* F = nullptr;
};

namespace path {
PathP atom(const Bicategory& B, OneId u);
PathP id(const Bicategory& B, ObjId x);
PathP comp(PathP l, PathP r);
PathP apply(const LaxFunctor& F, PathP p);
// chain {F1,...,Fn} applied as F1(...Fn(p)).
PathP apply_chain(const std::vector<const LaxFunctor*>& chain, PathP p);
// Right-nested composite of the list (first element outermost/last applied).
PathP seq(std::vector<PathP> ps);
OneId eval(const PathP& p);
ObjId src(const PathP& p);
ObjId tgt(const PathP& p);
std::string show(const PathP& p);
}  // namespace path

struct Cell {
  PathP src, tgt;
  TwoT t;
  const Bicategory* B;
  TwoId eval() const { return eval_two(*B, t); }
};

namespace cell {
Cell gen(PathP src, PathP tgt, TwoId c);  // checks typing
Cell id(PathP p);
Cell canonical(PathP from, PathP to);
Cell apply(const LaxFunctor& F, const Cell& c);
Cell inv(const Cell& c);
Cell then(const Cell& first, const Cell& second);  // inserts canonical iso
Cell hcomp(const Cell& b, const Cell& a);
}  // namespace cell

class Pasting {
 public:
  explicit Pasting(PathP start);
  // Rewrites the leaves [pos, pos+k) of the current normal form, where k is
  // the number of leaves of c.src, by c.
  Pasting& at(int pos, const Cell& c);
  int size() const { return int(cur_.size()); }
  Cell finish(PathP target) const;
  TwoId eval(PathP target) const { return finish(std::move(target)).eval(); }
  std::string state() const;

 private:
  const Bicategory* B_;
  ObjId obj_;
  PathP start_;
  TwoT acc_;
  std::vector<PathP> cur_;
};

// Naturality cell of a transformation at a 1-cell, given as paths. For lax
// or pseudo α: comp(b)∘F(u) ⇒ G(u)∘comp(a); F and G are functor chains.
Cell nat_cell(const Transformation& t, OneId u, const std::vector<const LaxFunctor*>& Fchain,
              const std::vector<const LaxFunctor*>& Gchain, PathP inner_u);

}  // namespace bicat
