#pragma once

#include "bicat/bidiagram.hpp"

namespace bicat {

// The Grothendieck construction ∫D of a lax bidiagram, with the record of
// which fiber and base cells every cell was built from.
//   objects  (x, a)          x in F_a
//   1-cells  (u, f): (x,a) → (y,b)      u: x → f*y in F_a
//   2-cells  (φ, α): (u,f) ⇒ (v,g)      φ: α*y∘u ⇒ v in F_a
struct Grothendieck {
  struct Obj {
    ObjId x, a;
  };
  struct One {
    OneId u, f;
    ObjId y;
  };
  struct Two {
    TwoId phi, alpha;
    OneId src;
  };

  BidiagramPtr D;
  BicatPtr total;
  std::vector<Obj> objs;
  std::vector<One> ones;
  std::vector<Two> twos;
  bool input_pseudo = false;
  bool structure_invertible = false;  // every å, l̊, r̊ is invertible

  // Throw NotComposable when the cell does not exist.
  ObjId obj(ObjId x, ObjId a) const;
  OneId one(OneId u, OneId f, ObjId y) const;
  TwoId two(TwoId phi, TwoId alpha, OneId src) const;

  std::unordered_map<std::uint64_t, ObjId> obj_index;
  std::unordered_map<std::uint64_t, OneId> one_index;
  std::unordered_map<std::uint64_t, TwoId> two_index;
};
using GrothPtr = std::shared_ptr<const Grothendieck>;

// Throws IncoherentInput when check_coherence reports violations.
GrothPtr grothendieck(BidiagramPtr D, bool check = true);

// The right-hand side of the isomorphism criterion for a 2-cell (φ, α):
// α invertible in B and φ invertible in F_a.
bool components_invertible(const Grothendieck& G, TwoId c);

// Strict projection P: ∫D → B.
LaxFunctor projection(const Grothendieck& G);

// F̄: ∫(DF) → ∫D for F: A → B, with constraints (a⁻¹, F̂) and (1, F̂).
struct Induced {
  FunPtr F;
  GrothPtr src;  // ∫(DF)
  GrothPtr tgt;  // ∫D
  FunPtr Fbar;
};
Induced induced_functor(GrothPtr GD, FunPtr F);

// The unique N: C → ∫(DF) with P∘N = L and F̄∘N = M. Throws SquareMismatch
// when F∘L ≠ P∘M.
LaxFunctor mediating(const Induced& I, FunPtr L, FunPtr M);

// J: F_a → ∫D, x ↦ (x, a), u ↦ (χ_a y∘u, 1_a).
LaxFunctor embedding_J(GrothPtr G, ObjId a);

// For a locally discrete base with initial object 0: K: ∫D → F_0 and the
// pseudo transformations ε: JK ⇒ 1 and η: 1 ⇒ KJ.
struct InitialCollapse {
  ObjId initial = -1;
  FunPtr J, K, JK, KJ, id_total, id_fiber;
  TransPtr eps, eta;
};
InitialCollapse initial_collapse(GrothPtr G);

// Covariant oplax bidiagram over B: f_*: F_a → F_b, σ_*: p_* ⇒ p′_*,
// χ_{p′,p}: (p′∘p)_* ⇒ p′_*p_*, χ_b: (1_b)_* ⇒ 1. It is stored as its lax
// dual over B^coop with fibers F_a^coop; the dual has the same cell
// identifiers and its constraint cells are the same 2-cells read in the
// reversed bicategories.
struct OplaxBidiagram {
  std::string name;
  BicatPtr base;
  BidiagramPtr dual;
};

Report check_coherence_oplax(const OplaxBidiagram& G, CoherenceOptions opt = {});

// ∫G = (∫ dual)^coop. A 1-cell (u, f): (x,a) → (y,b) has u: f_*x → y in F_b;
// a 2-cell (φ, α): (u,f) ⇒ (v,g) has φ: u ⇒ v∘α_*x.
struct OplaxGrothendieck {
  struct One {
    OneId u, f;
    ObjId x;
  };
  OplaxBidiagram G;
  GrothPtr dual;
  BicatPtr total;
  Grothendieck::Obj obj_prov(ObjId c) const { return dual->objs[c]; }
  One one_prov(OneId k) const;
  Grothendieck::Two two_prov(TwoId c) const { return dual->twos[c]; }
  ObjId obj(ObjId x, ObjId a) const { return dual->obj(x, a); }
  OneId one(OneId u, OneId f, ObjId x) const { return dual->one(u, f, x); }
};
using OplaxGrothPtr = std::shared_ptr<const OplaxGrothendieck>;

OplaxGrothPtr grothendieck_oplax(const OplaxBidiagram& G, bool check = true);
LaxFunctor projection_oplax(const OplaxGrothendieck& G);

}  // namespace bicat
