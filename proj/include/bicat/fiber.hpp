#pragma once

#include "bicat/corpus.hpp"
#include "bicat/grothendieck.hpp"

namespace bicat {

// The homotopy fiber F↓b of a lax functor F: A → B at b, built from
// explicit tables.
//   objects  (f, a)          f: Fa → b
//   1-cells  (β, u): (f,a) → (f′,a′)    u: a → a′, β: f ⇒ f′∘Fu
//   2-cells  α: (β,u) ⇒ (β′,u′)         α: u ⇒ u′ with (1∘Fα)·β = β′
// Composition: (γ,v)∘(β,u) = (γ⊚β, v∘u) with
//   γ⊚β = (1_{f″}∘F̂_{v,u})·a_{f″,Fv,Fu}·(γ∘1_{Fu})·β.
// Identity: ((1_f∘F̂_a)·r⁻¹_f, 1_a). Vertical and horizontal composition of
// 2-cells and the constraints a, l, r are those of A.
struct HomotopyFiber {
  struct Obj {
    OneId f;
    ObjId a;
  };
  struct One {
    TwoId beta;
    OneId u;
    OneId f2;  // target f′; β: f ⇒ f′∘Fu
  };
  struct Two {
    TwoId alpha;
    OneId src;
  };

  FunPtr F;
  ObjId b = -1;
  BicatPtr bic;
  std::vector<Obj> objs;
  std::vector<One> ones;
  std::vector<Two> twos;

  const Bicategory& A() const { return *F->src; }
  const Bicategory& B() const { return *F->tgt; }

  // Throw NotComposable when the cell does not exist.
  ObjId obj(OneId f, ObjId a) const;
  OneId one(TwoId beta, OneId u, OneId f2) const;
  TwoId two(TwoId alpha, OneId src) const;
  // two(alpha, src), checking that its target is tgt; throws IncoherentInput.
  TwoId two(TwoId alpha, OneId src, OneId tgt) const;

  // The 2-cell (1_{f′}∘Fα)·β that α carries β to.
  TwoId carry(TwoId alpha, TwoId beta, OneId f2) const;

  std::unordered_map<std::uint64_t, ObjId> obj_index;
  std::unordered_map<std::uint64_t, OneId> one_index;
  std::unordered_map<std::uint64_t, TwoId> two_index;
};
using FiberPtr = std::shared_ptr<const HomotopyFiber>;

FiberPtr homotopy_fiber(FunPtr F, ObjId b);
// B↓b = 1_B↓b.
FiberPtr comma(BicatPtr B, ObjId b);

// Re-checks the admission condition (1∘Fα)·β = β′ on every stored 2-cell
// and that a, l, r and 2-cell composition agree with those of A.
Report check_fiber_tables(const HomotopyFiber& H);

// Both constructions of F↓b: the explicit tables and ∫(B(−,b)∘F), with a
// strict isomorphism between them.
struct FiberRoutes {
  FiberPtr direct;
  GrothPtr generic;
  FunPtr iso;     // direct → generic
  Report report;  // check_isomorphism of iso
};
FiberRoutes fiber_routes(FiberPtr H);

// Strict projection F↓b → A, (β,u) ↦ u.
LaxFunctor fiber_projection(FiberPtr H);

// p_*: F↓b → F↓b′, (f,a) ↦ (p∘f, a), (β,u) ↦ (a⁻¹·(1_p∘β), u), α ↦ α.
LaxFunctor pushforward(FiberPtr src, FiberPtr tgt, OneId p);

// F̄_b: F↓b → B↓b, (f,a) ↦ (f,Fa), (β,u) ↦ (β,Fu), α ↦ Fα, constraints
// F̂. The target must be comma(B,b) for the same B.
LaxFunctor fiber_comparison(FiberPtr H, FiberPtr comma_b);

// The covariant oplax bidiagram b ↦ F↓b over B, kept both in its own
// orientation and as the lax dual used by the Grothendieck construction.
//   push2[σ]   σ_*: p_* ⇒ p′_*, component (σ⊚f, 1_a)
//   chi[p′,p]  χ_{p′,p}: (p′∘p)_* ⇒ p′_*p_*, component (å, 1_a)
//   chi_unit   χ_b: (1_b)_* ⇒ 1, component ((1∘F̂_a)·r⁻¹·l, 1_a)
// All naturality cells and modification components have an A-part that is
// the canonical isomorphism between words in u and identities.
struct FiberBidiagram {
  FunPtr F;
  std::vector<FiberPtr> fiber;
  std::vector<FunPtr> push;
  std::vector<TransPtr> push2;
  std::unordered_map<std::uint64_t, TransPtr> chi;
  std::vector<TransPtr> chi_unit;
  OplaxBidiagram O;
};
using FiberBidiagramPtr = std::shared_ptr<const FiberBidiagram>;

FiberBidiagramPtr fiber_bidiagram(FunPtr F);

// ∫_B F↓ with cell lookups in (f,a,b) coordinates.
//   1-cells (β,u,p): (f,a,b) → (f′,a′,b′), β: p∘f ⇒ f′∘Fu
//   2-cells (α,σ): (β,u,p) ⇒ (β′,u′,p′), σ: p ⇒ p′, α: u ⇒ u′∘1_a
struct TotalFiber {
  FiberBidiagramPtr FB;
  OplaxGrothPtr G;

  const Bicategory& total() const { return *G->total; }
  ObjId obj(OneId f, ObjId a, ObjId b) const;
  // β: p∘f ⇒ f′∘Fu, from src = (f,a,b) to tgt = (f′,a′,b′).
  OneId one(TwoId beta, OneId u, OneId p, ObjId src, ObjId tgt) const;
  // (α,σ): X ⇒ Y.
  TwoId two(TwoId alpha, TwoId sigma, OneId X, OneId Y) const;

  struct Obj {
    OneId f;
    ObjId a, b;
  };
  struct One {
    TwoId beta;
    OneId u, p;
  };
  struct Two {
    TwoId alpha, sigma;
  };
  Obj obj_of(ObjId c) const;
  One one_of(OneId k) const;
  Two two_of(TwoId c) const;
};
using TotalPtr = std::shared_ptr<const TotalFiber>;

TotalPtr total_fiber(FiberBidiagramPtr FB, bool check = true);

// Q: ∫_B F↓ → A, L: A → ∫_B F↓ and ι: LQ ⇒ 1 (oplax).
struct TotalQL {
  TotalPtr T;
  FunPtr Q, L, LQ, id_total;
  TransPtr iota;
};
TotalQL total_Q_L(TotalPtr T);

// F̄: ∫_B F↓ → ∫_B B↓.
LaxFunctor total_comparison(TotalPtr TF, TotalPtr TB);

// The embedding J: F↓b → ∫_B F↓.
LaxFunctor total_embedding(TotalPtr T, ObjId b);

// The named equalities of the two diagrams relating F↓b, B↓b, ∫_B F↓,
// ∫_B B↓, A, B and [0] at b; one violation per failing equality, with the
// first difference as detail.
Report check_fiber_diagrams(TotalPtr TF, TotalPtr TB, ObjId b);

// The constant functor X → B at b through [0]: 1-cells to 1_b, constraint l_{1_b}.
LaxFunctor constant_functor(BicatPtr X, BicatPtr B, ObjId b);

// Ct: B↓b → [0] → B↓b at (1_b, b), and the oplax 1 ⇒ Ct with component
// (l⁻¹_f, f) and naturality β·l.
struct CommaContraction {
  FiberPtr comma;
  FunPtr id, Ct;
  TransPtr contraction;
};
CommaContraction comma_contraction(BicatPtr B, ObjId b);

// K_F = F↓⋆ for a lax functor of suspensions.
FiberPtr monoidal_fiber(FunPtr F);
// z′⊗−: K_F → K_F, the pushforward along the 1-cell z′.
LaxFunctor tensor_endofunctor(FiberPtr K, OneId z);

// A right pseudo action of a monoidal category on a category N.
struct ActionCategory {
  std::string name;
  MonoidalCategory M;
  Category N;
  Table act_obj;               // key2(a, x) -> a⊗x
  Table act_mor;               // key2(f, m) -> f⊗m
  Table chi;                   // key3(a, x, y) -> (a⊗x)⊗y → a⊗(x⊗y)
  std::vector<int> chi_unit;   // a -> a⊗I
};

// 𝓜 acting on itself by x ↦ a⊗x, with χ the associator and χ_I = r⁻¹.
ActionCategory right_multiplication(const MonoidalCategory& M);
// The trivial monoid acting trivially on N.
ActionCategory trivial_action(const Category& N);

// The pseudo bidiagram over Σ𝓜 with fiber N, x* = −⊗x, m* = 1⊗m. Throws
// IncoherentAction when a required square does not commute.
BidiagramPtr action_bidiagram(const ActionCategory& N);

// ∫_{Σ𝓜} N with its cells listed directly and matched against the
// Grothendieck construction.
//   objects  a ∈ Ob N
//   1-cells  (f, x): a → b      f: a → b⊗x
//   2-cells  m: (f,x) ⇒ (g,y)   m: x → y with (1_b⊗m)∘f = g
struct ActionGrothendieck {
  struct One {
    int f, x, b;
  };
  struct Two {
    int m;
    int src;  // index into ones
  };
  GrothPtr G;
  std::vector<One> ones;
  std::vector<Two> twos;
  std::vector<OneId> one_map;  // direct index -> 1-cell of G->total
  std::vector<TwoId> two_map;
  Report report;  // bijectivity of the maps
};
ActionGrothendieck action_grothendieck(const ActionCategory& N);

}  // namespace bicat
