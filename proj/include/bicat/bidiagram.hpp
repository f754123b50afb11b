#pragma once

#include <map>

#include "bicat/morphisms.hpp"

namespace bicat {

// Contravariant lax bidiagram over a base bicategory.
//   pull[f]      f*: F_b -> F_a              for f: a -> b
//   pull2[α]     α*: f* ⇒ g*                 for α: f ⇒ g
//   chi[g,f]     χ_{g,f}: f*g* ⇒ (g∘f)*
//   chi_unit[b]  χ_b: 1 ⇒ 1_b*
//   xi[β,α]      ξ_{β,α}: β*∘α* ⇛ (β·α)*
//   xi_id[f]     ξ_f: 1_{f*} ⇛ (1_f)*
//   chi2[β,α]    χ_{β,α}: (β∘α)*∘χ_{g,f} ⇛ χ_{k,h}∘(α*β*)
//   omega[h,g,f] ω: a*∘(χ_{hg,f}∘f*χ_{h,g}) ⇛ χ_{h,gf}∘χ_{g,f}h*
//   gamma[f]     γ_f: l*∘(χ_{1,f}∘f*χ_b) ⇛ 1
//   delta[f]     δ_f: r*∘(χ_{f,1}∘χ_a f*) ⇛ 1
struct LaxBidiagram {
  std::string name;
  BicatPtr base;
  std::vector<BicatPtr> fiber;
  std::vector<FunPtr> pull;
  std::vector<TransPtr> pull2;
  std::unordered_map<std::uint64_t, TransPtr> chi;
  std::vector<TransPtr> chi_unit;
  std::unordered_map<std::uint64_t, ModPtr> xi;
  std::vector<ModPtr> xi_id;
  std::unordered_map<std::uint64_t, ModPtr> chi2;
  std::unordered_map<std::uint64_t, ModPtr> omega;
  std::vector<ModPtr> gamma, delta;

  const Bicategory& B() const { return *base; }
  const Bicategory& fib(ObjId a) const { return *fiber[a]; }
  const LaxFunctor& f_(OneId f) const { return *pull[f]; }
  const Transformation& chi_(OneId g, OneId f) const;
  const Modification& xi_(TwoId b, TwoId a) const;
  const Modification& chi2_(TwoId b, TwoId a) const;
  const Modification& omega_(OneId h, OneId g, OneId f) const;

  // Cached composite f*∘g* and fiber identity functors.
  FunPtr pull_comp(OneId g, OneId f) const;
  FunPtr ident(ObjId b) const;

  bool is_pseudo() const;

 private:
  mutable std::map<std::pair<OneId, OneId>, FunPtr> comp_cache_;
  mutable std::map<ObjId, FunPtr> ident_cache_;
};
using BidiagramPtr = std::shared_ptr<const LaxBidiagram>;

// Expected endpoints of the D-data, computed from the bidiagram itself.
namespace expected {
TransPtr alpha_beta(const LaxBidiagram& D, TwoId beta, TwoId alpha);  // α*β*: f*g* ⇒ h*k*
TransPtr xi_src(const LaxBidiagram& D, TwoId beta, TwoId alpha);
TransPtr xi_id_src(const LaxBidiagram& D, OneId f);
TransPtr chi2_src(const LaxBidiagram& D, TwoId beta, TwoId alpha);
TransPtr chi2_tgt(const LaxBidiagram& D, TwoId beta, TwoId alpha);
TransPtr omega_src(const LaxBidiagram& D, OneId h, OneId g, OneId f);
TransPtr omega_tgt(const LaxBidiagram& D, OneId h, OneId g, OneId f);
TransPtr gamma_src(const LaxBidiagram& D, OneId f);
TransPtr delta_src(const LaxBidiagram& D, OneId f);
TransPtr ident_trans(const LaxBidiagram& D, OneId f);
}  // namespace expected

// Validates every D-datum and its endpoints; does not check C1–C8.
Report check_components(const LaxBidiagram& D);

struct CoherenceOptions {
  bool components = true;   // validate D-data first, throwing ComponentInvalid
  bool c5_alternative = false;  // read the unlabeled iso in C5 through the (4)-modification
};
Report check_coherence(const LaxBidiagram& D, CoherenceOptions opt = {});

// Component-level cells of a bidiagram, in the fiber over the source object.
class BidiagramCells {
 public:
  explicit BidiagramCells(const LaxBidiagram& D) : D(D) {}
  const LaxBidiagram& D;

  PathP comp(const Transformation& t, ObjId x) const;    // atom t(x)
  PathP pull(OneId f, PathP p) const;                    // f*(p)
  PathP star(TwoId alpha, ObjId x) const;                // α*x
  PathP chi(OneId g, OneId f, ObjId x) const;            // χ_{g,f}x
  PathP chi_u(ObjId b, ObjId x) const;                   // χ_b x
  Cell xi(TwoId beta, TwoId alpha, ObjId x) const;
  Cell xi_id(OneId f, ObjId x) const;
  Cell chi2(TwoId beta, TwoId alpha, ObjId x) const;
  Cell omega(OneId h, OneId g, OneId f, ObjId x) const;
  Cell gamma(OneId f, ObjId x) const;
  Cell delta(OneId f, ObjId x) const;
  // Naturality cells at a fiber 1-cell path u (atomic value).
  Cell chi_nat(OneId g, OneId f, PathP u) const;   // χ(z′)∘f*g*u ⇒ (gf)*u∘χ(z)
  Cell star_nat(TwoId alpha, PathP u) const;       // α*(y′)∘f*u ⇒ g*u∘α*(y)
  Cell unit_nat(ObjId b, PathP u) const;           // χ_b(y′)∘u ⇒ 1_b*u∘χ_b(y)
  // Derived cells.
  Cell xi_chain(const std::vector<TwoId>& lhs, const std::vector<TwoId>& rhs, OneId f, ObjId x) const;
  Cell chi_alpha_f(TwoId alpha, OneId f, ObjId x) const;  // (α∘1_f)*∘χ_{g,f} ⇒ χ_{g′,f}∘f*α*
  Cell chi_h_alpha(OneId h, TwoId alpha, ObjId x) const;  // (1_h∘α)*∘χ_{h,g} ⇒ χ_{h,g′}∘α*h*
  // Pasting starting from a composite of paths, applying a xi chain at pos.
  void xi_chain_at(Pasting& p, int pos, const std::vector<TwoId>& lhs, const std::vector<TwoId>& rhs, OneId f,
                   ObjId x) const;
};

// The ξ-chain modification between two composites of α*'s. Lists run in
// order of application (first element applied first). Empty lists stand
// for the identity 2-cell of f.
ModPtr derived_xi(const LaxBidiagram& D, const std::vector<TwoId>& lhs, const std::vector<TwoId>& rhs, OneId f);

enum class WhiskerSide { Left, Right };
// Right: χ_{α,f} for α: g ⇒ g′ and f.  Left: χ_{h,α} for h and α: g ⇒ g′.
ModPtr derived_chi_whisker(const LaxBidiagram& D, WhiskerSide side, TwoId alpha, OneId other);

Report check_gdo(const LaxBidiagram& D);

// The hom-category B(x,b) as a locally discrete bicategory, with maps from
// global 1-cells and 2-cells to local objects and 1-cells.
struct HomFiber {
  BicatPtr bic;
  std::unordered_map<OneId, ObjId> obj;  // global 1-cell -> local object
  std::unordered_map<TwoId, OneId> mor;  // global 2-cell -> local 1-cell
  std::vector<OneId> obj_global;
};
HomFiber hom_fiber(const Bicategory& B, ObjId x, ObjId b);

BidiagramPtr precompose(const LaxBidiagram& D, FunPtr F);
BidiagramPtr hom_bidiagram(BicatPtr B, ObjId b);
BidiagramPtr constant_bidiagram(BicatPtr B);
// Every fiber X, every f* the identity and all other data identities.
// X must satisfy 1∘1 = 1 and l_1 = 1.
BidiagramPtr constant_bidiagram(BicatPtr B, BicatPtr X);
BicatPtr terminal_bicategory();

// Builds a modification between two transformations with components given
// by a per-object function.
template <class Fn>
ModPtr make_modification(std::string name, TransPtr src, TransPtr tgt, Fn component) {
  Modification m;
  m.name = std::move(name);
  m.alpha = src;
  m.beta = tgt;
  for (ObjId x = 0; x < src->F->src->n_obj(); ++x) m.comp.push_back(component(x));
  return std::make_shared<const Modification>(std::move(m));
}

}  // namespace bicat
