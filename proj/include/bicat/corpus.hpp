#pragma once

#include <map>
#include <tuple>

#include "bicat/morphisms.hpp"

namespace bicat {

// A finite monoid by multiplication table; mul[x][y] = x·y.
struct Monoid {
  std::string name;
  std::vector<std::vector<int>> mul;
  int unit = 0;
  std::vector<std::string> labels;
  int size() const { return int(mul.size()); }
};

Monoid cyclic_group(int n);
Monoid symmetric_group3();
Monoid trivial_group();
Monoid idempotent_monoid();  // {1, e} with e·e = e
bool is_group(const Monoid& M);
bool is_commutative(const Monoid& M);

// A finite monoidal category with explicit constraint morphisms.
struct MonoidalCategory {
  std::string name;
  Category C;
  Table tensor_obj;         // key2(x, y) -> x⊗y
  Table tensor_mor;         // key2(m, n) -> m⊗n
  int unit = 0;
  Table assoc;              // key3(x, y, z) -> (x⊗y)⊗z → x⊗(y⊗z)
  std::vector<int> lunit;   // I⊗x → x
  std::vector<int> runit;   // x⊗I → x
};

MonoidalCategory discrete_monoidal(const Monoid& M);
// Objects ℤ/2, each with automorphism group ℤ/2, associator (−1)^{xyz}.
MonoidalCategory z2_twisted();

Bicategory suspension(const MonoidalCategory& M);
Bicategory suspension(const Monoid& M);
// One object, one 1-cell, 2-cells the elements of a commutative monoid.
Bicategory double_suspension(const Monoid& M);
Bicategory poset(int n);      // [n] = {0 < 1 < ... < n}
Bicategory indiscrete(int n);
// [n] with each hom-set {i ≤ j} replaced by the group ℤ/2 of 2-cells
// (signs); strict, sign-additive composition.
Bicategory signed_poset(int n);

// Strict functor ΣG → ΣH from a map of monoids.
LaxFunctor monoid_hom(BicatPtr SG, BicatPtr SH, const std::vector<int>& phi, std::string name = {});
// Strict functor [m] → [n] from a monotone map.
LaxFunctor poset_map(BicatPtr Pm, BicatPtr Pn, const std::vector<int>& map, std::string name = {});
// Normal lax functor [n] → B from 1-cells z_{ij} (i ≤ j) and 2-cells
// ẑ_{ijk}: z_{jk}∘z_{ij} ⇒ z_{ik}; ẑ_i: 1 ⇒ z_{ii}.
struct SimplexData {
  std::vector<ObjId> vertex;
  std::map<std::pair<int, int>, OneId> edge;
  std::map<std::tuple<int, int, int>, TwoId> face;
  std::vector<TwoId> unit;
};
LaxFunctor simplex_functor(BicatPtr Pn, BicatPtr B, const SimplexData& z, std::string name = {});

struct NamedBicat {
  std::string name;
  BicatPtr bicat;
};
struct NamedFunctor {
  std::string name;
  FunPtr functor;
};

// The example corpus used by tests, the acceptance binary and `bicat gen`.
std::vector<NamedBicat> corpus_bicategories();
std::vector<NamedFunctor> corpus_functors();
BicatPtr corpus_bicategory(const std::string& name);  // throws Error when unknown

}  // namespace bicat
