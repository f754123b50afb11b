#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bicat {

using ObjId = int;
using OneId = int;
using TwoId = int;

// Errors. `kind` is the stable machine-readable tag.
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg) : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

#define BICAT_ERROR(Name)                                                \
  struct Name : Error {                                                  \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}         \
  }

BICAT_ERROR(MalformedTable);
BICAT_ERROR(IllTypedTerm);
BICAT_ERROR(SourceTargetMismatch);
BICAT_ERROR(KindMismatch);
BICAT_ERROR(ComponentInvalid);
BICAT_ERROR(NotParallel);
BICAT_ERROR(NotComposable);
BICAT_ERROR(IncoherentInput);
BICAT_ERROR(SquareMismatch);
BICAT_ERROR(NoInitialObject);
BICAT_ERROR(TruncationTooLarge);
BICAT_ERROR(OverflowGuard);
BICAT_ERROR(IncoherentAction);

#undef BICAT_ERROR

struct Violation {
  std::string axiom;
  std::vector<int> cells;
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string axiom, std::vector<int> cells, std::string detail = {}) {
    violations.push_back({std::move(axiom), std::move(cells), std::move(detail)});
  }
  void merge(const Report& other, const std::string& prefix = {});
  std::size_t count(const std::string& axiom) const;
  std::string str(std::size_t limit = 20) const;
};

inline std::uint64_t key2(int a, int b) {
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
}
inline std::uint64_t key3(int a, int b, int c) {
  return (std::uint64_t(std::uint32_t(a)) << 42) | (std::uint64_t(std::uint32_t(b)) << 21) | std::uint32_t(c);
}

using Table = std::unordered_map<std::uint64_t, int>;

// A finite bicategory given by explicit cell and composition tables.
// Build with the add_/set_ methods, then call finalize() before use.
class Bicategory {
 public:
  std::string name;
  std::vector<std::string> obj_label;
  std::vector<std::string> one_label;  // may be empty
  std::vector<std::string> two_label;  // may be empty
  std::vector<std::pair<ObjId, ObjId>> one;  // (src, tgt)
  std::vector<std::pair<OneId, OneId>> two;  // (src, tgt)
  std::vector<OneId> id1;
  std::vector<TwoId> id2;
  std::vector<TwoId> lunit, runit;
  Table vcomp, hcomp1, hcomp2, assoc;

  ObjId add_obj(std::string label = {});
  OneId add_one(ObjId s, ObjId t, std::string label = {});
  TwoId add_two(OneId s, OneId t, std::string label = {});
  void set_vcomp(TwoId b, TwoId a, TwoId c) { vcomp[key2(b, a)] = c; }
  void set_hcomp1(OneId g, OneId f, OneId h) { hcomp1[key2(g, f)] = h; }
  void set_hcomp2(TwoId b, TwoId a, TwoId c) { hcomp2[key2(b, a)] = c; }
  void set_assoc(OneId h, OneId g, OneId f, TwoId c) { assoc[key3(h, g, f)] = c; }

  // Builds hom indices and the inverse cache. Throws MalformedTable on
  // typing violations or missing table entries.
  void finalize();
  bool finalized() const { return finalized_; }

  int n_obj() const { return int(obj_label.size()); }
  int n_one() const { return int(one.size()); }
  int n_two() const { return int(two.size()); }

  ObjId src(OneId f) const { return one[f].first; }
  ObjId tgt(OneId f) const { return one[f].second; }
  OneId src2(TwoId a) const { return two[a].first; }
  OneId tgt2(TwoId a) const { return two[a].second; }

  // Checked composition; throws NotComposable.
  OneId comp(OneId g, OneId f) const;
  TwoId vc(TwoId b, TwoId a) const;
  TwoId hc(TwoId b, TwoId a) const;
  TwoId a(OneId h, OneId g, OneId f) const;
  TwoId l(OneId f) const { return lunit[f]; }
  TwoId r(OneId f) const { return runit[f]; }
  TwoId ainv(OneId h, OneId g, OneId f) const { return inv(a(h, g, f)); }
  TwoId whisker_l(OneId g, TwoId a) const { return hc(id2[g], a); }  // 1_g∘α
  TwoId whisker_r(TwoId b, OneId f) const { return hc(b, id2[f]); }  // β∘1_f

  // Unchecked lookups; -1 when absent.
  int find_comp(OneId g, OneId f) const;
  int find_vc(TwoId b, TwoId a) const;
  int find_hc(TwoId b, TwoId a) const;

  bool is_iso(TwoId c) const { return inverse_[c] >= 0; }
  TwoId inv(TwoId c) const;
  bool is_identity(TwoId c) const { return id2[two[c].first] == c; }

  const std::vector<OneId>& hom(ObjId a, ObjId b) const;
  const std::vector<TwoId>& hom2(OneId f, OneId g) const;
  const std::vector<OneId>& ones_from(ObjId x) const { return from1_[x]; }
  const std::vector<TwoId>& twos_from(OneId f) const { return from2_[f]; }

  std::string obj_name(ObjId x) const;
  std::string one_name(OneId f) const;
  std::string two_name(TwoId a) const;

 private:
  bool finalized_ = false;
  std::unordered_map<std::uint64_t, std::vector<OneId>> homs1_;
  std::unordered_map<std::uint64_t, std::vector<TwoId>> homs2_;
  std::vector<TwoId> inverse_;
  std::vector<std::vector<OneId>> from1_;
  std::vector<std::vector<TwoId>> from2_;
  static const std::vector<int> empty_;
};

using BicatPtr = std::shared_ptr<const Bicategory>;

// Pasting terms.
struct OneTerm;
struct TwoTerm;
using OneT = std::shared_ptr<const OneTerm>;
using TwoT = std::shared_ptr<const TwoTerm>;

struct OneTerm {
  enum Kind { Gen, Id1, HComp } kind;
  int id = -1;
  OneT l, r;  // HComp(l, r) = l∘r
};

struct TwoTerm {
  enum Kind { Gen, Id2, VComp, HComp, Assoc, AssocInv, LUnit, LUnitInv, RUnit, RUnitInv, Inv } kind;
  int id = -1;
  TwoT l, r;        // VComp(l, r) = l·r, HComp(l, r) = l∘r, Inv(l)
  OneT h, g, f;     // Id2(f), Assoc(h,g,f), unitors on f
};

namespace term {
OneT gen(OneId f);
OneT id1(ObjId x);
OneT comp(OneT g, OneT f);
TwoT two(TwoId a);
TwoT id2(OneT f);
TwoT id2(OneId f);
TwoT vc(TwoT b, TwoT a);
TwoT hc(TwoT b, TwoT a);
TwoT assoc(OneT h, OneT g, OneT f);
TwoT assoc_inv(OneT h, OneT g, OneT f);
TwoT lunit(OneT f);
TwoT lunit_inv(OneT f);
TwoT runit(OneT f);
TwoT runit_inv(OneT f);
TwoT inv(TwoT a);
std::string show(const OneT& t);
std::string show(const TwoT& t);
}  // namespace term

OneId eval_one(const Bicategory& B, const OneT& t);
TwoId eval_two(const Bicategory& B, const TwoT& t);
bool is_iso_two(const Bicategory& B, TwoId c);

struct ValidateOptions {
  bool derived = true;  // also test the two derived triangles and r_1 = l_1
};

Report validate_bicategory(const Bicategory& B, ValidateOptions opt = {});

// Duals; same identifiers, reindexed tables.
Bicategory op(const Bicategory& B);
Bicategory co(const Bicategory& B);
Bicategory coop(const Bicategory& B);

// Locally discrete bicategory on a finite category given by morphisms and
// a composition table; identity morphisms listed per object.
struct Category {
  std::vector<std::string> obj_label;
  std::vector<std::pair<int, int>> mor;  // (src, tgt)
  std::vector<int> id;
  Table comp;  // key2(g,f) -> g∘f
  std::vector<std::string> mor_label;
};
Bicategory locally_discrete(const Category& C, std::string name = {});

// Exact structural equality of all tables.
bool same_tables(const Bicategory& A, const Bicategory& B);

}  // namespace bicat
