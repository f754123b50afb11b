#include "bicat/corpus.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace bicat {

Monoid cyclic_group(int n) {
  Monoid M;
  M.name = "Z" + std::to_string(n);
  M.mul.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x) {
    M.labels.push_back(std::to_string(x));
    for (int y = 0; y < n; ++y) M.mul[x][y] = (x + y) % n;
  }
  return M;
}

Monoid symmetric_group3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  Monoid M;
  M.name = "S3";
  int n = int(perms.size());
  M.mul.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x) {
    M.labels.push_back(std::to_string(perms[x][0]) + std::to_string(perms[x][1]) + std::to_string(perms[x][2]));
    for (int y = 0; y < n; ++y) {
      std::array<int, 3> c{};  // (x·y)(i) = x(y(i))
      for (int i = 0; i < 3; ++i) c[i] = perms[x][perms[y][i]];
      M.mul[x][y] = int(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return M;
}

Monoid trivial_group() {
  Monoid M;
  M.name = "1";
  M.mul = {{0}};
  M.labels = {"1"};
  return M;
}

Monoid idempotent_monoid() {
  Monoid M;
  M.name = "Idem";
  M.mul = {{0, 1}, {1, 1}};
  M.labels = {"1", "e"};
  return M;
}

bool is_group(const Monoid& M) {
  for (int x = 0; x < M.size(); ++x) {
    bool found = false;
    for (int y = 0; y < M.size(); ++y)
      if (M.mul[x][y] == M.unit && M.mul[y][x] == M.unit) found = true;
    if (!found) return false;
  }
  return true;
}

bool is_commutative(const Monoid& M) {
  for (int x = 0; x < M.size(); ++x)
    for (int y = 0; y < M.size(); ++y)
      if (M.mul[x][y] != M.mul[y][x]) return false;
  return true;
}

MonoidalCategory discrete_monoidal(const Monoid& M) {
  MonoidalCategory T;
  T.name = M.name;
  int n = M.size();
  for (int x = 0; x < n; ++x) {
    T.C.obj_label.push_back(M.labels.empty() ? std::to_string(x) : M.labels[x]);
    T.C.mor.push_back({x, x});
    T.C.mor_label.push_back("1_" + T.C.obj_label.back());
    T.C.id.push_back(x);
    T.C.comp[key2(x, x)] = x;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      T.tensor_obj[key2(x, y)] = M.mul[x][y];
      T.tensor_mor[key2(x, y)] = M.mul[x][y];
      for (int z = 0; z < n; ++z) T.assoc[key3(x, y, z)] = M.mul[M.mul[x][y]][z];
    }
  T.unit = M.unit;
  for (int x = 0; x < n; ++x) {
    T.lunit.push_back(x);
    T.runit.push_back(x);
  }
  return T;
}

MonoidalCategory z2_twisted() {
  MonoidalCategory T;
  T.name = "Z2w";
  // morphism (x, s) has id 2x + s: the automorphism (−1)^s of object x
  auto mor = [](int x, int s) { return 2 * x + s; };
  for (int x = 0; x < 2; ++x) T.C.obj_label.push_back(std::to_string(x));
  for (int x = 0; x < 2; ++x)
    for (int s = 0; s < 2; ++s) {
      T.C.mor.push_back({x, x});
      T.C.mor_label.push_back(std::string(s ? "-" : "+") + std::to_string(x));
    }
  T.C.id = {mor(0, 0), mor(1, 0)};
  for (int x = 0; x < 2; ++x)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) T.C.comp[key2(mor(x, s), mor(x, t))] = mor(x, (s + t) % 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      T.tensor_obj[key2(x, y)] = (x + y) % 2;
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) T.tensor_mor[key2(mor(x, s), mor(y, t))] = mor((x + y) % 2, (s + t) % 2);
      for (int z = 0; z < 2; ++z) T.assoc[key3(x, y, z)] = mor((x + y + z) % 2, x * y * z);
    }
  T.unit = 0;
  T.lunit = {mor(0, 0), mor(1, 0)};
  T.runit = {mor(0, 0), mor(1, 0)};
  return T;
}

Bicategory suspension(const MonoidalCategory& M) {
  Bicategory B;
  B.name = "S" + M.name;
  B.add_obj("*");
  for (std::size_t x = 0; x < M.C.obj_label.size(); ++x) B.add_one(0, 0, M.C.obj_label[x]);
  for (std::size_t m = 0; m < M.C.mor.size(); ++m)
    B.add_two(M.C.mor[m].first, M.C.mor[m].second, m < M.C.mor_label.size() ? M.C.mor_label[m] : std::string{});
  B.id1[0] = M.unit;
  for (std::size_t x = 0; x < M.C.id.size(); ++x) B.id2[x] = M.C.id[x];
  for (auto [k, v] : M.C.comp) B.vcomp[k] = v;
  for (auto [k, v] : M.tensor_obj) B.hcomp1[k] = v;
  for (auto [k, v] : M.tensor_mor) B.hcomp2[k] = v;
  for (auto [k, v] : M.assoc) B.assoc[k] = v;
  B.lunit = M.lunit;
  B.runit = M.runit;
  B.finalize();
  return B;
}

Bicategory suspension(const Monoid& M) { return suspension(discrete_monoidal(M)); }

Bicategory double_suspension(const Monoid& M) {
  if (!is_commutative(M)) throw MalformedTable("double suspension needs a commutative monoid");
  Bicategory B;
  B.name = "SS" + M.name;
  B.add_obj("*");
  OneId u = B.add_one(0, 0, "u");
  for (int x = 0; x < M.size(); ++x) B.add_two(u, u, M.labels.empty() ? std::to_string(x) : M.labels[x]);
  B.id1[0] = u;
  B.id2[u] = M.unit;
  B.set_hcomp1(u, u, u);
  for (int x = 0; x < M.size(); ++x)
    for (int y = 0; y < M.size(); ++y) {
      B.set_vcomp(x, y, M.mul[x][y]);
      B.set_hcomp2(x, y, M.mul[x][y]);
    }
  B.set_assoc(u, u, u, M.unit);
  B.lunit[u] = M.unit;
  B.runit[u] = M.unit;
  B.finalize();
  return B;
}

namespace {

Bicategory from_category(const Category& C, std::string name) {
  Bicategory B = locally_discrete(C, std::move(name));
  if (!B.finalized()) B.finalize();
  return B;
}

}  // namespace

Bicategory poset(int n) {
  Category C;
  std::map<std::pair<int, int>, int> id;
  for (int i = 0; i <= n; ++i) C.obj_label.push_back(std::to_string(i));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      id[{i, j}] = int(C.mor.size());
      C.mor.push_back({i, j});
      C.mor_label.push_back(std::to_string(i) + "<=" + std::to_string(j));
    }
  for (int i = 0; i <= n; ++i) C.id.push_back(id[{i, i}]);
  for (auto [ij, f] : id)
    for (int k = ij.second; k <= n; ++k) C.comp[key2(id[{ij.second, k}], f)] = id[{ij.first, k}];
  return from_category(C, "[" + std::to_string(n) + "]");
}

Bicategory indiscrete(int n) {
  Category C;
  for (int i = 0; i < n; ++i) C.obj_label.push_back(std::to_string(i));
  auto id = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      C.mor.push_back({i, j});
      C.mor_label.push_back(std::to_string(i) + "->" + std::to_string(j));
    }
  for (int i = 0; i < n; ++i) C.id.push_back(id(i, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) C.comp[key2(id(j, k), id(i, j))] = id(i, k);
  return from_category(C, "I" + std::to_string(n));
}

Bicategory signed_poset(int n) {
  Bicategory B;
  B.name = "[" + std::to_string(n) + "]+-";
  for (int i = 0; i <= n; ++i) B.add_obj(std::to_string(i));
  std::map<std::pair<int, int>, OneId> e;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) e[{i, j}] = B.add_one(i, j, std::to_string(i) + "<=" + std::to_string(j));
  // 2-cell 2f + s is the sign (−1)^s on 1-cell f
  for (OneId f = 0; f < B.n_one(); ++f)
    for (int s = 0; s < 2; ++s) B.add_two(f, f, std::string(s ? "-" : "+") + B.one_name(f));
  for (OneId f = 0; f < B.n_one(); ++f) {
    B.id2[f] = 2 * f;
    B.lunit[f] = 2 * f;
    B.runit[f] = 2 * f;
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) B.set_vcomp(2 * f + s, 2 * f + t, 2 * f + (s + t) % 2);
  }
  for (int i = 0; i <= n; ++i) B.id1[i] = e[{i, i}];
  for (auto [ij, f] : e)
    for (int k = ij.second; k <= n; ++k) {
      OneId g = e[{ij.second, k}], gf = e[{ij.first, k}];
      B.set_hcomp1(g, f, gf);
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) B.set_hcomp2(2 * g + s, 2 * f + t, 2 * gf + (s + t) % 2);
      for (int l = k; l <= n; ++l) B.set_assoc(e[{k, l}], g, f, 2 * e[{ij.first, l}]);
    }
  B.finalize();
  return B;
}

LaxFunctor monoid_hom(BicatPtr SG, BicatPtr SH, const std::vector<int>& phi, std::string name) {
  const Bicategory &G = *SG, &H = *SH;
  if (int(phi.size()) != G.n_one()) throw SourceTargetMismatch("monoid map has the wrong size");
  LaxFunctor F;
  F.name = name.empty() ? G.name + "->" + H.name : std::move(name);
  F.src = SG;
  F.tgt = SH;
  F.obj = {0};
  F.one = phi;
  for (TwoId c = 0; c < G.n_two(); ++c) {
    if (!G.is_identity(c)) throw SourceTargetMismatch("monoid_hom expects discrete hom-categories");
    F.two.push_back(H.id2[phi[G.src2(c)]]);
  }
  for (OneId g = 0; g < G.n_one(); ++g)
    for (OneId f = 0; f < G.n_one(); ++f) {
      OneId lhs = H.comp(phi[g], phi[f]), rhs = phi[G.comp(g, f)];
      if (lhs != rhs) throw SourceTargetMismatch("map does not preserve multiplication");
      F.comp[key2(g, f)] = H.id2[lhs];
    }
  if (phi[G.id1[0]] != H.id1[0]) throw SourceTargetMismatch("map does not preserve the unit");
  F.unit = {H.id2[H.id1[0]]};
  return F;
}

LaxFunctor poset_map(BicatPtr Pm, BicatPtr Pn, const std::vector<int>& map, std::string name) {
  const Bicategory &A = *Pm, &B = *Pn;
  if (int(map.size()) != A.n_obj()) throw SourceTargetMismatch("poset map has the wrong size");
  LaxFunctor F;
  F.name = name.empty() ? "map" : std::move(name);
  F.src = Pm;
  F.tgt = Pn;
  F.obj = map;
  for (OneId f = 0; f < A.n_one(); ++f) {
    const auto& h = B.hom(map[A.src(f)], map[A.tgt(f)]);
    if (h.empty()) throw SourceTargetMismatch("poset map is not monotone");
    F.one.push_back(h[0]);
  }
  for (TwoId c = 0; c < A.n_two(); ++c) F.two.push_back(B.id2[F.one[A.src2(c)]]);
  for (OneId f = 0; f < A.n_one(); ++f)
    for (OneId g : A.ones_from(A.tgt(f))) F.comp[key2(g, f)] = B.id2[F.one[A.comp(g, f)]];
  for (ObjId x = 0; x < A.n_obj(); ++x) F.unit.push_back(B.id2[B.id1[map[x]]]);
  return F;
}

LaxFunctor simplex_functor(BicatPtr Pn, BicatPtr Bp, const SimplexData& z, std::string name) {
  const Bicategory &P = *Pn, &B = *Bp;
  LaxFunctor F;
  F.name = name.empty() ? "z" : std::move(name);
  F.src = Pn;
  F.tgt = Bp;
  F.obj = z.vertex;
  for (OneId f = 0; f < P.n_one(); ++f) F.one.push_back(z.edge.at({P.src(f), P.tgt(f)}));
  for (TwoId c = 0; c < P.n_two(); ++c) F.two.push_back(B.id2[F.one[P.src2(c)]]);
  for (OneId f = 0; f < P.n_one(); ++f)
    for (OneId g : P.ones_from(P.tgt(f))) F.comp[key2(g, f)] = z.face.at({P.src(f), P.tgt(f), P.tgt(g)});
  F.unit = z.unit;
  return F;
}

// ---------------------------------------------------------------------------

namespace {

BicatPtr share(Bicategory B) { return std::make_shared<const Bicategory>(std::move(B)); }

struct Corpus {
  std::vector<NamedBicat> bicats;
  std::vector<NamedFunctor> functors;
  BicatPtr get(const std::string& n) const {
    for (const auto& b : bicats)
      if (b.name == n) return b.bicat;
    throw Error("UnknownName", "no corpus bicategory named " + n);
  }
};

const Corpus& corpus() {
  static const Corpus C = [] {
    Corpus c;
    auto add = [&](std::string n, Bicategory B) {
      B.name = n;
      c.bicats.push_back({n, share(std::move(B))});
    };
    add("poset1", poset(1));
    add("poset2", poset(2));
    add("indiscrete2", indiscrete(2));
    add("indiscrete3", indiscrete(3));
    add("sigma_trivial", suspension(trivial_group()));
    add("sigma_z2", suspension(cyclic_group(2)));
    add("sigma_z3", suspension(cyclic_group(3)));
    add("sigma_s3", suspension(symmetric_group3()));
    add("sigma_idem", suspension(idempotent_monoid()));
    add("sigma_sigma_idem", double_suspension(idempotent_monoid()));
    add("sigma_z2_twisted", suspension(z2_twisted()));
    add("signed_poset2", signed_poset(2));
    auto fun = [&](std::string n, LaxFunctor F) {
      F.name = n;
      c.functors.push_back({n, std::make_shared<const LaxFunctor>(std::move(F))});
    };
    fun("id_poset2", identity_functor(c.get("poset2")));
    fun("d1", poset_map(c.get("poset1"), c.get("poset2"), {0, 2}));
    fun("s0", poset_map(c.get("poset2"), c.get("poset1"), {0, 0, 1}));
    fun("id_sigma_z2", identity_functor(c.get("sigma_z2")));
    fun("trivial_to_z2", monoid_hom(c.get("sigma_trivial"), c.get("sigma_z2"), {0}));
    fun("z3_to_trivial", monoid_hom(c.get("sigma_z3"), c.get("sigma_trivial"), {0, 0, 0}));
    {
      // sign map S3 → Z2; labels are permutations in lexicographic order
      BicatPtr S3 = c.get("sigma_s3");
      std::vector<int> sign;
      for (OneId p = 0; p < S3->n_one(); ++p) {
        std::string s = S3->one_name(p);
        int inv = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j)
            if (s[i] > s[j]) ++inv;
        sign.push_back(inv % 2);
      }
      fun("sign", monoid_hom(S3, c.get("sigma_z2"), sign));
      fun("z2_to_s3", monoid_hom(c.get("sigma_z2"), S3, {0, 1}));
    }
    {
      // lax but not pseudo: [2] → ΣΣ{1,e} with ẑ_{012} = e
      BicatPtr P2 = c.get("poset2"), SS = c.get("sigma_sigma_idem");
      SimplexData z;
      z.vertex = {0, 0, 0};
      for (int i = 0; i <= 2; ++i)
        for (int j = i; j <= 2; ++j) z.edge[{i, j}] = 0;
      for (int i = 0; i <= 2; ++i)
        for (int j = i; j <= 2; ++j)
          for (int k = j; k <= 2; ++k) z.face[{i, j, k}] = (i < j && j < k) ? 1 : 0;
      z.unit = {0, 0, 0};
      fun("lax_simplex", simplex_functor(P2, SS, z));
    }
    fun("id_sigma_z2_twisted", identity_functor(c.get("sigma_z2_twisted")));
    {
      // pseudo [2] → twisted ΣZ/2 with z01 = z12 = 1, z02 = 0 and identity faces
      BicatPtr P2 = c.get("poset2"), T = c.get("sigma_z2_twisted");
      SimplexData z;
      z.vertex = {0, 0, 0};
      for (int i = 0; i <= 2; ++i)
        for (int j = i; j <= 2; ++j) z.edge[{i, j}] = (j - i == 1) ? 1 : 0;
      for (int i = 0; i <= 2; ++i)
        for (int j = i; j <= 2; ++j)
          for (int k = j; k <= 2; ++k) z.face[{i, j, k}] = T->id2[z.edge[{i, k}]];
      for (int i = 0; i <= 2; ++i) z.unit.push_back(T->id2[0]);
      fun("twisted_simplex", simplex_functor(P2, T, z));
    }
    return c;
  }();
  return C;
}

}  // namespace

std::vector<NamedBicat> corpus_bicategories() { return corpus().bicats; }
std::vector<NamedFunctor> corpus_functors() { return corpus().functors; }
BicatPtr corpus_bicategory(const std::string& name) { return corpus().get(name); }

}  // namespace bicat
