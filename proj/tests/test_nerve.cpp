#include <catch_amalgamated.hpp>

#include <functional>

#include "bicat/fiber.hpp"
#include "bicat/nerve.hpp"

using namespace bicat;

namespace {

FunPtr functor(const std::string& name) {
  for (const auto& [n, F] : corpus_functors())
    if (n == name) return F;
  FAIL("no functor " << name);
  return nullptr;
}

FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }
BicatPtr share(Bicategory B) { return std::make_shared<const Bicategory>(std::move(B)); }

void check_ok(const Report& r) {
  CHECK(r.ok());
  if (!r.ok()) WARN(r.str());
}

bool trivial(const HomologyGroup& g) { return g.betti == 0 && g.torsion.empty(); }
bool integers(const HomologyGroup& g) { return g.betti == 1 && g.torsion.empty(); }
bool cyclic(const HomologyGroup& g, const std::string& n) {
  return g.betti == 0 && g.torsion == std::vector<std::string>{n};
}

// The one-object category of a finite group given by its multiplication.
Category group_category(int n, const std::function<int(int, int)>& mul) {
  Category C;
  C.obj_label = {"*"};
  C.id = {0};
  for (int g = 0; g < n; ++g) C.mor.push_back({0, 0});
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) C.comp[key2(g, h)] = mul(g, h);
  return C;
}

// [n] as a category with morphisms (i,j), i ≤ j.
Category poset_category(int n) {
  Category C;
  std::map<std::pair<int, int>, int> m;
  for (int i = 0; i <= n; ++i) C.obj_label.push_back(std::to_string(i));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      m[{i, j}] = int(C.mor.size());
      C.mor.push_back({i, j});
    }
  for (int i = 0; i <= n; ++i) C.id.push_back(m[{i, i}]);
  for (auto [p, f] : m)
    for (auto [q, g] : m)
      if (q.first == p.second) C.comp[key2(g, f)] = m[{p.first, q.second}];
  return C;
}

// Counts lax functors [n] → B by trying every assignment of cells and
// validating each with simplex_functor and validate_lax_functor.
int brute_force_count(BicatPtr B, int n) {
  BicatPtr Pn = share(poset(n));
  SimplexData z;
  z.vertex.assign(n + 1, 0);
  z.unit.assign(n + 1, 0);
  std::vector<std::pair<int, int>> edges;
  std::vector<std::tuple<int, int, int>> faces;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      edges.push_back({i, j});
      for (int k = j; k <= n; ++k) faces.push_back({i, j, k});
    }
  int count = 0;
  std::function<void(std::size_t)> units, face, edge, vertex;
  units = [&](std::size_t i) {
    if (i > std::size_t(n)) {
      if (validate_lax_functor(simplex_functor(Pn, B, z)).ok()) ++count;
      return;
    }
    for (TwoId u : B->hom2(B->id1[z.vertex[i]], z.edge[{int(i), int(i)}])) {
      z.unit[i] = u;
      units(i + 1);
    }
  };
  face = [&](std::size_t t) {
    if (t == faces.size()) return units(0);
    auto [i, j, k] = faces[t];
    int s = B->find_comp(z.edge[{j, k}], z.edge[{i, j}]);
    if (s < 0) return;
    for (TwoId c : B->hom2(s, z.edge[{i, k}])) {
      z.face[faces[t]] = c;
      face(t + 1);
    }
  };
  edge = [&](std::size_t t) {
    if (t == edges.size()) return face(0);
    auto [i, j] = edges[t];
    for (OneId e : B->hom(z.vertex[i], z.vertex[j])) {
      z.edge[edges[t]] = e;
      edge(t + 1);
    }
  };
  vertex = [&](std::size_t i) {
    if (i > std::size_t(n)) return edge(0);
    for (ObjId v = 0; v < B->n_obj(); ++v) {
      z.vertex[i] = v;
      vertex(i + 1);
    }
  };
  vertex(0);
  return count;
}

const std::vector<std::string> kBicats = {"poset1",      "poset2",           "indiscrete2",      "indiscrete3",
                                          "sigma_trivial", "sigma_z2",       "sigma_z3",         "sigma_s3",
                                          "sigma_idem",  "sigma_sigma_idem", "sigma_z2_twisted", "signed_poset2"};

NervePtr nerve_of(const std::string& name, int N = 3) {
  static std::map<std::pair<std::string, int>, NervePtr> cache;
  auto& slot = cache[{name, N}];
  if (!slot) slot = nerve(corpus_bicategory(name), {.N = N});
  return slot;
}

}  // namespace

TEST_CASE("nerve of [2] has nondegenerate counts 3,3,1,0") {
  auto X = nerve_of("poset2");
  CHECK(X->X.nondegenerate_counts() == std::vector<int>{3, 3, 1, 0});
}

TEST_CASE("nerve of the suspension of Z/2 has one nondegenerate simplex per dimension") {
  auto X = nerve_of("sigma_z2");
  CHECK(X->X.nondegenerate_counts() == std::vector<int>{1, 1, 1, 1});
  // units force z_ii = 1 and identity unit cells
  const Bicategory& B = *X->B;
  for (const auto& zs : X->simplices)
    for (const auto& z : zs)
      for (int i = 0; i <= z.n; ++i) {
        CHECK(z.z(i, i) == B.id1[z.vertex[i]]);
        CHECK(B.is_identity(z.unit[i]));
      }
}

TEST_CASE("category nerve oracle agrees on locally discrete bicategories") {
  std::vector<std::pair<std::string, Category>> cats = {
      {"poset2", poset_category(2)},
      {"poset3", poset_category(3)},
      {"z2", group_category(2, [](int g, int h) { return (g + h) % 2; })},
      {"z3", group_category(3, [](int g, int h) { return (g + h) % 3; })},
      {"idem", group_category(2, [](int g, int h) { return g | h; })},
  };
  for (const auto& [name, C] : cats) {
    INFO(name);
    SimplicialSet Y = category_nerve(C, 3);
    check_ok(check_simplicial_identities(Y));
    auto X = nerve(share(locally_discrete(C, name)), {.N = 3});
    CHECK(X->X.count == Y.count);
    CHECK(X->X.nondegenerate_counts() == Y.nondegenerate_counts());
    CHECK(homology(X->X, 2).str() == homology(Y, 2).str());
  }
  CHECK(category_nerve(poset_category(2), 3).nondegenerate_counts() == std::vector<int>{3, 3, 1, 0});
}

TEST_CASE("nerve enumeration matches brute-force lax functor validation") {
  for (const std::string name : {"poset1", "indiscrete2", "sigma_z2", "sigma_idem", "sigma_sigma_idem",
                                 "sigma_z2_twisted", "signed_poset2"}) {
    auto X = nerve_of(name);
    for (int n = 0; n <= 2; ++n) {
      INFO(name << " dim " << n);
      CHECK(X->X.count[n] == brute_force_count(X->B, n));
    }
  }
}

TEST_CASE("every stored simplex satisfies its equations and simplicial identities hold") {
  for (const auto& name : kBicats) {
    INFO(name);
    auto X = nerve_of(name);
    for (const auto& zs : X->simplices)
      for (const auto& z : zs) check_ok(check_simplex(*X->B, z));
    check_ok(check_simplicial_identities(X->X));
  }
}

TEST_CASE("simplicial identity checker catches a corrupted face map") {
  SimplicialSet X = nerve_of("sigma_z2")->X;
  REQUIRE(X.count[1] == 2);
  X.face[2][1][3] = 1 - X.face[2][1][3];
  CHECK_FALSE(check_simplicial_identities(X).ok());
}

TEST_CASE("pull back along composites is functorial") {
  auto X = nerve_of("sigma_sigma_idem");
  for (const auto& z : X->simplices[3]) {
    // d_1 d_3 = d_2 d_1, and the identity pulls back to itself
    auto lhs = pull_back(pull_back(z, coface(3, 3)), coface(2, 1));
    auto rhs = pull_back(pull_back(z, coface(3, 1)), coface(2, 2));
    CHECK(lhs == rhs);
    CHECK(pull_back(z, {0, 1, 2, 3}) == z);
  }
}

TEST_CASE("truncation budget") {
  CHECK_THROWS_AS(nerve(corpus_bicategory("sigma_s3"), {.N = 3, .budget = 50}), TruncationTooLarge);
  CHECK_NOTHROW(nerve(corpus_bicategory("sigma_s3"), {.N = 3, .budget = 1000}));
}

TEST_CASE("homology of small nerves") {
  auto h = homology(nerve_of("sigma_z2")->X, 2);
  CHECK(integers(h.H[0]));
  CHECK(cyclic(h.H[1], "2"));
  CHECK(trivial(h.H[2]));
  CHECK(h.str() == "H0=Z, H1=Z/2, H2=0");

  auto p = homology(nerve_of("poset2")->X, 2);
  CHECK(integers(p.H[0]));
  CHECK(trivial(p.H[1]));
  CHECK(trivial(p.H[2]));

  CHECK(cyclic(homology(nerve_of("sigma_z3")->X, 2).H[1], "3"));
  // S3 abelianizes to Z/2
  CHECK(cyclic(homology(nerve_of("sigma_s3")->X, 2).H[1], "2"));
}

TEST_CASE("big-integer path agrees with the int64 path") {
  for (const auto& name : kBicats) {
    INFO(name);
    auto X = nerve_of(name);
    auto a = homology(X->X, 2);
    auto b = homology(X->X, 2, true);
    CHECK_FALSE(a.big_integers);
    CHECK(b.big_integers);
    CHECK(a.str() == b.str());
    CHECK(a.rank == b.rank);
  }
}

TEST_CASE("homology is consistent with rank and nullity") {
  for (const auto& name : kBicats) {
    INFO(name);
    auto X = nerve_of(name);
    auto C = normalized_chains(X->X);
    auto h = homology(X->X, 2);
    for (int k = 0; k <= 2; ++k) {
      CHECK(h.H[k].betti >= 0);
      CHECK(h.rank[k + 1] <= (long long)C.basis[k].size());
      CHECK(h.rank[k + 1] <= (long long)C.basis[k + 1].size());
    }
  }
}

TEST_CASE("homology needs enough dimensions") {
  CHECK_THROWS_AS(homology(nerve_of("sigma_z2", 2)->X, 2), IncoherentInput);
}

TEST_CASE("normalized variant has the same homology") {
  for (const auto& name : kBicats) {
    INFO(name);
    auto X = nerve_of(name);
    auto Y = nerve(corpus_bicategory(name), {.N = 3, .normalized = true});
    check_ok(check_simplicial_identities(Y->X));
    for (int n = 0; n <= 3; ++n) CHECK(Y->X.count[n] <= X->X.count[n]);
    CHECK(homology(X->X, 2).str() == homology(Y->X, 2).str());
  }
}

TEST_CASE("comma nerves are contractible") {
  for (const auto& name : kBicats) {
    BicatPtr B = corpus_bicategory(name);
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      auto X = nerve(comma(B, b)->bic);
      CHECK(pi0(X->X).count == 1);
      auto h = homology(X->X, 2);
      CHECK(integers(h.H[0]));
      CHECK(trivial(h.H[1]));
      CHECK(trivial(h.H[2]));
    }
  }
}

TEST_CASE("connected components") {
  CHECK(pi0(nerve(comma(corpus_bicategory("sigma_z2"), 0)->bic)->X).count == 1);
  auto K = nerve(homotopy_fiber(functor("trivial_to_z2"), 0)->bic);
  auto c = pi0(K->X);
  CHECK(c.count == 2);
  CHECK(c.representative == std::vector<int>{0, 1});

  Bicategory E;
  E.name = "empty";
  E.finalize();
  auto X = nerve(share(std::move(E)));
  CHECK(pi0(X->X).count == 0);
  CHECK(X->X.count == std::vector<int>{0, 0, 0, 0});

  CHECK(pi0(nerve_of("indiscrete3")->X).count == 1);
}

TEST_CASE("hom category nerve has one component per group element") {
  for (auto [name, order] : std::vector<std::pair<std::string, int>>{{"sigma_z2", 2}, {"sigma_z3", 3}, {"sigma_s3", 6}}) {
    INFO(name);
    HomFiber H = hom_fiber(*corpus_bicategory(name), 0, 0);
    CHECK(pi0(nerve(H.bic)->X).count == order);
  }
}

TEST_CASE("simplicial maps commute with faces and degeneracies") {
  for (const auto& [name, F] : corpus_functors()) {
    INFO(name);
    auto X = nerve(F->src), Y = nerve(F->tgt);
    auto f = simplicial_map(*F, *X, *Y);
    check_ok(check_simplicial_map(X->X, Y->X, f));
  }
}

TEST_CASE("simplicial map of the identity is the identity") {
  for (const auto& name : kBicats) {
    auto X = nerve_of(name);
    auto f = simplicial_map(identity_functor(X->B), *X, *X);
    for (int n = 0; n <= 3; ++n)
      for (int x = 0; x < X->X.count[n]; ++x) CHECK(f[n][x] == x);
  }
}

TEST_CASE("simplicial maps are functorial") {
  std::vector<std::pair<std::string, std::string>> pairs = {{"d1", "s0"}, {"s0", "d1"}, {"z2_to_s3", "sign"},
                                                            {"trivial_to_z2", "id_sigma_z2"}};
  for (const auto& [fn, gn] : pairs) {
    INFO(fn << " then " << gn);
    FunPtr F = functor(fn), G = functor(gn);
    auto GF = compose_lax_functors(*G, *F);
    auto X = nerve(F->src), Y = nerve(F->tgt), Z = nerve(G->tgt);
    auto f = simplicial_map(*F, *X, *Y);
    auto g = simplicial_map(*G, *Y, *Z);
    CHECK(simplicial_map(GF, *X, *Z) == compose_maps(g, f));
  }
}

TEST_CASE("the point maps to degenerate simplices") {
  FunPtr F = functor("trivial_to_z2");
  auto X = nerve(F->src), Y = nerve(F->tgt);
  CHECK(X->X.nondegenerate_counts() == std::vector<int>{1, 0, 0, 0});
  auto f = simplicial_map(*F, *X, *Y);
  for (int n = 1; n <= 3; ++n) {
    REQUIRE(X->X.count[n] == 1);
    CHECK(Y->X.degenerate[n][f[n][0]]);
  }
}

TEST_CASE("projection after embedding is constant") {
  for (const std::string fn : {"trivial_to_z2", "d1"}) {
    FunPtr F = functor(fn);
    TotalPtr T = total_fiber(fiber_bidiagram(F));
    auto P = projection_oplax(*T->G);
    auto Tn = nerve(T->G->total, {.N = 2});
    auto Bn = nerve(F->tgt, {.N = 2});
    auto p = simplicial_map(P, *Tn, *Bn);
    for (ObjId b = 0; b < F->tgt->n_obj(); ++b) {
      INFO(fn << " at " << b);
      auto J = total_embedding(T, b);
      auto Kn = nerve(J.src, {.N = 2});
      auto pj = compose_maps(p, simplicial_map(J, *Kn, *Tn));
      for (int n = 0; n <= 2; ++n)
        for (int v : pj[n]) {
          const auto& z = Bn->simplices[n][v];
          for (ObjId w : z.vertex) CHECK(w == b);
          CHECK(v == pj[n].front());
        }
    }
  }
}

TEST_CASE("transformations induce equal maps on homology") {
  // 1 ⇒ Ct on each comma
  for (const std::string name : {"poset2", "sigma_z2", "sigma_z3", "indiscrete2"}) {
    BicatPtr B = corpus_bicategory(name);
    for (ObjId b = 0; b < B->n_obj(); ++b) {
      INFO(name << " at " << b);
      auto C = comma_contraction(B, b);
      auto X = nerve(C.comma->bic);
      auto f = simplicial_map(*C.id, *X, *X);
      auto g = simplicial_map(*C.Ct, *X, *X);
      check_ok(same_induced_maps(X->X, X->X, f, g, 2));
    }
  }
  // ι: LQ ⇒ 1 on the total fiber
  for (const std::string fn : {"trivial_to_z2", "d1", "s0"}) {
    INFO(fn);
    auto QL = total_Q_L(total_fiber(fiber_bidiagram(functor(fn))));
    auto X = nerve(QL.T->G->total);
    auto f = simplicial_map(*QL.LQ, *X, *X);
    auto g = simplicial_map(*QL.id_total, *X, *X);
    check_ok(same_induced_maps(X->X, X->X, f, g, 2));
  }
}

TEST_CASE("maps that differ on homology are told apart") {
  BicatPtr B = corpus_bicategory("sigma_z2");
  auto X = nerve_of("sigma_z2");
  auto id = simplicial_map(identity_functor(B), *X, *X);
  auto c = simplicial_map(constant_functor(B, B, 0), *X, *X);
  Report r = same_induced_maps(X->X, X->X, id, c, 2);
  CHECK(r.count("homology.induced_map") == 1);
  CHECK(r.violations.front().cells.front() == 1);
}
