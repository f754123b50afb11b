#include "bicat/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bicat {

namespace fs = std::filesystem;

namespace {

std::vector<std::array<int, 3>> sorted2(const Table& t) {
  std::vector<std::array<int, 3>> v;
  v.reserve(t.size());
  for (auto [k, c] : t) v.push_back({int(std::uint32_t(k >> 32)), int(std::uint32_t(k)), c});
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::array<int, 4>> sorted3(const Table& t) {
  const std::uint64_t m = (1u << 21) - 1;
  std::vector<std::array<int, 4>> v;
  v.reserve(t.size());
  for (auto [k, c] : t) v.push_back({int((k >> 42) & m), int((k >> 21) & m), int(k & m), c});
  std::sort(v.begin(), v.end());
  return v;
}

[[noreturn]] void malformed(const std::string& what) { throw MalformedTable(what); }

// Every entry of v indexes into [0, n) and v has the given length.
void check_table(const std::vector<int>& v, std::size_t len, int n, const char* what) {
  if (v.size() != len) malformed(std::string(what) + " has wrong length");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < 0 || v[i] >= n) malformed(std::string(what) + "[" + std::to_string(i) + "] out of range");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<int> ints(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) malformed(std::string("field \"") + key + "\" is not an array");
  std::vector<int> v;
  v.reserve(a.size());
  for (const auto& x : a) {
    if (!x.is_number_integer()) malformed(std::string("field \"") + key + "\" has a non-integer entry");
    v.push_back(x.get<int>());
  }
  return v;
}

std::vector<std::vector<int>> tuples(const json& j, const char* key, std::size_t arity) {
  const json& a = field(j, key);
  if (!a.is_array()) malformed(std::string("field \"") + key + "\" is not an array");
  std::vector<std::vector<int>> v;
  for (const auto& t : a) {
    if (!t.is_array() || t.size() != arity) malformed(std::string("field \"") + key + "\" has a malformed tuple");
    std::vector<int> row;
    for (const auto& x : t) {
      if (!x.is_number_integer()) malformed(std::string("field \"") + key + "\" has a non-integer entry");
      row.push_back(x.get<int>());
    }
    v.push_back(row);
  }
  return v;
}

std::vector<std::string> strings(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) malformed(std::string("field \"") + key + "\" is not an array");
  std::vector<std::string> v;
  for (const auto& x : a) {
    if (!x.is_string()) malformed(std::string("field \"") + key + "\" has a non-string entry");
    v.push_back(x.get<std::string>());
  }
  return v;
}

std::string name_of(const json& j) {
  if (j.contains("name") && j.at("name").is_string()) return j.at("name").get<std::string>();
  return {};
}

void expect_schema(const json& j, const std::string& s) {
  if (schema_of(j) != s) malformed("expected schema \"" + s + "\", found \"" + schema_of(j) + "\"");
}

json functor_tables(const LaxFunctor& F) {
  json j;
  j["name"] = F.name;
  j["obj"] = F.obj;
  j["one"] = F.one;
  j["two"] = F.two;
  j["unit"] = F.unit;
  j["comp"] = sorted2(F.comp);
  return j;
}

LaxFunctor functor_from_tables(const json& j, BicatPtr src, BicatPtr tgt) {
  LaxFunctor F;
  F.name = name_of(j);
  F.src = std::move(src);
  F.tgt = std::move(tgt);
  F.obj = ints(j, "obj");
  F.one = ints(j, "one");
  F.two = ints(j, "two");
  F.unit = ints(j, "unit");
  const Bicategory& A = *F.src;
  const Bicategory& B = *F.tgt;
  check_table(F.obj, A.n_obj(), B.n_obj(), "obj");
  check_table(F.one, A.n_one(), B.n_one(), "one");
  check_table(F.two, A.n_two(), B.n_two(), "two");
  check_table(F.unit, A.n_obj(), B.n_two(), "unit");
  for (const auto& t : tuples(j, "comp", 3)) {
    if (t[0] < 0 || t[0] >= A.n_one() || t[1] < 0 || t[1] >= A.n_one() || t[2] < 0 || t[2] >= B.n_two())
      malformed("comp entry out of range");
    F.comp[key2(t[0], t[1])] = t[2];
  }
  return F;
}

json transformation_tables(const Transformation& t) {
  json j;
  j["name"] = t.name;
  j["kind"] = to_string(t.kind);
  j["comp"] = t.comp;
  j["nat"] = t.nat;
  return j;
}

TKind kind_from(const json& j) {
  const json& k = field(j, "kind");
  for (TKind t : {TKind::Lax, TKind::Oplax, TKind::Pseudo})
    if (k.is_string() && k.get<std::string>() == to_string(t)) return t;
  malformed("unknown transformation kind");
}

Transformation transformation_from_tables(const json& j, FunPtr F, FunPtr G) {
  Transformation t;
  t.name = name_of(j);
  t.kind = kind_from(j);
  t.F = std::move(F);
  t.G = std::move(G);
  t.comp = ints(j, "comp");
  t.nat = ints(j, "nat");
  check_table(t.comp, t.F->src->n_obj(), t.F->tgt->n_one(), "comp");
  check_table(t.nat, t.F->src->n_one(), t.F->tgt->n_two(), "nat");
  return t;
}

json modification_tables(const Modification& m) {
  json j;
  j["name"] = m.name;
  j["comp"] = m.comp;
  return j;
}

ModPtr modification_from_tables(const json& j, TransPtr a, TransPtr b) {
  Modification m;
  m.name = name_of(j);
  m.alpha = std::move(a);
  m.beta = std::move(b);
  m.comp = ints(j, "comp");
  check_table(m.comp, m.alpha->F->src->n_obj(), m.alpha->F->tgt->n_two(), "comp");
  return std::make_shared<const Modification>(std::move(m));
}

}  // namespace

std::string schema_of(const json& j) {
  if (j.is_object() && j.contains("schema") && j.at("schema").is_string()) return j.at("schema").get<std::string>();
  return {};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Bicategory& B) {
  json j;
  j["schema"] = "bicategory";
  j["name"] = B.name;
  j["objects"] = B.obj_label;
  json ones = json::array(), twos = json::array();
  for (auto [s, t] : B.one) ones.push_back({s, t});
  for (auto [s, t] : B.two) twos.push_back({s, t});
  j["one_cells"] = ones;
  j["two_cells"] = twos;
  if (!B.one_label.empty()) j["one_labels"] = B.one_label;
  if (!B.two_label.empty()) j["two_labels"] = B.two_label;
  j["id1"] = B.id1;
  j["id2"] = B.id2;
  j["lunit"] = B.lunit;
  j["runit"] = B.runit;
  j["vcomp"] = sorted2(B.vcomp);
  j["hcomp1"] = sorted2(B.hcomp1);
  j["hcomp2"] = sorted2(B.hcomp2);
  j["assoc"] = sorted3(B.assoc);
  return j;
}

json to_json(const LaxFunctor& F) {
  json j = functor_tables(F);
  j["schema"] = "laxfunctor";
  j["source"] = to_json(*F.src);
  j["target"] = to_json(*F.tgt);
  return j;
}

json to_json(const Transformation& t) {
  json j = transformation_tables(t);
  j["schema"] = "transformation";
  j["source"] = to_json(*t.F);
  j["target"] = to_json(*t.G);
  return j;
}

json to_json(const Modification& m) {
  json j = modification_tables(m);
  j["schema"] = "modification";
  j["source"] = to_json(*m.alpha);
  j["target"] = to_json(*m.beta);
  return j;
}

json to_json(const LaxBidiagram& D) {
  const Bicategory& B = D.B();
  json j;
  j["schema"] = "bidiagram";
  j["name"] = D.name;
  j["base"] = to_json(B);
  json fibers = json::array(), pull = json::array(), pull2 = json::array(), chi = json::array(),
       chi_unit = json::array(), xi = json::array(), xi_id = json::array(), chi2 = json::array(),
       omega = json::array(), gamma = json::array(), delta = json::array();
  for (const auto& F : D.fiber) fibers.push_back(to_json(*F));
  for (const auto& f : D.pull) pull.push_back(functor_tables(*f));
  for (const auto& t : D.pull2) pull2.push_back(transformation_tables(*t));
  for (const auto& t : D.chi_unit) chi_unit.push_back(transformation_tables(*t));
  for (const auto& m : D.xi_id) xi_id.push_back(modification_tables(*m));
  for (const auto& m : D.gamma) gamma.push_back(modification_tables(*m));
  for (const auto& m : D.delta) delta.push_back(modification_tables(*m));
  auto pairs = [](const auto& table, auto&& tables, json& out) {
    std::vector<std::pair<std::array<int, 2>, json>> rows;
    for (const auto& [k, v] : table) rows.push_back({{int(std::uint32_t(k >> 32)), int(std::uint32_t(k))}, tables(*v)});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, v] : rows) out.push_back({k[0], k[1], v});
  };
  pairs(D.chi, transformation_tables, chi);
  pairs(D.xi, modification_tables, xi);
  pairs(D.chi2, modification_tables, chi2);
  {
    const std::uint64_t m = (1u << 21) - 1;
    std::vector<std::pair<std::array<int, 3>, json>> rows;
    for (const auto& [k, v] : D.omega)
      rows.push_back({{int((k >> 42) & m), int((k >> 21) & m), int(k & m)}, modification_tables(*v)});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, v] : rows) omega.push_back({k[0], k[1], k[2], v});
  }
  j["fibers"] = fibers;
  j["pull"] = pull;
  j["pull2"] = pull2;
  j["chi"] = chi;
  j["chi_unit"] = chi_unit;
  j["xi"] = xi;
  j["xi_id"] = xi_id;
  j["chi2"] = chi2;
  j["omega"] = omega;
  j["gamma"] = gamma;
  j["delta"] = delta;
  return j;
}

json to_json(const SimplicialSet& X) {
  json j;
  j["schema"] = "simplicial_set";
  j["N"] = X.N;
  j["count"] = X.count;
  j["face"] = X.face;
  j["degen"] = X.degen;
  json deg = json::array();
  for (const auto& d : X.degenerate) {
    std::vector<int> v(d.begin(), d.end());
    deg.push_back(v);
  }
  j["degenerate"] = deg;
  return j;
}

json to_json(const HomologyResult& h) {
  json j;
  j["schema"] = "homology";
  json groups = json::array();
  for (std::size_t k = 0; k < h.H.size(); ++k)
    groups.push_back({{"degree", k}, {"betti", h.H[k].betti}, {"torsion", h.H[k].torsion}});
  j["groups"] = groups;
  j["rank"] = h.rank;
  j["big_integers"] = h.big_integers;
  j["text"] = h.str();
  return j;
}

json chain_complex_json(const ChainComplex& C) {
  json j;
  j["schema"] = "chain_complex";
  j["basis"] = C.basis;
  json bd = json::array();
  for (std::size_t n = 1; n < C.boundary.size(); ++n) {
    json entries = json::array();
    for (std::size_t r = 0; r < C.boundary[n].size(); ++r)
      for (std::size_t c = 0; c < C.boundary[n][r].size(); ++c)
        if (C.boundary[n][r][c] != 0) entries.push_back({r, c, C.boundary[n][r][c]});
    bd.push_back({{"degree", n}, {"rows", C.basis[n - 1].size()}, {"cols", C.basis[n].size()}, {"entries", entries}});
  }
  j["boundary"] = bd;
  return j;
}

json Loader::read_file(const fs::path& p) const {
  std::ifstream in(p);
  if (!in) malformed("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed(p.string() + ": " + e.what());
  }
}

json Loader::resolve(const json& ref, const fs::path& dir, fs::path& where) const {
  if (ref.is_string()) {
    where = dir / ref.get<std::string>();
    return read_file(where);
  }
  where.clear();
  return ref;
}

BicatPtr Loader::bicategory(const json& ref, const fs::path& dir) {
  fs::path where;
  json j = resolve(ref, dir, where);
  std::string key = where.empty() ? "inline:" + j.dump() : fs::weakly_canonical(where).string();
  if (auto it = bicats_.find(key); it != bicats_.end()) return it->second;
  expect_schema(j, "bicategory");
  Bicategory B;
  B.name = name_of(j);
  B.obj_label = strings(j, "objects");
  for (const auto& t : tuples(j, "one_cells", 2)) B.one.emplace_back(t[0], t[1]);
  for (const auto& t : tuples(j, "two_cells", 2)) B.two.emplace_back(t[0], t[1]);
  if (j.contains("one_labels")) {
    B.one_label = strings(j, "one_labels");
    if (B.one_label.size() != B.one.size()) malformed("one_labels has wrong length");
  }
  if (j.contains("two_labels")) {
    B.two_label = strings(j, "two_labels");
    if (B.two_label.size() != B.two.size()) malformed("two_labels has wrong length");
  }
  B.id1 = ints(j, "id1");
  B.id2 = ints(j, "id2");
  B.lunit = ints(j, "lunit");
  B.runit = ints(j, "runit");
  for (const auto& t : tuples(j, "vcomp", 3)) B.vcomp[key2(t[0], t[1])] = t[2];
  for (const auto& t : tuples(j, "hcomp1", 3)) B.hcomp1[key2(t[0], t[1])] = t[2];
  for (const auto& t : tuples(j, "hcomp2", 3)) B.hcomp2[key2(t[0], t[1])] = t[2];
  for (const auto& t : tuples(j, "assoc", 4)) B.assoc[key3(t[0], t[1], t[2])] = t[3];
  B.finalize();
  auto p = std::make_shared<const Bicategory>(std::move(B));
  bicats_[key] = p;
  return p;
}

FunPtr Loader::functor(const json& ref, const fs::path& dir) {
  fs::path where;
  json j = resolve(ref, dir, where);
  std::string key = where.empty() ? "inline:" + j.dump() : fs::weakly_canonical(where).string();
  if (auto it = functors_.find(key); it != functors_.end()) return it->second;
  expect_schema(j, "laxfunctor");
  fs::path here = where.empty() ? dir : where.parent_path();
  BicatPtr A = bicategory(field(j, "source"), here), B = bicategory(field(j, "target"), here);
  auto F = std::make_shared<const LaxFunctor>(functor_from_tables(j, A, B));
  functors_[key] = F;
  return F;
}

TransPtr Loader::transformation(const json& ref, const fs::path& dir) {
  fs::path where;
  json j = resolve(ref, dir, where);
  std::string key = where.empty() ? "inline:" + j.dump() : fs::weakly_canonical(where).string();
  if (auto it = transformations_.find(key); it != transformations_.end()) return it->second;
  expect_schema(j, "transformation");
  fs::path here = where.empty() ? dir : where.parent_path();
  FunPtr F = functor(field(j, "source"), here), G = functor(field(j, "target"), here);
  auto t = std::make_shared<const Transformation>(transformation_from_tables(j, F, G));
  transformations_[key] = t;
  return t;
}

ModPtr Loader::modification(const json& ref, const fs::path& dir) {
  fs::path where;
  json j = resolve(ref, dir, where);
  expect_schema(j, "modification");
  fs::path here = where.empty() ? dir : where.parent_path();
  return modification_from_tables(j, transformation(field(j, "source"), here), transformation(field(j, "target"), here));
}

BidiagramPtr Loader::bidiagram(const json& ref, const fs::path& dir) {
  fs::path where;
  json j = resolve(ref, dir, where);
  expect_schema(j, "bidiagram");
  fs::path here = where.empty() ? dir : where.parent_path();
  auto D = std::make_shared<LaxBidiagram>();
  D->name = name_of(j);
  D->base = bicategory(field(j, "base"), here);
  const Bicategory& B = *D->base;
  const LaxBidiagram& Dr = *D;

  auto array_of = [&](const char* key, std::size_t n) -> const json& {
    const json& a = field(j, key);
    if (!a.is_array() || a.size() != n) malformed(std::string("field \"") + key + "\" has wrong length");
    return a;
  };
  for (const auto& f : array_of("fibers", B.n_obj())) D->fiber.push_back(bicategory(f, here));
  const json& pull = array_of("pull", B.n_one());
  for (OneId f = 0; f < B.n_one(); ++f)
    D->pull.push_back(std::make_shared<const LaxFunctor>(
        functor_from_tables(pull[f], D->fiber[B.tgt(f)], D->fiber[B.src(f)])));
  auto trans = [&](const json& t, FunPtr F, FunPtr G) {
    return std::make_shared<const Transformation>(transformation_from_tables(t, std::move(F), std::move(G)));
  };
  const json& pull2 = array_of("pull2", B.n_two());
  for (TwoId a = 0; a < B.n_two(); ++a) D->pull2.push_back(trans(pull2[a], D->pull[B.src2(a)], D->pull[B.tgt2(a)]));
  auto keyed = [&](const char* key, std::size_t arity) {
    const json& a = field(j, key);
    if (!a.is_array()) malformed(std::string("field \"") + key + "\" is not an array");
    std::vector<std::pair<std::vector<int>, json>> rows;
    for (const auto& r : a) {
      if (!r.is_array() || r.size() != arity + 1) malformed(std::string("field \"") + key + "\" has a malformed row");
      std::vector<int> k;
      for (std::size_t i = 0; i < arity; ++i) {
        if (!r[i].is_number_integer()) malformed(std::string("field \"") + key + "\" has a non-integer key");
        k.push_back(r[i].get<int>());
      }
      rows.push_back({k, r[arity]});
    }
    return rows;
  };
  auto check_one = [&](int f) {
    if (f < 0 || f >= B.n_one()) malformed("1-cell index out of range");
  };
  auto check_two = [&](int a) {
    if (a < 0 || a >= B.n_two()) malformed("2-cell index out of range");
  };
  for (const auto& [k, t] : keyed("chi", 2)) {
    check_one(k[0]);
    check_one(k[1]);
    if (B.find_comp(k[0], k[1]) < 0) malformed("chi at a non-composable pair");
    D->chi[key2(k[0], k[1])] = trans(t, D->pull_comp(k[0], k[1]), D->pull[B.comp(k[0], k[1])]);
  }
  const json& cu = array_of("chi_unit", B.n_obj());
  for (ObjId b = 0; b < B.n_obj(); ++b) D->chi_unit.push_back(trans(cu[b], D->ident(b), D->pull[B.id1[b]]));

  for (const auto& [k, m] : keyed("xi", 2)) {
    check_two(k[0]);
    check_two(k[1]);
    if (B.find_vc(k[0], k[1]) < 0) malformed("xi at a non-composable pair");
    D->xi[key2(k[0], k[1])] =
        modification_from_tables(m, expected::xi_src(Dr, k[0], k[1]), D->pull2[B.vc(k[0], k[1])]);
  }
  const json& xid = array_of("xi_id", B.n_one());
  for (OneId f = 0; f < B.n_one(); ++f)
    D->xi_id.push_back(modification_from_tables(xid[f], expected::xi_id_src(Dr, f), D->pull2[B.id2[f]]));
  for (const auto& [k, m] : keyed("chi2", 2)) {
    check_two(k[0]);
    check_two(k[1]);
    if (B.find_hc(k[0], k[1]) < 0) malformed("chi2 at a non-composable pair");
    D->chi2[key2(k[0], k[1])] =
        modification_from_tables(m, expected::chi2_src(Dr, k[0], k[1]), expected::chi2_tgt(Dr, k[0], k[1]));
  }
  for (const auto& [k, m] : keyed("omega", 3)) {
    for (int f : k) check_one(f);
    if (B.find_comp(k[0], k[1]) < 0 || B.find_comp(k[1], k[2]) < 0) malformed("omega at a non-composable triple");
    D->omega[key3(k[0], k[1], k[2])] = modification_from_tables(m, expected::omega_src(Dr, k[0], k[1], k[2]),
                                                                expected::omega_tgt(Dr, k[0], k[1], k[2]));
  }
  const json& ga = array_of("gamma", B.n_one());
  const json& de = array_of("delta", B.n_one());
  for (OneId f = 0; f < B.n_one(); ++f) {
    D->gamma.push_back(modification_from_tables(ga[f], expected::gamma_src(Dr, f), expected::ident_trans(Dr, f)));
    D->delta.push_back(modification_from_tables(de[f], expected::delta_src(Dr, f), expected::ident_trans(Dr, f)));
  }
  return D;
}

SimplicialSet Loader::simplicial_set(const json& j) const {
  expect_schema(j, "simplicial_set");
  SimplicialSet X;
  const json& N = field(j, "N");
  if (!N.is_number_integer() || N.get<int>() < 0) malformed("N must be a non-negative integer");
  X.N = N.get<int>();
  X.count = ints(j, "count");
  if (int(X.count.size()) != X.N + 1) malformed("count has wrong length");
  try {
    X.face = field(j, "face").get<std::vector<std::vector<std::vector<int>>>>();
    X.degen = field(j, "degen").get<std::vector<std::vector<std::vector<int>>>>();
    auto deg = field(j, "degenerate").get<std::vector<std::vector<int>>>();
    for (const auto& d : deg) X.degenerate.emplace_back(d.begin(), d.end());
  } catch (const json::exception& e) {
    malformed(std::string("simplicial set tables: ") + e.what());
  }
  if (int(X.face.size()) != X.N + 1 || int(X.degen.size()) != X.N + 1 || int(X.degenerate.size()) != X.N + 1)
    malformed("simplicial set tables have wrong length");
  for (int n = 0; n <= X.N; ++n) {
    if (int(X.degenerate[n].size()) != X.count[n]) malformed("degenerate flags have wrong length");
    auto check_map = [&](const std::vector<std::vector<int>>& maps, std::size_t arity, int tgt, const char* what) {
      if (maps.size() != arity) malformed(std::string(what) + " maps have wrong arity in dimension " + std::to_string(n));
      for (const auto& m : maps) {
        if (int(m.size()) != X.count[n]) malformed(std::string(what) + " map has wrong length");
        for (int y : m)
          if (y < 0 || y >= X.count[tgt]) malformed(std::string(what) + " map leaves the simplicial set");
      }
    };
    if (n > 0) check_map(X.face[n], n + 1, n - 1, "face");
    else if (!X.face[0].empty()) malformed("face maps in dimension 0");
    if (n < X.N) check_map(X.degen[n], n + 1, n + 1, "degeneracy");
    else if (!X.degen[n].empty()) malformed("degeneracy maps out of the top dimension");
  }
  return X;
}

}  // namespace bicat
