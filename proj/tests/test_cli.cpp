#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "bicat/cli.hpp"
#include "bicat/corpus.hpp"
#include "bicat/io.hpp"

using namespace bicat;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run bicat_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "bicat_cli_test";
  fs::create_directories(d);
  return d / name;
}

std::string write(const std::string& name, const json& j) {
  fs::path p = scratch(name);
  std::ofstream(p) << dump(j);
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen cyclic_group 2 emits the suspension of Z/2") {
  Run r = bicat_run({"gen", "cyclic_group", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out == dump(to_json(suspension(cyclic_group(2)))));
  CHECK(bicat_run({"gen", "cyclic_group", "2"}).out == r.out);
}

TEST_CASE("generated artifacts pass their validators") {
  std::vector<std::vector<std::string>> gens = {
      {"poset", "3"},          {"cyclic_group", "4"}, {"symmetric_group", "3"}, {"indiscrete", "3"},
      {"idempotent_monoid"},   {"suspension_of", "cyclic_group", "2"},           {"suspension_of", "idempotent_monoid"},
      {"group_hom", "1", "2"}, {"group_hom", "2", "4"}, {"group_hom", "4", "2", "0", "1", "0", "1"},
      {"z2_twisted"},          {"signed_poset", "2"}, {"corpus", "sigma_s3"},     {"corpus", "lax_simplex"},
      {"hom_bidiagram", "sigma_z2", "0"}};
  for (auto g : gens) {
    INFO(g[0]);
    std::string p = scratch("gen.json").string();
    g.insert(g.begin(), "gen");
    g.push_back("-o");
    g.push_back(p);
    REQUIRE(bicat_run(g).code == 0);
    Run v = bicat_run({"validate", p});
    CHECK(v.code == 0);
    CHECK(json::parse(v.out)["ok"] == true);
  }
}

TEST_CASE("group_hom defaults to the map x -> (m/gcd(n,m)) x") {
  json j = json::parse(bicat_run({"gen", "group_hom", "2", "4"}).out);
  CHECK(j["one"] == json::array({0, 2}));
  json t = json::parse(bicat_run({"gen", "group_hom", "1", "2"}).out);
  CHECK(t["one"] == json::array({0}));
}

TEST_CASE("bad generator arguments are malformed input") {
  CHECK(bicat_run({"gen", "group_hom", "2", "3", "0", "1"}).code == 2);
  CHECK(bicat_run({"gen", "suspension_of", "symmetric_group", "3"}).code == 2);
  CHECK(bicat_run({"gen", "poset", "x"}).code == 2);
  CHECK(bicat_run({"gen", "nonesuch"}).code == 2);
  CHECK(bicat_run({"gen", "corpus", "nonesuch"}).code == 2);
}

TEST_CASE("check-theorems on group_hom(1,2) passes") {
  Run r = bicat_run({"check-theorems", "--instance", "group_hom(1,2)"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["criteria"].size() == 7);
  CHECK(bicat_run({"check-theorems", "--instance", "sign"}).code == 0);
}

TEST_CASE("check-theorems runs single criteria with the seed in the report") {
  Run r = bicat_run({"check-theorems", "--only", "12", "--seed", "7", "--mutations", "4"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["seed"] == 7);
  CHECK(j["criteria"][0]["pass"] == true);
  CHECK(bicat_run({"check-theorems", "--only", "12", "--seed", "7", "--mutations", "4"}).out == r.out);
}

TEST_CASE("malformed input exits 2 with a location") {
  fs::path p = scratch("broken.json");
  std::ofstream(p) << "{\"schema\": \"bicategory\",\n  \"objects\": [";
  Run r = bicat_run({"validate", p.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);

  json B = to_json(*corpus_bicategory("poset1"));
  B.erase("hcomp1");
  Run m = bicat_run({"validate", write("missing.json", B)});
  CHECK(m.code == 2);
  CHECK(m.err.find("hcomp1") != std::string::npos);

  CHECK(bicat_run({"validate", scratch("absent.json").string()}).code == 2);
  CHECK(bicat_run({"frobnicate"}).code == 2);
  CHECK(bicat_run({}).code == 2);
}

TEST_CASE("failed checks exit 1 and name the first violation") {
  Bicategory B = signed_poset(2);
  OneId f = B.hom(0, 1)[0], g = B.hom(1, 2)[0], h = B.hom(2, 2)[0];
  TwoId a = B.a(h, g, f);
  const auto& parallel = B.hom2(B.src2(a), B.tgt2(a));
  B.set_assoc(h, g, f, parallel[0] == a ? parallel[1] : parallel[0]);
  Run r = bicat_run({"validate", write("mutated.json", to_json(B))});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["ok"] == false);
  CHECK(r.err.find("check failed: ") == 0);
}

TEST_CASE("fiber routes, comma and out-of-range objects") {
  std::string F = scratch("sign.json").string();
  REQUIRE(bicat_run({"gen", "corpus", "sign", "-o", F}).code == 0);
  Run both = bicat_run({"fiber", F, "--over", "0", "--both"});
  CHECK(both.code == 0);
  CHECK(json::parse(both.out)["ok"] == true);
  Run d = bicat_run({"fiber", F, "--over", "0", "--direct"});
  Run g = bicat_run({"fiber", F, "--over", "0", "--generic"});
  CHECK(json::parse(d.out)["two_cells"].size() == json::parse(g.out)["two_cells"].size());
  CHECK(bicat_run({"fiber", F, "--over", "5"}).code == 2);
  CHECK(bicat_run({"fiber", F, "--over", "0", "--direct", "--generic"}).code == 2);

  std::string P = scratch("p2.json").string();
  bicat_run({"gen", "poset", "2", "-o", P});
  std::string out = scratch("comma.json").string();
  CHECK(bicat_run({"comma", P, "--over", "2", "-o", out}).code == 0);
  CHECK(json::parse(slurp(out))["objects"].size() == 3);
  CHECK(fs::exists(scratch("comma.provenance.json")));
}

TEST_CASE("groth writes the total bicategory and a provenance sidecar") {
  std::string D = scratch("hom.json").string();
  REQUIRE(bicat_run({"gen", "hom_bidiagram", "sigma_z2", "0", "-o", D}).code == 0);
  CHECK(bicat_run({"coherence", D}).code == 0);
  std::string out = scratch("total.json").string();
  REQUIRE(bicat_run({"groth", D, "-o", out}).code == 0);
  json T = json::parse(slurp(out));
  json prov = json::parse(slurp(scratch("total.provenance.json")));
  CHECK(T["objects"].size() == 2);
  CHECK(prov["objects"].size() == 2);
  CHECK(bicat_run({"validate", out}).code == 0);

  std::string O = scratch("fb.json").string();
  REQUIRE(bicat_run({"gen", "fiber_bidiagram", "trivial_to_z2", "-o", O}).code == 0);
  CHECK(bicat_run({"coherence", O}).code == 0);
  CHECK(bicat_run({"groth", O, "--oplax"}).code == 0);
}

TEST_CASE("nerve and homology from the command line") {
  std::string S = scratch("z3.json").string();
  bicat_run({"gen", "cyclic_group", "3", "-o", S});
  std::string X = scratch("z3_nerve.json").string();
  REQUIRE(bicat_run({"nerve", S, "--dim", "3", "-o", X}).code == 0);
  Run h = bicat_run({"homology", X, "--kmax", "2", "--chains"});
  REQUIRE(h.code == 0);
  json j = json::parse(h.out);
  CHECK(j["text"] == "H0=Z, H1=Z/3, H2=0");
  CHECK(j.contains("chains"));
  CHECK(bicat_run({"homology", X, "--kmax", "3"}).code == 2);
  CHECK(bicat_run({"nerve", S, "--dim", "3", "--budget", "5"}).code == 1);
  Run direct = bicat_run({"homology", S, "--kmax", "1"});
  CHECK(json::parse(direct.out)["text"] == "H0=Z, H1=Z/3");
}

TEST_CASE("monoidal-fiber of the sign map") {
  std::string F = scratch("sign_m.json").string();
  bicat_run({"gen", "corpus", "sign", "-o", F});
  Run r = bicat_run({"monoidal-fiber", F});
  CHECK(r.code == 0);
  std::string P = scratch("p1.json").string();
  bicat_run({"gen", "corpus", "d1", "-o", P});
  CHECK(bicat_run({"monoidal-fiber", P}).code == 2);
}
