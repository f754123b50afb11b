#include "bicat/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "bicat/acceptance.hpp"
#include "bicat/io.hpp"

namespace bicat::cli {

namespace fs = std::filesystem;

namespace {

// A failed check: exit 1 after the report has been written.
struct CheckFailed {
  std::string first;
};

// Bad arguments to a generator or an out-of-range object: exit 2.
[[noreturn]] void bad_input(const std::string& what) { throw MalformedTable(what); }

BicatPtr share(Bicategory B) { return std::make_shared<const Bicategory>(std::move(B)); }
FunPtr share(LaxFunctor F) { return std::make_shared<const LaxFunctor>(std::move(F)); }

json report_json(const Report& r) {
  std::vector<const Violation*> vs;
  for (const auto& v : r.violations) vs.push_back(&v);
  std::sort(vs.begin(), vs.end(), [](auto* a, auto* b) { return std::tie(a->axiom, a->cells) < std::tie(b->axiom, b->cells); });
  json arr = json::array();
  for (auto* v : vs) arr.push_back({{"axiom", v->axiom}, {"cells", v->cells}, {"detail", v->detail}});
  return {{"ok", r.ok()}, {"violations", arr}};
}

std::string first_violation(const json& rep) {
  const json& v = rep.at("violations").at(0);
  return v.at("axiom").get<std::string>() + " at " + v.at("cells").dump();
}

void fail_if(const json& rep) {
  if (!rep.at("ok").get<bool>()) throw CheckFailed{first_violation(rep)};
}

struct Output {
  std::ostream& out;
  std::string path;

  void emit(const json& j) const {
    if (path.empty()) {
      out << dump(j);
      return;
    }
    std::ofstream f(path);
    if (!f) throw IncoherentInput("cannot write " + path);
    f << dump(j);
  }
  // Provenance goes next to -o as <stem>.provenance.json.
  void sidecar(const json& j) const {
    if (path.empty()) return;
    fs::path p(path);
    p.replace_extension(".provenance.json");
    std::ofstream f(p);
    if (!f) throw IncoherentInput("cannot write " + p.string());
    f << dump(j);
  }
};

json provenance(const Grothendieck& G) {
  json o = json::array(), one = json::array(), two = json::array();
  for (const auto& c : G.objs) o.push_back({c.x, c.a});
  for (const auto& c : G.ones) one.push_back({c.u, c.f, c.y});
  for (const auto& c : G.twos) two.push_back({c.phi, c.alpha, c.src});
  return {{"schema", "provenance"}, {"objects", o}, {"one_cells", one}, {"two_cells", two}};
}

json provenance(const OplaxGrothendieck& G) {
  json o = json::array(), one = json::array(), two = json::array();
  for (ObjId c = 0; c < G.total->n_obj(); ++c) o.push_back({G.obj_prov(c).x, G.obj_prov(c).a});
  for (OneId k = 0; k < G.total->n_one(); ++k) {
    auto p = G.one_prov(k);
    one.push_back({p.u, p.f, p.x});
  }
  for (TwoId c = 0; c < G.total->n_two(); ++c) {
    auto p = G.two_prov(c);
    two.push_back({p.phi, p.alpha, p.src});
  }
  return {{"schema", "provenance"}, {"objects", o}, {"one_cells", one}, {"two_cells", two}};
}

json provenance(const HomotopyFiber& H) {
  json o = json::array(), one = json::array(), two = json::array();
  for (const auto& c : H.objs) o.push_back({c.f, c.a});
  for (const auto& c : H.ones) one.push_back({c.beta, c.u, c.f2});
  for (const auto& c : H.twos) two.push_back({c.alpha, c.src});
  return {{"schema", "provenance"}, {"objects", o}, {"one_cells", one}, {"two_cells", two}};
}

ObjId object_in(const Bicategory& B, int b) {
  if (b < 0 || b >= B.n_obj())
    bad_input("--over " + std::to_string(b) + " is not an object of " + B.name + " (it has " + std::to_string(B.n_obj()) +
              ")");
  return b;
}

bool is_oplax(const json& j, bool flag) {
  return flag || (j.contains("orientation") && j.at("orientation") == "oplax");
}

OplaxBidiagram as_oplax(BidiagramPtr dual) {
  return {dual->name, share(coop(dual->B())), dual};
}

// ---------------------------------------------------------------------------
// Generators.

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  bad_input("expected an integer, found \"" + s + "\"");
}

int param(const std::vector<std::string>& ps, std::size_t i, const std::string& gen, int lo, int hi) {
  if (i >= ps.size()) bad_input(gen + ": missing parameter " + std::to_string(i + 1));
  int v = to_int(ps[i]);
  if (v < lo || v > hi)
    bad_input(gen + ": parameter " + std::to_string(i + 1) + " must lie in [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]");
  return v;
}

// Group and monoid generators read from ps starting at i; advances i.
Monoid monoid_gen(const std::vector<std::string>& ps, std::size_t& i) {
  if (i >= ps.size()) bad_input("missing monoid generator");
  std::string g = ps[i++];
  if (g == "cyclic_group") return cyclic_group(param(ps, i++, g, 1, 64));
  if (g == "symmetric_group") {
    param(ps, i++, g, 3, 3);
    return symmetric_group3();
  }
  if (g == "idempotent_monoid") return idempotent_monoid();
  if (g == "trivial_group") return trivial_group();
  bad_input("unknown monoid generator \"" + g + "\"");
}

FunPtr corpus_functor(const std::string& name) {
  for (const auto& [n, F] : corpus_functors())
    if (n == name) return F;
  return nullptr;
}

// φ: ℤ/n → ℤ/m given by the images of 0..n−1, by default x ↦ (m/gcd(n,m))·x.
FunPtr group_hom(int n, int m, std::vector<int> images) {
  if (images.empty()) {
    int k = m / std::gcd(n, m);
    for (int x = 0; x < n; ++x) images.push_back(k * x % m);
  }
  if (int(images.size()) != n) bad_input("group_hom: expected " + std::to_string(n) + " images");
  for (int y : images)
    if (y < 0 || y >= m) bad_input("group_hom: image " + std::to_string(y) + " is not in Z/" + std::to_string(m));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (images[(x + y) % n] != (images[x] + images[y]) % m) bad_input("group_hom: the map is not a homomorphism");
  BicatPtr SG = share(suspension(cyclic_group(n))), SH = share(suspension(cyclic_group(m)));
  return share(monoid_hom(SG, SH, images, "group_hom(" + std::to_string(n) + "," + std::to_string(m) + ")"));
}

json generate(const std::vector<std::string>& ps) {
  if (ps.empty()) bad_input("gen: missing generator");
  const std::string& g = ps[0];
  if (g == "poset") return to_json(poset(param(ps, 1, g, 0, 12)));
  if (g == "indiscrete") return to_json(indiscrete(param(ps, 1, g, 1, 8)));
  if (g == "signed_poset") return to_json(signed_poset(param(ps, 1, g, 0, 6)));
  if (g == "cyclic_group" || g == "symmetric_group" || g == "idempotent_monoid" || g == "trivial_group") {
    std::size_t i = 0;
    return to_json(suspension(monoid_gen(ps, i)));
  }
  if (g == "z2_twisted") return to_json(suspension(z2_twisted()));
  if (g == "suspension_of") {
    std::size_t i = 1;
    Monoid M = monoid_gen(ps, i);
    if (!is_commutative(M)) bad_input("suspension_of: the monoid must be commutative");
    return to_json(double_suspension(M));
  }
  if (g == "group_hom") {
    int n = param(ps, 1, g, 1, 64), m = param(ps, 2, g, 1, 64);
    std::vector<int> images;
    for (std::size_t i = 3; i < ps.size(); ++i) images.push_back(to_int(ps[i]));
    return to_json(*group_hom(n, m, images));
  }
  if (g == "corpus") {
    if (ps.size() < 2) bad_input("corpus: missing name");
    if (FunPtr F = corpus_functor(ps[1])) return to_json(*F);
    return to_json(*corpus_bicategory(ps[1]));
  }
  if (g == "hom_bidiagram") {
    if (ps.size() < 3) bad_input("hom_bidiagram: expected a corpus bicategory and an object");
    BicatPtr B = corpus_bicategory(ps[1]);
    return to_json(*hom_bidiagram(B, object_in(*B, to_int(ps[2]))));
  }
  if (g == "constant_bidiagram") {
    if (ps.size() < 2) bad_input("constant_bidiagram: missing corpus bicategory");
    return to_json(*constant_bidiagram(corpus_bicategory(ps[1])));
  }
  if (g == "fiber_bidiagram") {
    if (ps.size() < 2) bad_input("fiber_bidiagram: missing corpus functor");
    FunPtr F = corpus_functor(ps[1]);
    if (!F) bad_input("unknown corpus functor \"" + ps[1] + "\"");
    json j = to_json(*fiber_bidiagram(F)->O.dual);
    j["orientation"] = "oplax";
    return j;
  }
  bad_input("unknown generator \"" + g + "\"");
}

// "group_hom(n,m)" or "group_hom(n,m,i0,...)", a corpus functor name, or a
// laxfunctor file.
FunPtr instance(const std::string& s, Loader& L) {
  if (s.rfind("group_hom(", 0) == 0 && s.back() == ')') {
    std::vector<int> v;
    std::string body = s.substr(10, s.size() - 11);
    std::stringstream ss(body);
    for (std::string tok; std::getline(ss, tok, ',');) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      v.push_back(to_int(tok));
    }
    if (v.size() < 2) bad_input("group_hom needs n and m");
    if (v[0] < 1 || v[0] > 64 || v[1] < 1 || v[1] > 64) bad_input("group_hom: n and m must lie in [1, 64]");
    return group_hom(v[0], v[1], std::vector<int>(v.begin() + 2, v.end()));
  }
  if (FunPtr F = corpus_functor(s)) return F;
  fs::path p(s);
  if (!fs::exists(p)) bad_input("unknown instance \"" + s + "\"");
  return L.functor(L.read_file(p), p.parent_path());
}

json criteria_json(const std::vector<CriterionResult>& rs) {
  json arr = json::array();
  bool pass = true;
  for (const auto& r : rs) {
    arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    pass &= r.pass;
  }
  return {{"pass", pass}, {"criteria", arr}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite bicategories, Grothendieck constructions, homotopy fibers and nerves"};
  app.name("bicat");
  app.require_subcommand(1);

  std::string file, output;
  int over = -1, dim = 3, kmax = 2, workers = 1, mutations = 12, only = 0;
  std::size_t budget = NerveOptions{}.budget;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  bool oplax = false, both = false, direct = false, generic = false, normalized = false, chains = false,
       big = false, c5_alt = false;
  std::string inst;
  std::vector<std::string> gen_args;

  auto with_output = [&](CLI::App* s) { s->add_option("-o,--output", output, "output file (default stdout)"); };

  auto* validate = app.add_subcommand("validate", "validate a document by its schema tag");
  validate->add_option("file", file)->required();
  auto* coherence = app.add_subcommand("coherence", "check the coherence conditions of a bidiagram");
  coherence->add_option("file", file)->required();
  coherence->add_flag("--oplax", oplax, "the document is the lax dual of an oplax bidiagram");
  coherence->add_flag("--c5-alternative", c5_alt, "also check the alternative reading of C5");
  auto* groth = app.add_subcommand("groth", "Grothendieck construction of a bidiagram");
  groth->add_option("file", file)->required();
  groth->add_flag("--oplax", oplax, "the document is the lax dual of an oplax bidiagram");
  with_output(groth);
  auto* fiber = app.add_subcommand("fiber", "homotopy fiber of a lax functor");
  fiber->add_option("file", file)->required();
  fiber->add_option("--over", over, "object of the target")->required();
  auto* route = fiber->add_option_group("route");
  route->add_flag("--direct", direct, "explicit tables (default)");
  route->add_flag("--generic", generic, "Grothendieck construction of B(-,b)F");
  route->add_flag("--both", both, "build both and check the isomorphism");
  route->require_option(0, 1);
  with_output(fiber);
  auto* commacmd = app.add_subcommand("comma", "comma bicategory B over b");
  commacmd->add_option("file", file)->required();
  commacmd->add_option("--over", over, "object")->required();
  with_output(commacmd);
  auto* monfib = app.add_subcommand("monoidal-fiber", "fiber of a lax functor between suspensions");
  monfib->add_option("file", file)->required();
  with_output(monfib);
  auto* nervecmd = app.add_subcommand("nerve", "truncated geometric nerve of a bicategory");
  nervecmd->add_option("file", file)->required();
  nervecmd->add_option("--dim", dim, "truncation dimension")->check(CLI::Range(0, 6));
  nervecmd->add_option("--budget", budget, "maximum number of simplices");
  nervecmd->add_flag("--normalized", normalized, "only simplices with identity degenerate edges");
  with_output(nervecmd);
  auto* homcmd = app.add_subcommand("homology", "integral homology of a simplicial set or a bicategory's nerve");
  homcmd->add_option("file", file)->required();
  homcmd->add_option("--kmax", kmax, "top degree")->check(CLI::Range(0, 5));
  homcmd->add_option("--budget", budget, "maximum number of simplices when building a nerve");
  homcmd->add_flag("--chains", chains, "include the normalized chain complex");
  homcmd->add_flag("--big", big, "use arbitrary precision from the start");
  with_output(homcmd);
  auto* theorems = app.add_subcommand("check-theorems", "run the acceptance suite or the per-functor checks");
  theorems->add_option("--instance", inst, "group_hom(n,m[,images]), a corpus functor or a laxfunctor file");
  theorems->add_option("--seed", seed, "mutation seed");
  theorems->add_option("--mutations", mutations, "mutations per family")->check(CLI::Range(1, 1000));
  theorems->add_option("--workers", workers, "threads for independent criteria")->check(CLI::Range(1, 64));
  theorems->add_option("--only", only, "single criterion")->check(CLI::Range(1, kCriteria));
  with_output(theorems);
  auto* gen = app.add_subcommand("gen", "emit a generated example");
  gen->add_option("generator", gen_args, "generator and its parameters")->required();
  with_output(gen);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Output o{out, output};
  Loader L;
  fs::path dir = fs::path(file).parent_path();
  try {
    if (*validate) {
      json j = L.read_file(file);
      std::string s = schema_of(j);
      Report r;
      if (s == "bicategory")
        r = validate_bicategory(*L.bicategory(j, dir));
      else if (s == "laxfunctor")
        r = validate_lax_functor(*L.functor(j, dir));
      else if (s == "transformation")
        r = validate_transformation(*L.transformation(j, dir));
      else if (s == "modification")
        r = validate_modification(*L.modification(j, dir));
      else if (s == "bidiagram")
        r = check_components(*L.bidiagram(j, dir));
      else if (s == "simplicial_set")
        r = check_simplicial_identities(L.simplicial_set(j));
      else
        bad_input("unknown schema \"" + s + "\"");
      json rep = report_json(r);
      rep["schema"] = s;
      o.emit(rep);
      fail_if(rep);
    } else if (*coherence) {
      json j = L.read_file(file);
      BidiagramPtr D = L.bidiagram(j, dir);
      CoherenceOptions opt{.components = true, .c5_alternative = c5_alt};
      Report r = is_oplax(j, oplax) ? check_coherence_oplax(as_oplax(D), opt) : check_coherence(*D, opt);
      json rep = report_json(r);
      o.emit(rep);
      fail_if(rep);
    } else if (*groth) {
      json j = L.read_file(file);
      BidiagramPtr D = L.bidiagram(j, dir);
      if (is_oplax(j, oplax)) {
        OplaxGrothPtr G = grothendieck_oplax(as_oplax(D));
        o.emit(to_json(*G->total));
        o.sidecar(provenance(*G));
      } else {
        GrothPtr G = grothendieck(D);
        o.emit(to_json(*G->total));
        o.sidecar(provenance(*G));
      }
    } else if (*fiber) {
      FunPtr F = L.functor(L.read_file(file), dir);
      ObjId b = object_in(*F->tgt, over);
      if (both) {
        FiberRoutes R = fiber_routes(homotopy_fiber(F, b));
        json rep = report_json(R.report);
        rep["direct"] = {R.direct->bic->n_obj(), R.direct->bic->n_one(), R.direct->bic->n_two()};
        rep["generic"] = {R.generic->total->n_obj(), R.generic->total->n_one(), R.generic->total->n_two()};
        o.emit(rep);
        fail_if(rep);
      } else if (generic) {
        GrothPtr G = grothendieck(precompose(*hom_bidiagram(F->tgt, b), F));
        o.emit(to_json(*G->total));
        o.sidecar(provenance(*G));
      } else {
        FiberPtr H = homotopy_fiber(F, b);
        o.emit(to_json(*H->bic));
        o.sidecar(provenance(*H));
      }
    } else if (*commacmd) {
      BicatPtr B = L.bicategory(L.read_file(file), dir);
      FiberPtr H = comma(B, object_in(*B, over));
      o.emit(to_json(*H->bic));
      o.sidecar(provenance(*H));
    } else if (*monfib) {
      FiberPtr K = monoidal_fiber(L.functor(L.read_file(file), dir));
      o.emit(to_json(*K->bic));
      o.sidecar(provenance(*K));
    } else if (*nervecmd) {
      BicatPtr B = L.bicategory(L.read_file(file), dir);
      NervePtr X = nerve(B, {.N = dim, .budget = budget, .normalized = normalized});
      o.emit(to_json(X->X));
    } else if (*homcmd) {
      json j = L.read_file(file);
      SimplicialSet X;
      if (schema_of(j) == "bicategory")
        X = nerve(L.bicategory(j, dir), {.N = kmax + 1, .budget = budget})->X;
      else
        X = L.simplicial_set(j);
      if (X.N < kmax + 1) bad_input("the simplicial set is truncated below dimension " + std::to_string(kmax + 1));
      json rep = to_json(homology(X, kmax, big));
      if (chains) rep["chains"] = chain_complex_json(normalized_chains(X));
      o.emit(rep);
    } else if (*theorems) {
      json rep;
      if (!inst.empty()) {
        FunPtr F = instance(inst, L);
        rep = criteria_json(check_instance(F));
        rep["instance"] = inst;
      } else {
        AcceptanceOptions opt{.seed = seed, .mutations = mutations, .workers = workers};
        rep = criteria_json(only ? std::vector{run_criterion(only, opt)} : run_acceptance(opt));
        rep["seed"] = seed;
      }
      rep["schema"] = "check_theorems";
      o.emit(rep);
      if (!rep.at("pass").get<bool>()) {
        for (const auto& c : rep.at("criteria"))
          if (!c.at("pass").get<bool>()) throw CheckFailed{c.at("name").get<std::string>() + ": " + c.at("detail").get<std::string>()};
      }
    } else if (*gen) {
      o.emit(generate(gen_args));
    }
  } catch (const CheckFailed& f) {
    err << "check failed: " << f.first << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    static const std::vector<std::string> input_errors = {"MalformedTable", "IllTypedTerm", "SourceTargetMismatch",
                                                          "KindMismatch", "NotComposable", "NotParallel",
                                                          "UnknownName"};
    bool input = std::find(input_errors.begin(), input_errors.end(), e.kind) != input_errors.end();
    err << (input ? "malformed input: " : "check failed: ") << e.what() << "\n";
    return input ? 2 : 1;
  }
  return 0;
}

}  // namespace bicat::cli
