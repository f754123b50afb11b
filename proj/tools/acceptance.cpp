#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "bicat/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria, one line each"};
  bicat::AcceptanceOptions opt;
  int only = 0;
  app.add_option("--seed", opt.seed, "mutation seed");
  app.add_option("--mutations", opt.mutations, "mutations per family");
  app.add_option("--only", only, "run a single criterion");
  CLI11_PARSE(app, argc, argv);

  std::vector<bicat::CriterionResult> rs;
  if (only)
    rs.push_back(bicat::run_criterion(only, opt));
  else
    rs = bicat::run_acceptance(opt);
  int failed = 0;
  for (const auto& r : rs) {
    failed += !r.pass;
    std::printf("[%s] %2d %s (%.2fs): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
  }
  std::printf("%d/%zu criteria pass\n", int(rs.size()) - failed, rs.size());
  return failed ? 1 : 0;
}
