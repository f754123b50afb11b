#pragma once

#include <cstdint>

#include "bicat/fiber.hpp"

namespace bicat {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20261018;
  int mutations = 12;  // per mutated family
  int workers = 1;     // criteria run concurrently on this many threads
};

// Tolerances are exact equality throughout; the runtime bounds are the
// only numeric limits.
inline constexpr double kClosureSeconds = 60.0;
inline constexpr double kContractibilitySeconds = 120.0;

// One result per acceptance criterion, in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
inline constexpr int kCriteria = 12;

// The fiber-level checks on a single lax functor: validity, fiber tables,
// route isomorphism, coherence of b ↦ F↓b, Q∘L = 1 with ι, the
// comparison diagrams and contractibility of the target's commas.
std::vector<CriterionResult> check_instance(FunPtr F);

// Mutation oracles. A mutation replaces one table entry by the other
// element of a two-element hom-set; all three families are checked
// against a prediction computed without the checker.
struct Mutation {
  std::string family;  // "pentagon", "C6", "admission"
  std::string where;
  bool detected = false;   // the checker reported something
  bool localized = false;  // the report equals the prediction
};
std::vector<Mutation> run_mutations(std::uint64_t seed, int per_family);

}  // namespace bicat
