#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgamma/errors.hpp"

namespace qgamma::checks {

/// Outcome of one acceptance criterion. `worst` is the largest violation
/// measure observed; the criterion passes iff worst <= tolerance.
struct CriterionResult {
  std::string name;
  std::string suite;
  bool pass = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

const std::vector<std::string>& suites();

/// Runs the acceptance criteria (all, or only those tagged with `suite`).
/// Deterministic for a fixed seed. Throws Error on an unknown suite name.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::string& suite = "all");

struct AuditOutcome {
  bool pass = false;
  double worst = 0.0;
  double tolerance = 0.0;
  long worst_trial = -1;
  std::uint64_t worst_seed = 0;
};

/// Randomized audits behind the CLI: kind is one of monotone, convexity,
/// duality, cosine, quasi, pythagoras. A fixed gamma overrides the per-trial
/// grid. Throws Error on an unknown kind or nonpositive trials.
AuditOutcome run_audit(const std::string& kind, long trials, int dim, std::uint64_t seed,
                       std::optional<double> gamma);

}  // namespace qgamma::checks
