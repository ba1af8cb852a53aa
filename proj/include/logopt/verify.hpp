#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logopt/model.hpp"

namespace logopt {

struct VerifyConfig {
  std::uint64_t seed = 20240611;
  /// Multiplies every tolerance-type threshold; 1e-6 is a fault injection.
  double tolerance_scale = 1.0;
  std::vector<std::string> suites;  ///< empty: all suites
};

/// bounds, solver, strict, energy, surgery, advantage, superlinearity,
/// optimal, series.
const std::vector<std::string>& suite_names();

/// Report {"seed", "tolerance_scale", "passed", "suites": [{"name", "passed",
/// "invariants": [{"name", "passed", "measured", "threshold"}], "details"}]}.
/// Contains no timings; identical configs give identical reports.
nlohmann::json run_verify(const VerifyConfig& config);

/// Uniform double in [0, 1) from the top 53 bits.
double u01(std::uint64_t bits);

/// Random bang-bang resource with 1 to 4 intervals on (0, L), L in
/// [0.5, 5], and mu log-uniform in [0.1, 10].
struct RandomCase {
  BangBangResource resource;
  double mu;
};
std::vector<RandomCase> random_cases(std::uint64_t seed, int count);

}  // namespace logopt
