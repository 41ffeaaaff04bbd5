#pragma once

#include "rbisim/random_system.hpp"
#include "rbisim/report.hpp"

namespace rbisim {

struct FuzzOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  RandomSystemOptions system;
  std::size_t scripts_per_trial = 5;   // adversarial random scripts
  std::size_t derived_per_trial = 3;   // oracle-true quads run through derive+check
  std::size_t max_findings = 10;       // verdict lines kept in the report
};

// Differential loop: per trial, generate a random instance and check
//   1. fixpoint membership == brute-force relative trace equality, every quad;
//   2. derived scripts for oracle-true quads are accepted;
//   3. random scripts that the kernel accepts never contradict the oracle.
// Deterministic given (seed, options). Throws ConfigError if trials == 0.
Report fuzz_differential(const FuzzOptions& opts = {});

}  // namespace rbisim
