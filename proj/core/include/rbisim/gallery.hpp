#pragma once

#include <string>
#include <vector>

#include "rbisim/report.hpp"

namespace rbisim {

// Built-in tiny hand-constructed counterexamples. Each entry asserts the
// exact claim it exists to demonstrate; the report's ok flag reflects whether
// every assertion held.
//   lockstep-incomplete    relative trace equality holds but the lockstep
//                          bisimulation misses the quad
//   relaxed-vacuous        the relaxed (decoupled, fully coinductive) variant
//                          accepts every quad of a random instance
//   augment-unsound        composing a non-lockstep side derivation through
//                          hardware-leakage augmentation would prove a false
//                          quad; the restricted rule rejects it
//   guarded-cycle-rejected closing a cycle without an intervening hardware
//                          step is rejected by the kernel
std::vector<std::string> gallery_names();

Report run_counterexample(const std::string& name);  // ConfigError if unknown

}  // namespace rbisim
