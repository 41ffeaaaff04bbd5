#pragma once

#include <memory>
#include <random>

#include "rbisim/oracle.hpp"
#include "rbisim/system.hpp"

namespace rbisim {

struct RandomSystemOptions {
  std::size_t min_states = 1;
  std::size_t max_states = 8;
  std::size_t max_obs = 3;  // observations drawn from {o0, ..., o(max_obs-1)}
};

ExplicitModel random_explicit_model(std::mt19937_64& rng,
                                    const RandomSystemOptions& opts = {});

// A contract/hardware pair with every state interned and the full quad
// universe precomputed (the full universe is trivially step-closed).
struct RandomInstance {
  TypedSystem<ExplicitModel> C;
  TypedSystem<ExplicitModel> H;
  std::shared_ptr<const QuadUniverse> universe;
};

RandomInstance random_instance(std::mt19937_64& rng,
                               const RandomSystemOptions& opts = {});

}  // namespace rbisim
