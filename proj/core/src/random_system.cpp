#include "rbisim/random_system.hpp"

namespace rbisim {

ExplicitModel random_explicit_model(std::mt19937_64& rng,
                                    const RandomSystemOptions& opts) {
  std::uniform_int_distribution<std::size_t> size_dist(opts.min_states,
                                                       opts.max_states);
  std::size_t n = size_dist(rng);
  std::uniform_int_distribution<std::uint32_t> succ_dist(
      0, static_cast<std::uint32_t>(n - 1));
  std::uniform_int_distribution<std::size_t> obs_dist(0, opts.max_obs - 1);
  ExplicitModel m;
  m.nodes.resize(n);
  for (auto& node : m.nodes) {
    node.succ = succ_dist(rng);
    node.obs = Obs::named("o" + std::to_string(obs_dist(rng)));
  }
  return m;
}

RandomInstance random_instance(std::mt19937_64& rng,
                               const RandomSystemOptions& opts) {
  RandomInstance inst;
  inst.C = TypedSystem<ExplicitModel>(random_explicit_model(rng, opts));
  inst.H = TypedSystem<ExplicitModel>(random_explicit_model(rng, opts));
  for (std::uint32_t i = 0; i < inst.C.model().nodes.size(); ++i) inst.C.intern(i);
  for (std::uint32_t i = 0; i < inst.H.model().nodes.size(); ++i) inst.H.intern(i);
  inst.universe =
      std::make_shared<QuadUniverse>(QuadUniverse::full(inst.C, inst.H));
  return inst;
}

}  // namespace rbisim
