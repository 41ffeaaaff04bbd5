#pragma once

#include "rbisim/system.hpp"

namespace rbisim::testutil {

// Interns every node of a hand-built explicit graph up front, so state ids
// coincide with node indices.
inline System make_explicit(ExplicitModel m) {
  std::size_t n = m.nodes.size();
  TypedSystem<ExplicitModel> t(std::move(m));
  for (std::uint32_t i = 0; i < n; ++i) t.intern(i);
  return t;
}

}  // namespace rbisim::testutil
