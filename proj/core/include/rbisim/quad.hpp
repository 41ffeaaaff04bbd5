#pragma once

#include <cstdint>

#include "rbisim/hash.hpp"
#include "rbisim/system.hpp"

namespace rbisim {

// (s1, s2, h1, h2): two contract states, two hardware states.
struct Quad {
  StateId s1 = kNoState;
  StateId s2 = kNoState;
  StateId h1 = kNoState;
  StateId h2 = kNoState;

  bool operator==(const Quad& o) const {
    return s1 == o.s1 && s2 == o.s2 && h1 == o.h1 && h2 == o.h2;
  }
  bool operator!=(const Quad& o) const { return !(*this == o); }
};

struct QuadHash {
  std::size_t operator()(const Quad& q) const {
    std::size_t h = hash_combine(q.s1, q.s2);
    h = hash_combine(h, q.h1);
    return hash_combine(h, q.h2);
  }
};

// Componentwise successor maps; a quad universe must be closed under both.
inline Quad c_step(const System& c, const Quad& q) {
  return Quad{c.next(q.s1), c.next(q.s2), q.h1, q.h2};
}
inline Quad h_step(const System& h, const Quad& q) {
  return Quad{q.s1, q.s2, h.next(q.h1), h.next(q.h2)};
}

}  // namespace rbisim
