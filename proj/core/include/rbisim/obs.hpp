#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbisim/hash.hpp"

namespace rbisim {

// Closed tagged union of observation kinds shared by every semantics.
// One alphabet means one structural equality and one oracle.
struct Obs {
  enum class Kind : std::uint8_t {
    Unit,     // the "nothing interesting" observation
    Address,  // leaked memory address
    Branch,   // branch condition outcome
    Cache,    // snapshot of the cache, most-recent first
    Halt,     // distinguished termination observation
    Named,    // free-form symbol, used by hand-built systems and fuzzing
  };

  Kind kind = Kind::Unit;
  std::int64_t value = 0;            // Address payload; Branch stores 0/1
  std::vector<std::uint32_t> cache;  // Cache payload
  std::string name;                  // Named payload

  static Obs unit() { return Obs{}; }
  static Obs address(std::int64_t adr) {
    Obs o;
    o.kind = Kind::Address;
    o.value = adr;
    return o;
  }
  static Obs branch(bool taken_zero) {
    Obs o;
    o.kind = Kind::Branch;
    o.value = taken_zero ? 1 : 0;
    return o;
  }
  static Obs cache_snapshot(std::vector<std::uint32_t> c) {
    Obs o;
    o.kind = Kind::Cache;
    o.cache = std::move(c);
    return o;
  }
  static Obs halt() {
    Obs o;
    o.kind = Kind::Halt;
    return o;
  }
  static Obs named(std::string symbol) {
    Obs o;
    o.kind = Kind::Named;
    o.name = std::move(symbol);
    return o;
  }

  bool operator==(const Obs& other) const {
    return kind == other.kind && value == other.value && cache == other.cache &&
           name == other.name;
  }
  bool operator!=(const Obs& other) const { return !(*this == other); }

  std::string to_string() const;
};

struct ObsHash {
  std::size_t operator()(const Obs& o) const {
    std::size_t h = hash_combine(static_cast<std::size_t>(o.kind),
                                 static_cast<std::size_t>(o.value));
    h = hash_range(o.cache.begin(), o.cache.end(), h);
    if (!o.name.empty()) h = hash_combine(h, hash_value(o.name));
    return h;
  }
};

}  // namespace rbisim
