#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rbisim/oracle.hpp"
#include "rbisim/quad.hpp"

namespace rbisim {

// A named quad relation with decidable membership and an enumerator over the
// instance's finite universe. Extensional and intensional views share this
// interface.
struct QuadRel {
  std::string name;
  std::function<bool(const Quad&)> contains;
  std::function<std::vector<Quad>()> members;
};

using QuadRelPtr = std::shared_ptr<const QuadRel>;

QuadRelPtr make_extensional(std::string name, std::vector<Quad> quads);

// Membership mask over a shared universe (e.g. a computed fixpoint).
QuadRelPtr make_mask_relation(std::string name,
                              std::shared_ptr<const QuadUniverse> universe,
                              std::vector<char> mask);

// Predicate restricted to a supplied finite universe.
QuadRelPtr make_intensional(std::string name,
                            std::shared_ptr<const QuadUniverse> universe,
                            std::function<bool(const Quad&)> predicate);

// Named relations a proof script may refer to.
struct Registry {
  std::vector<QuadRelPtr> items;

  void add(QuadRelPtr rel) { items.push_back(std::move(rel)); }
  QuadRelPtr find(const std::string& name) const {
    for (const auto& r : items)
      if (r->name == name) return r;
    return nullptr;
  }
};

}  // namespace rbisim
