#include "rbisim/relation.hpp"

#include <unordered_set>

namespace rbisim {

QuadRelPtr make_extensional(std::string name, std::vector<Quad> quads) {
  auto set = std::make_shared<std::unordered_set<Quad, QuadHash>>(quads.begin(),
                                                                  quads.end());
  auto rel = std::make_shared<QuadRel>();
  rel->name = std::move(name);
  rel->contains = [set](const Quad& q) { return set->count(q) != 0; };
  rel->members = [quads = std::move(quads)]() { return quads; };
  return rel;
}

QuadRelPtr make_mask_relation(std::string name,
                              std::shared_ptr<const QuadUniverse> universe,
                              std::vector<char> mask) {
  auto m = std::make_shared<std::vector<char>>(std::move(mask));
  auto rel = std::make_shared<QuadRel>();
  rel->name = std::move(name);
  rel->contains = [universe, m](const Quad& q) {
    auto it = universe->index.find(q);
    return it != universe->index.end() && (*m)[it->second] != 0;
  };
  rel->members = [universe, m]() {
    std::vector<Quad> out;
    for (std::size_t i = 0; i < universe->quads.size(); ++i)
      if ((*m)[i]) out.push_back(universe->quads[i]);
    return out;
  };
  return rel;
}

QuadRelPtr make_intensional(std::string name,
                            std::shared_ptr<const QuadUniverse> universe,
                            std::function<bool(const Quad&)> predicate) {
  auto rel = std::make_shared<QuadRel>();
  rel->name = std::move(name);
  rel->contains = [universe, predicate](const Quad& q) {
    return universe->contains(q) && predicate(q);
  };
  rel->members = [universe, predicate]() {
    std::vector<Quad> out;
    for (const Quad& q : universe->quads)
      if (predicate(q)) out.push_back(q);
    return out;
  };
  return rel;
}

}  // namespace rbisim
