#include "rbisim/oracle.hpp"

#include <unordered_set>

namespace rbisim {

PairGraphVerdict traces_equal(const System& t, StateId s1, StateId s2,
                              std::size_t budget) {
  std::unordered_set<std::uint64_t> seen;
  std::size_t k = 0;
  for (;;) {
    if (s1 == s2) return {true, std::nullopt};
    if (t.leak_id(s1) != t.leak_id(s2)) return {false, k};
    if (!seen.insert(t.pair_key(s1, s2)).second) return {true, std::nullopt};
    if (seen.size() > budget)
      throw BudgetExceeded("traces_equal: pair set exceeded budget " +
                           std::to_string(budget));
    s1 = t.next(s1);
    s2 = t.next(s2);
    ++k;
  }
}

bool rel_trace_eq(const System& c, const System& h, const Quad& q,
                  std::size_t budget) {
  if (!traces_equal(c, q.s1, q.s2, budget).equal) return true;
  return traces_equal(h, q.h1, q.h2, budget).equal;
}

// ---------------------------------------------------------------------------

void PairUniverse::add(const StatePair& p) {
  if (index.emplace(p, static_cast<std::uint32_t>(items.size())).second)
    items.push_back(p);
}

PairUniverse PairUniverse::close(const System& t, std::span<const StatePair> seeds,
                                 std::size_t budget) {
  PairUniverse u;
  for (const auto& p : seeds) u.add(p);
  for (std::size_t i = 0; i < u.items.size(); ++i) {
    StatePair p = u.items[i];
    u.add(StatePair{t.next(p.a), t.next(p.b)});
    if (u.items.size() > budget)
      throw BudgetExceeded("pair universe exceeded budget " +
                           std::to_string(budget));
  }
  return u;
}

PairUniverse PairUniverse::full(const System& t) {
  PairUniverse u;
  auto n = static_cast<StateId>(t.size());
  for (StateId a = 0; a < n; ++a)
    for (StateId b = 0; b < n; ++b) u.add(StatePair{a, b});
  return u;
}

std::vector<char> compute_bisim(const System& t, const PairUniverse& universe) {
  const std::size_t n = universe.size();
  std::vector<std::uint32_t> succ(n);
  for (std::size_t i = 0; i < n; ++i) {
    StatePair p = universe.items[i];
    StatePair np{t.next(p.a), t.next(p.b)};
    if (!universe.contains(np))
      throw NotClosed("pair universe not closed under next");
    succ[i] = universe.at(np);
  }
  std::vector<char> in(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in[i]) continue;
      StatePair p = universe.items[i];
      bool keep = t.leak_id(p.a) == t.leak_id(p.b) && in[succ[i]];
      if (!keep) {
        in[i] = 0;
        changed = true;
      }
    }
  }
  return in;
}

// ---------------------------------------------------------------------------

void QuadUniverse::add(const Quad& q) {
  if (index.emplace(q, static_cast<std::uint32_t>(quads.size())).second)
    quads.push_back(q);
}

QuadUniverse QuadUniverse::close(const System& c, const System& h,
                                 std::span<const Quad> seeds,
                                 std::size_t budget) {
  QuadUniverse u;
  for (const auto& q : seeds) u.add(q);
  for (std::size_t i = 0; i < u.quads.size(); ++i) {
    Quad q = u.quads[i];
    u.add(c_step(c, q));
    u.add(h_step(h, q));
    if (u.quads.size() > budget)
      throw BudgetExceeded("quad universe exceeded budget " +
                           std::to_string(budget));
  }
  return u;
}

QuadUniverse QuadUniverse::full(const System& c, const System& h) {
  QuadUniverse u;
  auto nc = static_cast<StateId>(c.size());
  auto nh = static_cast<StateId>(h.size());
  for (StateId s1 = 0; s1 < nc; ++s1)
    for (StateId s2 = 0; s2 < nc; ++s2)
      for (StateId h1 = 0; h1 < nh; ++h1)
        for (StateId h2 = 0; h2 < nh; ++h2) u.add(Quad{s1, s2, h1, h2});
  return u;
}

namespace {

struct QuadSuccessors {
  std::vector<std::uint32_t> cs;  // index of c_step(q)
  std::vector<std::uint32_t> hs;  // index of h_step(q)
  std::vector<char> cleak_neq;    // leak_C(s1) != leak_C(s2)
  std::vector<char> hleak_eq;     // leak_H(h1) == leak_H(h2)
};

QuadSuccessors precompute(const System& c, const System& h,
                          const QuadUniverse& u) {
  const std::size_t n = u.size();
  QuadSuccessors p;
  p.cs.resize(n);
  p.hs.resize(n);
  p.cleak_neq.resize(n);
  p.hleak_eq.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Quad& q = u.quads[i];
    Quad qc = c_step(c, q);
    Quad qh = h_step(h, q);
    if (!u.contains(qc) || !u.contains(qh))
      throw NotClosed("quad universe not closed under successor maps");
    p.cs[i] = u.at(qc);
    p.hs[i] = u.at(qh);
    p.cleak_neq[i] = c.leak_id(q.s1) != c.leak_id(q.s2);
    p.hleak_eq[i] = h.leak_id(q.h1) == h.leak_id(q.h2);
  }
  return p;
}

}  // namespace

std::vector<char> compute_rbisim_lockstep(const System& c, const System& h,
                                          const QuadUniverse& universe) {
  auto p = precompute(c, h, universe);
  const std::size_t n = universe.size();
  // Lockstep steps all four components together.
  std::vector<std::uint32_t> step4(n);
  for (std::size_t i = 0; i < n; ++i) step4[i] = p.hs[p.cs[i]];
  std::vector<char> in(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in[i]) continue;
      bool keep = p.cleak_neq[i] || (p.hleak_eq[i] && in[step4[i]]);
      if (!keep) {
        in[i] = 0;
        changed = true;
      }
    }
  }
  return in;
}

std::vector<char> compute_rbisim_relaxed(const System& c, const System& h,
                                         const QuadUniverse& universe) {
  auto p = precompute(c, h, universe);
  const std::size_t n = universe.size();
  std::vector<char> in(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in[i]) continue;
      bool keep = p.cleak_neq[i] || in[p.cs[i]] || (p.hleak_eq[i] && in[p.hs[i]]);
      if (!keep) {
        in[i] = 0;
        changed = true;
      }
    }
  }
  return in;
}

RbisimResult compute_rbisim(const System& c, const System& h,
                            const QuadUniverse& universe) {
  auto p = precompute(c, h, universe);
  const std::size_t n = universe.size();
  RbisimResult r;
  r.in.assign(n, 1);  // outer nu starts from the full set
  std::vector<char> inner(n);
  std::vector<std::uint32_t> rank(n);
  std::vector<RbisimResult::Why> why(n);
  for (;;) {
    // Inner mu from the empty set, from scratch (no warm start).
    std::fill(inner.begin(), inner.end(), 0);
    std::fill(rank.begin(), rank.end(), 0);
    std::fill(why.begin(), why.end(), RbisimResult::Why::None);
    std::uint32_t seq = 0;  // admission order; strictly increases, and a quad
                            // admitted via C-Step has a successor admitted
                            // strictly earlier (well-founded for derive_proof)
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (inner[i]) continue;
        RbisimResult::Why w = RbisimResult::Why::None;
        if (p.cleak_neq[i]) {
          w = RbisimResult::Why::CLeak;
        } else if (inner[p.cs[i]]) {
          w = RbisimResult::Why::CStep;
        } else if (p.hleak_eq[i] && r.in[p.hs[i]]) {
          w = RbisimResult::Why::HStep;
        }
        if (w != RbisimResult::Why::None) {
          inner[i] = 1;
          rank[i] = ++seq;
          why[i] = w;
          grew = true;
        }
      }
    }
    if (inner == r.in) break;  // outer iterate is monotone decreasing
    r.in = inner;
  }
  r.rank = std::move(rank);
  r.why = std::move(why);
  return r;
}

}  // namespace rbisim
