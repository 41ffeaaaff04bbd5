#include "rbisim/upto.hpp"

#include <random>

namespace rbisim {

namespace {

bool eq_traces(const System& t, StateId a, StateId b, std::size_t budget) {
  return traces_equal(t, a, b, budget).equal;
}

std::vector<UpToFunction> build_registry() {
  using Status = UpToFunction::Status;
  std::vector<UpToFunction> fns;

  // f(R) = {(s2,s1,h1,h2) | (s1,s2,h1,h2) in R}
  fns.push_back(UpToFunction{
      "c-swap", Status::CompatibilityProven,
      [](const System&, const System&, const Quad& g, const Quad& w,
         std::size_t) {
        return g == Quad{w.s2, w.s1, w.h1, w.h2};
      },
      [](const System&, const System&, const QuadUniverse& u,
         const std::vector<char>& x, std::size_t) {
        std::vector<char> out(u.size(), 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (!x[i]) continue;
          const Quad& q = u.quads[i];
          Quad img{q.s2, q.s1, q.h1, q.h2};
          auto it = u.index.find(img);
          if (it != u.index.end()) out[it->second] = 1;
        }
        return out;
      }});

  // f(R) = {(s1,s2,h2,h1) | (s1,s2,h1,h2) in R}
  fns.push_back(UpToFunction{
      "h-swap", Status::CompatibilityProven,
      [](const System&, const System&, const Quad& g, const Quad& w,
         std::size_t) {
        return g == Quad{w.s1, w.s2, w.h2, w.h1};
      },
      [](const System&, const System&, const QuadUniverse& u,
         const std::vector<char>& x, std::size_t) {
        std::vector<char> out(u.size(), 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (!x[i]) continue;
          const Quad& q = u.quads[i];
          Quad img{q.s1, q.s2, q.h2, q.h1};
          auto it = u.index.find(img);
          if (it != u.index.end()) out[it->second] = 1;
        }
        return out;
      }});

  // f(R) = {(s1',s2',h1,h2) | exists (s1,s2,h1,h2) in R with s1 ~ s1', s2 ~ s2'}
  fns.push_back(UpToFunction{
      "c-leak-eq", Status::CompatibilityProven,
      [](const System& c, const System&, const Quad& g, const Quad& w,
         std::size_t budget) {
        return g.h1 == w.h1 && g.h2 == w.h2 &&
               eq_traces(c, g.s1, w.s1, budget) &&
               eq_traces(c, g.s2, w.s2, budget);
      },
      [](const System& c, const System&, const QuadUniverse& u,
         const std::vector<char>& x, std::size_t budget) {
        std::vector<char> out(u.size(), 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (out[i]) continue;
          const Quad& g = u.quads[i];
          for (std::size_t j = 0; j < u.size(); ++j) {
            if (!x[j]) continue;
            const Quad& w = u.quads[j];
            if (g.h1 == w.h1 && g.h2 == w.h2 &&
                eq_traces(c, g.s1, w.s1, budget) &&
                eq_traces(c, g.s2, w.s2, budget)) {
              out[i] = 1;
              break;
            }
          }
        }
        return out;
      }});

  // f(R) = {(s1,s2,h1',h2') | exists (s1,s2,h1,h2) in R with h1 ~ h1', h2 ~ h2'}
  fns.push_back(UpToFunction{
      "h-leak-eq", Status::CompatibilityProven,
      [](const System&, const System& h, const Quad& g, const Quad& w,
         std::size_t budget) {
        return g.s1 == w.s1 && g.s2 == w.s2 &&
               eq_traces(h, g.h1, w.h1, budget) &&
               eq_traces(h, g.h2, w.h2, budget);
      },
      [](const System&, const System& h, const QuadUniverse& u,
         const std::vector<char>& x, std::size_t budget) {
        std::vector<char> out(u.size(), 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (out[i]) continue;
          const Quad& g = u.quads[i];
          for (std::size_t j = 0; j < u.size(); ++j) {
            if (!x[j]) continue;
            const Quad& w = u.quads[j];
            if (g.s1 == w.s1 && g.s2 == w.s2 &&
                eq_traces(h, g.h1, w.h1, budget) &&
                eq_traces(h, g.h2, w.h2, budget)) {
              out[i] = 1;
              break;
            }
          }
        }
        return out;
      }});

  // f(R) = {(s1,s2,h1,h2) | exists (s1',s2',h1,h2) in R with the contract
  // quintuple (s1,s2,s1',s2') provable}. The oracle stands in for provability
  // here (sound and complete on finite instances).
  fns.push_back(UpToFunction{
      "reduce-c-leakage", Status::CompatibilityProven,
      [](const System& c, const System&, const Quad& g, const Quad& w,
         std::size_t budget) {
        return g.h1 == w.h1 && g.h2 == w.h2 &&
               rel_trace_eq(c, c, Quad{g.s1, g.s2, w.s1, w.s2}, budget);
      },
      [](const System& c, const System&, const QuadUniverse& u,
         const std::vector<char>& x, std::size_t budget) {
        std::vector<char> out(u.size(), 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
          const Quad& g = u.quads[i];
          for (std::size_t j = 0; j < u.size() && !out[i]; ++j) {
            if (!x[j]) continue;
            const Quad& w = u.quads[j];
            if (g.h1 == w.h1 && g.h2 == w.h2 &&
                rel_trace_eq(c, c, Quad{g.s1, g.s2, w.s1, w.s2}, budget))
              out[i] = 1;
          }
        }
        return out;
      }});

  // f(R) = {(s1,s2,h1,h2) | exists (s1,s2,h1',h2') in R with the lockstep
  // quintuple (h1',h2',h1,h2) provable}. Lockstep provability is decided
  // exactly via the lockstep gfp; the lockstep restriction is what keeps this
  // function compatible.
  fns.push_back(UpToFunction{
      "augment-h-leakage", Status::CompatibilityProven,
      [](const System&, const System& h, const Quad& g, const Quad& w,
         std::size_t budget) {
        return g.s1 == w.s1 && g.s2 == w.s2 &&
               lockstep_provable(h, Quad{w.h1, w.h2, g.h1, g.h2}, budget);
      },
      [](const System&, const System& h, const QuadUniverse& u,
         const std::vector<char>& x, std::size_t budget) {
        std::vector<char> out(u.size(), 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
          const Quad& g = u.quads[i];
          for (std::size_t j = 0; j < u.size() && !out[i]; ++j) {
            if (!x[j]) continue;
            const Quad& w = u.quads[j];
            if (g.s1 == w.s1 && g.s2 == w.s2 &&
                lockstep_provable(h, Quad{w.h1, w.h2, g.h1, g.h2}, budget))
              out[i] = 1;
          }
        }
        return out;
      }});

  // Deliberately incompatible sandbox: replaces any relation by the full
  // universe. Exists so the compatibility checker has a true negative.
  fns.push_back(UpToFunction{
      "top", Status::TestOnly,
      [](const System&, const System&, const Quad&, const Quad&, std::size_t) {
        return true;
      },
      [](const System&, const System&, const QuadUniverse& u,
         const std::vector<char>&, std::size_t) {
        return std::vector<char>(u.size(), 1);
      }});

  return fns;
}

}  // namespace

const std::vector<UpToFunction>& upto_registry() {
  static const std::vector<UpToFunction> registry = build_registry();
  return registry;
}

const UpToFunction* find_upto(const std::string& name) {
  for (const auto& f : upto_registry())
    if (f.name == name) return &f;
  return nullptr;
}

Goal apply_upto(const System& c, const System& h, const Goal& g,
                const UpToFunction& f, const Quad& witness,
                std::size_t budget) {
  if (find_upto(f.name) == nullptr)
    throw UpToError("up-to function not registered: " + f.name);
  if (f.status != UpToFunction::Status::CompatibilityProven)
    throw UpToError("up-to function lacks a compatibility proof: " + f.name);
  if (!f.in_image_of(c, h, g.quad, witness, budget))
    throw UpToError("witness mismatch: goal quad is not in " + f.name +
                    "({witness})");
  Goal out = g;
  out.quad = witness;  // guardedness preserved
  return out;
}

Goal apply_leak_eq(const System& c, const System& h, QuadSlot slot,
                   const Goal& g, StateId replacement,
                   const PairGraphVerdict& claimed, std::size_t budget) {
  if (!claimed.equal)
    throw UpToError("leak-eq: claimed equivalence verdict is negative");
  const System& side =
      (slot == QuadSlot::S1 || slot == QuadSlot::S2) ? c : h;
  StateId original = slot == QuadSlot::S1   ? g.quad.s1
                     : slot == QuadSlot::S2 ? g.quad.s2
                     : slot == QuadSlot::H1 ? g.quad.h1
                                            : g.quad.h2;
  if (!traces_equal(side, original, replacement, budget).equal)
    throw UpToError("leak-eq: equivalence not established by the oracle");
  Goal out = g;
  switch (slot) {
    case QuadSlot::S1: out.quad.s1 = replacement; break;
    case QuadSlot::S2: out.quad.s2 = replacement; break;
    case QuadSlot::H1: out.quad.h1 = replacement; break;
    case QuadSlot::H2: out.quad.h2 = replacement; break;
  }
  return out;
}

bool lockstep_provable(const System& h, const Quad& q, std::size_t budget) {
  Quad seeds[] = {q};
  QuadUniverse u = QuadUniverse::close(h, h, seeds, budget);
  auto mask = compute_rbisim_lockstep(h, h, u);
  return mask[u.at(q)] != 0;
}

std::vector<char> rbisimF_apply(const System& c, const System& h,
                                const QuadUniverse& u,
                                const std::vector<char>& outer) {
  const std::size_t n = u.size();
  std::vector<char> inner(n, 0);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (inner[i]) continue;
      const Quad& q = u.quads[i];
      bool in = c.leak_id(q.s1) != c.leak_id(q.s2);
      if (!in) {
        Quad qc = c_step(c, q);
        auto it = u.index.find(qc);
        if (it == u.index.end())
          throw NotClosed("rbisimF_apply: universe not closed under c-step");
        in = inner[it->second] != 0;
      }
      if (!in && h.leak_id(q.h1) == h.leak_id(q.h2)) {
        Quad qh = h_step(h, q);
        auto it = u.index.find(qh);
        if (it == u.index.end())
          throw NotClosed("rbisimF_apply: universe not closed under h-step");
        in = outer[it->second] != 0;
      }
      if (in) {
        inner[i] = 1;
        grew = true;
      }
    }
  }
  return inner;
}

CompatReport check_compatibility(const UpToFunction& f, const System& c,
                                 const System& h, const QuadUniverse& u,
                                 std::size_t samples, std::uint64_t seed,
                                 std::size_t budget) {
  CompatReport report;
  report.samples = samples;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<char> x(u.size());
    for (auto& b : x) b = static_cast<char>(rng() & 1);
    auto fx = f.transform(c, h, u, x, budget);
    auto Fx = rbisimF_apply(c, h, u, x);
    auto fFx = f.transform(c, h, u, Fx, budget);
    auto Ffx = rbisimF_apply(c, h, u, fx);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (fFx[i] && !Ffx[i]) {
        report.passed = false;
        report.violations.push_back(CompatViolation{s, u.quads[i]});
        break;
      }
    }
  }
  return report;
}

}  // namespace rbisim
