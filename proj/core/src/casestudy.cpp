#include "rbisim/casestudy.hpp"

#include <chrono>
#include <deque>
#include <unordered_set>

#include "rbisim/errors.hpp"

namespace rbisim {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Per-state facts the collapsed checks operate on. Contract states carry a
// leak id, hardware states the cache delta their step appends (-1 = none).
struct PosInfo {
  ObsId leak = kNoObs;
  std::int64_t delta = -1;
  bool plain = false;      // non-speculating / buffer empty
  std::uint32_t pc = 0;    // contract side only
  std::uint32_t arch = 0;  // interned architectural state
};

// One run: the deterministic path from an initial state up to the first
// revisit (a lasso), as indices into a per-state info table.
struct Run {
  std::vector<std::uint32_t> pos;  // state info ids along the path
  // Architectural ids relabeled per initial state (first-appearance order
  // across its contract run then its hardware run). The invariant only ever
  // compares architectures between the two runs of the same initial state,
  // so local labels preserve every comparison while letting initial states
  // that differ only in never-observed data share one run class.
  std::vector<std::uint32_t> arch_local;
  std::uint32_t loop_start = 0;

  std::uint32_t advance(std::uint32_t p) const {
    return p + 1 < pos.size() ? p + 1 : loop_start;
  }
};

// Minimal stem + primitive cycle of an eventually-periodic value sequence;
// two runs denote equal infinite sequences iff their canonical forms match.
std::vector<std::int64_t> canonical_sequence(const Run& r,
                                             const std::vector<PosInfo>& info,
                                             bool hardware) {
  std::vector<std::int64_t> seq;
  seq.reserve(r.pos.size());
  for (std::uint32_t p : r.pos)
    seq.push_back(hardware ? info[p].delta
                           : static_cast<std::int64_t>(info[p].leak));
  std::vector<std::int64_t> stem(seq.begin(), seq.begin() + r.loop_start);
  std::vector<std::int64_t> cycle(seq.begin() + r.loop_start, seq.end());
  std::size_t n = cycle.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i)
      periodic = cycle[i] == cycle[i - p];
    if (periodic) {
      cycle.resize(p);
      break;
    }
  }
  while (!stem.empty() && stem.back() == cycle.back()) {
    stem.pop_back();
    cycle.insert(cycle.begin(), cycle.back());
    cycle.pop_back();
  }
  std::vector<std::int64_t> key;
  key.reserve(stem.size() + cycle.size() + 1);
  key.push_back(static_cast<std::int64_t>(stem.size()));
  key.insert(key.end(), stem.begin(), stem.end());
  key.insert(key.end(), cycle.begin(), cycle.end());
  return key;
}

struct Int64VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    return hash_range(v.begin(), v.end(), std::size_t{0xc0ffee});
  }
};

// The bounded derivation search for one ordered pair of run classes,
// replicating check_invariant_closure over the collapsed representation:
// rounds of at most c_budget contract steps, separated by hardware steps,
// terminated by a contract-leak mismatch or by landing back in the invariant.
// Cache equality along the hardware walk is a single boolean: the invariant
// starts from equal caches, a hardware step is only enabled while they are
// equal (the leak is the cache), and once the per-step deltas diverge no
// further hardware step can re-enable it within the search.
struct PairSearch {
  const std::vector<PosInfo>& cinfo;
  const std::vector<PosInfo>& hinfo;
  const Run &A, &B, &X, &Y;
  std::size_t c_budget, h_budget, joint_budget;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> cp, hp;
  std::vector<std::uint32_t> cnext, hnext;
  std::vector<char> heq;  // joint hardware positions realized with equal caches
  std::unordered_map<std::uint64_t, std::size_t> failed;

  PairSearch(const std::vector<PosInfo>& cinfo,
             const std::vector<PosInfo>& hinfo, const Run& A, const Run& B,
             const Run& X, const Run& Y, std::size_t c_budget,
             std::size_t h_budget, std::size_t joint_budget)
      : cinfo(cinfo), hinfo(hinfo), A(A), B(B), X(X), Y(Y),
        c_budget(c_budget), h_budget(h_budget), joint_budget(joint_budget) {
    build_joint(A, B, cp, cnext);
    build_joint(X, Y, hp, hnext);
    compute_heq();
  }

  void build_joint(const Run& L, const Run& R,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>>& pts,
                   std::vector<std::uint32_t>& next) const {
    std::unordered_map<std::uint64_t, std::uint32_t> idx;
    std::uint32_t pa = 0, pb = 0;
    for (;;) {
      std::uint64_t key = (static_cast<std::uint64_t>(pa) << 32) | pb;
      auto it = idx.find(key);
      if (it != idx.end()) {
        next.back() = it->second;
        break;
      }
      if (pts.size() >= joint_budget)
        throw BudgetExceeded("case study joint walk exceeds budget");
      idx.emplace(key, static_cast<std::uint32_t>(pts.size()));
      if (!pts.empty()) next.back() = static_cast<std::uint32_t>(pts.size());
      pts.emplace_back(pa, pb);
      next.push_back(0);
      pa = L.advance(pa);
      pb = R.advance(pb);
    }
  }

  // Walk the joint hardware lasso tracking the cache difference as a queue of
  // unmatched deltas (at most one side pending; a front mismatch is
  // permanent). A joint position is marked when some visit reaches it with
  // caches equal.
  // Termination: if the pending queue repeats at a position the walk is
  // periodic; if it keeps growing, then once we are inside the joint loop
  // with more pending items than one loop traversal can cancel (appends per
  // traversal are bounded by its length) the caches can never re-equalize.
  void compute_heq() {
    heq.assign(hp.size(), 0);
    std::deque<std::int64_t> dx, dy;
    std::unordered_set<std::string> seen;
    std::size_t k = hp.size();
    std::size_t stop_size = 2 * k + 4;
    std::size_t max_iter = 64 * k + 4096;
    std::uint32_t hj = 0;
    for (std::size_t n = 0;; ++n) {
      if (dx.empty() && dy.empty()) heq[hj] = 1;
      std::string key = std::to_string(hj) + (dx.empty() ? "y" : "x");
      for (std::int64_t v : dx) key += "," + std::to_string(v);
      for (std::int64_t v : dy) key += "," + std::to_string(v);
      if (!seen.insert(std::move(key)).second) break;
      if (n >= k && dx.size() + dy.size() > stop_size) break;
      if (n > max_iter)
        throw BudgetExceeded("cache divergence tracking exceeds budget");
      auto [px, py] = hp[hj];
      if (hinfo[X.pos[px]].delta >= 0) dx.push_back(hinfo[X.pos[px]].delta);
      if (hinfo[Y.pos[py]].delta >= 0) dy.push_back(hinfo[Y.pos[py]].delta);
      while (!dx.empty() && !dy.empty() && dx.front() == dy.front()) {
        dx.pop_front();
        dy.pop_front();
      }
      if (!dx.empty() && !dy.empty()) break;  // permanent mismatch
      hj = hnext[hj];
    }
  }

  bool member(std::uint32_t ci, std::uint32_t hj) const {
    auto [pa, pb] = cp[ci];
    auto [px, py] = hp[hj];
    const PosInfo &a = cinfo[A.pos[pa]], &b = cinfo[B.pos[pb]];
    const PosInfo &x = hinfo[X.pos[px]], &y = hinfo[Y.pos[py]];
    return a.plain && b.plain && a.pc == b.pc && x.plain && y.plain &&
           X.arch_local[px] == A.arch_local[pa] &&
           Y.arch_local[py] == B.arch_local[pb];
  }

  bool search(std::uint32_t ci, std::uint32_t hj, std::size_t c_left,
              std::size_t h_left, bool after_h, bool caches_eq) {
    if (after_h && caches_eq && member(ci, hj)) return true;
    auto [pa, pb] = cp[ci];
    if (cinfo[A.pos[pa]].leak != cinfo[B.pos[pb]].leak) return true;  // C-Leak
    std::uint64_t key = (static_cast<std::uint64_t>(ci) << 34) |
                        (static_cast<std::uint64_t>(hj) << 8) | (h_left << 2) |
                        (static_cast<std::uint64_t>(after_h) << 1) |
                        static_cast<std::uint64_t>(caches_eq);
    auto it = failed.find(key);
    if (it != failed.end() && c_left <= it->second) return false;
    if (h_left > 0 && caches_eq) {
      auto [px, py] = hp[hj];
      bool still_eq = hinfo[X.pos[px]].delta == hinfo[Y.pos[py]].delta;
      if (search(ci, hnext[hj], c_budget, h_left - 1, true, still_eq))
        return true;
    }
    if (c_left > 0 &&
        search(cnext[ci], hj, c_left - 1, h_left, after_h, caches_eq))
      return true;
    std::size_t& slot = failed[key];
    slot = std::max(slot, c_left);
    return false;
  }
};

struct FastInputs {
  System C, H;  // H is the cache-delta view
  std::vector<StateId> cinit, hinit;
  std::function<void(StateId, PosInfo&)> cfill, hfill;  // plain/pc/arch
  std::size_t c_budget = 3, h_budget = 3;
  std::size_t run_budget = kDefaultBudget;
};

struct FastResult {
  bool oracle_ok = true;
  bool closure_ok = true;
  std::size_t initial = 0, trace_classes = 0, run_classes = 0;
  std::size_t class_pairs = 0, members = 0;
  std::string detail;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // init indices
};

struct InfoTable {
  const System& t;
  const std::function<void(StateId, PosInfo&)>& fill;
  bool hardware;
  std::vector<PosInfo> info;
  std::vector<char> ready;

  std::uint32_t get(StateId s) {
    if (s >= info.size()) {
      info.resize(s + 1);
      ready.resize(s + 1, 0);
    }
    if (!ready[s]) {
      PosInfo p;
      if (hardware) {
        const Obs& o = t.leak(s);
        p.delta = o.kind == Obs::Kind::Address ? o.value : -1;
      } else {
        p.leak = t.leak_id(s);
      }
      fill(s, p);
      info[s] = p;
      ready[s] = 1;
    }
    return s;
  }
};

Run build_run(const System& t, InfoTable& table, StateId s0,
              std::size_t budget) {
  Run r;
  std::unordered_map<StateId, std::uint32_t> seen;
  StateId s = s0;
  for (;;) {
    auto it = seen.find(s);
    if (it != seen.end()) {
      r.loop_start = it->second;
      return r;
    }
    if (r.pos.size() >= budget)
      throw BudgetExceeded("case study run exceeds budget");
    seen.emplace(s, static_cast<std::uint32_t>(r.pos.size()));
    r.pos.push_back(table.get(s));
    s = t.next(s);
  }
}

FastResult run_fast(FastInputs& in) {
  FastResult out;
  std::size_t n = in.cinit.size();
  out.initial = n;

  InfoTable ctable{in.C, in.cfill, false, {}, {}};
  InfoTable htable{in.H, in.hfill, true, {}, {}};
  std::vector<Run> cruns(n), hruns(n);
  for (std::size_t k = 0; k < n; ++k) {
    cruns[k] = build_run(in.C, ctable, in.cinit[k], in.run_budget);
    hruns[k] = build_run(in.H, htable, in.hinit[k], in.run_budget);
  }

  // Oracle: group initial states by the canonical contract trace; every
  // member of a group must share the representative's hardware trace. By
  // symmetry and transitivity this decides relative trace equality for all
  // n^2 initial quads.
  std::vector<std::vector<std::int64_t>> hkeys(n);
  std::unordered_map<std::vector<std::int64_t>, std::size_t, Int64VecHash>
      by_contract;
  for (std::size_t k = 0; k < n; ++k) {
    hkeys[k] = canonical_sequence(hruns[k], htable.info, true);
    auto ckey = canonical_sequence(cruns[k], ctable.info, false);
    auto [it, fresh] = by_contract.try_emplace(std::move(ckey), k);
    if (!fresh && hkeys[it->second] != hkeys[k]) {
      out.oracle_ok = false;
      out.witness = {it->second, k};
      out.detail = "equal contract traces but distinct hardware traces";
      break;
    }
  }
  out.trace_classes = by_contract.size();
  if (!out.oracle_ok) return out;

  // Closure of the invariant: collapse initial states with identical run
  // structure (leaks, deltas, flags, pcs and locally relabeled architecture
  // ids); every invariant member reachable from some initial quad is a
  // (contract joint position, hardware joint position) pair over one ordered
  // class pair.
  std::unordered_map<std::vector<std::int64_t>, std::size_t, Int64VecHash>
      classes;
  std::vector<std::size_t> reps;
  for (std::size_t k = 0; k < n; ++k) {
    Run& cr = cruns[k];
    Run& hr = hruns[k];
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    auto loc = [&local](std::uint32_t g) {
      return local.try_emplace(g, static_cast<std::uint32_t>(local.size()))
          .first->second;
    };
    std::vector<std::int64_t> sig;
    sig.reserve(2 * (cr.pos.size() + hr.pos.size()) + 3);
    sig.push_back(cr.loop_start);
    for (std::uint32_t p : cr.pos) {
      cr.arch_local.push_back(loc(ctable.info[p].arch));
      sig.push_back(ctable.info[p].leak);
      sig.push_back((static_cast<std::int64_t>(cr.arch_local.back()) << 33) |
                    (static_cast<std::int64_t>(ctable.info[p].pc) << 1) |
                    (ctable.info[p].plain ? 1 : 0));
    }
    sig.push_back(-7);  // run separator
    sig.push_back(hr.loop_start);
    for (std::uint32_t p : hr.pos) {
      hr.arch_local.push_back(loc(htable.info[p].arch));
      sig.push_back(htable.info[p].delta);
      sig.push_back((static_cast<std::int64_t>(hr.arch_local.back()) << 1) |
                    (htable.info[p].plain ? 1 : 0));
    }
    if (classes.try_emplace(std::move(sig), k).second) reps.push_back(k);
  }
  out.run_classes = reps.size();

  for (std::size_t a : reps) {
    for (std::size_t b : reps) {
      out.class_pairs += 1;
      PairSearch ps(ctable.info, htable.info, cruns[a], cruns[b], hruns[a],
                    hruns[b], in.c_budget, in.h_budget, in.run_budget);
      for (std::uint32_t ci = 0; ci < ps.cp.size(); ++ci) {
        for (std::uint32_t hj = 0; hj < ps.hp.size(); ++hj) {
          if (!ps.heq[hj] || !ps.member(ci, hj)) continue;
          out.members += 1;
          if (!ps.search(ci, hj, in.c_budget, in.h_budget, false, true)) {
            out.closure_ok = false;
            out.witness = {a, b};
            out.detail = "invariant member at contract position " +
                         std::to_string(ci) + ", hardware position " +
                         std::to_string(hj) + " has no bounded derivation";
            return out;
          }
        }
      }
    }
  }
  return out;
}

std::string one_line(const Program& p) {
  std::string text = print_program(p);
  while (!text.empty() && text.back() == '\n') text.pop_back();
  for (char& ch : text)
    if (ch == '\n') ch = ';';
  return text;
}

void require_bounds_match(const MachineConfig& cfg, const EnumBounds& b) {
  if (cfg.mem_size != b.mem_size || cfg.value_modulus != b.num_values)
    throw ConfigError(
        "instance machine config does not match the enumeration bounds");
}

void finish_report(Report& r, const FastResult& fast, Clock::time_point start,
                   const std::function<Quad(std::size_t, std::size_t)>& quad_of,
                   const System& c, const System& h_real,
                   std::size_t budget) {
  std::size_t quads = fast.initial * fast.initial;
  r.checked = quads + fast.members;
  r.set("initial states", std::to_string(fast.initial));
  r.set("initial quads", std::to_string(quads));
  r.set("trace classes", std::to_string(fast.trace_classes));
  r.set("run classes", std::to_string(fast.run_classes));
  r.set("closure members", std::to_string(fast.members));
  if (fast.oracle_ok && fast.closure_ok) {
    r.proved = r.checked;
    r.note("oracle confirms every initial quad; invariant closure accepted");
  } else {
    r.ok = false;
    r.refuted = 1;
    r.note((fast.oracle_ok ? "closure FAILED: " : "oracle REFUTED: ") +
           fast.detail);
    if (fast.witness && !fast.oracle_ok) {
      Quad q = quad_of(fast.witness->first, fast.witness->second);
      r.verdicts.push_back({quad_string(c, h_real, q), "refuted"});
      r.counterexample = quad_counterexample(c, h_real, q, budget);
    }
  }
  r.elapsed_ms = ms_since(start);
}

}  // namespace

Report run_am_case_study(const AmInstance& inst, const CaseStudyOptions& opts) {
  auto start = Clock::now();
  require_bounds_match(inst.cfg, opts.bounds);
  Report r;
  r.command = "casestudy am-spec";
  r.set("program", one_line(inst.prog));
  r.set("predictor", inst.pred.name);
  r.set("window", std::to_string(inst.w));

  auto C = inst.C;
  TypedSystem<Terminated<CacheDelta<SpecHwModel>>> Hc(encode_termination(
      CacheDelta<SpecHwModel>{SpecHwModel{inst.prog, inst.pred, inst.w, inst.cfg}}));
  auto archs = enumerate_arch_states(opts.bounds, 0);

  auto arch_ids = std::make_shared<
      std::unordered_map<ArchState, std::uint32_t, ArchStateHash>>();
  auto intern_arch = [arch_ids](const ArchState& a) {
    return arch_ids->try_emplace(a, static_cast<std::uint32_t>(arch_ids->size()))
        .first->second;
  };

  FastInputs in;
  in.C = C;
  in.H = Hc;
  in.c_budget = opts.c_step_budget ? opts.c_step_budget : inst.w + 2;
  in.h_budget = opts.h_step_budget ? opts.h_step_budget : in.c_budget;
  in.run_budget = opts.run_budget;
  in.cfill = [C, intern_arch](StateId id, PosInfo& p) {
    const AmState& st = C.state(id);
    p.plain = st.window == kInfWindow && !st.has_rb;
    p.pc = st.arch.pc;
    p.arch = intern_arch(st.arch);
  };
  in.hfill = [Hc, intern_arch](StateId id, PosInfo& p) {
    const SpecHwState& st = Hc.state(id);
    p.plain = st.window == kInfWindow && !st.has_cp;
    p.arch = intern_arch(st.hw.arch);
  };
  for (const ArchState& a : archs) {
    AmState cs;
    cs.arch = a;
    in.cinit.push_back(C.intern(cs));
    SpecHwState hs;
    hs.hw.arch = a;
    in.hinit.push_back(Hc.intern(hs));
  }

  FastResult fast = run_fast(in);

  auto Hreal = inst.H;
  auto quad_of = [&](std::size_t i, std::size_t j) {
    SpecHwState h1, h2;
    h1.hw.arch = archs[i];
    h2.hw.arch = archs[j];
    return Quad{in.cinit[i], in.cinit[j], Hreal.intern(h1), Hreal.intern(h2)};
  };
  finish_report(r, fast, start, quad_of, C, Hreal, opts.run_budget);
  return r;
}

Report run_ooo_case_study(const OooInstance& inst,
                          const CaseStudyOptions& opts) {
  auto start = Clock::now();
  require_bounds_match(inst.cfg, opts.bounds);
  Report r;
  r.command = "casestudy ooo-seq";
  r.set("program", one_line(inst.prog));
  r.set("scheduler", inst.sched.name);

  auto C = inst.C;
  // Copy the instance's model wholesale so test-only flags (the scheduler
  // validity bypass) carry over to the delta view.
  TypedSystem<Terminated<CacheDelta<OooModel>>> Hc(
      encode_termination(CacheDelta<OooModel>{inst.H.model().base}));
  auto archs = enumerate_arch_states(opts.bounds, 0);

  auto arch_ids = std::make_shared<
      std::unordered_map<ArchState, std::uint32_t, ArchStateHash>>();
  auto intern_arch = [arch_ids](const ArchState& a) {
    return arch_ids->try_emplace(a, static_cast<std::uint32_t>(arch_ids->size()))
        .first->second;
  };

  FastInputs in;
  in.C = C;
  in.H = Hc;
  in.c_budget = opts.c_step_budget ? opts.c_step_budget : 3;
  in.h_budget = opts.h_step_budget ? opts.h_step_budget : in.c_budget;
  in.run_budget = opts.run_budget;
  in.cfill = [C, intern_arch](StateId id, PosInfo& p) {
    const ArchState& st = C.state(id);
    p.plain = true;
    p.pc = st.pc;
    p.arch = intern_arch(st);
  };
  in.hfill = [Hc, intern_arch](StateId id, PosInfo& p) {
    const OooState& st = Hc.state(id);
    p.plain = !st.has_buf;
    p.arch = intern_arch(st.hw.arch);
  };
  for (const ArchState& a : archs) {
    in.cinit.push_back(C.intern(a));
    OooState hs;
    hs.hw.arch = a;
    in.hinit.push_back(Hc.intern(hs));
  }

  FastResult fast = run_fast(in);

  auto Hreal = inst.H;
  auto quad_of = [&](std::size_t i, std::size_t j) {
    OooState h1, h2;
    h1.hw.arch = archs[i];
    h2.hw.arch = archs[j];
    return Quad{in.cinit[i], in.cinit[j], Hreal.intern(h1), Hreal.intern(h2)};
  };
  finish_report(r, fast, start, quad_of, C, Hreal, opts.run_budget);
  return r;
}

std::vector<Program> enumerate_programs(std::size_t max_len,
                                        const EnumBounds& bounds) {
  std::vector<Program> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Instruction> choices;
    for (Reg d : {Reg::R1, Reg::R2})
      for (Reg s : {Reg::R1, Reg::R2}) choices.push_back(Instruction::load(d, s));
    for (Reg d : {Reg::R1, Reg::R2})
      for (Reg s : {Reg::R1, Reg::R2})
        for (std::int64_t k = 0; k < bounds.num_values; ++k)
          choices.push_back(Instruction::add(d, s, k));
    for (Reg c : {Reg::R1, Reg::R2})
      for (std::uint32_t t = 0; t <= len; ++t)
        choices.push_back(Instruction::beqz(c, t));

    std::vector<std::size_t> odo(len, 0);
    for (;;) {
      Program p;
      for (std::size_t slot : odo) p.code.push_back(choices[slot]);
      out.push_back(std::move(p));
      std::size_t i = 0;
      while (i < len && ++odo[i] == choices.size()) odo[i++] = 0;
      if (i == len) break;
    }
  }
  return out;
}

namespace {

// Predictors are interchangeable when they agree at every branch location.
std::vector<Predictor> dedup_predictors(const std::vector<Predictor>& preds,
                                        const Program& prog) {
  std::vector<Predictor> out;
  std::unordered_set<std::string> seen;
  for (const Predictor& p : preds) {
    std::string key;
    for (std::uint32_t pc = 0; pc < prog.size(); ++pc)
      if (prog.at(pc).op == Instruction::Op::Beqz)
        key += p.predicts_jump(pc) ? 'j' : 'n';
    if (seen.insert(key).second) out.push_back(p);
  }
  return out;
}

void aggregate(Report& sweep, const Report& one, const std::string& what,
               std::size_t max_listed) {
  sweep.checked += 1;
  if (one.ok) {
    sweep.proved += 1;
    return;
  }
  sweep.ok = false;
  sweep.refuted += 1;
  if (sweep.verdicts.size() < max_listed) {
    std::string why = one.notes.empty() ? "failed" : one.notes.front();
    sweep.verdicts.push_back({what, why});
  }
  if (!sweep.counterexample && one.counterexample)
    sweep.counterexample = one.counterexample;
}

}  // namespace

Report sweep_am_case_studies(const SweepOptions& opts) {
  auto start = Clock::now();
  Report r;
  r.command = "casestudy sweep am-spec";
  r.set("max program length", std::to_string(opts.max_len));
  MachineConfig cfg = machine_config(opts.bounds);
  CaseStudyOptions copts;
  copts.bounds = opts.bounds;

  std::vector<Program> programs = enumerate_programs(opts.max_len, opts.bounds);
  std::size_t quads = 0;
  for (const Program& prog : programs) {
    std::vector<std::pair<Predictor, std::uint32_t>> combos;
    if (!prog.has_branch()) {
      // Branchless programs never speculate: predictor and window are inert.
      combos.emplace_back(Predictor::constant_next(prog.size()),
                          opts.windows.front());
    } else {
      std::vector<Predictor> preds = opts.predictors;
      if (preds.empty())
        preds = {Predictor::constant_next(prog.size()),
                 Predictor::constant_jump(prog.size()),
                 Predictor::alternating(prog.size())};
      for (const Predictor& p : dedup_predictors(preds, prog))
        for (std::uint32_t w : opts.windows) combos.emplace_back(p, w);
    }
    for (auto& [pred, w] : combos) {
      AmInstance inst = build_am_instance(prog, pred, w, cfg);
      Report one = run_am_case_study(inst, copts);
      quads += one.checked;
      aggregate(r, one,
                one_line(prog) + " | " + pred.name + " w=" + std::to_string(w),
                opts.max_listed);
    }
  }
  r.set("programs", std::to_string(programs.size()));
  r.set("instances", std::to_string(r.checked));
  r.set("quads and members", std::to_string(quads));
  if (r.ok) r.note("all instances verified");
  r.elapsed_ms = ms_since(start);
  return r;
}

Report sweep_ooo_case_studies(const SweepOptions& opts) {
  auto start = Clock::now();
  Report r;
  r.command = "casestudy sweep ooo-seq";
  r.set("max program length", std::to_string(opts.max_len));
  MachineConfig cfg = machine_config(opts.bounds);
  CaseStudyOptions copts;
  copts.bounds = opts.bounds;

  std::vector<Program> programs = enumerate_programs(opts.max_len, opts.bounds);
  std::size_t quads = 0;
  for (const Program& prog : programs) {
    for (const Scheduler& sched : enumerate_valid_schedulers(prog)) {
      OooInstance inst = build_ooo_instance(prog, sched, cfg);
      Report one = run_ooo_case_study(inst, copts);
      quads += one.checked;
      aggregate(r, one, one_line(prog) + " | " + sched.name, opts.max_listed);
    }
  }
  r.set("programs", std::to_string(programs.size()));
  r.set("instances", std::to_string(r.checked));
  r.set("quads and members", std::to_string(quads));
  if (r.ok) r.note("all instances verified");
  r.elapsed_ms = ms_since(start);
  return r;
}

std::shared_ptr<const QuadUniverse> am_initial_universe(AmInstance& inst,
                                                        const EnumBounds& bounds,
                                                        std::size_t budget) {
  auto archs = enumerate_arch_states(bounds, 0);
  std::vector<StateId> cs, hs;
  for (const ArchState& a : archs) {
    cs.push_back(inst.contract_init(a));
    hs.push_back(inst.hardware_init(a));
  }
  std::vector<Quad> seeds;
  seeds.reserve(cs.size() * cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j)
      seeds.push_back(Quad{cs[i], cs[j], hs[i], hs[j]});
  return std::make_shared<QuadUniverse>(
      QuadUniverse::close(inst.C, inst.H, seeds, budget));
}

std::shared_ptr<const QuadUniverse> ooo_initial_universe(
    OooInstance& inst, const EnumBounds& bounds, std::size_t budget) {
  auto archs = enumerate_arch_states(bounds, 0);
  std::vector<StateId> cs, hs;
  for (const ArchState& a : archs) {
    cs.push_back(inst.contract_init(a));
    hs.push_back(inst.hardware_init(a));
  }
  std::vector<Quad> seeds;
  seeds.reserve(cs.size() * cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j)
      seeds.push_back(Quad{cs[i], cs[j], hs[i], hs[j]});
  return std::make_shared<QuadUniverse>(
      QuadUniverse::close(inst.C, inst.H, seeds, budget));
}

}  // namespace rbisim
