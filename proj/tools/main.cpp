// Command-line workbench: oracle queries, proof checking, invariant closure,
// case studies, the counterexample gallery and the differential fuzzer.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rbisim/casestudy.hpp"
#include "rbisim/checker.hpp"
#include "rbisim/fuzz.hpp"
#include "rbisim/gallery.hpp"
#include "rbisim/script.hpp"

namespace {

using namespace rbisim;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read file " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Initial architectural state: "m0,m1,...:r1,r2" (pc starts at 0).
ArchState parse_arch(const std::string& text, const EnumBounds& bounds) {
  ArchState s;
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ConfigError("architectural state must look like m0,m1,..:r1,r2");
  auto parse_list = [](const std::string& part) {
    std::vector<std::int64_t> vals;
    std::istringstream in(part);
    std::string tok;
    while (std::getline(in, tok, ',')) vals.push_back(std::stoll(tok));
    return vals;
  };
  s.mem = parse_list(text.substr(0, colon));
  auto regs = parse_list(text.substr(colon + 1));
  if (s.mem.size() != bounds.mem_size || regs.size() != 2)
    throw ConfigError("expected " + std::to_string(bounds.mem_size) +
                      " memory cells and 2 registers");
  s.regs = {regs[0], regs[1]};
  return s;
}

struct CommonArgs {
  std::string program_path, predictor_path, scheduler_path, json_path;
  std::string model = "am-spec";
  std::uint32_t window = 2;
  EnumBounds bounds;
  std::size_t max_len = 3;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultBudget;

  void attach(CLI::App* app, bool with_model) {
    app->add_option("--program", program_path, "program file");
    if (with_model) {
      app->add_option("--model", model, "am-spec or ooo-seq")
          ->check(CLI::IsMember({"am-spec", "ooo-seq"}));
      app->add_option("--predictor", predictor_path,
                      "branch predictor file (am-spec)");
      app->add_option("--scheduler", scheduler_path,
                      "delay scheduler file (ooo-seq)");
      app->add_option("--window", window, "speculation window (am-spec)");
    }
    app->add_option("--mem-size", bounds.mem_size, "memory cells");
    app->add_option("--values", bounds.num_values, "value domain size");
    app->add_option("--max-len", max_len, "maximum program length (sweeps)");
    app->add_option("--seed", seed, "random seed");
    app->add_option("--json", json_path, "write the JSON report here");
    app->add_option("--budget", budget, "state-space budget");
  }

  Program load_program() const {
    if (program_path.empty()) throw ConfigError("--program is required");
    return parse_program(slurp(program_path));
  }
  Predictor load_predictor(const Program& p) const {
    if (predictor_path.empty()) return Predictor::constant_next(p.size());
    return parse_predictor(slurp(predictor_path), p.size());
  }
  Scheduler load_scheduler(const Program& p) const {
    if (scheduler_path.empty()) return Scheduler::all_execute(p.size());
    return parse_scheduler(slurp(scheduler_path), p.size());
  }
};

int emit(Report& r, const CommonArgs& args) {
  std::cout << report_text(r);
  if (!args.json_path.empty()) write_report_json(r, args.json_path);
  return r.ok ? kExitOk : kExitRefuted;
}

// Builds the systems and the initial quad shared by `oracle` and `prove`.
struct LoadedInstance {
  System C, H;
  Quad quad;
};

LoadedInstance load_instance(const CommonArgs& args, const std::string& arch1,
                             const std::string& arch2) {
  ArchState a1 = parse_arch(arch1, args.bounds);
  ArchState a2 = parse_arch(arch2, args.bounds);
  Program prog = args.load_program();
  MachineConfig cfg = machine_config(args.bounds);
  if (args.model == "am-spec") {
    AmInstance inst =
        build_am_instance(prog, args.load_predictor(prog), args.window, cfg);
    Quad q{inst.contract_init(a1), inst.contract_init(a2),
           inst.hardware_init(a1), inst.hardware_init(a2)};
    return {inst.C, inst.H, q};
  }
  OooInstance inst = build_ooo_instance(prog, args.load_scheduler(prog), cfg);
  Quad q{inst.contract_init(a1), inst.contract_init(a2), inst.hardware_init(a1),
         inst.hardware_init(a2)};
  return {inst.C, inst.H, q};
}

// Relation file: "name NAME" then one quad of four state labels per line.
QuadRelPtr load_relation(const std::string& path, const System& c,
                         const System& h) {
  std::istringstream in(slurp(path));
  std::string raw, name;
  std::vector<Quad> quads;
  int lineno = 0;
  auto resolve = [path](const System& t, const std::string& label, int line) {
    auto id = t.find(label);
    if (!id)
      throw ParseError("unknown state label '" + label + "' in " + path, line, 1);
    return *id;
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::string first;
    if (!(line >> first)) continue;
    if (name.empty()) {
      std::string value;
      if (first != "name" || !(line >> value))
        throw ParseError("relation file must start with 'name NAME'", lineno, 1);
      name = value;
      continue;
    }
    std::string s2, h1, h2;
    if (!(line >> s2 >> h1 >> h2))
      throw ParseError("expected four state labels", lineno, 1);
    quads.push_back(Quad{resolve(c, first, lineno), resolve(c, s2, lineno),
                         resolve(h, h1, lineno), resolve(h, h2, lineno)});
  }
  if (name.empty()) throw ParseError("relation file is empty", 1, 1);
  return make_extensional(name, std::move(quads));
}

int run(int argc, char** argv) {
  CLI::App app{"relative bisimulation workbench"};
  app.require_subcommand(1);
  CommonArgs args;

  std::string arch1, arch2, script_path, gallery_name;
  std::vector<std::string> relation_paths;
  std::size_t trials = 100;
  std::size_t closure_budget = 0;

  CLI::App* oracle = app.add_subcommand(
      "oracle", "decide relative trace equality for one initial quad");
  args.attach(oracle, true);
  oracle->add_option("arch1", arch1, "first initial state m0,..:r1,r2")
      ->required();
  oracle->add_option("arch2", arch2, "second initial state")->required();

  CLI::App* prove =
      app.add_subcommand("prove", "check a proof script for one initial quad");
  args.attach(prove, true);
  prove->add_option("script", script_path, "proof script file")->required();
  prove->add_option("arch1", arch1, "first initial state")->required();
  prove->add_option("arch2", arch2, "second initial state")->required();
  prove->add_option("--relation", relation_paths,
                    "named relation file(s) the script may reference");

  CLI::App* closure = app.add_subcommand(
      "closure", "check that a relation file is closed under the proof rules");
  args.attach(closure, true);
  closure->add_option("relation", relation_paths, "relation file")->required();
  closure->add_option("--c-steps", closure_budget,
                      "contract steps per round (0 = |S_C|^2+1)");

  CLI::App* casestudy = app.add_subcommand(
      "casestudy", "exhaustive oracle + invariant closure for one instance");
  args.attach(casestudy, true);

  CLI::App* gallery =
      app.add_subcommand("gallery", "run the built-in counterexamples");
  args.attach(gallery, false);
  gallery->add_option("name", gallery_name, "entry name (default: all)");

  CLI::App* fuzz = app.add_subcommand("fuzz", "differential fuzzing loop");
  args.attach(fuzz, false);
  fuzz->add_option("--trials", trials, "number of trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (oracle->parsed()) {
    LoadedInstance inst = load_instance(args, arch1, arch2);
    bool eq = rel_trace_eq(inst.C, inst.H, inst.quad, args.budget);
    Report r;
    r.command = "oracle";
    r.checked = 1;
    (eq ? r.proved : r.refuted) = 1;
    r.ok = eq;
    r.verdicts.push_back({quad_string(inst.C, inst.H, inst.quad),
                          eq ? "oracle:true" : "oracle:false"});
    if (!eq) r.counterexample = quad_counterexample(inst.C, inst.H, inst.quad);
    return emit(r, args);
  }

  if (prove->parsed()) {
    LoadedInstance inst = load_instance(args, arch1, arch2);
    Registry registry;
    for (const std::string& p : relation_paths)
      registry.add(load_relation(p, inst.C, inst.H));
    ScriptNodePtr script = parse_script(slurp(script_path));
    Verdict v =
        check_script(inst.C, inst.H, Goal{inst.quad, {}, true}, script, registry);
    Report r;
    r.command = "prove";
    r.checked = 1;
    (v.accepted ? r.proved : r.refuted) = 1;
    r.ok = v.accepted;
    r.verdicts.push_back({quad_string(inst.C, inst.H, inst.quad),
                          v.accepted ? "accepted" : "rejected"});
    if (v.failure)
      r.note("rejected at " + v.failure->rule + ": " + v.failure->reason);
    return emit(r, args);
  }

  if (closure->parsed()) {
    std::string zero_arch;  // all-zero initial state for the given bounds
    for (std::uint32_t i = 0; i < args.bounds.mem_size; ++i)
      zero_arch += i ? ",0" : "0";
    zero_arch += ":0,0";
    LoadedInstance inst = load_instance(args, zero_arch, zero_arch);
    QuadRelPtr rel = load_relation(relation_paths.front(), inst.C, inst.H);
    if (closure_budget == 0)
      closure_budget = inst.C.size() * inst.C.size() + 1;
    Verdict v = check_invariant_closure(inst.C, inst.H, rel, closure_budget);
    Report r;
    r.command = "closure";
    r.checked = rel->members().size();
    r.ok = v.accepted;
    (v.accepted ? r.proved : r.refuted) = r.checked ? 1 : 0;
    if (v.failure)
      r.note("not closed at " + v.failure->rule + ": " + v.failure->reason);
    return emit(r, args);
  }

  if (casestudy->parsed()) {
    Program prog = args.load_program();
    MachineConfig cfg = machine_config(args.bounds);
    CaseStudyOptions opts;
    opts.bounds = args.bounds;
    opts.run_budget = args.budget;
    Report r;
    if (args.model == "am-spec") {
      AmInstance inst =
          build_am_instance(prog, args.load_predictor(prog), args.window, cfg);
      r = run_am_case_study(inst, opts);
    } else {
      OooInstance inst = build_ooo_instance(prog, args.load_scheduler(prog), cfg);
      r = run_ooo_case_study(inst, opts);
    }
    return emit(r, args);
  }

  if (gallery->parsed()) {
    std::vector<std::string> names =
        gallery_name.empty() ? gallery_names()
                             : std::vector<std::string>{gallery_name};
    int worst = kExitOk;
    for (const std::string& name : names) {
      Report r = run_counterexample(name);
      std::cout << report_text(r);
      if (!args.json_path.empty())
        write_report_json(r, names.size() == 1
                                 ? args.json_path
                                 : args.json_path + "." + name + ".json");
      if (!r.ok) worst = kExitRefuted;
    }
    return worst;
  }

  // fuzz
  FuzzOptions fopts;
  fopts.seed = args.seed;
  fopts.trials = trials;
  Report r = fuzz_differential(fopts);
  return emit(r, args);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
