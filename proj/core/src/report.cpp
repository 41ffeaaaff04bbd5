#include "rbisim/report.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "rbisim/errors.hpp"

namespace rbisim {

std::string quad_string(const System& c, const System& h, const Quad& q) {
  return "(" + c.label(q.s1) + " " + c.label(q.s2) + " " + h.label(q.h1) + " " +
         h.label(q.h2) + ")";
}

namespace {

std::vector<std::string> obs_strings(const System& t, StateId s, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (const Obs& o : trace_prefix_obs(t, s, n)) out.push_back(o.to_string());
  return out;
}

}  // namespace

Counterexample quad_counterexample(const System& c, const System& h,
                                   const Quad& q, std::size_t budget) {
  Counterexample cx;
  PairGraphVerdict hw = traces_equal(h, q.h1, q.h2, budget);
  std::size_t n = hw.witness_index ? *hw.witness_index + 1 : 4;
  cx.divergence = hw.witness_index.value_or(0);
  cx.description = hw.equal
                       ? "hardware traces agree on the inspected prefix"
                       : "hardware traces diverge at step " +
                             std::to_string(cx.divergence) +
                             " while the contract traces are equal";
  cx.contract_trace_1 = obs_strings(c, q.s1, n);
  cx.contract_trace_2 = obs_strings(c, q.s2, n);
  cx.hardware_trace_1 = obs_strings(h, q.h1, n);
  cx.hardware_trace_2 = obs_strings(h, q.h2, n);
  return cx;
}

namespace {

void sort_verdicts(Report& r) {
  std::sort(r.verdicts.begin(), r.verdicts.end(),
            [](const QuadVerdictLine& a, const QuadVerdictLine& b) {
              return a.quad < b.quad || (a.quad == b.quad && a.verdict < b.verdict);
            });
}

}  // namespace

std::string report_text(Report& r) {
  sort_verdicts(r);
  std::string out = "== " + r.command + " ==\n";
  for (const auto& [k, v] : r.config) out += "  " + k + " = " + v + "\n";
  out += "checked: " + std::to_string(r.checked) +
         "  proved: " + std::to_string(r.proved) +
         "  refuted: " + std::to_string(r.refuted) + "\n";
  for (const auto& line : r.verdicts)
    out += "  " + line.quad + " : " + line.verdict + "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  if (r.counterexample) {
    const Counterexample& cx = *r.counterexample;
    out += "counterexample: " + cx.description + "\n";
    auto dump = [&out](const char* who, const std::vector<std::string>& tr) {
      out += std::string("  ") + who + ":";
      for (const auto& o : tr) out += " " + o;
      out += "\n";
    };
    dump("contract trace 1", cx.contract_trace_1);
    dump("contract trace 2", cx.contract_trace_2);
    dump("hardware trace 1", cx.hardware_trace_1);
    dump("hardware trace 2", cx.hardware_trace_2);
  }
  out += std::string("result: ") + (r.ok ? "OK" : "FAIL") + "  (" +
         std::to_string(r.elapsed_ms) + " ms)\n";
  return out;
}

std::string report_json(Report& r) {
  sort_verdicts(r);
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = r.command;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  j["ok"] = r.ok;
  j["checked"] = r.checked;
  j["proved"] = r.proved;
  j["refuted"] = r.refuted;
  j["elapsed_ms"] = r.elapsed_ms;
  j["verdicts"] = nlohmann::json::array();
  for (const auto& line : r.verdicts)
    j["verdicts"].push_back({{"quad", line.quad}, {"verdict", line.verdict}});
  j["notes"] = r.notes;
  if (r.counterexample) {
    const Counterexample& cx = *r.counterexample;
    j["counterexample"] = {{"description", cx.description},
                           {"divergence", cx.divergence},
                           {"contract_trace_1", cx.contract_trace_1},
                           {"contract_trace_2", cx.contract_trace_2},
                           {"hardware_trace_1", cx.hardware_trace_1},
                           {"hardware_trace_2", cx.hardware_trace_2}};
  }
  return j.dump(2) + "\n";
}

void write_report_json(Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report to " + path);
  out << report_json(r);
}

}  // namespace rbisim
