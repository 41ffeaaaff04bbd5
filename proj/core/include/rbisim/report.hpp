#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbisim/oracle.hpp"
#include "rbisim/quad.hpp"
#include "rbisim/system.hpp"

namespace rbisim {

// Bump when the JSON layout changes shape.
inline constexpr int kReportSchemaVersion = 1;

struct QuadVerdictLine {
  std::string quad;     // printable quad, e.g. "(s1 s2 h1 h2)"
  std::string verdict;  // e.g. "proved", "refuted", "oracle:true"
};

// The first disagreement found, with trace prefixes up to the divergence.
struct Counterexample {
  std::string description;
  std::vector<std::string> contract_trace_1;
  std::vector<std::string> contract_trace_2;
  std::vector<std::string> hardware_trace_1;
  std::vector<std::string> hardware_trace_2;
  std::size_t divergence = 0;  // first index where the hardware traces differ
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // echoed settings
  bool ok = true;
  std::size_t checked = 0;
  std::size_t proved = 0;
  std::size_t refuted = 0;
  double elapsed_ms = 0;
  std::vector<QuadVerdictLine> verdicts;  // capped sample; sorted before emission
  std::vector<std::string> notes;
  std::optional<Counterexample> counterexample;

  void note(std::string text) { notes.push_back(std::move(text)); }
  void set(std::string key, std::string value) {
    config.emplace_back(std::move(key), std::move(value));
  }
};

std::string quad_string(const System& c, const System& h, const Quad& q);

// Trace prefixes for a quad whose hardware traces diverge (falls back to a
// short fixed prefix when they do not).
Counterexample quad_counterexample(const System& c, const System& h,
                                   const Quad& q,
                                   std::size_t budget = kDefaultBudget);

// Sorts the verdict sample in place and renders. The JSON form is versioned
// via kReportSchemaVersion.
std::string report_text(Report& r);
std::string report_json(Report& r);
void write_report_json(Report& r, const std::string& path);

}  // namespace rbisim
