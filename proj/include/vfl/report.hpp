#pragma once
// Structured results for the verification suites. A report is a list of
// cases, each comparing a rendered expected value against a rendered
// computed value; a case passes exactly when the two strings are equal.
// Emission is an aligned text table or JSON under a pinned schema. JSON is
// byte-identical across runs with the same inputs: per-case wall-clock is
// included only on explicit request, text tables always show it.

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"

namespace vfl {

struct CaseResult {
  std::string claim;
  std::string params;
  std::string expected;
  std::string computed;
  bool pass = false;
  double elapsed_ms = 0.0;
};

// timing is presentation, not identity
inline bool same_outcome(const CaseResult& a, const CaseResult& b) {
  return a.claim == b.claim && a.params == b.params && a.expected == b.expected &&
         a.computed == b.computed && a.pass == b.pass;
}

struct VerificationReport {
  std::string suite_id;
  unsigned long long seed = 0;
  std::string precision_profile;
  std::vector<CaseResult> cases;

  bool all_pass() const {
    for (const CaseResult& c : cases)
      if (!c.pass) return false;
    return true;
  }
};

inline bool same_outcome(const VerificationReport& a, const VerificationReport& b) {
  if (a.suite_id != b.suite_id || a.seed != b.seed ||
      a.precision_profile != b.precision_profile || a.cases.size() != b.cases.size())
    return false;
  for (size_t i = 0; i < a.cases.size(); ++i)
    if (!same_outcome(a.cases[i], b.cases[i])) return false;
  return true;
}

// runs fn (returning {expected, computed}) under a wall clock; a thrown
// library error fails the case instead of aborting the suite
template <class Fn>
void timed_case(VerificationReport& rep, std::string claim, std::string params, Fn&& fn) {
  CaseResult c;
  c.claim = std::move(claim);
  c.params = std::move(params);
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::pair<std::string, std::string> out = fn();
    c.expected = std::move(out.first);
    c.computed = std::move(out.second);
    c.pass = c.expected == c.computed;
  } catch (const Error& e) {
    c.expected = "completes";
    c.computed = std::string("error: ") + e.what();
    c.pass = false;
  }
  c.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep.cases.push_back(std::move(c));
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& r, bool timings = false) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["suite"] = r.suite_id;
  j["seed"] = r.seed;
  j["precision"] = r.precision_profile;
  j["pass"] = r.all_pass();
  j["cases"] = nlohmann::ordered_json::array();
  for (const CaseResult& c : r.cases) {
    nlohmann::ordered_json jc;
    jc["claim"] = c.claim;
    jc["params"] = c.params;
    jc["expected"] = c.expected;
    jc["computed"] = c.computed;
    jc["pass"] = c.pass;
    if (timings) jc["elapsed_ms"] = c.elapsed_ms;
    j["cases"].push_back(std::move(jc));
  }
  return j;
}

// newline-terminated, 2-space indentation
inline std::string emit_json(const VerificationReport& r, bool timings = false) {
  return report_to_json(r, timings).dump(2) + "\n";
}

inline VerificationReport report_from_json(const nlohmann::ordered_json& j) {
  if (!j.contains("schema") || j.at("schema").get<long long>() != 1)
    throw Error("unsupported report schema");
  VerificationReport r;
  r.suite_id = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<unsigned long long>();
  r.precision_profile = j.at("precision").get<std::string>();
  for (const auto& jc : j.at("cases")) {
    CaseResult c;
    c.claim = jc.at("claim").get<std::string>();
    c.params = jc.at("params").get<std::string>();
    c.expected = jc.at("expected").get<std::string>();
    c.computed = jc.at("computed").get<std::string>();
    c.pass = jc.at("pass").get<bool>();
    if (jc.contains("elapsed_ms")) c.elapsed_ms = jc.at("elapsed_ms").get<double>();
    r.cases.push_back(std::move(c));
  }
  return r;
}

// aligned table, one data row per case
inline std::string emit_text(const VerificationReport& r) {
  const std::vector<std::string> head = {"status", "claim", "params", "expected", "computed", "ms"};
  std::vector<std::vector<std::string>> rows;
  for (const CaseResult& c : r.cases) {
    char ms[32];
    std::snprintf(ms, sizeof(ms), "%.1f", c.elapsed_ms);
    rows.push_back({c.pass ? "PASS" : "FAIL", c.claim, c.params, c.expected, c.computed, ms});
  }
  std::vector<size_t> w(head.size());
  for (size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], row[i].size());

  auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size()) out += std::string(w[i] - row[i].size() + 2, ' ');
    }
    out += "\n";
    return out;
  };

  std::string out = "suite: " + r.suite_id + "   seed: " + std::to_string(r.seed) +
                    "   precision: " + r.precision_profile + "\n";
  out += line(head);
  size_t total = 0;
  for (size_t i = 0; i < w.size(); ++i) total += w[i] + (i + 1 < w.size() ? 2 : 0);
  out += std::string(total, '-') + "\n";
  for (const auto& row : rows) out += line(row);
  size_t passed = 0;
  for (const CaseResult& c : r.cases) passed += c.pass;
  out += std::to_string(passed) + "/" + std::to_string(r.cases.size()) + " cases passed\n";
  return out;
}

}  // namespace vfl
