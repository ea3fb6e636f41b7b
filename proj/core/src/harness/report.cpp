#include "lpstruct/harness/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpstruct/error.hpp"

namespace lpstruct::harness {

bool CaseReport::asserted_checks_pass() const noexcept {
  if (!ok()) return false;
  for (const auto& c : checks)
    if (c.asserted && !c.pass) return false;
  return true;
}

std::string to_text(const CaseReport& r) {
  std::ostringstream out;
  char buf[64];
  out << "case " << r.case_id << "  seed " << r.seed << "  config " << r.config_hash << '\n';
  if (!r.ok()) {
    out << "FAILED in stage " << *r.failed_stage << ": " << r.failure << '\n';
  } else {
    std::snprintf(buf, sizeof buf, "%.3e", r.h_final);
    out << "data " << r.rows << " x " << r.cols << "  converged " << (r.converged ? "yes" : "no") << "  h " << buf
        << "  threshold " << r.threshold << '\n';
  }
  for (const auto& c : r.checks) {
    out << (c.pass ? "  PASS " : "  FAIL ") << c.name << (c.asserted ? "" : " (informational)") << '\n'
        << "       expected: " << c.expected << '\n'
        << "       observed: " << c.observed << '\n';
  }
  std::snprintf(buf, sizeof buf, "%.2f", r.runtime_seconds);
  out << "runtime " << buf << " s\n";
  for (const auto& [name, path] : r.artifacts) out << "  " << name << ": " << path << '\n';
  return out.str();
}

nlohmann::json to_json(const CaseReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back(
        {{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}, {"asserted", c.asserted}});
  nlohmann::json j{{"case", r.case_id},
                   {"seed", r.seed},
                   {"config_hash", r.config_hash},
                   {"ok", r.ok()},
                   {"checks", checks},
                   {"runtime_seconds", r.runtime_seconds},
                   {"artifacts", r.artifacts},
                   {"rows", r.rows},
                   {"cols", r.cols},
                   {"converged", r.converged},
                   {"h_final", r.h_final},
                   {"threshold", r.threshold}};
  if (r.failed_stage) j["failure"] = {{"stage", *r.failed_stage}, {"cause", r.failure}};
  return j;
}

void write_report(const std::filesystem::path& dir, CaseReport& r) {
  const auto txt = dir / "report.txt";
  const auto js = dir / "report.json";
  r.artifacts["report_text"] = txt.string();
  r.artifacts["report_json"] = js.string();
  std::ofstream t(txt, std::ios::binary);
  if (!t) throw Error("cannot write '" + txt.string() + "'");
  t << to_text(r);
  std::ofstream j(js, std::ios::binary);
  if (!j) throw Error("cannot write '" + js.string() + "'");
  j << to_json(r).dump(2) << '\n';
}

}  // namespace lpstruct::harness
