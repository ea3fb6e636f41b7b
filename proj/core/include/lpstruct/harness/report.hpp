#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpstruct/harness/checks.hpp"

namespace lpstruct::harness {

struct CaseReport {
  std::string case_id;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<CheckResult> checks;
  double runtime_seconds = 0.0;
  std::map<std::string, std::string> artifacts;

  std::size_t rows = 0;
  std::size_t cols = 0;
  bool converged = false;
  double h_final = 0.0;
  double threshold = 0.0;

  std::optional<std::string> failed_stage;
  std::string failure;

  bool ok() const noexcept { return !failed_stage; }
  // True when the run succeeded and every asserted check passed.
  bool asserted_checks_pass() const noexcept;
};

std::string to_text(const CaseReport& report);
nlohmann::json to_json(const CaseReport& report);

// report.txt and report.json in `dir`; records both in report.artifacts.
void write_report(const std::filesystem::path& dir, CaseReport& report);

}  // namespace lpstruct::harness
