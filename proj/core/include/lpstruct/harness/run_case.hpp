#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lpstruct/datagen/case_spec.hpp"
#include "lpstruct/datagen/dataset.hpp"
#include "lpstruct/energy/energy_lp.hpp"
#include "lpstruct/harness/report.hpp"
#include "lpstruct/lp/linear_program.hpp"
#include "lpstruct/sp/graph.hpp"
#include "lpstruct/structure/notears.hpp"

namespace lpstruct::harness {

// Where the LP / graph / scenario of a run comes from. At most one source per
// kind; with none, the case falls back to the built-in diet LP, bridge graph or
// a synthetic T = 24 scenario.
struct InstanceSource {
  std::optional<std::filesystem::path> lp_file;
  std::optional<nlohmann::json> lp_inline;  // {"A": [[..]], "b": [..], "c": [..], "sense": "maximize"}
  struct RandomLp {
    std::size_t k = 4;
    std::size_t m = 4;
    std::uint64_t seed = 0;
  };
  std::optional<RandomLp> random_lp;
  std::optional<std::filesystem::path> graph_file;
  struct RandomGraph {
    std::size_t nodes = 8;
    std::size_t edges = 14;
    std::uint64_t seed = 0;
  };
  std::optional<RandomGraph> random_graph;
  std::optional<std::filesystem::path> scenario_file;
  struct Synthetic {
    std::size_t horizon = 24;
    std::uint64_t seed = 0;
  };
  std::optional<Synthetic> synthetic;
};

struct RunConfig {
  datagen::CaseSpec spec;
  structure::LearnerConfig learner;
  InstanceSource instance;
  std::filesystem::path output_dir = "out";
  bool write_dataset = true;
  bool write_dag = true;
  bool write_heatmap = true;
  bool write_reports = true;
  bool literal_appendix = false;

  // Relative instance paths resolve against `base_dir`; output_dir against the
  // working directory. Referenced files must exist.
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");
  static RunConfig load(const std::filesystem::path& file);
  nlohmann::json to_json() const;
};

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  std::optional<double> threshold;
  bool standardize = false;
  bool literal_appendix = false;
  std::optional<std::filesystem::path> output_dir;
};

void apply_overrides(RunConfig& cfg, const RunOverrides& o);

struct Instance {
  std::optional<lp::LinearProgram> lp;
  std::optional<sp::DirectedGraph> graph;
  std::optional<energy::EnergyScenario> scenario;
};

Instance load_instance(datagen::CaseId id, const InstanceSource& source);
lp::LinearProgram lp_from_json(const nlohmann::json& j);

datagen::Dataset generate(const datagen::CaseSpec& spec, const Instance& instance, bool literal_appendix = false);

// generate -> learn -> render -> checks, writing artifacts to cfg.output_dir.
// Stage failures are reported in the returned report rather than thrown.
CaseReport run_case(const RunConfig& cfg);

}  // namespace lpstruct::harness
