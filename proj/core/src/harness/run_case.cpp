#include "lpstruct/harness/run_case.hpp"

#include <chrono>
#include <fstream>
#include <spdlog/spdlog.h>

#include "lpstruct/datagen/dataset_io.hpp"
#include "lpstruct/datagen/generators.hpp"
#include "lpstruct/energy/scenario_io.hpp"
#include "lpstruct/error.hpp"
#include "lpstruct/harness/heatmap.hpp"
#include "lpstruct/harness/instances.hpp"
#include "lpstruct/lp/lp_io.hpp"
#include "lpstruct/lp/random_lp.hpp"
#include "lpstruct/sp/graph_io.hpp"
#include "lpstruct/structure/dag_io.hpp"

namespace lpstruct::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve_existing(const json& value, const fs::path& base, const char* key) {
  fs::path p = value.get<std::string>();
  if (p.is_relative()) p = base / p;
  if (!fs::exists(p)) throw InvalidArgument(std::string("run config: ") + key + " file '" + p.string() + "' does not exist");
  return p.lexically_normal();
}

structure::LearnerConfig learner_from_json(const json& j) {
  structure::LearnerConfig c;
  if (j.is_null()) return c;
  c.lambda = j.value("lambda", c.lambda);
  c.w = j.value("w", c.w);
  c.rho_init = j.value("rho_init", c.rho_init);
  c.rho_max = j.value("rho_max", c.rho_max);
  c.alpha_init = j.value("alpha_init", c.alpha_init);
  c.h_tol = j.value("h_tol", c.h_tol);
  c.max_outer = j.value("max_outer", c.max_outer);
  c.max_inner = j.value("max_inner", c.max_inner);
  c.inner_tol = j.value("inner_tol", c.inner_tol);
  c.validate();
  return c;
}

json learner_to_json(const structure::LearnerConfig& c) {
  return {{"lambda", c.lambda},       {"w", c.w},         {"rho_init", c.rho_init},
          {"rho_max", c.rho_max},     {"alpha_init", c.alpha_init}, {"h_tol", c.h_tol},
          {"max_outer", c.max_outer}, {"max_inner", c.max_inner},   {"inner_tol", c.inner_tol}};
}

}  // namespace

lp::LinearProgram lp_from_json(const json& j) {
  try {
    const auto rows = j.at("A").get<std::vector<std::vector<double>>>();
    Matrix a(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != a.cols()) throw DimensionError("inline LP: ragged A row", a.cols(), rows[i].size());
      for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = rows[i][k];
    }
    const auto sense = lp::sense_from_string(j.value("sense", std::string("maximize")));
    return lp::LinearProgram(a, j.at("b").get<Vector>(), j.at("c").get<Vector>(), sense,
                             j.value("lower", Vector{}), j.value("upper", Vector{}));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("inline LP: ") + e.what());
  }
}

RunConfig RunConfig::from_json(const json& j, const fs::path& base_dir) {
  RunConfig cfg;
  try {
    cfg.spec = datagen::CaseSpec::from_json(j.at("spec"));
    cfg.learner = learner_from_json(j.contains("learner") ? j.at("learner") : json());
    if (j.contains("instance")) {
      const auto& in = j.at("instance");
      if (in.contains("lp")) cfg.instance.lp_file = resolve_existing(in.at("lp"), base_dir, "lp");
      if (in.contains("lp_inline")) cfg.instance.lp_inline = in.at("lp_inline");
      if (in.contains("random_lp")) {
        const auto& r = in.at("random_lp");
        InstanceSource::RandomLp s;
        s.k = r.value("k", s.k);
        s.m = r.value("m", s.m);
        s.seed = r.value("seed", s.seed);
        cfg.instance.random_lp = s;
      }
      if (in.contains("graph")) cfg.instance.graph_file = resolve_existing(in.at("graph"), base_dir, "graph");
      if (in.contains("random_graph")) {
        const auto& r = in.at("random_graph");
        InstanceSource::RandomGraph s;
        s.nodes = r.value("nodes", s.nodes);
        s.edges = r.value("edges", s.edges);
        s.seed = r.value("seed", s.seed);
        cfg.instance.random_graph = s;
      }
      if (in.contains("scenario")) cfg.instance.scenario_file = resolve_existing(in.at("scenario"), base_dir, "scenario");
      if (in.contains("synthetic")) {
        const auto& r = in.at("synthetic");
        InstanceSource::Synthetic s;
        s.horizon = r.value("T", s.horizon);
        s.seed = r.value("seed", s.seed);
        cfg.instance.synthetic = s;
      }
      const int lp_sources = cfg.instance.lp_file.has_value() + cfg.instance.lp_inline.has_value() +
                             cfg.instance.random_lp.has_value();
      if (lp_sources > 1) throw InvalidArgument("run config: more than one LP source");
      if (cfg.instance.graph_file && cfg.instance.random_graph) throw InvalidArgument("run config: more than one graph source");
      if (cfg.instance.scenario_file && cfg.instance.synthetic)
        throw InvalidArgument("run config: more than one scenario source");
    }
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    else cfg.output_dir = fs::path("out") / std::string(datagen::to_string(cfg.spec.id));
    if (j.contains("artifacts")) {
      const auto& a = j.at("artifacts");
      cfg.write_dataset = a.value("dataset", true);
      cfg.write_dag = a.value("dag", true);
      cfg.write_heatmap = a.value("heatmap", true);
      cfg.write_reports = a.value("report", true);
    }
    cfg.literal_appendix = j.value("literal_appendix", false);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("run config: ") + e.what());
  }
  return cfg;
}

RunConfig RunConfig::load(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw InvalidArgument("run config '" + file.string() + "' cannot be opened");
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::exception& e) {
    throw ParseError(file.string(), 0, e.what());
  }
  return from_json(j, file.parent_path().empty() ? fs::path(".") : file.parent_path());
}

json RunConfig::to_json() const {
  json in = json::object();
  if (instance.lp_file) in["lp"] = fs::absolute(*instance.lp_file).lexically_normal().string();
  if (instance.lp_inline) in["lp_inline"] = *instance.lp_inline;
  if (instance.random_lp)
    in["random_lp"] = {{"k", instance.random_lp->k}, {"m", instance.random_lp->m}, {"seed", instance.random_lp->seed}};
  if (instance.graph_file) in["graph"] = fs::absolute(*instance.graph_file).lexically_normal().string();
  if (instance.random_graph)
    in["random_graph"] = {{"nodes", instance.random_graph->nodes},
                          {"edges", instance.random_graph->edges},
                          {"seed", instance.random_graph->seed}};
  if (instance.scenario_file) in["scenario"] = fs::absolute(*instance.scenario_file).lexically_normal().string();
  if (instance.synthetic) in["synthetic"] = {{"T", instance.synthetic->horizon}, {"seed", instance.synthetic->seed}};
  return {{"spec", spec.to_json()},
          {"learner", learner_to_json(learner)},
          {"instance", in},
          {"output_dir", output_dir.string()},
          {"artifacts", {{"dataset", write_dataset}, {"dag", write_dag}, {"heatmap", write_heatmap}, {"report", write_reports}}},
          {"literal_appendix", literal_appendix}};
}

void apply_overrides(RunConfig& cfg, const RunOverrides& o) {
  if (o.seed) cfg.spec.seed = *o.seed;
  if (o.lambda) cfg.learner.lambda = *o.lambda;
  if (o.threshold) cfg.learner.w = *o.threshold;
  if (o.standardize) cfg.spec.standardize = true;
  if (o.literal_appendix) cfg.literal_appendix = true;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  cfg.learner.validate();
  cfg.spec.validate();
}

Instance load_instance(datagen::CaseId id, const InstanceSource& src) {
  Instance inst;
  if (datagen::is_general(id)) {
    if (src.lp_file) inst.lp = lp::read_lp_file(*src.lp_file);
    else if (src.lp_inline) inst.lp = lp_from_json(*src.lp_inline);
    else if (src.random_lp) inst.lp = lp::random_lp(src.random_lp->k, src.random_lp->m, {}, src.random_lp->seed);
    else inst.lp = diet_lp();
  } else if (datagen::is_sp(id)) {
    if (src.graph_file) inst.graph = sp::read_graph_file(*src.graph_file);
    else if (src.random_graph) inst.graph = sp::random_dag(src.random_graph->nodes, src.random_graph->edges, src.random_graph->seed);
    else inst.graph = sp::bridge_graph();
  } else {
    if (src.scenario_file) inst.scenario = energy::read_scenario_file(*src.scenario_file);
    else if (src.synthetic) inst.scenario = default_scenario(src.synthetic->horizon, src.synthetic->seed);
    else inst.scenario = default_scenario(24);
  }
  return inst;
}

datagen::Dataset generate(const datagen::CaseSpec& spec, const Instance& inst, bool literal_appendix) {
  if (datagen::is_general(spec.id)) {
    if (!inst.lp) throw InvalidArgument("generate: case needs an LP instance");
    return datagen::gen_general(spec, *inst.lp);
  }
  if (datagen::is_sp(spec.id)) {
    if (!inst.graph) throw InvalidArgument("generate: case needs a graph instance");
    return datagen::gen_sp(spec, *inst.graph);
  }
  if (!inst.scenario) throw InvalidArgument("generate: case needs an energy scenario");
  energy::SolveOptions options;
  options.build.literal_appendix = literal_appendix;
  return datagen::gen_energy(spec, *inst.scenario, options);
}

CaseReport run_case(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CaseReport report;
  report.case_id = std::string(datagen::to_string(cfg.spec.id));
  report.seed = cfg.spec.seed;
  std::string stage = "config";
  try {
    fs::create_directories(cfg.output_dir);
    {
      const auto p = cfg.output_dir / "config.json";
      std::ofstream out(p, std::ios::binary);
      if (!out) throw Error("output directory '" + cfg.output_dir.string() + "' is not writable");
      out << cfg.to_json().dump(2) << '\n';
      report.artifacts["config"] = p.string();
    }

    stage = "instance";
    const Instance inst = load_instance(cfg.spec.id, cfg.instance);

    stage = "generate";
    const datagen::Dataset ds = generate(cfg.spec, inst, cfg.literal_appendix);
    report.config_hash = ds.provenance().config_hash;
    report.rows = ds.rows();
    report.cols = ds.cols();
    if (cfg.write_dataset) {
      const auto p = cfg.output_dir / "dataset.csv";
      datagen::write_dataset_file(p, ds);
      report.artifacts["dataset"] = p.string();
    }

    stage = "learn";
    const structure::WeightedDag dag = structure::learn(ds, cfg.learner);
    report.converged = dag.converged;
    report.h_final = dag.h_final;
    report.threshold = dag.threshold;
    if (cfg.write_dag) {
      const auto p = cfg.output_dir / "dag.csv";
      structure::write_dag_files(p, dag, {{"seed", cfg.spec.seed}, {"config_hash", report.config_hash}, {"case", report.case_id}});
      report.artifacts["dag"] = p.string();
    }

    stage = "render";
    if (cfg.write_heatmap) {
      const auto p = cfg.output_dir / "heatmap.svg";
      std::ofstream out(p, std::ios::binary);
      if (!out) throw Error("cannot write '" + p.string() + "'");
      out << render_heatmap(dag, report.case_id + "  seed " + std::to_string(cfg.spec.seed) + "  config " +
                                     report.config_hash);
      report.artifacts["heatmap"] = p.string();
    }

    stage = "checks";
    report.checks = evaluate_checks(cfg.spec, {ds, dag, inst.graph ? &*inst.graph : nullptr});
  } catch (const std::exception& e) {
    report.failed_stage = stage;
    report.failure = e.what();
    spdlog::error("{}: stage '{}' failed: {}", report.case_id, stage, e.what());
  }
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.write_reports && fs::is_directory(cfg.output_dir)) {
    try {
      write_report(cfg.output_dir, report);
    } catch (const std::exception& e) {
      if (!report.failed_stage) {
        report.failed_stage = "report";
        report.failure = e.what();
      }
    }
  }
  return report;
}

}  // namespace lpstruct::harness
