#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <atomic>
#include <optional>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <sstream>
#include <thread>

#include "lpstruct/datagen/dataset_io.hpp"
#include "lpstruct/datagen/generators.hpp"
#include "lpstruct/energy/energy_lp.hpp"
#include "lpstruct/energy/scenario_io.hpp"
#include "lpstruct/error.hpp"
#include "lpstruct/harness/heatmap.hpp"
#include "lpstruct/harness/run_case.hpp"
#include "lpstruct/lp/lp_io.hpp"
#include "lpstruct/lp/revised_simplex.hpp"
#include "lpstruct/lp/simplex.hpp"
#include "lpstruct/sp/graph_io.hpp"
#include "lpstruct/sp/shortest_path.hpp"
#include "lpstruct/structure/dag_io.hpp"

namespace fs = std::filesystem;
using namespace lpstruct;
using nlohmann::json;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> lambda;
  std::optional<double> threshold;
  bool standardize = false;
  bool literal_appendix = false;
  std::size_t jobs = 1;
  bool verbose = false;
  bool quiet = false;
};

std::string num(double v) { return lp::format_double(v); }

void write_text(const std::optional<std::string>& out, const std::string& text) {
  if (!out) {
    std::cout << text;
    return;
  }
  std::ofstream f(*out, std::ios::binary);
  if (!f) throw Error("cannot write '" + *out + "'");
  f << text;
}

int cmd_solve(const Globals& g, const std::string& file, bool revised) {
  const auto prog = lp::read_lp_file(file);
  lp::SolveResult r;
  if (revised) {
    lp::SparseLpBuilder b(prog.num_vars(), prog.sense());
    for (std::size_t i = 0; i < prog.num_rows(); ++i) {
      const auto row = b.add_row(lp::RowKind::le, prog.b()[i]);
      for (std::size_t j = 0; j < prog.num_vars(); ++j)
        if (prog.a()(i, j) != 0.0) b.add_entry(row, j, prog.a()(i, j));
    }
    for (std::size_t j = 0; j < prog.num_vars(); ++j) {
      b.set_cost(j, prog.c()[j]);
      b.set_bounds(j, prog.lower()[j], prog.upper()[j]);
    }
    r = lp::solve_revised(b.build());
  } else {
    r = lp::solve(prog);
  }
  json j{{"status", lp::to_string(r.status)}, {"iterations", r.iterations}};
  std::ostringstream text;
  text << "status " << lp::to_string(r.status) << '\n';
  if (r.optimal()) {
    j["objective"] = *r.objective;
    j["s"] = *r.s;
    text << "objective " << num(*r.objective) << '\n' << "s";
    for (double v : *r.s) text << ' ' << num(v);
    text << '\n';
  }
  if (g.out) write_text(g.out, j.dump(2) + "\n");
  else std::cout << text.str();
  return 0;
}

int cmd_sp(const Globals& g, const std::string& file) {
  const auto graph = sp::read_graph_file(file);
  const auto sel = sp::solve_sp(graph);
  const auto dj = sp::dijkstra(graph);
  std::vector<std::size_t> edges;
  for (std::size_t e = 0; e < sel.size(); ++e)
    if (sel.x[e]) edges.push_back(e);
  json j{{"edges", edges}, {"cost", sp::path_cost(graph, sel)}, {"valid", sp::path_validity(graph, sel) == 1},
         {"dijkstra_cost", dj.distance}};
  if (g.out) {
    write_text(g.out, j.dump(2) + "\n");
    return 0;
  }
  std::cout << "path";
  for (std::size_t e : edges) std::cout << " x" << e + 1 << "(" << graph.edges()[e].tail << "->" << graph.edges()[e].head << ")";
  std::cout << "\ncost " << num(sp::path_cost(graph, sel)) << "\ndijkstra " << num(dj.distance) << '\n';
  return 0;
}

int cmd_energy(const Globals& g, const std::string& file, const std::string& path) {
  const auto sc = energy::read_scenario_file(file);
  energy::SolveOptions opt;
  opt.build.literal_appendix = g.literal_appendix;
  opt.path = path == "dense" ? energy::SolverPath::dense : path == "sparse" ? energy::SolverPath::sparse
                                                                         : energy::SolverPath::automatic;
  const auto sol = energy::solve_energy(sc.config, sc.series, opt);
  const auto agg = energy::aggregate_solution(sol);
  const double viol = energy::constraint_violation(sc.config, sc.series, sol, g.literal_appendix);
  json j{{"total_cost", sol.total_cost},
         {"Cap_PV", sol.cap_pv},
         {"CapS_Bat", sol.cap_bat_storage},
         {"Cap_Bat", sol.cap_bat_power},
         {"max_violation", viol},
         {"iterations", sol.iterations},
         {"solver", sol.sparse_path ? "revised" : "dense"}};
  for (std::size_t q = 0; q < agg.size(); ++q) j["aggregates"][std::string(energy::kAggregateNames[q])] = agg[q];
  j["p_Ele"] = sol.p_ele;
  j["p_Gas"] = sol.p_gas;
  j["p_PV"] = sol.p_pv;
  j["p_Bat_in"] = sol.p_bat_in;
  j["p_Bat_out"] = sol.p_bat_out;
  j["p_Bat_S"] = sol.p_bat_state;
  if (g.out) {
    write_text(g.out, j.dump(2) + "\n");
    return 0;
  }
  std::cout << "total_cost " << num(sol.total_cost) << "\nCap_PV " << num(sol.cap_pv) << "\nCapS_Bat "
            << num(sol.cap_bat_storage) << "\nCap_Bat " << num(sol.cap_bat_power) << '\n';
  for (std::size_t q = 2; q < agg.size(); ++q) std::cout << energy::kAggregateNames[q] << ' ' << num(agg[q]) << '\n';
  std::cout << "max_violation " << num(viol) << '\n';
  return 0;
}

int cmd_synth(const Globals& g, std::size_t horizon) {
  energy::EnergyScenario sc;
  sc.config.horizon = horizon;
  sc.series = energy::synthetic_timeseries(horizon, g.seed.value_or(0));
  std::ostringstream text;
  energy::write_scenario(text, sc);
  write_text(g.out, text.str());
  return 0;
}

int cmd_gen(const Globals& g, const std::string& case_name, const std::optional<std::string>& instance,
            const std::optional<std::string>& spec_file, std::optional<std::size_t> n, bool invert,
            std::optional<std::size_t> threads) {
  datagen::CaseSpec spec;
  if (spec_file) {
    std::ifstream in(*spec_file);
    if (!in) throw Error("cannot open case spec '" + *spec_file + "'");
    json j = json::parse(in, nullptr, true, true);
    if (j.contains("spec")) j = j.at("spec");
    j["case"] = case_name;
    spec = datagen::CaseSpec::from_json(j);
  } else {
    spec.id = datagen::case_from_string(case_name);
  }
  if (g.seed) spec.seed = *g.seed;
  if (n) spec.n = *n;
  if (invert) spec.invert_indicator = true;
  if (g.standardize) spec.standardize = true;
  spec.threads = threads.value_or(g.jobs);
  spec.validate();

  harness::InstanceSource src;
  if (instance) {
    if (!fs::exists(*instance)) throw Error("instance file '" + *instance + "' does not exist");
    if (datagen::is_general(spec.id)) src.lp_file = *instance;
    else if (datagen::is_sp(spec.id)) src.graph_file = *instance;
    else src.scenario_file = *instance;
  }
  const auto ds = harness::generate(spec, harness::load_instance(spec.id, src), g.literal_appendix);
  if (g.out) {
    datagen::write_dataset_file(*g.out, ds);
    spdlog::info("wrote {} ({} x {}, config {})", *g.out, ds.rows(), ds.cols(), ds.provenance().config_hash);
  } else {
    datagen::write_dataset_csv(std::cout, ds);
  }
  return 0;
}

int cmd_learn(const Globals& g, const std::string& file, const std::optional<std::string>& heatmap) {
  const auto ds = datagen::read_dataset_file(file);
  structure::LearnerConfig cfg;
  if (g.lambda) cfg.lambda = *g.lambda;
  if (g.threshold) cfg.w = *g.threshold;
  const auto data = g.standardize ? datagen::standardize(ds) : ds;
  const auto dag = structure::learn(data, cfg);
  if (g.out) {
    structure::write_dag_files(*g.out, dag,
                               {{"source", file}, {"config_hash", ds.provenance().config_hash}, {"seed", ds.provenance().seed}});
  } else {
    structure::write_dag_csv(std::cout, dag.w, dag.labels);
  }
  if (heatmap) {
    std::ofstream f(*heatmap, std::ios::binary);
    if (!f) throw Error("cannot write '" + *heatmap + "'");
    f << harness::render_heatmap(dag, fs::path(file).filename().string());
  }
  std::cerr << "converged " << (dag.converged ? "yes" : "no") << ", h " << dag.h_final << ", threshold "
            << dag.threshold << ", " << dag.edges().size() << " edges\n";
  return 0;
}

int cmd_run_case(const Globals& g, const std::vector<std::string>& files, const std::vector<std::uint64_t>& seeds,
                 bool strict) {
  struct Job {
    harness::RunConfig cfg;
  };
  std::vector<Job> jobs;
  for (const auto& f : files) {
    harness::RunConfig base = harness::RunConfig::load(f);
    harness::RunOverrides o;
    o.lambda = g.lambda;
    o.threshold = g.threshold;
    o.standardize = g.standardize;
    o.literal_appendix = g.literal_appendix;
    const bool many = files.size() > 1 || seeds.size() > 1;
    const std::string stem = fs::path(f).stem().string();
    std::vector<std::optional<std::uint64_t>> run_seeds;
    if (seeds.empty()) run_seeds.push_back(g.seed);
    for (auto s : seeds) run_seeds.emplace_back(s);
    for (const auto& s : run_seeds) {
      harness::RunConfig cfg = base;
      o.seed = s;
      if (g.out) {
        fs::path dir = *g.out;
        if (many) dir /= stem;
        if (seeds.size() > 1) dir /= "seed" + std::to_string(*s);
        o.output_dir = dir;
      } else if (seeds.size() > 1) {
        o.output_dir = base.output_dir / ("seed" + std::to_string(*s));
      }
      harness::apply_overrides(cfg, o);
      jobs.push_back({std::move(cfg)});
    }
  }

  std::vector<harness::CaseReport> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) reports[i] = harness::run_case(jobs[i].cfg);
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::max<std::size_t>(1, std::min(g.jobs, jobs.size())); ++t) pool.emplace_back(worker);
  }

  int code = 0;
  for (const auto& r : reports) {
    std::cout << harness::to_text(r);
    if (!r.ok()) code = 1;
    else if (strict && !r.asserted_checks_pass() && code == 0) code = 3;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpstruct: LP solvers, LP-derived datasets and DAG structure learning"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output file or directory");
  app.add_option("--lambda", g.lambda, "L1 strength of the structure learner")->check(CLI::NonNegativeNumber);
  app.add_option("--threshold", g.threshold, "Edge threshold w")->check(CLI::NonNegativeNumber);
  app.add_flag("--standardize", g.standardize, "Standardize dataset columns before learning");
  app.add_flag("--literal-appendix", g.literal_appendix, "Energy model: battery rows exactly as printed in the model listing");
  app.add_option("--jobs", g.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", g.verbose, "Debug logging");
  app.add_flag("-q,--quiet", g.quiet, "Errors only");

  std::string file, path = "auto", case_name;
  std::vector<std::string> files;
  std::vector<std::uint64_t> seeds;
  bool revised = false, invert = false, strict = false;
  std::optional<std::string> instance, spec_file, heatmap;
  std::optional<std::size_t> n, threads;
  std::size_t horizon = 24;

  auto* solve = app.add_subcommand("solve", "Solve an LP file");
  solve->add_option("lp-file", file, "LP file")->required();
  solve->add_flag("--revised", revised, "Use the sparse revised simplex");

  auto* spc = app.add_subcommand("sp", "Shortest path of a graph file via its LP");
  spc->add_option("graph-file", file, "Graph file")->required();

  auto* en = app.add_subcommand("energy", "Solve an energy scenario");
  en->add_option("scenario-file", file, "Scenario file")->required();
  en->add_option("--path", path, "Solver path")->check(CLI::IsMember({"auto", "dense", "sparse"}));

  auto* synth = app.add_subcommand("energy-synth", "Write a synthetic energy scenario");
  synth->add_option("--horizon", horizon, "Number of time steps")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "Generate a case dataset");
  gen->add_option("case", case_name, "Case id")
      ->required()
      ->check(CLI::IsMember({"general_xy", "general_by", "general_bs", "general_cs", "general_cabs", "sp_xy", "sp_As",
                             "energy_cs"}));
  gen->add_option("--instance", instance, "LP, graph or scenario file (default: built-in)");
  gen->add_option("--config", spec_file, "Case spec or run config JSON");
  gen->add_option("-n,--samples", n, "Sample count")->check(CLI::PositiveNumber);
  gen->add_flag("--invert", invert, "Encode feasibility as 0");
  gen->add_option("--threads", threads, "Generator threads (defaults to --jobs)")->check(CLI::PositiveNumber);

  auto* learn = app.add_subcommand("learn", "Learn a weighted DAG from a dataset CSV");
  learn->add_option("dataset", file, "Dataset CSV")->required();
  learn->add_option("--heatmap", heatmap, "Also write an SVG heatmap");

  auto* run = app.add_subcommand("run-case", "Run generate, learn, render and checks from run configs");
  run->add_option("config-file", files, "Run config JSON")->required();
  run->add_option("--seeds", seeds, "Run each config once per seed")->delimiter(',');
  run->add_flag("--strict", strict, "Exit 3 when an asserted check fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  spdlog::set_default_logger(spdlog::stderr_color_mt("lpstruct"));
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(g.verbose ? spdlog::level::debug : g.quiet ? spdlog::level::err : spdlog::level::info);

  try {
    if (*solve) return cmd_solve(g, file, revised);
    if (*spc) return cmd_sp(g, file);
    if (*en) return cmd_energy(g, file, path);
    if (*synth) return cmd_synth(g, horizon);
    if (*gen) return cmd_gen(g, case_name, instance, spec_file, n, invert, threads);
    if (*learn) return cmd_learn(g, file, heatmap);
    if (*run) return cmd_run_case(g, files, seeds, strict);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 2;
}
