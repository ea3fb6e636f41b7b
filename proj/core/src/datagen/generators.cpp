#include "lpstruct/datagen/generators.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <spdlog/spdlog.h>
#include <sstream>
#include <thread>

#include "lpstruct/error.hpp"
#include "lpstruct/energy/scenario_io.hpp"
#include "lpstruct/lp/lp_io.hpp"
#include "lpstruct/lp/simplex.hpp"
#include "lpstruct/sp/graph_io.hpp"
#include "lpstruct/sp/shortest_path.hpp"

namespace lpstruct::datagen {

namespace {

constexpr std::size_t kMaxAttemptsPerRow = 1000;
constexpr double kMaxRejectionRate = 0.95;
constexpr double kSolutionCheckTol = 1e-6;

// Runs fn(row) for every row; rows are independent, each draws from its own
// counter-derived stream, so the result does not depend on `threads`.
void for_each_row(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < std::min(threads, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t case_salt(CaseId id) { return fnv1a64(to_string(id)); }

std::string indexed(const char* prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

Dataset finish(const CaseSpec& spec, Matrix values, std::vector<Column> columns, const std::string& digest,
               std::size_t rejections) {
  Provenance prov;
  prov.case_id = std::string(to_string(spec.id));
  prov.seed = spec.seed;
  prov.config_hash = config_hash(spec, digest);
  prov.rejections = rejections;
  if (rejections > 0) spdlog::info("{}: rejected {} infeasible/unbounded draws", prov.case_id, rejections);
  Dataset ds(std::move(values), std::move(columns), std::move(prov));
  if (spec.drop_constant_columns) ds = ds.without_constant_columns();
  if (ds.rows() < 10 * ds.cols())
    spdlog::warn("{}: n = {} is below 10 x d = {}", ds.provenance().case_id, ds.rows(), 10 * ds.cols());
  if (spec.standardize) {
    spdlog::info("{}: standardizing columns; learned orderings may then reflect data scale less (variance sorting)",
                 ds.provenance().case_id);
    ds = standardize(ds);
  }
  return ds;
}

// Shared rejection bookkeeping for the parametric cases.
class RejectionCounter {
 public:
  void record(std::size_t attempts) {
    attempts_ += attempts;
    rejected_ += attempts - 1;
  }
  std::size_t rejected() const { return rejected_; }
  void check(CaseId id, const std::string& last_status) const {
    const double rate = attempts_ == 0 ? 0.0 : static_cast<double>(rejected_) / static_cast<double>(attempts_);
    if (rate > kMaxRejectionRate)
      throw GenerationError(std::string(to_string(id)) + ": rejection rate " + std::to_string(rate) + " (" +
                            std::to_string(rejected_) + " of " + std::to_string(attempts_.load()) +
                            " draws) exceeds 95%; last status: " + last_status + ". Adjust the sampling ranges.");
  }

 private:
  std::atomic<std::size_t> attempts_{0};
  std::atomic<std::size_t> rejected_{0};
};

std::string lp_digest(const lp::LinearProgram& lp) {
  std::ostringstream out;
  lp::write_lp(out, lp);
  return out.str();
}

}  // namespace

std::vector<lp::Range> default_box(const lp::LinearProgram& lp) {
  std::vector<lp::Range> box;
  const Vector base_activity = matvec(lp.a(), lp.lower());
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const double lo = lp.lower()[j];
    Vector c(lp.num_vars(), 0.0);
    c[j] = 1.0;
    const auto r = lp::solve(lp::LinearProgram(lp.a(), lp.b(), c, lp::Sense::maximize, lp.lower(), lp.upper()));
    double reach = 0.0;
    if (r.optimal()) {
      reach = (*r.s)[j] - lo;
    } else if (r.status == lp::SolveStatus::unbounded) {
      // Unbounded along x_j: cover every row's crossing of the x_j axis.
      for (std::size_t row = 0; row < lp.num_rows(); ++row) {
        const double a = lp.a()(row, j);
        if (a == 0.0) continue;
        const double t = (lp.b()[row] - base_activity[row]) / a;
        if (t > 0.0 && std::isfinite(t)) reach = std::max(reach, t);
      }
      if (reach == 0.0)
        throw GenerationError("default x box: coordinate x" + std::to_string(j + 1) +
                              " is unbounded and crosses no constraint; configure general.x_box");
    } else {
      throw GenerationError("default x box: the polytope is " + std::string(lp::to_string(r.status)) +
                            "; configure general.x_box");
    }
    box.push_back({lo, lo + std::max(1e-9, 1.25 * reach)});
  }
  return box;
}

Dataset gen_general(const CaseSpec& spec, const lp::LinearProgram& base) {
  spec.validate();
  if (!is_general(spec.id)) throw InvalidArgument("gen_general: case " + std::string(to_string(spec.id)) + " is not a general-LP case");
  const std::size_t k = base.num_vars();
  const std::size_t m = base.num_rows();
  const std::size_t n = spec.n;
  const std::uint64_t salt = case_salt(spec.id);
  const std::string digest = lp_digest(base);

  std::vector<lp::Range> box = spec.general.x_box;
  const bool needs_box =
      spec.id == CaseId::general_xy || (spec.id == CaseId::general_by && spec.general.probe == ProbeMode::random);
  if (needs_box && box.empty()) box = default_box(base);
  if (needs_box && box.size() != k) throw DimensionError("gen_general: x_box", k, box.size());

  std::vector<Column> cols;
  Matrix values;
  RejectionCounter rejections;
  std::string last_status = "none";
  std::mutex status_mutex;

  const auto draw_x = [&](Rng& rng) {
    Vector x(k);
    for (std::size_t j = 0; j < k; ++j) x[j] = rng.uniform(box[j].lo, box[j].hi);
    return x;
  };
  // Solves a sampled LP, verifying the vertex against that same LP.
  const auto solve_checked = [&](const lp::LinearProgram& sample) -> std::optional<Vector> {
    const auto r = lp::solve(sample);
    if (!r.optimal()) {
      std::lock_guard lock(status_mutex);
      last_status = std::string(lp::to_string(r.status));
      return std::nullopt;
    }
    if (lp::max_violation(sample, *r.s) > kSolutionCheckTol)
      throw GenerationError("gen_general: solver returned a point violating its LP by more than 1e-6");
    return r.s;
  };
  const auto resample = [&](std::size_t row, auto&& attempt) {
    Rng rng = Rng::stream(spec.seed, salt, row);
    for (std::size_t tries = 1; tries <= kMaxAttemptsPerRow; ++tries) {
      if (attempt(rng)) {
        rejections.record(tries);
        return;
      }
    }
    rejections.record(kMaxAttemptsPerRow + 1);
    rejections.check(spec.id, last_status);
    throw GenerationError("gen_general: row " + std::to_string(row) + " rejected " +
                          std::to_string(kMaxAttemptsPerRow) + " consecutive draws (last status " + last_status + ")");
  };

  switch (spec.id) {
    case CaseId::general_xy: {
      for (std::size_t j = 0; j < k; ++j) cols.push_back({Role::decision, indexed("x", j)});
      cols.push_back({Role::indicator, "y"});
      values = Matrix(n, k + 1);
      for_each_row(n, spec.threads, [&](std::size_t i) {
        Rng rng = Rng::stream(spec.seed, salt, i);
        const Vector x = draw_x(rng);
        for (std::size_t j = 0; j < k; ++j) values(i, j) = x[j];
        values(i, k) = lp::feasibility(base, x, spec.invert_indicator);
      });
      break;
    }
    case CaseId::general_by: {
      for (std::size_t r = 0; r < m; ++r) cols.push_back({Role::rhs, indexed("b", r)});
      cols.push_back({Role::indicator, "y"});
      Vector probe = spec.general.probe_point;
      if (spec.general.probe == ProbeMode::fixed) {
        if (probe.empty()) {
          // Optimal vertex of the base LP: it lies on the binding faces, so
          // moving b flips its feasibility. Box centre if there is none.
          const auto r = lp::solve(base);
          if (r.optimal()) {
            probe = *r.s;
          } else {
            if (box.empty()) box = default_box(base);
            for (const auto& range : box) probe.push_back(0.5 * (range.lo + range.hi));
          }
        }
        if (probe.size() != k) throw DimensionError("gen_general: probe_point", k, probe.size());
      }
      values = Matrix(n, m + 1);
      for_each_row(n, spec.threads, [&](std::size_t i) {
        Rng rng = Rng::stream(spec.seed, salt, i);
        Vector b(m);
        for (double& v : b) v = rng.uniform(spec.general.b.lo, spec.general.b.hi);
        const Vector x = spec.general.probe == ProbeMode::fixed ? probe : draw_x(rng);
        const lp::LinearProgram sample(base.a(), b, base.c(), base.sense(), base.lower(), base.upper());
        for (std::size_t r = 0; r < m; ++r) values(i, r) = b[r];
        values(i, m) = lp::feasibility(sample, x, spec.invert_indicator);
      });
      break;
    }
    case CaseId::general_bs: {
      for (std::size_t r = 0; r < m; ++r) cols.push_back({Role::rhs, indexed("b", r)});
      for (std::size_t j = 0; j < k; ++j) cols.push_back({Role::solution, indexed("s", j)});
      values = Matrix(n, m + k);
      for_each_row(n, spec.threads, [&](std::size_t i) {
        resample(i, [&](Rng& rng) {
          Vector b(m);
          for (double& v : b) v = rng.uniform(spec.general.b.lo, spec.general.b.hi);
          const lp::LinearProgram sample(base.a(), b, base.c(), base.sense(), base.lower(), base.upper());
          const auto s = solve_checked(sample);
          if (!s) return false;
          for (std::size_t r = 0; r < m; ++r) values(i, r) = b[r];
          for (std::size_t j = 0; j < k; ++j) values(i, m + j) = (*s)[j];
          return true;
        });
      });
      break;
    }
    case CaseId::general_cs: {
      for (std::size_t j = 0; j < k; ++j) cols.push_back({Role::cost, indexed("c", j)});
      for (std::size_t j = 0; j < k; ++j) cols.push_back({Role::solution, indexed("s", j)});
      values = Matrix(n, 2 * k);
      for_each_row(n, spec.threads, [&](std::size_t i) {
        resample(i, [&](Rng& rng) {
          Vector c(k);
          for (double& v : c) v = rng.uniform(spec.general.c.lo, spec.general.c.hi);
          const lp::LinearProgram sample(base.a(), base.b(), c, base.sense(), base.lower(), base.upper());
          const auto s = solve_checked(sample);
          if (!s) return false;
          for (std::size_t j = 0; j < k; ++j) {
            values(i, j) = c[j];
            values(i, k + j) = (*s)[j];
          }
          return true;
        });
      });
      break;
    }
    case CaseId::general_cabs: {
      for (std::size_t j = 0; j < k; ++j) cols.push_back({Role::cost, indexed("c", j)});
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < k; ++j)
          cols.push_back({Role::constraint_entry, "A" + std::to_string(r + 1) + "_" + std::to_string(j + 1)});
      for (std::size_t r = 0; r < m; ++r) cols.push_back({Role::rhs, indexed("b", r)});
      for (std::size_t j = 0; j < k; ++j) cols.push_back({Role::solution, indexed("s", j)});
      const std::size_t width = k + m * k + m + k;
      values = Matrix(n, width);
      for_each_row(n, spec.threads, [&](std::size_t i) {
        resample(i, [&](Rng& rng) {
          Vector c(k);
          for (double& v : c) v = rng.uniform(spec.general.c.lo, spec.general.c.hi);
          Matrix a(m, k);
          for (double& v : a.flat()) v = rng.uniform(spec.general.a.lo, spec.general.a.hi);
          Vector b(m);
          for (double& v : b) v = rng.uniform(spec.general.b.lo, spec.general.b.hi);
          const lp::LinearProgram sample(a, b, c, base.sense(), base.lower(), base.upper());
          const auto s = solve_checked(sample);
          if (!s) return false;
          std::size_t col = 0;
          for (double v : c) values(i, col++) = v;
          for (double v : a.flat()) values(i, col++) = v;
          for (double v : b) values(i, col++) = v;
          for (double v : *s) values(i, col++) = v;
          return true;
        });
      });
      break;
    }
    default:
      break;
  }
  rejections.check(spec.id, last_status);
  return finish(spec, std::move(values), std::move(cols), digest, rejections.rejected());
}

sp::PathSelection random_path(const sp::DirectedGraph& g, Rng& rng) {
  std::vector<std::vector<std::size_t>> out(g.node_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) out[g.edges()[e].tail].push_back(e);
  for (std::size_t attempt = 0; attempt < 10'000; ++attempt) {
    sp::PathSelection sel{std::vector<std::uint8_t>(g.edge_count(), 0)};
    std::vector<bool> visited(g.node_count(), false);
    std::size_t v = g.source();
    visited[v] = true;
    while (v != g.sink()) {
      std::vector<std::size_t> options;
      for (std::size_t e : out[v])
        if (!visited[g.edges()[e].head]) options.push_back(e);
      if (options.empty()) break;
      const std::size_t e = options[rng.below(options.size())];
      sel.x[e] = 1;
      v = g.edges()[e].head;
      visited[v] = true;
    }
    if (v == g.sink()) return sel;
  }
  throw GenerationError("random_path: no source-to-sink path found");
}

Dataset gen_sp(const CaseSpec& spec, const sp::DirectedGraph& g) {
  spec.validate();
  if (!is_sp(spec.id)) throw InvalidArgument("gen_sp: case " + std::string(to_string(spec.id)) + " is not a shortest-path case");
  const auto base = sp::dijkstra(g);
  if (!base.path) throw GenerationError("gen_sp: graph has no valid source-to-sink path");
  const std::size_t E = g.edge_count();
  const std::size_t n = spec.n;
  const std::uint64_t salt = case_salt(spec.id);
  std::ostringstream digest;
  sp::write_graph(digest, g);

  std::vector<Column> cols;
  Matrix values;
  if (spec.id == CaseId::sp_xy) {
    for (std::size_t e = 0; e < E; ++e) cols.push_back({Role::decision, indexed("x", e)});
    cols.push_back({Role::indicator, "y"});
    values = Matrix(n, E + 1);
    for_each_row(n, spec.threads, [&](std::size_t i) {
      Rng rng = Rng::stream(spec.seed, salt, i);
      sp::PathSelection sel{std::vector<std::uint8_t>(E, 0)};
      if (spec.sp.mode == SpSampling::near_path && rng.bernoulli(spec.sp.path_fraction)) {
        sel = random_path(g, rng);
      } else {
        for (auto& bit : sel.x) bit = rng.bernoulli(0.5) ? 1 : 0;
      }
      for (std::size_t e = 0; e < E; ++e) values(i, e) = sel.x[e];
      const int valid = sp::path_validity(g, sel);
      values(i, E) = spec.invert_indicator ? 1 - valid : valid;
    });
  } else {
    std::vector<std::size_t> dynamic = spec.sp.dynamic_edges;
    if (dynamic.empty())
      for (std::size_t e = 0; e < E; ++e)
        if (!base.path->x[e]) dynamic.push_back(e);
    for (std::size_t e : dynamic)
      if (e >= E) throw InvalidArgument("gen_sp: dynamic edge index " + std::to_string(e) + " out of range");
    for (std::size_t e : dynamic) {
      cols.push_back({Role::constraint_entry, "A_v" + std::to_string(g.edges()[e].tail) + "_x" + std::to_string(e + 1)});
      cols.push_back({Role::constraint_entry, "A_v" + std::to_string(g.edges()[e].head) + "_x" + std::to_string(e + 1)});
    }
    for (std::size_t e = 0; e < E; ++e) cols.push_back({Role::solution, indexed("s", e)});
    const std::size_t width = 2 * dynamic.size() + E;
    values = Matrix(n, width);
    for_each_row(n, spec.threads, [&](std::size_t i) {
      Rng rng = Rng::stream(spec.seed, salt, i);
      std::vector<bool> present(E, true);
      Vector costs = g.costs();
      for (std::size_t e : dynamic) {
        present[e] = rng.bernoulli(spec.sp.presence);
        costs[e] = rng.uniform(spec.sp.dynamic_cost.lo, spec.sp.dynamic_cost.hi);
      }
      std::vector<sp::Edge> edges;
      Vector sub_costs;
      std::vector<std::size_t> origin;
      for (std::size_t e = 0; e < E; ++e) {
        if (!present[e]) continue;
        edges.push_back(g.edges()[e]);
        sub_costs.push_back(costs[e]);
        origin.push_back(e);
      }
      const sp::DirectedGraph sub(g.node_count(), std::move(edges), std::move(sub_costs), g.source(), g.sink());
      const sp::PathSelection s = sp::solve_sp(sub);
      std::size_t col = 0;
      for (std::size_t e : dynamic) {
        values(i, col++) = present[e] ? 1.0 : 0.0;
        values(i, col++) = present[e] ? -1.0 : 0.0;
      }
      for (std::size_t q = 0; q < origin.size(); ++q) values(i, col + origin[q]) = s.x[q];
    });
  }
  return finish(spec, std::move(values), std::move(cols), digest.str(), 0);
}

Dataset gen_energy(const CaseSpec& spec, const energy::EnergyScenario& base, const energy::SolveOptions& options) {
  spec.validate();
  if (spec.id != CaseId::energy_cs) throw InvalidArgument("gen_energy: case must be energy_cs");
  base.config.validate();
  base.series.validate(base.config.horizon);
  const std::size_t n = spec.n;
  const std::uint64_t salt = case_salt(spec.id);
  std::ostringstream digest;
  energy::write_scenario(digest, base);
  if (options.build.literal_appendix) digest << "literal_appendix\n";

  std::vector<Column> cols{{Role::cost, "c_PV"}, {Role::cost, "c_Bat"}, {Role::cost, "c_Ele"},
                           {Role::cost, "c_Gas"}, {Role::rhs, "Demand"}};
  for (auto name : energy::kAggregateNames) cols.push_back({Role::solution, std::string(name)});
  Matrix values(n, cols.size());
  const auto& s = spec.energy;
  for_each_row(n, spec.threads, [&](std::size_t i) {
    Rng rng = Rng::stream(spec.seed, salt, i);
    energy::EnergyConfig cfg = base.config;
    cfg.c_pv *= rng.uniform(s.c_pv.lo, s.c_pv.hi);
    cfg.c_bat *= rng.uniform(s.c_bat.lo, s.c_bat.hi);
    cfg.c_ele *= rng.uniform(s.c_ele.lo, s.c_ele.hi);
    cfg.c_gas *= rng.uniform(s.c_gas.lo, s.c_gas.hi);
    const double demand_scale = rng.uniform(s.demand.lo, s.demand.hi);
    energy::EnergyTimeseries ts = base.series;
    double total = 0.0;
    for (double& d : ts.demand) {
      d *= demand_scale;
      total += d;
    }
    energy::EnergySolution sol;
    try {
      sol = energy::solve_energy(cfg, ts, options);
    } catch (const Error& e) {
      throw GenerationError("gen_energy: sample " + std::to_string(i) + " failed (c_PV=" + std::to_string(cfg.c_pv) +
                            ", c_Bat=" + std::to_string(cfg.c_bat) + ", c_Ele=" + std::to_string(cfg.c_ele) +
                            ", c_Gas=" + std::to_string(cfg.c_gas) + ", demand x" + std::to_string(demand_scale) +
                            "): " + e.what());
    }
    const auto out = energy::aggregate_solution(sol);
    values(i, 0) = cfg.c_pv;
    values(i, 1) = cfg.c_bat;
    values(i, 2) = cfg.c_ele;
    values(i, 3) = cfg.c_gas;
    values(i, 4) = total;
    for (std::size_t q = 0; q < out.size(); ++q) values(i, 5 + q) = out[q];
  });
  return finish(spec, std::move(values), std::move(cols), digest.str(), 0);
}

}  // namespace lpstruct::datagen
