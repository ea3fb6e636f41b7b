#include "lpstruct/energy/energy_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <spdlog/spdlog.h>

#include "lpstruct/error.hpp"
#include "lpstruct/lp/revised_simplex.hpp"
#include "lpstruct/lp/simplex.hpp"
#include "lpstruct/rng.hpp"

namespace lpstruct::energy {

void EnergyConfig::validate() const {
  for (double v : {c_pv, c_bat, c_bat_power, c_ele, c_gas})
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("EnergyConfig: costs must be finite and nonnegative");
  if (!std::isfinite(u_gas) || u_gas < 0.0) throw InvalidArgument("EnergyConfig: U_Gas must be nonnegative");
  if (!(delta_t > 0.0) || !std::isfinite(delta_t)) throw InvalidArgument("EnergyConfig: delta_t must be positive");
  if (horizon < 1) throw InvalidArgument("EnergyConfig: T must be at least 1");
}

void EnergyTimeseries::validate(std::size_t horizon) const {
  if (demand.size() != horizon) throw DimensionError("EnergyTimeseries: demand", horizon, demand.size());
  if (avail_pv.size() != horizon) throw DimensionError("EnergyTimeseries: avail_PV", horizon, avail_pv.size());
  for (double d : demand)
    if (!std::isfinite(d) || d < 0.0) throw InvalidArgument("EnergyTimeseries: demand must be nonnegative");
  for (double a : avail_pv)
    if (!std::isfinite(a) || a < 0.0 || a > 1.0) throw InvalidArgument("EnergyTimeseries: avail_PV must lie in [0, 1]");
}

lp::SparseLinearProgram build_energy_lp(const EnergyConfig& cfg, const EnergyTimeseries& ts,
                                        const BuildOptions& options) {
  cfg.validate();
  ts.validate(cfg.horizon);
  const std::size_t T = cfg.horizon;
  const auto v = [T](Block b, std::size_t t) { return var_index(b, t, T); };
  lp::SparseLpBuilder builder(kCapacityVars + 6 * T, lp::Sense::minimize);

  builder.set_cost(kCapPv, cfg.c_pv);
  builder.set_cost(kCapStorage, cfg.c_bat);
  builder.set_cost(kCapPower, cfg.c_bat_power);
  for (std::size_t t = 0; t < T; ++t) {
    builder.set_cost(v(Block::ele, t), cfg.c_ele);
    builder.set_cost(v(Block::gas, t), cfg.c_gas);
    builder.set_bounds(v(Block::gas, t), 0.0, cfg.u_gas);
  }
  builder.set_bounds(v(Block::bat_state, 0), 0.0, 0.0);

  // Storage direction: physical charging raises the state.
  const double in_sign = options.literal_appendix ? 1.0 : -1.0;
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t r = builder.add_row(lp::RowKind::eq, ts.demand[t]);
    builder.add_entry(r, v(Block::ele, t), 1.0);
    builder.add_entry(r, v(Block::pv, t), 1.0);
    builder.add_entry(r, v(Block::bat_out, t), 1.0);
    builder.add_entry(r, v(Block::bat_in, t), -1.0);
    builder.add_entry(r, v(Block::gas, t), 1.0);
  }
  // The literal variant only links consecutive states (t >= 1).
  for (std::size_t t = options.literal_appendix ? 1 : 0; t < T; ++t) {
    const std::size_t r = builder.add_row(lp::RowKind::eq, 0.0);
    builder.add_entry(r, v(Block::bat_state, t), 1.0);
    if (t > 0) builder.add_entry(r, v(Block::bat_state, t - 1), -1.0);
    builder.add_entry(r, v(Block::bat_in, t), in_sign);
    builder.add_entry(r, v(Block::bat_out, t), -in_sign);
  }
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t r = builder.add_row(lp::RowKind::le, 0.0);
    builder.add_entry(r, v(Block::pv, t), 1.0);
    builder.add_entry(r, kCapPv, -ts.avail_pv[t] * cfg.delta_t);
  }
  for (Block b : {Block::bat_in, Block::bat_out}) {
    for (std::size_t t = 0; t < T; ++t) {
      const std::size_t r = builder.add_row(lp::RowKind::le, 0.0);
      builder.add_entry(r, v(b, t), 1.0);
      builder.add_entry(r, kCapPower, -1.0);
    }
  }
  if (!options.literal_appendix) {
    for (std::size_t t = 0; t < T; ++t) {
      const std::size_t r = builder.add_row(lp::RowKind::le, 0.0);
      builder.add_entry(r, v(Block::bat_state, t), 1.0);
      builder.add_entry(r, kCapStorage, -1.0);
    }
  }
  return builder.build();
}

EnergySolution unpack_solution(const EnergyConfig& cfg, std::span<const double> x, double total_cost) {
  const std::size_t T = cfg.horizon;
  if (x.size() != kCapacityVars + 6 * T) throw DimensionError("unpack_solution", kCapacityVars + 6 * T, x.size());
  EnergySolution sol;
  sol.cap_pv = x[kCapPv];
  sol.cap_bat_storage = x[kCapStorage];
  sol.cap_bat_power = x[kCapPower];
  const auto block = [&](Block b) {
    const std::size_t start = var_index(b, 0, T);
    return Vector(x.begin() + static_cast<std::ptrdiff_t>(start), x.begin() + static_cast<std::ptrdiff_t>(start + T));
  };
  sol.p_ele = block(Block::ele);
  sol.p_gas = block(Block::gas);
  sol.p_pv = block(Block::pv);
  sol.p_bat_in = block(Block::bat_in);
  sol.p_bat_out = block(Block::bat_out);
  sol.p_bat_state = block(Block::bat_state);
  sol.total_cost = total_cost;
  return sol;
}

EnergySolution solve_energy(const EnergyConfig& cfg, const EnergyTimeseries& ts, const SolveOptions& options) {
  const auto model = build_energy_lp(cfg, ts, options.build);
  const bool sparse = options.path == SolverPath::sparse ||
                      (options.path == SolverPath::automatic && cfg.horizon > options.sparse_threshold);
  if (sparse && cfg.horizon >= 2000)
    spdlog::warn("energy LP with T={} ({} rows, {} variables): full-horizon simplex solves can take hours",
                 cfg.horizon, model.num_rows(), model.num_vars());
  const lp::SolveResult result = sparse ? lp::solve_revised(model) : lp::solve(model.to_dense());
  if (result.status != lp::SolveStatus::optimal)
    throw ModelError("energy LP is " + std::string(lp::to_string(result.status)) +
                     "; with nonnegative costs and free grid supply this indicates a model construction error");
  EnergySolution sol = unpack_solution(cfg, *result.s, *result.objective);
  sol.iterations = result.iterations;
  sol.sparse_path = sparse;
  return sol;
}

double evaluate_cost(const EnergyConfig& cfg, const EnergySolution& sol) {
  double cost = cfg.c_pv * sol.cap_pv + cfg.c_bat * sol.cap_bat_storage + cfg.c_bat_power * sol.cap_bat_power;
  for (std::size_t t = 0; t < sol.p_ele.size(); ++t) cost += cfg.c_ele * sol.p_ele[t] + cfg.c_gas * sol.p_gas[t];
  return cost;
}

double constraint_violation(const EnergyConfig& cfg, const EnergyTimeseries& ts, const EnergySolution& sol,
                            bool literal_appendix) {
  const std::size_t T = cfg.horizon;
  for (const Vector* series : {&sol.p_ele, &sol.p_gas, &sol.p_pv, &sol.p_bat_in, &sol.p_bat_out, &sol.p_bat_state})
    if (series->size() != T) throw DimensionError("constraint_violation: solution series", T, series->size());
  double worst = 0.0;
  const auto le = [&worst](double lhs, double rhs) { worst = std::max(worst, lhs - rhs); };
  le(0.0, sol.cap_pv);
  le(0.0, sol.cap_bat_storage);
  le(0.0, sol.cap_bat_power);
  worst = std::max(worst, std::abs(sol.p_bat_state[0]));
  for (std::size_t t = 0; t < T; ++t) {
    const double supply = sol.p_ele[t] + sol.p_pv[t] + sol.p_bat_out[t] - sol.p_bat_in[t] + sol.p_gas[t];
    worst = std::max(worst, std::abs(supply - ts.demand[t]));
    const double prev = t == 0 ? 0.0 : sol.p_bat_state[t - 1];
    const double flow = literal_appendix ? sol.p_bat_out[t] - sol.p_bat_in[t] : sol.p_bat_in[t] - sol.p_bat_out[t];
    if (t > 0 || !literal_appendix) worst = std::max(worst, std::abs(sol.p_bat_state[t] - prev - flow));
    le(0.0, sol.p_ele[t]);
    le(0.0, sol.p_pv[t]);
    le(sol.p_pv[t], sol.cap_pv * ts.avail_pv[t] * cfg.delta_t);
    le(0.0, sol.p_gas[t]);
    le(sol.p_gas[t], cfg.u_gas);
    le(0.0, sol.p_bat_in[t]);
    le(0.0, sol.p_bat_out[t]);
    le(sol.p_bat_in[t], sol.cap_bat_power);
    le(sol.p_bat_out[t], sol.cap_bat_power);
    le(0.0, sol.p_bat_state[t]);
    if (!literal_appendix) le(sol.p_bat_state[t], sol.cap_bat_storage);
  }
  return worst;
}

std::array<double, kAggregateWidth> aggregate_solution(const EnergySolution& sol) {
  const auto sum = [](const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  };
  return {sol.cap_pv, sol.cap_bat_storage, sum(sol.p_ele), sum(sol.p_gas), sum(sol.p_pv), sum(sol.p_bat_out)};
}

EnergyTimeseries synthetic_timeseries(std::size_t horizon, std::uint64_t seed, const SyntheticProfile& profile) {
  Rng rng(splitmix64(seed ^ 0xe7e79ULL));
  EnergyTimeseries ts;
  ts.demand.resize(horizon);
  ts.avail_pv.resize(horizon);
  double day_factor = 1.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    const double hour = static_cast<double>(t % 24);
    if (t % 24 == 0) day_factor = 1.0 - profile.cloudiness * rng.unit();
    // Peak around 19h, trough in the early morning.
    const double wave = std::sin(2.0 * std::numbers::pi * (hour - 13.0) / 24.0);
    const double noise = 1.0 + profile.demand_noise * (2.0 * rng.unit() - 1.0);
    ts.demand[t] = std::max(0.0, profile.demand_mean * (1.0 + profile.demand_swing * wave) * noise);
    const double sun = std::sin(std::numbers::pi * (hour - 6.0) / 12.0);
    ts.avail_pv[t] = std::clamp(profile.pv_peak * day_factor * std::max(0.0, sun), 0.0, 1.0);
  }
  return ts;
}

}  // namespace lpstruct::energy
