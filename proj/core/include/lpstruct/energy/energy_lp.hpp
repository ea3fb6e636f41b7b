#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "lpstruct/linalg.hpp"
#include "lpstruct/lp/sparse_program.hpp"

namespace lpstruct::energy {

// Household capacity-expansion and dispatch model. Costs are per unit of
// capacity over the modelled horizon (capex) and per kWh (energy carriers).
struct EnergyConfig {
  double c_pv = 0.8;         // EUR per kW of PV capacity
  double c_bat = 0.2;        // EUR per kWh of battery storage capacity
  double c_bat_power = 0.0;  // EUR per kW of battery charge/discharge capacity
  double c_ele = 0.30;       // EUR per kWh of grid electricity
  double c_gas = 0.12;       // EUR per kWh from the gas unit
  double u_gas = 0.25;       // per-step cap on gas supply
  double delta_t = 1.0;      // hours per step
  std::size_t horizon = 24;  // T

  void validate() const;
  bool operator==(const EnergyConfig&) const = default;
};

struct EnergyTimeseries {
  Vector demand;    // D(t) >= 0, kWh per step
  Vector avail_pv;  // in [0, 1]

  void validate(std::size_t horizon) const;
  bool operator==(const EnergyTimeseries&) const = default;
};

struct EnergyScenario {
  EnergyConfig config;
  EnergyTimeseries series;
};

struct EnergySolution {
  double cap_pv = 0.0;
  double cap_bat_storage = 0.0;
  double cap_bat_power = 0.0;
  Vector p_ele, p_gas, p_pv, p_bat_in, p_bat_out, p_bat_state;
  double total_cost = 0.0;
  std::size_t iterations = 0;
  bool sparse_path = false;
};

struct BuildOptions {
  // Reproduce the battery rows exactly as printed in the source model
  // (discharge increases the state, no storage ceiling) instead of the
  // physical convention.
  bool literal_appendix = false;
};

enum class SolverPath { automatic, dense, sparse };

struct SolveOptions {
  BuildOptions build;
  SolverPath path = SolverPath::automatic;
  // automatic switches to the sparse revised simplex above this horizon.
  std::size_t sparse_threshold = 200;
};

// Variable layout: [Cap_PV, Cap^S_Bat, Cap_Bat] followed by six blocks of T:
// p_Ele, p_Gas, p_PV, p_in, p_out, p_S.
enum class Block : std::size_t { ele = 0, gas, pv, bat_in, bat_out, bat_state };
inline constexpr std::size_t kCapPv = 0;
inline constexpr std::size_t kCapStorage = 1;
inline constexpr std::size_t kCapPower = 2;
inline constexpr std::size_t kCapacityVars = 3;

inline std::size_t var_index(Block block, std::size_t t, std::size_t horizon) {
  return kCapacityVars + static_cast<std::size_t>(block) * horizon + t;
}

// Minimization LP over 3 + 6T variables. Rows (physical convention):
//   balance   p_Ele + p_PV + p_out - p_in + p_Gas = D(t)
//   state     p_S(t) - p_S(t-1) - p_in(t) + p_out(t) = 0   (p_S(-1) = 0)
//   pv        p_PV(t) - avail(t) dt Cap_PV <= 0
//   charge    p_in(t) - Cap_Bat <= 0
//   discharge p_out(t) - Cap_Bat <= 0
//   storage   p_S(t) - Cap^S_Bat <= 0
// with p_Gas <= U_Gas and p_S(0) = 0 as variable bounds.
lp::SparseLinearProgram build_energy_lp(const EnergyConfig& cfg, const EnergyTimeseries& ts,
                                        const BuildOptions& options = {});

// Solves the model (dense tableau up to the sparse threshold, revised simplex
// beyond). Throws ModelError if the LP is not optimal.
EnergySolution solve_energy(const EnergyConfig& cfg, const EnergyTimeseries& ts, const SolveOptions& options = {});

EnergySolution unpack_solution(const EnergyConfig& cfg, std::span<const double> x, double total_cost);

// Largest constraint violation of `sol`, evaluated directly from the model
// equations (independent of the LP matrix assembly).
double constraint_violation(const EnergyConfig& cfg, const EnergyTimeseries& ts, const EnergySolution& sol,
                            bool literal_appendix = false);
// Objective re-evaluated from the solution fields.
double evaluate_cost(const EnergyConfig& cfg, const EnergySolution& sol);

inline constexpr std::size_t kAggregateWidth = 6;
inline constexpr std::array<std::string_view, kAggregateWidth> kAggregateNames{
    "Cap_PV", "CapS_Bat", "sum_p_Ele", "sum_p_Gas", "sum_p_PV", "sum_p_Bat_out"};

// (Cap_PV, Cap^S_Bat, sum p_Ele, sum p_Gas, sum p_PV, sum p_Bat_out).
std::array<double, kAggregateWidth> aggregate_solution(const EnergySolution& sol);

struct SyntheticProfile {
  double demand_mean = 0.5;      // kWh per step
  double demand_swing = 0.35;    // relative daily amplitude
  double demand_noise = 0.1;     // relative uniform noise
  double pv_peak = 0.9;          // clear-sky availability at noon
  double cloudiness = 0.4;       // max relative daily attenuation
};

// Sinusoidal daily demand (evening peak) and clipped sinusoidal PV availability
// (daylight 6h..18h), both with seeded noise.
EnergyTimeseries synthetic_timeseries(std::size_t horizon, std::uint64_t seed, const SyntheticProfile& profile = {});

}  // namespace lpstruct::energy
