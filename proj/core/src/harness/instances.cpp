#include "lpstruct/harness/instances.hpp"

namespace lpstruct::harness {

lp::LinearProgram diet_lp() {
  return lp::LinearProgram(Matrix{{-5.0, -20.0}, {-1000.0, -250.0}}, Vector{-30.0, -1800.0}, Vector{1.0, 1.0},
                           lp::Sense::maximize);
}

energy::EnergyScenario default_scenario(std::size_t horizon, std::uint64_t seed) {
  energy::EnergyScenario sc;
  sc.config.horizon = horizon;
  sc.series = energy::synthetic_timeseries(horizon, seed);
  return sc;
}

}  // namespace lpstruct::harness
