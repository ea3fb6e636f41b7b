#pragma once

#include <cstdint>

#include "lpstruct/energy/energy_lp.hpp"
#include "lpstruct/lp/linear_program.hpp"

namespace lpstruct::harness {

// Two dishes (pizza, salad), fibre and calorie minimums written as
// A x <= b with A = -[[5, 20], [1000, 250]], b = -[30, 1800].
lp::LinearProgram diet_lp();

// Base household scenario: default prices with a seeded synthetic profile.
energy::EnergyScenario default_scenario(std::size_t horizon, std::uint64_t seed = 0);

}  // namespace lpstruct::harness
