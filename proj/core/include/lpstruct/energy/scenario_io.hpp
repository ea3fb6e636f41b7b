#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lpstruct/energy/energy_lp.hpp"

namespace lpstruct::energy {

// "key = value" lines; keys c_PV, c_Bat, c_Bat_power, c_Ele, c_Gas, U_Gas,
// delta_t, T, demand, avail_PV. Series are comma-separated decimals. When the
// series are omitted, `synthetic_seed = <n>` generates them.
EnergyScenario read_scenario(std::istream& in, const std::string& source = "<stream>");
EnergyScenario read_scenario_file(const std::filesystem::path& path);
void write_scenario(std::ostream& out, const EnergyScenario& scenario);

}  // namespace lpstruct::energy
