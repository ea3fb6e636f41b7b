#include "lpstruct/energy/scenario_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "lpstruct/error.hpp"
#include "lpstruct/lp/lp_io.hpp"

namespace lpstruct::energy {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Vector parse_series(const std::string& text, const std::string& source, std::size_t line) {
  Vector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError(source, line, "empty entry in series");
    out.push_back(lp::parse_double(item, source, line));
  }
  return out;
}

}  // namespace

EnergyScenario read_scenario(std::istream& in, const std::string& source) {
  std::map<std::string, std::pair<std::string, std::size_t>> kv;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string t = trim(text);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(source, line, "expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    if (kv.contains(key)) throw ParseError(source, line, "duplicate key '" + key + "'");
    kv[key] = {trim(t.substr(eq + 1)), line};
  }

  EnergyScenario sc;
  auto& cfg = sc.config;
  const auto number = [&](const char* key, double& dst) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    dst = lp::parse_double(it->second.first, source, it->second.second);
    kv.erase(it);
  };
  number("c_PV", cfg.c_pv);
  number("c_Bat", cfg.c_bat);
  number("c_Bat_power", cfg.c_bat_power);
  number("c_Ele", cfg.c_ele);
  number("c_Gas", cfg.c_gas);
  number("U_Gas", cfg.u_gas);
  number("delta_t", cfg.delta_t);
  double horizon = static_cast<double>(cfg.horizon);
  number("T", horizon);
  if (horizon < 1 || horizon != static_cast<double>(static_cast<std::size_t>(horizon)))
    throw ParseError(source, line, "T must be a positive integer");
  cfg.horizon = static_cast<std::size_t>(horizon);

  double seed = -1;
  number("synthetic_seed", seed);
  if (auto it = kv.find("demand"); it != kv.end()) {
    sc.series.demand = parse_series(it->second.first, source, it->second.second);
    kv.erase(it);
  }
  if (auto it = kv.find("avail_PV"); it != kv.end()) {
    sc.series.avail_pv = parse_series(it->second.first, source, it->second.second);
    kv.erase(it);
  }
  if (!kv.empty()) throw ParseError(source, kv.begin()->second.second, "unknown key '" + kv.begin()->first + "'");
  if (sc.series.demand.empty() && sc.series.avail_pv.empty()) {
    if (seed < 0) throw ParseError(source, line, "scenario needs demand/avail_PV series or synthetic_seed");
    sc.series = synthetic_timeseries(cfg.horizon, static_cast<std::uint64_t>(seed));
  }
  try {
    cfg.validate();
    sc.series.validate(cfg.horizon);
  } catch (const Error& e) {
    throw ParseError(source, line, e.what());
  }
  return sc;
}

EnergyScenario read_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open energy scenario '" + path.string() + "'");
  return read_scenario(in, path.string());
}

void write_scenario(std::ostream& out, const EnergyScenario& scenario) {
  const auto& c = scenario.config;
  out << "c_PV = " << lp::format_double(c.c_pv) << '\n'
      << "c_Bat = " << lp::format_double(c.c_bat) << '\n'
      << "c_Bat_power = " << lp::format_double(c.c_bat_power) << '\n'
      << "c_Ele = " << lp::format_double(c.c_ele) << '\n'
      << "c_Gas = " << lp::format_double(c.c_gas) << '\n'
      << "U_Gas = " << lp::format_double(c.u_gas) << '\n'
      << "delta_t = " << lp::format_double(c.delta_t) << '\n'
      << "T = " << c.horizon << '\n';
  const auto series = [&out](const char* key, const Vector& v) {
    out << key << " = ";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << lp::format_double(v[i]);
    out << '\n';
  };
  series("demand", scenario.series.demand);
  series("avail_PV", scenario.series.avail_pv);
}

}  // namespace lpstruct::energy
