#include "lpstruct/datagen/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpstruct/error.hpp"
#include "lpstruct/lp/lp_io.hpp"

namespace lpstruct::datagen {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_dataset_csv(std::ostream& out, const Dataset& ds) {
  for (std::size_t j = 0; j < ds.cols(); ++j) out << (j ? "," : "") << ds.columns()[j].label();
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    for (std::size_t j = 0; j < ds.cols(); ++j) {
      double v = ds.values()(i, j);
      if (v == 0.0) v = 0.0;  // no "-0"
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "empty dataset file");
  std::vector<Column> columns;
  for (const auto& label : split_commas(line)) {
    const auto colon = label.find(':');
    if (colon == std::string::npos) throw ParseError(source, 1, "column label '" + label + "' is not role:name");
    Role role;
    try {
      role = role_from_string(label.substr(0, colon));
    } catch (const InvalidArgument& e) {
      throw ParseError(source, 1, e.what());
    }
    columns.push_back({role, label.substr(colon + 1)});
  }
  std::vector<double> flat;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_commas(line);
    if (cells.size() != columns.size())
      throw ParseError(source, line_no,
                       "expected " + std::to_string(columns.size()) + " values, found " + std::to_string(cells.size()));
    for (const auto& c : cells) flat.push_back(lp::parse_double(c, source, line_no));
    ++rows;
  }
  Matrix values(rows, columns.size());
  std::copy(flat.begin(), flat.end(), values.flat().begin());
  return Dataset(std::move(values), std::move(columns));
}

nlohmann::json provenance_to_json(const Provenance& p) {
  return {{"case", p.case_id},
          {"seed", p.seed},
          {"config_hash", p.config_hash},
          {"transforms", p.transforms},
          {"dropped_columns", p.dropped_columns},
          {"rejections", p.rejections}};
}

Provenance provenance_from_json(const nlohmann::json& j) {
  Provenance p;
  p.case_id = j.value("case", std::string());
  p.seed = j.value("seed", std::uint64_t{0});
  p.config_hash = j.value("config_hash", std::string());
  p.transforms = j.value("transforms", std::vector<std::string>{});
  p.dropped_columns = j.value("dropped_columns", std::vector<std::string>{});
  p.rejections = j.value("rejections", std::size_t{0});
  return p;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".meta.json";
  return p;
}

void write_dataset_file(const std::filesystem::path& path, const Dataset& ds) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write dataset '" + path.string() + "'");
    write_dataset_csv(out, ds);
  }
  std::ofstream meta(sidecar_path(path), std::ios::binary);
  if (!meta) throw Error("cannot write '" + sidecar_path(path).string() + "'");
  meta << provenance_to_json(ds.provenance()).dump(2) << '\n';
}

Dataset read_dataset_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset '" + path.string() + "'");
  Dataset ds = read_dataset_csv(in, path.string());
  std::ifstream meta(sidecar_path(path));
  if (meta) {
    try {
      ds.provenance() = provenance_from_json(nlohmann::json::parse(meta));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(sidecar_path(path).string(), 0, e.what());
    }
  }
  return ds;
}

}  // namespace lpstruct::datagen
