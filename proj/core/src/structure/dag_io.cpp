#include "lpstruct/structure/dag_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpstruct/datagen/dataset_io.hpp"
#include "lpstruct/error.hpp"
#include "lpstruct/lp/lp_io.hpp"

namespace lpstruct::structure {

namespace {

std::filesystem::path raw_path(const std::filesystem::path& path) {
  auto p = path;
  p.replace_extension(".raw.csv");
  return p;
}

Matrix read_matrix(const std::filesystem::path& path, std::vector<std::string>& labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty weight file");
  labels.clear();
  {
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) labels.push_back(cell);
  }
  const std::size_t d = labels.size();
  Matrix w(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!std::getline(in, line)) throw ParseError(path.string(), i + 2, "missing weight row");
    std::istringstream ss(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(ss, cell, ',')) {
      if (j >= d) throw ParseError(path.string(), i + 2, "too many values");
      w(i, j++) = lp::parse_double(cell, path.string(), i + 2);
    }
    if (j != d) throw ParseError(path.string(), i + 2, "expected " + std::to_string(d) + " values");
  }
  return w;
}

}  // namespace

void write_dag_csv(std::ostream& out, const Matrix& w, const std::vector<std::string>& labels) {
  if (w.rows() != labels.size() || w.cols() != labels.size())
    throw DimensionError("write_dag_csv: labels vs matrix", labels.size(), w.rows());
  for (std::size_t j = 0; j < labels.size(); ++j) out << (j ? "," : "") << labels[j];
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      double v = w(i, j);
      if (v == 0.0) v = 0.0;
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

nlohmann::json dag_metadata(const WeightedDag& dag) {
  return {{"threshold", dag.threshold},     {"threshold_raised", dag.threshold_raised},
          {"lambda", dag.lambda},           {"h_final", dag.h_final},
          {"converged", dag.converged},     {"outer_iterations", dag.outer_iterations},
          {"final_rho", dag.final_rho},     {"labels", dag.labels}};
}

void write_dag_files(const std::filesystem::path& path, const WeightedDag& dag, const nlohmann::json& extra) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_dag_csv(out, dag.w, dag.labels);
  }
  {
    std::ofstream out(raw_path(path), std::ios::binary);
    if (!out) throw Error("cannot write '" + raw_path(path).string() + "'");
    write_dag_csv(out, dag.w_raw, dag.labels);
  }
  nlohmann::json meta = dag_metadata(dag);
  if (extra.is_object()) meta.update(extra);
  std::ofstream out(datagen::sidecar_path(path), std::ios::binary);
  if (!out) throw Error("cannot write '" + datagen::sidecar_path(path).string() + "'");
  out << meta.dump(2) << '\n';
}

WeightedDag read_dag_file(const std::filesystem::path& path) {
  WeightedDag dag;
  dag.w = read_matrix(path, dag.labels);
  if (std::filesystem::exists(raw_path(path))) {
    std::vector<std::string> raw_labels;
    dag.w_raw = read_matrix(raw_path(path), raw_labels);
    if (raw_labels != dag.labels) throw ParseError(raw_path(path).string(), 1, "labels differ from thresholded file");
  } else {
    dag.w_raw = dag.w;
  }
  std::ifstream meta(datagen::sidecar_path(path));
  if (meta) {
    try {
      const auto j = nlohmann::json::parse(meta);
      dag.threshold = j.value("threshold", 0.0);
      dag.threshold_raised = j.value("threshold_raised", false);
      dag.lambda = j.value("lambda", 0.0);
      dag.h_final = j.value("h_final", 0.0);
      dag.converged = j.value("converged", false);
      dag.outer_iterations = j.value("outer_iterations", std::size_t{0});
      dag.final_rho = j.value("final_rho", 0.0);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(datagen::sidecar_path(path).string(), 0, e.what());
    }
  }
  return dag;
}

}  // namespace lpstruct::structure
