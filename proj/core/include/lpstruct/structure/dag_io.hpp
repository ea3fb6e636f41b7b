#pragma once

#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "lpstruct/structure/notears.hpp"

namespace lpstruct::structure {

// d x d weight CSV; the header row holds the column labels, row i holds the
// weights of edges leaving column i.
void write_dag_csv(std::ostream& out, const Matrix& w, const std::vector<std::string>& labels);

nlohmann::json dag_metadata(const WeightedDag& dag);

// Writes the thresholded matrix to `path`, the raw matrix to `path` with a
// ".raw.csv" suffix, and metadata (merged with `extra`) to `path` + ".meta.json".
void write_dag_files(const std::filesystem::path& path, const WeightedDag& dag, const nlohmann::json& extra = {});

// Reads a file written by write_dag_files (metadata and raw matrix optional).
WeightedDag read_dag_file(const std::filesystem::path& path);

}  // namespace lpstruct::structure
