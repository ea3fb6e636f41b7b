#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "lpstruct/datagen/dataset.hpp"

namespace lpstruct::datagen {

// CSV: header of `role:name` labels, then one row per sample with every value
// printed to 17 significant digits.
void write_dataset_csv(std::ostream& out, const Dataset& ds);
Dataset read_dataset_csv(std::istream& in, const std::string& source = "<stream>");

nlohmann::json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const nlohmann::json& j);

// Writes `path` and the provenance sidecar `path` + ".meta.json".
void write_dataset_file(const std::filesystem::path& path, const Dataset& ds);
// Reads `path`; the sidecar is loaded when present.
Dataset read_dataset_file(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace lpstruct::datagen
