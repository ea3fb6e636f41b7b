#include "lpstruct/datagen/dataset.hpp"

#include <cmath>
#include <spdlog/spdlog.h>

#include "lpstruct/error.hpp"

namespace lpstruct::datagen {

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::decision:
      return "decision";
    case Role::rhs:
      return "rhs";
    case Role::cost:
      return "cost";
    case Role::constraint_entry:
      return "constraint_entry";
    case Role::solution:
      return "solution";
    case Role::indicator:
      return "indicator";
  }
  return "unknown";
}

Role role_from_string(std::string_view text) {
  for (Role r : {Role::decision, Role::rhs, Role::cost, Role::constraint_entry, Role::solution, Role::indicator})
    if (to_string(r) == text) return r;
  throw InvalidArgument("unknown column role '" + std::string(text) + "'");
}

std::string Column::label() const { return std::string(to_string(role)) + ":" + name; }

Dataset::Dataset(Matrix values, std::vector<Column> columns, Provenance provenance)
    : values_(std::move(values)), columns_(std::move(columns)), provenance_(std::move(provenance)) {
  if (!columns_.empty() && values_.cols() != columns_.size())
    throw DimensionError("Dataset: columns vs labels", columns_.size(), values_.cols());
  if (columns_.empty() && values_.cols() != 0) throw DimensionError("Dataset: columns vs labels", 0, values_.cols());
}

std::optional<std::size_t> Dataset::find(std::string_view name) const {
  for (std::size_t j = 0; j < columns_.size(); ++j)
    if (columns_[j].name == name || columns_[j].label() == name) return j;
  return std::nullopt;
}

std::vector<std::size_t> Dataset::columns_with_role(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < columns_.size(); ++j)
    if (columns_[j].role == role) out.push_back(j);
  return out;
}

Dataset Dataset::without_constant_columns() const {
  std::vector<std::size_t> keep;
  Provenance prov = provenance_;
  for (std::size_t j = 0; j < cols(); ++j) {
    bool constant = true;
    for (std::size_t i = 1; i < rows() && constant; ++i) constant = values_(i, j) == values_(0, j);
    if (constant) {
      spdlog::info("dropping constant column {}", columns_[j].label());
      prov.dropped_columns.push_back(columns_[j].label());
    } else {
      keep.push_back(j);
    }
  }
  if (keep.size() == cols()) return *this;
  Matrix v(rows(), keep.size());
  std::vector<Column> cols_kept;
  for (std::size_t q = 0; q < keep.size(); ++q) {
    cols_kept.push_back(columns_[keep[q]]);
    for (std::size_t i = 0; i < rows(); ++i) v(i, q) = values_(i, keep[q]);
  }
  return Dataset(std::move(v), std::move(cols_kept), std::move(prov));
}

Dataset standardize(const Dataset& ds) {
  Matrix v = ds.values();
  const double n = static_cast<double>(ds.rows());
  for (std::size_t j = 0; j < ds.cols(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < ds.rows(); ++i) mean += v(i, j);
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < ds.rows(); ++i) var += (v(i, j) - mean) * (v(i, j) - mean);
    var /= n;
    if (!(var > 0.0)) throw InvalidArgument("standardize: column " + ds.columns()[j].label() + " has zero variance");
    const double sd = std::sqrt(var);
    for (std::size_t i = 0; i < ds.rows(); ++i) v(i, j) = (v(i, j) - mean) / sd;
  }
  Provenance prov = ds.provenance();
  prov.transforms.emplace_back("standardize");
  return Dataset(std::move(v), ds.columns(), std::move(prov));
}

}  // namespace lpstruct::datagen
