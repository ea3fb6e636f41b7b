#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpstruct/linalg.hpp"

namespace lpstruct::datagen {

// Which part of the LP a column carries.
enum class Role { decision, rhs, cost, constraint_entry, solution, indicator };

std::string_view to_string(Role role) noexcept;
Role role_from_string(std::string_view text);

struct Column {
  Role role;
  std::string name;

  // "role:name", the CSV header form.
  std::string label() const;
  bool operator==(const Column&) const = default;
};

struct Provenance {
  std::string case_id;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<std::string> transforms;
  std::vector<std::string> dropped_columns;
  std::size_t rejections = 0;
};

class Dataset {
 public:
  Dataset() = default;
  Dataset(Matrix values, std::vector<Column> columns, Provenance provenance = {});

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return columns_.size(); }
  const Matrix& values() const noexcept { return values_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  Provenance& provenance() noexcept { return provenance_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::vector<std::size_t> columns_with_role(Role role) const;

  // Removes columns whose values are all identical and records their labels.
  Dataset without_constant_columns() const;

 private:
  Matrix values_;
  std::vector<Column> columns_;
  Provenance provenance_;
};

// Shifts every column to mean 0 and scales it to (population) variance 1.
// Throws InvalidArgument naming the first zero-variance column.
Dataset standardize(const Dataset& ds);

}  // namespace lpstruct::datagen
