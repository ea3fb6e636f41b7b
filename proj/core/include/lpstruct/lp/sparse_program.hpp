#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpstruct/lp/linear_program.hpp"

namespace lpstruct::lp {

// Compressed sparse column storage.
class SparseMatrix {
 public:
  struct Entry {
    std::uint32_t index;
    double value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> col_start,
               std::vector<Entry> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  std::span<const Entry> column(std::size_t j) const {
    return {entries_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }

  Matrix to_dense() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_start_{0};
  std::vector<Entry> entries_;
};

enum class RowKind { le, eq };

// Large-model counterpart of LinearProgram: sparse A with native equality rows.
// to_dense() produces the canonical <= form (equalities split into pairs).
class SparseLinearProgram {
 public:
  SparseLinearProgram(SparseMatrix a, std::vector<RowKind> kinds, Vector b, Vector c, Sense sense,
                      Vector lower, Vector upper);

  std::size_t num_vars() const noexcept { return c_.size(); }
  std::size_t num_rows() const noexcept { return b_.size(); }
  // Rows after folding each equality into two <= rows.
  std::size_t num_normalized_rows() const noexcept;

  const SparseMatrix& a() const noexcept { return a_; }
  const std::vector<RowKind>& kinds() const noexcept { return kinds_; }
  const Vector& b() const noexcept { return b_; }
  const Vector& c() const noexcept { return c_; }
  Sense sense() const noexcept { return sense_; }
  const Vector& lower() const noexcept { return lower_; }
  const Vector& upper() const noexcept { return upper_; }

  double objective(std::span<const double> x) const;
  // Row activities A x.
  Vector activity(std::span<const double> x) const;
  LinearProgram to_dense() const;

 private:
  SparseMatrix a_;
  std::vector<RowKind> kinds_;
  Vector b_;
  Vector c_;
  Sense sense_;
  Vector lower_;
  Vector upper_;
};

// Triplet accumulator; duplicate (row, col) entries are summed.
class SparseLpBuilder {
 public:
  SparseLpBuilder(std::size_t num_vars, Sense sense);

  // Returns the new row index.
  std::size_t add_row(RowKind kind, double rhs);
  void add_entry(std::size_t row, std::size_t col, double value);
  void set_cost(std::size_t col, double value);
  void set_bounds(std::size_t col, double lower, double upper);

  SparseLinearProgram build() const;

 private:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::size_t n_;
  Sense sense_;
  std::vector<RowKind> kinds_;
  Vector b_;
  Vector c_;
  Vector lower_;
  Vector upper_;
  std::vector<Triplet> triplets_;
};

}  // namespace lpstruct::lp
