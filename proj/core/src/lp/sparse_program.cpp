#include "lpstruct/lp/sparse_program.hpp"

#include <algorithm>
#include <cmath>

#include "lpstruct/error.hpp"

namespace lpstruct::lp {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> col_start,
                           std::vector<Entry> entries)
    : rows_(rows), cols_(cols), col_start_(std::move(col_start)), entries_(std::move(entries)) {
  if (col_start_.size() != cols_ + 1) throw DimensionError("SparseMatrix column starts", cols_ + 1, col_start_.size());
  if (col_start_.back() != entries_.size()) throw DimensionError("SparseMatrix entries", col_start_.back(), entries_.size());
  for (const auto& e : entries_)
    if (e.index >= rows_) throw InvalidArgument("SparseMatrix: row index out of range");
}

Matrix SparseMatrix::to_dense() const {
  Matrix d(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : column(j)) d(e.index, j) = e.value;
  return d;
}

SparseLinearProgram::SparseLinearProgram(SparseMatrix a, std::vector<RowKind> kinds, Vector b, Vector c,
                                         Sense sense, Vector lower, Vector upper)
    : a_(std::move(a)),
      kinds_(std::move(kinds)),
      b_(std::move(b)),
      c_(std::move(c)),
      sense_(sense),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
  if (a_.rows() != b_.size()) throw DimensionError("SparseLinearProgram: rows", b_.size(), a_.rows());
  if (kinds_.size() != b_.size()) throw DimensionError("SparseLinearProgram: row kinds", b_.size(), kinds_.size());
  if (a_.cols() != c_.size()) throw DimensionError("SparseLinearProgram: columns", c_.size(), a_.cols());
  if (lower_.size() != c_.size() || upper_.size() != c_.size())
    throw DimensionError("SparseLinearProgram: bounds", c_.size(), std::min(lower_.size(), upper_.size()));
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (!std::isfinite(lower_[j]) || lower_[j] > upper_[j])
      throw InvalidArgument("SparseLinearProgram: invalid bounds for variable " + std::to_string(j));
}

std::size_t SparseLinearProgram::num_normalized_rows() const noexcept {
  std::size_t n = 0;
  for (RowKind k : kinds_) n += k == RowKind::eq ? 2 : 1;
  return n;
}

double SparseLinearProgram::objective(std::span<const double> x) const {
  if (x.size() != c_.size()) throw DimensionError("objective", c_.size(), x.size());
  return dot(c_, x);
}

Vector SparseLinearProgram::activity(std::span<const double> x) const {
  if (x.size() != c_.size()) throw DimensionError("activity", c_.size(), x.size());
  Vector ax(b_.size(), 0.0);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (x[j] == 0.0) continue;
    for (const auto& e : a_.column(j)) ax[e.index] += e.value * x[j];
  }
  return ax;
}

LinearProgram SparseLinearProgram::to_dense() const {
  const std::size_t rows = num_normalized_rows();
  Matrix dense(rows, c_.size());
  Vector rhs(rows);
  std::vector<std::size_t> first(b_.size());
  std::size_t r = 0;
  for (std::size_t i = 0; i < b_.size(); ++i) {
    first[i] = r;
    rhs[r] = b_[i];
    if (kinds_[i] == RowKind::eq) rhs[r + 1] = -b_[i];
    r += kinds_[i] == RowKind::eq ? 2 : 1;
  }
  for (std::size_t j = 0; j < c_.size(); ++j) {
    for (const auto& e : a_.column(j)) {
      dense(first[e.index], j) = e.value;
      if (kinds_[e.index] == RowKind::eq) dense(first[e.index] + 1, j) = -e.value;
    }
  }
  return LinearProgram(std::move(dense), std::move(rhs), c_, sense_, lower_, upper_);
}

SparseLpBuilder::SparseLpBuilder(std::size_t num_vars, Sense sense)
    : n_(num_vars), sense_(sense), c_(num_vars, 0.0), lower_(num_vars, 0.0), upper_(num_vars, kInfinity) {}

std::size_t SparseLpBuilder::add_row(RowKind kind, double rhs) {
  kinds_.push_back(kind);
  b_.push_back(rhs);
  return b_.size() - 1;
}

void SparseLpBuilder::add_entry(std::size_t row, std::size_t col, double value) {
  if (row >= b_.size()) throw DimensionError("SparseLpBuilder: row index", b_.size(), row);
  if (col >= n_) throw DimensionError("SparseLpBuilder: column index", n_, col);
  triplets_.push_back({row, col, value});
}

void SparseLpBuilder::set_cost(std::size_t col, double value) {
  if (col >= n_) throw DimensionError("SparseLpBuilder: column index", n_, col);
  c_[col] = value;
}

void SparseLpBuilder::set_bounds(std::size_t col, double lower, double upper) {
  if (col >= n_) throw DimensionError("SparseLpBuilder: column index", n_, col);
  lower_[col] = lower;
  upper_[col] = upper;
}

SparseLinearProgram SparseLpBuilder::build() const {
  std::vector<Triplet> sorted = triplets_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& x, const Triplet& y) {
    return x.col != y.col ? x.col < y.col : x.row < y.row;
  });
  std::vector<std::size_t> start(n_ + 1, 0);
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(sorted.size());
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    start[j] = entries.size();
    while (idx < sorted.size() && sorted[idx].col == j) {
      const std::size_t row = sorted[idx].row;
      double v = 0.0;
      while (idx < sorted.size() && sorted[idx].col == j && sorted[idx].row == row) v += sorted[idx++].value;
      if (v != 0.0) entries.push_back({static_cast<std::uint32_t>(row), v});
    }
  }
  start[n_] = entries.size();
  return SparseLinearProgram(SparseMatrix(b_.size(), n_, std::move(start), std::move(entries)), kinds_, b_, c_,
                             sense_, lower_, upper_);
}

}  // namespace lpstruct::lp
