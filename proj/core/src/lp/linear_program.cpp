#include "lpstruct/lp/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpstruct/error.hpp"

namespace lpstruct::lp {

namespace {
constexpr double kFeasibilityTol = 1e-9;
}

std::string_view to_string(Sense sense) noexcept {
  return sense == Sense::maximize ? "maximize" : "minimize";
}

Sense sense_from_string(std::string_view text) {
  if (text == "maximize" || text == "max") return Sense::maximize;
  if (text == "minimize" || text == "min") return Sense::minimize;
  throw InvalidArgument("unknown objective sense '" + std::string(text) + "'");
}

LinearProgram::LinearProgram(Matrix a, Vector b, Vector c, Sense sense, Vector lower, Vector upper)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      sense_(sense),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
  const std::size_t k = c_.size();
  if (lower_.empty()) lower_.assign(k, 0.0);
  if (upper_.empty()) upper_.assign(k, kInfinity);
  if (a_.rows() != b_.size()) throw DimensionError("LinearProgram: rows of A vs b", b_.size(), a_.rows());
  if (a_.rows() > 0 && a_.cols() != k) throw DimensionError("LinearProgram: columns of A vs c", k, a_.cols());
  if (lower_.size() != k) throw DimensionError("LinearProgram: lower bounds", k, lower_.size());
  if (upper_.size() != k) throw DimensionError("LinearProgram: upper bounds", k, upper_.size());
  for (double v : a_.flat())
    if (!std::isfinite(v)) throw InvalidArgument("LinearProgram: non-finite entry in A");
  for (double v : b_)
    if (!std::isfinite(v)) throw InvalidArgument("LinearProgram: non-finite entry in b");
  for (double v : c_)
    if (!std::isfinite(v)) throw InvalidArgument("LinearProgram: non-finite entry in c");
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(lower_[i])) throw InvalidArgument("LinearProgram: lower bounds must be finite");
    if (std::isnan(upper_[i]) || upper_[i] == -kInfinity)
      throw InvalidArgument("LinearProgram: upper bound must be a real or +inf");
    if (lower_[i] > upper_[i])
      throw InvalidArgument("LinearProgram: lower bound exceeds upper bound for x" + std::to_string(i + 1));
  }
}

double LinearProgram::objective(std::span<const double> x) const {
  if (x.size() != c_.size()) throw DimensionError("objective", c_.size(), x.size());
  return dot(c_, x);
}

LpBuilder::LpBuilder(std::size_t num_vars, Sense sense)
    : n_(num_vars), sense_(sense), c_(num_vars, 0.0), lower_(num_vars, 0.0), upper_(num_vars, kInfinity) {}

LpBuilder& LpBuilder::objective(Vector c) {
  if (c.size() != n_) throw DimensionError("LpBuilder::objective", n_, c.size());
  c_ = std::move(c);
  return *this;
}

LpBuilder& LpBuilder::add_le(Vector row, double rhs) {
  if (row.size() != n_) throw DimensionError("LpBuilder row", n_, row.size());
  rows_.push_back(std::move(row));
  rhs_.push_back(rhs);
  return *this;
}

LpBuilder& LpBuilder::add_ge(Vector row, double rhs) {
  for (double& v : row) v = -v;
  return add_le(std::move(row), -rhs);
}

LpBuilder& LpBuilder::add_eq(Vector row, double rhs) {
  Vector neg = row;
  add_le(std::move(row), rhs);
  return add_ge(std::move(neg), rhs);
}

LpBuilder& LpBuilder::bounds(std::size_t var, double lower, double upper) {
  if (var >= n_) throw DimensionError("LpBuilder::bounds variable index", n_, var);
  lower_[var] = lower;
  upper_[var] = upper;
  return *this;
}

LinearProgram LpBuilder::build() const {
  Matrix a(rows_.size(), n_);
  for (std::size_t i = 0; i < rows_.size(); ++i) std::copy(rows_[i].begin(), rows_[i].end(), a.row(i).begin());
  return LinearProgram(std::move(a), rhs_, c_, sense_, lower_, upper_);
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
  if (x.size() != lp.num_vars()) throw DimensionError("feasibility: decision vector", lp.num_vars(), x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) worst = std::max(worst, dot(lp.a().row(i), x) - lp.b()[i]);
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, lp.lower()[j] - x[j]);
    if (std::isfinite(lp.upper()[j])) worst = std::max(worst, x[j] - lp.upper()[j]);
  }
  return worst;
}

int feasibility(const LinearProgram& lp, std::span<const double> x, bool invert) {
  const bool feasible = max_violation(lp, x) <= kFeasibilityTol;
  return (feasible != invert) ? 1 : 0;
}

LinearProgram scale_row(const LinearProgram& lp, std::size_t row, double gamma) {
  if (row >= lp.num_rows()) throw DimensionError("scale_row: row index", lp.num_rows(), row);
  if (!(gamma > 0.0)) throw InvalidArgument("scale_row: gamma must be positive");
  Matrix a = lp.a();
  Vector b = lp.b();
  for (double& v : a.row(row)) v *= gamma;
  b[row] *= gamma;
  return LinearProgram(std::move(a), std::move(b), lp.c(), lp.sense(), lp.lower(), lp.upper());
}

LinearProgram dual(const LinearProgram& lp) {
  const std::size_t k = lp.num_vars();
  const std::size_t m = lp.num_rows();
  for (double l : lp.lower())
    if (l != 0.0) throw InvalidArgument("dual: only zero lower bounds are supported");
  std::vector<std::size_t> bounded;
  for (std::size_t j = 0; j < k; ++j)
    if (std::isfinite(lp.upper()[j])) bounded.push_back(j);

  // Primal rows: A x <= b and x_j <= u_j for bounded j, all with multiplier y >= 0.
  // min c.x   <->  max -(b.y + u.z)  s.t.  -(A^T y + z) <= c
  // max c.x   <->  min  (b.y + u.z)  s.t.  -(A^T y + z) <= -c
  const std::size_t nd = m + bounded.size();
  Matrix ad(k, nd);
  Vector cd(nd);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) ad(j, i) = -lp.a()(i, j);
    cd[i] = lp.b()[i];
  }
  for (std::size_t q = 0; q < bounded.size(); ++q) {
    ad(bounded[q], m + q) = -1.0;
    cd[m + q] = lp.upper()[bounded[q]];
  }
  Vector bd = lp.c();
  if (lp.sense() == Sense::minimize) {
    for (double& v : cd) v = -v;
    return LinearProgram(std::move(ad), std::move(bd), std::move(cd), Sense::maximize);
  }
  for (double& v : bd) v = -v;
  return LinearProgram(std::move(ad), std::move(bd), std::move(cd), Sense::minimize);
}

}  // namespace lpstruct::lp
