#include "lpstruct/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lpstruct/error.hpp"

namespace lpstruct::lp {

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::infeasible:
      return "infeasible";
    case SolveStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

// Tableau over x' = x - lower >= 0 with one slack per row (finite upper bounds
// become rows) and one artificial per row whose shifted rhs is negative.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& opt) : opt_(opt) {
    const std::size_t k = lp.num_vars();
    const std::size_t m = lp.num_rows();
    std::vector<std::size_t> bounded;
    for (std::size_t j = 0; j < k; ++j)
      if (std::isfinite(lp.upper()[j])) bounded.push_back(j);

    rows_ = m + bounded.size();
    structural_ = k;
    Vector rhs(rows_);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = lp.b()[i] - dot(lp.a().row(i), lp.lower());
    for (std::size_t q = 0; q < bounded.size(); ++q)
      rhs[m + q] = lp.upper()[bounded[q]] - lp.lower()[bounded[q]];

    std::size_t artificials = 0;
    for (double v : rhs)
      if (v < 0.0) ++artificials;
    first_artificial_ = k + rows_;
    cols_ = first_artificial_ + artificials;
    width_ = cols_ + 1;
    t_.assign(rows_ * width_, 0.0);
    basis_.resize(rows_);

    std::size_t next_art = first_artificial_;
    for (std::size_t r = 0; r < rows_; ++r) {
      double* row = &t_[r * width_];
      if (r < m) {
        auto src = lp.a().row(r);
        std::copy(src.begin(), src.end(), row);
      } else {
        row[bounded[r - m]] = 1.0;
      }
      row[k + r] = 1.0;
      row[cols_] = rhs[r];
      if (rhs[r] < 0.0) {
        for (std::size_t j = 0; j < first_artificial_; ++j) row[j] = -row[j];
        row[cols_] = -rhs[r];
        row[next_art] = 1.0;
        basis_[r] = next_art++;
      } else {
        basis_[r] = k + r;
      }
    }
    d_.assign(width_, 0.0);
  }

  SolveResult run(const LinearProgram& lp) {
    SolveResult result;
    // Phase 1: minimize the sum of artificials.
    if (first_artificial_ < cols_) {
      Vector cost(cols_, 0.0);
      for (std::size_t j = first_artificial_; j < cols_; ++j) cost[j] = 1.0;
      price(cost);
      iterate(cols_);
      double infeas = 0.0;
      double scale = 1.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        scale = std::max(scale, std::abs(at(r, cols_)));
        if (basis_[r] >= first_artificial_) infeas += at(r, cols_);
      }
      if (infeas > opt_.feasibility_tol * scale) {
        result.status = SolveStatus::infeasible;
        result.iterations = steps_;
        return result;
      }
      expel_artificials();
    }

    // Phase 2 minimizes; a maximization is handled by negating c.
    Vector cost(cols_, 0.0);
    const double sign = lp.sense() == Sense::maximize ? -1.0 : 1.0;
    for (std::size_t j = 0; j < structural_; ++j) cost[j] = sign * lp.c()[j];
    price(cost);
    if (!iterate(first_artificial_)) {
      result.status = SolveStatus::unbounded;
      result.iterations = steps_;
      return result;
    }

    Vector s(lp.lower());
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < structural_) s[basis_[r]] += std::max(0.0, at(r, cols_));
    result.status = SolveStatus::optimal;
    result.objective = lp.objective(s);
    result.s = std::move(s);
    result.iterations = steps_;
    return result;
  }

 private:
  double& at(std::size_t r, std::size_t j) { return t_[r * width_ + j]; }

  void price(const Vector& cost) {
    cost_ = cost;
    std::fill(d_.begin(), d_.end(), 0.0);
    for (std::size_t j = 0; j < cols_; ++j) d_[j] = cost[j];
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &t_[r * width_];
      for (std::size_t j = 0; j < width_; ++j) d_[j] -= cb * row[j];
    }
  }

  // Runs pivots over columns [0, limit). Returns false on unboundedness.
  bool iterate(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (d_[j] < -opt_.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;

      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double coef = at(r, enter);
        if (coef <= opt_.pivot_tol) continue;
        const double ratio = at(r, cols_) / coef;
        if (leave == rows_) {
          best = ratio;
          leave = r;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, std::abs(best));
        if (ratio < best - tie) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + tie && basis_[r] < basis_[leave]) {
          leave = r;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    if (++steps_ > opt_.max_iterations) throw Error("simplex: iteration limit exceeded");
    double* prow = &t_[p * width_];
    const double piv = prow[q];
    if (!std::isfinite(piv) || std::abs(piv) < opt_.pivot_tol)
      throw SingularBasisError(steps_, "pivot element " + std::to_string(piv));
    const double inv = 1.0 / piv;
    nz_.clear();
    for (std::size_t j = 0; j < width_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nz_.push_back(j);
      }
    }
    prow[q] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == p) continue;
      double* row = &t_[r * width_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) row[j] -= f * prow[j];
      row[q] = 0.0;
      double& rhs = row[cols_];
      if (rhs < 0.0) {
        if (rhs > -opt_.feasibility_tol) {
          rhs = 0.0;
        } else if (!std::isfinite(rhs)) {
          throw SingularBasisError(steps_, "non-finite basic value");
        }
      }
    }
    const double f = d_[q];
    if (f != 0.0) {
      for (std::size_t j : nz_) d_[j] -= f * prow[j];
      d_[q] = 0.0;
    }
    basis_[p] = q;
  }

  void expel_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      std::size_t best = first_artificial_;
      double mag = opt_.pivot_tol;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::abs(at(r, j)) > mag) {
          best = j;
          break;
        }
      }
      // A row with no eligible entry is redundant; its artificial stays basic at zero.
      if (best < first_artificial_) pivot(r, best);
    }
  }

  SimplexOptions opt_;
  std::size_t rows_ = 0;
  std::size_t structural_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  Vector d_;
  Vector cost_;
  std::vector<std::size_t> nz_;
  std::size_t steps_ = 0;
};

}  // namespace

SolveResult solve(const LinearProgram& lp, const SimplexOptions& options) {
  Tableau tableau(lp, options);
  return tableau.run(lp);
}

}  // namespace lpstruct::lp
