#include "lpstruct/lp/revised_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "lpstruct/error.hpp"

namespace lpstruct::lp {

namespace {

using Entry = SparseMatrix::Entry;

struct Eta {
  std::uint32_t pivot_row;
  double pivot_value;
  std::vector<Entry> off;  // off-pivot entries
};

class RevisedSolver {
 public:
  RevisedSolver(const SparseLinearProgram& lp, const RevisedOptions& opt) : lp_(lp), opt_(opt) {
    const std::size_t n = lp.num_vars();
    const std::size_t m0 = lp.num_rows();
    for (std::size_t j = 0; j < n; ++j)
      if (std::isfinite(lp.upper()[j])) bounded_.push_back(j);
    m_ = m0 + bounded_.size();
    n_ = n;

    // Shifted right-hand side for x' = x - lower.
    Vector shift = lp.activity(lp.lower());
    rhs_.resize(m_);
    is_eq_.assign(m_, false);
    for (std::size_t i = 0; i < m0; ++i) {
      rhs_[i] = lp.b()[i] - shift[i];
      is_eq_[i] = lp.kinds()[i] == RowKind::eq;
    }
    for (std::size_t q = 0; q < bounded_.size(); ++q) rhs_[m0 + q] = lp.upper()[bounded_[q]] - lp.lower()[bounded_[q]];

    sign_.assign(m_, 1.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (rhs_[r] < 0.0) sign_[r] = -1.0;

    // Column layout: structurals, one slack per <= row, one artificial per row
    // that cannot start on its slack (equalities and negated rows).
    slack_of_row_.assign(m_, kNone);
    std::size_t next = n_;
    for (std::size_t r = 0; r < m_; ++r)
      if (!is_eq_[r]) {
        slack_of_row_[r] = next;
        slack_row_.push_back(r);
        ++next;
      }
    first_artificial_ = next;
    for (std::size_t r = 0; r < m_; ++r)
      if (is_eq_[r] || sign_[r] < 0.0) {
        art_row_.push_back(r);
        ++next;
      }
    cols_ = next;

    // Structural columns with row signs and bound rows appended.
    col_start_.assign(n_ + 1, 0);
    std::vector<std::size_t> bound_row(n_, kNone);
    for (std::size_t q = 0; q < bounded_.size(); ++q) bound_row[bounded_[q]] = m0 + q;
    for (std::size_t j = 0; j < n_; ++j) {
      col_start_[j] = entries_.size();
      for (const auto& e : lp.a().column(j)) entries_.push_back({e.index, sign_[e.index] * e.value});
      if (bound_row[j] != kNone)
        entries_.push_back({static_cast<std::uint32_t>(bound_row[j]), sign_[bound_row[j]]});
    }
    col_start_[n_] = entries_.size();

    head_.resize(m_);
    position_.assign(cols_, kNone);
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t v = (is_eq_[r] || sign_[r] < 0.0) ? artificial_for_row(r) : slack_of_row_[r];
      head_[r] = v;
      position_[v] = r;
    }
    xb_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) xb_[r] = sign_[r] * rhs_[r];
    y_.resize(m_);
    work_.resize(m_);
  }

  SolveResult run() {
    SolveResult result;
    if (first_artificial_ < cols_) {
      cost_.assign(cols_, 0.0);
      for (std::size_t j = first_artificial_; j < cols_; ++j) cost_[j] = 1.0;
      iterate(cols_);
      double infeas = 0.0;
      double scale = 1.0;
      for (std::size_t r = 0; r < m_; ++r) {
        scale = std::max(scale, std::abs(rhs_[r]));
        if (head_[r] >= first_artificial_) infeas += xb_[r];
      }
      if (infeas > opt_.feasibility_tol * scale) {
        result.status = SolveStatus::infeasible;
        result.iterations = steps_;
        return result;
      }
      expel_artificials();
    }

    cost_.assign(cols_, 0.0);
    const double sign = lp_.sense() == Sense::maximize ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = sign * lp_.c()[j];
    if (!iterate(first_artificial_)) {
      result.status = SolveStatus::unbounded;
      result.iterations = steps_;
      return result;
    }

    Vector s(lp_.lower());
    for (std::size_t r = 0; r < m_; ++r)
      if (head_[r] < n_) s[head_[r]] += std::max(0.0, xb_[r]);
    result.status = SolveStatus::optimal;
    result.objective = lp_.objective(s);
    result.s = std::move(s);
    result.iterations = steps_;
    return result;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t artificial_for_row(std::size_t r) const {
    auto it = std::lower_bound(art_row_.begin(), art_row_.end(), r);
    return first_artificial_ + static_cast<std::size_t>(it - art_row_.begin());
  }

  // Expands column j of the sign-adjusted standard-form matrix into `out`.
  void load_column(std::size_t j, Vector& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (j < n_) {
      for (std::size_t p = col_start_[j]; p < col_start_[j + 1]; ++p) out[entries_[p].index] = entries_[p].value;
    } else if (j < first_artificial_) {
      const std::size_t r = slack_row_[j - n_];
      out[r] = sign_[r];
    } else {
      out[art_row_[j - first_artificial_]] = 1.0;
    }
  }

  double column_dot(std::size_t j, const Vector& v) const {
    if (j < n_) {
      double s = 0.0;
      for (std::size_t p = col_start_[j]; p < col_start_[j + 1]; ++p) s += entries_[p].value * v[entries_[p].index];
      return s;
    }
    if (j < first_artificial_) {
      const std::size_t r = slack_row_[j - n_];
      return sign_[r] * v[r];
    }
    return v[art_row_[j - first_artificial_]];
  }

  void ftran(Vector& v) const {
    for (const Eta& e : etas_) {
      const double t = v[e.pivot_row];
      if (t == 0.0) continue;
      v[e.pivot_row] = e.pivot_value * t;
      for (const auto& o : e.off) v[o.index] += o.value * t;
    }
  }

  void btran(Vector& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = it->pivot_value * v[it->pivot_row];
      for (const auto& o : it->off) s += o.value * v[o.index];
      v[it->pivot_row] = s;
    }
  }

  void push_eta(std::size_t p, const Vector& alpha) {
    Eta e;
    e.pivot_row = static_cast<std::uint32_t>(p);
    const double piv = alpha[p];
    e.pivot_value = 1.0 / piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == p || alpha[i] == 0.0) continue;
      const double v = -alpha[i] / piv;
      if (std::abs(v) > 1e-14) e.off.push_back({static_cast<std::uint32_t>(i), v});
    }
    etas_.push_back(std::move(e));
  }

  bool iterate(std::size_t limit) {
    for (;;) {
      for (std::size_t r = 0; r < m_; ++r) y_[r] = cost_[head_[r]];
      btran(y_);

      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (position_[j] != kNone) continue;
        if (cost_[j] - column_dot(j, y_) < -opt_.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;

      load_column(enter, work_);
      ftran(work_);
      std::size_t leave = kNone;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double coef = work_[r];
        if (coef <= opt_.pivot_tol) continue;
        const double ratio = xb_[r] / coef;
        if (leave == kNone) {
          best = ratio;
          leave = r;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, std::abs(best));
        if (ratio < best - tie) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + tie && head_[r] < head_[leave]) {
          leave = r;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter, work_);
    }
  }

  void pivot(std::size_t p, std::size_t q, const Vector& alpha) {
    if (++steps_ > opt_.max_iterations) throw Error("revised simplex: iteration limit exceeded");
    const double piv = alpha[p];
    if (!std::isfinite(piv) || std::abs(piv) < opt_.pivot_tol)
      throw SingularBasisError(steps_, "pivot element " + std::to_string(piv));
    const double theta = xb_[p] / piv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (alpha[r] == 0.0 || r == p) continue;
      xb_[r] -= theta * alpha[r];
      if (xb_[r] < 0.0 && xb_[r] > -opt_.feasibility_tol) xb_[r] = 0.0;
    }
    xb_[p] = theta;
    position_[head_[p]] = kNone;
    head_[p] = q;
    position_[q] = p;
    push_eta(p, alpha);
    if (etas_.size() >= opt_.refactor_interval + reinvert_base_) reinvert();
  }

  // Rebuilds the eta file from scratch over the current basic columns.
  void reinvert() {
    etas_.clear();
    std::vector<std::size_t> basic(head_.begin(), head_.end());
    std::vector<bool> row_taken(m_, false);
    std::vector<std::size_t> new_head(m_, kNone);
    std::vector<std::size_t> structural;
    for (std::size_t v : basic) {
      if (v >= n_) {
        const std::size_t r = v < first_artificial_ ? slack_row_[v - n_] : art_row_[v - first_artificial_];
        row_taken[r] = true;
        new_head[r] = v;
        if (v < first_artificial_ && sign_[r] < 0.0) etas_.push_back(Eta{static_cast<std::uint32_t>(r), -1.0, {}});
      } else {
        structural.push_back(v);
      }
    }
    std::stable_sort(structural.begin(), structural.end(), [this](std::size_t a, std::size_t b) {
      return col_start_[a + 1] - col_start_[a] < col_start_[b + 1] - col_start_[b];
    });
    for (std::size_t v : structural) {
      load_column(v, work_);
      ftran(work_);
      std::size_t best = kNone;
      double mag = opt_.pivot_tol;
      for (std::size_t r = 0; r < m_; ++r) {
        if (row_taken[r]) continue;
        if (std::abs(work_[r]) > mag) {
          mag = std::abs(work_[r]);
          best = r;
        }
      }
      if (best == kNone) throw SingularBasisError(steps_, "reinversion found no pivot for column " + std::to_string(v));
      row_taken[best] = true;
      new_head[best] = v;
      push_eta(best, work_);
    }
    head_ = std::move(new_head);
    for (std::size_t r = 0; r < m_; ++r) position_[head_[r]] = r;
    for (std::size_t r = 0; r < m_; ++r) xb_[r] = sign_[r] * rhs_[r];
    ftran(xb_);
    for (double& v : xb_) {
      if (!std::isfinite(v)) throw SingularBasisError(steps_, "non-finite basic value after reinversion");
      if (v < 0.0 && v > -opt_.feasibility_tol) v = 0.0;
    }
    reinvert_base_ = etas_.size();
  }

  void expel_artificials() {
    Vector rho(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (head_[r] < first_artificial_) continue;
      std::fill(rho.begin(), rho.end(), 0.0);
      rho[r] = 1.0;
      btran(rho);
      std::size_t pick = kNone;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (position_[j] != kNone) continue;
        if (std::abs(column_dot(j, rho)) > opt_.pivot_tol) {
          pick = j;
          break;
        }
      }
      // No candidate: the row is redundant and its artificial stays basic at zero.
      if (pick == kNone) continue;
      load_column(pick, work_);
      ftran(work_);
      pivot(r, pick, work_);
    }
  }

  const SparseLinearProgram& lp_;
  RevisedOptions opt_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::size_t> bounded_;
  Vector rhs_;
  Vector sign_;
  std::vector<bool> is_eq_;
  std::vector<std::size_t> slack_of_row_;
  std::vector<std::size_t> slack_row_;
  std::vector<std::size_t> art_row_;
  std::vector<std::size_t> col_start_;
  std::vector<Entry> entries_;
  std::vector<std::size_t> head_;
  std::vector<std::size_t> position_;
  Vector xb_;
  Vector y_;
  Vector work_;
  Vector cost_;
  std::vector<Eta> etas_;
  std::size_t reinvert_base_ = 0;
  std::size_t steps_ = 0;
};

}  // namespace

SolveResult solve_revised(const SparseLinearProgram& lp, const RevisedOptions& options) {
  RevisedSolver solver(lp, options);
  return solver.run();
}

}  // namespace lpstruct::lp
