#include "lpstruct/lp/vertex_enum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpstruct/error.hpp"

namespace lpstruct::lp {

namespace {

constexpr double kMergeTol = 1e-7;

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Vector> enumerate_vertices(const LinearProgram& lp) {
  const std::size_t k = lp.num_vars();
  const std::size_t m = lp.num_rows();
  if (k > 6 || m + 2 * k > 24)
    throw InvalidArgument("enumerate_vertices is a desk-scale oracle: needs k <= 6 and m + 2k <= 24 (got k=" +
                          std::to_string(k) + ", m=" + std::to_string(m) + ")");
  if (k == 0) return {};

  // Candidate active rows: A x <= b, -x <= -lower, x <= upper.
  std::vector<Vector> rows;
  Vector rhs;
  for (std::size_t i = 0; i < m; ++i) {
    rows.emplace_back(lp.a().row(i).begin(), lp.a().row(i).end());
    rhs.push_back(lp.b()[i]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    Vector e(k, 0.0);
    e[j] = -1.0;
    rows.push_back(e);
    rhs.push_back(-lp.lower()[j]);
    if (std::isfinite(lp.upper()[j])) {
      e[j] = 1.0;
      rows.push_back(e);
      rhs.push_back(lp.upper()[j]);
    }
  }

  std::vector<Vector> found;
  const std::size_t n = rows.size();
  if (n < k) return found;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  do {
    Matrix sys(k, k);
    Vector r(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::copy(rows[idx[i]].begin(), rows[idx[i]].end(), sys.row(i).begin());
      r[i] = rhs[idx[i]];
    }
    Vector x;
    if (!solve_dense(std::move(sys), std::move(r), x)) continue;
    if (feasibility(lp, x) != 1) continue;
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Vector& v) {
      for (std::size_t j = 0; j < k; ++j)
        if (std::abs(v[j] - x[j]) > kMergeTol) return false;
      return true;
    });
    if (!dup) found.push_back(std::move(x));
  } while (next_combination(idx, n));

  for (auto& v : found)
    for (double& e : v)
      if (std::abs(e) < 1e-12) e = 0.0;
  std::sort(found.begin(), found.end());
  return found;
}

std::optional<double> brute_force_optimum(const LinearProgram& lp) {
  const auto vertices = enumerate_vertices(lp);
  if (vertices.empty()) return std::nullopt;
  double best = lp.objective(vertices.front());
  for (const auto& v : vertices) {
    const double obj = lp.objective(v);
    best = lp.sense() == Sense::maximize ? std::max(best, obj) : std::min(best, obj);
  }
  return best;
}

}  // namespace lpstruct::lp
