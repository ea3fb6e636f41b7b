#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

using LMat = std::vector<std::vector<long double>>;

// Gauss-Jordan with partial pivoting on an augmented matrix; false if singular.
bool gauss(LMat& a, std::vector<long double>& x) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-12L) return false;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  x.assign(n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return true;
}

}  // namespace

Vector ols(const std::vector<Vector>& predictors, const Vector& target) {
  const std::size_t p = predictors.size() + 1;
  const std::size_t n = target.size();
  LMat a(p, std::vector<long double>(p + 1, 0.0L));
  auto feature = [&](std::size_t j, std::size_t i) -> long double {
    return j == 0 ? 1.0L : static_cast<long double>(predictors[j - 1][i]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) a[r][c] += feature(r, i) * feature(c, i);
      a[r][p] += feature(r, i) * target[i];
    }
  std::vector<long double> beta;
  if (!gauss(a, beta)) return Vector(p - 1, std::numeric_limits<double>::quiet_NaN());
  Vector out;
  for (std::size_t j = 1; j < p; ++j) out.push_back(static_cast<double>(beta[j]));
  return out;
}

Matrix fd_gradient(const std::function<double(const Matrix&)>& f, const Matrix& w, double step) {
  Matrix g(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      Matrix up = w, down = w;
      up(i, j) += step;
      down(i, j) -= step;
      g(i, j) = (f(up) - f(down)) / (2.0 * step);
    }
  return g;
}

Matrix taylor_expm(const Matrix& m) {
  const std::size_t n = m.rows();
  LMat a(n, std::vector<long double>(n));
  long double norm = 0.0L;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = m(i, j);
      norm = std::max(norm, std::fabs(a[i][j]) * n);
    }
  int squarings = 0;
  while (norm > 0.25L) {
    norm /= 2.0L;
    ++squarings;
  }
  for (auto& row : a)
    for (auto& v : row) v = std::ldexp(v, -squarings);
  auto mul = [n](const LMat& x, const LMat& y) {
    LMat z(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
  };
  LMat result(n, std::vector<long double>(n, 0.0L));
  LMat term(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1.0L;
  for (int k = 1; k <= 40; ++k) {
    term = mul(term, a);
    for (auto& row : term)
      for (auto& v : row) v /= k;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = static_cast<double>(result[i][j]);
  return out;
}

std::optional<double> vertex_optimum(const lpstruct::lp::LinearProgram& lp) {
  const std::size_t k = lp.num_vars();
  std::vector<std::vector<long double>> rows;
  std::vector<long double> rhs;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    rows.emplace_back(lp.a().row(i).begin(), lp.a().row(i).end());
    rhs.push_back(lp.b()[i]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<long double> e(k, 0.0L);
    e[j] = -1.0L;
    rows.push_back(e);
    rhs.push_back(-lp.lower()[j]);
    if (std::isfinite(lp.upper()[j])) {
      e[j] = 1.0L;
      rows.push_back(e);
      rhs.push_back(lp.upper()[j]);
    }
  }
  const bool maximize = lp.sense() == lpstruct::lp::Sense::maximize;
  std::optional<double> best;
  std::vector<bool> pick(rows.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    LMat sys;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (pick[r]) {
        auto line = rows[r];
        line.push_back(rhs[r]);
        sys.push_back(line);
      }
    std::vector<long double> x;
    if (!gauss(sys, x)) continue;
    bool ok = true;
    for (std::size_t r = 0; r < rows.size() && ok; ++r) {
      long double act = 0.0L;
      for (std::size_t j = 0; j < k; ++j) act += rows[r][j] * x[j];
      ok = act <= rhs[r] + 1e-7L;
    }
    if (!ok) continue;
    long double obj = 0.0L;
    for (std::size_t j = 0; j < k; ++j) obj += lp.c()[j] * x[j];
    const double v = static_cast<double>(obj);
    if (!best || (maximize ? v > *best : v < *best)) best = v;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

std::optional<double> bellman_ford(const lpstruct::sp::DirectedGraph& g) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.node_count(), inf);
  dist[g.source()] = 0.0;
  for (std::size_t round = 0; round + 1 < g.node_count(); ++round)
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edges()[e];
      if (dist[edge.tail] + g.costs()[e] < dist[edge.head]) dist[edge.head] = dist[edge.tail] + g.costs()[e];
    }
  if (!std::isfinite(dist[g.sink()])) return std::nullopt;
  return dist[g.sink()];
}

std::vector<std::vector<std::size_t>> all_paths(const lpstruct::sp::DirectedGraph& g) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> stack;
  std::vector<bool> seen(g.node_count(), false);
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (v == g.sink()) {
      out.push_back(stack);
      return;
    }
    seen[v] = true;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edges()[e];
      if (edge.tail != v || seen[edge.head]) continue;
      stack.push_back(e);
      walk(edge.head);
      stack.pop_back();
    }
    seen[v] = false;
  };
  walk(g.source());
  return out;
}

bool is_simple_path(const lpstruct::sp::DirectedGraph& g, const std::vector<std::uint8_t>& x) {
  for (const auto& path : all_paths(g)) {
    std::vector<std::uint8_t> sel(g.edge_count(), 0);
    for (auto e : path) sel[e] = 1;
    if (sel == x) return true;
  }
  return false;
}

double energy_violation(const lpstruct::energy::EnergyConfig& cfg, const lpstruct::energy::EnergyTimeseries& ts,
                        const lpstruct::energy::EnergySolution& sol) {
  double worst = 0.0;
  auto atmost = [&worst](double lhs, double rhs) { worst = std::max(worst, lhs - rhs); };
  auto equal = [&worst](double lhs, double rhs) { worst = std::max(worst, std::fabs(lhs - rhs)); };
  atmost(-sol.cap_pv, 0.0);
  atmost(-sol.cap_bat_storage, 0.0);
  atmost(-sol.cap_bat_power, 0.0);
  double state = 0.0;
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    equal(sol.p_ele[t] + sol.p_pv[t] + sol.p_bat_out[t] - sol.p_bat_in[t] + sol.p_gas[t], ts.demand[t]);
    state += sol.p_bat_in[t] - sol.p_bat_out[t];
    equal(sol.p_bat_state[t], state);
    state = sol.p_bat_state[t];
    for (double v : {sol.p_ele[t], sol.p_gas[t], sol.p_pv[t], sol.p_bat_in[t], sol.p_bat_out[t], sol.p_bat_state[t]})
      atmost(-v, 0.0);
    atmost(sol.p_pv[t], sol.cap_pv * ts.avail_pv[t] * cfg.delta_t);
    atmost(sol.p_gas[t], cfg.u_gas);
    atmost(sol.p_bat_in[t], sol.cap_bat_power);
    atmost(sol.p_bat_out[t], sol.cap_bat_power);
    atmost(sol.p_bat_state[t], sol.cap_bat_storage);
  }
  equal(sol.p_bat_state.empty() ? 0.0 : sol.p_bat_state[0], 0.0);
  return worst;
}

}  // namespace oracle
