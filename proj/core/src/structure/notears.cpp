#include "lpstruct/structure/notears.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <spdlog/spdlog.h>

#include "lpstruct/error.hpp"
#include "lpstruct/structure/matrix_exp.hpp"

namespace lpstruct::structure {

namespace {

void require_square(const Matrix& w, const char* what) {
  if (w.rows() != w.cols()) throw DimensionError(std::string(what) + ": W must be square", w.rows(), w.cols());
}

// Augmented objective over z = (vec P, vec N), residual loss in Gram form
// 0.5 tr((I - W)^T S (I - W)) with S = X^T X / n.
class Subproblem {
 public:
  Subproblem(const Matrix& gram, double lambda) : s_(gram), d_(gram.rows()), lambda_(lambda) {}

  std::size_t size() const { return 2 * d_ * d_; }
  std::size_t dim() const { return d_; }

  Matrix to_w(const Vector& z) const {
    Matrix w(d_, d_);
    auto f = w.flat();
    for (std::size_t i = 0; i < d_ * d_; ++i) f[i] = z[i] - z[d_ * d_ + i];
    return w;
  }

  bool on_diagonal(std::size_t idx) const {
    const std::size_t q = idx % (d_ * d_);
    return q / d_ == q % d_;
  }

  // Objective value; fills grad and h. Non-finite when exp overflows.
  double evaluate(const Vector& z, double rho, double alpha, Vector& grad, double& h) const {
    const Matrix w = to_w(z);
    Matrix r = Matrix::identity(d_);
    for (std::size_t i = 0; i < d_ * d_; ++i) r.flat()[i] -= w.flat()[i];
    const Matrix sr = matmul(s_, r);
    double loss = 0.0;
    for (std::size_t i = 0; i < d_ * d_; ++i) loss += r.flat()[i] * sr.flat()[i];
    loss *= 0.5;
    const Matrix e = matrix_exp(hadamard(w, w));
    h = trace(e) - static_cast<double>(d_);
    double l1 = 0.0;
    for (double v : z) l1 += v;
    const double value = loss + lambda_ * l1 + 0.5 * rho * h * h + alpha * h;
    grad.assign(size(), 0.0);
    if (!std::isfinite(value)) return value;
    const double mult = rho * h + alpha;
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t j = 0; j < d_; ++j) {
        if (i == j) continue;
        const double g = -sr(i, j) + mult * e(j, i) * 2.0 * w(i, j);
        grad[i * d_ + j] = g + lambda_;
        grad[d_ * d_ + i * d_ + j] = -g + lambda_;
      }
    }
    return value;
  }

 private:
  const Matrix& s_;
  std::size_t d_;
  double lambda_;
};

// Spectral projected gradient on z >= 0 with a nonmonotone (last 10 values)
// Armijo search. Returns the final iterate.
Vector solve_subproblem(const Subproblem& p, Vector z, double rho, double alpha, const LearnerConfig& cfg) {
  constexpr double kArmijo = 1e-4;
  constexpr std::size_t kMemory = 10;
  constexpr double kStepMin = 1e-12;
  constexpr double kStepMax = 1e12;
  const std::size_t n = p.size();

  Vector g, g_trial;
  double h = 0.0;
  double f = p.evaluate(z, rho, alpha, g, h);
  if (!std::isfinite(f)) throw Error("learn: objective is not finite at the starting point");
  std::deque<double> history{f};

  auto pg_norm = [&](const Vector& zz, const Vector& gg) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(std::max(0.0, zz[i] - gg[i]) - zz[i]));
    return m;
  };
  double pg = pg_norm(z, g);
  double step = pg > 0 ? std::clamp(1.0 / pg, kStepMin, kStepMax) : 1.0;
  Vector dir(n), trial(n);
  std::size_t stalled = 0;

  for (std::size_t it = 0; it < cfg.max_inner && pg > cfg.inner_tol; ++it) {
    double gd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = p.on_diagonal(i) ? 0.0 : std::max(0.0, z[i] - step * g[i]) - z[i];
      gd += g[i] * dir[i];
    }
    if (gd >= 0.0) break;
    const double f_ref = *std::max_element(history.begin(), history.end());
    double t = 1.0;
    double f_trial = 0.0;
    double h_trial = 0.0;
    bool accepted = false;
    while (t > 1e-20) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = std::max(0.0, z[i] + t * dir[i]);
      f_trial = p.evaluate(trial, rho, alpha, g_trial, h_trial);
      if (std::isfinite(f_trial) && f_trial <= f_ref + kArmijo * t * gd) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double si = trial[i] - z[i];
      ss += si * si;
      sy += si * (g_trial[i] - g[i]);
    }
    step = sy > 0.0 ? std::clamp(ss / sy, kStepMin, kStepMax) : kStepMax;
    const double decrease = f - f_trial;
    z.swap(trial);
    g.swap(g_trial);
    f = f_trial;
    history.push_back(f);
    if (history.size() > kMemory) history.pop_front();
    pg = pg_norm(z, g);
    stalled = std::abs(decrease) <= 1e-15 * std::max(1.0, std::abs(f)) ? stalled + 1 : 0;
    if (stalled >= kMemory) break;
  }
  return z;
}

Matrix drop_diagonal(Matrix w) {
  for (std::size_t i = 0; i < w.rows(); ++i) w(i, i) = 0.0;
  return w;
}

Matrix apply_threshold(const Matrix& w, double threshold) {
  Matrix out = w;
  for (double& v : out.flat())
    if (std::abs(v) <= threshold) v = 0.0;
  return out;
}

}  // namespace

double acyclicity(const Matrix& w) {
  require_square(w, "acyclicity");
  return trace(matrix_exp(hadamard(w, w))) - static_cast<double>(w.rows());
}

Matrix acyclicity_grad(const Matrix& w) {
  require_square(w, "acyclicity_grad");
  const Matrix e = transpose(matrix_exp(hadamard(w, w)));
  Matrix out(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.flat().size(); ++i) out.flat()[i] = e.flat()[i] * 2.0 * w.flat()[i];
  return out;
}

ScoreGrad score_and_grad(const Matrix& w, const Matrix& x, double lambda) {
  require_square(w, "score_and_grad");
  if (x.cols() != w.rows()) throw DimensionError("score_and_grad: X columns vs W", w.rows(), x.cols());
  if (x.rows() == 0) throw InvalidArgument("score_and_grad: X has no rows");
  const double n = static_cast<double>(x.rows());
  Matrix resid = matmul(x, w);
  for (std::size_t i = 0; i < resid.flat().size(); ++i) resid.flat()[i] = x.flat()[i] - resid.flat()[i];
  double sq = 0.0;
  for (double v : resid.flat()) sq += v * v;
  double l1 = 0.0;
  for (double v : w.flat()) l1 += std::abs(v);
  ScoreGrad out;
  out.score = sq / (2.0 * n) + lambda * l1;
  out.smooth_grad = matmul(transpose(x), resid);
  for (double& v : out.smooth_grad.flat()) v *= -1.0 / n;
  return out;
}

void LearnerConfig::validate() const {
  const auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string("LearnerConfig: ") + name + " must be a finite value >= 0");
  };
  nonneg(lambda, "lambda");
  nonneg(w, "w");
  nonneg(rho_init, "rho_init");
  nonneg(rho_max, "rho_max");
  nonneg(alpha_init, "alpha_init");
  nonneg(h_tol, "h_tol");
  nonneg(inner_tol, "inner_tol");
  if (rho_init > rho_max) throw InvalidArgument("LearnerConfig: rho_init exceeds rho_max");
  if (rho_init <= 0.0) throw InvalidArgument("LearnerConfig: rho_init must be positive");
}

std::size_t WeightedDag::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
    const auto colon = labels[i].find(':');
    if (colon != std::string::npos && labels[i].compare(colon + 1, std::string::npos, label) == 0) return i;
  }
  throw InvalidArgument("WeightedDag: no column '" + label + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> WeightedDag::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j)
      if (w(i, j) != 0.0) out.emplace_back(i, j);
  return out;
}

bool is_dag(const Matrix& w, double threshold) {
  require_square(w, "is_dag");
  const std::size_t d = w.rows();
  // 0 unvisited, 1 on stack, 2 done
  std::vector<int> state(d, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t root = 0; root < d; ++root) {
    if (state[root]) continue;
    stack.emplace_back(root, 0);
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == d) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const std::size_t u = next++;
      if (!(std::abs(w(v, u)) > threshold)) continue;
      if (state[u] == 1) return false;
      if (state[u] == 0) {
        state[u] = 1;
        stack.emplace_back(u, 0);
      }
    }
  }
  return true;
}

WeightedDag learn(const Matrix& x_in, std::vector<std::string> labels, const LearnerConfig& cfg) {
  cfg.validate();
  const std::size_t n = x_in.rows();
  const std::size_t d = x_in.cols();
  if (labels.size() != d) throw DimensionError("learn: labels vs columns", d, labels.size());
  if (n == 0) throw InvalidArgument("learn: dataset has no rows");

  Matrix x = x_in;
  std::size_t varying = 0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
    mean /= static_cast<double>(n);
    bool constant = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (x(i, j) != x(0, j)) constant = false;
      x(i, j) -= mean;
    }
    if (!constant) ++varying;
  }
  if (varying < 2) throw InvalidArgument("learn: need at least 2 non-constant columns, found " + std::to_string(varying));

  Matrix gram = matmul(transpose(x), x);
  for (double& v : gram.flat()) v /= static_cast<double>(n);
  const Subproblem problem(gram, cfg.lambda);

  Vector z(problem.size(), 0.0);
  double rho = cfg.rho_init;
  double alpha = cfg.alpha_init;
  double h = std::numeric_limits<double>::infinity();
  std::size_t outer = 0;
  for (; outer < cfg.max_outer; ++outer) {
    Vector z_new;
    double h_new = h;
    while (true) {
      z_new = solve_subproblem(problem, z, rho, alpha, cfg);
      h_new = acyclicity(problem.to_w(z_new));
      if (h_new > 0.25 * h && rho < cfg.rho_max) {
        rho = std::min(rho * 10.0, cfg.rho_max);
        continue;
      }
      break;
    }
    z.swap(z_new);
    h = h_new;
    alpha += rho * h;
    spdlog::debug("learn: outer {} h={:.3e} rho={:.1e}", outer, h, rho);
    if (h <= cfg.h_tol || rho >= cfg.rho_max) {
      ++outer;
      break;
    }
  }

  WeightedDag dag;
  dag.labels = std::move(labels);
  dag.lambda = cfg.lambda;
  dag.w_raw = drop_diagonal(problem.to_w(z));
  dag.h_final = acyclicity(dag.w_raw);
  dag.converged = h <= cfg.h_tol;
  dag.outer_iterations = outer;
  dag.final_rho = rho;
  dag.threshold = cfg.w;
  if (!dag.converged) spdlog::warn("learn: unconverged after {} outer iterations (h = {:.3e})", outer, h);

  if (!is_dag(dag.w_raw, dag.threshold)) {
    std::vector<double> mags;
    for (double v : dag.w_raw.flat())
      if (std::abs(v) > cfg.w) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    for (double t : mags) {
      if (is_dag(dag.w_raw, t)) {
        dag.threshold = t;
        break;
      }
    }
    dag.threshold_raised = true;
    spdlog::warn("learn: thresholded graph was cyclic; threshold raised from {} to {}", cfg.w, dag.threshold);
  }
  dag.w = apply_threshold(dag.w_raw, dag.threshold);
  return dag;
}

WeightedDag learn(const datagen::Dataset& ds, const LearnerConfig& cfg) {
  std::vector<std::string> labels;
  for (const auto& c : ds.columns()) labels.push_back(c.label());
  return learn(ds.values(), std::move(labels), cfg);
}

}  // namespace lpstruct::structure
