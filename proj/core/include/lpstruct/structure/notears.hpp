#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lpstruct/datagen/dataset.hpp"
#include "lpstruct/linalg.hpp"

namespace lpstruct::structure {

// h(W) = tr(exp(W o W)) - d; zero exactly when the support of W is acyclic.
double acyclicity(const Matrix& w);
// exp(W o W)^T o 2W
Matrix acyclicity_grad(const Matrix& w);

struct ScoreGrad {
  double score = 0.0;   // (1/2n)||X - XW||_F^2 + lambda * sum |W_ij|
  Matrix smooth_grad;   // -(1/n) X^T (X - XW)
};

ScoreGrad score_and_grad(const Matrix& w, const Matrix& x, double lambda);

struct LearnerConfig {
  double lambda = 0.1;
  double w = 0.3;
  double rho_init = 1.0;
  double rho_max = 1e16;
  double alpha_init = 0.0;
  double h_tol = 1e-8;
  std::size_t max_outer = 100;
  std::size_t max_inner = 2000;
  // Inner stop: max-abs projected gradient.
  double inner_tol = 1e-7;

  void validate() const;
};

struct WeightedDag {
  Matrix w;      // thresholded, diagonal 0
  Matrix w_raw;  // before thresholding, diagonal 0
  std::vector<std::string> labels;
  double threshold = 0.0;  // may exceed the configured w if it had to be raised
  bool threshold_raised = false;
  double lambda = 0.0;
  double h_final = 0.0;
  bool converged = false;
  std::size_t outer_iterations = 0;
  double final_rho = 0.0;

  std::size_t index_of(const std::string& label) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

// Augmented Lagrangian over the split variables W = P - N (P, N >= 0), so the
// L1 term is linear; each subproblem is solved by spectral projected gradient
// with a nonmonotone backtracking line search. Columns are mean-centred; the
// iterate starts at W = 0.
WeightedDag learn(const datagen::Dataset& ds, const LearnerConfig& cfg = {});
WeightedDag learn(const Matrix& x, std::vector<std::string> labels, const LearnerConfig& cfg = {});

// 1 iff the graph of entries with |W_ij| > w has a topological order.
bool is_dag(const Matrix& w, double threshold);

}  // namespace lpstruct::structure
