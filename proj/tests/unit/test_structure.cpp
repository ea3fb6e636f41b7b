#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "lpstruct/error.hpp"
#include "lpstruct/rng.hpp"
#include "lpstruct/structure/dag_io.hpp"
#include "lpstruct/structure/matrix_exp.hpp"
#include "lpstruct/structure/notears.hpp"
#include "oracles.hpp"

using namespace lpstruct;
using namespace lpstruct::structure;

namespace {

double normal(Rng& rng) {
  const double u = 1.0 - rng.unit();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * rng.unit());
}

Matrix random_matrix(std::size_t d, double scale, Rng& rng, bool zero_diagonal = true) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!zero_diagonal || i != j) m(i, j) = rng.uniform(-scale, scale);
  return m;
}

Matrix gaussian_data(std::size_t n, std::size_t d, Rng& rng) {
  Matrix x(n, d);
  for (auto& v : x.flat()) v = normal(rng);
  return x;
}

// x1, x2 independent; y = -2 x1 - x2 + small noise.
Matrix linear_sem(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, 0) = normal(rng);
    x(i, 1) = normal(rng);
    x(i, 2) = -2.0 * x(i, 0) - x(i, 1) + 0.1 * normal(rng);
  }
  return x;
}

const std::vector<std::string> kSemLabels{"decision:x1", "decision:x2", "indicator:y"};

double rel_error(const Matrix& got, const Matrix& want) { return max_abs_diff(got, want) / std::max(1.0, max_abs(want)); }

}  // namespace

TEST_CASE("matrix_exp examples") {
  CHECK(matrix_exp(Matrix(3, 3)) == Matrix::identity(3));
  const auto d = matrix_exp(Matrix{{1, 0}, {0, 2}});
  CHECK(std::fabs(d(0, 0) - std::exp(1.0)) <= 1e-12 * std::exp(1.0));
  CHECK(std::fabs(d(1, 1) - std::exp(2.0)) <= 1e-12 * std::exp(2.0));
  CHECK(d(0, 1) == 0.0);
  const auto s = matrix_exp(Matrix{{0, 1}, {1, 0}});
  CHECK(s(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
  CHECK(s(0, 1) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK(s(1, 0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK(s(1, 1) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
}

TEST_CASE("matrix_exp rejects bad input") {
  CHECK_THROWS_AS(matrix_exp(Matrix(2, 3)), InvalidArgument);
  CHECK_THROWS_AS(matrix_exp(Matrix{{0, NAN}, {0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(matrix_exp(Matrix{{INFINITY}}), InvalidArgument);
}

TEST_CASE("property: matrix_exp matches the extended-precision series") {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 7);
    Matrix m = random_matrix(d, 1.0, rng, false);
    const double target = 10.0 * (trial + 1) / 40.0;
    const double scale = target / std::max(norm1(m), 1e-12);
    for (auto& v : m.flat()) v *= scale;
    CHECK(rel_error(matrix_exp(m), oracle::taylor_expm(m)) <= 1e-10);
  }
}

TEST_CASE("acyclicity examples") {
  CHECK(acyclicity(Matrix(4, 4)) == 0.0);
  CHECK(std::fabs(acyclicity(Matrix{{0, 2, -1}, {0, 0, 3}, {0, 0, 0}})) <= 1e-12);
  CHECK(acyclicity(Matrix{{0, 1}, {1, 0}}) == doctest::Approx(2.0 * std::cosh(1.0) - 2.0).epsilon(1e-12));
  CHECK(acyclicity(Matrix{{0, 1}, {1, 0}}) == doctest::Approx(1.0862).epsilon(1e-4));
}

TEST_CASE("property: acyclicity vanishes on 100 nilpotent patterns and is nonnegative") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 8);
    Matrix w(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) w(i, j) = rng.uniform(-2, 2);
    if (trial % 2) w = transpose(w);
    CHECK(std::fabs(acyclicity(w)) <= 1e-10);
    CHECK(is_dag(w, 0.0));
  }
  for (int trial = 0; trial < 100; ++trial) CHECK(acyclicity(random_matrix(5, 1.5, rng)) >= 0.0);
}

TEST_CASE("acyclicity_grad examples") {
  CHECK(acyclicity_grad(Matrix(3, 3)) == Matrix(3, 3));
  Rng rng(3);
  const auto g = acyclicity_grad(random_matrix(5, 1.0, rng));
  for (std::size_t i = 0; i < 5; ++i) CHECK(g(i, i) == 0.0);
}

TEST_CASE("property: acyclicity gradient matches central differences") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 5);
    const Matrix w = random_matrix(d, 0.8, rng);
    const Matrix fd = oracle::fd_gradient([](const Matrix& m) { return acyclicity(m); }, w, 1e-5);
    const Matrix g = acyclicity_grad(w);
    // the finite-difference oracle perturbs diagonal entries too; compare off-diagonal
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) CHECK(std::fabs(g(i, j) - fd(i, j)) <= 1e-5);
    }
  }
}

TEST_CASE("score examples") {
  Rng rng(5);
  const Matrix x = gaussian_data(50, 3, rng);
  const auto zero = score_and_grad(Matrix(3, 3), x, 0.0);
  CHECK(zero.score == doctest::Approx(frobenius(x) * frobenius(x) / 100.0).epsilon(1e-12));

  Matrix exact(40, 2);
  for (std::size_t i = 0; i < 40; ++i) {
    exact(i, 0) = normal(rng);
    exact(i, 1) = 3.0 * exact(i, 0);
  }
  Matrix w(2, 2);
  w(0, 1) = 3.0;
  const auto fit = score_and_grad(w, exact, 0.0);
  double col0 = 0;
  for (std::size_t i = 0; i < 40; ++i) col0 += exact(i, 0) * exact(i, 0);
  CHECK(fit.score == doctest::Approx(col0 / 80.0).epsilon(1e-12));
  const auto penalised = score_and_grad(w, exact, 0.5);
  CHECK(penalised.score == doctest::Approx(fit.score + 1.5).epsilon(1e-12));
  CHECK_THROWS_AS(score_and_grad(Matrix(3, 3), exact, 0.0), DimensionError);
}

TEST_CASE("property: smooth score gradient matches central differences") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 5);
    const Matrix x = gaussian_data(30, d, rng);
    const Matrix w = random_matrix(d, 1.0, rng);
    const auto f = [&x](const Matrix& m) { return score_and_grad(m, x, 0.0).score; };
    const Matrix fd = oracle::fd_gradient(f, w, 1e-5);
    CHECK(max_abs_diff(score_and_grad(w, x, 0.0).smooth_grad, fd) <= 1e-5);
  }
}

TEST_CASE("learn recovers a negative linear mechanism, ordered like least squares") {
  const Matrix x = linear_sem(1000, 21);
  const auto dag = learn(x, kSemLabels);
  CHECK(dag.converged);
  CHECK(dag.w(0, 2) < 0.0);
  CHECK(dag.w(1, 2) < 0.0);
  CHECK(std::fabs(dag.w(0, 2)) > std::fabs(dag.w(1, 2)));
  CHECK(dag.w(0, 1) == 0.0);
  CHECK(dag.w(1, 0) == 0.0);
  const auto beta = oracle::ols({x.column(0), x.column(1)}, x.column(2));
  CHECK(beta[0] < 0.0);
  CHECK(beta[1] < 0.0);
  CHECK(std::fabs(beta[0]) > std::fabs(beta[1]));
}

TEST_CASE("independent noise gives an empty graph") {
  Rng rng(8);
  const auto dag = learn(gaussian_data(1000, 2, rng), {"a:u", "a:v"});
  CHECK(dag.edges().empty());
}

TEST_CASE("learner output invariants") {
  Rng rng(2);
  Matrix x = gaussian_data(400, 5, rng);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    x(i, 2) += 0.8 * x(i, 0);
    x(i, 3) -= 0.6 * x(i, 2);
    x(i, 4) += 0.5 * x(i, 1) + 0.5 * x(i, 3);
  }
  const auto dag = learn(x, {"r:a", "r:b", "r:c", "r:d", "r:e"});
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(dag.w(i, i) == 0.0);
    CHECK(dag.w_raw(i, i) == 0.0);
  }
  CHECK(dag.converged);
  CHECK(dag.h_final <= 1e-8);
  CHECK(is_dag(dag.w, 0.0));
  CHECK(is_dag(dag.w, dag.threshold));
  for (auto v : dag.w.flat()) CHECK((v == 0.0 || std::fabs(v) > dag.threshold));
  CHECK(dag.index_of("r:c") == 2);
  CHECK_THROWS(dag.index_of("r:zz"));
}

TEST_CASE("learn is deterministic") {
  const Matrix x = linear_sem(300, 4);
  const auto a = learn(x, kSemLabels);
  const auto b = learn(x, kSemLabels);
  CHECK(a.w_raw == b.w_raw);
  CHECK(a.w == b.w);
  CHECK(a.outer_iterations == b.outer_iterations);
}

TEST_CASE("property: raising the threshold never adds edges") {
  Rng rng(17);
  Matrix x = gaussian_data(500, 4, rng);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    x(i, 1) += 0.7 * x(i, 0);
    x(i, 3) += 0.4 * x(i, 1) - 0.9 * x(i, 2);
  }
  const std::vector<std::string> labels{"r:a", "r:b", "r:c", "r:d"};
  std::size_t previous = 16;
  std::vector<std::pair<std::size_t, std::size_t>> previous_edges;
  bool first = true;
  for (double w : {0.0, 0.05, 0.2, 0.45, 0.8}) {
    LearnerConfig cfg;
    cfg.w = w;
    const auto dag = learn(x, labels, cfg);
    const auto edges = dag.edges();
    CHECK(edges.size() <= previous);
    if (!first)
      for (const auto& e : edges)
        CHECK(std::find(previous_edges.begin(), previous_edges.end(), e) != previous_edges.end());
    previous = edges.size();
    previous_edges = edges;
    first = false;
  }
}

TEST_CASE("property: raising lambda never grows the L1 norm") {
  const Matrix x = linear_sem(500, 30);
  double previous = INFINITY;
  for (double lambda : {0.0, 0.01, 0.05, 0.1, 0.3, 1.0}) {
    LearnerConfig cfg;
    cfg.lambda = lambda;
    const auto dag = learn(x, kSemLabels, cfg);
    double l1 = 0;
    for (double v : dag.w_raw.flat()) l1 += std::fabs(v);
    CHECK(l1 <= previous + 1e-6);
    previous = l1;
  }
}

TEST_CASE("learner preconditions") {
  Matrix x(10, 2);
  for (std::size_t i = 0; i < 10; ++i) x(i, 0) = static_cast<double>(i);
  CHECK_THROWS_AS(learn(x, {"a:x", "a:y"}), InvalidArgument);
  LearnerConfig cfg;
  cfg.rho_init = 10;
  cfg.rho_max = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.lambda = -1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("is_dag examples") {
  CHECK(is_dag(Matrix{{0, 1, 1}, {0, 0, 1}, {0, 0, 0}}, 0.0));
  CHECK_FALSE(is_dag(Matrix{{0, 0.5}, {0.5, 0}}, 0.3));
  CHECK(is_dag(Matrix{{0, 0.2}, {-0.2, 0}}, 0.3));
  CHECK_FALSE(is_dag(Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, 0.0));
}

TEST_CASE("dag files round trip") {
  const auto dag = learn(linear_sem(200, 1), kSemLabels);
  const auto dir = std::filesystem::temp_directory_path() / "lpstruct_test_dag";
  std::filesystem::create_directories(dir);
  write_dag_files(dir / "dag.csv", dag, {{"seed", 1}});
  const auto back = read_dag_file(dir / "dag.csv");
  CHECK(back.w == dag.w);
  CHECK(back.w_raw == dag.w_raw);
  CHECK(back.labels == dag.labels);
  CHECK(back.threshold == dag.threshold);
  CHECK(back.converged == dag.converged);
  std::filesystem::remove_all(dir);
}
