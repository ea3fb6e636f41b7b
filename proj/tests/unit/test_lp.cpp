#include "doctest.h"

#include <cmath>
#include <sstream>

#include "lpstruct/error.hpp"
#include "lpstruct/harness/instances.hpp"
#include "lpstruct/lp/linear_program.hpp"
#include "lpstruct/lp/lp_io.hpp"
#include "lpstruct/lp/random_lp.hpp"
#include "lpstruct/lp/revised_simplex.hpp"
#include "lpstruct/lp/simplex.hpp"
#include "lpstruct/lp/sparse_program.hpp"
#include "lpstruct/lp/vertex_enum.hpp"
#include "oracles.hpp"

using namespace lpstruct;
using namespace lpstruct::lp;

namespace {

LinearProgram box2() { return LinearProgram(Matrix{{1, 0}, {0, 1}}, {1, 1}, {1, 1}); }

LinearProgram five_vertex() { return LinearProgram(Matrix{{1, 1}, {1, 0}, {0, 1}}, {4, 3, 3}, {3, 2}); }

LinearProgram contradictory() { return LinearProgram(Matrix{{-1}, {1}}, {-1, 0}, {1}); }

SparseLinearProgram to_sparse(const LinearProgram& lp) {
  SparseLpBuilder b(lp.num_vars(), lp.sense());
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const auto r = b.add_row(RowKind::le, lp.b()[i]);
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
      if (lp.a()(i, j) != 0.0) b.add_entry(r, j, lp.a()(i, j));
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    b.set_cost(j, lp.c()[j]);
    b.set_bounds(j, lp.lower()[j], lp.upper()[j]);
  }
  return b.build();
}

RandomLpRanges bounded(Sense sense = Sense::maximize) {
  RandomLpRanges r;
  r.a = {-1.0, 1.0};
  r.c = {-1.0, 1.0};
  r.var_upper = 5.0;
  r.sense = sense;
  return r;
}

}  // namespace

TEST_CASE("feasibility on the diet program") {
  const auto diet = harness::diet_lp();
  const Vector x{2, 1};
  CHECK(feasibility(diet, x) == 1);
  CHECK(feasibility(diet, Vector{0, 0}) == 0);
  CHECK(feasibility(diet, x, true) == 0);
  CHECK(feasibility(diet, Vector{0, 0}, true) == 1);
}

TEST_CASE("feasibility rejects wrong length with both sizes in the message") {
  const auto diet = harness::diet_lp();
  try {
    (void)feasibility(diet, Vector{1, 2, 3});
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(e.expected() == 2);
    CHECK(e.actual() == 3);
    const std::string msg = e.what();
    CHECK(msg.find('2') != std::string::npos);
    CHECK(msg.find('3') != std::string::npos);
  }
}

TEST_CASE("feasibility respects variable bounds") {
  LinearProgram lp(Matrix{{1, 1}}, {10}, {1, 1}, Sense::maximize, {0, 0}, {1, kInfinity});
  CHECK(feasibility(lp, Vector{1, 3}) == 1);
  CHECK(feasibility(lp, Vector{1.5, 3}) == 0);
  CHECK(feasibility(lp, Vector{-0.1, 3}) == 0);
}

TEST_CASE("feasibility tolerance is 1e-9 absolute") {
  const LinearProgram lp(Matrix{{1}}, {1}, {1});
  CHECK(feasibility(lp, Vector{1.0 + 5e-10}) == 1);
  CHECK(feasibility(lp, Vector{1.0 + 5e-9}) == 0);
}

TEST_CASE("construction validates shapes and bounds") {
  CHECK_THROWS_AS(LinearProgram(Matrix{{1, 2}}, {1, 2}, {1, 1}), DimensionError);
  CHECK_THROWS_AS(LinearProgram(Matrix{{1, 2}}, {1}, {1}), DimensionError);
  CHECK_THROWS_AS(LinearProgram(Matrix{{1}}, {1}, {1}, Sense::maximize, {2}, {1}), InvalidArgument);
  CHECK_THROWS_AS(LinearProgram(Matrix{{kInfinity}}, {1}, {1}), InvalidArgument);
  CHECK_NOTHROW(LinearProgram(Matrix{{1}}, {1}, {1}, Sense::maximize, {0}, {kInfinity}));
}

TEST_CASE("builder folds >= and = rows into <=") {
  LpBuilder b(2, Sense::minimize);
  b.objective({1, 2}).add_le({1, 1}, 4).add_ge({1, 0}, 1).add_eq({0, 1}, 2);
  const auto lp = b.build();
  REQUIRE(lp.num_rows() == 4);
  CHECK(lp.a()(1, 0) == -1.0);
  CHECK(lp.b()[1] == -1.0);
  CHECK(lp.b()[2] == 2.0);
  CHECK(lp.b()[3] == -2.0);
  const auto r = solve(lp);
  REQUIRE(r.optimal());
  CHECK((*r.s)[0] == doctest::Approx(1.0));
  CHECK((*r.s)[1] == doctest::Approx(2.0));
  CHECK(*r.objective == doctest::Approx(5.0));
}

TEST_CASE("solve: box maximum") {
  const auto r = solve(box2());
  REQUIRE(r.optimal());
  CHECK((*r.s)[0] == doctest::Approx(1.0));
  CHECK((*r.s)[1] == doctest::Approx(1.0));
  CHECK(*r.objective == doctest::Approx(2.0));
}

TEST_CASE("solve: five-vertex polytope") {
  const auto lp = five_vertex();
  const auto r = solve(lp);
  REQUIRE(r.optimal());
  CHECK((*r.s)[0] == doctest::Approx(3.0));
  CHECK((*r.s)[1] == doctest::Approx(1.0));
  CHECK(*r.objective == doctest::Approx(11.0));
  CHECK(*oracle::vertex_optimum(lp) == doctest::Approx(11.0));
}

TEST_CASE("solve: contradictory bounds are infeasible") {
  CHECK(solve(contradictory()).status == SolveStatus::infeasible);
  CHECK(solve_revised(to_sparse(contradictory())).status == SolveStatus::infeasible);
}

TEST_CASE("solve: unbounded direction") {
  const LinearProgram lp(Matrix{{1, -1}}, {1}, {1, 1});
  CHECK(solve(lp).status == SolveStatus::unbounded);
  CHECK(solve_revised(to_sparse(lp)).status == SolveStatus::unbounded);
}

TEST_CASE("solve: diet program in both senses") {
  const auto diet = harness::diet_lp();
  CHECK(solve(diet).status == SolveStatus::unbounded);
  const LinearProgram cheapest(diet.a(), diet.b(), diet.c(), Sense::minimize);
  const auto r = solve(cheapest);
  REQUIRE(r.optimal());
  CHECK(feasibility(cheapest, *r.s) == 1);
  CHECK(*r.objective == doctest::Approx(*oracle::vertex_optimum(cheapest)).epsilon(1e-9));
}

TEST_CASE("solve: nonzero lower bounds and finite upper bounds") {
  const LinearProgram lp(Matrix{{1, 1}}, {10}, {1, 2}, Sense::maximize, {1, 2}, {kInfinity, 4});
  const auto r = solve(lp);
  REQUIRE(r.optimal());
  CHECK((*r.s)[0] == doctest::Approx(6.0));
  CHECK((*r.s)[1] == doctest::Approx(4.0));
  const auto rr = solve_revised(to_sparse(lp));
  REQUIRE(rr.optimal());
  CHECK(*rr.objective == doctest::Approx(14.0));
}

TEST_CASE("solve: degenerate program terminates under Bland's rule") {
  // Beale's classic cycling example for the largest-coefficient rule.
  const LinearProgram lp(Matrix{{0.25, -60, -0.04, 9}, {0.5, -90, -0.02, 3}, {0, 0, 1, 0}}, {0, 0, 1},
                         {0.75, -150, 0.02, -6});
  const auto r = solve(lp);
  REQUIRE(r.optimal());
  CHECK(*r.objective == doctest::Approx(0.05));
}

TEST_CASE("solve is deterministic") {
  const auto lp = random_lp(4, 6, bounded(), 3);
  const auto a = solve(lp);
  const auto b = solve(lp);
  REQUIRE(a.optimal());
  CHECK(*a.s == *b.s);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("property: optimum equals the vertex oracle on 100 bounded instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t k = 1 + seed % 4;
    const std::size_t m = 1 + seed % 6;
    const auto lp = random_lp(k, m, bounded(seed % 3 == 0 ? Sense::minimize : Sense::maximize), seed);
    const auto r = solve(lp);
    const auto best = oracle::vertex_optimum(lp);
    REQUIRE(best);
    REQUIRE(r.optimal());
    CHECK(*r.objective == doctest::Approx(*best).epsilon(1e-6));
    CHECK(feasibility(lp, *r.s) == 1);
    CHECK(max_violation(lp, *r.s) <= 1e-7);
    CHECK(*r.objective == doctest::Approx(lp.objective(*r.s)).epsilon(1e-9));
    const auto library = brute_force_optimum(lp);
    REQUIRE(library);
    CHECK(*library == doctest::Approx(*best).epsilon(1e-6));
  }
}

TEST_CASE("property: revised simplex agrees with the dense tableau") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto lp = random_lp(2 + seed % 5, 2 + seed % 7, bounded(), 1000 + seed);
    const auto dense = solve(lp);
    const auto sparse = solve_revised(to_sparse(lp));
    REQUIRE(dense.status == sparse.status);
    if (dense.optimal()) CHECK(*sparse.objective == doctest::Approx(*dense.objective).epsilon(1e-7));
  }
}

TEST_CASE("property: scaling a row leaves the optimum in place") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto lp = random_lp(3, 4, bounded(), 500 + seed);
    const auto base = solve(lp);
    REQUIRE(base.optimal());
    for (double gamma : {0.01, 3.0, 250.0}) {
      const auto scaled = solve(scale_row(lp, seed % 4, gamma));
      REQUIRE(scaled.optimal());
      CHECK(*scaled.objective == doctest::Approx(*base.objective).epsilon(1e-6));
      for (std::size_t j = 0; j < 3; ++j) CHECK(std::fabs((*scaled.s)[j] - (*base.s)[j]) <= 1e-6);
    }
  }
}

TEST_CASE("property: strong duality on random programs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto lp = random_lp(3, 5, bounded(seed % 2 ? Sense::minimize : Sense::maximize), 77 + seed);
    const auto primal = solve(lp);
    const auto d = solve(dual(lp));
    REQUIRE(primal.optimal());
    REQUIRE(d.optimal());
    CHECK(*d.objective == doctest::Approx(*primal.objective).epsilon(1e-7));
  }
}

TEST_CASE("enumerate_vertices examples") {
  const auto corners = enumerate_vertices(box2());
  const std::vector<Vector> expected_box{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(corners == expected_box);

  const auto five = enumerate_vertices(five_vertex());
  REQUIRE(five.size() == 5);
  const std::vector<Vector> expected_five{{0, 0}, {0, 3}, {1, 3}, {3, 0}, {3, 1}};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(five[i][j] == doctest::Approx(expected_five[i][j]));
  for (const auto& v : five) CHECK(feasibility(five_vertex(), v) == 1);

  CHECK(enumerate_vertices(contradictory()).empty());
}

TEST_CASE("enumerate_vertices guard") {
  const auto big = random_lp(7, 2, {}, 1);
  CHECK_THROWS_AS(enumerate_vertices(big), InvalidArgument);
  const auto many_rows = random_lp(3, 19, {}, 1);
  CHECK_THROWS_AS(enumerate_vertices(many_rows), InvalidArgument);
}

TEST_CASE("random_lp determinism, seed sensitivity and origin feasibility") {
  const auto a = random_lp(4, 6, {}, 7);
  const auto b = random_lp(4, 6, {}, 7);
  const auto c = random_lp(4, 6, {}, 8);
  CHECK(a == b);
  CHECK_FALSE(a.a() == c.a());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto lp = random_lp(4, 6, bounded(), seed);
    CHECK(feasibility(lp, Vector(4, 0.0)) == 1);
    for (double bi : lp.b()) CHECK(bi >= 1e-3);
  }
}

TEST_CASE("random_lp rejects empty ranges and zero sizes") {
  RandomLpRanges r;
  r.a = {1.0, 0.0};
  CHECK_THROWS_AS(random_lp(2, 2, r, 0), InvalidArgument);
  CHECK_THROWS_AS(random_lp(0, 2, {}, 0), InvalidArgument);
  CHECK_THROWS_AS(random_lp(2, 0, {}, 0), InvalidArgument);
}

TEST_CASE("LP text format round trip") {
  RandomLpRanges r = bounded(Sense::minimize);
  const auto lp = random_lp(3, 4, r, 11);
  std::stringstream ss;
  write_lp(ss, lp);
  const auto back = read_lp(ss);
  CHECK(back == lp);

  std::istringstream text("# comment\nlp maximize 2 1\n1 1\n\n1 2 4\nupper 1 inf\n");
  const auto parsed = read_lp(text);
  CHECK(parsed.num_vars() == 2);
  CHECK(parsed.upper()[0] == 1.0);
  CHECK(std::isinf(parsed.upper()[1]));
}

TEST_CASE("LP text format errors carry the line") {
  std::istringstream bad("lp maximize 2 1\n1 1\n1 x 4\n");
  try {
    (void)read_lp(bad, "bad.lp");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream sense("lp sideways 1 1\n1\n1 1\n");
  CHECK_THROWS_AS(read_lp(sense), ParseError);
}

TEST_CASE("format_double is round-trip exact") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345678.9, 0.0}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("sparse program folds equalities on densify") {
  SparseLpBuilder b(2, Sense::minimize);
  const auto r0 = b.add_row(RowKind::eq, 3);
  b.add_entry(r0, 0, 1);
  b.add_entry(r0, 1, 1);
  b.add_entry(r0, 1, 1);  // duplicates are summed
  b.set_cost(0, 1);
  b.set_cost(1, 3);
  const auto lp = b.build();
  CHECK(lp.num_rows() == 1);
  CHECK(lp.num_normalized_rows() == 2);
  CHECK(lp.a().nonzeros() == 2);
  const auto dense = lp.to_dense();
  CHECK(dense.a()(0, 1) == 2.0);
  CHECK(dense.a()(1, 1) == -2.0);
  const auto r = solve_revised(lp);
  REQUIRE(r.optimal());
  CHECK(*r.objective == doctest::Approx(3.0));
  CHECK(*solve(dense).objective == doctest::Approx(3.0));
}
