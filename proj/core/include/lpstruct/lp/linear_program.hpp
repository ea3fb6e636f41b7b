#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>

#include "lpstruct/linalg.hpp"

namespace lpstruct::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { maximize, minimize };

std::string_view to_string(Sense sense) noexcept;
Sense sense_from_string(std::string_view text);

// max/min c.x  s.t.  A x <= b,  lower <= x <= upper.
//
// Rows of other kinds are normalized by LpBuilder before construction. Instances
// are immutable and safe to share across threads.
class LinearProgram {
 public:
  // lower defaults to 0 and upper to +inf when passed empty.
  LinearProgram(Matrix a, Vector b, Vector c, Sense sense = Sense::maximize, Vector lower = {},
                Vector upper = {});

  std::size_t num_vars() const noexcept { return c_.size(); }
  std::size_t num_rows() const noexcept { return b_.size(); }

  const Matrix& a() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }
  const Vector& c() const noexcept { return c_; }
  Sense sense() const noexcept { return sense_; }
  const Vector& lower() const noexcept { return lower_; }
  const Vector& upper() const noexcept { return upper_; }

  double objective(std::span<const double> x) const;

  bool operator==(const LinearProgram&) const = default;

 private:
  Matrix a_;
  Vector b_;
  Vector c_;
  Sense sense_;
  Vector lower_;
  Vector upper_;
};

// Row-wise construction with >= and = rows folded into the canonical <= form.
class LpBuilder {
 public:
  explicit LpBuilder(std::size_t num_vars, Sense sense = Sense::maximize);

  LpBuilder& objective(Vector c);
  LpBuilder& add_le(Vector row, double rhs);
  LpBuilder& add_ge(Vector row, double rhs);
  // Split into a <= pair.
  LpBuilder& add_eq(Vector row, double rhs);
  LpBuilder& bounds(std::size_t var, double lower, double upper);

  LinearProgram build() const;

 private:
  std::size_t n_;
  Sense sense_;
  Vector c_;
  std::vector<Vector> rows_;
  Vector rhs_;
  Vector lower_;
  Vector upper_;
};

// phi(x): 1 iff A x <= b (1e-9 absolute) and lower <= x <= upper. `invert`
// swaps the encoding so that 0 marks feasibility.
int feasibility(const LinearProgram& lp, std::span<const double> x, bool invert = false);

// Largest violation of A x <= b and of the bounds; 0 for a feasible point.
double max_violation(const LinearProgram& lp, std::span<const double> x);

// Same LP with row i of (A, b) multiplied by gamma > 0.
LinearProgram scale_row(const LinearProgram& lp, std::size_t row, double gamma);

// LP dual of a program whose lower bounds are all zero. Finite upper bounds
// become extra dual variables (after the row multipliers). Optimal objectives
// of the pair coincide under strong duality.
LinearProgram dual(const LinearProgram& lp);

}  // namespace lpstruct::lp
