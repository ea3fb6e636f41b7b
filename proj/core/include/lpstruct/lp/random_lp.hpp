#pragma once

#include <cstdint>

#include "lpstruct/lp/linear_program.hpp"

namespace lpstruct::lp {

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  // Throws InvalidArgument if lo > hi or either end is not finite.
  void validate(const char* what) const;
  bool operator==(const Range&) const = default;
};

struct RandomLpRanges {
  Range a{0.0, 1.0};
  Range b{1.0, 5.0};
  Range c{0.0, 1.0};
  // b is shifted upward so that min_i b_i >= epsilon; the origin is then feasible.
  double epsilon = 1e-3;
  // Optional upper bound on every variable (+inf leaves them unbounded).
  double var_upper = kInfinity;
  Sense sense = Sense::maximize;
};

// Entries of A, b, c are drawn independently uniform from the ranges. Same
// (k, m, ranges, seed) gives a bitwise-identical instance.
LinearProgram random_lp(std::size_t k, std::size_t m, const RandomLpRanges& ranges, std::uint64_t seed);

}  // namespace lpstruct::lp
