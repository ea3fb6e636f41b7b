#include "lpstruct/lp/random_lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpstruct/error.hpp"
#include "lpstruct/rng.hpp"

namespace lpstruct::lp {

void Range::validate(const char* what) const {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument(std::string(what) + ": range ends must be finite");
  if (lo > hi)
    throw InvalidArgument(std::string(what) + ": empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

LinearProgram random_lp(std::size_t k, std::size_t m, const RandomLpRanges& ranges, std::uint64_t seed) {
  if (k < 1 || m < 1) throw InvalidArgument("random_lp: k and m must be at least 1");
  ranges.a.validate("random_lp A");
  ranges.b.validate("random_lp b");
  ranges.c.validate("random_lp c");
  if (!(ranges.epsilon > 0.0)) throw InvalidArgument("random_lp: epsilon must be positive");

  Rng rng(splitmix64(seed));
  Matrix a(m, k);
  for (double& v : a.flat()) v = rng.uniform(ranges.a.lo, ranges.a.hi);
  Vector b(m);
  for (double& v : b) v = rng.uniform(ranges.b.lo, ranges.b.hi);
  Vector c(k);
  for (double& v : c) v = rng.uniform(ranges.c.lo, ranges.c.hi);

  const double lowest = *std::min_element(b.begin(), b.end());
  if (lowest < ranges.epsilon)
    for (double& v : b) v += ranges.epsilon - lowest;

  Vector upper(k, ranges.var_upper);
  return LinearProgram(std::move(a), std::move(b), std::move(c), ranges.sense, Vector(k, 0.0), std::move(upper));
}

}  // namespace lpstruct::lp
