#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stab/rational.hpp"

namespace stab {

// a . x <= b
struct Halfspace {
  std::vector<Rational> a;
  Rational b;
};

// Seidel's randomized incremental LP over exact rationals, restricted to the
// box lo <= x <= hi. The objective is lexicographic: maximize objectives[0],
// then objectives[1], ...; the coordinate functionals are appended so the
// optimum is unique. Returns nullopt when infeasible.
std::optional<std::vector<Rational>> solve_lp(const std::vector<Halfspace>& constraints,
                                              const std::vector<Rational>& lo, const std::vector<Rational>& hi,
                                              std::vector<std::vector<Rational>> objectives = {},
                                              std::uint64_t seed = 0);

}  // namespace stab
