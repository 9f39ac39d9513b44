#pragma once

#include <cstdint>
#include <vector>

#include "stab/rational.hpp"

namespace stab {

Integer binomial(long n, long k);
// Saturates at UINT64_MAX.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

// k-subset of {0..n-1} with colexicographic rank `rank`, ascending.
std::vector<int> colex_unrank(std::uint64_t rank, int k);
std::uint64_t colex_rank(const std::vector<int>& subset);

// Advance to the colex successor inside {0..n-1}; false after the last.
bool colex_next(std::vector<int>& c, int n);

// Visits k-subsets of {0..n-1} with colex rank in [lo, hi). The callback
// returns false to stop early.
template <class F>
void for_each_subset_range(int n, int k, std::uint64_t lo, std::uint64_t hi, F&& f) {
  if (k < 0 || k > n || lo >= hi) return;
  std::vector<int> c = colex_unrank(lo, k);
  for (std::uint64_t r = lo; r < hi; ++r) {
    if (!f(static_cast<const std::vector<int>&>(c))) return;
    if (!colex_next(c, n)) return;
  }
}

template <class F>
void for_each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  for_each_subset_range(n, k, 0, binomial_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)),
                        static_cast<F&&>(f));
}

// Splits [0, total) into `parts` contiguous chunks; chunk i is [b[i], b[i+1]).
std::vector<std::uint64_t> chunk_bounds(std::uint64_t total, int parts);

}  // namespace stab
