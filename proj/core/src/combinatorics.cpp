#include "stab/combinatorics.hpp"

#include <limits>

#include "stab/errors.hpp"

namespace stab {

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<int> colex_unrank(std::uint64_t rank, int k) {
  std::vector<int> c(static_cast<size_t>(k));
  for (int i = k; i >= 1; --i) {
    // largest x with C(x, i) <= rank
    std::uint64_t x = static_cast<std::uint64_t>(i - 1);
    while (binomial_u64(x + 1, static_cast<std::uint64_t>(i)) <= rank) ++x;
    c[static_cast<size_t>(i - 1)] = static_cast<int>(x);
    rank -= binomial_u64(x, static_cast<std::uint64_t>(i));
  }
  return c;
}

std::uint64_t colex_rank(const std::vector<int>& subset) {
  std::uint64_t r = 0;
  for (size_t i = 0; i < subset.size(); ++i)
    r += binomial_u64(static_cast<std::uint64_t>(subset[i]), i + 1);
  return r;
}

bool colex_next(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  if (k == 0) return false;
  int i = 0;
  while (i + 1 < k && c[static_cast<size_t>(i)] + 1 == c[static_cast<size_t>(i + 1)]) ++i;
  if (c[static_cast<size_t>(i)] + 1 >= (i + 1 < k ? c[static_cast<size_t>(i + 1)] : n)) return false;
  ++c[static_cast<size_t>(i)];
  for (int j = 0; j < i; ++j) c[static_cast<size_t>(j)] = j;
  return true;
}

std::vector<std::uint64_t> chunk_bounds(std::uint64_t total, int parts) {
  if (parts < 1) throw InputError("chunk_bounds: parts must be positive");
  std::vector<std::uint64_t> b(static_cast<size_t>(parts) + 1);
  for (int i = 0; i <= parts; ++i)
    b[static_cast<size_t>(i)] = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(total) * static_cast<unsigned>(i) / static_cast<unsigned>(parts));
  return b;
}

}  // namespace stab
