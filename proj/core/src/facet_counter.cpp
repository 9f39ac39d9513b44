#include "facet_counter.hpp"

#include "stab/combinatorics.hpp"
#include "stab/errors.hpp"

namespace stab {

FacetCounter::FacetCounter(const std::vector<ExactPoint>& pts) {
  if (pts.empty()) throw InputError("FacetCounter: empty set");
  d_ = pts[0].dim();
  n_ = static_cast<int>(pts.size());
  std::vector<HomogeneousPoint> hs;
  for (const auto& p : pts) {
    require_same_dim(p, d_, "FacetCounter");
    hs.push_back(homogenize(p));
  }
  const int d = d_;
  for_each_subset(n_, d, [&](const std::vector<int>& t) {
    // cofactor expansion along the (1, p) row
    std::vector<Integer> coef(static_cast<size_t>(d) + 1);
    for (int col = 0; col <= d; ++col) {
      std::vector<Integer> minor;
      minor.reserve(static_cast<size_t>(d * d));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c <= d; ++c)
          if (c != col) minor.push_back(hs[static_cast<size_t>(t[r])].h[c]);
      Integer m = determinant(std::move(minor), d);
      coef[col] = (col % 2 == 0) ? m : Integer(-m);
    }
    facet_.push_back(std::move(coef));
    return true;
  });
  std::vector<const HomogeneousPoint*> rows(static_cast<size_t>(d) + 1);
  for_each_subset(n_, d + 1, [&](const std::vector<int>& idx) {
    for (int k = 0; k <= d; ++k) rows[k] = &hs[static_cast<size_t>(idx[k])];
    base_.push_back(static_cast<std::int8_t>(to_int(orientation(std::span<const HomogeneousPoint* const>(rows)))));
    return true;
  });
}

StabCount FacetCounter::count(const ExactPoint& p) const {
  require_same_dim(p, d_, "FacetCounter");
  HomogeneousPoint hp = homogenize(p);
  std::vector<std::int8_t> fs(facet_.size());
  Integer acc;
  for (size_t t = 0; t < facet_.size(); ++t) {
    const auto& c = facet_[t];
    acc = 0;
    for (int k = 0; k <= d_; ++k) mpz_addmul(acc.get_mpz_t(), c[k].get_mpz_t(), hp.h[k].get_mpz_t());
    fs[t] = static_cast<std::int8_t>(sgn(acc));
  }
  StabCount out;
  out.total = base_.size();
  std::vector<int> sub(static_cast<size_t>(d_));
  size_t rank = 0;
  for_each_subset(n_, d_ + 1, [&](const std::vector<int>& idx) {
    int base = base_[rank++];
    if (base == 0) return true;
    bool zero = false;
    for (int k = 0; k <= d_; ++k) {
      for (int r = 0, w = 0; r <= d_; ++r)
        if (r != k) sub[w++] = idx[r];
      int s = fs[colex_rank(sub)];
      if (k % 2) s = -s;
      if (s == 0) {
        zero = true;
      } else if (s != base) {
        return true;
      }
    }
    if (zero)
      ++out.degenerate;
    else
      ++out.strict;
    return true;
  });
  return out;
}

}  // namespace stab
