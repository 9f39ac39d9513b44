#pragma once

#include <cstdint>
#include <vector>

#include "stab/exact_geom.hpp"
#include "stab/stab_count.hpp"

namespace stab {

// Repeated containment counts against one fixed set. Each d-subset T gets the
// affine functional F_T(p) = det[(1,p); rows of T], so a query costs one
// dot product per facet instead of d+2 determinants per simplex.
class FacetCounter {
 public:
  explicit FacetCounter(const std::vector<ExactPoint>& pts);

  StabCount count(const ExactPoint& p) const;
  int dim() const { return d_; }

 private:
  int n_ = 0, d_ = 0;
  std::vector<std::vector<Integer>> facet_;  // by colex rank of the d-subset
  std::vector<std::int8_t> base_;            // by colex rank of the (d+1)-subset
};

}  // namespace stab
