#pragma once

#include <algorithm>
#include <vector>

#include "stab/exact_geom.hpp"

namespace stab::planar {

struct V2 {
  Integer x, y;
};

inline int half(const V2& u) { return (sgn(u.y) > 0 || (sgn(u.y) == 0 && sgn(u.x) > 0)) ? 0 : 1; }

inline int cross_sign(const V2& a, const V2& b) {
  return sgn(Integer(a.x * b.y - a.y * b.x));
}

inline int dot_sign(const V2& a, const V2& b) { return sgn(Integer(a.x * b.x + a.y * b.y)); }

// Strict angular order starting at the positive x axis, counterclockwise.
inline bool angle_less(const V2& a, const V2& b) {
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross_sign(a, b) > 0;
}

inline bool same_ray(const V2& a, const V2& b) { return cross_sign(a, b) == 0 && dot_sign(a, b) > 0; }

// Direction of q - p with both given homogeneously, scaled by a positive factor.
inline V2 direction(const HomogeneousPoint& p, const HomogeneousPoint& q) {
  return {Integer(p.h[0] * q.h[1] - q.h[0] * p.h[1]), Integer(p.h[0] * q.h[2] - q.h[0] * p.h[2])};
}

struct RayCounts {
  std::uint64_t strict = 0;
  std::uint64_t degenerate = 0;
};

// dirs: nonzero vectors from the query point to the input points.
RayCounts count_from_directions(std::vector<V2> dirs);

}  // namespace stab::planar
