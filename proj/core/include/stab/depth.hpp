#pragma once

#include <cstdint>
#include <vector>

#include "stab/exact_geom.hpp"
#include "stab/stab_count.hpp"

namespace stab {

struct DepthResult {
  std::uint64_t depth = 0;
  // primitive integer direction; {x : <w,x> >= <w,p>} holds exactly `depth` points
  std::vector<Rational> witness;
};

// Exact Tukey depth. The vector form accepts repeated points.
DepthResult depth(const PointSet& s, const ExactPoint& p);
DepthResult depth(const std::vector<ExactPoint>& pts, const ExactPoint& p);

// #{x : <dir,x> >= <dir,p>}
std::uint64_t halfspace_count(const std::vector<ExactPoint>& pts, const ExactPoint& p,
                              const std::vector<Rational>& dir);

// Minimum count over closed halfspaces containing the flat. The witness is a
// direction in R^d orthogonal to the flat.
DepthResult flat_depth(const PointSet& s, const Flat2Codim& flat);

enum class CenterMode { automatic, exact, heuristic };

struct CenterpointResult {
  ExactPoint point;
  DepthResult depth;
  std::uint64_t target = 0;  // ceil(n/(d+1))
  bool exact = false;        // produced by the LP path
  bool ok = false;           // depth.depth >= target
};

// automatic: exact for d <= 3, heuristic above.
CenterpointResult find_centerpoint(const PointSet& s, CenterMode mode = CenterMode::automatic,
                                   std::uint64_t seed = 0);

// Radon point of d+2 points in R^d.
ExactPoint radon_point(std::span<const ExactPoint> pts);

}  // namespace stab
