#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stab/exact_geom.hpp"

namespace stab {

// {x : <v,x> = s, <w,x> = t}; for d = 2 this is a single point.
struct Flat2Codim {
  std::vector<Rational> v, w;
  Rational s, t;

  int dim() const { return static_cast<int>(v.size()); }
};

// Throws InputError unless v, w have dimension d and are independent.
void validate_flat(const Flat2Codim& flat, int d);

// x -> (<v,x>, <w,x>); the flat maps to (s,t).
std::vector<ExactPoint> project_to_plane(const std::vector<ExactPoint>& pts, const Flat2Codim& flat);

struct StabCount {
  std::uint64_t strict = 0;      // open simplex contains p
  std::uint64_t degenerate = 0;  // non-flat simplex with p on its boundary
  std::uint64_t total = 0;       // number of (d+1)-subsets
};

// Exhaustive enumeration over all (d+1)-subsets.
StabCount count_containing(const PointSet& s, const ExactPoint& p);
StabCount count_containing(const std::vector<ExactPoint>& pts, const ExactPoint& p);
// Same, restricted to subsets with colex rank in [lo, hi); total is hi - lo.
StabCount count_containing_range(const std::vector<ExactPoint>& pts, const ExactPoint& p, std::uint64_t lo,
                                 std::uint64_t hi);

// O(n log n) angular counting in the plane. p must not be a point of S.
StabCount count_containing_planar_fast(const PointSet& s, const ExactPoint& p);
StabCount count_containing_planar_fast(const std::vector<ExactPoint>& pts, const ExactPoint& p);

// Triangles of S whose projection along the flat strictly contains it.
StabCount count_triangles_stabbed(const PointSet& s, const Flat2Codim& flat);

struct WendelResult {
  int count = 0;
  // sign patterns (+1 keeps x_i, -1 takes -x_i) of the subsets containing 0
  std::vector<std::vector<int>> witnesses;
};

// |X| = d+1; checks all 2^{d+1} antisymmetric choices from X u -X.
WendelResult wendel_antisymmetric_count(const PointSet& x);

enum class MaxStabMode { exact, heuristic };

struct MaxStabOptions {
  MaxStabMode mode = MaxStabMode::exact;
  int exact_cap = 60;  // largest n accepted in exact mode
  int restarts = 64;
  double min_relative_step = 1e-6;
  std::uint64_t seed = 0;
};

struct MaxStabResult {
  ExactPoint point;
  StabCount count;
  bool lower_bound = false;  // heuristic result
  std::uint64_t candidates = 0;
};

MaxStabResult max_stab_point(const PointSet& s, const MaxStabOptions& opt = {});

}  // namespace stab
