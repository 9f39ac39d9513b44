#pragma once

#include <cstdint>
#include <vector>

#include "stab/exact_geom.hpp"

namespace stab {

// Value schedule for the separated (rapidly increasing) construction.
// `factorial`: x_1 = base, x_{t+1} = (d+1)! x_t^{d+1} + 1. The digit count grows
// by a factor d+1 per step, so only small n*d are computable.
// `quadratic`: x_t = 2^{t^2}, t = 1..nd; same combinatorial behaviour in
// every size where both were compared, and usable up to n*d ~ 100.
enum class ChainSchedule { factorial, quadratic };

struct SeparationChain {
  int d = 0;
  ChainSchedule schedule = ChainSchedule::factorial;
  std::vector<Integer> values;  // strictly increasing, all > 1
};

// Refuses (ResourceError) when the last value would exceed max_bits.
SeparationChain separation_chain(int count, int d, ChainSchedule schedule = ChainSchedule::factorial,
                                 const Integer& base = 2, std::uint64_t max_bits = std::uint64_t(1) << 24);

// p_{ij} = values[j*n + i]: ordered by coordinate index, then point index.
PointSet build_separated_set(int n, int d, ChainSchedule schedule = ChainSchedule::factorial);

// (p_k2 - p_j2)(p_j1 - p_i1) > (p_j2 - p_i2)(p_k1 - p_j1) for all i<j<k.
bool slopes_increasing(const PointSet& s);

// Discard step and type classes of the separated construction w.r.t. r.
struct TypeProfile {
  bool in_range = false;                 // p_1j <= r_j <= p_nj for all j
  std::vector<int> kept;                 // indices surviving the discard step
  std::vector<std::uint64_t> class_size; // |S'_k|, k = 0..d
  std::uint64_t strict_kept = 0;         // simplices of S' strictly containing r
  std::uint64_t violations = 0;          // such simplices not of types 0..d in order
  std::uint64_t product() const;
};
TypeProfile type_profile(const PointSet& s, const ExactPoint& r);

struct SphereConfig {
  int n = 0;
  int d = 2;
  Rational alpha{1, 2};
  Rational cluster_radius{1, 1000};  // starting radius; halved until certified
  std::uint64_t seed = 0;
  int retry_budget = 20;
};

struct SphereSet {
  PointSet set;
  int a = 0;                 // |A|; A = points [0,a), -A = [a,2a), P = the rest
  Rational cluster_radius;   // radius that passed certification
  std::uint64_t seed_used = 0;
  std::uint64_t census_strict = 0;      // 2 C(a,d+1) + (n-2a) C(a,d)
  std::uint64_t census_antipodal = 0;   // subsets with exactly one antipodal pair
};

// Exact point of S^{d-1}: x = (2u, |u|^2 - 1) / (|u|^2 + 1).
ExactPoint inverse_stereographic(const std::vector<Rational>& u);

SphereSet build_sphere_antipodal(const SphereConfig& cfg);
PointSet build_sphere_antipodal_set(const SphereConfig& cfg);

struct BorosFurediSet {
  PointSet set;
  int size_a = 0, size_b = 0, size_c = 0;  // A = [0,na), B next, C last
  std::vector<Rational> param;             // stereographic parameter per point
  // Inside each cluster index 0 is the point nearest to A.
  int cluster_of(int i) const { return i < size_a ? 0 : (i < size_a + size_b ? 1 : 2); }
};

BorosFurediSet build_boros_furedi_clusters(int n, const Rational& cluster_scale = Rational(1, 1024));
PointSet build_boros_furedi(int n, const Rational& cluster_scale = Rational(1, 1024));

// Directions from Gaussian samples mapped to exact sphere points; general
// position is verified and the draw repeated if it fails.
PointSet build_random_sphere(int n, int d, std::uint64_t seed);

// Uniform points in the unit ball (rounded to dyadic rationals), for the
// equipartition experiments.
PointSet build_random_ball(int n, int d, std::uint64_t seed);

}  // namespace stab
