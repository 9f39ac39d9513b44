#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stab/exact_geom.hpp"
#include "stab/stab_count.hpp"

namespace stab {

// Orthonormal pair in R^d (to 1e-12). v is the normal of the halving
// hyperplane h, w points to the left half of h.
struct Frame {
  std::vector<double> v, w;

  Frame() = default;
  Frame(std::vector<double> v_, std::vector<double> w_);  // throws InputError unless orthonormal
  int dim() const { return static_cast<int>(v.size()); }
};

inline constexpr double kFrameTolerance = 1e-12;

// Gram-Schmidt on (v, w), then normalize.
Frame orthonormal_frame(std::vector<double> v, std::vector<double> w);
// d = 2: v = (cos a, sin a), w = (-sin a, cos a).
Frame frame_2d(double a);
// d = 3: v = (sin a cos b, sin a sin b, cos a), w = cos c e_a + sin c e_b.
Frame frame_3d(double a, double b, double c);

// Floating copy of a point set, or a sample of a continuous mass.
struct SampledMass {
  int d = 0;
  std::vector<double> x;  // row-major, size() rows
  size_t size() const { return d ? x.size() / static_cast<size_t>(d) : 0; }
  const double* row(size_t i) const { return x.data() + i * static_cast<size_t>(d); }
};

SampledMass sampled_mass(const PointSet& s);
// Uniform in a ball, sampled in antipodal pairs around the center.
SampledMass sample_ball(int d, const std::vector<double>& center, double radius, size_t count, std::uint64_t seed);
// `count` points evenly spaced on a circle in the first two coordinates.
SampledMass sample_circle(int d, const std::vector<double>& center, double radius, size_t count, double phase = 0.0);

// Median of projections, midpoint between the two middle values for even n.
Rational halving_offset(const PointSet& s, const std::vector<Rational>& v);
double halving_offset(const SampledMass& mass, const std::vector<double>& v);

// Smoothing of the discrete mass: points within band * (projection spread)
// of h are split between above and below by a smoothstep weight; angular
// distributions are piecewise linear through midpoint knots.
struct FanModel {
  double band = 1e-4;
};

struct Fan {
  Flat2Codim spine;  // v, w, s = <v,.> on h, t = <w,.> on the spine
  int m = 0;
  // 2m angles from the left half of h, counterclockwise in (X, Y) =
  // (<w,x> - t, <v,x> - s); f_0 = 0, f_m = pi.
  std::vector<double> angles;
  // exact ray directions in (X, Y), one per angle
  std::vector<std::array<Rational, 2>> rays;
  std::vector<std::uint64_t> part_counts;  // exact, per sector
  double residual = 0.0;                   // |G| at the solution
};

// Angles only; the spine is at offset t along w inside the halving h.
Fan fan_quantile_angles(const SampledMass& mass, const Frame& frame, double spine_offset, int m,
                        const FanModel& model = {});

// Spine offset where sum gamma_i changes sign (bisection to 1e-10 and below).
double balance_spine(const SampledMass& mass, const Frame& frame, int m, const FanModel& model = {},
                     double tolerance = 1e-12);
double sum_gamma(const SampledMass& mass, const Frame& frame, double spine_offset, int m,
                 const FanModel& model = {});

struct FanTestValue {
  int m = 0;
  double halving = 0.0;  // s
  double spine = 0.0;    // t
  std::vector<double> alpha, beta, gamma;  // indices 1..m-1 stored at 0..m-2
  std::vector<double> lambda;              // i = 1..(m-1)/2
  std::vector<double> mu;                  // i = 2..(m-1)/2
  std::vector<double> G;                   // lambda then mu, size m-2
  double sum_gamma = 0.0;
  double norm() const;
};

// m = 2d-1 unless given.
FanTestValue test_map(const SampledMass& mass, const Frame& frame, int m = 0, const FanModel& model = {},
                      double spine_tolerance = 1e-12);

struct FanSolveOptions {
  double tolerance = 1e-6;  // on |G|
  std::uint64_t seed = 0;
  int grid = 24;            // per frame parameter (d = 3)
  int seeds = 16;           // refined starts (d = 3)
  int max_evaluations = 10000;  // refinement budget
  int sweep = 96;           // d = 2 samples over [0, pi)
  FanModel model;
};

struct FanSolveResult {
  Fan fan;
  Frame frame;
  FanTestValue value;
  int evaluations = 0;
};

// (2d-1)-fan for d in {2,3}. Throws SolverError when the residual stays above
// tolerance. Part counts are recounted exactly.
FanSolveResult solve_equipartition_fan(const PointSet& s, int d, const FanSolveOptions& opt = {});

// Builds the aligned fan (f_{m+i} = f_i + pi) for a test value, with exact
// spine and rays, and fills part_counts.
Fan aligned_fan(const PointSet& s, const Frame& frame, const FanTestValue& value);

// Sector index of p; points on a ray go to the smaller adjacent index, points
// on the spine to sector 0.
int sector_of(const Fan& fan, const ExactPoint& p);
std::vector<std::uint64_t> certify_part_counts(const PointSet& s, const Fan& fan);

// (m+1) m (m-1) / 3
std::uint64_t sector_triangle_certificate(int m);

// One point per sector of m lines through x, in circular order.
struct SectorConfiguration {
  int m = 0;
  ExactPoint x;
  std::vector<ExactPoint> points;  // 2m, sector i holds points[i]
};

// Random lines and points with dyadic coordinates, with P u {x} in general
// position. `collinear` pairs (k, k+m) are then made collinear with x.
SectorConfiguration random_sector_configuration(int m, std::uint64_t seed, int collinear = 0);

struct SectorCheck {
  std::uint64_t certificate = 0;
  std::uint64_t strict = 0;   // triangles with x in the interior
  std::uint64_t closed = 0;   // strict plus x on the boundary
  std::uint64_t short_triangles = 0, medium_triangles = 0, long_triangles = 0;
};

SectorCheck check_sector_configuration(const SectorConfiguration& c);

}  // namespace stab
