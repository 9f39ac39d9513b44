#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "stab/rational.hpp"

namespace stab {

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of(int s) { return s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero); }
inline Sign sign_of(const Integer& z) { return sign_of(sgn(z)); }
inline Sign sign_of(const Rational& q) { return sign_of(sgn(q)); }
inline Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
inline int to_int(Sign s) { return static_cast<int>(s); }

// A point of R^d with exact rational coordinates.
class ExactPoint {
 public:
  ExactPoint() = default;
  explicit ExactPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  ExactPoint(std::initializer_list<Rational> coords) : coords_(coords) {}

  int dim() const { return static_cast<int>(coords_.size()); }
  const Rational& operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
  Rational& operator[](int i) { return coords_[static_cast<size_t>(i)]; }
  const std::vector<Rational>& coords() const { return coords_; }

  friend bool operator==(const ExactPoint& a, const ExactPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const ExactPoint& a, const ExactPoint& b) { return a.coords_ < b.coords_; }

 private:
  std::vector<Rational> coords_;
};

ExactPoint operator+(const ExactPoint& a, const ExactPoint& b);
ExactPoint operator-(const ExactPoint& a, const ExactPoint& b);
ExactPoint operator-(const ExactPoint& a);
ExactPoint operator*(const Rational& s, const ExactPoint& a);
Rational dot(const ExactPoint& a, const ExactPoint& b);
Rational dot(std::span<const Rational> a, const ExactPoint& b);
ExactPoint centroid(std::span<const ExactPoint> pts);
ExactPoint origin(int dim);

// Ordered, pairwise-distinct points sharing one dimension d >= 1.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::vector<ExactPoint> points, std::string label = {});

  int dim() const { return dim_; }
  size_t size() const { return points_.size(); }
  const std::vector<ExactPoint>& points() const { return points_; }
  const ExactPoint& operator[](size_t i) const { return points_[i]; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  int dim_ = 0;
  std::vector<ExactPoint> points_;
  std::string label_;
};

// Sign of det of the (d+1)x(d+1) matrix with rows (1, p_i). Zero iff the
// points are affinely dependent.
Sign orientation(std::span<const ExactPoint> pts);
Sign orientation(const ExactPoint& a, const ExactPoint& b, const ExactPoint& c);

// Exact determinant sign of a square integer matrix (row-major), by
// fraction-free elimination.
Sign determinant_sign(std::vector<Integer> m, int n);
Integer determinant(std::vector<Integer> m, int n);

enum class Containment { closed, open };

// Where p sits relative to a non-degenerate simplex.
enum class Inclusion { outside, boundary, interior };

Inclusion classify_in_simplex(std::span<const ExactPoint> simplex, const ExactPoint& p);

// Throws DegenerateInputError when the simplex is flat.
bool simplex_contains(std::span<const ExactPoint> simplex, const ExactPoint& p,
                      Containment mode = Containment::closed);

// max{k : a_j > r_j for j = 1..k}; 0 when a_1 <= r_1.
int point_type(const ExactPoint& a, const ExactPoint& r);

// Every (d+1)-subset has nonzero orientation.
bool general_position_check(const PointSet& s);

// Points scaled to a common integer lattice: row i is (D_i, D_i * p_i) with
// D_i > 0 the lcm of p_i's denominators. Orientation signs are unchanged.
struct HomogeneousPoint {
  std::vector<Integer> h;  // h[0] = weight > 0
};
HomogeneousPoint homogenize(const ExactPoint& p);
Sign orientation(std::span<const HomogeneousPoint* const> rows);

// 2D integer cross product sign helpers used by the planar fast paths.
inline Integer cross(const Integer& ax, const Integer& ay, const Integer& bx, const Integer& by) {
  return ax * by - ay * bx;
}

void require_same_dim(const ExactPoint& a, int dim, const char* what);

}  // namespace stab
