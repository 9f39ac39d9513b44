#include "stab/exact_geom.hpp"

#include <algorithm>
#include <set>

#include "stab/combinatorics.hpp"
#include "stab/errors.hpp"

namespace stab {

void require_same_dim(const ExactPoint& a, int dim, const char* what) {
  if (a.dim() != dim)
    throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                     std::to_string(dim) + ")");
}

ExactPoint operator+(const ExactPoint& a, const ExactPoint& b) {
  require_same_dim(b, a.dim(), "add");
  std::vector<Rational> c(a.coords());
  for (int i = 0; i < a.dim(); ++i) c[i] += b[i];
  return ExactPoint(std::move(c));
}

ExactPoint operator-(const ExactPoint& a, const ExactPoint& b) {
  require_same_dim(b, a.dim(), "sub");
  std::vector<Rational> c(a.coords());
  for (int i = 0; i < a.dim(); ++i) c[i] -= b[i];
  return ExactPoint(std::move(c));
}

ExactPoint operator-(const ExactPoint& a) {
  std::vector<Rational> c(a.coords());
  for (auto& x : c) x = -x;
  return ExactPoint(std::move(c));
}

ExactPoint operator*(const Rational& s, const ExactPoint& a) {
  std::vector<Rational> c(a.coords());
  for (auto& x : c) x *= s;
  return ExactPoint(std::move(c));
}

Rational dot(const ExactPoint& a, const ExactPoint& b) {
  require_same_dim(b, a.dim(), "dot");
  Rational s = 0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, const ExactPoint& b) {
  if (static_cast<int>(a.size()) != b.dim()) throw InputError("dot: dimension mismatch");
  Rational s = 0;
  for (int i = 0; i < b.dim(); ++i) s += a[static_cast<size_t>(i)] * b[i];
  return s;
}

ExactPoint centroid(std::span<const ExactPoint> pts) {
  if (pts.empty()) throw InputError("centroid of empty set");
  ExactPoint c = pts[0];
  for (size_t i = 1; i < pts.size(); ++i) c = c + pts[i];
  return Rational(1, static_cast<long>(pts.size())) * c;
}

ExactPoint origin(int dim) { return ExactPoint(std::vector<Rational>(static_cast<size_t>(dim), Rational(0))); }

PointSet::PointSet(int dim, std::vector<ExactPoint> points, std::string label)
    : dim_(dim), points_(std::move(points)), label_(std::move(label)) {
  if (dim_ < 1) throw InputError("point set dimension must be positive");
  for (const auto& p : points_) require_same_dim(p, dim_, "point set");
  std::vector<const ExactPoint*> sorted;
  sorted.reserve(points_.size());
  for (const auto& p : points_) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a < *b; });
  for (size_t i = 1; i < sorted.size(); ++i)
    if (*sorted[i] == *sorted[i - 1]) throw InputError("point set contains duplicate points");
}

Integer determinant(std::vector<Integer> m, int n) {
  if (n == 0) return 1;
  // Bareiss: after step k every entry below/right of the pivot is a minor,
  // so divisions are exact.
  int s = 1;
  Integer prev = 1;
  auto at = [&](int r, int c) -> Integer& { return m[static_cast<size_t>(r * n + c)]; };
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int r = k + 1;
      while (r < n && at(r, k) == 0) ++r;
      if (r == n) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(r, c));
      s = -s;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Integer& e = at(i, j);
        e = at(k, k) * e - at(i, k) * at(k, j);
        mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = at(k, k);
  }
  return s > 0 ? at(n - 1, n - 1) : Integer(-at(n - 1, n - 1));
}

Sign determinant_sign(std::vector<Integer> m, int n) { return sign_of(determinant(std::move(m), n)); }

HomogeneousPoint homogenize(const ExactPoint& p) {
  HomogeneousPoint h;
  const auto& c = p.coords();
  Integer den = lcm_of_denominators(c.data(), c.data() + c.size());
  h.h.reserve(c.size() + 1);
  h.h.push_back(den);
  for (const auto& x : c) {
    Integer v = x.get_num() * (den / x.get_den());
    h.h.push_back(std::move(v));
  }
  return h;
}

Sign orientation(std::span<const HomogeneousPoint* const> rows) {
  int n = static_cast<int>(rows.size());
  for (auto* r : rows)
    if (static_cast<int>(r->h.size()) != n) throw InputError("orientation: need d+1 points in dimension d");
  if (n == 3) {
    const auto& a = rows[0]->h;
    const auto& b = rows[1]->h;
    const auto& c = rows[2]->h;
    Integer det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                  a[2] * (b[0] * c[1] - b[1] * c[0]);
    return sign_of(det);
  }
  std::vector<Integer> m;
  m.reserve(static_cast<size_t>(n * n));
  for (auto* r : rows)
    for (const auto& x : r->h) m.push_back(x);
  return determinant_sign(std::move(m), n);
}

Sign orientation(std::span<const ExactPoint> pts) {
  if (pts.empty()) throw InputError("orientation: no points");
  int d = pts[0].dim();
  if (static_cast<int>(pts.size()) != d + 1) throw InputError("orientation: need d+1 points in dimension d");
  std::vector<HomogeneousPoint> hs;
  hs.reserve(pts.size());
  for (const auto& p : pts) {
    require_same_dim(p, d, "orientation");
    hs.push_back(homogenize(p));
  }
  std::vector<const HomogeneousPoint*> rows;
  for (const auto& h : hs) rows.push_back(&h);
  return orientation(std::span<const HomogeneousPoint* const>(rows));
}

Sign orientation(const ExactPoint& a, const ExactPoint& b, const ExactPoint& c) {
  if (a.dim() != 2 || b.dim() != 2 || c.dim() != 2) throw InputError("orientation: need 3 points in the plane");
  Rational det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  return sign_of(det);
}

Inclusion classify_in_simplex(std::span<const ExactPoint> simplex, const ExactPoint& p) {
  if (simplex.empty()) throw InputError("empty simplex");
  int d = simplex[0].dim();
  if (static_cast<int>(simplex.size()) != d + 1) throw InputError("simplex must have d+1 vertices");
  require_same_dim(p, d, "simplex_contains");
  std::vector<HomogeneousPoint> hs;
  for (const auto& q : simplex) {
    require_same_dim(q, d, "simplex_contains");
    hs.push_back(homogenize(q));
  }
  HomogeneousPoint hp = homogenize(p);
  std::vector<const HomogeneousPoint*> rows;
  for (const auto& h : hs) rows.push_back(&h);
  Sign base = orientation(std::span<const HomogeneousPoint* const>(rows));
  if (base == Sign::zero) throw DegenerateInputError("simplex is degenerate (zero volume)");
  bool on_boundary = false;
  for (int k = 0; k <= d; ++k) {
    rows[static_cast<size_t>(k)] = &hp;
    Sign sk = orientation(std::span<const HomogeneousPoint* const>(rows));
    rows[static_cast<size_t>(k)] = &hs[static_cast<size_t>(k)];
    if (sk == Sign::zero)
      on_boundary = true;
    else if (sk != base)
      return Inclusion::outside;
  }
  return on_boundary ? Inclusion::boundary : Inclusion::interior;
}

bool simplex_contains(std::span<const ExactPoint> simplex, const ExactPoint& p, Containment mode) {
  Inclusion inc = classify_in_simplex(simplex, p);
  if (mode == Containment::open) return inc == Inclusion::interior;
  return inc != Inclusion::outside;
}

int point_type(const ExactPoint& a, const ExactPoint& r) {
  require_same_dim(r, a.dim(), "point_type");
  int k = 0;
  while (k < a.dim() && a[k] > r[k]) ++k;
  return k;
}

bool general_position_check(const PointSet& s) {
  int d = s.dim();
  size_t n = s.size();
  if (n < static_cast<size_t>(d) + 1) return true;
  std::vector<HomogeneousPoint> hs;
  hs.reserve(n);
  for (const auto& p : s) hs.push_back(homogenize(p));
  std::vector<const HomogeneousPoint*> rows(static_cast<size_t>(d) + 1);
  bool ok = true;
  for_each_subset(static_cast<int>(n), d + 1, [&](const std::vector<int>& idx) {
    for (size_t k = 0; k < idx.size(); ++k) rows[k] = &hs[static_cast<size_t>(idx[k])];
    if (orientation(std::span<const HomogeneousPoint* const>(rows)) == Sign::zero) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

}  // namespace stab
