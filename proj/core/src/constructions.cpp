#include "stab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "stab/combinatorics.hpp"
#include "stab/errors.hpp"
#include "stab/stab_count.hpp"

namespace stab {

namespace {

Integer factorial(int k) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

Rational dyadic(double x, int bits) {
  double scaled = std::ldexp(x, bits);
  Integer num;
  mpz_set_d(num.get_mpz_t(), std::nearbyint(scaled));
  Rational q(num, Integer(1) << bits);
  q.canonicalize();
  return q;
}

std::vector<double> gaussian_direction(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    std::vector<double> v(static_cast<size_t>(d));
    double norm = 0;
    for (auto& x : v) {
      x = g(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-9) continue;
    for (auto& x : v) x /= norm;
    if (v.back() > 1 - 1e-9) continue;
    return v;
  }
}

// Stereographic parameter of a unit vector, rounded to a dyadic grid.
std::vector<Rational> stereo_param(const std::vector<double>& x, int bits) {
  std::vector<Rational> u;
  double den = 1 - x.back();
  for (size_t i = 0; i + 1 < x.size(); ++i) u.push_back(dyadic(x[i] / den, bits));
  return u;
}

bool distinct_points(const std::vector<ExactPoint>& pts) {
  std::set<ExactPoint> seen(pts.begin(), pts.end());
  return seen.size() == pts.size();
}

}  // namespace

SeparationChain separation_chain(int count, int d, ChainSchedule schedule, const Integer& base,
                                 std::uint64_t max_bits) {
  if (count < 1 || d < 1) throw InputError("separation_chain: count and d must be positive");
  SeparationChain c;
  c.d = d;
  c.schedule = schedule;
  if (schedule == ChainSchedule::quadratic) {
    std::uint64_t last = static_cast<std::uint64_t>(count) * static_cast<std::uint64_t>(count);
    if (last > max_bits) throw ResourceError("separation_chain: values exceed the bit budget");
    for (int t = 1; t <= count; ++t) c.values.push_back(Integer(1) << (t * t));
    return c;
  }
  if (base <= 1) throw InputError("separation_chain: base must exceed 1");
  // bit length roughly multiplies by d+1 per step; check before computing
  double bits = static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 2));
  double fbits = std::log2(factorial(d + 1).get_d());
  for (int t = 1; t < count; ++t) {
    bits = (d + 1) * bits + fbits + 1;
    if (bits > static_cast<double>(max_bits))
      throw ResourceError("separation_chain: value " + std::to_string(t + 1) + " would need about " +
                          std::to_string(static_cast<long long>(bits)) + " bits");
  }
  Integer f = factorial(d + 1);
  c.values.push_back(base);
  for (int t = 1; t < count; ++t) {
    Integer x;
    mpz_pow_ui(x.get_mpz_t(), c.values.back().get_mpz_t(), static_cast<unsigned long>(d + 1));
    c.values.push_back(f * x + 1);
  }
  return c;
}

bool slopes_increasing(const PointSet& s) {
  if (s.dim() < 2) return false;
  const size_t n = s.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        Rational lhs = (s[k][1] - s[j][1]) * (s[j][0] - s[i][0]);
        Rational rhs = (s[j][1] - s[i][1]) * (s[k][0] - s[j][0]);
        if (!(lhs > rhs)) return false;
      }
  return true;
}

PointSet build_separated_set(int n, int d, ChainSchedule schedule) {
  if (d < 2) throw InputError("build_separated_set: d must be at least 2");
  if (n < d + 1) throw InputError("build_separated_set: need n >= d+1");
  SeparationChain chain = separation_chain(n * d, d, schedule);
  std::vector<ExactPoint> pts;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> c;
    for (int j = 0; j < d; ++j) c.emplace_back(chain.values[static_cast<size_t>(j * n + i)]);
    pts.emplace_back(std::move(c));
  }
  std::string label = "separated n=" + std::to_string(n) + " d=" + std::to_string(d) +
                      (schedule == ChainSchedule::factorial ? " chain=factorial" : " chain=quadratic");
  PointSet s(d, std::move(pts), label);
  if (!slopes_increasing(s)) throw ConstructionError("separated set failed the convexity check");
  if (!general_position_check(s)) throw ConstructionError("separated set failed the general-position check");
  return s;
}

std::uint64_t TypeProfile::product() const {
  std::uint64_t p = 1;
  for (auto c : class_size) p *= c;
  return p;
}

TypeProfile type_profile(const PointSet& s, const ExactPoint& r) {
  const int d = s.dim();
  const int n = static_cast<int>(s.size());
  require_same_dim(r, d, "type_profile");
  TypeProfile tp;
  tp.class_size.assign(static_cast<size_t>(d) + 1, 0);
  tp.in_range = true;
  for (int j = 0; j < d; ++j)
    if (r[j] < s[0][j] || r[j] > s[static_cast<size_t>(n - 1)][j]) tp.in_range = false;
  if (!tp.in_range) return tp;
  std::vector<bool> drop(static_cast<size_t>(n), false);
  for (int j = 0; j < d; ++j) {
    int last_le = -1, first_ge = -1;
    for (int i = 0; i < n; ++i) {
      if (s[static_cast<size_t>(i)][j] <= r[j]) last_le = i;
      if (first_ge < 0 && s[static_cast<size_t>(i)][j] >= r[j]) first_ge = i;
    }
    if (last_le >= 0) drop[static_cast<size_t>(last_le)] = true;
    if (first_ge >= 0) drop[static_cast<size_t>(first_ge)] = true;
  }
  std::vector<ExactPoint> kept_pts;
  std::vector<int> type;
  for (int i = 0; i < n; ++i)
    if (!drop[static_cast<size_t>(i)]) {
      tp.kept.push_back(i);
      kept_pts.push_back(s[static_cast<size_t>(i)]);
      int t = point_type(s[static_cast<size_t>(i)], r);
      type.push_back(t);
      ++tp.class_size[static_cast<size_t>(t)];
    }
  const int m = static_cast<int>(kept_pts.size());
  if (m < d + 1) return tp;
  std::vector<ExactPoint> simplex(static_cast<size_t>(d) + 1);
  for_each_subset(m, d + 1, [&](const std::vector<int>& idx) {
    for (int k = 0; k <= d; ++k) simplex[static_cast<size_t>(k)] = kept_pts[static_cast<size_t>(idx[k])];
    if (orientation(std::span<const ExactPoint>(simplex)) == Sign::zero) return true;
    if (classify_in_simplex(simplex, r) != Inclusion::interior) return true;
    ++tp.strict_kept;
    for (int k = 0; k <= d; ++k)
      if (type[static_cast<size_t>(idx[k])] != k) {
        ++tp.violations;
        break;
      }
    return true;
  });
  return tp;
}

ExactPoint inverse_stereographic(const std::vector<Rational>& u) {
  Rational n2 = 0;
  for (const auto& x : u) n2 += x * x;
  Rational den = n2 + 1;
  std::vector<Rational> c;
  for (const auto& x : u) c.push_back(2 * x / den);
  c.push_back((n2 - 1) / den);
  return ExactPoint(std::move(c));
}

namespace {

// Every antisymmetric d-subset of A u -A u {p} is linearly independent.
bool sphere_general_position(const std::vector<ExactPoint>& a, const ExactPoint& p, int d) {
  std::vector<ExactPoint> pool;
  std::vector<int> tag;  // +/- (i+1) for A, 0 for p
  for (size_t i = 0; i < a.size(); ++i) {
    pool.push_back(a[i]);
    tag.push_back(static_cast<int>(i) + 1);
    pool.push_back(-a[i]);
    tag.push_back(-static_cast<int>(i) - 1);
  }
  pool.push_back(p);
  tag.push_back(0);
  bool ok = true;
  std::vector<HomogeneousPoint> hs;
  for (const auto& x : pool) hs.push_back(homogenize(x));
  for_each_subset(static_cast<int>(pool.size()), d, [&](const std::vector<int>& idx) {
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = i + 1; j < idx.size(); ++j)
        if (tag[idx[i]] != 0 && tag[idx[i]] == -tag[idx[j]]) return true;
    std::vector<Integer> m;
    for (int k : idx)
      for (int c = 1; c <= d; ++c) m.push_back(hs[static_cast<size_t>(k)].h[c]);
    if (determinant_sign(std::move(m), d) == Sign::zero) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

std::uint64_t u64(const Integer& z) { return z.get_ui(); }

}  // namespace

SphereSet build_sphere_antipodal(const SphereConfig& cfg) {
  const int n = cfg.n, d = cfg.d;
  if (d < 2) throw InputError("sphere set: d must be at least 2");
  if (cfg.alpha <= 0 || cfg.alpha > Rational(1, 2)) throw InputError("sphere set: alpha must lie in (0, 1/2]");
  if (cfg.cluster_radius <= 0) throw InputError("sphere set: cluster radius must be positive");
  Rational an = cfg.alpha * n;
  Integer ceil_an;
  mpz_cdiv_q(ceil_an.get_mpz_t(), an.get_num_mpz_t(), an.get_den_mpz_t());
  const int a = static_cast<int>(ceil_an.get_si());
  if (2 * a > n) throw InputError("sphere set: 2*ceil(alpha*n) exceeds n");
  if (a < d) throw InputError("sphere set: need ceil(alpha*n) >= d");
  const int m = n - 2 * a;

  SphereSet out;
  out.a = a;
  out.census_strict = u64(2 * binomial(a, d + 1) + Integer(m) * binomial(a, d));
  Integer anti = 0;
  for (int k = 0; k <= d - 1; ++k)
    anti += binomial(m, k) * binomial(a - 1, d - 1 - k) * (Integer(1) << (d - 1 - k));
  out.census_antipodal = u64(Integer(a) * anti);

  for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
    std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull;
    std::mt19937_64 rng(seed);
    std::vector<ExactPoint> A;
    for (int i = 0; i < a; ++i) A.push_back(inverse_stereographic(stereo_param(gaussian_direction(d, rng), 20)));
    auto pu = stereo_param(gaussian_direction(d, rng), 20);
    ExactPoint p = inverse_stereographic(pu);
    if (!distinct_points(A) || !sphere_general_position(A, p, d)) continue;

    std::vector<std::vector<Rational>> offsets;
    std::uniform_int_distribution<long> off(-(1l << 16), 1l << 16);
    for (int k = 1; k < m; ++k) {
      std::vector<Rational> o;
      for (int c = 0; c < d - 1; ++c) o.emplace_back(off(rng), 1l << 16);
      offsets.push_back(std::move(o));
    }
    Rational radius = cfg.cluster_radius;
    for (int shrink = 0; shrink < 48; ++shrink, radius /= 2) {
      std::vector<ExactPoint> pts = A;
      for (const auto& x : A) pts.push_back(-x);
      if (m > 0) pts.push_back(p);
      for (const auto& o : offsets) {
        std::vector<Rational> u = pu;
        for (int c = 0; c < d - 1; ++c) u[static_cast<size_t>(c)] += radius * o[static_cast<size_t>(c)];
        pts.push_back(inverse_stereographic(u));
      }
      if (!distinct_points(pts)) continue;
      StabCount c = count_containing(pts, origin(d));
      if (c.strict == out.census_strict && c.strict + c.degenerate == out.census_strict + out.census_antipodal) {
        out.set = PointSet(d, std::move(pts),
                           "sphere-antipodal n=" + std::to_string(n) + " d=" + std::to_string(d) +
                               " alpha=" + to_fraction_string(cfg.alpha) + " seed=" + std::to_string(cfg.seed) +
                               " attempt=" + std::to_string(attempt) + " radius=" + to_fraction_string(radius));
        out.cluster_radius = radius;
        out.seed_used = seed;
        return out;
      }
    }
  }
  throw ConstructionError("sphere set: could not certify the construction within the retry budget");
}

PointSet build_sphere_antipodal_set(const SphereConfig& cfg) { return build_sphere_antipodal(cfg).set; }

BorosFurediSet build_boros_furedi_clusters(int n, const Rational& cluster_scale) {
  if (n < 3) throw InputError("boros-furedi: need n >= 3");
  if (cluster_scale <= 0 || cluster_scale >= Rational(1, 4))
    throw InputError("boros-furedi: cluster_scale must lie in (0, 1/4)");
  BorosFurediSet out;
  out.size_a = n / 3 + (n % 3 > 0);
  out.size_b = n / 3 + (n % 3 > 1);
  out.size_c = n / 3;

  // Stereographic parameter t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)) is monotone
  // in the angle 2*atan(t) on (-pi, pi). Centres near 90, 210 and 330 deg.
  const Rational ta(1), tb(-15, 4), tc(-67, 250);
  auto on_circle = [](const Rational& t) {
    Rational den = 1 + t * t;
    return ExactPoint{Rational((1 - t * t) / den), Rational(2 * t / den)};
  };
  // d(angle)/dt = 2/(1+t^2); the parameter spread keeps each cluster's arc
  // below cluster_scale.
  auto spread = [&](const Rational& t) -> Rational { return cluster_scale * (1 + t * t) / 4; };

  std::vector<ExactPoint> pts;
  // A: uniform
  {
    Rational w = spread(ta);
    int k = out.size_a;
    for (int i = 0; i < k; ++i) {
      Rational t = ta + (k > 1 ? w * fraction(i, k - 1) - w / 2 : Rational(0));
      out.param.push_back(t);
      pts.push_back(on_circle(t));
    }
  }
  // B and C: gaps multiply by 1/cluster_scale moving away from A.
  auto geometric = [&](const Rational& t0, int k, int toward_a_sign) {
    Rational ratio = 1 / cluster_scale;
    Rational total = 0, g = 1;
    for (int i = 0; i + 1 < k; ++i, g *= ratio) total += g;
    Rational unit = total == 0 ? Rational(0) : spread(t0) / total;
    Rational t = t0 + toward_a_sign * spread(t0) / 2;
    g = unit;
    for (int i = 0; i < k; ++i) {
      out.param.push_back(t);
      pts.push_back(on_circle(t));
      t -= toward_a_sign * g;
      g *= ratio;
    }
  };
  // Toward A is decreasing t from B (through the point at t = -inf) and
  // increasing t from C.
  geometric(tb, out.size_b, -1);
  geometric(tc, out.size_c, +1);
  out.set = PointSet(2, std::move(pts),
                     "boros-furedi n=" + std::to_string(n) + " cluster_scale=" + to_fraction_string(cluster_scale));
  return out;
}

PointSet build_boros_furedi(int n, const Rational& cluster_scale) {
  return build_boros_furedi_clusters(n, cluster_scale).set;
}

PointSet build_random_sphere(int n, int d, std::uint64_t seed) {
  if (d < 2) throw InputError("random sphere: d must be at least 2");
  if (n < d + 1) throw InputError("random sphere: need n >= d+1");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<ExactPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(inverse_stereographic(stereo_param(gaussian_direction(d, rng), 20)));
    if (!distinct_points(pts)) continue;
    PointSet s(d, std::move(pts),
               "random-sphere n=" + std::to_string(n) + " d=" + std::to_string(d) + " seed=" + std::to_string(seed));
    if (general_position_check(s)) return s;
  }
  throw ConstructionError("random sphere: no general-position sample within the retry budget");
}

PointSet build_random_ball(int n, int d, std::uint64_t seed) {
  if (d < 1 || n < 1) throw InputError("random ball: n and d must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (;;) {
    std::vector<ExactPoint> pts;
    for (int i = 0; i < n; ++i) {
      auto dir = gaussian_direction(d, rng);
      double r = std::pow(unif(rng), 1.0 / d);
      std::vector<Rational> c;
      for (double x : dir) c.push_back(dyadic(r * x, 30));
      pts.emplace_back(std::move(c));
    }
    if (!distinct_points(pts)) continue;
    return PointSet(d, std::move(pts),
                    "random-ball n=" + std::to_string(n) + " d=" + std::to_string(d) + " seed=" + std::to_string(seed));
  }
}

}  // namespace stab
