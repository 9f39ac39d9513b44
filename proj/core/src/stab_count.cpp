#include "stab/stab_count.hpp"

#include <array>
#include <map>
#include <random>
#include <stdexcept>

#include "facet_counter.hpp"
#include "planar.hpp"
#include "stab/combinatorics.hpp"
#include "stab/errors.hpp"

namespace stab {

namespace planar {

RayCounts count_from_directions(std::vector<V2> dirs) {
  RayCounts out;
  if (dirs.size() < 3) return out;
  std::sort(dirs.begin(), dirs.end(), angle_less);
  std::vector<const V2*> ray;
  std::vector<std::uint64_t> c;
  for (const auto& u : dirs) {
    if (!ray.empty() && same_ray(*ray.back(), u)) {
      ++c.back();
    } else {
      ray.push_back(&u);
      c.push_back(1);
    }
  }
  using u128 = unsigned __int128;
  const size_t r = ray.size();
  const u128 n = dirs.size();
  u128 s1 = 0, s2 = 0, s3 = 0;
  for (auto x : c) {
    s1 += x;
    s2 += u128(x) * x;
    s3 += u128(x) * x * x;
  }
  // e3 = (s1^3 - 3 s1 s2 + 2 s3) / 6, rearranged to stay unsigned
  u128 e3 = (s1 * s1 * s1 + 2 * s3 - 3 * s1 * s2) / 6;

  std::vector<u128> pc(2 * r + 1, 0), pc2(2 * r + 1, 0);
  for (size_t i = 0; i < 2 * r; ++i) {
    pc[i + 1] = pc[i] + c[i % r];
    pc2[i + 1] = pc2[i] + u128(c[i % r]) * c[i % r];
  }
  u128 nonstrict = 0, degenerate2 = 0;
  size_t j = 1;
  for (size_t a = 0; a < r; ++a) {
    if (j < a + 1) j = a + 1;
    while (j < a + r && cross_sign(*ray[a], *ray[j % r]) > 0) ++j;
    u128 p = pc[j] - pc[a + 1];
    u128 sq = pc2[j] - pc2[a + 1];
    u128 q = 0;
    if (j < a + r && cross_sign(*ray[a], *ray[j % r]) == 0 && dot_sign(*ray[a], *ray[j % r]) < 0) q = c[j % r];
    nonstrict += c[a] * ((p * p - sq) / 2 + q * p);
    if (q) degenerate2 += c[a] * q * (n - c[a] - q);
  }
  out.strict = static_cast<std::uint64_t>(e3 - nonstrict);
  out.degenerate = static_cast<std::uint64_t>(degenerate2 / 2);
  return out;
}

}  // namespace planar

void validate_flat(const Flat2Codim& flat, int d) {
  if (flat.dim() != d || static_cast<int>(flat.w.size()) != d)
    throw InputError("flat: v and w must have dimension " + std::to_string(d));
  bool dependent = true;
  for (int i = 0; i < d && dependent; ++i)
    for (int j = i + 1; j < d && dependent; ++j)
      if (flat.v[i] * flat.w[j] - flat.v[j] * flat.w[i] != 0) dependent = false;
  if (dependent) throw InputError("flat: v and w are linearly dependent");
}

std::vector<ExactPoint> project_to_plane(const std::vector<ExactPoint>& pts, const Flat2Codim& flat) {
  std::vector<ExactPoint> out;
  out.reserve(pts.size());
  for (const auto& x : pts) out.push_back(ExactPoint{dot(flat.v, x), dot(flat.w, x)});
  return out;
}

StabCount count_containing_range(const std::vector<ExactPoint>& pts, const ExactPoint& p, std::uint64_t lo,
                                 std::uint64_t hi) {
  StabCount out;
  if (pts.empty()) return out;
  const int d = p.dim();
  for (const auto& x : pts) require_same_dim(x, d, "count_containing");
  const int n = static_cast<int>(pts.size());
  std::uint64_t all = binomial_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d + 1));
  hi = std::min(hi, all);
  if (lo >= hi) return out;
  out.total = hi - lo;

  std::vector<HomogeneousPoint> hs;
  hs.reserve(pts.size());
  for (const auto& x : pts) hs.push_back(homogenize(x));
  HomogeneousPoint hp = homogenize(p);
  std::vector<const HomogeneousPoint*> rows(static_cast<size_t>(d) + 1);
  using Rows = std::span<const HomogeneousPoint* const>;

  for_each_subset_range(n, d + 1, lo, hi, [&](const std::vector<int>& idx) {
    for (int k = 0; k <= d; ++k) rows[k] = &hs[static_cast<size_t>(idx[k])];
    Sign base = orientation(Rows(rows));
    if (base == Sign::zero) return true;
    bool zero = false;
    for (int k = 0; k <= d; ++k) {
      rows[k] = &hp;
      Sign sk = orientation(Rows(rows));
      rows[k] = &hs[static_cast<size_t>(idx[k])];
      if (sk == Sign::zero) {
        zero = true;
      } else if (sk != base) {
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

StabCount count_containing(const std::vector<ExactPoint>& pts, const ExactPoint& p) {
  return count_containing_range(pts, p, 0, UINT64_MAX);
}

StabCount count_containing(const PointSet& s, const ExactPoint& p) {
  require_same_dim(p, s.dim(), "count_containing");
  StabCount c = count_containing(s.points(), p);
  c.total = binomial_u64(s.size(), static_cast<std::uint64_t>(s.dim()) + 1);
  return c;
}

StabCount count_containing_planar_fast(const std::vector<ExactPoint>& pts, const ExactPoint& p) {
  if (p.dim() != 2) throw InputError("planar fast count needs d = 2");
  HomogeneousPoint hp = homogenize(p);
  std::vector<planar::V2> dirs;
  dirs.reserve(pts.size());
  for (const auto& x : pts) {
    require_same_dim(x, 2, "count_containing_planar_fast");
    planar::V2 u = planar::direction(hp, homogenize(x));
    if (sgn(u.x) == 0 && sgn(u.y) == 0) throw InputError("query point coincides with a point of the set");
    dirs.push_back(std::move(u));
  }
  auto rc = planar::count_from_directions(std::move(dirs));
  StabCount c;
  c.strict = rc.strict;
  c.degenerate = rc.degenerate;
  c.total = binomial_u64(pts.size(), 3);
  return c;
}

StabCount count_containing_planar_fast(const PointSet& s, const ExactPoint& p) {
  if (s.dim() != 2) throw InputError("planar fast count needs d = 2");
  return count_containing_planar_fast(s.points(), p);
}

StabCount count_triangles_stabbed(const PointSet& s, const Flat2Codim& flat) {
  validate_flat(flat, s.dim());
  auto proj = project_to_plane(s.points(), flat);
  ExactPoint q{flat.s, flat.t};
  bool hits_point = std::any_of(proj.begin(), proj.end(), [&](const ExactPoint& x) { return x == q; });
  StabCount c = hits_point ? count_containing(proj, q) : count_containing_planar_fast(proj, q);
  c.total = binomial_u64(s.size(), 3);
  return c;
}

WendelResult wendel_antisymmetric_count(const PointSet& x) {
  const int d = x.dim();
  if (static_cast<int>(x.size()) != d + 1) throw InputError("wendel: need exactly d+1 points");
  std::vector<HomogeneousPoint> pos, neg;
  for (const auto& p : x) {
    pos.push_back(homogenize(p));
    neg.push_back(homogenize(-p));
  }
  HomogeneousPoint o = homogenize(origin(d));
  using Rows = std::span<const HomogeneousPoint* const>;
  WendelResult out;
  std::vector<const HomogeneousPoint*> rows(static_cast<size_t>(d) + 1);
  for (unsigned mask = 0; mask < (1u << (d + 1)); ++mask) {
    std::vector<int> pattern(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
      bool flip = (mask >> i) & 1u;
      pattern[i] = flip ? -1 : 1;
      rows[i] = flip ? &neg[i] : &pos[i];
    }
    Sign base = orientation(Rows(rows));
    if (base == Sign::zero) throw DegenerateInputError("wendel: X u -X is not in general position");
    bool inside = true;
    for (int k = 0; k <= d; ++k) {
      const HomogeneousPoint* keep = rows[k];
      rows[k] = &o;
      Sign sk = orientation(Rows(rows));
      rows[k] = keep;
      if (sk == Sign::zero) throw DegenerateInputError("wendel: origin lies on a spanned hyperplane");
      if (sk != base) inside = false;
    }
    if (inside) {
      ++out.count;
      out.witnesses.push_back(std::move(pattern));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// maximum stabbing

namespace {

using planar::V2;

struct VertexInfo {
  int input = -1;
  std::vector<std::pair<int, int>> segs;
};

using VertexKey = std::array<Integer, 3>;  // (X, Y, W), reduced, W > 0

VertexKey reduce_key(Integer x, Integer y, Integer w) {
  if (sgn(w) < 0) {
    x = -x;
    y = -y;
    w = -w;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.get_mpz_t());
  if (g > 1) {
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), g.get_mpz_t());
  }
  return {std::move(x), std::move(y), std::move(w)};
}

Integer abs1(const V2& u) { return abs(u.x) + abs(u.y); }

// Directions strictly inside each angular gap between consecutive rays.
std::vector<V2> wedge_bisectors(std::vector<V2> dirs) {
  std::sort(dirs.begin(), dirs.end(), planar::angle_less);
  std::vector<V2> uniq;
  for (auto& u : dirs)
    if (uniq.empty() || !planar::same_ray(uniq.back(), u)) uniq.push_back(std::move(u));
  if (uniq.size() > 1 && planar::same_ray(uniq.front(), uniq.back())) uniq.pop_back();
  std::vector<V2> out;
  const size_t m = uniq.size();
  for (size_t i = 0; i < m; ++i) {
    const V2& a = uniq[i];
    const V2& b = uniq[(i + 1) % m];
    int cs = m == 1 ? 0 : planar::cross_sign(a, b);
    if (cs == 0) {
      out.push_back(V2{Integer(-a.y), a.x});
      continue;
    }
    Integer na = abs1(a), nb = abs1(b);
    V2 s{Integer(a.x * nb + b.x * na), Integer(a.y * nb + b.y * na)};
    if (cs < 0) {
      s.x = -s.x;
      s.y = -s.y;
    }
    out.push_back(std::move(s));
  }
  return out;
}

class ExactMaxStab {
 public:
  explicit ExactMaxStab(const PointSet& s) : n_(static_cast<int>(s.size())) {
    std::vector<Rational> all;
    for (const auto& p : s)
      for (const auto& c : p.coords()) all.push_back(c);
    scale_ = lcm_of_denominators(all.data(), all.data() + all.size());
    for (const auto& p : s) {
      Rational x = p[0] * scale_, y = p[1] * scale_;
      pts_.push_back(V2{x.get_num(), y.get_num()});
    }
    orient_.assign(static_cast<size_t>(n_) * n_ * n_, 0);
    left_.assign(static_cast<size_t>(n_) * n_, 0);
    right_.assign(static_cast<size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (i == j) continue;
        V2 e = sub(pts_[j], pts_[i]);
        for (int k = 0; k < n_; ++k) {
          if (k == i || k == j) continue;
          int o = planar::cross_sign(e, sub(pts_[k], pts_[i]));
          orient_[idx3(i, j, k)] = static_cast<std::int8_t>(o);
          if (o > 0) ++left_[idx2(i, j)];
          if (o < 0) ++right_[idx2(i, j)];
        }
      }
  }

  MaxStabResult run() {
    collect_vertices();
    std::uint64_t best = 0;
    bool have = false;
    const VertexKey* best_key = nullptr;
    V2 best_u;
    std::uint64_t candidates = 0;
    for (const auto& [key, info] : vertices_) {
      std::vector<V2> dirs;
      std::vector<std::pair<int, int>> through;
      if (info.input >= 0) {
        int a = info.input;
        for (int k = 0; k < n_; ++k)
          if (k != a) dirs.push_back(sub(pts_[k], pts_[a]));
        for (int i = 0; i < n_; ++i)
          for (int j = i + 1; j < n_; ++j) {
            if (i == a || j == a || orient_[idx3(i, j, a)] != 0) continue;
            if (planar::dot_sign(sub(pts_[i], pts_[a]), sub(pts_[j], pts_[a])) < 0) {
              V2 e = sub(pts_[j], pts_[i]);
              dirs.push_back(e);
              dirs.push_back(neg(e));
            }
          }
      } else {
        for (auto [i, j] : info.segs) {
          V2 e = sub(pts_[j], pts_[i]);
          dirs.push_back(e);
          dirs.push_back(neg(e));
        }
      }
      auto wedges = wedge_bisectors(std::move(dirs));
      std::uint64_t base = 0;
      if (info.input < 0) base = strict_at(key);
      for (const auto& u : wedges) {
        ++candidates;
        std::uint64_t c = info.input >= 0 ? perturbed_count(info.input, u) : base + side_sum(info.segs, u);
        if (!have || c > best) {
          have = true;
          best = c;
          best_key = &key;
          best_u = u;
        }
      }
    }
    MaxStabResult res;
    res.candidates = candidates;
    res.count.strict = best;
    res.point = realize(*best_key, best_u);
    return res;
  }

 private:
  int n_;
  Integer scale_;
  std::vector<V2> pts_;
  std::vector<std::int8_t> orient_;
  std::vector<int> left_, right_;
  std::map<VertexKey, VertexInfo> vertices_;

  size_t idx3(int i, int j, int k) const { return (static_cast<size_t>(i) * n_ + j) * n_ + k; }
  size_t idx2(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  static V2 sub(const V2& a, const V2& b) { return {Integer(a.x - b.x), Integer(a.y - b.y)}; }
  static V2 neg(const V2& a) { return {Integer(-a.x), Integer(-a.y)}; }

  void collect_vertices() {
    for (int a = 0; a < n_; ++a) vertices_[reduce_key(pts_[a].x, pts_[a].y, 1)].input = a;
    std::vector<std::pair<int, int>> segs;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) segs.emplace_back(i, j);
    for (size_t s = 0; s < segs.size(); ++s) {
      auto [i, j] = segs[s];
      for (size_t t = s + 1; t < segs.size(); ++t) {
        auto [k, l] = segs[t];
        if (k == i || k == j || l == i || l == j) continue;
        if (orient_[idx3(i, j, k)] * orient_[idx3(i, j, l)] >= 0) continue;
        if (orient_[idx3(k, l, i)] * orient_[idx3(k, l, j)] >= 0) continue;
        V2 e1 = sub(pts_[j], pts_[i]), e2 = sub(pts_[l], pts_[k]);
        Integer w = e1.x * e2.y - e1.y * e2.x;
        Integer num = (pts_[k].x - pts_[i].x) * e2.y - (pts_[k].y - pts_[i].y) * e2.x;
        Integer x = pts_[i].x * w + num * e1.x;
        Integer y = pts_[i].y * w + num * e1.y;
        auto& info = vertices_[reduce_key(std::move(x), std::move(y), std::move(w))];
        add_seg(info, segs[s]);
        add_seg(info, segs[t]);
      }
    }
  }

  static void add_seg(VertexInfo& info, std::pair<int, int> s) {
    if (std::find(info.segs.begin(), info.segs.end(), s) == info.segs.end()) info.segs.push_back(s);
  }

  std::uint64_t strict_at(const VertexKey& v) const {
    std::vector<V2> dirs;
    dirs.reserve(static_cast<size_t>(n_));
    for (const auto& p : pts_) dirs.push_back(V2{Integer(v[2] * p.x - v[0]), Integer(v[2] * p.y - v[1])});
    return planar::count_from_directions(std::move(dirs)).strict;
  }

  std::uint64_t side_sum(const std::vector<std::pair<int, int>>& segs, const V2& u) const {
    std::uint64_t s = 0;
    for (auto [i, j] : segs) {
      int c = planar::cross_sign(sub(pts_[j], pts_[i]), u);
      s += static_cast<std::uint64_t>(c > 0 ? left_[idx2(i, j)] : right_[idx2(i, j)]);
    }
    return s;
  }

  // Count at s_a + eps*u, eps -> 0+, from first-order signs.
  std::uint64_t perturbed_count(int a, const V2& u) const {
    std::vector<std::int8_t> ps(static_cast<size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (i == j) continue;
        int o = (i == a || j == a) ? 0 : orient_[idx3(i, j, a)];
        if (o == 0) o = planar::cross_sign(sub(pts_[j], pts_[i]), u);
        ps[idx2(i, j)] = static_cast<std::int8_t>(o);
      }
    std::uint64_t c = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        int s1 = ps[idx2(i, j)];
        if (s1 == 0) continue;
        for (int k = j + 1; k < n_; ++k)
          if (ps[idx2(j, k)] == s1 && ps[idx2(k, i)] == s1) ++c;
      }
    return c;
  }

  ExactPoint realize(const VertexKey& v, const V2& u) const {
    // Step off the vertex by less than the distance to any pair line that
    // does not pass through it.
    Rational eps;
    bool have = false;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        V2 e = sub(pts_[j], pts_[i]);
        Integer lv = e.x * (v[1] - v[2] * pts_[i].y) - e.y * (v[0] - v[2] * pts_[i].x);
        Integer lu = e.x * u.y - e.y * u.x;
        if (sgn(lv) == 0 || sgn(lu) == 0) continue;
        Rational r(Integer(abs(lv)), Integer(abs(lu) * v[2]));
        r.canonicalize();
        if (!have || r < eps) {
          eps = r;
          have = true;
        }
      }
    if (!have) eps = 1;
    eps /= 2;
    Rational x = fraction(v[0], v[2]) + eps * u.x;
    Rational y = fraction(v[1], v[2]) + eps * u.y;
    x.canonicalize();
    y.canonicalize();
    return ExactPoint{Rational(x / scale_), Rational(y / scale_)};
  }
};

ExactPoint random_interior_seed(const std::vector<ExactPoint>& pts, int d, std::mt19937_64& rng) {
  std::vector<int> idx(pts.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::uniform_int_distribution<long> wdist(1, 1000);
  ExactPoint acc = origin(d);
  long total = 0;
  for (int k = 0; k <= d; ++k) {
    long w = wdist(rng);
    total += w;
    acc = acc + Rational(w) * pts[static_cast<size_t>(idx[static_cast<size_t>(k)])];
  }
  return fraction(1, total) * acc;
}

MaxStabResult heuristic_max_stab(const PointSet& s, const MaxStabOptions& opt) {
  const int d = s.dim();
  FacetCounter counter(s.points());
  std::mt19937_64 rng(opt.seed);
  std::vector<Rational> coord_scale(static_cast<size_t>(d), Rational(0));
  for (const auto& p : s)
    for (int k = 0; k < d; ++k)
      if (abs(p[k]) > coord_scale[k]) coord_scale[k] = abs(p[k]);
  for (auto& c : coord_scale)
    if (c == 0) c = 1;

  MaxStabResult best;
  best.lower_bound = true;
  bool have = false;
  int levels = 2;
  while (std::ldexp(1.0, -levels) >= opt.min_relative_step) ++levels;

  for (int r = 0; r < opt.restarts; ++r) {
    ExactPoint p = r == 0 ? centroid(std::span<const ExactPoint>(s.points())) : random_interior_seed(s.points(), d, rng);
    StabCount cur = counter.count(p);
    ++best.candidates;
    for (int lev = 2; lev < levels; ++lev) {
      Rational step(1);
      step /= Integer(1) << lev;
      bool improved = true;
      while (improved) {
        improved = false;
        for (int k = 0; k < d && !improved; ++k) {
          Rational mag = p[k] != 0 ? Rational(abs(p[k])) : coord_scale[k];
          for (int sgnv : {1, -1}) {
            ExactPoint q = p;
            q[k] += sgnv * step * mag;
            StabCount c = counter.count(q);
            ++best.candidates;
            if (c.strict > cur.strict) {
              p = std::move(q);
              cur = c;
              improved = true;
              break;
            }
          }
        }
      }
    }
    if (!have || cur.strict > best.count.strict) {
      have = true;
      best.point = p;
      best.count = cur;
    }
  }
  best.count.total = binomial_u64(s.size(), static_cast<std::uint64_t>(d) + 1);
  return best;
}

}  // namespace

MaxStabResult max_stab_point(const PointSet& s, const MaxStabOptions& opt) {
  if (s.size() < static_cast<size_t>(s.dim()) + 1) throw InputError("max_stab: need at least d+1 points");
  if (opt.mode == MaxStabMode::heuristic) return heuristic_max_stab(s, opt);
  if (s.dim() != 2) throw InputError("max_stab: exact mode needs d = 2");
  if (static_cast<int>(s.size()) > opt.exact_cap)
    throw ResourceError("max_stab: n = " + std::to_string(s.size()) + " exceeds exact cap " +
                        std::to_string(opt.exact_cap));
  ExactMaxStab search(s);
  MaxStabResult res = search.run();
  std::uint64_t claimed = res.count.strict;
  res.count = count_containing(s, res.point);
  if (res.count.strict != claimed)
    throw std::logic_error("max_stab: recount " + std::to_string(res.count.strict) + " disagrees with cell value " +
                           std::to_string(claimed));
  return res;
}

}  // namespace stab
