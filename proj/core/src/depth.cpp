#include "stab/depth.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "stab/combinatorics.hpp"
#include "stab/errors.hpp"
#include "stab/lp.hpp"

namespace stab {

namespace {

using IVec = std::vector<Integer>;
using Vec = std::vector<Rational>;

IVec to_integer(const Vec& v) {
  Integer l = lcm_of_denominators(v.data(), v.data() + v.size());
  IVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rational q = v[i] * l;
    out[i] = q.get_num();
  }
  return out;
}

Vec primitive(const Vec& v) {
  IVec z = to_integer(v);
  Integer g = 0;
  for (const auto& x : z) g = gcd(g, x);
  Vec out(z.size());
  for (size_t i = 0; i < z.size(); ++i) out[i] = g == 0 ? Rational(0) : Rational(z[i] / g);
  return out;
}

// lexicographic order on w / |w|_1
bool direction_less(const Vec& a, const Vec& b) {
  Rational na = 0, nb = 0;
  for (const auto& x : a) na += abs(x);
  for (const auto& x : b) nb += abs(x);
  for (size_t i = 0; i < a.size(); ++i) {
    Rational l = a[i] * nb, r = b[i] * na;
    if (l != r) return l < r;
  }
  return false;
}

Integer idot(const IVec& a, const IVec& b) {
  Integer acc = 0;
  for (size_t i = 0; i < a.size(); ++i) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return acc;
}

Rational rdot(const Vec& a, const IVec& b) {
  Rational acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Pivot columns of the row space, by rational elimination.
std::vector<int> pivot_columns(const std::vector<IVec>& rows, int k) {
  std::vector<Vec> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  std::vector<int> piv;
  size_t top = 0;
  for (int c = 0; c < k && top < m.size(); ++c) {
    size_t sel = top;
    while (sel < m.size() && sgn(m[sel][c]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[top]);
    for (size_t r = top + 1; r < m.size(); ++r) {
      if (sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c] / m[top][c];
      for (int j = c; j < k; ++j) m[r][j] -= f * m[top][j];
    }
    piv.push_back(c);
    ++top;
  }
  return piv;
}

// Normal of k-1 integer vectors in R^k: u_c = (-1)^c det(minor without c).
IVec normal_of(const std::vector<const IVec*>& rows, int k) {
  IVec u(static_cast<size_t>(k));
  const int m = k - 1;
  for (int c = 0; c < k; ++c) {
    std::vector<Integer> minor;
    minor.reserve(static_cast<size_t>(m * m));
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < k; ++j)
        if (j != c) minor.push_back((*rows[r])[j]);
    Integer det = m == 0 ? Integer(1) : determinant(std::move(minor), m);
    u[c] = (c % 2 == 0) ? det : Integer(-det);
  }
  return u;
}

void make_primitive(IVec& u) {
  Integer g = 0;
  for (const auto& x : u) g = gcd(g, x);
  if (g > 1)
    for (auto& x : u) x /= g;
}

struct OpenMin {
  std::uint64_t count = 0;
  Vec w;
};

// min over directions u with <u,z> != 0 for every z of #{z : <u,z> > 0}.
// z are nonzero integer vectors of R^k.
OpenMin open_min(const std::vector<IVec>& z, int k) {
  OpenMin best;
  if (z.empty() || k == 0) {
    best.w.assign(static_cast<size_t>(k), Rational(0));
    if (k > 0) best.w[0] = -1;
    return best;
  }
  std::vector<int> piv = pivot_columns(z, k);
  const int r = static_cast<int>(piv.size());
  if (r < k) {
    std::vector<IVec> proj;
    proj.reserve(z.size());
    for (const auto& v : z) {
      IVec q(static_cast<size_t>(r));
      for (int i = 0; i < r; ++i) q[i] = v[piv[i]];
      proj.push_back(std::move(q));
    }
    OpenMin sub = open_min(proj, r);
    best.count = sub.count;
    best.w.assign(static_cast<size_t>(k), Rational(0));
    for (int i = 0; i < r; ++i) best.w[piv[i]] = sub.w[i];
    return best;
  }
  if (k == 1) {
    std::uint64_t pos = 0, neg = 0;
    for (const auto& v : z) (sgn(v[0]) > 0 ? pos : neg)++;
    best.count = std::min(pos, neg);
    best.w = {Rational(pos < neg ? 1 : -1)};
    return best;
  }

  bool have = false;
  std::set<IVec> seen;
  const int n = static_cast<int>(z.size());
  std::vector<const IVec*> rows(static_cast<size_t>(k) - 1);
  for_each_subset(n, k - 1, [&](const std::vector<int>& idx) {
    for (int i = 0; i < k - 1; ++i) rows[i] = &z[static_cast<size_t>(idx[i])];
    IVec u = normal_of(rows, k);
    int lead = 0;
    while (lead < k && sgn(u[lead]) == 0) ++lead;
    if (lead == k) return true;
    make_primitive(u);
    if (sgn(u[lead]) < 0)
      for (auto& x : u) x = -x;
    if (!seen.insert(u).second) return true;
    for (int sgn_u : {1, -1}) {
      IVec uu = u;
      if (sgn_u < 0)
        for (auto& x : uu) x = -x;
      std::uint64_t pos = 0;
      std::vector<int> on;
      std::vector<Integer> val(z.size());
      for (size_t i = 0; i < z.size(); ++i) {
        val[i] = idot(uu, z[i]);
        int s = sgn(val[i]);
        if (s > 0) ++pos;
        if (s == 0) on.push_back(static_cast<int>(i));
      }
      if (have && pos > best.count) continue;
      // drop a coordinate where u is nonzero; injective on u-perp
      std::vector<IVec> proj;
      proj.reserve(on.size());
      for (int i : on) {
        IVec q;
        q.reserve(static_cast<size_t>(k) - 1);
        for (int j = 0; j < k; ++j)
          if (j != lead) q.push_back(z[static_cast<size_t>(i)][j]);
        proj.push_back(std::move(q));
      }
      OpenMin sub = open_min(proj, k - 1);
      std::uint64_t total = pos + sub.count;
      if (have && total > best.count) continue;
      Vec lift(static_cast<size_t>(k));
      for (int j = 0, t = 0; j < k; ++j) lift[j] = (j == lead) ? Rational(0) : sub.w[t++];
      Rational eps = 1;
      for (size_t i = 0; i < z.size(); ++i) {
        if (sgn(val[i]) == 0) continue;
        Rational l = rdot(lift, z[i]);
        if (sgn(l) == 0) continue;
        Rational bound = abs(Rational(val[i])) / (2 * abs(l));
        if (bound < eps) eps = bound;
      }
      Vec w(static_cast<size_t>(k));
      for (int j = 0; j < k; ++j) w[j] = Rational(uu[j]) + eps * lift[j];
      w = primitive(w);
      if (!have || total < best.count || direction_less(w, best.w)) {
        best.count = total;
        best.w = std::move(w);
        have = true;
      }
    }
    return true;
  });
  return best;
}

Integer ceil_div(std::uint64_t a, std::uint64_t b) { return Integer(static_cast<unsigned long>((a + b - 1) / b)); }

}  // namespace

std::uint64_t halfspace_count(const std::vector<ExactPoint>& pts, const ExactPoint& p,
                              const std::vector<Rational>& dir) {
  Rational base = dot(std::span<const Rational>(dir), p);
  std::uint64_t c = 0;
  for (const auto& x : pts)
    if (dot(std::span<const Rational>(dir), x) >= base) ++c;
  return c;
}

DepthResult depth(const std::vector<ExactPoint>& pts, const ExactPoint& p) {
  const int d = p.dim();
  std::uint64_t zeros = 0;
  std::vector<IVec> z;
  for (const auto& x : pts) {
    require_same_dim(x, d, "depth");
    if (x == p) {
      ++zeros;
      continue;
    }
    z.push_back(to_integer((x - p).coords()));
  }
  OpenMin m = open_min(z, d);
  DepthResult out;
  out.depth = zeros + m.count;
  out.witness = primitive(m.w);
  if (halfspace_count(pts, p, out.witness) != out.depth)
    throw std::logic_error("depth: witness recount mismatch");
  return out;
}

DepthResult depth(const PointSet& s, const ExactPoint& p) {
  require_same_dim(p, s.dim(), "depth");
  return depth(s.points(), p);
}

DepthResult flat_depth(const PointSet& s, const Flat2Codim& flat) {
  validate_flat(flat, s.dim());
  std::vector<ExactPoint> proj = project_to_plane(s.points(), flat);
  DepthResult planar = depth(proj, ExactPoint{flat.s, flat.t});
  Vec dir(static_cast<size_t>(s.dim()));
  for (int i = 0; i < s.dim(); ++i) dir[i] = planar.witness[0] * flat.v[i] + planar.witness[1] * flat.w[i];
  DepthResult out;
  out.depth = planar.depth;
  out.witness = primitive(dir);
  // recount in R^d against the level of the flat
  Rational level = planar.witness[0] * flat.s + planar.witness[1] * flat.t;
  Rational scale = 0;
  for (int i = 0; i < s.dim(); ++i)
    if (sgn(dir[i]) != 0) {
      scale = out.witness[i] / dir[i];
      break;
    }
  level *= scale;
  std::uint64_t c = 0;
  for (const auto& x : s)
    if (dot(std::span<const Rational>(out.witness), x) >= level) ++c;
  if (c != out.depth) throw std::logic_error("flat_depth: witness recount mismatch");
  return out;
}

ExactPoint radon_point(std::span<const ExactPoint> pts) {
  if (pts.empty()) throw InputError("radon_point: empty input");
  const int d = pts[0].dim();
  const int m = d + 2;
  if (static_cast<int>(pts.size()) != m) throw InputError("radon_point: need d+2 points");
  // rows: sum lambda_i = 0, sum lambda_i x_i = 0
  std::vector<Vec> a(static_cast<size_t>(d) + 1, Vec(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i) {
    require_same_dim(pts[i], d, "radon_point");
    a[0][i] = 1;
    for (int j = 0; j < d; ++j) a[j + 1][i] = pts[i][j];
  }
  const int rows = d + 1;
  std::vector<int> piv_col;
  int top = 0;
  for (int c = 0; c < m && top < rows; ++c) {
    int sel = top;
    while (sel < rows && sgn(a[sel][c]) == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[top]);
    Rational inv = 1 / a[top][c];
    for (int j = 0; j < m; ++j) a[top][j] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == top || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (int j = 0; j < m; ++j) a[r][j] -= f * a[top][j];
    }
    piv_col.push_back(c);
    ++top;
  }
  int free_col = -1;
  for (int c = 0; c < m && free_col < 0; ++c)
    if (std::find(piv_col.begin(), piv_col.end(), c) == piv_col.end()) free_col = c;
  Vec lambda(static_cast<size_t>(m));
  lambda[free_col] = 1;
  for (size_t r = 0; r < piv_col.size(); ++r) lambda[piv_col[r]] = -a[r][free_col];
  ExactPoint acc = origin(d);
  Rational wsum = 0;
  for (int i = 0; i < m; ++i) {
    if (sgn(lambda[i]) <= 0) continue;
    acc = acc + lambda[i] * pts[i];
    wsum += lambda[i];
  }
  return (1 / wsum) * acc;
}

namespace {

std::optional<ExactPoint> lp_centerpoint(const PointSet& s, std::uint64_t target, std::uint64_t seed) {
  const int d = s.dim();
  const int n = static_cast<int>(s.size());
  std::vector<Halfspace> cons;
  std::set<IVec> seen;
  std::vector<IVec> diff(static_cast<size_t>(d) - 1);
  std::vector<const IVec*> rows(static_cast<size_t>(d) - 1);
  std::vector<Rational> vals(static_cast<size_t>(n));
  for_each_subset(n, d, [&](const std::vector<int>& idx) {
    for (int i = 1; i < d; ++i) {
      diff[i - 1] = to_integer((s[idx[i]] - s[idx[0]]).coords());
      rows[i - 1] = &diff[i - 1];
    }
    IVec u = normal_of(rows, d);
    int lead = 0;
    while (lead < d && sgn(u[lead]) == 0) ++lead;
    if (lead == d) return true;
    make_primitive(u);
    if (sgn(u[lead]) < 0)
      for (auto& x : u) x = -x;
    if (!seen.insert(u).second) return true;
    Vec a(u.begin(), u.end());
    for (int j = 0; j < n; ++j) vals[j] = dot(std::span<const Rational>(a), s[j]);
    std::vector<Rational> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    Halfspace up{a, sorted[static_cast<size_t>(n) - target]};
    Vec neg(a.size());
    for (size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
    Halfspace down{neg, -sorted[target - 1]};
    cons.push_back(std::move(up));
    cons.push_back(std::move(down));
    return true;
  });
  Vec lo = s[0].coords(), hi = s[0].coords();
  for (const auto& x : s)
    for (int i = 0; i < d; ++i) {
      if (x[i] < lo[i]) lo[i] = x[i];
      if (x[i] > hi[i]) hi[i] = x[i];
    }
  auto sol = solve_lp(cons, lo, hi, {}, seed);
  if (!sol) return std::nullopt;
  return ExactPoint(*sol);
}

ExactPoint iterated_radon(const PointSet& s, std::mt19937_64& rng) {
  const int d = s.dim();
  const size_t m = static_cast<size_t>(d) + 2;
  std::vector<ExactPoint> cur = s.points();
  while (cur.size() >= m) {
    std::shuffle(cur.begin(), cur.end(), rng);
    std::vector<ExactPoint> next;
    size_t i = 0;
    for (; i + m <= cur.size(); i += m) next.push_back(radon_point(std::span<const ExactPoint>(cur.data() + i, m)));
    if (next.size() == 1 && i == cur.size()) return next[0];
    for (; i < cur.size() && next.size() < m; ++i) next.push_back(cur[i]);
    if (next.size() >= cur.size()) break;
    cur = std::move(next);
  }
  return centroid(std::span<const ExactPoint>(cur));
}

}  // namespace

CenterpointResult find_centerpoint(const PointSet& s, CenterMode mode, std::uint64_t seed) {
  if (s.size() == 0) throw InputError("find_centerpoint: empty set");
  const int d = s.dim();
  CenterpointResult out;
  out.target = ceil_div(s.size(), static_cast<std::uint64_t>(d) + 1).get_ui();
  bool exact = mode == CenterMode::exact || (mode == CenterMode::automatic && d <= 3);
  if (exact && d > 3) throw InputError("find_centerpoint: exact mode needs d <= 3");
  if (exact) {
    out.exact = true;
    auto c = lp_centerpoint(s, out.target, seed);
    if (!c) return out;  // ok = false: the LP found the depth region empty
    out.point = *c;
    out.depth = depth(s, out.point);
    out.ok = out.depth.depth >= out.target;
    return out;
  }
  std::mt19937_64 rng(seed ^ 0xc3a7e1u);
  std::vector<ExactPoint> cands{centroid(std::span<const ExactPoint>(s.points()))};
  for (int trial = 0; trial < 8; ++trial) cands.push_back(iterated_radon(s, rng));
  bool have = false;
  for (auto& c : cands) {
    DepthResult r = depth(s, c);
    if (!have || r.depth > out.depth.depth) {
      out.point = c;
      out.depth = r;
      have = true;
    }
    if (out.depth.depth >= out.target) break;
  }
  out.ok = out.depth.depth >= out.target;
  return out;
}

}  // namespace stab
