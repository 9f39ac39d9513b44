#include "stab/lp.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "stab/errors.hpp"

namespace stab {

namespace {

using Vec = std::vector<Rational>;

struct Problem {
  int d = 0;
  std::vector<Halfspace> cons;
  Vec lo, hi;
  std::vector<Vec> obj;  // spans R^d
};

Rational eval(const Vec& a, const Vec& x) {
  Rational acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * x[i];
  return acc;
}

Vec box_optimum(const Problem& p) {
  Vec x(static_cast<size_t>(p.d));
  std::vector<char> fixed(static_cast<size_t>(p.d), 0);
  for (const Vec& f : p.obj) {
    for (int i = 0; i < p.d; ++i) {
      if (fixed[i] || sgn(f[i]) == 0) continue;
      x[i] = sgn(f[i]) > 0 ? p.hi[i] : p.lo[i];
      fixed[i] = 1;
    }
  }
  for (int i = 0; i < p.d; ++i)
    if (!fixed[i]) x[i] = p.lo[i];
  return x;
}

std::optional<Vec> seidel(const Problem& p, std::mt19937_64& rng) {
  for (int i = 0; i < p.d; ++i)
    if (p.lo[i] > p.hi[i]) return std::nullopt;
  if (p.d == 0) {
    for (const auto& h : p.cons)
      if (sgn(h.b) < 0) return std::nullopt;
    return Vec{};
  }
  Vec x = box_optimum(p);
  std::vector<size_t> order(p.cons.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  for (size_t step = 0; step < order.size(); ++step) {
    const Halfspace& h = p.cons[order[step]];
    if (eval(h.a, x) <= h.b) continue;
    int j = -1;
    for (int i = 0; i < p.d; ++i)
      if (sgn(h.a[i]) != 0 && (j < 0 || abs(h.a[i]) > abs(h.a[j]))) j = i;
    if (j < 0) return std::nullopt;  // 0 <= b < 0

    // on the boundary: x_j = s + sum_{i != j} t_i y_i
    Rational s = h.b / h.a[j];
    Vec t(static_cast<size_t>(p.d));
    for (int i = 0; i < p.d; ++i)
      if (i != j) t[i] = -h.a[i] / h.a[j];

    auto drop = [&](const Vec& g) {
      Vec out;
      out.reserve(static_cast<size_t>(p.d) - 1);
      for (int i = 0; i < p.d; ++i)
        if (i != j) out.push_back(g[i]);
      return out;
    };
    auto substitute = [&](const Halfspace& g) {
      Halfspace r;
      r.a.reserve(static_cast<size_t>(p.d) - 1);
      for (int i = 0; i < p.d; ++i)
        if (i != j) r.a.push_back(g.a[i] + g.a[j] * t[i]);
      r.b = g.b - g.a[j] * s;
      return r;
    };

    Problem sub;
    sub.d = p.d - 1;
    sub.lo = drop(p.lo);
    sub.hi = drop(p.hi);
    Vec ones(static_cast<size_t>(p.d));
    ones[j] = 1;
    Halfspace upper{ones, p.hi[j]};
    Halfspace lower{Vec(static_cast<size_t>(p.d)), -p.lo[j]};
    lower.a[j] = -1;
    bool feasible = true;
    auto push = [&](Halfspace g) {
      bool zero = std::all_of(g.a.begin(), g.a.end(), [](const Rational& q) { return sgn(q) == 0; });
      if (!zero) {
        sub.cons.push_back(std::move(g));
      } else if (sgn(g.b) < 0) {
        feasible = false;
      }
    };
    push(substitute(upper));
    push(substitute(lower));
    for (size_t q = 0; q < step && feasible; ++q) push(substitute(p.cons[order[q]]));
    if (!feasible) return std::nullopt;
    for (const Vec& f : p.obj) {
      Vec g;
      g.reserve(static_cast<size_t>(sub.d));
      for (int i = 0; i < p.d; ++i)
        if (i != j) g.push_back(f[i] + f[j] * t[i]);
      sub.obj.push_back(std::move(g));
    }
    auto y = seidel(sub, rng);
    if (!y) return std::nullopt;
    Rational xj = s;
    for (int i = 0, k = 0; i < p.d; ++i) {
      if (i == j) continue;
      x[i] = (*y)[k++];
      xj += t[i] * x[i];
    }
    x[j] = xj;
  }
  return x;
}

}  // namespace

std::optional<std::vector<Rational>> solve_lp(const std::vector<Halfspace>& constraints,
                                              const std::vector<Rational>& lo, const std::vector<Rational>& hi,
                                              std::vector<std::vector<Rational>> objectives, std::uint64_t seed) {
  Problem p;
  p.d = static_cast<int>(lo.size());
  if (hi.size() != lo.size()) throw InputError("solve_lp: box dimension mismatch");
  for (const auto& h : constraints)
    if (static_cast<int>(h.a.size()) != p.d) throw InputError("solve_lp: constraint dimension mismatch");
  for (const auto& f : objectives)
    if (static_cast<int>(f.size()) != p.d) throw InputError("solve_lp: objective dimension mismatch");
  p.cons = constraints;
  p.lo = lo;
  p.hi = hi;
  p.obj = std::move(objectives);
  for (int i = 0; i < p.d; ++i) {
    Vec e(static_cast<size_t>(p.d));
    e[i] = 1;
    p.obj.push_back(std::move(e));
  }
  std::mt19937_64 rng(seed ^ 0x5eed1e55u);
  return seidel(p, rng);
}

}  // namespace stab
