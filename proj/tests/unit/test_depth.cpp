#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stab/constructions.hpp"
#include "stab/depth.hpp"
#include "stab/errors.hpp"
#include "stab/lp.hpp"
#include "stab/stab_count.hpp"

using namespace stab;

namespace {

ExactPoint P(long x, long y) { return ExactPoint{Rational(x), Rational(y)}; }

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

void check_witness(const std::vector<ExactPoint>& pts, const ExactPoint& p, const DepthResult& r) {
  REQUIRE(r.witness.size() == static_cast<size_t>(p.dim()));
  CHECK(oracle::halfspace(pts, p, r.witness) == r.depth);
}

}  // namespace

TEST_SUITE("depth") {
  TEST_CASE("triangle centroid has depth 1, outside has 0") {
    std::vector<ExactPoint> tri{P(0, 0), P(6, 0), P(0, 6)};
    DepthResult c = depth(PointSet(2, tri), P(2, 2));
    CHECK(c.depth == 1);
    check_witness(tri, P(2, 2), c);
    DepthResult out = depth(PointSet(2, tri), P(7, 7));
    CHECK(out.depth == 0);
    check_witness(tri, P(7, 7), out);
  }

  TEST_CASE("depth matches the Fourier-Motzkin oracle") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 80; ++trial) {
      const int d = 2 + trial % 2;
      const int n = d + 1 + static_cast<int>(rng() % (d == 2 ? 9 : 6));
      // small grids give collinear and coincident configurations
      auto pts = oracle::random_points(rng, n, d, trial % 4 == 0 ? 2 : 30);
      ExactPoint p = trial % 5 == 0 ? pts[0] : oracle::random_point(rng, d, trial % 4 == 0 ? 2 : 10);
      DepthResult r = depth(pts, p);
      CHECK(r.depth == oracle::depth(pts, p));
      check_witness(pts, p, r);
    }
  }

  TEST_CASE("depth with repeated points and rank-deficient sets") {
    std::vector<ExactPoint> line{P(0, 0), P(1, 1), P(2, 2), P(3, 3), P(1, 1)};
    DepthResult r = depth(line, P(1, 1));
    CHECK(r.depth == oracle::depth(line, P(1, 1)));
    check_witness(line, P(1, 1), r);
    std::vector<ExactPoint> same{P(2, 3), P(2, 3), P(2, 3)};
    CHECK(depth(same, P(2, 3)).depth == 3);
    CHECK(depth(same, P(0, 0)).depth == 0);
  }

  TEST_CASE("depth at least one iff p is in the hull") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 60; ++trial) {
      auto pts = oracle::random_points(rng, 7, 2, 6);
      ExactPoint p = oracle::random_point(rng, 2, 7);
      auto c = oracle::brute_count(pts, p);
      if (c.flat == 35) continue;  // all collinear
      // a non-flat hull is covered by its non-flat triangles
      bool in_hull = c.strict + c.boundary > 0;
      CHECK((depth(pts, p).depth >= 1) == in_hull);
    }
  }

  TEST_CASE("depth is affine invariant") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      auto pts = oracle::random_points(rng, 10, 3, 20);
      ExactPoint p = oracle::random_point(rng, 3, 5);
      auto map = [](const ExactPoint& q) {
        return ExactPoint{Rational(q[0] + 2 * q[1]), Rational(q[1] - q[2] / 5), Rational(3 * q[2] + 1)};
      };
      std::vector<ExactPoint> moved;
      for (const auto& q : pts) moved.push_back(map(q));
      CHECK(depth(pts, p).depth == depth(moved, map(p)).depth);
    }
  }

  TEST_CASE("origin depth of the antipodal sphere set is |A|") {
    for (int d = 2; d <= 4; ++d) {
      SphereConfig cfg;
      cfg.n = 20;
      cfg.d = d;
      cfg.alpha = Rational(1, 4);
      SphereSet sp = build_sphere_antipodal(cfg);
      DepthResult r = depth(sp.set, origin(d));
      CHECK(r.depth == static_cast<std::uint64_t>(sp.a));
      check_witness(sp.set.points(), origin(d), r);
    }
  }

  TEST_CASE("centerpoint examples") {
    PointSet square(2, {P(0, 0), P(1, 0), P(1, 1), P(0, 1)});
    CenterpointResult c = find_centerpoint(square);
    CHECK(c.target == 2);
    CHECK(c.ok);
    CHECK(oracle::depth(square.points(), c.point) >= 2);

    for (int d = 2; d <= 3; ++d) {
      std::vector<ExactPoint> simplex;
      simplex.push_back(origin(d));
      for (int i = 0; i < d; ++i) {
        std::vector<Rational> e(static_cast<size_t>(d), Rational(0));
        e[i] = 1;
        simplex.push_back(ExactPoint(e));
      }
      PointSet s(d, simplex);
      CenterpointResult r = find_centerpoint(s);
      CHECK(r.target == 1);
      CHECK(r.ok);
      CHECK(depth(s, centroid(simplex)).depth == 1);
    }
  }

  TEST_CASE("sphere set with alpha = 1/(d+1): origin is a centerpoint") {
    for (int d = 2; d <= 3; ++d) {
      SphereConfig cfg;
      cfg.n = 12;
      cfg.d = d;
      cfg.alpha = fraction(1, d + 1);
      SphereSet sp = build_sphere_antipodal(cfg);
      CHECK(depth(sp.set, origin(d)).depth >= ceil_div(12, static_cast<std::uint64_t>(d + 1)));
      CHECK(find_centerpoint(sp.set).ok);
    }
  }

  TEST_CASE("exact centerpoints on random sets reach the target") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 12; ++trial) {
      const int d = 2 + trial % 2;
      const int n = 6 + static_cast<int>(rng() % 5);
      auto pts = oracle::random_points(rng, n, d, trial % 3 == 0 ? 3 : 100);
      PointSet s(d, pts);
      CenterpointResult c = find_centerpoint(s, CenterMode::exact);
      CHECK(c.exact);
      CHECK(c.ok);
      CHECK(c.target == ceil_div(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d + 1)));
      CHECK(oracle::depth(pts, c.point) >= c.target);
    }
  }

  TEST_CASE("heuristic centerpoint in d = 4 is verified") {
    PointSet s = build_random_ball(25, 4, 3);
    CenterpointResult c = find_centerpoint(s);
    CHECK_FALSE(c.exact);
    CHECK(c.depth.depth == depth(s, c.point).depth);
    CHECK(c.ok == (c.depth.depth >= c.target));
    CHECK(c.depth.depth >= 1);
  }

  TEST_CASE("flat depth: pentagon axis, outside flat, projection consistency") {
    std::vector<ExactPoint> pts;
    for (const auto& p : oracle::pentagon()) pts.push_back(ExactPoint{p[0], p[1], Rational(1, 5)});
    PointSet s(3, pts);
    Flat2Codim axis{{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}, 0, 0};
    DepthResult r = flat_depth(s, axis);
    CHECK(r.depth == 2);
    axis.s = 3;
    CHECK(flat_depth(s, axis).depth == 0);

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
      auto cloud = oracle::random_points(rng, 12, 3, 20);
      Flat2Codim f{{Rational(1), Rational(-1), Rational(2)}, {Rational(3), Rational(0), Rational(1)}, Rational(1, 3), Rational(2)};
      DepthResult fd = flat_depth(PointSet(3, cloud), f);
      std::vector<ExactPoint> proj;
      for (const auto& p : cloud) proj.push_back(ExactPoint{dot(f.v, p), dot(f.w, p)});
      CHECK(fd.depth == oracle::depth(proj, ExactPoint{f.s, f.t}));
      // the witness is a direction in R^3 orthogonal to the flat
      REQUIRE(fd.witness.size() == 3);
      std::uint64_t cnt = 0;
      Rational level = 0;
      ExactPoint on_flat = origin(3);
      // a point of the flat: x = a v + b w with <v,x> = s, <w,x> = t
      Rational vv = 6, vw = 5, ww = 10;
      Rational det = vv * ww - vw * vw;
      Rational a = (f.s * ww - f.t * vw) / det, b = (f.t * vv - f.s * vw) / det;
      for (int i = 0; i < 3; ++i) on_flat[i] = a * f.v[i] + b * f.w[i];
      for (int i = 0; i < 3; ++i) level += fd.witness[i] * on_flat[i];
      for (const auto& p : cloud) {
        Rational s2 = 0;
        for (int i = 0; i < 3; ++i) s2 += fd.witness[i] * p[i];
        if (s2 >= level) ++cnt;
      }
      CHECK(cnt == fd.depth);
    }
  }

  TEST_CASE("exact LP agrees with 2D vertex enumeration") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> u(-9, 9);
    int infeasible = 0;
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<Halfspace> hs;
      const int k = 1 + static_cast<int>(rng() % 7);
      for (int i = 0; i < k; ++i) hs.push_back({{Rational(u(rng)), Rational(u(rng))}, Rational(u(rng))});
      std::vector<Rational> lo{Rational(-10), Rational(-10)}, hi{Rational(10), Rational(10)};
      std::vector<Rational> obj{Rational(u(rng)), Rational(u(rng))};
      auto got = solve_lp(hs, lo, hi, {obj}, static_cast<std::uint64_t>(trial));
      auto want = oracle::lp_2d(hs, lo, hi, obj);
      REQUIRE(got.has_value() == want.has_value());
      if (!got) {
        ++infeasible;
        continue;
      }
      CHECK(*got == *want);
    }
    CHECK(infeasible > 0);
  }

  TEST_CASE("exact LP in 3D satisfies constraints and is seed independent") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> u(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Halfspace> hs;
      for (int i = 0; i < 6; ++i) hs.push_back({{Rational(u(rng)), Rational(u(rng)), Rational(u(rng))}, Rational(u(rng) + 5)});
      std::vector<Rational> lo(3, Rational(-4)), hi(3, Rational(4));
      auto a = solve_lp(hs, lo, hi, {}, 1), b = solve_lp(hs, lo, hi, {}, 99);
      REQUIRE(a.has_value() == b.has_value());
      if (!a) continue;
      CHECK(*a == *b);
      for (const auto& h : hs) CHECK(h.a[0] * (*a)[0] + h.a[1] * (*a)[1] + h.a[2] * (*a)[2] <= h.b);
    }
  }

  TEST_CASE("Radon point lies in the hulls of both parts") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
      const int d = 2 + trial % 3;
      auto pts = oracle::random_points(rng, d + 2, d, 50);
      ExactPoint r = radon_point(pts);
      // r is in conv of the d+2 points, so some closed simplex contains it
      auto c = oracle::brute_count(pts, r);
      CHECK(c.strict + c.boundary >= 2);
    }
  }
}
