#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stab/combinatorics.hpp"
#include "stab/constructions.hpp"
#include "stab/errors.hpp"
#include "stab/stab_count.hpp"

using namespace stab;

namespace {

ExactPoint P(long x, long y) { return ExactPoint{Rational(x), Rational(y)}; }

// pentagon in the plane z = 1/3, with a skew second coordinate
std::vector<ExactPoint> lifted_pentagon() {
  std::vector<ExactPoint> out;
  for (const auto& p : oracle::pentagon()) out.push_back(ExactPoint{p[0], Rational(p[1] + p[0] / 7), Rational(1, 3)});
  return out;
}

}  // namespace

TEST_SUITE("stab_count") {
  TEST_CASE("regular pentagon centre lies in 5 of 10 triangles") {
    auto pent = oracle::pentagon();
    StabCount c = count_containing(pent, origin(2));
    CHECK(c.strict == 5);
    CHECK(c.degenerate == 0);
    CHECK(c.total == 10);
    CHECK(oracle::brute_count(pent, origin(2)).strict == 5);
    CHECK(count_containing_planar_fast(pent, origin(2)).strict == 5);
  }

  TEST_CASE("point outside the hull") {
    auto pent = oracle::pentagon();
    CHECK(count_containing(pent, P(5, 5)).strict == 0);
    CHECK(count_containing_planar_fast(pent, P(5, 5)).strict == 0);
    // all points in an open half-plane through p
    std::vector<ExactPoint> half{P(1, 1), P(2, 5), P(3, -1), P(7, 2)};
    CHECK(count_containing_planar_fast(half, P(0, 0)).strict == 0);
  }

  TEST_CASE("dimension mismatch and p in S") {
    auto pent = oracle::pentagon();
    CHECK_THROWS_AS(count_containing(pent, ExactPoint{Rational(0), Rational(0), Rational(0)}), InputError);
    CHECK_THROWS_AS(count_containing_planar_fast(pent, pent[2]), InputError);
  }

  TEST_CASE("planar fast count equals brute force, including collinear cases") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 120; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 30);
      const long range = trial % 2 ? 4 : 100000;
      auto pts = oracle::random_points(rng, n, 2, range);
      ExactPoint p;
      do p = oracle::random_point(rng, 2, range);
      while (std::find(pts.begin(), pts.end(), p) != pts.end());
      StabCount fast = count_containing_planar_fast(pts, p);
      StabCount brute = count_containing(pts, p);
      auto ref = oracle::brute_count(pts, p);
      CHECK(fast.strict == brute.strict);
      CHECK(fast.degenerate == brute.degenerate);
      CHECK(brute.strict == ref.strict);
      CHECK(brute.degenerate == ref.boundary);
      CHECK(brute.total == binomial(n, 3));
    }
  }

  TEST_CASE("d = 3 and d = 4 counts match the oracle") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
      const int d = 3 + trial % 2;
      const int n = d + 2 + static_cast<int>(rng() % 4);
      auto pts = oracle::random_points(rng, n, d, trial % 3 == 0 ? 2 : 1000);
      ExactPoint p = oracle::random_point(rng, d, 2);
      StabCount c = count_containing(pts, p);
      auto ref = oracle::brute_count(pts, p);
      CHECK(c.strict == ref.strict);
      CHECK(c.degenerate == ref.boundary);
      CHECK(c.strict + c.degenerate <= c.total);
    }
  }

  TEST_CASE("counts are invariant under invertible affine maps") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      auto pts = oracle::random_points(rng, 12, 2, 50);
      ExactPoint p = oracle::random_point(rng, 2, 20);
      // (x, y) -> (2x + y/3 + 5, -x + y - 1/2)
      auto map = [](const ExactPoint& q) {
        return ExactPoint{Rational(2 * q[0] + q[1] / 3 + 5), Rational(-q[0] + q[1] - Rational(1, 2))};
      };
      std::vector<ExactPoint> moved;
      for (const auto& q : pts) moved.push_back(map(q));
      StabCount a = count_containing(pts, p), b = count_containing(moved, map(p));
      CHECK(a.strict == b.strict);
      CHECK(a.degenerate == b.degenerate);
    }
  }

  TEST_CASE("chunked enumeration sums to the full count") {
    std::mt19937_64 rng(30);
    auto pts = oracle::random_points(rng, 14, 3, 30);
    ExactPoint p = oracle::random_point(rng, 3, 5);
    StabCount all = count_containing(pts, p);
    auto bounds = chunk_bounds(all.total, 7);
    std::uint64_t strict = 0, deg = 0;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
      StabCount part = count_containing_range(pts, p, bounds[i], bounds[i + 1]);
      strict += part.strict;
      deg += part.degenerate;
    }
    CHECK(strict == all.strict);
    CHECK(deg == all.degenerate);
  }

  TEST_CASE("triangles stabbed by a flat in R^3") {
    PointSet s(3, lifted_pentagon());
    Flat2Codim flat{{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}, Rational(0), Rational(0)};
    // the flat is the z-axis; projection along it is the skewed pentagon
    CHECK(count_triangles_stabbed(s, flat).strict == 5);
    flat.s = 10;
    CHECK(count_triangles_stabbed(s, flat).strict == 0);
    Flat2Codim dependent{{Rational(1), Rational(2), Rational(0)}, {Rational(2), Rational(4), Rational(0)}, 0, 0};
    CHECK_THROWS_AS(count_triangles_stabbed(s, dependent), InputError);
  }

  TEST_CASE("flat stabbing matches the projected oracle count") {
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 15; ++trial) {
      auto pts = oracle::random_points(rng, 11, 3, 20);
      Flat2Codim f{{Rational(1), Rational(2), Rational(-1)}, {Rational(0), Rational(1), Rational(3)}, Rational(1, 2),
                   Rational(-1, 3)};
      StabCount c = count_triangles_stabbed(PointSet(3, pts), f);
      std::vector<ExactPoint> proj;
      for (const auto& p : pts) proj.push_back(ExactPoint{dot(f.v, p), dot(f.w, p)});
      auto ref = oracle::brute_count(proj, ExactPoint{f.s, f.t}, 3);
      CHECK(c.strict == ref.strict);
      CHECK(c.degenerate == ref.boundary);
      CHECK(c.total == binomial(11, 3));
    }
  }

  TEST_CASE("antisymmetric subsets: exactly two, and they are negatives") {
    for (int d = 2; d <= 4; ++d)
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        PointSet x = build_random_sphere(d + 1, d, 1000 + seed);
        WendelResult w = wendel_antisymmetric_count(x);
        CHECK(w.count == 2);
        CHECK(oracle::wendel(x.points()) == 2);
        REQUIRE(w.witnesses.size() == 2);
        for (size_t i = 0; i < w.witnesses[0].size(); ++i) CHECK(w.witnesses[0][i] == -w.witnesses[1][i]);
      }
  }

  TEST_CASE("antisymmetric count rejects degenerate input") {
    PointSet x(2, {P(1, 0), P(-1, 0), P(0, 1)});  // origin on a spanned line
    CHECK_THROWS_AS(wendel_antisymmetric_count(x), DegenerateInputError);
    CHECK_THROWS_AS(wendel_antisymmetric_count(PointSet(2, {P(1, 0), P(0, 1)})), InputError);
  }

  TEST_CASE("max stab: pentagon and exhaustiveness over random candidates") {
    MaxStabResult r = max_stab_point(PointSet(2, oracle::pentagon()));
    CHECK(r.count.strict == 5);
    CHECK_FALSE(r.lower_bound);
    CHECK(count_containing(oracle::pentagon(), r.point).strict == 5);

    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 5; ++trial) {
      auto pts = oracle::random_points(rng, 9, 2, 40);
      MaxStabResult m = max_stab_point(PointSet(2, pts));
      CHECK(m.count.strict == oracle::brute_count(pts, m.point).strict);
      for (int probe = 0; probe < 40; ++probe) {
        ExactPoint q = oracle::random_point(rng, 2, 400, 10);
        CHECK(count_containing(pts, q).strict <= m.count.strict);
      }
    }
  }

  TEST_CASE("max stab on the random circle is near the quarter rate") {
    PointSet s = build_random_sphere(30, 2, 0);
    MaxStabResult m = max_stab_point(s);
    double ratio = static_cast<double>(m.count.strict) / binomial(30, 3).get_d();
    CHECK(m.count.strict >= count_containing(s, origin(2)).strict);
    CHECK(ratio >= 0.2);
    CHECK(ratio <= 0.3);
  }

  TEST_CASE("max stab: cap and heuristic mode") {
    MaxStabOptions opt;
    opt.exact_cap = 8;
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(max_stab_point(PointSet(2, oracle::random_points(rng, 9, 2, 50)), opt), ResourceError);
    PointSet s3 = build_random_sphere(8, 3, 2);
    CHECK_THROWS_AS(max_stab_point(s3), InputError);
    MaxStabOptions h;
    h.mode = MaxStabMode::heuristic;
    h.restarts = 8;
    MaxStabResult r = max_stab_point(s3, h);
    CHECK(r.lower_bound);
    CHECK(r.count.strict == count_containing(s3, r.point).strict);
    CHECK(r.count.strict >= 1);
  }
}
