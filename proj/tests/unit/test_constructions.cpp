#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stab/combinatorics.hpp"
#include "stab/constructions.hpp"
#include "stab/depth.hpp"
#include "stab/errors.hpp"
#include "stab/stab_count.hpp"

using namespace stab;

namespace {

Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Integer ipow(const Integer& x, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("separation chain follows the recurrence") {
    SeparationChain c = separation_chain(6, 2);
    REQUIRE(c.values.size() == 6);
    CHECK(c.values[0] == 2);
    CHECK(c.values[1] == 49);
    CHECK(c.values[2] == 705895);
    for (size_t t = 0; t + 1 < c.values.size(); ++t)
      CHECK(c.values[t + 1] == factorial(3) * ipow(c.values[t], 3) + 1);
    PointSet s = build_separated_set(3, 2);
    CHECK(s[0][0] == 2);
    CHECK(s[1][0] == 49);
    CHECK(s[2][0] == 705895);
    CHECK(s[0][1] == c.values[3]);
  }

  TEST_CASE("quadratic chain is strictly increasing") {
    SeparationChain c = separation_chain(20, 2, ChainSchedule::quadratic);
    for (size_t t = 0; t + 1 < c.values.size(); ++t) CHECK(c.values[t] < c.values[t + 1]);
    CHECK(c.values[0] > 1);
  }

  TEST_CASE("factorial chain refuses infeasible sizes") {
    CHECK_THROWS_AS(build_separated_set(30, 2), ResourceError);
    CHECK_THROWS_AS(build_separated_set(2, 2), InputError);
  }

  TEST_CASE("separated set: slopes, convexity and general position") {
    PointSet s = build_separated_set(6, 2);
    CHECK(slopes_increasing(s));
    CHECK(general_position_check(s));
    // slope condition by direct enumeration
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        for (int k = j + 1; k < 6; ++k)
          CHECK((s[k][1] - s[j][1]) * (s[j][0] - s[i][0]) > (s[j][1] - s[i][1]) * (s[k][0] - s[j][0]));
    for (int n : {9, 12, 21}) CHECK(slopes_increasing(build_separated_set(n, 2, ChainSchedule::quadratic)));
  }

  TEST_CASE("separated set of d+1 points: one simplex at its centroid") {
    for (int d = 2; d <= 4; ++d) {
      PointSet s = build_separated_set(d + 1, d, ChainSchedule::quadratic);
      StabCount c = count_containing(s, centroid(s.points()));
      CHECK(c.strict == 1);
    }
  }

  TEST_CASE("type classes: simplices through surviving r use one point of each type") {
    std::mt19937_64 rng(4);
    struct Case {
      int n, d;
      ChainSchedule sched;
    };
    for (Case cs : {Case{6, 2, ChainSchedule::factorial}, Case{9, 2, ChainSchedule::quadratic},
                    Case{12, 2, ChainSchedule::quadratic}, Case{6, 3, ChainSchedule::quadratic},
                    Case{8, 3, ChainSchedule::quadratic}}) {
      PointSet s = build_separated_set(cs.n, cs.d, cs.sched);
      for (int trial = 0; trial < 12; ++trial) {
        // centroid of a random simplex is a typical stabbing location
        std::vector<int> idx(static_cast<size_t>(cs.n));
        for (int i = 0; i < cs.n; ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<ExactPoint> simplex;
        for (int k = 0; k <= cs.d; ++k) simplex.push_back(s[idx[k]]);
        ExactPoint r = centroid(simplex);
        TypeProfile tp = type_profile(s, r);
        CHECK(tp.violations == 0);
        CHECK(tp.strict_kept <= tp.product());
        std::uint64_t sum = 0;
        for (auto k : tp.class_size) sum += k;
        CHECK(sum == tp.kept.size());
      }
    }
  }

  TEST_CASE("sphere set: alpha = 1/2 is fully antipodal") {
    SphereConfig cfg;
    cfg.n = 10;
    cfg.d = 2;
    cfg.alpha = Rational(1, 2);
    SphereSet sp = build_sphere_antipodal(cfg);
    CHECK(sp.a == 5);
    REQUIRE(sp.set.size() == 10);
    for (int i = 0; i < 5; ++i) CHECK(sp.set[5 + i] == -sp.set[i]);
  }

  TEST_CASE("sphere set: alpha = 3/10, n = 10") {
    SphereConfig cfg;
    cfg.n = 10;
    cfg.d = 2;
    cfg.alpha = Rational(3, 10);
    SphereSet sp = build_sphere_antipodal(cfg);
    CHECK(sp.a == 3);
    CHECK(sp.set.size() - 2 * static_cast<size_t>(sp.a) == 4);
    for (int i = 0; i < 6; ++i) CHECK(dot(sp.set[i], sp.set[i]) == 1);
    CHECK(depth(sp.set, origin(2)).depth == 3);
    // census against the barycentric oracle
    auto c = oracle::brute_count(sp.set.points(), origin(2));
    CHECK(c.strict == sp.census_strict);
    CHECK(c.boundary == sp.census_antipodal);
    CHECK(sp.census_strict == 2 * binomial(3, 3).get_ui() + 4 * binomial(3, 2).get_ui());
  }

  TEST_CASE("sphere set: non-integer alpha n rounds up, depth equals |A|") {
    for (int d = 2; d <= 3; ++d) {
      SphereConfig cfg;
      cfg.n = 13;
      cfg.d = d;
      cfg.alpha = Rational(1, 5);
      cfg.seed = 9;
      SphereSet sp = build_sphere_antipodal(cfg);
      CHECK(sp.a == 3);
      CHECK(depth(sp.set, origin(d)).depth == 3);
      CHECK(oracle::depth(sp.set.points(), origin(d)) == 3);
    }
  }

  TEST_CASE("sphere set rejects bad alpha") {
    SphereConfig cfg;
    cfg.n = 10;
    cfg.alpha = Rational(3, 5);
    CHECK_THROWS_AS(build_sphere_antipodal(cfg), InputError);
  }

  TEST_CASE("three-cluster set: sizes, circle, cluster diameter") {
    BorosFurediSet bf = build_boros_furedi_clusters(9);
    CHECK(bf.size_a == 3);
    CHECK(bf.size_b == 3);
    CHECK(bf.size_c == 3);
    for (const auto& p : bf.set) CHECK(dot(p, p) == 1);
    Rational scale(1, 1024);
    for (int i = 0; i < 9; ++i)
      for (int j = i + 1; j < 9; ++j)
        if (bf.cluster_of(i) == bf.cluster_of(j)) CHECK(dot(bf.set[i] - bf.set[j], bf.set[i] - bf.set[j]) <= scale * scale);
    BorosFurediSet ten = build_boros_furedi_clusters(10);
    int mx = std::max({ten.size_a, ten.size_b, ten.size_c}), mn = std::min({ten.size_a, ten.size_b, ten.size_c});
    CHECK(mx - mn <= 1);
    CHECK(ten.set.size() == 10);
  }

  TEST_CASE("three-cluster set of 6 points is in convex position") {
    PointSet s = build_boros_furedi(6);
    // no point inside a triangle of the others
    for (size_t i = 0; i < s.size(); ++i) {
      std::vector<ExactPoint> rest;
      for (size_t j = 0; j < s.size(); ++j)
        if (j != i) rest.push_back(s[j]);
      auto c = oracle::brute_count(rest, s[i]);
      CHECK(c.strict + c.boundary == 0);
    }
  }

  TEST_CASE("random sphere: general position and the quarter rate") {
    PointSet s = build_random_sphere(60, 2, 1);
    CHECK(general_position_check(s));
    StabCount c = count_containing(s, origin(2));
    double ratio = static_cast<double>(c.strict) / binomial(60, 3).get_d();
    CHECK(ratio >= 0.2);
    CHECK(ratio <= 0.3);
    PointSet single = build_random_sphere(3, 2, 5);
    StabCount one = count_containing(single, origin(2));
    CHECK(one.strict <= 1);
    CHECK(build_random_sphere(20, 3, 7).size() == 20);
  }

  TEST_CASE("generators are deterministic in the seed") {
    CHECK(build_random_sphere(12, 3, 4).points() == build_random_sphere(12, 3, 4).points());
    CHECK(build_random_ball(30, 3, 4).points() == build_random_ball(30, 3, 4).points());
    CHECK(build_random_ball(30, 3, 4).points() != build_random_ball(30, 3, 5).points());
    for (const auto& p : build_random_ball(50, 3, 1)) CHECK(dot(p, p) <= 1);
  }
}
