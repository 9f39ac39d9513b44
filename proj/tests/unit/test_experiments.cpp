#include <doctest.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "stab/constructions.hpp"
#include "stab/errors.hpp"
#include "stab/experiments.hpp"

using namespace stab;

namespace {

Rational fact(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Rational pw(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

ExperimentParams params(std::map<std::string, std::string> v) { return ExperimentParams{std::move(v)}; }

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("constants for d = 2 and d = 3") {
    ConstantsRow c = constants(2);
    CHECK(c.wagner_lower == Rational(5, 162));
    CHECK(c.upper_new == Rational(1, 27));
    CHECK(c.upper_classic == Rational(1, 24));
    CHECK(c.thm5_lower == Rational(1, 27));
    CHECK(constants(3).thm5_lower == Rational(1, 25));
    CHECK(constants(3).upper_new == Rational(1, 256));
    CHECK_THROWS_AS(constants(1), InputError);
  }

  TEST_CASE("constants agree with their closed forms and are ordered") {
    for (int d = 2; d <= 8; ++d) {
      ConstantsRow c = constants(d);
      Rational d1(d + 1);
      CHECK(c.wagner_lower == (d * d + 1) / (fact(d + 1) * pw(d1, d + 1)));
      CHECK(c.upper_new == 1 / pw(d1, d + 1));
      CHECK(c.upper_classic == 1 / (pw(2, d) * fact(d + 1)));
      CHECK(c.wagner_lower < c.upper_new);
      CHECK(c.upper_new < c.upper_classic);
      // alpha = 1/2 recovers the classic bound
      CHECK(alpha_curve(d, Rational(1, 2)) == c.upper_classic);
      Rational a(1, 7);
      CHECK(alpha_curve(d, a) == ((d + 1) * pw(a, d) - 2 * d * pw(a, d + 1)) / fact(d + 1));
      CHECK(c.upper_new.get_den() == pw(d1, d + 1).get_num());
    }
  }

  TEST_CASE("envelope fit: single term") {
    Rational target(1, 4);
    std::vector<std::pair<long, Rational>> s{{10, target + Rational(1, 10)}, {20, target + Rational(1, 40)},
                                            {40, target + Rational(1, 100)}};
    EnvelopeFit f = fit_envelope(s, target, Bound::upper);
    CHECK(f.c1 == 1);
    CHECK(f.pass);
    CHECK(f.fitted_on == std::vector<long>{10, 20});
    CHECK(f.validated_on == std::vector<long>{40});
    s.push_back({80, target + Rational(1, 50)});  // 1/50 > 1/80
    CHECK_FALSE(fit_envelope(s, target, Bound::upper).pass);
    // a lower bound is not touched by overshoot
    CHECK(fit_envelope(s, target, Bound::lower).pass);
    CHECK_THROWS_AS(fit_envelope({{1, target}, {2, target}}, target, Bound::upper), InputError);
    CHECK_THROWS_AS(fit_envelope(s, target, Bound::upper, 3), InputError);
  }

  TEST_CASE("envelope fit: two terms recover an exact law") {
    Rational target(1, 27), c1(-2, 3), c2(5);
    std::vector<std::pair<long, Rational>> s;
    for (long n : {10, 20, 30, 60}) s.push_back({n, target + c1 / n + c2 / (n * n)});
    EnvelopeFit f = fit_envelope(s, target, Bound::two_sided, 2);
    CHECK(f.c1 == c1);
    CHECK(f.c2 == c2);
    CHECK(f.pass);
    CHECK(fit_envelope(s, target, Bound::upper, 2).pass);
    CHECK(fit_envelope(s, target, Bound::lower, 2).pass);
    s.push_back({90, target + Rational(1, 10)});
    CHECK_FALSE(fit_envelope(s, target, Bound::two_sided, 2).pass);
  }

  TEST_CASE("adversarial point for nine clustered points") {
    BorosFurediSet bf = build_boros_furedi_clusters(9);
    AdversarialX ax = adversarial_x_boros_furedi(bf);
    CHECK(ax.pattern == "CCBCBB");
    CHECK(ax.pattern == ax.expected);
    auto ref = oracle::brute_count(bf.set.points(), ax.x);
    CHECK(ax.count.strict == ref.strict);
  }

  TEST_CASE("adversarial point for 45 points: 28/729 of n^3") {
    BorosFurediSet bf = build_boros_furedi_clusters(45);
    AdversarialX ax = adversarial_x_boros_furedi(bf);
    CHECK(ax.count.strict == 3500);
    CHECK(ax.abc == 3000);
    CHECK(ax.bbc == 250);
    CHECK(ax.bcc == 250);
    CHECK(ax.other == 0);
    CHECK(fraction(3500, 45 * 45 * 45) == Rational(28, 729));
    // breakdown from the barycentric oracle
    std::uint64_t abc = 0, bbc = 0, bcc = 0, other = 0;
    const auto& pts = bf.set.points();
    oracle::for_each_combination(45, 3, [&](const std::vector<int>& idx) {
      std::vector<ExactPoint> tri{pts[idx[0]], pts[idx[1]], pts[idx[2]]};
      if (oracle::locate(tri, ax.x) != oracle::Where::interior) return;
      int cl[3] = {bf.cluster_of(idx[0]), bf.cluster_of(idx[1]), bf.cluster_of(idx[2])};
      std::sort(cl, cl + 3);
      if (cl[0] == 0 && cl[1] == 1 && cl[2] == 2)
        ++abc;
      else if (cl[0] == 1 && cl[1] == 1 && cl[2] == 2)
        ++bbc;
      else if (cl[0] == 1 && cl[1] == 2 && cl[2] == 2)
        ++bcc;
      else
        ++other;
    });
    CHECK(abc == 3000);
    CHECK(bbc == 250);
    CHECK(bcc == 250);
    CHECK(other == 0);
  }

  TEST_CASE("report JSON has the documented fields") {
    StabReport r = reproduce("sector-triangles", params({{"m", "3"}, {"configs", "4"}}));
    CHECK(r.pass());
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["schema"] == 1);
    CHECK(j["experiment"] == "sector-triangles");
    for (const char* key : {"claim", "params", "counts", "samples", "checks", "notes", "pass", "seconds"})
      CHECK(j.contains(key));
    CHECK(j["pass"] == true);
    REQUIRE(!j["samples"].empty());
    auto s = j["samples"][0];
    for (const char* key : {"n", "label", "count", "normalizer", "ratio", "target", "target_value"}) CHECK(s.contains(key));
    CHECK(s["count"] == "8");
    std::string tsv = r.plot_data();
    CHECK(tsv.rfind("n\tlabel\tratio\ttarget", 0) == 0);
  }

  TEST_CASE("empty report does not pass") {
    StabReport r;
    CHECK_FALSE(r.pass());
    r.checks.push_back({"a", true, ""});
    CHECK(r.pass());
    r.checks.push_back({"b", false, ""});
    CHECK_FALSE(r.pass());
  }

  TEST_CASE("reproduce rejects unknown names and over-cap parameters") {
    CHECK_THROWS_AS(reproduce("no-such-experiment"), InputError);
    CHECK_THROWS_AS(reproduce("planar-oracle", params({{"max_n", "500"}})), InputError);
    CHECK_THROWS_AS(reproduce("wendel", params({{"d", "9"}})), InputError);
    CHECK_THROWS_AS(reproduce("sphere-depth", params({{"alpha", "3/5"}})), InputError);
    CHECK_THROWS_AS(reproduce("boros-furedi", params({{"n", "4"}})), InputError);
    CHECK_THROWS_AS(reproduce("wendel", params({{"trials", "ten"}})), InputError);
    auto names = experiment_names();
    CHECK(names.size() == 11);
    CHECK(std::find(names.begin(), names.end(), "fan-equipartition") != names.end());
  }

  TEST_CASE("antisymmetric count experiment in d = 3") {
    StabReport r = reproduce("wendel", params({{"d", "3"}, {"trials", "200"}}));
    CHECK(r.pass());
  }

  TEST_CASE("reports are deterministic in the seed") {
    auto a = reproduce("planar-oracle", params({{"instances", "6"}, {"max_n", "20"}, {"seed", "3"}}));
    auto b = reproduce("planar-oracle", params({{"instances", "6"}, {"max_n", "20"}, {"seed", "3"}}));
    auto strip = [](const StabReport& r) {
      auto j = nlohmann::json::parse(r.to_json());
      j.erase("seconds");
      for (auto& c : j["checks"]) c.erase("detail");
      return j;
    };
    CHECK(strip(a) == strip(b));
    CHECK(a.pass());
  }

  TEST_CASE("parameter helpers") {
    ExperimentParams p = params({{"k", "7"}, {"xs", "1,2,3"}, {"r", "3/6"}, {"rs", "1/5,0.5"}});
    CHECK(p.get_int("k", 0) == 7);
    CHECK(p.get_int("missing", 4) == 4);
    CHECK(p.get_list("xs", {}) == std::vector<long>{1, 2, 3});
    CHECK(p.get_rational("r", 0) == Rational(1, 2));
    CHECK(p.get_rational_list("rs", {}) == std::vector<Rational>{Rational(1, 5), Rational(1, 2)});
    CHECK(p.get("missing", "x") == "x");
    CHECK_THROWS_AS(params({{"k", "7x"}}).get_int("k", 0), InputError);
  }
}
