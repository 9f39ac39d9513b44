#include "stab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "stab/combinatorics.hpp"
#include "stab/depth.hpp"
#include "stab/errors.hpp"
#include "stab/fan.hpp"

namespace stab {

namespace {

Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Rational power(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

std::string dec(const Rational& q, int digits = 6) { return to_decimal_string(q, digits); }

std::string str(std::uint64_t v) { return std::to_string(v); }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ExactPoint dyadic_point(std::mt19937_64& rng, int d, int bits) {
  std::uniform_int_distribution<long> u(-(1L << bits), 1L << bits);
  std::vector<Rational> c(static_cast<size_t>(d));
  for (auto& x : c) {
    x = Rational(u(rng));
    x /= Rational(Integer(1) << bits);
  }
  return ExactPoint(std::move(c));
}

ExactPoint grid_point(std::mt19937_64& rng, long r) {
  std::uniform_int_distribution<long> u(-r, r);
  long x = u(rng);
  return ExactPoint{Rational(x), Rational(u(rng))};
}


StabReport run_planar_oracle(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "planar-oracle";
  r.claim = "angular planar count equals exhaustive enumeration";
  const long instances = prm.get_int("instances", 200);
  const long max_n = prm.get_int("max_n", 60);
  const long seed = prm.get_int("seed", 0);
  if (max_n < 4 || max_n > 200) throw InputError("planar-oracle: max_n must lie in [4, 200]");
  r.params = {{"instances", std::to_string(instances)}, {"max_n", std::to_string(max_n)}, {"seed", std::to_string(seed)}};
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  long mismatches = 0, degenerate_instances = 0;
  for (long i = 0; i < instances; ++i) {
    const int n = 4 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 3));
    std::vector<ExactPoint> pts;
    ExactPoint p;
    bool grid = i % 2 == 0;  // small integer grid: many collinear triples
    auto draw = [&] { return grid ? grid_point(rng, n > 120 ? 10 : 6) : dyadic_point(rng, 2, 20); };
    while (static_cast<int>(pts.size()) < n) {
      ExactPoint q = draw();
      if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
    }
    do {
      p = draw();
    } while (std::find(pts.begin(), pts.end(), p) != pts.end());
    StabCount fast = count_containing_planar_fast(pts, p);
    StabCount brute = count_containing(pts, p);
    if (brute.degenerate > 0) ++degenerate_instances;
    if (fast.strict != brute.strict || fast.degenerate != brute.degenerate || fast.total != brute.total) ++mismatches;
  }
  r.seconds = clock.seconds();
  r.counts = {{"instances", std::to_string(instances)},
              {"mismatches", std::to_string(mismatches)},
              {"instances_with_boundary_hits", std::to_string(degenerate_instances)}};
  r.checks.push_back({"fast count equals enumeration", mismatches == 0, std::to_string(mismatches) + " mismatches"});
  r.checks.push_back({"runtime under 60 s", r.seconds < 60.0, dec(rational_from_double(r.seconds), 2) + " s"});
  return r;
}

StabReport run_wendel(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "wendel";
  r.claim = "d+1 points on the sphere: exactly two antisymmetric subsets of X u -X contain 0, and they are negatives";
  const long trials = prm.get_int("trials", 200);
  const long seed = prm.get_int("seed", 0);
  std::vector<long> dims = prm.get_list("d", {2, 3, 4});
  r.params = {{"trials", std::to_string(trials)}, {"seed", std::to_string(seed)}};
  for (long d : dims) {
    if (d < 2 || d > 8) throw InputError("wendel: d must lie in [2, 8]");
    long failures = 0, redraws = 0;
    for (long t = 0; t < trials; ++t) {
      std::uint64_t s = static_cast<std::uint64_t>(seed) * 1000003u + static_cast<std::uint64_t>(d * 100000 + t);
      for (;; ++s) {
        try {
          PointSet x = build_random_sphere(static_cast<int>(d) + 1, static_cast<int>(d), s);
          WendelResult w = wendel_antisymmetric_count(x);
          bool ok = w.count == 2;
          if (ok) {
            for (size_t i = 0; i < w.witnesses[0].size(); ++i) ok = ok && w.witnesses[0][i] == -w.witnesses[1][i];
          }
          if (!ok) ++failures;
          break;
        } catch (const DegenerateInputError&) {
          ++redraws;
        }
      }
    }
    r.counts.push_back({"d" + std::to_string(d) + "_failures", std::to_string(failures)});
    r.counts.push_back({"d" + std::to_string(d) + "_redraws", std::to_string(redraws)});
    r.checks.push_back({"d=" + std::to_string(d) + ": every trial gives 2", failures == 0,
                        std::to_string(trials - failures) + "/" + std::to_string(trials)});
  }
  r.seconds = clock.seconds();
  return r;
}

StabReport run_sector_triangles(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "sector-triangles";
  r.claim = "one point per sector of m concurrent lines: at least (m+1)m(m-1)/3 triangles contain the centre";
  std::vector<long> ms = prm.get_list("m", {2, 3, 4, 5, 6, 7});
  const long configs = prm.get_int("configs", 100);
  const long seed = prm.get_int("seed", 0);
  r.params = {{"configs", std::to_string(configs)}, {"seed", std::to_string(seed)}};
  for (long m : ms) {
    if (m < 2 || m > 30) throw InputError("sector-triangles: m must lie in [2, 30]");
    std::uint64_t cert = sector_triangle_certificate(static_cast<int>(m));
    long exact = 0, split_ok = 0, degenerate_ok = 0;
    for (long c = 0; c < configs; ++c) {
      std::uint64_t s = static_cast<std::uint64_t>(seed) * 7919u + static_cast<std::uint64_t>(m * 100000 + c);
      SectorConfiguration cfg = random_sector_configuration(static_cast<int>(m), s);
      SectorCheck chk = check_sector_configuration(cfg);
      if (chk.strict == cert && chk.closed == cert) ++exact;
      if (chk.strict == chk.short_triangles + chk.medium_triangles / 2) ++split_ok;
      int collinear = 1 + static_cast<int>(s % static_cast<std::uint64_t>(m));
      SectorConfiguration deg = random_sector_configuration(static_cast<int>(m), s ^ 0xabcdefu, collinear);
      SectorCheck dchk = check_sector_configuration(deg);
      if (dchk.closed >= cert) ++degenerate_ok;
    }
    std::string tag = "m=" + std::to_string(m);
    r.samples.push_back({m, tag, Integer(static_cast<unsigned long>(cert)), Integer(1), Rational(static_cast<long>(cert))});
    r.counts.push_back({tag + "_certificate", str(cert)});
    r.checks.push_back({tag + ": general position count equals " + str(cert), exact == configs,
                        std::to_string(exact) + "/" + std::to_string(configs)});
    r.checks.push_back({tag + ": short + medium/2 split", split_ok == configs,
                        std::to_string(split_ok) + "/" + std::to_string(configs)});
    r.checks.push_back({tag + ": collinear pairs keep count >= " + str(cert), degenerate_ok == configs,
                        std::to_string(degenerate_ok) + "/" + std::to_string(configs)});
  }
  r.seconds = clock.seconds();
  return r;
}

void add_envelope_check(StabReport& r, const std::string& name, const EnvelopeFit& fit) {
  r.checks.push_back({name, fit.pass, fit.detail});
}

StabReport run_separated_max(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "separated-max";
  r.claim = "separated construction: no point lies in more than (n/(d+1))^{d+1} + O(n^d) simplices";
  std::vector<long> sizes2 = prm.get_list("n2", {9, 15, 21, 30});
  std::vector<long> sizes3 = prm.get_list("n3", {8, 10, 12});
  const long restarts = prm.get_int("restarts", 64);
  const long seed = prm.get_int("seed", 0);
  std::string sched = prm.get("schedule", "quadratic");
  if (sched != "quadratic" && sched != "factorial") throw InputError("separated-max: schedule is quadratic or factorial");
  ChainSchedule schedule = sched == "factorial" ? ChainSchedule::factorial : ChainSchedule::quadratic;
  r.params = {{"schedule", sched}, {"restarts", std::to_string(restarts)}, {"seed", std::to_string(seed)}};

  auto run = [&](int d, const std::vector<long>& sizes, MaxStabMode mode) {
    std::vector<std::pair<long, Rational>> pts;
    Rational target = power(Rational(1, d + 1), d + 1);
    for (long n : sizes) {
      if (n < d + 1 || (mode == MaxStabMode::exact && n > 60) || n > 40 * d)
        throw InputError("separated-max: size out of range");
      PointSet s = build_separated_set(static_cast<int>(n), d, schedule);
      MaxStabOptions opt;
      opt.mode = mode;
      opt.restarts = static_cast<int>(restarts);
      opt.seed = static_cast<std::uint64_t>(seed);
      MaxStabResult m = max_stab_point(s, opt);
      Integer norm = 1;
      for (int i = 0; i <= d; ++i) norm *= n;
      std::string tag = "d=" + std::to_string(d) + " n=" + std::to_string(n);
      r.samples.push_back({n, tag, Integer(static_cast<unsigned long>(m.count.strict)), norm, target});
      r.counts.push_back({tag + " max", str(m.count.strict) + (mode == MaxStabMode::heuristic ? " (lower bound)" : "")});
      TypeProfile tp = type_profile(s, m.point);
      r.counts.push_back({tag + " type violations", str(tp.violations)});
      pts.push_back({n, fraction(Integer(static_cast<unsigned long>(m.count.strict)), norm)});
      if (d == 2 && n == 9)
        r.checks.push_back({"d=2 n=9: max count <= 27", m.count.strict <= 27, "max = " + str(m.count.strict)});
    }
    EnvelopeFit one = fit_envelope(pts, target, Bound::upper, 1);
    add_envelope_check(r, "d=" + std::to_string(d) + ": ratio <= " + to_fraction_string(target) + " + C/n", one);
    EnvelopeFit two = fit_envelope(pts, target, Bound::upper, 2);
    r.notes.push_back("d=" + std::to_string(d) + " two-term fit: " + two.detail + (two.pass ? " (holds)" : " (fails)"));
  };
  run(2, sizes2, MaxStabMode::exact);
  if (!sizes3.empty()) run(3, sizes3, MaxStabMode::heuristic);
  r.seconds = clock.seconds();
  return r;
}

StabReport run_sphere_depth(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "sphere-depth";
  r.claim = "A u -A u cluster: origin at depth ceil(alpha n), count follows ((d+1)a^d - 2d a^{d+1}) n^{d+1}/(d+1)!";
  std::vector<Rational> alphas = prm.get_rational_list("alpha", {Rational(1, 5), Rational(3, 10), Rational(1, 2)});
  std::vector<long> sizes = prm.get_list("n", {20, 30});
  std::vector<long> fit = prm.get_list("fit_n", {10, 20});
  const long seed = prm.get_int("seed", 0);
  const int d = static_cast<int>(prm.get_int("d", 2));
  if (d < 2 || d > 4) throw InputError("sphere-depth: d must lie in [2, 4]");
  r.params = {{"d", std::to_string(d)}, {"seed", std::to_string(seed)}};
  std::vector<long> sweep = fit;
  sweep.insert(sweep.end(), sizes.begin(), sizes.end());
  std::sort(sweep.begin(), sweep.end());
  sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
  for (const Rational& alpha : alphas) {
    if (alpha <= 0 || alpha > Rational(1, 2)) throw InputError("sphere-depth: alpha must lie in (0, 1/2]");
    Rational target = alpha_curve(d, alpha);
    std::vector<std::pair<long, Rational>> pts;
    for (long n : sweep) {
      if (n > 60) throw InputError("sphere-depth: n capped at 60");
      SphereConfig cfg;
      cfg.n = static_cast<int>(n);
      cfg.d = d;
      cfg.alpha = alpha;
      cfg.seed = static_cast<std::uint64_t>(seed);
      SphereSet sp = build_sphere_antipodal(cfg);
      std::string tag = "alpha=" + to_fraction_string(alpha) + " n=" + std::to_string(n);
      StabCount brute = count_containing(sp.set, origin(d));
      Integer norm = 1;
      for (int i = 0; i <= d; ++i) norm *= n;
      r.samples.push_back({n, tag, Integer(static_cast<unsigned long>(brute.strict)), norm, target});
      pts.push_back({n, fraction(Integer(static_cast<unsigned long>(brute.strict)), norm)});
      if (std::find(sizes.begin(), sizes.end(), n) == sizes.end()) continue;
      DepthResult dep = depth(sp.set, origin(d));
      r.counts.push_back({tag + " depth", str(dep.depth)});
      r.counts.push_back({tag + " strict", str(brute.strict)});
      r.counts.push_back({tag + " closed", str(brute.strict + brute.degenerate)});
      r.checks.push_back({tag + ": depth(origin) = " + std::to_string(sp.a), dep.depth == static_cast<std::uint64_t>(sp.a),
                          "depth = " + str(dep.depth)});
      bool census = brute.strict == sp.census_strict &&
                    brute.strict + brute.degenerate == sp.census_strict + sp.census_antipodal;
      r.checks.push_back({tag + ": count equals census", census,
                          str(brute.strict) + " + " + str(brute.degenerate) + " vs " + str(sp.census_strict) + " + " +
                              str(sp.census_antipodal)});
    }
    EnvelopeFit env = fit_envelope(pts, target, Bound::two_sided, 2);
    add_envelope_check(r, "alpha=" + to_fraction_string(alpha) + ": ratio tracks " + to_fraction_string(target), env);
  }
  r.seconds = clock.seconds();
  return r;
}

StabReport run_random_sphere(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "random-sphere";
  r.claim = "random points on the circle: the origin lies in about 1/4 of all triangles";
  const long n = prm.get_int("n", 60);
  const long seeds = prm.get_int("seeds", 10);
  const long seed = prm.get_int("seed", 0);
  const long need = prm.get_int("need", 8);
  Rational lo = prm.get_rational("lo", Rational(11, 50)), hi = prm.get_rational("hi", Rational(7, 25));
  if (n < 3 || n > 2000) throw InputError("random-sphere: n must lie in [3, 2000]");
  r.params = {{"n", std::to_string(n)}, {"seeds", std::to_string(seeds)}, {"seed", std::to_string(seed)},
              {"window", to_fraction_string(lo) + ".." + to_fraction_string(hi)}};
  long inside = 0;
  Integer total = binomial(n, 3);
  for (long k = 0; k < seeds; ++k) {
    PointSet s = build_random_sphere(static_cast<int>(n), 2, static_cast<std::uint64_t>(seed + k));
    StabCount c = count_containing_planar_fast(s, origin(2));
    Rational ratio = fraction(Integer(static_cast<unsigned long>(c.strict)), total);
    if (ratio >= lo && ratio <= hi) ++inside;
    r.samples.push_back({n, "seed=" + std::to_string(seed + k), Integer(static_cast<unsigned long>(c.strict)), total,
                         Rational(1, 4)});
  }
  r.counts = {{"seeds_in_window", std::to_string(inside)}};
  r.checks.push_back({"ratio in window for >= " + std::to_string(need) + " seeds", inside >= need,
                      std::to_string(inside) + "/" + std::to_string(seeds)});
  r.seconds = clock.seconds();
  return r;
}

std::string join_counts(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + str(v[i]);
  return s;
}

StabReport run_fan_equipartition(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "fan-equipartition";
  r.claim = "2d-1 hyperplanes through a (d-2)-flat split n points into 4d-2 parts of n/(4d-2) + O(1)";
  const long n2 = prm.get_int("n2", 600), n3 = prm.get_int("n3", 1000);
  const long seed = prm.get_int("seed", 0);
  const long slack2 = prm.get_int("slack2", 2), slack3 = prm.get_int("slack3", 3);
  Rational tol = prm.get_rational("tol", Rational(1, 1000000));
  const long time_cap = prm.get_int("time_cap", 300);
  r.params = {{"n2", std::to_string(n2)}, {"n3", std::to_string(n3)}, {"seed", std::to_string(seed)},
              {"tol", to_fraction_string(tol)}};
  auto run = [&](int d, long n, long slack) {
    if (n < 4 * d - 2 || n > 5000) throw InputError("fan-equipartition: n out of range");
    if (n == 0) return;
    PointSet s = build_random_ball(static_cast<int>(n), d, static_cast<std::uint64_t>(seed));
    FanSolveOptions opt;
    opt.tolerance = tol.get_d();
    opt.seed = static_cast<std::uint64_t>(seed);
    std::string tag = "d=" + std::to_string(d) + " n=" + std::to_string(n);
    try {
      FanSolveResult res = solve_equipartition_fan(s, d, opt);
      const long parts = 4 * d - 2;
      auto [mn, mx] = std::minmax_element(res.fan.part_counts.begin(), res.fan.part_counts.end());
      Rational ideal = fraction(n, parts);
      bool within = Rational(static_cast<long>(*mx)) <= ideal + slack && Rational(static_cast<long>(*mn)) >= ideal - slack;
      r.counts.push_back({tag + " parts", join_counts(res.fan.part_counts)});
      r.counts.push_back({tag + " evaluations", std::to_string(res.evaluations)});
      r.checks.push_back({tag + ": parts within " + dec(ideal, 1) + " +- " + std::to_string(slack), within,
                          join_counts(res.fan.part_counts)});
      std::ostringstream rs;
      rs << res.fan.residual;
      r.checks.push_back({tag + ": residual <= " + to_fraction_string(tol), res.fan.residual <= tol.get_d(), rs.str()});
    } catch (const SolverError& e) {
      std::ostringstream rs;
      rs << e.what() << " (residual " << e.residual() << ")";
      r.checks.push_back({tag + ": solver converged", false, rs.str()});
    }
  };
  run(2, n2, slack2);
  run(3, n3, slack3);
  r.seconds = clock.seconds();
  r.checks.push_back({"runtime under " + std::to_string(time_cap) + " s", r.seconds <= static_cast<double>(time_cap),
                      dec(rational_from_double(r.seconds), 1) + " s"});
  return r;
}

// prod |P_k| * cert / max over part triples of prod of the other parts
Integer transversal_bound(const std::vector<std::uint64_t>& parts, int m) {
  Integer prod = 1;
  for (auto p : parts) prod *= static_cast<unsigned long>(p);
  if (prod == 0) return 0;
  const int k = static_cast<int>(parts.size());
  Integer worst = 0;
  for_each_subset(k, 3, [&](const std::vector<int>& t) {
    Integer rest = 1;
    for (int i = 0; i < k; ++i)
      if (i != t[0] && i != t[1] && i != t[2]) rest *= static_cast<unsigned long>(parts[i]);
    if (rest > worst) worst = rest;
    return true;
  });
  Integer num = prod * static_cast<unsigned long>(sector_triangle_certificate(m));
  Integer q = num / worst;
  if (q * worst < num) q += 1;
  return q;
}

StabReport run_flat_stabbing(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "flat-stabbing";
  r.claim = "the spine of an equipartitioning fan meets (d^2-d)/(6(2d-1)^2) n^3 - O(n^2) triangles";
  std::vector<long> sizes = prm.get_list("n", {20, 40, 60});
  const long seed = prm.get_int("seed", 0);
  const int d = 3;
  const int m = 2 * d - 1;
  r.params = {{"d", "3"}, {"seed", std::to_string(seed)}};
  Rational target = constants(d).thm5_lower;
  std::vector<std::pair<long, Rational>> pts;
  for (long n : sizes) {
    if (n < 4 * d - 2 || n > 200) throw InputError("flat-stabbing: n must lie in [10, 200]");
    PointSet s = build_random_ball(static_cast<int>(n), d, static_cast<std::uint64_t>(seed) + 17);
    std::string tag = "n=" + std::to_string(n);
    FanSolveResult res;
    try {
      res = solve_equipartition_fan(s, d, {});
    } catch (const SolverError& e) {
      r.checks.push_back({tag + ": solver converged", false, e.what()});
      continue;
    }
    StabCount c = count_triangles_stabbed(s, res.fan.spine);
    std::uint64_t met = c.strict + c.degenerate;
    Integer bound = transversal_bound(res.fan.part_counts, m);
    Integer norm = Integer(n) * n * n;
    r.samples.push_back({n, tag, Integer(static_cast<unsigned long>(met)), norm, target});
    pts.push_back({n, fraction(Integer(static_cast<unsigned long>(met)), norm)});
    r.counts.push_back({tag + " parts", join_counts(res.fan.part_counts)});
    r.counts.push_back({tag + " triangles met", str(met)});
    r.counts.push_back({tag + " transversal bound", bound.get_str()});
    r.checks.push_back({tag + ": met >= transversal bound", Integer(static_cast<unsigned long>(met)) >= bound,
                        str(met) + " vs " + bound.get_str()});
  }
  if (pts.size() >= 3) {
    EnvelopeFit env = fit_envelope(pts, target, Bound::lower, 1);
    add_envelope_check(r, "ratio >= " + to_fraction_string(target) + " - C/n", env);
  }
  r.seconds = clock.seconds();
  return r;
}

StabReport run_boros_furedi(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "boros-furedi";
  r.claim = "three-cluster construction: a point in (1/27 + 1/729) n^3 triangles";
  std::vector<long> sizes = prm.get_list("n", {45, 90});
  Rational scale = prm.get_rational("cluster_scale", Rational(1, 1024));
  Rational tol = prm.get_rational("tol", Rational(1, 500));
  r.params = {{"cluster_scale", to_fraction_string(scale)}, {"tol", to_fraction_string(tol)}};
  const Rational total(28, 729), abc(8, 243), bbc(2, 729), bcc(2, 729);
  for (long n : sizes) {
    if (n < 9 || n > 300) throw InputError("boros-furedi: n must lie in [9, 300]");
    BorosFurediSet bf = build_boros_furedi_clusters(static_cast<int>(n), scale);
    std::string tag = "n=" + std::to_string(n);
    AdversarialX ax;
    try {
      ax = adversarial_x_boros_furedi(bf);
    } catch (const ConstructionError& e) {
      r.checks.push_back({tag + ": interleaving achieved", false, e.what()});
      continue;
    }
    Integer norm = Integer(n) * n * n;
    auto within = [&](std::uint64_t c, const Rational& t) {
      Rational q = fraction(Integer(static_cast<unsigned long>(c)), norm);
      return abs(q - t) <= tol;
    };
    r.samples.push_back({n, tag + " all", Integer(static_cast<unsigned long>(ax.count.strict)), norm, total});
    r.samples.push_back({n, tag + " ABC", Integer(static_cast<unsigned long>(ax.abc)), norm, abc});
    r.samples.push_back({n, tag + " BBC", Integer(static_cast<unsigned long>(ax.bbc)), norm, bbc});
    r.samples.push_back({n, tag + " BCC", Integer(static_cast<unsigned long>(ax.bcc)), norm, bcc});
    r.counts.push_back({tag + " pattern", ax.pattern});
    r.counts.push_back({tag + " strict", str(ax.count.strict)});
    r.counts.push_back({tag + " degenerate", str(ax.count.degenerate)});
    r.counts.push_back({tag + " ABC/BBC/BCC/other", str(ax.abc) + "/" + str(ax.bbc) + "/" + str(ax.bcc) + "/" + str(ax.other)});
    r.checks.push_back({tag + ": interleaving achieved", ax.pattern == ax.expected, ax.pattern});
    r.checks.push_back({tag + ": count/n^3 within tol of 28/729", within(ax.count.strict, total),
                        dec(fraction(Integer(static_cast<unsigned long>(ax.count.strict)), norm))});
    r.checks.push_back({tag + ": per-type ratios within tol", within(ax.abc, abc) && within(ax.bbc, bbc) && within(ax.bcc, bcc),
                        dec(fraction(Integer(static_cast<unsigned long>(ax.abc)), norm)) + " / " +
                            dec(fraction(Integer(static_cast<unsigned long>(ax.bbc)), norm)) + " / " +
                            dec(fraction(Integer(static_cast<unsigned long>(ax.bcc)), norm))});
  }
  r.seconds = clock.seconds();
  return r;
}

StabReport run_flat_depth(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "flat-depth";
  r.claim = "the fan spine lies at depth (d-1)n/(2d-1) - O(1)";
  const long n = prm.get_int("n", 500);
  const long seed = prm.get_int("seed", 0);
  const long slack = prm.get_int("slack", 3);
  const int d = 3;
  if (n < 10 || n > 3000) throw InputError("flat-depth: n must lie in [10, 3000]");
  r.params = {{"d", "3"}, {"n", std::to_string(n)}, {"seed", std::to_string(seed)}, {"slack", std::to_string(slack)}};
  PointSet s = build_random_ball(static_cast<int>(n), d, static_cast<std::uint64_t>(seed) + 29);
  try {
    FanSolveResult res = solve_equipartition_fan(s, d, {});
    DepthResult fd = flat_depth(s, res.fan.spine);
    Rational need = fraction((d - 1) * n, 2 * d - 1) - slack;
    r.counts = {{"parts", join_counts(res.fan.part_counts)}, {"flat_depth", str(fd.depth)}};
    r.samples.push_back({n, "flat depth", Integer(static_cast<unsigned long>(fd.depth)), Integer(n),
                         fraction(d - 1, 2 * d - 1)});
    r.checks.push_back({"flat depth >= " + dec(need, 1), Rational(static_cast<long>(fd.depth)) >= need,
                        "depth = " + str(fd.depth)});
  } catch (const SolverError& e) {
    r.checks.push_back({"solver converged", false, e.what()});
  }
  r.seconds = clock.seconds();
  return r;
}

StabReport run_equivariance(const ExperimentParams& prm) {
  Stopwatch clock;
  StabReport r;
  r.experiment = "equivariance";
  r.claim = "flipping v negates the lambda block of G, flipping w negates the mu block";
  const long trials = prm.get_int("trials", 100);
  const long seed = prm.get_int("seed", 0);
  const double tol = prm.get_rational("tol", Rational(1, 1000000000)).get_d();
  const double gamma_tol = prm.get_rational("gamma_tol", Rational(1, 100000000)).get_d();
  r.params = {{"trials", std::to_string(trials)}, {"seed", std::to_string(seed)}};
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::normal_distribution<double> gauss;
  double worst = 0, worst_gamma = 0;
  long bad = 0, bad_gamma = 0;
  for (long t = 0; t < trials; ++t) {
    const int d = 2 + static_cast<int>(t % 3);
    const int n = 40 + static_cast<int>(rng() % 160);
    SampledMass mass = sampled_mass(build_random_ball(n, d, rng()));
    std::vector<double> v(static_cast<size_t>(d)), w(static_cast<size_t>(d));
    for (auto& x : v) x = gauss(rng);
    for (auto& x : w) x = gauss(rng);
    Frame f = orthonormal_frame(v, w);
    std::vector<double> nv = f.v, nw = f.w;
    for (auto& x : nv) x = -x;
    for (auto& x : nw) x = -x;
    FanTestValue g = test_map(mass, f);
    FanTestValue gv = test_map(mass, Frame(nv, f.w));
    FanTestValue gw = test_map(mass, Frame(f.v, nw));
    double dev = 0;
    for (size_t i = 0; i < g.G.size(); ++i) {
      bool lambda = static_cast<int>(i) < d - 1;
      dev = std::max(dev, std::fabs(gv.G[i] - (lambda ? -g.G[i] : g.G[i])));
      dev = std::max(dev, std::fabs(gw.G[i] - (lambda ? g.G[i] : -g.G[i])));
    }
    double gam = std::max({std::fabs(g.sum_gamma), std::fabs(gv.sum_gamma), std::fabs(gw.sum_gamma)});
    worst = std::max(worst, dev);
    worst_gamma = std::max(worst_gamma, gam);
    if (dev > tol) ++bad;
    if (gam > gamma_tol) ++bad_gamma;
  }
  std::ostringstream a, b;
  a << "max deviation " << worst;
  b << "max |sum gamma| " << worst_gamma;
  r.counts = {{"sign_block_failures", std::to_string(bad)}, {"sum_gamma_failures", std::to_string(bad_gamma)}};
  r.checks.push_back({"sign-block equivariance to 1e-9", bad == 0, a.str()});
  r.checks.push_back({"sum gamma <= 1e-8 at every balanced spine", bad_gamma == 0, b.str()});
  r.seconds = clock.seconds();
  return r;
}

using Runner = std::function<StabReport(const ExperimentParams&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> reg = {
      {"planar-oracle", run_planar_oracle},       {"wendel", run_wendel},
      {"sector-triangles", run_sector_triangles}, {"separated-max", run_separated_max},
      {"sphere-depth", run_sphere_depth},         {"random-sphere", run_random_sphere},
      {"fan-equipartition", run_fan_equipartition}, {"flat-stabbing", run_flat_stabbing},
      {"boros-furedi", run_boros_furedi},         {"flat-depth", run_flat_depth},
      {"equivariance", run_equivariance},
  };
  return reg;
}

ExactPoint on_circle(const Rational& t) {
  Rational den = 1 + t * t;
  return ExactPoint{Rational((1 - t * t) / den), Rational(2 * t / den)};
}

// intersection of line p1p2 with line p3p4
ExactPoint meet(const ExactPoint& p1, const ExactPoint& p2, const ExactPoint& p3, const ExactPoint& p4) {
  Rational e1x = p2[0] - p1[0], e1y = p2[1] - p1[1], e2x = p4[0] - p3[0], e2y = p4[1] - p3[1];
  Rational w = e1x * e2y - e1y * e2x;
  if (sgn(w) == 0) throw ConstructionError("adversarial x: parallel guide lines");
  Rational t = ((p3[0] - p1[0]) * e2y - (p3[1] - p1[1]) * e2x) / w;
  return ExactPoint{Rational(p1[0] + t * e1x), Rational(p1[1] + t * e1y)};
}

}  // namespace

ConstantsRow constants(int d) {
  if (d < 2) throw InputError("constants: d must be >= 2");
  ConstantsRow c;
  c.d = d;
  Integer fact = factorial(d + 1);
  Integer pw = 1;
  for (int i = 0; i <= d; ++i) pw *= d + 1;
  c.wagner_lower = fraction(Integer(d * d + 1), fact * pw);
  c.upper_new = fraction(Integer(1), pw);
  c.upper_classic = fraction(Integer(1), (Integer(1) << d) * fact);
  c.thm5_lower = Rational(1, 24) * (1 - Rational(1, (2 * d - 1) * (2 * d - 1)));
  c.alpha_coef_d = fraction(Integer(d + 1), fact);
  c.alpha_coef_d1 = fraction(Integer(-2 * d), fact);
  return c;
}

Rational alpha_curve(int d, const Rational& alpha) {
  ConstantsRow c = constants(d);
  return c.alpha_coef_d * power(alpha, d) + c.alpha_coef_d1 * power(alpha, d + 1);
}

EnvelopeFit fit_envelope(const std::vector<std::pair<long, Rational>>& samples, const Rational& target, Bound bound,
                         int terms) {
  if (samples.size() < 3) throw InputError("fit_envelope: need at least three sizes");
  if (terms != 1 && terms != 2) throw InputError("fit_envelope: terms is 1 or 2");
  auto s = samples;
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  EnvelopeFit out;
  out.terms = terms;
  out.fitted_on = {s[0].first, s[1].first};
  std::ostringstream msg;
  auto err = [&](size_t i) { return Rational(s[i].second - target); };
  if (terms == 1) {
    Rational c = 0;
    for (size_t i = 0; i < 2; ++i) {
      Rational e = err(i) * s[i].first;
      if (bound == Bound::lower) e = -e;
      if (bound == Bound::two_sided) e = abs(e);
      if (e > c) c = e;
    }
    out.c1 = c;
    msg << "C = " << dec(c) << " from n=" << s[0].first << "," << s[1].first;
  } else {
    Rational n1(s[0].first), n2(s[1].first);
    Rational e1 = err(0), e2 = err(1);
    Rational D = 1 / (n1 * n2 * n2) - 1 / (n2 * n1 * n1);
    out.c1 = (e1 / (n2 * n2) - e2 / (n1 * n1)) / D;
    out.c2 = (e2 / n1 - e1 / n2) / D;
    msg << "C1 = " << dec(out.c1) << ", C2 = " << dec(out.c2) << " from n=" << s[0].first << "," << s[1].first;
  }
  out.pass = true;
  for (size_t i = 2; i < s.size(); ++i) {
    Rational n(s[i].first);
    Rational e = err(i);
    Rational env;
    bool ok;
    if (terms == 1) {
      env = out.c1 / n;
      ok = bound == Bound::upper ? e <= env : bound == Bound::lower ? -e <= env : abs(e) <= env;
    } else {
      Rational model = out.c1 / n + out.c2 / (n * n);
      env = abs(out.c1) / n + abs(out.c2) / (n * n);
      ok = bound == Bound::upper ? e <= model : bound == Bound::lower ? e >= model : abs(e) <= env;
      if (bound != Bound::two_sided) env = model;
    }
    out.validated_on.push_back(s[i].first);
    msg << "; n=" << s[i].first << ": ratio-target " << dec(e) << (ok ? " within " : " outside ") << dec(env);
    out.pass = out.pass && ok;
  }
  out.detail = msg.str();
  return out;
}

AdversarialX adversarial_x_boros_furedi(const BorosFurediSet& bf) {
  const int KA = bf.size_a, KB = bf.size_b, KC = bf.size_c;
  if (KB < 3 || KC < 3) throw InputError("adversarial x: clusters too small");
  const int b0 = KA, c0 = KA + KB;
  const int q = KC / 3, qb = KB / 3;
  // C index 0 is nearest A and parameters increase toward A
  Rational gap = bf.param[c0 + q - 1] - bf.param[c0 + q];
  ExactPoint T0 = on_circle(bf.param[c0 + q] + gap / 4);
  ExactPoint T1 = on_circle(bf.param[c0] + gap / 4);
  AdversarialX out;
  out.x = meet(bf.set[b0], T0, bf.set[b0 + qb], T1);

  // B' = second intersection of line (b, x) with the circle
  std::vector<std::pair<ExactPoint, char>> all;
  for (int i = 0; i < KB; ++i) {
    const ExactPoint& b = bf.set[b0 + i];
    ExactPoint dv = out.x - b;
    Rational t = -2 * dot(b, dv) / dot(dv, dv);
    all.push_back({b + t * dv, 'B'});
  }
  for (int i = 0; i < KC; ++i) all.push_back({bf.set[c0 + i], 'C'});
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return sgn(a.first[0] * b.first[1] - a.first[1] * b.first[0]) > 0;
  });
  for (const auto& p : all) out.pattern += p.second;
  out.expected = std::string(static_cast<size_t>(KC - q), 'C') + std::string(static_cast<size_t>(qb), 'B') +
                 std::string(static_cast<size_t>(q), 'C') + std::string(static_cast<size_t>(KB - qb), 'B');
  if (out.pattern != out.expected)
    throw ConstructionError("adversarial x: interleaving " + out.pattern + " not achieved; tighten cluster_scale");

  out.count = count_containing(bf.set, out.x);
  const int n = static_cast<int>(bf.set.size());
  std::array<ExactPoint, 3> tri;
  for_each_subset(n, 3, [&](const std::vector<int>& idx) {
    for (int k = 0; k < 3; ++k) tri[k] = bf.set[idx[k]];
    if (classify_in_simplex(std::span<const ExactPoint>(tri), out.x) != Inclusion::interior) return true;
    int cl[3] = {bf.cluster_of(idx[0]), bf.cluster_of(idx[1]), bf.cluster_of(idx[2])};
    std::sort(cl, cl + 3);
    if (cl[0] == 0 && cl[1] == 1 && cl[2] == 2)
      ++out.abc;
    else if (cl[0] == 1 && cl[1] == 1 && cl[2] == 2)
      ++out.bbc;
    else if (cl[0] == 1 && cl[1] == 2 && cl[2] == 2)
      ++out.bcc;
    else
      ++out.other;
    return true;
  });
  return out;
}

bool StabReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.pass; });
}

std::string StabReport::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["experiment"] = experiment;
  j["claim"] = claim;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : counts) c[k] = v;
  j["counts"] = c;
  nlohmann::ordered_json s = nlohmann::ordered_json::array();
  for (const auto& x : samples) {
    Rational ratio = fraction(x.count, x.normalizer);
    s.push_back({{"n", x.n},
                 {"label", x.label},
                 {"count", x.count.get_str()},
                 {"normalizer", x.normalizer.get_str()},
                 {"ratio", ratio.get_d()},
                 {"target", to_fraction_string(x.target)},
                 {"target_value", x.target.get_d()}});
  }
  j["samples"] = s;
  nlohmann::ordered_json ch = nlohmann::ordered_json::array();
  for (const auto& x : checks) ch.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
  j["checks"] = ch;
  j["notes"] = notes;
  j["pass"] = pass();
  j["seconds"] = seconds;
  return j.dump(indent);
}

std::string StabReport::plot_data() const {
  std::ostringstream os;
  os << "n\tlabel\tratio\ttarget\n";
  for (const auto& x : samples)
    os << x.n << '\t' << x.label << '\t' << to_decimal_string(fraction(x.count, x.normalizer), 10) << '\t'
       << to_decimal_string(x.target, 10) << '\n';
  return os.str();
}

std::string ExperimentParams::get(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

long ExperimentParams::get_int(const std::string& key, long fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError("parameter " + key + ": not an integer: " + it->second);
  }
}

std::vector<long> ExperimentParams::get_list(const std::string& key, const std::vector<long>& fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  std::vector<long> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw InputError("parameter " + key + ": bad list entry " + item);
    }
  }
  return out;
}

Rational ExperimentParams::get_rational(const std::string& key, const Rational& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : parse_rational(it->second);
}

std::vector<Rational> ExperimentParams::get_rational_list(const std::string& key,
                                                          const std::vector<Rational>& fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  std::vector<Rational> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

StabReport reproduce(const std::string& experiment, const ExperimentParams& params) {
  for (const auto& [name, fn] : registry())
    if (name == experiment) return fn(params);
  throw InputError("unknown experiment: " + experiment);
}

}  // namespace stab
