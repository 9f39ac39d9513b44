// Acceptance suite: one line per criterion.
//   acceptance             run all
//   acceptance --criterion N
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "stab/errors.hpp"
#include "stab/experiments.hpp"

using namespace stab;

namespace {

// pinned tolerances and parameters
const Rational kSphereLo(11, 50), kSphereHi(7, 25);  // 0.22 .. 0.28
constexpr long kSphereNeed = 8;
constexpr long kFanSlack2 = 2, kFanSlack3 = 3;
constexpr double kFanResidual = 1e-6;
constexpr double kFanSeconds = 300;
const Rational kClusterTol(1, 500);
constexpr long kFlatDepthSlack = 3;
constexpr double kPlanarSeconds = 60;
constexpr double kSeparatedSeconds = 600;

struct Outcome {
  bool pass = false;
  std::string detail;
};

ExperimentParams P(std::map<std::string, std::string> v) { return ExperimentParams{std::move(v)}; }

std::string count_of(const StabReport& r, const std::string& key) {
  for (const auto& [k, v] : r.counts)
    if (k == key) return v;
  return "";
}

std::string failed_checks(const StabReport& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.pass) s += (s.empty() ? "" : "; ") + c.name + " [" + c.detail + "]";
  return s;
}

Rational ratio(const ReportSample& s) { return fraction(s.count, s.normalizer); }

Integer choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::vector<std::uint64_t> parse_parts(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
  return out;
}

Outcome finish(const StabReport& r, bool extra, std::string detail) {
  Outcome o;
  o.pass = r.pass() && extra;
  if (!r.pass()) detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + failed_checks(r);
  o.detail = detail;
  return o;
}

Outcome c1() {
  StabReport r = reproduce("planar-oracle", P({{"instances", "200"}, {"max_n", "60"}}));
  bool ok = count_of(r, "mismatches") == "0" && count_of(r, "instances") == "200" && r.seconds < kPlanarSeconds;
  return finish(r, ok, "200 instances, mismatches " + count_of(r, "mismatches") + ", " + std::to_string(r.seconds) + " s");
}

Outcome c2() {
  StabReport r = reproduce("wendel", P({{"trials", "200"}, {"d", "2,3,4"}}));
  bool ok = true;
  for (int d = 2; d <= 4; ++d) ok = ok && count_of(r, "d" + std::to_string(d) + "_failures") == "0";
  return finish(r, ok, "failures d2/d3/d4: " + count_of(r, "d2_failures") + "/" + count_of(r, "d3_failures") + "/" +
                           count_of(r, "d4_failures"));
}

Outcome c3() {
  StabReport r = reproduce("sector-triangles", P({{"m", "2,3,4,5,6,7"}, {"configs", "100"}}));
  bool ok = r.samples.size() == 6;
  std::string detail;
  for (const auto& s : r.samples) {
    long m = s.n;
    Integer want = (m + 1) * m * (m - 1) / 3;
    ok = ok && s.count == want;
    detail += (detail.empty() ? "" : " ") + s.count.get_str();
  }
  return finish(r, ok, "certificates " + detail);
}

Outcome c4() {
  StabReport r = reproduce("separated-max", P({{"n2", "9,15,21,30"}, {"n3", "8,10,12"}}));
  bool ok = r.seconds <= kSeparatedSeconds;
  std::string detail;
  for (const auto& s : r.samples)
    if (s.label == "d=2 n=9") {
      ok = ok && s.count <= 27;
      detail = "n=9 max " + s.count.get_str();
    }
  return finish(r, ok, detail);
}

Outcome c5() {
  StabReport r = reproduce("sphere-depth", P({{"alpha", "1/5,3/10,1/2"}, {"n", "20,30"}, {"fit_n", "10,20"}, {"d", "2"}}));
  bool ok = true;
  int checked = 0;
  for (const auto& s : r.samples) {
    if (s.n != 20 && s.n != 30) continue;
    Rational alpha = parse_rational(s.label.substr(6, s.label.find(' ') - 6));
    Rational an = alpha * s.n;
    Integer a = an.get_num() / an.get_den();
    if (a * an.get_den() < an.get_num()) a += 1;
    long ai = a.get_si();
    Integer census = 2 * choose(ai, 3) + (s.n - 2 * ai) * choose(ai, 2);
    ok = ok && s.count == census;
    ++checked;
  }
  ok = ok && checked == 6;
  return finish(r, ok, std::to_string(checked) + " closed-form censuses recomputed");
}

Outcome c6() {
  StabReport r = reproduce("random-sphere", P({{"n", "60"}, {"seeds", "10"}, {"need", "8"}}));
  long inside = 0;
  for (const auto& s : r.samples) {
    Rational q = ratio(s);
    if (q >= kSphereLo && q <= kSphereHi) ++inside;
  }
  return finish(r, r.samples.size() == 10 && inside >= kSphereNeed, std::to_string(inside) + "/10 seeds in [0.22, 0.28]");
}

Outcome c7() {
  StabReport r = reproduce("fan-equipartition", P({{"n2", "600"}, {"n3", "1000"}, {"slack2", "2"}, {"slack3", "3"}}));
  bool ok = r.seconds <= kFanSeconds;
  auto p2 = parse_parts(count_of(r, "d=2 n=600 parts")), p3 = parse_parts(count_of(r, "d=3 n=1000 parts"));
  ok = ok && p2.size() == 6 && p3.size() == 10;
  for (auto c : p2) ok = ok && c + kFanSlack2 >= 100 && c <= 100 + kFanSlack2;
  for (auto c : p3) ok = ok && c + kFanSlack3 >= 100 && c <= 100 + kFanSlack3;
  for (const auto& c : r.checks)
    if (c.name.find("residual") != std::string::npos) ok = ok && std::stod(c.detail) <= kFanResidual;
  return finish(r, ok, "parts " + count_of(r, "d=2 n=600 parts") + " | " + count_of(r, "d=3 n=1000 parts") + ", " +
                           std::to_string(r.seconds) + " s");
}

Outcome c8() {
  StabReport r = reproduce("flat-stabbing", P({{"n", "20,40,60"}}));
  bool ok = r.samples.size() == 3;
  std::string detail;
  for (long n : {40L, 60L}) {
    std::string tag = "n=" + std::to_string(n);
    Integer met(count_of(r, tag + " triangles met")), bound(count_of(r, tag + " transversal bound"));
    ok = ok && met >= bound;
    detail += tag + ": " + met.get_str() + " >= " + bound.get_str() + "; ";
  }
  return finish(r, ok, detail + "fitted lower envelope on 1/25");
}

Outcome c9() {
  StabReport r = reproduce("boros-furedi", P({{"n", "45,90"}}));
  const Rational total(28, 729), abc(8, 243), bbc(2, 729), bcc(2, 729);
  bool ok = r.samples.size() == 8;
  std::string detail;
  for (const auto& s : r.samples) {
    const std::string kind = s.label.substr(s.label.find(' ') + 1);
    const Rational& want = kind == "all" ? total : kind == "ABC" ? abc : kind == "BBC" ? bbc : bcc;
    ok = ok && abs(ratio(s) - want) <= kClusterTol;
    if (kind == "all") detail += "n=" + std::to_string(s.n) + ": " + s.count.get_str() + " ";
  }
  return finish(r, ok, detail + "vs 28/729 n^3");
}

Outcome c10() {
  StabReport r = reproduce("flat-depth", P({{"n", "500"}, {"slack", "3"}}));
  bool ok = r.samples.size() == 1;
  if (ok) ok = Rational(r.samples[0].count) * 5 >= Rational(2 * 500 - 5 * kFlatDepthSlack);
  return finish(r, ok, "flat depth " + count_of(r, "flat_depth") + " vs 197");
}

Outcome c11() {
  StabReport r = reproduce("equivariance", P({{"trials", "100"}, {"tol", "1/1000000000"}, {"gamma_tol", "1/100000000"}}));
  bool ok = count_of(r, "sign_block_failures") == "0" && count_of(r, "sum_gamma_failures") == "0";
  std::string detail;
  for (const auto& c : r.checks) detail += c.detail + "; ";
  return finish(r, ok, detail);
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "planar fast count equals enumeration", c1},
    {2, "exactly two antisymmetric subsets contain 0", c2},
    {3, "sector configurations meet the triangle certificate", c3},
    {4, "separated construction max ratio envelope", c4},
    {5, "antipodal sphere set depth and census", c5},
    {6, "random circle ratio near 1/4", c6},
    {7, "fan equipartition", c7},
    {8, "fan spine stabs enough triangles", c8},
    {9, "three-cluster adversarial point", c9},
    {10, "fan spine flat depth", c10},
    {11, "test map equivariance", c11},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 1;
    }
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::fprintf(stderr, "criterion must lie in 1..%zu\n", kCriteria.size());
    return 1;
  }
  int failed = 0;
  for (const auto& c : kCriteria) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s (%s) [%.1f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
