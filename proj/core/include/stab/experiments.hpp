#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stab/constructions.hpp"
#include "stab/exact_geom.hpp"
#include "stab/stab_count.hpp"

namespace stab {

struct ConstantsRow {
  int d = 0;
  Rational wagner_lower;   // (d^2+1) / ((d+1)! (d+1)^{d+1})
  Rational upper_new;      // (d+1)^{-(d+1)}
  Rational upper_classic;  // 1 / (2^d (d+1)!)
  Rational thm5_lower;     // (1/24)(1 - 1/(2d-1)^2)
  // alpha curve = coef_d alpha^d + coef_d1 alpha^{d+1}
  Rational alpha_coef_d, alpha_coef_d1;
};

ConstantsRow constants(int d);
// ((d+1) alpha^d - 2d alpha^{d+1}) / (d+1)!
Rational alpha_curve(int d, const Rational& alpha);

// Fits the lower-order term of |ratio - target| on the two smallest sizes and
// validates the rest. terms = 1: C/n; terms = 2: C1/n + C2/n^2.
enum class Bound { upper, lower, two_sided };

struct EnvelopeFit {
  int terms = 1;
  Rational c1, c2;
  std::vector<long> fitted_on, validated_on;
  bool pass = false;
  std::string detail;
};

EnvelopeFit fit_envelope(const std::vector<std::pair<long, Rational>>& samples, const Rational& target, Bound bound,
                         int terms = 1);

struct AdversarialX {
  ExactPoint x;
  std::string pattern;   // clusters of B' u C in angular order
  std::string expected;
  StabCount count;
  std::uint64_t abc = 0, bbc = 0, bcc = 0, other = 0;  // strict triangles by cluster type
};

// Throws ConstructionError when the interleaving is not achieved.
AdversarialX adversarial_x_boros_furedi(const BorosFurediSet& bf);

struct ReportSample {
  long n = 0;
  std::string label;
  Integer count;
  Integer normalizer;  // ratio = count / normalizer
  Rational target;
};

struct ReportCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct StabReport {
  std::string experiment;
  std::string claim;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> counts;
  std::vector<ReportSample> samples;
  std::vector<ReportCheck> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;

  bool pass() const;
  std::string to_json(int indent = 2) const;
  // n, label, ratio, target as TSV
  std::string plot_data() const;
};

struct ExperimentParams {
  std::map<std::string, std::string> values;

  std::string get(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::vector<long> get_list(const std::string& key, const std::vector<long>& fallback) const;
  Rational get_rational(const std::string& key, const Rational& fallback) const;
  std::vector<Rational> get_rational_list(const std::string& key, const std::vector<Rational>& fallback) const;
};

std::vector<std::string> experiment_names();

// Throws InputError on an unknown experiment or a parameter over its cap.
StabReport reproduce(const std::string& experiment, const ExperimentParams& params = {});

}  // namespace stab
