#include "stab/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "stab/errors.hpp"

namespace stab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("not a rational number: '" + std::string(whole) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InputError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool eneg = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      eneg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw InputError("bad exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_part));
    if (eneg) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw InputError("not a rational number: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw InputError("not a rational number: '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational q{Integer(digits, 10)};
  if (exponent > 0) q *= pow10(static_cast<unsigned long>(exponent));
  if (exponent < 0) q /= pow10(static_cast<unsigned long>(-exponent));
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite coordinate");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_exact_decimal(const Rational& q, int max_digits) {
  // A terminating expansion exists iff den = 2^a 5^b.
  Integer den = q.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(5).get_mpz_t());
  if (den != 1) return {};
  unsigned long scale = std::max(twos, fives);
  if (scale > static_cast<unsigned long>(max_digits)) return {};
  if (scale == 0) return q.get_num().get_str();
  Integer scaled = q.get_num() * pow10(scale) / q.get_den();
  bool neg = scaled < 0;
  std::string s = Integer(abs(scaled)).get_str();
  if (s.size() <= scale) s.insert(0, scale + 1 - s.size(), '0');
  s.insert(s.size() - scale, ".");
  return neg ? "-" + s : s;
}

std::string to_decimal_string(const Rational& q, int digits) {
  Integer scaled = q.get_num() * pow10(static_cast<unsigned long>(digits));
  Integer r;
  mpz_tdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  bool neg = sgn(q) < 0;
  std::string s = Integer(abs(r)).get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return neg ? "-" + s : s;
}

Integer lcm_of_denominators(const Rational* first, const Rational* last) {
  Integer l = 1;
  for (; first != last; ++first) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), first->get_den_mpz_t());
  return l;
}

Rational fraction(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw InputError("fraction: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace stab
