#include "wordperc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace wordperc {

Rational make_rational(long num, unsigned long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, unsigned exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::string to_fraction_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

std::string to_decimal_string(const Rational& q, int digits) {
  if (digits < 0) digits = 0;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer num = abs(q.get_num()) * scale;
  const Integer& den = q.get_den();
  Integer scaled = (2 * num + den) / (2 * den);

  std::string body = scaled.get_str();
  if (static_cast<int>(body.size()) <= digits) {
    body.insert(0, static_cast<std::size_t>(digits + 1) - body.size(), '0');
  }
  std::string out;
  if (sgn(q) < 0 && scaled != 0) out.push_back('-');
  out += body.substr(0, body.size() - static_cast<std::size_t>(digits));
  if (digits > 0) {
    out.push_back('.');
    out += body.substr(body.size() - static_cast<std::size_t>(digits));
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      bool neg = s[0] == '-';
      std::string whole = s.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
      std::string frac = s.substr(dot + 1);
      for (char c : whole + frac) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument(s);
      }
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      Integer num((whole.empty() ? "0" : whole) + frac, 10);
      Rational q(num, den);
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    Rational q(s, 10);
    if (q.get_den() == 0) throw std::invalid_argument(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: " + s);
  }
}

}  // namespace wordperc
