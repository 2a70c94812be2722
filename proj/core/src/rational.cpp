#include "latlab/rational.hpp"

#include <cctype>

namespace latlab {

Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw contract_error("rat_from_string: empty string");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty())
      throw contract_error("rat_from_string: malformed fraction '" + s + "'");
    Rational r;
    if (r.set_str(num + "/" + den, 10) != 0)
      throw contract_error("rat_from_string: cannot parse '" + s + "'");
    if (r.get_den() == 0) throw contract_error("rat_from_string: zero denominator");
    r.canonicalize();
    return r;
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0)
      throw contract_error("rat_from_string: cannot parse '" + s + "'");
    r.canonicalize();
    return r;
  }
  // Decimal literal: sign? digits '.' digits
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  const std::size_t frac_len = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw contract_error("rat_from_string: cannot parse '" + s + "'");
  BigInt num;
  if (num.set_str(digits, 10) != 0)
    throw contract_error("rat_from_string: cannot parse '" + s + "'");
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

BigInt rat_floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

BigInt rat_round(const Rational& x) {
  // floor(x + 1/2), ties away from zero for negative handled by symmetry
  if (x >= 0) return rat_floor(x + Rational(1, 2));
  return -rat_floor(-x + Rational(1, 2));
}

}  // namespace latlab
