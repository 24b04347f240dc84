#include "anforms/rational.hpp"

#include <cctype>

namespace anforms {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw DomainError("malformed rational '" + std::string(text) + "'");
  return make_rational(parse_integer(num), parse_integer(den));
}

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace anforms
