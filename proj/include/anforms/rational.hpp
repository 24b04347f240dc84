#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace anforms {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown when an operation is called outside its documented domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Canonical fraction num/den in lowest terms with positive denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Parses "p", "-p" or "p/q". Throws DomainError on malformed input or q = 0.
Rational parse_rational(std::string_view text);

BigInt factorial(unsigned n);

}  // namespace anforms
