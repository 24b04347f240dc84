#pragma once

#include <string>
#include <vector>

#include "anforms/rational.hpp"

namespace anforms {

/// Polynomial in one indeterminate k with rational coefficients.
class KPoly {
 public:
  KPoly() = default;
  KPoly(Rational constant);  // NOLINT: scalars embed implicitly
  static KPoly k();

  /// Coefficient of k^i; zero beyond the degree.
  Rational coeff(std::size_t i) const;
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::string str() const;

  KPoly& operator+=(const KPoly& o);
  KPoly& operator-=(const KPoly& o);
  friend KPoly operator+(KPoly a, const KPoly& b) { return a += b; }
  friend KPoly operator-(KPoly a, const KPoly& b) { return a -= b; }
  friend KPoly operator*(const KPoly& a, const KPoly& b);
  friend bool operator==(const KPoly&, const KPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;  // c_[i] multiplies k^i
};

/// Polynomials in s and b modulo s^2 = 0 and b^(m+1) = 0, with KPoly
/// coefficients. Products never store a monomial past the truncation.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order);
  static TruncatedSeries s(int order);
  static TruncatedSeries b(int order);
  static TruncatedSeries constant(int order, KPoly c);

  int order() const noexcept { return order_; }
  /// Coefficient of s^e b^j; zero for monomials past the truncation.
  const KPoly& coeff(int e, int j) const;
  void set(int e, int j, KPoly c);
  TruncatedSeries pow(int exponent) const;
  bool is_zero() const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const KPoly& c, const TruncatedSeries& a);
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  void check_compatible(const TruncatedSeries& o) const;
  int order_;
  std::vector<KPoly> c_[2];  // c_[e][j] multiplies s^e b^j
};

}  // namespace anforms
