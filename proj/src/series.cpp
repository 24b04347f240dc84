#include "anforms/series.hpp"

#include <stdexcept>

namespace anforms {

KPoly::KPoly(Rational constant) {
  c_.push_back(std::move(constant));
  trim();
}

KPoly KPoly::k() {
  KPoly p;
  p.c_ = {Rational(0), Rational(1)};
  return p;
}

Rational KPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

void KPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

KPoly& KPoly::operator+=(const KPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

KPoly& KPoly::operator-=(const KPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

KPoly operator*(const KPoly& a, const KPoly& b) {
  KPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

std::string KPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += to_string(c_[i]);
    if (i >= 1) out += "*k";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

TruncatedSeries::TruncatedSeries(int order) : order_(order) {
  if (order < 0) throw DomainError("truncation order must be nonnegative");
  c_[0].resize(order + 1);
  c_[1].resize(order + 1);
}

TruncatedSeries TruncatedSeries::s(int order) {
  TruncatedSeries t(order);
  t.c_[1][0] = KPoly(1);
  return t;
}

TruncatedSeries TruncatedSeries::b(int order) {
  TruncatedSeries t(order);
  if (order >= 1) t.c_[0][1] = KPoly(1);
  return t;
}

TruncatedSeries TruncatedSeries::constant(int order, KPoly c) {
  TruncatedSeries t(order);
  t.c_[0][0] = std::move(c);
  return t;
}

const KPoly& TruncatedSeries::coeff(int e, int j) const {
  static const KPoly zero;
  if (e < 0 || e > 1 || j < 0 || j > order_) return zero;
  return c_[e][j];
}

void TruncatedSeries::set(int e, int j, KPoly c) {
  if (e < 0 || e > 1 || j < 0 || j > order_) throw DomainError("monomial past the truncation");
  c_[e][j] = std::move(c);
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (o.order_ != order_) throw std::invalid_argument("series with different truncation orders");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  check_compatible(o);
  for (int e = 0; e < 2; ++e)
    for (int j = 0; j <= order_; ++j) c_[e][j] += o.c_[e][j];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  check_compatible(o);
  for (int e = 0; e < 2; ++e)
    for (int j = 0; j <= order_; ++j) c_[e][j] -= o.c_[e][j];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b);
  TruncatedSeries r(a.order_);
  for (int ea = 0; ea < 2; ++ea)
    for (int eb = 0; ea + eb < 2; ++eb)
      for (int i = 0; i <= a.order_; ++i) {
        if (a.c_[ea][i].is_zero()) continue;
        for (int j = 0; i + j <= a.order_; ++j)
          if (!b.c_[eb][j].is_zero()) r.c_[ea + eb][i + j] += a.c_[ea][i] * b.c_[eb][j];
      }
  return r;
}

TruncatedSeries operator*(const KPoly& c, const TruncatedSeries& a) {
  TruncatedSeries r(a.order_);
  for (int e = 0; e < 2; ++e)
    for (int j = 0; j <= a.order_; ++j) r.c_[e][j] = c * a.c_[e][j];
  return r;
}

TruncatedSeries TruncatedSeries::pow(int exponent) const {
  if (exponent < 0) throw DomainError("negative exponent");
  TruncatedSeries result = constant(order_, KPoly(1));
  for (int i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

bool TruncatedSeries::is_zero() const {
  for (int e = 0; e < 2; ++e)
    for (const auto& c : c_[e])
      if (!c.is_zero()) return false;
  return true;
}

}  // namespace anforms
