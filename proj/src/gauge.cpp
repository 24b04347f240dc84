#include "anforms/gauge.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <stdexcept>

#include "anforms/series.hpp"

namespace anforms {

namespace {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  BigInt n(p);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

void check_epsilon_index(int n) {
  if (n < 1) throw DomainError("the ε-sequence starts at index 1");
  if (n > kMaxEpsilonIndex) throw DomainError("ε-sequence index capped at " + std::to_string(kMaxEpsilonIndex));
}

bool divides(const BigInt& d, const BigInt& k) { return mpz_divisible_p(k.get_mpz_t(), d.get_mpz_t()) != 0; }

}  // namespace

PrimeSet PrimeSet::of(std::vector<unsigned long> primes) {
  if (primes.empty()) return none();
  for (unsigned long p : primes)
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return PrimeSet(Kind::Finite, std::move(primes));
}

PrimeSet PrimeSet::parse(std::string_view text) {
  if (text == "all") return all();
  if (text == "none" || text.empty()) return none();
  std::vector<unsigned long> primes;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    unsigned long p = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), p);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw DomainError("bad prime list '" + std::string(text) + "' (expected e.g. 2,3,5, all or none)");
    primes.push_back(p);
    pos = end + 1;
  }
  return of(std::move(primes));
}

bool PrimeSet::contains(unsigned long p) const {
  switch (kind_) {
    case Kind::All: return is_prime(p);
    case Kind::Empty: return false;
    case Kind::Finite: return std::binary_search(primes_.begin(), primes_.end(), p);
  }
  return false;
}

std::string PrimeSet::str() const {
  if (kind_ == Kind::All) return "all";
  if (kind_ == Kind::Empty) return "none";
  std::string out;
  for (unsigned long p : primes_) out += (out.empty() ? "" : ",") + std::to_string(p);
  return out;
}

bool in_local_ring(const Rational& q, const PrimeSet& primes) {
  const BigInt& den = q.get_den();
  switch (primes.kind()) {
    case PrimeSet::Kind::Empty: return true;
    case PrimeSet::Kind::All: return den == 1;
    case PrimeSet::Kind::Finite:
      for (unsigned long p : primes.members())
        if (mpz_divisible_ui_p(den.get_mpz_t(), p)) return false;
      return true;
  }
  return false;
}

unsigned valuation(const BigInt& n, unsigned long p) {
  if (n == 0) throw DomainError("valuation of zero is infinite");
  if (p < 2) throw DomainError("valuation needs a prime");
  BigInt rest;
  BigInt prime(p);
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

long valuation(const Rational& q, unsigned long p) {
  if (q == 0) throw DomainError("valuation of zero is infinite");
  return static_cast<long>(valuation(BigInt(q.get_num()), p)) - static_cast<long>(valuation(BigInt(q.get_den()), p));
}

std::vector<Rational> epsilon_sequence(int n) {
  check_epsilon_index(n);
  std::vector<Rational> inv_even(n + 1);  // 1/(2j)!
  for (int j = 0; j <= n; ++j) inv_even[j] = make_rational(1, factorial(2 * j));
  // weight[i][l] = Σ over compositions of l into i parts of Π 1/(2j_r)!
  std::vector<std::vector<Rational>> weight(n + 1, std::vector<Rational>(n + 1));
  weight[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int l = i; l <= n; ++l)
      for (int j = 1; j <= l - i + 1; ++j) weight[i][l] += weight[i - 1][l - j] * inv_even[j];

  std::vector<Rational> eps(n + 1);
  BigInt two_pow = 1;
  for (int l = 1; l <= n; ++l) {
    Rational rest(1, factorial(2 * l + 1));
    BigInt two_i = 1;
    for (int i = 1; i < l; ++i) {
      two_i *= 2;
      rest -= Rational(two_i) * eps[i] * weight[i][l];
    }
    two_pow *= 2;
    eps[l] = rest / (Rational(two_pow) * weight[l][l]);
  }
  eps.erase(eps.begin());
  return eps;
}

std::vector<Rational> chern_oracle(int n) {
  check_epsilon_index(n);
  const int m = n;
  const KPoly k = KPoly::k();
  const TruncatedSeries s = TruncatedSeries::s(m);
  const TruncatedSeries b = TruncatedSeries::b(m);

  // ch a = Σ_{j>=1} 2 b^j/(2j)!
  TruncatedSeries ch_a(m);
  for (int j = 1; j <= m; ++j) ch_a.set(0, j, KPoly(make_rational(2, factorial(2 * j))));

  // f^* ch a = Σ_{j>=1} 2/(2j)! (ks + b)^j; j = m+1 still reaches s·b^m.
  const TruncatedSeries pulled = k * s + b;
  TruncatedSeries lhs(m);
  for (int j = 1; j <= m + 1; ++j) lhs += KPoly(make_rational(2, factorial(2 * j))) * pulled.pow(j);

  // ch f^* a = ks + ch a + Σ ε_i(k) s·(ch a)^i
  std::vector<TruncatedSeries> terms;
  for (int i = 1; i <= m; ++i) terms.push_back(s * ch_a.pow(i));
  const TruncatedSeries residual = lhs - (k * s + ch_a);

  for (int j = 0; j <= m; ++j)
    if (!residual.coeff(0, j).is_zero()) throw std::logic_error("Chern character identity fails off the s-part");
  if (!residual.coeff(1, 0).is_zero()) throw std::logic_error("Chern character identity fails on s");

  std::vector<KPoly> eps_k(m + 1);
  for (int l = 1; l <= m; ++l) {
    KPoly rhs = residual.coeff(1, l);
    for (int i = 1; i < l; ++i) rhs -= eps_k[i] * terms[i - 1].coeff(1, l);
    const KPoly& diag = terms[l - 1].coeff(1, l);
    if (diag.degree() != 0) throw std::logic_error("triangular system has a non-constant diagonal");
    eps_k[l] = KPoly(1 / diag.coeff(0)) * rhs;
  }

  TruncatedSeries rhs = k * s + ch_a;
  for (int i = 1; i <= m; ++i) rhs += eps_k[i] * terms[i - 1];
  if (!(rhs == lhs)) throw std::logic_error("solved ε_i(k) do not satisfy the Chern character identity");

  std::vector<Rational> eps;
  for (int l = 1; l <= m; ++l) {
    if (eps_k[l].degree() > 1 || eps_k[l].coeff(0) != 0) throw std::logic_error("ε_l(k) is not linear in k");
    eps.push_back(eps_k[l].coeff(1));
  }
  return eps;
}

BigInt triviality_divisor(int n) {
  BigInt d = 1;
  for (const auto& e : epsilon_sequence(n)) d = lcm(d, BigInt(e.get_den()));
  return d;
}

std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n) {
  if (n < 1) throw DomainError("factorize needs a positive integer");
  std::vector<std::pair<BigInt, unsigned>> out;
  for (BigInt p = 2; p * p <= n; ++p) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) break;
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::string factorization_string(const std::vector<std::pair<BigInt, unsigned>>& f) {
  if (f.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : f) {
    if (!out.empty()) out += "*";
    out += to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

CongruenceReport epsilon_congruence(unsigned long p) {
  if (p % 2 == 0 || !is_prime(p) || p > 13) throw DomainError("congruences are checked for odd primes p <= 13");
  const auto eps = epsilon_sequence(static_cast<int>(p - 1));
  const PrimeSet local = PrimeSet::of({p});
  const unsigned long half = (p - 1) / 2;

  CongruenceReport r;
  r.p = p;
  r.low_terms_local = true;
  for (unsigned long i = 1; i + 1 <= half; ++i)
    r.low_terms_local = r.low_terms_local && in_local_ring(eps[i - 1], local);
  r.middle_term = in_local_ring(eps[half - 1] - make_rational(1, factorial(static_cast<unsigned>(p))), local);
  r.top_scaled = Rational(static_cast<long>(p)) * eps[p - 2];
  const Rational correction = make_rational(1, factorial(static_cast<unsigned>(p + 1)) * factorial(static_cast<unsigned>(p - 2)));
  r.top_term = in_local_ring(r.top_scaled + correction, local);
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Trivial: return "trivial";
    case Verdict::NotTrivial: return "not-trivial";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

TrivialityVerdict decide_triviality(const BigInt& k, const PrimeSet& primes, int n) {
  if (!primes.is_finite_nonempty()) throw DomainError("triviality is decided for a finite nonempty prime set");
  if (n < 1) throw DomainError("n must be at least 1");
  const unsigned long p = primes.members().front();
  const bool single = primes.members().size() == 1;
  const unsigned long half = (p - 1) / 2;
  const BigInt bp(p);
  const auto un = static_cast<unsigned long>(n);
  auto verdict = [](bool trivial) { return trivial ? Verdict::Trivial : Verdict::NotTrivial; };

  if (p >= 3 && un + 1 <= half)
    return {Verdict::Trivial, 'a', "n <= (p-1)/2 - 1 for p = min P = " + std::to_string(p)};
  if (p >= 3 && un == half)
    return {verdict(divides(bp, k)), 'b', "n = (p-1)/2: trivial iff p | k, p = " + std::to_string(p)};
  if (single && p >= 3 && un > half && un + 2 <= p)
    return {verdict(divides(bp, k)), 'c', "(p-1)/2 < n <= p-2 with P = {p}: trivial iff p | k, p = " + std::to_string(p)};
  if (single && p >= 3 && un + 1 == p)
    return {verdict(divides(bp * bp, k)), 'd', "n = p-1 with P = {p}: trivial iff p^2 | k, p = " + std::to_string(p)};

  const auto eps = epsilon_sequence(n);
  for (int i = 0; i < n; ++i) {
    if (!in_local_ring(Rational(k) * eps[i], primes))
      return {Verdict::NotTrivial, 'e',
              "k*eps_" + std::to_string(i + 1) + " = " + to_string(Rational(Rational(k) * eps[i])) +
                  " is not P-integral"};
  }
  return {Verdict::Unknown, 'e', "k*eps_i is P-integral for i <= n; no sufficient condition applies"};
}

std::vector<Valuation> local_unit_class(const BigInt& k, const PrimeSet& primes) {
  if (!primes.is_finite_nonempty()) throw DomainError("unit class needs a finite nonempty prime set");
  std::vector<Valuation> out;
  for (unsigned long p : primes.members()) {
    if (k == 0) out.push_back({true, 0});
    else out.push_back({false, valuation(k, p)});
  }
  return out;
}

long long prime_pi(long long m) {
  if (m < 0) throw DomainError("prime counting needs m >= 0");
  if (m > kMaxPrimePi) throw DomainError("prime counting capped at " + std::to_string(kMaxPrimePi));
  static std::mutex guard;
  static std::vector<bool> composite;  // composite[i] for i < size
  std::lock_guard lock(guard);
  if (static_cast<long long>(composite.size()) <= m) {
    const long long size = std::min(kMaxPrimePi + 1, std::max<long long>(m + 1, 2 * composite.size()));
    composite.assign(size, false);
    composite[0] = true;
    if (size > 1) composite[1] = true;
    for (long long i = 2; i * i < size; ++i)
      if (!composite[i])
        for (long long j = i * i; j < size; j += i) composite[j] = true;
  }
  long long count = 0;
  for (long long i = 2; i <= m; ++i) count += !composite[i];
  return count;
}

BigInt lower_bound_types(int n, bool sharper) {
  if (n < 1) throw DomainError("n must be at least 1");
  const long long top = prime_pi(2LL * n + 1);
  const long long low = sharper ? prime_pi(static_cast<long long>(n) + 1) : 0;
  BigInt two, three;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(top - low));
  mpz_ui_pow_ui(three.get_mpz_t(), 3, static_cast<unsigned long>(low));
  return two * three;
}

nlohmann::json to_json(const TrivialityVerdict& v) {
  return {{"verdict", to_string(v.verdict)}, {"clause", std::string(1, v.clause)}};
}

nlohmann::json to_json(const std::vector<Valuation>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) {
    if (x.infinite) out.push_back("inf");
    else out.push_back(x.value);
  }
  return out;
}

nlohmann::json to_json(const CongruenceReport& r) {
  return {{"p", r.p},
          {"low_terms_local", r.low_terms_local},
          {"middle_term", r.middle_term},
          {"top_term", r.top_term},
          {"p_eps_top", to_string(r.top_scaled)},
          {"holds", r.holds()}};
}

}  // namespace anforms
