#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "anforms/rational.hpp"

namespace anforms {

/// A set of primes: an explicit finite set, all primes, or the empty set
/// (which models rationalization).
class PrimeSet {
 public:
  enum class Kind { Finite, All, Empty };

  static PrimeSet of(std::vector<unsigned long> primes);
  static PrimeSet all() { return PrimeSet(Kind::All, {}); }
  static PrimeSet none() { return PrimeSet(Kind::Empty, {}); }
  /// "2,3,5", "all" or "none".
  static PrimeSet parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite_nonempty() const noexcept { return kind_ == Kind::Finite; }
  const std::vector<unsigned long>& members() const noexcept { return primes_; }
  bool contains(unsigned long p) const;
  std::string str() const;

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

 private:
  PrimeSet(Kind kind, std::vector<unsigned long> primes) : kind_(kind), primes_(std::move(primes)) {}
  Kind kind_;
  std::vector<unsigned long> primes_;  // sorted, only for Finite
};

/// True iff no prime of P divides the denominator of q.
bool in_local_ring(const Rational& q, const PrimeSet& primes);

/// Exponent of p in n; n must be nonzero.
unsigned valuation(const BigInt& n, unsigned long p);
/// Exponent of p in a nonzero rational (negative for denominators).
long valuation(const Rational& q, unsigned long p);

constexpr int kMaxEpsilonIndex = 120;

/// ε_1..ε_n from the recursion
///   ε_l = 1/(2l+1)! - Σ_{i<l} Σ_{j_1+..+j_i=l, j_r>=1} 2^i ε_i / Π(2j_r)!.
std::vector<Rational> epsilon_sequence(int n);

/// Re-derives ε_1..ε_n by comparing both sides of the Chern character
/// identity in the truncated ring Q[k][s,b]/(s^2, b^(n+1)) and solving for
/// the coefficients ε_i(k), which must turn out to be linear in k.
/// Throws std::logic_error if the system is inconsistent.
std::vector<Rational> chern_oracle(int n);

/// Least D > 0 with D·ε_i integral for all i <= n.
BigInt triviality_divisor(int n);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n);
/// "2^3*3^3*5*7"; "1" for 1.
std::string factorization_string(const std::vector<std::pair<BigInt, unsigned>>& f);

struct CongruenceReport {
  unsigned long p = 0;
  bool low_terms_local = false;  // ε_1..ε_{(p-3)/2} in Z_(p)
  bool middle_term = false;      // ε_{(p-1)/2} - 1/p! in Z_(p)
  bool top_term = false;         // p·ε_{p-1} + 1/((p+1)!(p-2)!) in Z_(p)
  Rational top_scaled;           // p·ε_{p-1}, not p-integral
  bool holds() const { return low_terms_local && middle_term && top_term; }
};

/// Checks the p-local congruences of the ε-sequence for an odd prime p <= 13.
CongruenceReport epsilon_congruence(unsigned long p);

enum class Verdict { Trivial, NotTrivial, Unknown };

struct TrivialityVerdict {
  Verdict verdict = Verdict::Unknown;
  char clause = 'e';     // 'a'..'e'
  std::string reason;
  friend bool operator==(const TrivialityVerdict&, const TrivialityVerdict&) = default;
};

std::string to_string(Verdict v);

/// Whether the P-localized adjoint bundle of the SU(2)-bundle with Chern
/// number k is trivial as a fibrewise A_n-space. With p = min P:
///   (a) p >= 3, n <= (p-1)/2 - 1          Trivial
///   (b) p >= 3, n = (p-1)/2               Trivial iff p | k
///   (c) P = {p}, (p-1)/2 < n <= p-2       Trivial iff p | k
///   (d) P = {p}, n = p-1                  Trivial iff p^2 | k
///   (e) otherwise                         NotTrivial if some k·ε_i is not
///                                         P-integral, else Unknown
/// P must be finite and nonempty.
TrivialityVerdict decide_triviality(const BigInt& k, const PrimeSet& primes, int n);

struct Valuation {
  bool infinite = false;
  unsigned long value = 0;
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// (v_p(k))_{p in P}; equal vectors give A_∞-equivalent localized gauge groups.
std::vector<Valuation> local_unit_class(const BigInt& k, const PrimeSet& primes);

/// Number of primes <= m, from a shared sieve that grows on demand.
long long prime_pi(long long m);
constexpr long long kMaxPrimePi = 100'000'000;

/// Lower bound on the number of A_n-types of gauge groups of SU(2)-bundles
/// over S^4: 2^π(2n+1), or 2^(π(2n+1)-π(n+1))·3^π(n+1) when sharper.
BigInt lower_bound_types(int n, bool sharper);

nlohmann::json to_json(const TrivialityVerdict& v);
nlohmann::json to_json(const std::vector<Valuation>& v);
nlohmann::json to_json(const CongruenceReport& r);

}  // namespace anforms
