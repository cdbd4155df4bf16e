#pragma once

// Integer polynomials and polynomials over prime fields.
//
// Coefficients are stored constant-first everywhere. FpPoly values are kept
// trimmed (no trailing zero coefficients); the zero polynomial is empty.

#include <string>
#include <utility>
#include <vector>

#include "tameconf/arith.hpp"
#include "tameconf/bigint.hpp"

namespace tameconf {

class IntPoly {
 public:
  static constexpr int kMaxDegree = 16;

  /// Throws InvalidInput on an empty sequence, a zero leading coefficient or
  /// degree above kMaxDegree.
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long long> coeffs);

  /// Accepts "x^4 - x - 1", "x^8+15*x^6 + 1", "3x^2-2".
  static IntPoly parse(const std::string& text);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BigInt& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& leading() const { return c_.back(); }
  bool is_monic() const { return c_.back() == 1; }

  IntPoly derivative() const;
  /// f(x + c).
  IntPoly shifted(long long c) const;
  std::string to_string() const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::vector<BigInt> c_;
};

using FpPoly = std::vector<u64>;

namespace fp {

void trim(FpPoly& a);
FpPoly reduce(const IntPoly& f, u64 p);
int degree(const FpPoly& a);
FpPoly add(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly sub(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly mul(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly scale(const FpPoly& a, u64 s, u64 p);
/// Quotient and remainder; b must be nonzero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly mod(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly monic(const FpPoly& a, u64 p);
/// Monic gcd (zero when both inputs are zero).
FpPoly gcd(FpPoly a, FpPoly b, u64 p);
/// base^e mod m.
FpPoly powmod(const FpPoly& base, BigInt e, const FpPoly& m, u64 p);
FpPoly derivative(const FpPoly& a, u64 p);
std::string to_string(const FpPoly& a);

}  // namespace fp

struct FpFactor {
  FpPoly factor;  // monic irreducible
  int multiplicity = 1;
  friend bool operator==(const FpFactor&, const FpFactor&) = default;
};

/// Factorization of f mod p: squarefree split, distinct-degree split, then
/// Cantor-Zassenhaus with a generator seeded from (f, p). Factors are sorted
/// by (degree, coefficients). Throws InvalidInput if p is not prime or p
/// divides the leading coefficient.
std::vector<FpFactor> factor_mod_p(const IntPoly& f, u64 p);
std::vector<FpFactor> factor_mod_p(const FpPoly& f, u64 p);

/// Exact discriminant (-1)^(n(n-1)/2) Res(f, f') / lc(f).
BigInt discriminant(const IntPoly& f);

/// Irreducibility over Q for monic f, decided by the factor-degree sieve over
/// small primes and, when that is inconclusive, by Hensel lifting and
/// recombination of the factors at one prime.
bool is_irreducible(const IntPoly& f);

}  // namespace tameconf
