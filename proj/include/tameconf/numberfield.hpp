#pragma once

// Prime decomposition in K = Q[x]/(f) for monic irreducible f.
//
// The primary route reads (e_i, f_i) off the factorization of f mod p when
// the Dedekind criterion certifies p does not divide [O_K : Z[theta]]. When it
// does not, the pattern is recomputed in a p-maximal order (Round 2) and
// read off the idempotent decomposition of O/pO.

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tameconf/poly.hpp"

namespace tameconf {

struct PrimeIdeal {
  int e = 1;
  int f = 1;
  friend auto operator<=>(const PrimeIdeal&, const PrimeIdeal&) = default;
};

/// Multiset of (e, f), kept sorted descending.
struct SplittingPattern {
  std::vector<PrimeIdeal> ideals;

  static SplittingPattern from(std::vector<PrimeIdeal> ideals);
  int degree() const;
  bool ramified() const;
  /// "P1^2 P2 P3", with "(f=2)" suffixes for residue degree above one.
  std::string to_string() const;
  friend bool operator==(const SplittingPattern&, const SplittingPattern&) = default;
};

enum class PatternMethod { Dedekind, MaximalOrder, IndexObstruction };
std::string to_string(PatternMethod m);

struct PatternResult {
  PatternMethod method = PatternMethod::IndexObstruction;
  std::optional<SplittingPattern> pattern;
};

/// Discriminant cofactor left after trial division; carries what was found.
class PartialFactorization : public std::runtime_error {
 public:
  PartialFactorization(const std::string& what, BigInt cofactor)
      : std::runtime_error(what), cofactor_(std::move(cofactor)) {}
  const BigInt& cofactor() const { return cofactor_; }

 private:
  BigInt cofactor_;
};

/// True iff p does not divide [O_K : Z[theta]]. Throws InvalidInput unless f
/// is monic and irreducible.
bool dedekind_index_test(const IntPoly& f, u64 p);

/// Dedekind on f, then (if allowed) the maximal-order route. Without the fallback an uncertified prime yields
/// IndexObstruction and no pattern.
PatternResult splitting_pattern(const IntPoly& f, u64 p, bool allow_maximal_order = true);

/// Decomposition of p read from a p-maximal order. f monic irreducible.
SplittingPattern maximal_order_pattern(const IntPoly& f, u64 p);

struct Ramification {
  BigInt discriminant;
  std::map<u64, SplittingPattern> ramified;
  std::vector<u64> index_only;  // divide disc(f), unramified in K
  std::vector<u64> unresolved;  // index obstruction with the fallback disabled
};

/// Trial division by the candidates and by every prime up to kTrialLimit.
/// Throws PartialFactorization when a cofactor above kTrialLimit^2 remains.
std::vector<std::pair<u64, int>> factor_discriminant(const BigInt& disc, std::span<const u64> candidates);
inline constexpr u64 kTrialLimit = 10'000'000;

Ramification ramified_primes(const IntPoly& f, std::span<const u64> candidates = {},
                             bool allow_maximal_order = true);

}  // namespace tameconf
