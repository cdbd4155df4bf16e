#pragma once

// Prime searches realizing abelian configurations, certificates and their
// re-verification, and the reciprocity check.

#include <cstdint>
#include <optional>
#include <vector>

#include "tameconf/config.hpp"
#include "tameconf/cyclotomic.hpp"

namespace tameconf {

struct PrimeData {
  u64 p = 0;
  int e = 1;
  int f = 1;
};

struct RealizationCertificate {
  std::vector<u64> primes;
  std::vector<u64> roots;
  CyclotomicField field;
  std::optional<TameConfig> config;    // target the field was matched against
  std::optional<DecompMatrix> matrix;  // entrywise target under `roots`
  std::vector<PrimeData> prime_data;
};

struct SearchStats {
  std::uint64_t tuples_tried = 0;
  u64 bound = 0;
  /// Set when no tuple can match at any bound: every residue signature the
  /// general search could meet was ruled out before scanning.
  bool signature_space_excluded = false;
  std::uint64_t signatures_checked = 0;
};

struct SearchResult {
  std::optional<RealizationCertificate> certificate;
  SearchStats stats;
};

/// Rebuilds every claim from scratch: per-prime (e, f), the matrix (if any)
/// and the configuration match (if any).
bool verify_certificate(const RealizationCertificate& cert);

/// Greedy: l_1 least prime = 1 mod n, then the least l = 1 mod n*l_1*...*l_t
/// with every earlier l_i an n-th power mod l.
SearchResult realize_split(u64 n, int s, u64 bound);

/// Odd n; primes are added one at a time, the new prime l_t satisfying
/// row t of m against the fixed roots g_i and column t up to the choice of
/// its own primitive root.
SearchResult realize_matrix_odd(const DecompMatrix& m, u64 bound);

/// Increasing prime tuples in lexicographic order; for each, every field
/// inside Q(zeta_{l_1...l_s}) with group G is tried. A tuple only enters
/// through its signature (c_i = gcd(exp G, l_i - 1) and the Frobenius
/// indices), so when no signature in the finite space admits a match the
/// scan is skipped and the result is exhaustion for every bound.
SearchResult realize_abelian_general(const TameConfig& target, u64 bound);

struct ReciprocityInstance {
  u64 n = 0;
  u64 p = 0;
  std::vector<u64> l;
  std::optional<u64> zeta;  // residue of exact order n standing for the prime above p
};

struct ReciprocityResult {
  bool holds = false;
  u64 zeta = 0;
  u64 g = 0;
  std::vector<u64> a;  // l_i^((p-1)/n) = zeta^(a_i)
  std::vector<u64> b;  // l_i = g^(b_i) mod n
  std::optional<u64> unit;
};

/// Default zeta: the least residue of exact multiplicative order n mod p.
ReciprocityResult reciprocity_check(const ReciprocityInstance& inst);

}  // namespace tameconf
