#pragma once

// Exact modular arithmetic on machine words: primality, primitive roots,
// discrete logarithms, residue symbols and the unit-scaling solver.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tameconf/bigint.hpp"

namespace tameconf {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

/// Reduces a signed value into [0, m).
u64 reduce(i64 a, u64 m);

std::optional<u64> inverse_mod(u64 a, u64 m);

/// Deterministic for every 64-bit input.
bool is_prime(u64 n);

/// Throws InvalidInput for n >= 2^64 rather than answering probabilistically.
bool is_prime(const BigInt& n);

/// Prime factorization with multiplicities, ascending primes.
std::vector<std::pair<u64, int>> factorize(u64 n);

std::vector<u64> prime_divisors(u64 n);

/// All primes <= limit (sieve).
std::vector<u64> primes_up_to(u64 limit);

/// Smallest primitive root modulo the prime p (1 for p = 2).
u64 primitive_root(u64 p);

/// Multiplicative order of a modulo prime p.
u64 order_mod_prime(u64 a, u64 p);

/// b in [0, p-1) with g^b = a (mod p). Baby-step giant-step, O(sqrt p).
u64 discrete_log(u64 g, i64 a, u64 p);

/// k in [0, order) with base^k = target (mod m), where base has the given
/// multiplicative order. Throws InvalidInput when no such k exists.
u64 subgroup_log(u64 base, u64 target, u64 order, u64 m);

int legendre(i64 a, u64 p);

/// Index of l modulo n against the smallest primitive root g of p:
/// the class of b with l = g^b (mod p).
u64 power_residue_index(i64 l, u64 p, u64 n);

/// Same, against an explicit primitive root g of p.
u64 power_residue_index(i64 l, u64 p, u64 n, u64 g);

/// (-1)^((p-1)/2) p.
i64 star_value(u64 p);

/// A vector of residues modulo n, always stored reduced.
class ResidueVector {
 public:
  ResidueVector(u64 modulus, const std::vector<i64>& entries);

  u64 modulus() const { return modulus_; }
  std::size_t size() const { return entries_.size(); }
  u64 operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<u64>& entries() const { return entries_; }

  friend bool operator==(const ResidueVector&, const ResidueVector&) = default;

 private:
  u64 modulus_;
  std::vector<u64> entries_;
};

/// Smallest unit u modulo n with u * a_i = b_i (mod n) for every i.
std::optional<u64> unit_scale_solve(const ResidueVector& a, const ResidueVector& b);

}  // namespace tameconf
