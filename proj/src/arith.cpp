#include "tameconf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <numeric>
#include <unordered_map>

#include "tameconf/errors.hpp"

namespace tameconf {

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 reduce(i64 a, u64 m) {
  if (a >= 0) return static_cast<u64>(a) % m;
  // -(a+1) avoids overflow on INT64_MIN
  u64 neg = (static_cast<u64>(-(a + 1)) + 1) % m;
  return neg == 0 ? 0 : m - neg;
}

std::optional<u64> inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return std::nullopt;
  return reduce(old_s, m);
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    const u64 m = 128;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // this base set is exact below 3.3e24
  for (u64 a : small) {
    if (miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

bool is_prime(const BigInt& n) {
  if (n < 0) return false;
  if (n > BigInt(std::numeric_limits<u64>::max())) {
    throw InvalidInput("is_prime: inputs >= 2^64 are not decided");
  }
  return is_prime(static_cast<u64>(n));
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto [p, k] : factorize(n)) out.push_back(p);
  return out;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

u64 primitive_root(u64 p) {
  if (!is_prime(p)) throw InvalidInput("primitive_root: modulus is not prime");
  if (p == 2) return 1;
  const auto qs = prime_divisors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool generator = std::all_of(qs.begin(), qs.end(),
                                 [&](u64 q) { return pow_mod(g, (p - 1) / q, p) != 1; });
    if (generator) return g;
  }
  throw InvalidInput("primitive_root: none found");  // unreachable for prime p
}

u64 order_mod_prime(u64 a, u64 p) {
  a %= p;
  if (a == 0) throw InvalidInput("order_mod_prime: a = 0");
  u64 order = p - 1;
  for (auto [q, k] : factorize(p - 1)) {
    for (int i = 0; i < k; ++i) {
      if (pow_mod(a, order / q, p) == 1) {
        order /= q;
      } else {
        break;
      }
    }
  }
  return order;
}

u64 subgroup_log(u64 base, u64 target, u64 order, u64 m) {
  base %= m;
  target %= m;
  if (order <= 64) {
    u64 x = 1;
    for (u64 k = 0; k < order; ++k) {
      if (x == target) return k;
      x = mul_mod(x, base, m);
    }
    throw InvalidInput("subgroup_log: target not in the subgroup");
  }
  const u64 step = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(step * 2);
  u64 x = 1;
  for (u64 j = 0; j < step; ++j) {
    baby.emplace(x, j);
    x = mul_mod(x, base, m);
  }
  const auto inv = inverse_mod(pow_mod(base, step, m), m);
  if (!inv) throw InvalidInput("subgroup_log: base not invertible");
  u64 gamma = target;
  for (u64 i = 0; i <= step; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) {
      return (i * step + it->second) % order;
    }
    gamma = mul_mod(gamma, *inv, m);
  }
  throw InvalidInput("subgroup_log: target not in the subgroup");
}

u64 discrete_log(u64 g, i64 a, u64 p) {
  const u64 r = reduce(a, p);
  if (r == 0) throw InvalidInput("discrete_log: a is divisible by p");
  return subgroup_log(g, r, p - 1, p);
}

int legendre(i64 a, u64 p) {
  // Jacobi-symbol recursion; agrees with Euler's criterion for prime p
  u64 x = reduce(a, p), n = p;
  int t = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const u64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) t = -t;
    x %= n;
  }
  return n == 1 ? t : 0;
}

u64 power_residue_index(i64 l, u64 p, u64 n, u64 g) {
  if (n == 0 || (p - 1) % n != 0) {
    throw InvalidInput("power_residue_index: p is not 1 mod n");
  }
  const u64 lr = reduce(l, p);
  if (lr == 0) throw InvalidInput("power_residue_index: l divisible by p");
  if (n == 1) return 0;
  const u64 e = (p - 1) / n;
  return subgroup_log(pow_mod(g, e, p), pow_mod(lr, e, p), n, p);
}

u64 power_residue_index(i64 l, u64 p, u64 n) {
  if (n == 0 || (p - 1) % n != 0) {
    throw InvalidInput("power_residue_index: p is not 1 mod n");
  }
  return power_residue_index(l, p, n, primitive_root(p));
}

i64 star_value(u64 p) {
  const i64 v = static_cast<i64>(p);
  return p % 4 == 1 ? v : -v;
}

ResidueVector::ResidueVector(u64 modulus, const std::vector<i64>& entries)
    : modulus_(modulus) {
  if (modulus == 0) throw InvalidInput("ResidueVector: modulus must be positive");
  entries_.reserve(entries.size());
  for (i64 a : entries) entries_.push_back(reduce(a, modulus));
}

std::optional<u64> unit_scale_solve(const ResidueVector& a, const ResidueVector& b) {
  if (a.modulus() != b.modulus() || a.size() != b.size()) {
    throw InvalidInput("unit_scale_solve: vectors differ in modulus or length");
  }
  const u64 n = a.modulus();
  if (n == 1) return 0;
  for (u64 u = 1; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      ok = mul_mod(u, a[i], n) == b[i];
    }
    if (ok) return u;
  }
  return std::nullopt;
}

}  // namespace tameconf
