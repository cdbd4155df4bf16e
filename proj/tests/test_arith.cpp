#include "doctest.h"

#include <random>

#include "tameconf/arith.hpp"
#include "tameconf/errors.hpp"

using namespace tameconf;

namespace {

bool prime_by_division(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Brute-force oracles; fine for p below a few thousand.
u64 naive_pow(u64 a, u64 k, u64 m) {
  u64 r = 1 % m;
  for (u64 i = 0; i < k; ++i) r = r * (a % m) % m;
  return r;
}

int legendre_by_squares(i64 a, u64 p) {
  const u64 r = reduce(a, p);
  if (r == 0) return 0;
  for (u64 x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

u64 order_by_walk(u64 a, u64 p) {
  u64 x = a % p, k = 1;
  while (x != 1) {
    x = x * a % p;
    ++k;
  }
  return k;
}

u64 dlog_by_walk(u64 g, u64 a, u64 p) {
  u64 x = 1;
  for (u64 k = 0; k < p; ++k) {
    if (x == a % p) return k;
    x = x * g % p;
  }
  return ~u64{0};
}

u64 gcd(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::optional<u64> unit_scale_by_scan(const std::vector<i64>& a, const std::vector<i64>& b, u64 n) {
  for (u64 u = 1; u < std::max<u64>(n, 2); ++u) {
    if (gcd(u, n) != 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = (u * reduce(a[i], n)) % n == reduce(b[i], n);
    if (ok) return u;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("is_prime on small and large inputs") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK(is_prime(6971));
  CHECK_FALSE(is_prime(6971ull * 6977ull));
  for (u64 n = 0; n < 5000; ++n) CHECK(is_prime(n) == prime_by_division(n));
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to 2, 3, 5, 7
  CHECK(is_prime(BigInt(1000003)));
  CHECK_THROWS_AS(is_prime(BigInt(1) << 70), InvalidInput);
}

TEST_CASE("factorize and sieve") {
  const auto f = factorize(2ull * 2 * 3 * 97 * 97 * 1000003);
  REQUIRE(f.size() == 4);
  CHECK(f[0] == std::pair<u64, int>{2, 2});
  CHECK(f[3] == std::pair<u64, int>{1000003, 1});
  const auto ps = primes_up_to(100);
  CHECK(ps.size() == 25);
  CHECK(ps.back() == 97);
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(13) == 2);
  CHECK(primitive_root(3) == 2);
  CHECK(primitive_root(2) == 1);
  for (u64 p : primes_up_to(600)) {
    if (p == 2) continue;
    const u64 g = primitive_root(p);
    CHECK(order_by_walk(g, p) == p - 1);
    for (u64 h = 2; h < g; ++h) CHECK(order_by_walk(h, p) < p - 1);
  }
}

TEST_CASE("discrete_log") {
  CHECK(discrete_log(2, 3, 13) == 4);
  CHECK(discrete_log(2, 1, 13) == 0);
  CHECK(discrete_log(3, 3, 7) == 1);
  CHECK(discrete_log(2, -1, 13) == 6);
  std::mt19937_64 rng(11);
  const auto ps = primes_up_to(3000);
  for (int t = 0; t < 300; ++t) {
    const u64 p = ps[1 + rng() % (ps.size() - 1)];
    const u64 g = primitive_root(p);
    const u64 a = 1 + rng() % (p - 1);
    const u64 k = discrete_log(g, static_cast<i64>(a), p);
    CHECK(k < p - 1);
    CHECK(k == dlog_by_walk(g, a, p));
  }
  CHECK_THROWS_AS(discrete_log(2, 0, 13), InvalidInput);
}

TEST_CASE("legendre symbol") {
  CHECK(legendre(3, 5) == -1);
  CHECK(legendre(7, 3) == 1);
  CHECK(legendre(26, 13) == 0);
  CHECK(legendre(-1, 13) == 1);
  CHECK(legendre(-1, 7) == -1);
  for (u64 p : primes_up_to(400)) {
    if (p == 2) continue;
    for (i64 a = -30; a < 60; ++a) CHECK(legendre(a, p) == legendre_by_squares(a, p));
  }
}

TEST_CASE("legendre properties") {
  std::mt19937_64 rng(5);
  const auto ps = primes_up_to(10000);
  for (int t = 0; t < 500; ++t) {
    const u64 p = ps[1 + rng() % (ps.size() - 1)];
    const u64 q = ps[1 + rng() % (ps.size() - 1)];
    const i64 a = static_cast<i64>(rng() % 100000) - 50000;
    const i64 b = static_cast<i64>(rng() % 100000) - 50000;
    // multiplicativity
    CHECK(legendre(a * b, p) == legendre(a, p) * legendre(b, p));
    // Euler's criterion
    const u64 e = pow_mod(reduce(a, p), (p - 1) / 2, p);
    const int euler = e == 0 ? 0 : (e == 1 ? 1 : -1);
    CHECK(legendre(a, p) == euler);
    // quadratic reciprocity
    if (p != q) {
      const int sign = ((p - 1) / 2 * ((q - 1) / 2)) % 2 == 0 ? 1 : -1;
      CHECK(legendre(static_cast<i64>(p), q) * legendre(static_cast<i64>(q), p) == sign);
      CHECK(legendre(star_value(q), p) == legendre(static_cast<i64>(p), q));
    }
  }
}

TEST_CASE("power_residue_index") {
  CHECK(power_residue_index(3, 13, 4) == 0);
  CHECK(power_residue_index(2, 13, 4) == 1);
  CHECK(power_residue_index(5, 13, 4) == 1);
  for (u64 p : {7ull, 13ull, 31ull, 61ull}) {
    const u64 g = primitive_root(p);
    for (u64 n : {2ull, 3ull, 5ull, 6ull}) {
      if ((p - 1) % n) continue;
      for (i64 l = 1; l < static_cast<i64>(p); ++l) {
        const u64 idx = power_residue_index(l, p, n);
        CHECK(idx == dlog_by_walk(g, static_cast<u64>(l), p) % n);
        // index 0 exactly for the n-th powers
        bool nth_power = false;
        for (u64 y = 1; y < p && !nth_power; ++y) nth_power = naive_pow(y, n, p) == static_cast<u64>(l);
        CHECK((idx == 0) == nth_power);
      }
    }
  }
  CHECK_THROWS_AS(power_residue_index(2, 13, 5), InvalidInput);
}

TEST_CASE("star_value") {
  CHECK(star_value(5) == 5);
  CHECK(star_value(3) == -3);
  CHECK(star_value(13) == 13);
  CHECK(star_value(7) == -7);
  for (u64 p : primes_up_to(2000))
    if (p > 2) CHECK(reduce(star_value(p), 4) == 1);
}

TEST_CASE("unit_scale_solve") {
  CHECK(unit_scale_solve(ResidueVector(5, {1, 2}), ResidueVector(5, {2, 4})) == 2u);
  CHECK_FALSE(unit_scale_solve(ResidueVector(3, {1, 0}), ResidueVector(3, {0, 1})).has_value());
  CHECK(unit_scale_solve(ResidueVector(9, {2, 4}), ResidueVector(9, {1, 2})) == 5u);
  CHECK(unit_scale_solve(ResidueVector(7, {}), ResidueVector(7, {})) == 1u);
  CHECK_THROWS_AS(unit_scale_solve(ResidueVector(5, {1}), ResidueVector(7, {1})), InvalidInput);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    const u64 n = 2 + rng() % 30;
    const std::size_t s = rng() % 4;
    std::vector<i64> a(s), b(s);
    for (auto& x : a) x = static_cast<i64>(rng() % n);
    if (rng() % 2) {
      // b a unit multiple of a: a solution must exist
      u64 u;
      do u = 1 + rng() % n; while (gcd(u, n) != 1);
      for (std::size_t i = 0; i < s; ++i) b[i] = static_cast<i64>(u * a[i] % n);
    } else {
      for (auto& x : b) x = static_cast<i64>(rng() % n);
    }
    const auto got = unit_scale_solve(ResidueVector(n, a), ResidueVector(n, b));
    CHECK(got == unit_scale_by_scan(a, b, n));
    // symmetry: b = u a iff a = u^-1 b
    const auto back = unit_scale_solve(ResidueVector(n, b), ResidueVector(n, a));
    CHECK(got.has_value() == back.has_value());
    if (got && back) {
      const auto ui = inverse_mod(*got, n);
      REQUIRE(ui);
      for (std::size_t i = 0; i < s; ++i) CHECK(*ui * reduce(b[i], n) % n == reduce(a[i], n));
    }
  }
}

TEST_CASE("subgroup_log and inverse_mod") {
  CHECK(subgroup_log(4, 2, 3, 7) == 2);  // 4^2 = 16 = 2 mod 7
  CHECK_THROWS_AS(subgroup_log(2, 3, 3, 7), InvalidInput);
  CHECK(inverse_mod(3, 7) == 5u);
  CHECK_FALSE(inverse_mod(6, 9).has_value());
}
