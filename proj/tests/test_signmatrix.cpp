#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "tameconf/errors.hpp"
#include "tameconf/signmatrix.hpp"

using namespace tameconf;

namespace {

using Flat = std::vector<int>;

SignMatrix from_flat(int s, const Flat& v) {
  IntMatrix m(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) m(i, j) = v[static_cast<std::size_t>(i * s + j)];
  return SignMatrix(m);
}

// Every sign matrix of size s, indexed by the bits of its off-diagonal slots.
std::vector<Flat> all_sign_matrices(int s) {
  std::vector<Flat> out;
  const int slots = s * (s - 1);
  for (long mask = 0; mask < (1L << slots); ++mask) {
    Flat v(static_cast<std::size_t>(s * s), 0);
    int bit = 0;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if (i != j) v[static_cast<std::size_t>(i * s + j)] = (mask >> bit++) & 1 ? -1 : 1;
    out.push_back(v);
  }
  return out;
}

Flat least_conjugate(int s, const Flat& v) {
  std::vector<int> perm(static_cast<std::size_t>(s));
  std::iota(perm.begin(), perm.end(), 0);
  Flat best = v;
  do {
    Flat w(v.size());
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) w[static_cast<std::size_t>(i * s + j)] = v[static_cast<std::size_t>(perm[i] * s + perm[j])];
    best = std::min(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// diag(S^2) must be s-k copies of s-1 plus k copies of s-2k+1 for some k.
bool qr_by_diagonal(int s, const Flat& v) {
  std::vector<int> d(static_cast<std::size_t>(s), 0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) d[i] += v[static_cast<std::size_t>(i * s + j)] * v[static_cast<std::size_t>(j * s + i)];
  for (int k = 1; k <= s; ++k) {
    const int lo = static_cast<int>(std::count(d.begin(), d.end(), s - 2 * k + 1));
    const int hi = static_cast<int>(std::count(d.begin(), d.end(), s - 1));
    if (s - 2 * k + 1 == s - 1 ? lo == s : (lo == k && hi == s - k)) return true;
  }
  return false;
}

int legendre_by_squares(u64 a, u64 p) {
  a %= p;
  for (u64 x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

}  // namespace

TEST_CASE("matrix text round trip and validation") {
  const auto s = SignMatrix::parse("0,-1,-1;-1,0,-1;1,1,0");
  CHECK(s.size() == 3);
  CHECK(s(2, 0) == 1);
  CHECK(SignMatrix::parse(s.to_string()) == s);
  CHECK_THROWS_AS(SignMatrix::parse("0,1;1"), InvalidInput);
  CHECK_THROWS_AS(SignMatrix::parse("1,1;1,0"), InvalidInput);
  CHECK_THROWS_AS(SignMatrix::parse("0,2;1,0"), InvalidInput);
  CHECK_THROWS_AS(SignMatrix::parse("0,x;1,0"), InvalidInput);
}

TEST_CASE("QR matrix of 3, 5, 7") {
  const std::vector<u64> ps{3, 5, 7};
  const auto m = qr_matrix_of_primes(ps);
  CHECK(m == SignMatrix::parse("0,-1,-1;-1,0,-1;1,-1,0"));
  const auto v = qr_test(m);
  CHECK(v.is_qr);
  CHECK(v.diagonal == std::vector<int>{0, 2, 0});
  CHECK(v.k == 2);
}

TEST_CASE("QR matrix of 5, 29 is all plus") {
  const std::vector<u64> ps{5, 29};
  CHECK(qr_matrix_of_primes(ps) == SignMatrix::parse("0,1;1,0"));
  CHECK_THROWS_AS(qr_matrix_of_primes(std::vector<u64>{2, 3}), InvalidInput);
  CHECK_THROWS_AS(qr_matrix_of_primes(std::vector<u64>{3, 3}), InvalidInput);
  CHECK_THROWS_AS(qr_matrix_of_primes(std::vector<u64>{9, 5}), InvalidInput);
}

TEST_CASE("QR matrix entries agree with squares") {
  std::mt19937_64 rng(3);
  auto ps = primes_up_to(2000);
  ps.erase(ps.begin());
  for (int t = 0; t < 200; ++t) {
    std::vector<u64> pick;
    while (pick.size() < 3) {
      const u64 p = ps[rng() % ps.size()];
      if (std::find(pick.begin(), pick.end(), p) == pick.end()) pick.push_back(p);
    }
    const auto m = qr_matrix_of_primes(pick);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(m(i, j) == legendre_by_squares(pick[i], pick[j]));
  }
}

TEST_CASE("qr_test on small cases") {
  CHECK(qr_test(SignMatrix::parse("0")).is_qr);
  CHECK(qr_test(SignMatrix::parse("0,-1;1,0")).is_qr);
  CHECK(qr_test(SignMatrix::parse("0,-1;-1,0")).is_qr);
  const auto bad = qr_test(SignMatrix::parse("0,-1,-1;-1,0,-1;1,1,0"));
  CHECK_FALSE(bad.is_qr);
  CHECK(bad.diagonal == std::vector<int>{0, 0, -2});
  CHECK_FALSE(bad.k.has_value());
}

TEST_CASE("qr_test matches the diagonal oracle for s <= 4") {
  for (int s = 1; s <= 4; ++s)
    for (const auto& v : all_sign_matrices(s)) CHECK(qr_test(from_flat(s, v)).is_qr == qr_by_diagonal(s, v));
}

TEST_CASE("every symmetric sign matrix is QR") {
  for (int s = 1; s <= 4; ++s)
    for (const auto& v : all_sign_matrices(s)) {
      const auto m = from_flat(s, v);
      if (m.is_symmetric()) CHECK(qr_test(m).is_qr);
    }
}

TEST_CASE("QR matrices of actual primes pass qr_test") {
  std::mt19937_64 rng(23);
  auto ps = primes_up_to(10000);
  ps.erase(ps.begin());
  for (int t = 0; t < 400; ++t) {
    const std::size_t s = 3 + t % 2;
    std::vector<u64> pick;
    while (pick.size() < s) {
      const u64 p = ps[rng() % ps.size()];
      if (std::find(pick.begin(), pick.end(), p) == pick.end()) pick.push_back(p);
    }
    CHECK(qr_test(qr_matrix_of_primes(pick)).is_qr);
  }
}

TEST_CASE("find_primes_for_sign_matrix") {
  const auto two = find_primes_for_sign_matrix(SignMatrix::parse("0,-1;-1,0"), 100);
  REQUIRE(two);
  CHECK(*two == std::vector<u64>{3, 5});
  CHECK_FALSE(find_primes_for_sign_matrix(SignMatrix::parse("0,-1,-1;-1,0,-1;1,1,0"), 2000));
  const auto one = find_primes_for_sign_matrix(SignMatrix::parse("0"), 100);
  REQUIRE(one);
  CHECK(*one == std::vector<u64>{3});
  const auto m = SignMatrix::parse("0,1,-1;1,0,-1;-1,-1,0");
  const auto w = find_primes_for_sign_matrix(m, 1000);
  REQUIRE(w);
  CHECK(qr_matrix_of_primes(*w) == m);
}

TEST_CASE("inertial_degree_matrix is QR") {
  for (int s = 1; s <= 5; ++s)
    for (int r = 0; r <= (s == 1 ? 0 : s); ++r) CHECK(qr_test(inertial_degree_matrix(s, r)).is_qr);
  CHECK_THROWS_AS(inertial_degree_matrix(1, 1), InvalidInput);
  CHECK_THROWS_AS(inertial_degree_matrix(3, 4), InvalidInput);
}

TEST_CASE("canonical_class is a class invariant") {
  std::mt19937_64 rng(29);
  for (int s = 2; s <= 4; ++s) {
    for (const auto& v : all_sign_matrices(s)) {
      if (rng() % 4) continue;
      const auto m = from_flat(s, v);
      const auto c = canonical_class(m);
      CHECK(c == from_flat(s, least_conjugate(s, v)));
      std::vector<int> perm(static_cast<std::size_t>(s));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(canonical_class(m.permuted(perm)) == c);
      CHECK(qr_test(m.permuted(perm)).is_qr == qr_test(m).is_qr);
    }
  }
}

TEST_CASE("census against brute-force orbit count") {
  CHECK(census(1) == CensusCounts{1, 1});
  CHECK(census(2) == CensusCounts{3, 3});  // (+,+), (+,-) ~ (-,+), (-,-)
  CHECK(census(3) == CensusCounts{16, 10});
  for (int s = 1; s <= 4; ++s) {
    std::set<Flat> all, qr;
    for (const auto& v : all_sign_matrices(s)) {
      const auto c = least_conjugate(s, v);
      all.insert(c);
      if (qr_by_diagonal(s, v)) qr.insert(c);
    }
    const auto got = census(s);
    CHECK(got.sign_classes == all.size());
    CHECK(got.qr_classes == qr.size());
  }
  CHECK_THROWS_AS(census(6), InvalidInput);
}
