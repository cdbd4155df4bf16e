// p-maximal orders by Round 2, and the decomposition of p read from the
// idempotents of O/pO.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>

#include "tameconf/errors.hpp"
#include "tameconf/numberfield.hpp"

namespace tameconf {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using ZVec = std::vector<BigInt>;
using ZMat = std::vector<ZVec>;
using FVec = std::vector<u64>;
using FMat = std::vector<FVec>;

// ---- linear algebra over F_p (row vectors) ----

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(FMat& m, u64 p) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t r = row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[row], m[r]);
    const u64 inv = *inverse_mod(m[row][c], p);
    for (auto& x : m[row]) x = mul_mod(x, inv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      const u64 k = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + p - mul_mod(k, m[row][j], p)) % p;
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t rank(FMat m, u64 p) { return rref(m, p).size(); }

// Basis of {x : sum_i x_i * rows[i] = 0}, rows having `width` entries.
FMat left_kernel(const FMat& rows, std::size_t width, u64 p) {
  const std::size_t n = rows.size();
  // transpose: columns of rows become equations in x
  FMat eq(width, FVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < width; ++j) eq[j][i] = rows[i][j];
  const auto piv = rref(eq, p);
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  FMat out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    FVec v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = (p - eq[r][free]) % p;
    out.push_back(std::move(v));
  }
  return out;
}

// ---- integer lattices ----

// Hermite normal form (upper triangular, positive pivots) of a full-rank
// lattice containing modulus * Z^n; entries are reduced modulo the pivots.
ZMat hnf(ZMat gens, std::size_t n) {
  std::size_t row = 0;
  for (std::size_t c = 0; c < n; ++c) {
    for (;;) {
      std::size_t best = gens.size();
      for (std::size_t r = row; r < gens.size(); ++r) {
        if (gens[r][c] == 0) continue;
        if (best == gens.size() || abs(gens[r][c]) < abs(gens[best][c])) best = r;
      }
      if (best == gens.size()) throw std::logic_error("hnf: lattice is not full rank");
      std::swap(gens[row], gens[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < gens.size(); ++r) {
        if (gens[r][c] == 0) continue;
        const BigInt q = gens[r][c] / gens[row][c];
        for (std::size_t j = c; j < n; ++j) gens[r][j] -= q * gens[row][j];
        if (gens[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (gens[row][c] < 0)
      for (auto& x : gens[row]) x = -x;
    for (std::size_t r = 0; r < row; ++r) {
      BigInt q = gens[r][c] / gens[row][c];
      if (gens[r][c] - q * gens[row][c] < 0) q -= 1;
      for (std::size_t j = c; j < n; ++j) gens[r][j] -= q * gens[row][j];
    }
    ++row;
  }
  gens.resize(n);
  return gens;
}

// Coordinates y with y * H = v for upper-triangular H.
std::vector<Rat> solve_upper(const ZMat& H, const std::vector<Rat>& v) {
  const std::size_t n = H.size();
  std::vector<Rat> y(n);
  std::vector<Rat> rest = v;
  for (std::size_t c = 0; c < n; ++c) {
    y[c] = rest[c] / Rat(H[c][c]);
    for (std::size_t j = c; j < n; ++j) rest[j] -= y[c] * Rat(H[c][j]);
  }
  return y;
}

BigInt as_integer(const Rat& r) {
  if (boost::multiprecision::denominator(r) != 1) throw std::logic_error("order: non-integral coordinate");
  return boost::multiprecision::numerator(r);
}

// ---- orders ----

// Z-basis w_i = (1/den) sum_j basis[i][j] theta^j, basis upper triangular.
struct Order {
  std::size_t n = 0;
  ZMat basis;
  BigInt den = 1;
  std::vector<std::vector<ZVec>> table;  // w_i w_j = sum_k table[i][j][k] w_k
  ZVec one;
};

ZVec poly_mul_mod(const ZVec& a, const ZVec& b, const IntPoly& f) {
  const std::size_t n = static_cast<std::size_t>(f.degree());
  ZVec r(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i + j] += a[i] * b[j];
  for (std::size_t k = 2 * n - 1; k >= n; --k) {
    const BigInt c = r[k];
    if (c == 0) continue;
    r[k] = 0;
    for (std::size_t j = 0; j < n; ++j) r[k - n + j] -= c * f[static_cast<int>(j)];
  }
  r.resize(n);
  return r;
}

ZVec coords_in(const Order& o, const ZVec& power_numer, const BigInt& power_den) {
  // element (1/power_den) power_numer = sum y_i w_i
  std::vector<Rat> v(o.n);
  for (std::size_t j = 0; j < o.n; ++j) v[j] = Rat(power_numer[j] * o.den, power_den);
  const auto y = solve_upper(o.basis, v);
  ZVec out;
  for (const auto& r : y) out.push_back(as_integer(r));
  return out;
}

void build_table(Order& o, const IntPoly& f) {
  o.table.assign(o.n, std::vector<ZVec>(o.n));
  for (std::size_t i = 0; i < o.n; ++i) {
    for (std::size_t j = i; j < o.n; ++j) {
      o.table[i][j] = coords_in(o, poly_mul_mod(o.basis[i], o.basis[j], f), o.den * o.den);
      o.table[j][i] = o.table[i][j];
    }
  }
  ZVec unit(o.n, 0);
  unit[0] = 1;
  o.one = coords_in(o, unit, 1);
}

// ---- the algebra O/pO ----

struct Algebra {
  std::size_t n;
  u64 p;
  std::vector<std::vector<FVec>> c;
  FVec one;

  Algebra(const Order& o, u64 prime) : n(o.n), p(prime) {
    const BigInt bp = p;
    auto red = [&](const BigInt& x) {
      BigInt m = x % bp;
      if (m < 0) m += bp;
      return static_cast<u64>(m);
    };
    c.assign(n, std::vector<FVec>(n, FVec(n)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) c[i][j][k] = red(o.table[i][j][k]);
    for (const auto& x : o.one) one.push_back(red(x));
  }

  FVec mul(const FVec& a, const FVec& b) const {
    FVec r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        const u64 s = mul_mod(a[i], b[j], p);
        for (std::size_t k = 0; k < n; ++k) r[k] = (r[k] + mul_mod(s, c[i][j][k], p)) % p;
      }
    }
    return r;
  }

  FVec pow(FVec a, u64 e) const {
    FVec r = one;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  FVec apply(const FMat& m, const FVec& x) const {
    FVec r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t k = 0; k < n; ++k) r[k] = (r[k] + mul_mod(x[i], m[i][k], p)) % p;
    }
    return r;
  }

  FVec unit(std::size_t i) const {
    FVec v(n, 0);
    v[i] = 1;
    return v;
  }

  // rows: images of the basis under x -> x^(p^m), m minimal with p^m >= n
  FMat frobenius_power(int* exponent_out = nullptr) const {
    FMat frob;
    for (std::size_t i = 0; i < n; ++i) frob.push_back(pow(unit(i), p));
    FMat m = frob;
    int e = 1;
    for (BigInt q = p; q < n; q *= p, ++e) {
      FMat next;
      for (const auto& row : m) next.push_back(apply(frob, row));
      m = std::move(next);
    }
    if (exponent_out) *exponent_out = e;
    return m;
  }

  FMat frobenius() const {
    FMat frob;
    for (std::size_t i = 0; i < n; ++i) frob.push_back(pow(unit(i), p));
    return frob;
  }

  // p-radical of the algebra: kernel of x -> x^(p^m)
  FMat radical() const { return left_kernel(frobenius_power(), n, p); }
};

ZMat lattice_gens(const FMat& lifts, std::size_t n, u64 p) {
  ZMat gens;
  for (const auto& v : lifts) gens.emplace_back(v.begin(), v.end());
  for (std::size_t i = 0; i < n; ++i) {
    ZVec e(n, 0);
    e[i] = p;
    gens.push_back(std::move(e));
  }
  return gens;
}

// One Round 2 step; false when O is already p-maximal.
bool enlarge(Order& o, const IntPoly& f, u64 p) {
  const std::size_t n = o.n;
  const Algebra alg(o, p);
  const ZMat ip = hnf(lattice_gens(alg.radical(), n, p), n);
  // x in O with x * I_p in p * I_p, as a left kernel over F_p
  FMat rows(n);
  const BigInt bp = p;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rat> prod(n, Rat(0));
      for (std::size_t l = 0; l < n; ++l) {
        if (ip[j][l] == 0) continue;
        for (std::size_t t = 0; t < n; ++t) prod[t] += Rat(ip[j][l] * o.table[k][l][t]);
      }
      for (const auto& y : solve_upper(ip, prod)) {
        BigInt m = as_integer(y) % bp;
        if (m < 0) m += bp;
        rows[k].push_back(static_cast<u64>(m));
      }
    }
  }
  const FMat ker = left_kernel(rows, n * n, p);
  if (ker.empty()) return false;
  // O' = (1/p) U with U = pO + lifts of the kernel
  const ZMat u = hnf(lattice_gens(ker, n, p), n);
  ZMat basis(n, ZVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t j = 0; j < n; ++j) basis[i][j] += u[i][l] * o.basis[l][j];
  BigInt den = o.den * p;
  BigInt g = den;
  for (const auto& row : basis)
    for (const auto& x : row) g = gcd(g, x);
  for (auto& row : basis)
    for (auto& x : row) x /= g;
  o.basis = hnf(basis, n);
  o.den = den / g;
  build_table(o, f);
  return true;
}

FVec scalar(const Algebra& alg, u64 s) {
  FVec r = alg.one;
  for (auto& x : r) x = mul_mod(x, s, alg.p);
  return r;
}

FVec sub(const FVec& a, const FVec& b, u64 p) {
  FVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + p - b[i]) % p;
  return r;
}

bool is_zero(const FVec& v) {
  return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

// Minimal polynomial (monic, constant-first) of x by Krylov iteration.
FpPoly minimal_polynomial(const Algebra& alg, const FVec& x) {
  const u64 p = alg.p;
  FMat powers{alg.one};
  for (;;) {
    const FVec next = alg.mul(powers.back(), x);
    FMat rows = powers;
    rows.push_back(next);
    const FMat ker = left_kernel(rows, alg.n, p);
    if (!ker.empty()) {
      // the kernel is one-dimensional with a nonzero last coordinate
      FVec rel = ker.front();
      const u64 inv = *inverse_mod(rel.back(), p);
      FpPoly m;
      for (u64 c : rel) m.push_back(mul_mod(c, inv, p));
      return m;
    }
    powers.push_back(next);
  }
}

}  // namespace

SplittingPattern maximal_order_pattern(const IntPoly& f, u64 p) {
  if (!f.is_monic()) throw InvalidInput("maximal_order_pattern: polynomial must be monic");
  if (!is_prime(p)) throw InvalidInput("maximal_order_pattern: modulus is not prime");
  Order o;
  o.n = static_cast<std::size_t>(f.degree());
  o.basis.assign(o.n, ZVec(o.n, 0));
  for (std::size_t i = 0; i < o.n; ++i) o.basis[i][i] = 1;
  build_table(o, f);
  while (enlarge(o, f, p)) {
  }

  const Algebra alg(o, p);
  const std::size_t n = alg.n;
  int m = 1;
  const FMat frob_m = alg.frobenius_power(&m);
  const FMat rad = left_kernel(frob_m, n, p);
  // y lies in the radical iff a . y = 0 for every row a of ann
  FMat ann;
  if (rad.empty()) {
    for (std::size_t i = 0; i < n; ++i) ann.push_back(alg.unit(i));
  } else {
    FMat cols(n, FVec(rad.size()));
    for (std::size_t i = 0; i < rad.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) cols[j][i] = rad[i][j];
    ann = left_kernel(cols, rad.size(), p);
  }

  // x with x^p - x in the radical: the split semisimple part
  const FMat frob = alg.frobenius();
  FMat cond(n);
  for (std::size_t i = 0; i < n; ++i) {
    const FVec d = sub(frob[i], alg.unit(i), p);
    for (const auto& a : ann) {
      u64 s = 0;
      for (std::size_t k = 0; k < n; ++k) s = (s + mul_mod(d[k], a[k], p)) % p;
      cond[i].push_back(s);
    }
  }
  const FMat fixed = left_kernel(cond, ann.size(), p);

  std::vector<FVec> idem{alg.one};
  for (const auto& b : fixed) {
    const FVec c = alg.apply(frob_m, b);  // kills the nilpotent part
    const FpPoly mp = minimal_polynomial(alg, c);
    std::vector<u64> roots;
    for (const auto& fa : factor_mod_p(mp, p)) {
      if (fa.factor.size() != 2) throw std::logic_error("maximal_order_pattern: eigenvalue outside F_p");
      roots.push_back((p - fa.factor[0]) % p);
    }
    if (roots.size() < 2) continue;
    std::vector<FVec> next;
    for (u64 lam : roots) {
      FVec e = alg.one;
      for (u64 mu : roots) {
        if (mu == lam) continue;
        const u64 inv = *inverse_mod((lam + p - mu) % p, p);
        FVec t = sub(c, scalar(alg, mu), p);
        for (auto& x : t) x = mul_mod(x, inv, p);
        e = alg.mul(e, t);
      }
      for (const auto& old : idem) {
        FVec piece = alg.mul(old, e);
        if (!is_zero(piece)) next.push_back(std::move(piece));
      }
    }
    idem = std::move(next);
  }

  std::vector<PrimeIdeal> ideals;
  for (const auto& e : idem) {
    FMat whole, local_rad;
    for (std::size_t i = 0; i < n; ++i) whole.push_back(alg.mul(e, alg.unit(i)));
    for (const auto& v : rad) local_rad.push_back(alg.mul(e, v));
    const int dim = static_cast<int>(rank(whole, p));
    const int fdeg = dim - static_cast<int>(rank(local_rad, p));
    if (fdeg <= 0 || dim % fdeg != 0) throw std::logic_error("maximal_order_pattern: inconsistent local algebra");
    ideals.push_back({dim / fdeg, fdeg});
  }
  auto pat = SplittingPattern::from(std::move(ideals));
  if (pat.degree() != f.degree()) throw std::logic_error("maximal_order_pattern: sum e*f differs from the degree");
  return pat;
}

}  // namespace tameconf
