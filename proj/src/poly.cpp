#include "tameconf/poly.hpp"

#include <algorithm>
#include <bitset>
#include <cctype>
#include <random>
#include <sstream>

#include "tameconf/errors.hpp"

namespace tameconf {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw InvalidInput("IntPoly: empty coefficient sequence");
  if (c_.back() == 0) throw InvalidInput("IntPoly: leading coefficient is zero");
  if (degree() > kMaxDegree) throw InvalidInput("IntPoly: degree above " + std::to_string(kMaxDegree));
}

IntPoly::IntPoly(std::initializer_list<long long> coeffs)
    : IntPoly(std::vector<BigInt>(coeffs.begin(), coeffs.end())) {}

IntPoly IntPoly::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw InvalidInput("IntPoly::parse: empty text");
  std::vector<BigInt> c;
  std::size_t i = 0;
  auto fail = [&]() { throw InvalidInput("IntPoly::parse: cannot read '" + text + "'"); };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!c.empty() || i > 0) {
      fail();
    }
    BigInt coef = 1;
    bool have_digits = false;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) {
      coef = BigInt(s.substr(start, i - start));
      have_digits = true;
    }
    std::size_t power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_digits) fail();
      ++i;
      if (i >= s.size() || s[i] != 'x') fail();
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || i - start > 3) fail();
        power = std::stoul(s.substr(start, i - start));
      }
    } else if (!have_digits) {
      fail();
    }
    if (power > static_cast<std::size_t>(kMaxDegree)) fail();
    if (c.size() <= power) c.resize(power + 1);
    c[power] += sign * coef;
  }
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
  if (degree() == 0) throw InvalidInput("IntPoly::derivative: constant polynomial");
  std::vector<BigInt> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * i);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::shifted(long long c) const {
  // Horner in x + c
  std::vector<BigInt> r{c_.back()};
  for (int i = degree() - 1; i >= 0; --i) {
    std::vector<BigInt> next(r.size() + 1);
    for (std::size_t k = 0; k < r.size(); ++k) {
      next[k + 1] += r[k];
      next[k] += r[k] * c;
    }
    next[0] += c_[i];
    r = std::move(next);
  }
  return IntPoly(std::move(r));
}

std::string IntPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& a = c_[i];
    if (a == 0 && !(first && i == 0)) continue;
    BigInt mag = a < 0 ? BigInt(-a) : a;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

namespace fp {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly reduce(const IntPoly& f, u64 p) {
  FpPoly r;
  const BigInt bp = p;
  for (const BigInt& c : f.coeffs()) {
    BigInt m = c % bp;
    if (m < 0) m += bp;
    r.push_back(static_cast<u64>(m));
  }
  trim(r);
  return r;
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly add(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = x >= p - y ? x - (p - y) : x + y;
  }
  trim(r);
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = x >= y ? x - y : x + (p - y);
  }
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const u64 t = mul_mod(a[i], b[j], p);
      r[i + j] = r[i + j] >= p - t ? r[i + j] - (p - t) : r[i + j] + t;
    }
  }
  trim(r);
  return r;
}

FpPoly scale(const FpPoly& a, u64 s, u64 p) {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_mod(a[i], s, p);
  trim(r);
  return r;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, u64 p) {
  if (b.empty()) throw InvalidInput("fp::divmod: division by zero polynomial");
  FpPoly r = a;
  if (r.size() < b.size()) return {{}, r};
  FpPoly q(r.size() - b.size() + 1, 0);
  const u64 inv = *inverse_mod(b.back(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    const u64 c = mul_mod(r[k + b.size() - 1], inv, p);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const u64 t = mul_mod(c, b[j], p);
      u64& x = r[k + j];
      x = x >= t ? x - t : x + (p - t);
    }
  }
  trim(q);
  trim(r);
  return {q, r};
}

FpPoly mod(const FpPoly& a, const FpPoly& b, u64 p) { return divmod(a, b, p).second; }

FpPoly monic(const FpPoly& a, u64 p) {
  if (a.empty()) return a;
  return scale(a, *inverse_mod(a.back(), p), p);
}

FpPoly gcd(FpPoly a, FpPoly b, u64 p) {
  while (!b.empty()) {
    FpPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

FpPoly powmod(const FpPoly& base, BigInt e, const FpPoly& m, u64 p) {
  FpPoly result = mod(FpPoly{1}, m, p);
  FpPoly b = mod(base, m, p);
  while (e > 0) {
    if (static_cast<int>(e & 1) == 1) result = mod(mul(result, b, p), m, p);
    e >>= 1;
    if (e > 0) b = mod(mul(b, b, p), m, p);
  }
  return result;
}

FpPoly derivative(const FpPoly& a, u64 p) {
  FpPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mul_mod(a[i], i % p, p));
  trim(r);
  return r;
}

std::string to_string(const FpPoly& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << "]";
  return os.str();
}

}  // namespace fp

namespace {

using Factors = std::vector<FpFactor>;

// Square-free decomposition of monic f: pairs (square-free part, multiplicity).
void squarefree(const FpPoly& f, u64 p, int mult, Factors& out) {
  if (fp::degree(f) <= 0) return;
  FpPoly c = fp::gcd(f, fp::derivative(f, p), p);
  FpPoly w = fp::divmod(f, c, p).first;
  int i = 1;
  while (fp::degree(w) > 0) {
    FpPoly y = fp::gcd(w, c, p);
    FpPoly z = fp::divmod(w, y, p).first;
    if (fp::degree(z) > 0) out.push_back({z, i * mult});
    ++i;
    w = y;
    c = fp::divmod(c, y, p).first;
  }
  if (fp::degree(c) > 0) {
    // c is a polynomial in x^p
    FpPoly root;
    for (std::size_t k = 0; k < c.size(); k += static_cast<std::size_t>(p)) root.push_back(c[k]);
    squarefree(root, p, mult * static_cast<int>(p), out);
  }
}

void equal_degree(const FpPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  const int n = fp::degree(g);
  if (n == d) {
    out.push_back(g);
    return;
  }
  BigInt pd = 1;
  for (int i = 0; i < d; ++i) pd *= p;
  std::uniform_int_distribution<u64> coef(0, p - 1);
  for (;;) {
    FpPoly a(static_cast<std::size_t>(n));
    for (auto& x : a) x = coef(rng);
    fp::trim(a);
    if (fp::degree(a) < 1) continue;
    FpPoly b;
    if (p == 2) {
      FpPoly t = a, acc = a;
      for (int i = 1; i < d; ++i) {
        t = fp::mod(fp::mul(t, t, p), g, p);
        acc = fp::add(acc, t, p);
      }
      b = acc;
    } else {
      b = fp::sub(fp::powmod(a, (pd - 1) / 2, g, p), FpPoly{1}, p);
    }
    FpPoly h = fp::gcd(g, b, p);
    const int dh = fp::degree(h);
    if (dh > 0 && dh < n) {
      equal_degree(h, d, p, rng, out);
      equal_degree(fp::divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

std::uint64_t seed_of(const FpPoly& f, u64 p) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ p;
  for (u64 c : f) {
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

std::vector<FpFactor> factor_mod_p(const FpPoly& f_in, u64 p) {
  if (p < 2 || !is_prime(p)) throw InvalidInput("factor_mod_p: modulus is not prime");
  if (f_in.empty()) throw InvalidInput("factor_mod_p: zero polynomial");
  const FpPoly f = fp::monic(f_in, p);
  std::mt19937_64 rng(seed_of(f, p));
  Factors sqf;
  squarefree(f, p, 1, sqf);
  Factors out;
  for (const auto& [part, mult] : sqf) {
    FpPoly g = part;
    const FpPoly x{0, 1};
    FpPoly h = fp::mod(x, g, p);
    for (int d = 1; fp::degree(g) >= 2 * d; ++d) {
      h = fp::powmod(h, p, g, p);
      FpPoly gd = fp::gcd(g, fp::sub(h, x, p), p);
      if (fp::degree(gd) > 0) {
        std::vector<FpPoly> pieces;
        equal_degree(gd, d, p, rng, pieces);
        for (auto& q : pieces) out.push_back({fp::monic(q, p), mult});
        g = fp::divmod(g, gd, p).first;
        h = fp::mod(h, g, p);
      }
    }
    if (fp::degree(g) > 0) out.push_back({g, mult});
  }
  std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    if (a.factor != b.factor) return a.factor < b.factor;
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

std::vector<FpFactor> factor_mod_p(const IntPoly& f, u64 p) {
  if (p < 2 || !is_prime(p)) throw InvalidInput("factor_mod_p: modulus is not prime");
  if (f.leading() % p == 0) throw InvalidInput("factor_mod_p: leading coefficient vanishes mod p");
  return factor_mod_p(fp::reduce(f, p), p);
}

namespace {

// Fraction-free Gaussian elimination.
BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

BigInt discriminant(const IntPoly& f) {
  const int n = f.degree();
  if (n < 1) throw InvalidInput("discriminant: degree must be positive");
  if (n == 1) return 1;
  const IntPoly d = f.derivative();
  const int m = n - 1;
  const std::size_t size = static_cast<std::size_t>(n + m);
  std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size, 0));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) syl[r][r + k] = f[n - k];
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) syl[m + r][r + k] = d.degree() >= m - k ? d[m - k] : BigInt(0);
  BigInt res = bareiss_det(std::move(syl));
  if ((n * (n - 1) / 2) % 2 == 1) res = -res;
  return res / f.leading();
}

namespace {

using ZPoly = std::vector<BigInt>;

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Symmetric residues in (-q/2, q/2].
void zreduce(ZPoly& a, const BigInt& q) {
  for (auto& c : a) {
    c %= q;
    if (c < 0) c += q;
    if (2 * c > q) c -= q;
  }
}

ZPoly lift_int(const FpPoly& a) { return ZPoly(a.begin(), a.end()); }

FpPoly to_fp(const ZPoly& a, u64 p) {
  FpPoly r;
  const BigInt bp = p;
  for (const auto& c : a) {
    BigInt m = c % bp;
    if (m < 0) m += bp;
    r.push_back(static_cast<u64>(m));
  }
  fp::trim(r);
  return r;
}

// s g + t h = 1 over F_p for coprime g, h.
std::pair<FpPoly, FpPoly> bezout(const FpPoly& g, const FpPoly& h, u64 p) {
  FpPoly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = fp::divmod(r0, r1, p);
    FpPoly s2 = fp::sub(s0, fp::mul(q, s1, p), p);
    FpPoly t2 = fp::sub(t0, fp::mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const u64 inv = *inverse_mod(r0[0], p);
  return {fp::scale(s0, inv, p), fp::scale(t0, inv, p)};
}

// Lifts F = g h (mod p), g and h monic and coprime, to F = G H (mod p^k).
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& F, const FpPoly& g, const FpPoly& h, u64 p, int k) {
  const auto [s, t] = bezout(g, h, p);
  ZPoly G = lift_int(g), H = lift_int(h);
  BigInt q = p;
  for (int j = 1; j < k; ++j) {
    ZPoly gh = zmul(G, H);
    ZPoly e(F.size(), 0);
    for (std::size_t i = 0; i < F.size(); ++i) e[i] = (F[i] - (i < gh.size() ? gh[i] : BigInt(0))) / q;
    const FpPoly eb = to_fp(e, p);
    auto [qq, sigma] = fp::divmod(fp::mul(s, eb, p), h, p);
    FpPoly tau = fp::add(fp::mul(qq, g, p), fp::mul(t, eb, p), p);
    for (std::size_t i = 0; i < tau.size(); ++i) G[i] += q * tau[i];
    for (std::size_t i = 0; i < sigma.size(); ++i) H[i] += q * sigma[i];
    q *= p;
    for (auto& c : G) c %= q;
    for (auto& c : H) c %= q;
  }
  return {G, H};
}

// Exact quotient of a by monic b over Z, if b divides a.
bool divides_monic(const ZPoly& b, ZPoly a) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return false;
  for (std::size_t k = a.size() - b.size() + 1; k-- > 0;) {
    const BigInt c = a[k + db];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[k + j] -= c * b[j];
  }
  return std::all_of(a.begin(), a.end(), [](const BigInt& c) { return c == 0; });
}

}  // namespace

bool is_irreducible(const IntPoly& f) {
  if (!f.is_monic()) throw InvalidInput("is_irreducible: polynomial must be monic");
  const int n = f.degree();
  if (n <= 1) return n == 1;
  const BigInt disc = discriminant(f);
  if (disc == 0) return false;

  // degrees a factor over Q could have, as seen from every prime tried
  std::bitset<IntPoly::kMaxDegree + 1> allowed;
  for (int d = 1; d < n; ++d) allowed.set(static_cast<std::size_t>(d));
  u64 best_p = 0;
  std::vector<FpFactor> best;
  int tried = 0;
  for (u64 p = 2; tried < 40; ++p) {
    if (!is_prime(p) || disc % p == 0) continue;
    ++tried;
    auto fac = factor_mod_p(f, p);
    std::bitset<IntPoly::kMaxDegree + 1> sums;
    sums.set(0);
    for (const auto& fa : fac) sums |= sums << static_cast<std::size_t>(fp::degree(fa.factor));
    allowed &= sums;
    if (allowed.none()) return true;
    if (best.empty() || fac.size() < best.size()) {
      best = fac;
      best_p = p;
    }
  }

  const u64 p = best_p;
  BigInt norm1 = 0;
  for (const auto& c : f.coeffs()) norm1 += c < 0 ? BigInt(-c) : c;
  const BigInt bound = (BigInt(1) << n) * norm1;
  int k = 1;
  BigInt q = p;
  while (q <= 2 * bound) {
    q *= p;
    ++k;
  }
  // lift the factorization one factor at a time
  std::vector<ZPoly> lifted;
  ZPoly rest(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    FpPoly others{1};
    for (std::size_t j = i + 1; j < best.size(); ++j) others = fp::mul(others, best[j].factor, p);
    auto [G, H] = hensel_pair(rest, best[i].factor, others, p, k);
    lifted.push_back(G);
    rest = H;
  }
  lifted.push_back(rest);

  const std::size_t r = lifted.size();
  for (std::size_t size = 1; 2 * size <= r; ++size) {
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      ZPoly prod{1};
      int deg = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (!pick[i]) continue;
        prod = zmul(prod, lifted[i]);
        zreduce(prod, q);
        deg += static_cast<int>(lifted[i].size()) - 1;
      }
      if (!allowed.test(static_cast<std::size_t>(deg))) continue;
      prod.back() = 1;
      if (divides_monic(prod, ZPoly(f.coeffs().begin(), f.coeffs().end()))) return false;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return true;
}

}  // namespace tameconf
