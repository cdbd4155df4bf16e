#include "tameconf/numberfield.hpp"

#include <algorithm>
#include <sstream>

#include "tameconf/errors.hpp"

namespace tameconf {

SplittingPattern SplittingPattern::from(std::vector<PrimeIdeal> ideals) {
  std::sort(ideals.begin(), ideals.end(), std::greater<>());
  return SplittingPattern{std::move(ideals)};
}

int SplittingPattern::degree() const {
  int d = 0;
  for (const auto& q : ideals) d += q.e * q.f;
  return d;
}

bool SplittingPattern::ramified() const {
  return std::any_of(ideals.begin(), ideals.end(), [](const PrimeIdeal& q) { return q.e > 1; });
}

std::string SplittingPattern::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    if (i) os << " ";
    os << "P" << i + 1;
    if (ideals[i].e > 1) os << "^" << ideals[i].e;
    if (ideals[i].f > 1) os << "(f=" << ideals[i].f << ")";
  }
  return os.str();
}

std::string to_string(PatternMethod m) {
  switch (m) {
    case PatternMethod::Dedekind: return "dedekind";
    case PatternMethod::MaximalOrder: return "maximal-order";
    case PatternMethod::IndexObstruction: return "index-obstruction";
  }
  return "?";
}

namespace {

void require_field_generator(const IntPoly& f) {
  if (!f.is_monic()) throw InvalidInput("polynomial must be monic: " + f.to_string());
  if (f.degree() < 1) throw InvalidInput("polynomial must have positive degree");
  if (!is_irreducible(f)) throw InvalidInput("polynomial is reducible over Q: " + f.to_string());
}

bool dedekind_unchecked(const IntPoly& f, u64 p) {
  const auto fac = factor_mod_p(f, p);
  // f = g h (mod p) with g the radical of f mod p
  FpPoly g{1}, h{1};
  for (const auto& fa : fac) {
    g = fp::mul(g, fa.factor, p);
    for (int k = 1; k < fa.multiplicity; ++k) h = fp::mul(h, fa.factor, p);
  }
  if (fp::degree(h) == 0) return true;
  std::vector<BigInt> gh(g.size() + h.size() - 1, 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) gh[i + j] += BigInt(g[i]) * h[j];
  FpPoly F;
  const BigInt bp = p;
  for (std::size_t i = 0; i < gh.size(); ++i) {
    const BigInt fi = i < f.coeffs().size() ? f.coeffs()[i] : BigInt(0);
    BigInt q = (gh[i] - fi) / bp;
    q %= bp;
    if (q < 0) q += bp;
    F.push_back(static_cast<u64>(q));
  }
  fp::trim(F);
  const FpPoly d = fp::gcd(fp::gcd(F, g, p), h, p);
  return fp::degree(d) == 0;
}

SplittingPattern pattern_from_factors(const IntPoly& f, u64 p) {
  std::vector<PrimeIdeal> ideals;
  for (const auto& fa : factor_mod_p(f, p)) ideals.push_back({fa.multiplicity, fp::degree(fa.factor)});
  return SplittingPattern::from(std::move(ideals));
}

PatternResult pattern_unchecked(const IntPoly& f, u64 p, bool allow_maximal_order) {
  // Z[theta + c] = Z[theta], so translating f cannot change the verdict
  if (dedekind_unchecked(f, p)) return {PatternMethod::Dedekind, pattern_from_factors(f, p)};
  if (!allow_maximal_order) return {PatternMethod::IndexObstruction, std::nullopt};
  return {PatternMethod::MaximalOrder, maximal_order_pattern(f, p)};
}

const std::vector<u64>& trial_primes() {
  static const std::vector<u64> primes = primes_up_to(kTrialLimit);
  return primes;
}

}  // namespace

bool dedekind_index_test(const IntPoly& f, u64 p) {
  if (!is_prime(p)) throw InvalidInput("dedekind_index_test: modulus is not prime");
  require_field_generator(f);
  return dedekind_unchecked(f, p);
}

PatternResult splitting_pattern(const IntPoly& f, u64 p, bool allow_maximal_order) {
  if (!is_prime(p)) throw InvalidInput("splitting_pattern: modulus is not prime");
  require_field_generator(f);
  return pattern_unchecked(f, p, allow_maximal_order);
}

std::vector<std::pair<u64, int>> factor_discriminant(const BigInt& disc, std::span<const u64> candidates) {
  if (disc == 0) throw InvalidInput("factor_discriminant: zero discriminant");
  BigInt rest = disc < 0 ? BigInt(-disc) : disc;
  std::map<u64, int> found;
  auto strip = [&](u64 q) {
    while (rest % q == 0) {
      rest /= q;
      ++found[q];
    }
  };
  for (u64 q : candidates)
    if (q >= 2 && is_prime(q)) strip(q);
  for (u64 q : trial_primes()) {
    if (BigInt(q) * q > rest) break;
    strip(q);
  }
  if (rest > 1) {
    const BigInt limit = kTrialLimit;
    if (rest >= limit * limit) {
      throw PartialFactorization("discriminant cofactor " + rest.str() + " has no prime factor up to " +
                                     std::to_string(kTrialLimit),
                                 rest);
    }
    ++found[static_cast<u64>(rest)];
  }
  return {found.begin(), found.end()};
}

Ramification ramified_primes(const IntPoly& f, std::span<const u64> candidates, bool allow_maximal_order) {
  require_field_generator(f);
  Ramification out;
  out.discriminant = discriminant(f);
  for (const auto& [q, k] : factor_discriminant(out.discriminant, candidates)) {
    (void)k;
    const auto r = pattern_unchecked(f, q, allow_maximal_order);
    if (!r.pattern) {
      out.unresolved.push_back(q);
    } else if (r.pattern->ramified()) {
      out.ramified.emplace(q, *r.pattern);
    } else {
      out.index_only.push_back(q);
    }
  }
  return out;
}

}  // namespace tameconf
