#include "tameconf/realize.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "tameconf/errors.hpp"

namespace tameconf {

namespace {

std::vector<PrimeData> collect_prime_data(const CyclotomicField& f) {
  std::vector<PrimeData> out;
  for (u64 p : f.primes()) {
    const auto d = decomposition_data(f, p);
    out.push_back({p, d.e, d.f});
  }
  return out;
}

RealizationCertificate certify(CyclotomicField field, std::optional<TameConfig> config,
                               std::optional<DecompMatrix> matrix) {
  RealizationCertificate cert{field.primes(), field.roots(), field, std::move(config), std::move(matrix), {}};
  cert.prime_data = collect_prime_data(cert.field);
  if (!verify_certificate(cert)) throw std::logic_error("constructed certificate failed re-verification");
  return cert;
}

}  // namespace

bool verify_certificate(const RealizationCertificate& cert) {
  const CyclotomicField& f = cert.field;
  if (f.primes() != cert.primes || f.roots() != cert.roots) return false;
  const CyclotomicField fresh(f.primes(), f.moduli(), f.images(), f.roots());
  auto ram = fresh.ramified_primes();
  if (ram.size() != fresh.primes().size()) return false;
  if (cert.prime_data.size() != cert.primes.size()) return false;
  for (const auto& pd : cert.prime_data) {
    const auto d = decomposition_data(fresh, pd.p);
    if (d.e != pd.e || d.f != pd.f) return false;
  }
  if (cert.matrix && !(decomposition_matrix(fresh) == *cert.matrix)) return false;
  if (cert.config && !verify_realization(fresh, *cert.config)) return false;
  return true;
}

SearchResult realize_split(u64 n, int s, u64 bound) {
  if (n < 2 || s < 1) throw InvalidInput("realize_split: need n >= 2 and s >= 1");
  SearchResult res;
  res.stats.bound = bound;
  std::vector<u64> chosen;
  for (u64 l = 3; l <= bound; l += 2) {
    ++res.stats.tuples_tried;
    if ((l - 1) % n == 0 && is_prime(l)) {
      chosen.push_back(l);
      break;
    }
  }
  if (chosen.empty()) return res;
  while (static_cast<int>(chosen.size()) < s) {
    u64 step = n;
    for (u64 l : chosen) {
      if (step > bound / l) return res;
      step *= l;
    }
    bool found = false;
    for (u64 l = step + 1; l <= bound; l += step) {
      ++res.stats.tuples_tried;
      if (!is_prime(l)) continue;
      const bool powers = std::all_of(chosen.begin(), chosen.end(), [&](u64 li) {
        return power_residue_index(static_cast<i64>(li), l, n) == 0;
      });
      if (powers) {
        chosen.push_back(l);
        found = true;
        break;
      }
    }
    if (!found) return res;
  }
  CyclotomicField field = standard_composite(chosen, n);
  TameConfig cfg = extract_config(field, chosen);
  for (int i = 0; i < cfg.size(); ++i) {
    if (cfg.T[i] != cfg.Z[i] || cfg.T[i].order() != static_cast<int>(n)) {
      throw std::logic_error("realize_split: constructed field is not split");
    }
  }
  res.certificate = certify(std::move(field), std::move(cfg), DecompMatrix::zero(n, s));
  return res;
}

SearchResult realize_matrix_odd(const DecompMatrix& m, u64 bound) {
  const u64 n = m.n();
  if (n < 3 || n % 2 == 0) throw InvalidInput("realize_matrix_odd: n must be odd and >= 3");
  const int s = m.size();
  SearchResult res;
  res.stats.bound = bound;
  std::vector<u64> primes, roots;
  while (static_cast<int>(primes.size()) < s) {
    const std::size_t t = primes.size();
    bool found = false;
    for (u64 p = n + 1; p <= bound; p += n) {
      ++res.stats.tuples_tried;
      if (p % 2 == 0 || !is_prime(p)) continue;
      if (std::find(primes.begin(), primes.end(), p) != primes.end()) continue;
      bool row_ok = true;
      for (std::size_t i = 0; i < t && row_ok; ++i)
        row_ok = power_residue_index(static_cast<i64>(p), primes[i], n, roots[i]) == m(static_cast<int>(t), static_cast<int>(i));
      if (!row_ok) continue;
      const u64 g0 = primitive_root(p);
      std::vector<i64> b, col;
      for (std::size_t i = 0; i < t; ++i) {
        b.push_back(static_cast<i64>(power_residue_index(static_cast<i64>(primes[i]), p, n, g0)));
        col.push_back(static_cast<i64>(m(static_cast<int>(i), static_cast<int>(t))));
      }
      const auto v = unit_scale_solve(ResidueVector(n, b), ResidueVector(n, col));
      if (!v) continue;
      // g = g0^u with u = v^-1 (mod n) scales every index by v
      u64 u = *inverse_mod(*v, n);
      if (u == 0) u = n;
      while (std::gcd(u, p - 1) != 1) u += n;
      primes.push_back(p);
      roots.push_back(pow_mod(g0, u, p));
      found = true;
      break;
    }
    if (!found) return res;
  }
  CyclotomicField field = standard_composite(primes, n, roots);
  res.certificate = certify(std::move(field), std::nullopt, m);
  return res;
}

namespace {

struct PrimeInfo {
  u64 l = 0;
  u64 g = 0;
  u64 c = 1;                 // gcd(exp G, l - 1)
  std::vector<u64> powers;   // (g^((l-1)/c))^k, k < c
};

u64 local_index(const PrimeInfo& pi, u64 x) {
  if (pi.c == 1) return 0;
  const u64 y = pow_mod(x % pi.l, (pi.l - 1) / pi.c, pi.l);
  for (u64 k = 0; k < pi.c; ++k)
    if (pi.powers[k] == y) return k;
  throw std::logic_error("local_index: residue outside the root-of-unity table");
}

class GeneralSolver {
 public:
  GeneralSolver(const TameConfig& target) : target_(target), B_(*target.group), goal_(config_key(target)) {
    for (int i = 0; i < target.size(); ++i) t_orders_.push_back(target.T[i].order());
    std::sort(t_orders_.begin(), t_orders_.end());
  }

  // gamma_i for the signature, or nullopt when no field with this data works
  std::optional<std::vector<Elem>> solve(const std::vector<u64>& c, const std::vector<std::vector<u64>>& idx) {
    const int s = static_cast<int>(c.size());
    std::vector<std::vector<Elem>> cands(s);
    for (int i = 0; i < s; ++i)
      for (int x = 1; x < B_.order(); ++x)
        if (c[i] % B_.element_order(static_cast<Elem>(x)) == 0) cands[i].push_back(static_cast<Elem>(x));
    std::vector<Elem> gam(s);
    std::optional<std::vector<Elem>> found;
    auto rec = [&](auto&& self, int i) -> void {
      if (found) return;
      if (i == s) {
        if (matches(gam, idx)) found = gam;
        return;
      }
      for (Elem x : cands[i]) {
        gam[i] = x;
        self(self, i + 1);
        if (found) return;
      }
    };
    rec(rec, 0);
    return found;
  }

 private:
  bool matches(const std::vector<Elem>& gam, const std::vector<std::vector<u64>>& idx) const {
    const int s = static_cast<int>(gam.size());
    std::vector<int> ords;
    for (Elem x : gam) ords.push_back(B_.element_order(x));
    std::sort(ords.begin(), ords.end());
    if (ords != t_orders_) return false;
    if (generate(B_, gam).order() != B_.order()) return false;
    ConfigKey key;
    for (int i = 0; i < s; ++i) {
      Elem frob = 0;
      for (int j = 0; j < s; ++j)
        if (j != i) frob = B_.mul(frob, B_.pow(gam[j], static_cast<long long>(idx[i][j])));
      const Elem tg[1] = {gam[i]};
      const Elem zg[2] = {gam[i], frob};
      key.emplace_back(generate(B_, tg).elements(), generate(B_, zg).elements());
    }
    std::sort(key.begin(), key.end());
    return key == goal_;
  }

  const TameConfig& target_;
  const FiniteGroup& B_;
  ConfigKey goal_;
  std::vector<int> t_orders_;
};

bool reciprocity_allows(const std::vector<u64>& c, const std::vector<std::vector<u64>>& frob, u64 exponent) {
  const int s = static_cast<int>(c.size());
  const bool four = exponent % 4 == 0;
  // eps_i = 1 iff l_i = 3 mod 4; free when exp G is not divisible by 4
  for (unsigned mask = 0; mask < (1u << s); ++mask) {
    bool ok = true;
    for (int i = 0; i < s && ok; ++i) {
      const bool eps = mask >> i & 1;
      if (four && c[i] % 2 == 0 && eps != (c[i] % 4 != 0)) ok = false;
    }
    for (int i = 0; i < s && ok; ++i)
      for (int j = i + 1; j < s && ok; ++j) {
        if (c[i] % 2 || c[j] % 2) continue;
        const unsigned lhs = static_cast<unsigned>((frob[i][j] + frob[j][i]) % 2);
        ok = lhs == ((mask >> i & 1) & (mask >> j & 1));
      }
    if (ok) return true;
  }
  return false;
}

// Number of signatures checked when none admits a match; nullopt when some
// signature matches or the space is too large to enumerate. Signatures that
// quadratic reciprocity forbids are skipped: with c_i, c_j even, frob[i][j]
// is even iff l_i is a square mod l_j, and l_i = 3 mod 4 is read off c_i when
// 4 | exp G (otherwise both residues mod 4 are tried).
std::optional<std::uint64_t> signature_space_empty(GeneralSolver& solver, u64 exponent, int s) {
  constexpr std::uint64_t kCap = 200000;
  std::vector<u64> divisors;
  for (u64 d = 1; d <= exponent; ++d)
    if (exponent % d == 0) divisors.push_back(d);
  std::uint64_t checked = 0;
  std::vector<u64> c(s);
  std::vector<std::vector<u64>> frob(s, std::vector<u64>(s, 0));
  bool matched = false, too_big = false;

  auto frobs = [&](auto&& self, int cell) -> void {
    if (matched || too_big) return;
    if (cell == s * s) {
      if (!reciprocity_allows(c, frob, exponent)) return;
      if (++checked > kCap) {
        too_big = true;
        return;
      }
      if (solver.solve(c, frob)) matched = true;
      return;
    }
    const int i = cell / s, j = cell % s;
    if (i == j) return self(self, cell + 1);
    for (u64 k = 0; k < c[j] && !matched && !too_big; ++k) {
      frob[i][j] = k;
      self(self, cell + 1);
    }
    frob[i][j] = 0;
  };
  auto cs = [&](auto&& self, int i) -> void {
    if (matched || too_big) return;
    if (i == s) return frobs(frobs, 0);
    for (u64 d : divisors) {
      c[i] = d;
      self(self, i + 1);
    }
  };
  cs(cs, 0);
  if (matched || too_big) return std::nullopt;
  return checked;
}

}  // namespace

SearchResult realize_abelian_general(const TameConfig& target, u64 bound) {
  const FiniteGroup& B = *target.group;
  if (!B.is_abelian()) throw InvalidInput("realize_abelian_general: group is not abelian");
  if (B.order() > 64) throw ResourceLimit("realize_abelian_general: |G| > 64");
  const int s = target.size();
  if (s < 1 || s > 3) throw UnsupportedScope("realize_abelian_general: rank must lie in [1, 3]");
  if (auto bad = config_violation(target)) throw InvalidInput("realize_abelian_general: " + *bad);

  u64 exponent = 1;
  for (int x = 0; x < B.order(); ++x) exponent = std::lcm(exponent, static_cast<u64>(B.element_order(static_cast<Elem>(x))));
  std::vector<u64> t_orders;
  for (const auto& t : target.T) t_orders.push_back(static_cast<u64>(t.order()));
  const u64 tmin = *std::min_element(t_orders.begin(), t_orders.end());

  std::vector<PrimeInfo> primes;
  for (u64 l : primes_up_to(bound)) {
    if (l == 2 || (l - 1) % tmin != 0) continue;
    PrimeInfo pi;
    pi.l = l;
    pi.g = primitive_root(l);
    pi.c = std::gcd(exponent, l - 1);
    const u64 h = pow_mod(pi.g, (l - 1) / pi.c, l);
    u64 x = 1;
    for (u64 k = 0; k < pi.c; ++k, x = mul_mod(x, h, l)) pi.powers.push_back(x);
    primes.push_back(std::move(pi));
  }

  SearchResult res;
  res.stats.bound = bound;
  GeneralSolver solver(target);
  std::unordered_map<std::uint64_t, std::optional<std::vector<Elem>>> memo;

  std::vector<std::size_t> idx(s);
  std::vector<u64> c(s);
  std::vector<std::vector<u64>> frob(s, std::vector<u64>(s, 0));
  std::vector<u64> sorted_t = t_orders;
  std::sort(sorted_t.begin(), sorted_t.end());

  auto admissible = [&]() {
    std::vector<u64> perm = sorted_t;
    do {
      bool ok = true;
      for (int i = 0; i < s && ok; ++i) ok = (primes[idx[i]].l - 1) % perm[i] == 0;
      if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };

  if (auto checked = signature_space_empty(solver, exponent, s)) {
    res.stats.signature_space_excluded = true;
    res.stats.signatures_checked = *checked;
    return res;
  }

  std::optional<std::vector<Elem>> hit;
  auto visit = [&]() -> bool {
    if (!admissible()) return false;
    ++res.stats.tuples_tried;
    std::uint64_t sig = 0;
    for (int i = 0; i < s; ++i) {
      c[i] = primes[idx[i]].c;
      sig = (sig << 7) | c[i];
    }
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < s; ++j) {
        if (i == j) continue;
        frob[i][j] = local_index(primes[idx[j]], primes[idx[i]].l);
        sig = (sig << 6) | frob[i][j];
      }
    }
    auto it = memo.find(sig);
    if (it == memo.end()) it = memo.emplace(sig, solver.solve(c, frob)).first;
    if (it->second) {
      hit = it->second;
      return true;
    }
    return false;
  };

  auto rec = [&](auto&& self, int depth, std::size_t start) -> bool {
    if (depth == s) return visit();
    for (std::size_t k = start; k < primes.size(); ++k) {
      idx[depth] = k;
      if (self(self, depth + 1, k + 1)) return true;
    }
    return false;
  };
  if (!rec(rec, 0, 0)) return res;

  const AbelianBasis basis = abelian_basis(B);
  std::vector<u64> moduli(basis.moduli.begin(), basis.moduli.end());
  std::vector<u64> lp, roots;
  std::vector<AbVec> images;
  for (int i = 0; i < s; ++i) {
    lp.push_back(primes[idx[i]].l);
    roots.push_back(primes[idx[i]].g);
    const auto& co = basis.coords[(*hit)[i]];
    images.emplace_back(co.begin(), co.end());
  }
  res.certificate = certify(CyclotomicField(lp, moduli, images, roots), target, std::nullopt);
  return res;
}

ReciprocityResult reciprocity_check(const ReciprocityInstance& inst) {
  const u64 n = inst.n, p = inst.p;
  if (n == 0) throw InvalidInput("reciprocity: n must be positive");
  if (!is_prime(p) || (p - 1) % n != 0) throw InvalidInput("reciprocity: p must be a prime = 1 mod n");
  for (std::size_t i = 0; i < inst.l.size(); ++i) {
    const u64 l = inst.l[i];
    if (!is_prime(l) || l == p || std::gcd(l, n) != 1) {
      throw InvalidInput("reciprocity: l = " + std::to_string(l) + " must be a prime, != p, coprime to n");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (inst.l[j] == l) throw InvalidInput("reciprocity: repeated l");
  }
  ReciprocityResult r;
  r.g = primitive_root(p);
  if (inst.zeta) {
    r.zeta = *inst.zeta % p;
    if (r.zeta == 0 || order_mod_prime(r.zeta, p) != n) throw InvalidInput("reciprocity: zeta must have order n");
  } else {
    r.zeta = 1;
    while (order_mod_prime(r.zeta, p) != n) ++r.zeta;
  }
  std::vector<i64> a, b;
  for (u64 l : inst.l) {
    const u64 kummer = pow_mod(l, (p - 1) / n, p);
    r.a.push_back(subgroup_log(r.zeta, kummer, n, p));
    r.b.push_back(power_residue_index(static_cast<i64>(l), p, n, r.g));
    a.push_back(static_cast<i64>(r.a.back()));
    b.push_back(static_cast<i64>(r.b.back()));
  }
  r.unit = unit_scale_solve(ResidueVector(n, a), ResidueVector(n, b));
  r.holds = r.unit.has_value();
  return r;
}

}  // namespace tameconf
