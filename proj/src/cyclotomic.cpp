#include "tameconf/cyclotomic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tameconf/errors.hpp"

namespace tameconf {

CyclotomicField::CyclotomicField(std::vector<u64> primes, std::vector<u64> moduli, std::vector<AbVec> images,
                                 std::vector<u64> roots)
    : primes_(std::move(primes)), roots_(std::move(roots)), moduli_(std::move(moduli)), images_(std::move(images)) {
  if (images_.size() != primes_.size()) throw InvalidInput("cyclotomic field: one image per prime required");
  if (!roots_.empty() && roots_.size() != primes_.size()) throw InvalidInput("cyclotomic field: one root per prime");
  for (u64 d : moduli_)
    if (d == 0) throw InvalidInput("cyclotomic field: zero modulus");
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const u64 l = primes_[i];
    if (l == 2 || !is_prime(l)) {
      throw UnsupportedScope("cyclotomic field: conductor prime " + std::to_string(l) + " is not an odd prime");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (primes_[j] == l) throw InvalidInput("cyclotomic field: repeated prime");
  }
  if (roots_.empty()) {
    for (u64 l : primes_) roots_.push_back(primitive_root(l));
  }
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const u64 l = primes_[i], g = roots_[i] % l;
    if (g == 0 || order_mod_prime(g, l) != l - 1) {
      throw InvalidInput("cyclotomic field: " + std::to_string(roots_[i]) + " is not a primitive root mod " +
                         std::to_string(l));
    }
    if (images_[i].size() != moduli_.size()) throw InvalidInput("cyclotomic field: image has wrong length");
    for (std::size_t k = 0; k < moduli_.size(); ++k) images_[i][k] %= moduli_[k];
    image_orders_.push_back(order_of(images_[i]));
    if ((l - 1) % image_orders_.back() != 0) {
      throw InvalidInput("cyclotomic field: image order does not divide " + std::to_string(l) + " - 1");
    }
  }

  elements_.push_back(AbVec(moduli_.size(), 0));
  index_.emplace(elements_.front(), 0);
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    for (const auto& gam : images_) {
      AbVec next = add(elements_[k], gam);
      if (index_.count(next)) continue;
      if (elements_.size() >= static_cast<std::size_t>(kElementCap)) {
        throw ResourceLimit("cyclotomic field: degree exceeds " + std::to_string(kElementCap));
      }
      index_.emplace(next, static_cast<Elem>(elements_.size()));
      elements_.push_back(std::move(next));
    }
  }
  const int n = degree();
  std::vector<Elem> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = index_.at(add(elements_[a], elements_[b]));
  group_ = std::make_shared<FiniteGroup>(FiniteGroup::from_table(n, std::move(table), "Gal(F/Q)"));
}

CyclotomicField CyclotomicField::rational() { return CyclotomicField({}, {}, {}); }

u64 CyclotomicField::m() const {
  u64 m = 1;
  for (u64 l : primes_) {
    if (m > std::numeric_limits<u64>::max() / l) throw ResourceLimit("conductor exceeds 2^64");
    m *= l;
  }
  return m;
}

std::vector<u64> CyclotomicField::ramified_primes() const {
  std::vector<u64> out;
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (image_orders_[i] > 1) out.push_back(primes_[i]);
  return out;
}

Elem CyclotomicField::index_of(const AbVec& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw InvalidInput("vector is not in the Galois group");
  return it->second;
}

AbVec CyclotomicField::add(const AbVec& a, const AbVec& b) const {
  AbVec r(moduli_.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = (a[k] + b[k]) % moduli_[k];
  return r;
}

AbVec CyclotomicField::scale(const AbVec& a, u64 c) const {
  AbVec r(moduli_.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = mul_mod(a[k], c % moduli_[k], moduli_[k]);
  return r;
}

u64 CyclotomicField::order_of(const AbVec& a) const {
  u64 o = 1;
  for (std::size_t k = 0; k < a.size(); ++k) o = std::lcm(o, moduli_[k] / std::gcd(moduli_[k], a[k]));
  return o;
}

Elem CyclotomicField::psi_local(std::size_t i, u64 x) const {
  const u64 o = image_orders_[i];
  if (o == 1) return 0;
  const u64 l = primes_[i];
  if (x % l == 0) throw InvalidInput("psi: residue divisible by a conductor prime");
  const u64 e = (l - 1) / o;
  const u64 k = subgroup_log(pow_mod(roots_[i], e, l), pow_mod(x % l, e, l), o, l);
  return index_of(scale(images_[i], k));
}

Elem CyclotomicField::psi(u64 a) const {
  AbVec acc(moduli_.size(), 0);
  for (std::size_t i = 0; i < primes_.size(); ++i) acc = add(acc, elements_[psi_local(i, a % primes_[i])]);
  return index_of(acc);
}

Subgroup CyclotomicField::generated(std::span<const Elem> gens) const { return generate(*group_, gens); }

std::vector<u64> CyclotomicField::subgroup_H(u64 cap) const {
  const u64 mm = m();
  if (mm > cap) throw ResourceLimit("subgroup_H: modulus above the enumeration cap");
  std::vector<u64> out;
  for (u64 a = 1; a < std::max<u64>(mm, 2); ++a)
    if (std::gcd(a, mm) == 1 && psi(a) == 0) out.push_back(a);
  return out;
}

u64 CyclotomicField::least_residue(Elem e, u64 cap) const {
  const u64 mm = m();
  for (u64 a = 1; a <= std::min(cap, std::max<u64>(mm, 1)); ++a)
    if (std::gcd(a, mm) == 1 && psi(a) == e) return a;
  throw ResourceLimit("least_residue: no representative below the cap");
}

CyclotomicField field_K_n_p(u64 p, u64 n) {
  if (p == 2 || !is_prime(p)) throw InvalidInput("K_n(p): p must be an odd prime");
  if (n == 0 || (p - 1) % n != 0) throw InvalidInput("K_n(p): n does not divide p - 1");
  return CyclotomicField({p}, {n}, {AbVec{1 % n}});
}

CyclotomicField standard_composite(std::span<const u64> primes, u64 n, std::span<const u64> roots) {
  const std::size_t s = primes.size();
  std::vector<AbVec> images(s, AbVec(s, 0));
  for (std::size_t i = 0; i < s; ++i) images[i][i] = 1 % n;
  return CyclotomicField(std::vector<u64>(primes.begin(), primes.end()), std::vector<u64>(s, n), std::move(images),
                         std::vector<u64>(roots.begin(), roots.end()));
}

CyclotomicField composite(const CyclotomicField& a, const CyclotomicField& b) {
  if (a.primes().empty()) return b;
  if (b.primes().empty()) return a;
  std::vector<u64> pa = a.primes(), pb = b.primes();
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  std::vector<u64> common;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
  if (!common.empty() && pa != pb) throw UnsupportedScope("composite: prime supports overlap without being equal");

  auto locate = [](const CyclotomicField& f, u64 l) {
    return static_cast<std::size_t>(std::find(f.primes().begin(), f.primes().end(), l) - f.primes().begin());
  };
  std::vector<u64> moduli = a.moduli();
  moduli.insert(moduli.end(), b.moduli().begin(), b.moduli().end());
  const std::size_t ka = a.moduli().size(), kb = b.moduli().size();
  std::vector<u64> primes, roots;
  std::vector<AbVec> images;
  std::vector<u64> all = pa;
  if (common.empty()) {
    all.insert(all.end(), pb.begin(), pb.end());
    std::sort(all.begin(), all.end());
  }
  for (u64 l : all) {
    AbVec img(ka + kb, 0);
    u64 root = 0;
    const std::size_t ia = locate(a, l), ib = locate(b, l);
    if (ia < a.primes().size()) {
      std::copy(a.images()[ia].begin(), a.images()[ia].end(), img.begin());
      root = a.roots()[ia];
    }
    if (ib < b.primes().size()) {
      std::copy(b.images()[ib].begin(), b.images()[ib].end(), img.begin() + ka);
      if (root != 0 && root != b.roots()[ib]) {
        throw UnsupportedScope("composite: factors use different primitive roots at " + std::to_string(l));
      }
      root = b.roots()[ib];
    }
    primes.push_back(l);
    roots.push_back(root);
    images.push_back(std::move(img));
  }
  return CyclotomicField(std::move(primes), std::move(moduli), std::move(images), std::move(roots));
}

namespace {

std::optional<std::size_t> prime_slot(const CyclotomicField& f, u64 p) {
  const auto it = std::find(f.primes().begin(), f.primes().end(), p);
  if (it == f.primes().end()) return std::nullopt;
  return static_cast<std::size_t>(it - f.primes().begin());
}

}  // namespace

Subgroup inertia_group(const CyclotomicField& f, u64 p) {
  const auto j = prime_slot(f, p);
  if (!j) return trivial_subgroup();
  const Elem gen = f.index_of(f.images()[*j]);
  return f.generated(std::span<const Elem>(&gen, 1));
}

DecompositionData decomposition_data(const CyclotomicField& f, u64 p) {
  if (!is_prime(p)) throw InvalidInput("decomposition_data: " + std::to_string(p) + " is not prime");
  DecompositionData d;
  d.T = inertia_group(f, p);
  const auto j = prime_slot(f, p);
  if (j) {
    // Frobenius coset: a = p mod l_i for i != j, a = 1 mod p
    const auto& G = *f.galois_group();
    Elem acc = 0;
    for (std::size_t i = 0; i < f.primes().size(); ++i)
      if (i != *j) acc = G.mul(acc, f.psi_local(i, p % f.primes()[i]));
    d.frobenius = acc;
  } else {
    d.frobenius = f.psi(p);
  }
  std::vector<Elem> gens = d.T.elements();
  gens.push_back(d.frobenius);
  d.Z = f.generated(gens);
  d.e = d.T.order();
  d.f = d.Z.order() / d.T.order();
  return d;
}

TameConfig extract_config(const CyclotomicField& f, std::span<const u64> prime_order) {
  std::vector<u64> want(prime_order.begin(), prime_order.end()), have = f.ramified_primes();
  std::sort(want.begin(), want.end());
  std::sort(have.begin(), have.end());
  if (std::adjacent_find(want.begin(), want.end()) != want.end() || want != have) {
    throw InvalidInput("extract_config: prime order does not list exactly the ramified primes");
  }
  TameConfig cfg{f.galois_group(), {}, {}};
  for (u64 p : prime_order) {
    auto d = decomposition_data(f, p);
    cfg.T.push_back(std::move(d.T));
    cfg.Z.push_back(std::move(d.Z));
  }
  return cfg;
}

std::optional<RealizationWitness> verify_realization(const CyclotomicField& f, const TameConfig& target) {
  const FiniteGroup& B = *target.group;
  if (!B.is_abelian() || B.order() != f.degree()) return std::nullopt;
  const auto ram = f.ramified_primes();
  if (static_cast<int>(ram.size()) != target.size()) return std::nullopt;
  const TameConfig mine = extract_config(f, ram);
  const auto iso = find_isomorphism(*f.galois_group(), B);
  if (!iso) return std::nullopt;
  const ConfigKey goal = config_key(target);
  for (const auto& alpha : automorphisms(B)) {
    Automorphism phi(iso->size());
    for (std::size_t x = 0; x < iso->size(); ++x) phi[x] = alpha[(*iso)[x]];
    const TameConfig mapped = apply_automorphism(TameConfig{target.group, mine.T, mine.Z}, phi);
    if (config_key(mapped) != goal) continue;
    RealizationWitness w;
    w.isomorphism = phi;
    std::vector<bool> used(target.size(), false);
    for (int i = 0; i < mapped.size(); ++i) {
      for (int j = 0; j < target.size(); ++j) {
        if (!used[j] && mapped.T[i] == target.T[j] && mapped.Z[i] == target.Z[j]) {
          used[j] = true;
          w.prime_to_index.push_back(j);
          break;
        }
      }
    }
    return w;
  }
  return std::nullopt;
}

DecompMatrix::DecompMatrix(u64 n, DenseMatrix<i64> entries) : n_(n), a_(std::move(entries)) {
  if (n_ == 0) throw InvalidInput("decomposition matrix: n must be positive");
  if (a_.rows() != a_.cols() || a_.rows() < 1) throw InvalidInput("decomposition matrix must be square, s >= 1");
  for (Eigen::Index i = 0; i < a_.rows(); ++i) {
    for (Eigen::Index j = 0; j < a_.cols(); ++j) {
      a_(i, j) = static_cast<i64>(reduce(a_(i, j), n_));
      if (i == j && a_(i, j) != 0) throw InvalidInput("decomposition matrix: nonzero diagonal");
    }
  }
}

DecompMatrix DecompMatrix::parse(u64 n, std::string_view text) {
  return DecompMatrix(n, parse_int_matrix(text).cast<i64>());
}

DecompMatrix DecompMatrix::zero(u64 n, int s) { return DecompMatrix(n, DenseMatrix<i64>::Zero(s, s)); }

std::string DecompMatrix::to_string() const { return format_int_matrix(a_.cast<int>()); }

DecompMatrix decomposition_matrix(const CyclotomicField& f) {
  const std::size_t s = f.primes().size();
  if (s == 0) throw InvalidInput("decomposition_matrix: empty field");
  const u64 n = f.moduli().front();
  for (std::size_t i = 0; i < s; ++i) {
    if (f.moduli().size() != s || f.moduli()[i] != n || f.images()[i] != [&] {
          AbVec e(s, 0);
          e[i] = 1 % n;
          return e;
        }()) {
      throw InvalidInput("decomposition_matrix: field is not a standard composite");
    }
  }
  DenseMatrix<i64> a = DenseMatrix<i64>::Zero(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    const AbVec& frob = f.element(decomposition_data(f, f.primes()[i]).frobenius);
    for (std::size_t j = 0; j < s; ++j)
      if (j != i) a(i, j) = static_cast<i64>(frob[j]);
  }
  return DecompMatrix(n, std::move(a));
}

}  // namespace tameconf
