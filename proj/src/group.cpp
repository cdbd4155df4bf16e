#include "tameconf/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "tameconf/errors.hpp"

namespace tameconf {

Perm parse_cycles(std::string_view text, int degree) {
  std::vector<std::vector<int>> cycles;
  int max_point = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw InvalidInput("cycle notation: expected '(' in '" + std::string(text) + "'");
    ++i;
    std::vector<int> cyc;
    for (;;) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) throw InvalidInput("cycle notation: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw InvalidInput("cycle notation: unexpected '" + std::string(1, text[i]) + "'");
      }
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > 12) throw InvalidInput("cycle notation: point outside 1..12");
      cyc.push_back(v);
      max_point = std::max(max_point, v);
    }
    cycles.push_back(std::move(cyc));
    skip_ws();
  }
  const int n = degree > 0 ? degree : std::max(max_point, 1);
  if (max_point > n) throw InvalidInput("cycle notation: point exceeds the degree");
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<bool> used(n, false);
  for (const auto& cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const int from = cyc[k] - 1;
      if (used[from]) throw InvalidInput("cycle notation: cycles are not disjoint");
      used[from] = true;
      p[from] = static_cast<std::uint8_t>(cyc[(k + 1) % cyc.size()] - 1);
    }
  }
  return p;
}

std::string format_cycles(const Perm& p) {
  std::ostringstream out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out << (first ? "" : " ") << j + 1;
      first = false;
      j = p[j];
    }
    out << ')';
  }
  const std::string s = out.str();
  return s.empty() ? "()" : s;
}

Perm compose(const Perm& x, const Perm& y) {
  Perm r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = x[y[i]];
  return r;
}

FiniteGroup FiniteGroup::from_permutations(std::vector<Perm> generators, std::string label) {
  std::size_t degree = 1;
  for (const auto& g : generators) degree = std::max(degree, g.size());
  if (degree > 12) throw InvalidInput("permutation degree exceeds 12");
  for (auto& g : generators) {
    for (std::size_t i = g.size(); i < degree; ++i) g.push_back(static_cast<std::uint8_t>(i));
    std::vector<bool> hit(degree, false);
    for (auto v : g) {
      if (v >= degree || hit[v]) throw InvalidInput("generator is not a permutation");
      hit[v] = true;
    }
  }
  FiniteGroup grp;
  grp.label_ = std::move(label);
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  grp.perms_.push_back(id);
  grp.perm_index_.emplace(id, 0);
  for (std::size_t k = 0; k < grp.perms_.size(); ++k) {
    for (const auto& g : generators) {
      Perm next = compose(grp.perms_[k], g);
      if (grp.perm_index_.count(next)) continue;
      if (grp.perms_.size() >= static_cast<std::size_t>(kClosureCap)) {
        throw ResourceLimit("permutation closure exceeds " + std::to_string(kClosureCap) + " elements");
      }
      grp.perm_index_.emplace(next, static_cast<Elem>(grp.perms_.size()));
      grp.perms_.push_back(std::move(next));
    }
  }
  const int n = static_cast<int>(grp.perms_.size());
  if (n > kTableCap) {
    throw ResourceLimit("group of order " + std::to_string(n) + " exceeds the Cayley table cap");
  }
  grp.order_ = n;
  grp.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      grp.table_[static_cast<std::size_t>(a) * n + b] = grp.perm_index_.at(compose(grp.perms_[a], grp.perms_[b]));
    }
  }
  grp.finish();
  return grp;
}

FiniteGroup FiniteGroup::from_table(int order, std::vector<Elem> table, std::string label) {
  if (order < 1 || order > kTableCap) throw InvalidInput("group order out of range");
  if (table.size() != static_cast<std::size_t>(order) * order) throw InvalidInput("Cayley table has wrong size");
  FiniteGroup grp;
  grp.order_ = order;
  grp.table_ = std::move(table);
  grp.label_ = std::move(label);
  for (int a = 0; a < order; ++a) {
    std::vector<bool> row(order, false), col(order, false);
    for (int b = 0; b < order; ++b) {
      const Elem ab = grp.mul(a, b), ba = grp.mul(b, a);
      if (ab >= order || ba >= order || row[ab] || col[ba]) throw InvalidInput("Cayley table is not a Latin square");
      row[ab] = col[ba] = true;
    }
    if (grp.mul(0, a) != a || grp.mul(a, 0) != a) throw InvalidInput("element 0 is not the identity");
  }
  std::mt19937 rng(0x7a3e5u + order);
  std::uniform_int_distribution<int> pick(0, order - 1);
  const int trials = order <= 16 ? 0 : 2000;
  auto check = [&](Elem a, Elem b, Elem c) {
    if (grp.mul(grp.mul(a, b), c) != grp.mul(a, grp.mul(b, c))) throw InvalidInput("Cayley table is not associative");
  };
  if (trials == 0) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c) check(a, b, c);
  } else {
    for (int t = 0; t < trials; ++t) check(pick(rng), pick(rng), pick(rng));
  }
  grp.finish();
  return grp;
}

void FiniteGroup::finish() {
  inverse_.assign(order_, 0);
  orders_.assign(order_, 0);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inverse_[a] = static_cast<Elem>(b);
        break;
      }
    }
    int k = 1;
    for (Elem x = static_cast<Elem>(a); x != 0; x = mul(x, a)) ++k;
    orders_[a] = a == 0 ? 1 : k;
  }
}

Elem FiniteGroup::pow(Elem a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  k %= orders_[a];
  Elem r = 0;
  while (k > 0) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<Elem> FiniteGroup::find(const Perm& p) const {
  if (perms_.empty()) return std::nullopt;
  Perm q = p;
  const std::size_t degree = perms_[0].size();
  if (q.size() > degree) {
    for (std::size_t i = degree; i < q.size(); ++i)
      if (q[i] != i) return std::nullopt;
    q.resize(degree);
  }
  for (std::size_t i = q.size(); i < degree; ++i) q.push_back(static_cast<std::uint8_t>(i));
  auto it = perm_index_.find(q);
  if (it == perm_index_.end()) return std::nullopt;
  return it->second;
}

bool Subgroup::contains(Elem a) const { return std::binary_search(elems_.begin(), elems_.end(), a); }

bool Subgroup::contains(const Subgroup& h) const {
  return std::includes(elems_.begin(), elems_.end(), h.elems_.begin(), h.elems_.end());
}

namespace {

Subgroup from_mask(const std::vector<char>& in) {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(static_cast<Elem>(i));
  return Subgroup(std::move(out));
}

}  // namespace

Subgroup generate(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> list{0};
  in[0] = 1;
  for (std::size_t k = 0; k < list.size(); ++k) {
    for (Elem x : gens) {
      const Elem y = g.mul(list[k], x);
      if (!in[y]) {
        in[y] = 1;
        list.push_back(y);
      }
    }
  }
  return from_mask(in);
}

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup(std::move(all));
}

Subgroup trivial_subgroup() { return Subgroup({Elem{0}}); }

Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> elems) {
  std::vector<char> in(g.order(), 0);
  for (Elem x : elems)
    for (int h = 0; h < g.order(); ++h) in[g.conj(x, h)] = 1;
  std::vector<Elem> gens;
  for (int i = 0; i < g.order(); ++i)
    if (in[i]) gens.push_back(static_cast<Elem>(i));
  return generate(g, gens);
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> out;
  for (int x = 0; x < g.order(); ++x) {
    bool ok = std::all_of(h.elements().begin(), h.elements().end(),
                          [&](Elem y) { return h.contains(g.conj(y, x)); });
    if (ok) out.push_back(static_cast<Elem>(x));
  }
  return Subgroup(std::move(out));
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  std::vector<char> in(g.order(), 0);
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) in[g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))] = 1;
  std::vector<Elem> gens;
  for (int i = 0; i < g.order(); ++i)
    if (in[i]) gens.push_back(static_cast<Elem>(i));
  return generate(g, gens);
}

bool is_normal_in(const FiniteGroup& g, const Subgroup& n, const Subgroup& h) {
  if (!h.contains(n)) return false;
  for (Elem x : h.elements())
    for (Elem y : n.elements())
      if (!n.contains(g.conj(y, x))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) { return is_normal_in(g, h, whole_group(g)); }

bool is_cyclic(const FiniteGroup& g, const Subgroup& h) {
  return std::any_of(h.elements().begin(), h.elements().end(),
                     [&](Elem x) { return g.element_order(x) == h.order(); });
}

std::vector<Subgroup> cyclic_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found;
  for (int a = 0; a < g.order(); ++a) {
    const Elem x = static_cast<Elem>(a);
    found.insert(generate(g, std::span<const Elem>(&x, 1)));
  }
  return {found.begin(), found.end()};
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found;
  for (int a = 0; a < g.order(); ++a) {
    const Elem x = static_cast<Elem>(a);
    found.insert(normal_closure(g, std::span<const Elem>(&x, 1)));
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Subgroup> cur(found.begin(), found.end());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<Elem> gens = cur[i].elements();
        gens.insert(gens.end(), cur[j].elements().begin(), cur[j].elements().end());
        if (found.insert(generate(g, gens)).second) grew = true;
      }
    }
  }
  return {found.begin(), found.end()};
}

Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw InvalidInput("quotient: subgroup is not normal");
  const int order = g.order();
  std::vector<Elem> rep(order);
  for (int x = 0; x < order; ++x) {
    Elem best = static_cast<Elem>(x);
    for (Elem y : n.elements()) best = std::min(best, g.mul(static_cast<Elem>(x), y));
    rep[x] = best;
  }
  std::vector<Elem> reps(rep.begin(), rep.end());
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  std::vector<int> index_of(order, -1);
  for (std::size_t i = 0; i < reps.size(); ++i) index_of[reps[i]] = static_cast<int>(i);
  Quotient q;
  q.projection.resize(order);
  for (int x = 0; x < order; ++x) q.projection[x] = static_cast<Elem>(index_of[rep[x]]);
  const int m = static_cast<int>(reps.size());
  std::vector<Elem> table(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) table[static_cast<std::size_t>(a) * m + b] = q.projection[g.mul(reps[a], reps[b])];
  q.group = std::make_shared<FiniteGroup>(FiniteGroup::from_table(m, std::move(table), g.label() + "/N"));
  return q;
}

Subgroup image(const Quotient& q, const Subgroup& h) {
  std::vector<Elem> out;
  for (Elem x : h.elements()) out.push_back(q.projection[x]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Subgroup(std::move(out));
}

std::vector<int> abelian_invariants(const FiniteGroup& a) {
  if (!a.is_abelian()) throw InvalidInput("abelian_invariants: group is not abelian");
  int n = a.order();
  std::vector<std::vector<int>> exps;  // per prime, factor exponents descending
  std::vector<int> primes;
  for (int p = 2; p <= n; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime || a.order() % p != 0) continue;
    // N_k = |{x^(p^k)}|; log_p(N_{k-1}/N_k) counts cyclic p-factors of order >= p^k.
    std::vector<int> counts;
    std::vector<char> cur(a.order(), 1);
    int size_prev = a.order();
    for (;;) {
      std::vector<char> next(a.order(), 0);
      for (int x = 0; x < a.order(); ++x)
        if (cur[x]) next[a.pow(static_cast<Elem>(x), p)] = 1;
      const int size = static_cast<int>(std::count(next.begin(), next.end(), 1));
      if (size == size_prev) break;
      int ratio = size_prev / size, c = 0;
      while (ratio > 1) {
        ratio /= p;
        ++c;
      }
      counts.push_back(c);
      size_prev = size;
      cur = std::move(next);
    }
    std::vector<int> e;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const int exactly = counts[k] - (k + 1 < counts.size() ? counts[k + 1] : 0);
      for (int t = 0; t < exactly; ++t) e.push_back(static_cast<int>(k) + 1);
    }
    std::sort(e.rbegin(), e.rend());
    primes.push_back(p);
    exps.push_back(std::move(e));
  }
  std::size_t r = 0;
  for (const auto& e : exps) r = std::max(r, e.size());
  std::vector<int> inv(r, 1);
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = 0; j < exps[i].size(); ++j)
      for (int t = 0; t < exps[i][j]; ++t) inv[j] *= primes[i];
  std::reverse(inv.begin(), inv.end());
  return inv;
}

AbelianBasis abelian_basis(const FiniteGroup& a) {
  if (a.order() > 256) throw ResourceLimit("abelian_basis: |G| > 256");
  AbelianBasis out;
  out.moduli = abelian_invariants(a);
  const int r = static_cast<int>(out.moduli.size());
  const int n = a.order();
  std::vector<std::vector<Elem>> cands(r);
  for (int k = 0; k < r; ++k)
    for (int x = 0; x < n; ++x)
      if (a.element_order(static_cast<Elem>(x)) == out.moduli[k]) cands[k].push_back(static_cast<Elem>(x));
  std::vector<std::size_t> pos(r, 0);
  std::vector<int> hit(n);
  for (;;) {
    std::vector<Elem> b(r);
    for (int k = 0; k < r; ++k) b[k] = cands[k][pos[k]];
    // image of prod Z/d_k; bijective iff every product is distinct
    std::fill(hit.begin(), hit.end(), -1);
    std::vector<int> e(r, 0);
    bool ok = true;
    for (int idx = 0; idx < n && ok; ++idx) {
      Elem x = 0;
      for (int k = 0; k < r; ++k) x = a.mul(x, a.pow(b[k], e[k]));
      if (hit[x] >= 0) ok = false;
      hit[x] = idx;
      for (int k = r - 1; k >= 0; --k) {
        if (++e[k] < out.moduli[k]) break;
        e[k] = 0;
      }
    }
    if (ok) {
      out.basis = b;
      out.coords.assign(n, std::vector<int>(r, 0));
      for (int x = 0; x < n; ++x) {
        int idx = hit[x];
        for (int k = r - 1; k >= 0; --k) {
          out.coords[x][k] = idx % out.moduli[k];
          idx /= out.moduli[k];
        }
      }
      return out;
    }
    int k = r - 1;
    while (k >= 0 && ++pos[k] == cands[k].size()) pos[k--] = 0;
    if (k < 0) break;
  }
  throw InvalidInput("abelian_basis: no basis found");
}

std::vector<int> abelianization_invariants(const FiniteGroup& g) {
  const Quotient q = quotient(g, derived_subgroup(g));
  return abelian_invariants(*q.group);
}

int rank(const FiniteGroup& g) {
  if (g.order() == 1) return 0;
  // a nontrivial perfect group is normally generated by any nonidentity element
  return std::max<int>(1, static_cast<int>(abelianization_invariants(g).size()));
}

int rank_by_search(const FiniteGroup& g) {
  if (g.order() > 48) throw ResourceLimit("rank_by_search: |G| > 48");
  if (g.order() == 1) return 0;
  // normal closures only depend on conjugacy classes
  std::vector<Elem> reps;
  std::vector<char> seen(g.order(), 0);
  for (int x = 1; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(static_cast<Elem>(x));
    for (int h = 0; h < g.order(); ++h) seen[g.conj(static_cast<Elem>(x), h)] = 1;
  }
  const int n = static_cast<int>(reps.size());
  for (int k = 1; k <= n; ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<Elem> pick;
      for (int i : idx) pick.push_back(reps[i]);
      if (normal_closure(g, pick).order() == g.order()) return k;
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return n;
}

std::vector<Elem> small_generating_set(const FiniteGroup& g) {
  if (g.order() == 1) return {};
  std::map<int, long long> order_count;
  for (int x = 0; x < g.order(); ++x) ++order_count[g.element_order(static_cast<Elem>(x))];
  auto cost = [&](const std::vector<Elem>& t) {
    long long c = 1;
    for (Elem x : t) c *= order_count[g.element_order(x)];
    return c;
  };
  const int n = g.order();
  for (int k = 1; k <= 3; ++k) {
    if (k == 3 && n > 64) break;
    std::vector<Elem> best;
    long long best_cost = -1;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 1);
    if (n - 1 < k) break;
    for (;;) {
      std::vector<Elem> t;
      for (int i : idx) t.push_back(static_cast<Elem>(i));
      const long long c = cost(t);
      if ((best_cost < 0 || c < best_cost) && generate(g, t).order() == n) {
        best = t;
        best_cost = c;
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!best.empty()) return best;
  }
  // greedy fallback for groups needing many generators
  std::vector<Elem> gens;
  Subgroup cur = trivial_subgroup();
  while (cur.order() < n) {
    Elem pick = 0;
    int best = cur.order();
    for (int x = 1; x < n; ++x) {
      if (cur.contains(static_cast<Elem>(x))) continue;
      auto t = gens;
      t.push_back(static_cast<Elem>(x));
      const int o = generate(g, t).order();
      if (o > best) {
        best = o;
        pick = static_cast<Elem>(x);
      }
    }
    gens.push_back(pick);
    cur = generate(g, gens);
  }
  return gens;
}

namespace {

// All isomorphisms a -> b (or the first one), each as an image table.
std::vector<std::vector<Elem>> isomorphism_search(const FiniteGroup& a, const FiniteGroup& b, bool first_only) {
  constexpr std::size_t kAutCap = 100000;
  constexpr long long kCandidateCap = 20000000;
  const int n = a.order();
  if (b.order() != n) return {};
  const auto gens = small_generating_set(a);
  if (gens.empty()) return {std::vector<Elem>{0}};
  const int k = static_cast<int>(gens.size());

  // BFS word tree: x = parent[x] * gens[via[x]]
  std::vector<int> parent(n, -1), via(n, -1);
  std::vector<Elem> bfs{0};
  parent[0] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (int j = 0; j < k; ++j) {
      const Elem y = a.mul(bfs[i], gens[j]);
      if (parent[y] < 0) {
        parent[y] = bfs[i];
        via[y] = j;
        bfs.push_back(y);
      }
    }
  }

  std::vector<std::vector<Elem>> cands(k);
  long long total = 1;
  for (int j = 0; j < k; ++j) {
    for (int x = 0; x < n; ++x)
      if (b.element_order(static_cast<Elem>(x)) == a.element_order(gens[j])) cands[j].push_back(static_cast<Elem>(x));
    if (cands[j].empty()) return {};
    total *= static_cast<long long>(cands[j].size());
  }
  if (total > kCandidateCap) throw ResourceLimit("isomorphism search: too many candidate generator images");

  std::vector<std::vector<Elem>> out;
  std::vector<std::size_t> pos(k, 0);
  std::vector<Elem> phi(n);
  std::vector<char> hit(n);
  for (;;) {
    std::fill(hit.begin(), hit.end(), 0);
    bool ok = true;
    phi[0] = 0;
    hit[0] = 1;
    for (std::size_t i = 1; i < bfs.size() && ok; ++i) {
      const Elem x = bfs[i];
      phi[x] = b.mul(phi[parent[x]], cands[via[x]][pos[via[x]]]);
      if (hit[phi[x]]) ok = false;
      hit[phi[x]] = 1;
    }
    for (int x = 0; x < n && ok; ++x)
      for (int j = 0; j < k && ok; ++j)
        ok = phi[a.mul(static_cast<Elem>(x), gens[j])] == b.mul(phi[x], cands[j][pos[j]]);
    if (ok) {
      if (out.size() >= kAutCap) throw ResourceLimit("isomorphism search: more than 100000 maps");
      out.push_back(phi);
      if (first_only) return out;
    }
    int j = k - 1;
    while (j >= 0 && ++pos[j] == cands[j].size()) pos[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

}  // namespace

std::vector<Automorphism> automorphisms(const FiniteGroup& g) {
  auto out = isomorphism_search(g, g, false);
  auto id = std::find_if(out.begin(), out.end(), [](const Automorphism& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != i) return false;
    return true;
  });
  std::iter_swap(out.begin(), id);
  return out;
}

std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  auto out = isomorphism_search(a, b, true);
  if (out.empty()) return std::nullopt;
  return std::move(out.front());
}

namespace {

struct CatalogSpec {
  const char* name;
  std::vector<const char*> generators;
  std::vector<std::pair<const char*, const char*>> names;
};

const std::vector<CatalogSpec>& catalog() {
  static const std::vector<CatalogSpec> specs = {
      {"C2^2", {"(1 2)", "(3 4)"}, {{"x1", "(1 2)"}, {"x2", "(3 4)"}}},
      {"C2^3", {"(1 2)", "(3 4)", "(5 6)"}, {{"x1", "(1 2)"}, {"x2", "(3 4)"}, {"x3", "(5 6)"}}},
      {"C4xC2", {"(1 2 3 4)", "(5 6)"}, {{"x1", "(1 2 3 4)"}, {"y", "(5 6)"}, {"x2", "(5 6)"}}},
      {"C2xC6", {"(1 2)", "(3 4)(5 6 7)"}, {{"x", "(1 2)"}, {"y", "(3 4)(5 6 7)"}}},
      {"Q8",
       {"(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"},
       {{"i", "(1 2 3 4)(5 6 7 8)"}, {"j", "(1 5 3 7)(2 8 4 6)"}}},
      {"D8", {"(1 2 3 4)", "(1 3)"}, {{"r", "(1 2 3 4)"}, {"s", "(1 3)"}}},
      {"D10", {"(1 2 3 4 5)", "(2 5)(3 4)"}, {{"r", "(1 2 3 4 5)"}, {"s", "(2 5)(3 4)"}}},
      {"A4", {"(1 2 3)", "(1 2)(3 4)"}, {{"a", "(1 2 3)"}, {"b", "(1 2)(3 4)"}}},
      {"F20", {"(1 2 3 4 5)", "(2 3 5 4)"}, {{"a", "(1 2 3 4 5)"}, {"b", "(2 3 5 4)"}}},
      {"S4", {"(1 2 3 4)", "(1 2)"}, {{"a", "(1 2 3 4)"}, {"b", "(1 2)"}}},
      {"A5", {"(1 2 3 4 5)", "(1 2 3)"}, {{"a", "(1 2 3 4 5)"}, {"b", "(1 2 3)"}}},
      {"S5", {"(1 2 3 4 5)", "(1 2)"}, {{"a", "(1 2 3 4 5)"}, {"b", "(1 2)"}}},
      {"PSL(2,7)",
       {"(1 2)(3 6)", "(2 6 7)(3 4 5)"},
       {{"a", "(1 2)(3 6)"},
        {"b", "(2 6 7)(3 4 5)"},
        {"r", "(1 3 2 6)(5 7)"},
        {"s", "(1 2)(5 7)"},
        {"u", "(2 6)(4 5)"},
        {"v", "(1 2 4)(3 6 5)"}}},
  };
  return specs;
}

int degree_of(const CatalogSpec& spec) {
  int d = 1;
  for (const char* gtext : spec.generators) d = std::max(d, static_cast<int>(parse_cycles(gtext).size()));
  return d;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& s : catalog()) out.emplace_back(s.name);
  return out;
}

NamedGroup catalog_group(std::string_view name) {
  for (const auto& spec : catalog()) {
    if (name != spec.name) continue;
    const int degree = degree_of(spec);
    std::vector<Perm> gens;
    for (const char* gtext : spec.generators) gens.push_back(parse_cycles(gtext, degree));
    NamedGroup ng;
    ng.group = std::make_shared<FiniteGroup>(FiniteGroup::from_permutations(std::move(gens), spec.name));
    ng.names.emplace("e", 0);
    for (const auto& [nm, cyc] : spec.names) {
      const auto idx = ng.group->find(parse_cycles(cyc, degree));
      if (!idx) throw InvalidInput(std::string("catalog: ") + nm + " is not in " + spec.name);
      ng.names.emplace(nm, *idx);
    }
    return ng;
  }
  throw InvalidInput("unknown catalog group '" + std::string(name) + "'");
}

Elem evaluate_word(const NamedGroup& g, std::string_view word) {
  const FiniteGroup& grp = *g.group;
  Elem acc = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < word.size() && std::isspace(static_cast<unsigned char>(word[i]))) ++i;
  };
  skip_ws();
  if (i == word.size()) throw InvalidInput("empty group word");
  for (bool first = true; i < word.size(); first = false) {
    if (!first) {
      if (word[i] != '*') throw InvalidInput("group word: expected '*' in '" + std::string(word) + "'");
      ++i;
      skip_ws();
    }
    Elem factor = 0;
    if (i < word.size() && word[i] == '(') {
      std::size_t j = i;
      while (j < word.size() && (word[j] == '(' || word[j] == ')' || word[j] == ' ' || word[j] == ',' ||
                                 std::isdigit(static_cast<unsigned char>(word[j]))))
        ++j;
      if (!grp.has_permutations()) throw InvalidInput("group word: cycle literal needs a permutation group");
      const auto idx = grp.find(parse_cycles(word.substr(i, j - i)));
      if (!idx) throw InvalidInput("group word: '" + std::string(word.substr(i, j - i)) + "' is not in the group");
      factor = *idx;
      i = j;
    } else {
      std::size_t j = i;
      while (j < word.size() && (std::isalnum(static_cast<unsigned char>(word[j])) || word[j] == '_')) ++j;
      const std::string nm(word.substr(i, j - i));
      const auto it = g.names.find(nm);
      if (it == g.names.end()) throw InvalidInput("group word: unknown generator '" + nm + "'");
      factor = it->second;
      i = j;
    }
    skip_ws();
    if (i < word.size() && word[i] == '^') {
      ++i;
      std::size_t j = i;
      if (j < word.size() && word[j] == '-') ++j;
      while (j < word.size() && std::isdigit(static_cast<unsigned char>(word[j]))) ++j;
      if (j == i || (j == i + 1 && word[i] == '-')) throw InvalidInput("group word: bad exponent");
      factor = grp.pow(factor, std::stoll(std::string(word.substr(i, j - i))));
      i = j;
      skip_ws();
    }
    acc = grp.mul(acc, factor);
  }
  return acc;
}

}  // namespace tameconf
