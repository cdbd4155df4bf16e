#include "tameconf/config.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tameconf/errors.hpp"

namespace tameconf {

namespace {

Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> gens = a.elements();
  gens.insert(gens.end(), b.elements().begin(), b.elements().end());
  return generate(g, gens);
}

bool cyclic_over(const FiniteGroup& g, const Subgroup& t, const Subgroup& z) {
  return std::any_of(z.elements().begin(), z.elements().end(), [&](Elem x) {
    std::vector<Elem> gens = t.elements();
    gens.push_back(x);
    return generate(g, gens) == z;
  });
}

Subgroup map_subgroup(const Subgroup& h, const Automorphism& a) {
  std::vector<Elem> out;
  out.reserve(h.elements().size());
  for (Elem x : h.elements()) out.push_back(a[x]);
  std::sort(out.begin(), out.end());
  return Subgroup(std::move(out));
}

std::vector<Elem> few_generators(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> gens;
  Subgroup cur = trivial_subgroup();
  while (cur.order() < h.order()) {
    Elem pick = 0;
    int best = 0;
    for (Elem x : h.elements()) {
      if (cur.contains(x)) continue;
      auto t = gens;
      t.push_back(x);
      const int o = generate(g, t).order();
      if (o > best) {
        best = o;
        pick = x;
      }
    }
    gens.push_back(pick);
    cur = generate(g, gens);
  }
  return gens;
}

}  // namespace

std::optional<std::string> config_violation(const TameConfig& cfg) {
  if (!cfg.group) return "configuration has no group";
  const FiniteGroup& g = *cfg.group;
  if (cfg.T.size() != cfg.Z.size()) return "T and Z lists differ in length";
  const int s = rank(g);
  if (cfg.size() != s) {
    return "configuration has " + std::to_string(cfg.size()) + " pairs but rank(G) = " + std::to_string(s);
  }
  std::vector<Elem> all_t;
  for (int i = 0; i < cfg.size(); ++i) {
    const auto& t = cfg.T[i];
    const auto& z = cfg.Z[i];
    const std::string at = " (pair " + std::to_string(i + 1) + ")";
    if (t.elements().empty() || generate(g, t.elements()) != t) return "T is not a subgroup" + at;
    if (z.elements().empty() || generate(g, z.elements()) != z) return "Z is not a subgroup" + at;
    if (!is_cyclic(g, t)) return "T is not cyclic" + at;
    if (!is_normal_in(g, t, z)) return "T is not normal in Z" + at;
    if (!cyclic_over(g, t, z)) return "Z/T is not cyclic" + at;
    all_t.insert(all_t.end(), t.elements().begin(), t.elements().end());
  }
  if (normal_closure(g, all_t).order() != g.order()) return "the T_i do not normally generate G";
  return std::nullopt;
}

ConfigKey config_key(const TameConfig& cfg) {
  ConfigKey key;
  for (int i = 0; i < cfg.size(); ++i) key.emplace_back(cfg.T[i].elements(), cfg.Z[i].elements());
  std::sort(key.begin(), key.end());
  return key;
}

TameConfig apply_automorphism(const TameConfig& cfg, const Automorphism& a) {
  TameConfig out{cfg.group, {}, {}};
  for (int i = 0; i < cfg.size(); ++i) {
    out.T.push_back(map_subgroup(cfg.T[i], a));
    out.Z.push_back(map_subgroup(cfg.Z[i], a));
  }
  return out;
}

ConfigKey canonical_key(const TameConfig& cfg, const std::vector<Automorphism>& autos) {
  ConfigKey best = config_key(cfg);
  for (const auto& a : autos) {
    ConfigKey k = config_key(apply_automorphism(cfg, a));
    if (k < best) best = std::move(k);
  }
  return best;
}

std::vector<TameConfig> enumerate_configs(std::shared_ptr<const FiniteGroup> gp) {
  const FiniteGroup& g = *gp;
  const int s = rank(g);
  if (s > 2) throw UnsupportedScope("enumerate_configs: rank " + std::to_string(s) + " > 2");
  if (s == 0) return {TameConfig{gp, {}, {}}};

  std::vector<Subgroup> cyc;
  for (auto& c : cyclic_subgroups(g))
    if (c.order() > 1) cyc.push_back(std::move(c));

  std::vector<std::vector<Subgroup>> zopts(cyc.size());
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    std::set<Subgroup> found;
    const Subgroup norm = normalizer(g, cyc[i]);
    for (Elem z : norm.elements()) {
      std::vector<Elem> gens = cyc[i].elements();
      gens.push_back(z);
      found.insert(generate(g, gens));
    }
    zopts[i].assign(found.begin(), found.end());
  }

  std::vector<std::vector<std::size_t>> tuples;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    if (s == 1) {
      if (normal_closure(g, cyc[i].elements()).order() == g.order()) tuples.push_back({i});
      continue;
    }
    for (std::size_t j = i + 1; j < cyc.size(); ++j) {
      std::vector<Elem> both = cyc[i].elements();
      both.insert(both.end(), cyc[j].elements().begin(), cyc[j].elements().end());
      if (normal_closure(g, both).order() == g.order()) tuples.push_back({i, j});
    }
  }

  const auto autos = automorphisms(g);
  std::map<ConfigKey, TameConfig> classes;
  std::set<ConfigKey> seen_t;
  for (const auto& tup : tuples) {
    // skip T-tuples already covered by an automorphic image
    TameConfig probe{gp, {}, {}};
    for (std::size_t i : tup) {
      probe.T.push_back(cyc[i]);
      probe.Z.push_back(cyc[i]);
    }
    if (!seen_t.insert(canonical_key(probe, autos)).second) continue;

    std::vector<std::size_t> pick(tup.size(), 0);
    for (;;) {
      TameConfig cfg{gp, {}, {}};
      for (std::size_t k = 0; k < tup.size(); ++k) {
        cfg.T.push_back(cyc[tup[k]]);
        cfg.Z.push_back(zopts[tup[k]][pick[k]]);
      }
      ConfigKey key = canonical_key(cfg, autos);
      if (!classes.count(key)) {
        TameConfig rep{gp, {}, {}};
        for (const auto& [t, z] : key) {
          rep.T.emplace_back(t);
          rep.Z.emplace_back(z);
        }
        classes.emplace(std::move(key), std::move(rep));
      }
      std::size_t k = tup.size();
      while (k > 0 && ++pick[k - 1] == zopts[tup[k - 1]].size()) pick[--k] = 0;
      if (k == 0) break;
    }
  }
  std::vector<TameConfig> out;
  for (auto& [k, c] : classes) out.push_back(std::move(c));
  return out;
}

std::optional<TameConfig> config_quotient(const TameConfig& cfg, const Subgroup& n) {
  const FiniteGroup& g = *cfg.group;
  if (!is_normal(g, n)) throw InvalidInput("config_quotient: subgroup is not normal");
  Quotient q = quotient(g, n);
  if (rank(*q.group) != rank(g)) return std::nullopt;
  TameConfig out{q.group, {}, {}};
  for (int i = 0; i < cfg.size(); ++i) {
    out.T.push_back(image(q, cfg.T[i]));
    out.Z.push_back(image(q, cfg.Z[i]));
  }
  return out;
}

GroupShape classify(const FiniteGroup& g) {
  const int n = g.order();
  const bool pow2 = n > 1 && (n & (n - 1)) == 0;
  int involutions = 0;
  bool exponent2 = true;
  for (int x = 1; x < n; ++x) {
    const int o = g.element_order(static_cast<Elem>(x));
    if (o == 2) ++involutions;
    if (o != 2) exponent2 = false;
  }
  if (pow2 && exponent2) return GroupShape::ElementaryAbelian2;
  if (n == 8) {
    if (g.is_abelian()) {
      if (abelian_invariants(g) == std::vector<int>{2, 4}) return GroupShape::Z4xZ2;
    } else if (involutions == 1) {
      return GroupShape::Q8;
    }
  }
  return GroupShape::Other;
}

SignMatrix sign_matrix_of(const TameConfig& cfg) {
  const FiniteGroup& g = *cfg.group;
  if (classify(g) != GroupShape::ElementaryAbelian2) throw InvalidInput("sign_matrix_of: G is not (Z/2)^s");
  const int s = cfg.size();
  std::vector<Elem> basis;
  for (const auto& t : cfg.T) {
    if (t.order() != 2) throw InvalidInput("sign_matrix_of: inertia group of order != 2");
    basis.push_back(t.elements()[1]);
  }
  std::map<Elem, unsigned> coords;
  for (unsigned mask = 0; mask < (1u << s); ++mask) {
    Elem x = 0;
    for (int j = 0; j < s; ++j)
      if (mask >> j & 1) x = g.mul(x, basis[j]);
    coords.emplace(x, mask);
  }
  if (static_cast<int>(coords.size()) != g.order()) throw InvalidInput("sign_matrix_of: T_i are not a basis");
  IntMatrix m = IntMatrix::Ones(s, s);
  m.diagonal().setZero();
  for (int i = 0; i < s; ++i) {
    // any z in Z_i \ T_i; the choice only changes coordinate i
    for (Elem z : cfg.Z[i].elements()) {
      if (cfg.T[i].contains(z)) continue;
      const unsigned c = coords.at(z);
      for (int j = 0; j < s; ++j)
        if (j != i && (c >> j & 1)) m(i, j) = -1;
      break;
    }
  }
  return SignMatrix(std::move(m));
}

ObstructionVerdict known_obstruction(const TameConfig& cfg) {
  const FiniteGroup& g = *cfg.group;
  const auto shape = classify(g);
  if (shape == GroupShape::ElementaryAbelian2) {
    const auto v = qr_test(sign_matrix_of(cfg));
    if (!v.is_qr) return {ObstructionKind::Obstructed, "sign-matrix-not-qr"};
  } else if (shape == GroupShape::Z4xZ2 && cfg.size() == 2) {
    std::vector<Elem> squares;
    for (int x = 0; x < g.order(); ++x) squares.push_back(g.mul(static_cast<Elem>(x), static_cast<Elem>(x)));
    const Subgroup phi = generate(g, squares);
    bool cond[2];
    for (int i = 0; i < 2; ++i) cond[i] = join(g, cfg.T[i], phi).contains(cfg.Z[i]);
    if (cond[0] != cond[1]) return {ObstructionKind::Obstructed, "z4z2-reciprocity"};
  } else if (shape == GroupShape::Q8) {
    if (!cfg.is_split()) return {ObstructionKind::Obstructed, "q8-witt"};
  }
  for (const auto& n : normal_subgroups(g)) {
    if (n.order() == 1 || n.order() == g.order()) continue;
    const auto q = config_quotient(cfg, n);
    if (!q) continue;
    const auto v = known_obstruction(*q);
    if (v.kind == ObstructionKind::Obstructed) {
      return {ObstructionKind::Obstructed, "quotient-by-order-" + std::to_string(n.order()) + ":" + v.reason};
    }
  }
  return {};
}

ObstructionKind group_obstruction_summary(const std::vector<TameConfig>& configs) {
  bool any_obstructed = false, split_only = true;
  for (const auto& c : configs) {
    const bool obstructed = known_obstruction(c).kind == ObstructionKind::Obstructed;
    any_obstructed |= obstructed;
    if (obstructed == c.is_split()) split_only = false;
  }
  if (!any_obstructed) return ObstructionKind::NoKnownObstruction;
  return split_only ? ObstructionKind::SplitOnly : ObstructionKind::Obstructed;
}

std::string to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::Obstructed: return "obstructed";
    case ObstructionKind::SplitOnly: return "split-only";
    case ObstructionKind::NoKnownObstruction: return "no-known-obstruction";
  }
  return "?";
}

std::string describe(const TameConfig& cfg) {
  const FiniteGroup& g = *cfg.group;
  auto show = [&](const Subgroup& h) {
    std::ostringstream out;
    out << '<';
    const auto gens = few_generators(g, h);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i) out << ", ";
      if (g.has_permutations()) {
        out << format_cycles(g.permutation(gens[i]));
      } else {
        out << '#' << gens[i];
      }
    }
    if (gens.empty()) out << "e";
    out << '>';
    return out.str();
  };
  std::ostringstream out;
  for (int i = 0; i < cfg.size(); ++i) {
    if (i) out << "; ";
    out << "T" << i + 1 << "=" << show(cfg.T[i]) << " Z" << i + 1 << "=" << show(cfg.Z[i]);
  }
  return out.str();
}

}  // namespace tameconf
