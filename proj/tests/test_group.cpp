#include "doctest.h"

#include <map>
#include <queue>
#include <random>
#include <set>

#include "tameconf/errors.hpp"
#include "tameconf/group.hpp"

using namespace tameconf;

namespace {

std::shared_ptr<const FiniteGroup> cat(const char* name) { return catalog_group(name).group; }

Elem perm_elem(const FiniteGroup& g, const char* cycles) {
  const int degree = static_cast<int>(g.permutation(0).size());
  const auto e = g.find(parse_cycles(cycles, degree));
  REQUIRE(e);
  return *e;
}

// Repeatedly adds products and conjugates until nothing new appears.
std::set<Elem> conjugacy_closure(const FiniteGroup& g, std::set<Elem> s) {
  s.insert(g.identity());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Elem> cur(s.begin(), s.end());
    for (Elem a : cur) {
      for (int x = 0; x < g.order(); ++x)
        if (s.insert(g.conj(a, static_cast<Elem>(x))).second) grew = true;
      for (Elem b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
    }
  }
  return s;
}

// Counts automorphisms by trying every image pair for a two-element
// generating set and extending along words.
int count_automorphisms_by_images(const FiniteGroup& g, Elem x, Elem y) {
  int count = 0;
  for (int hx = 0; hx < g.order(); ++hx) {
    if (g.element_order(static_cast<Elem>(hx)) != g.element_order(x)) continue;
    for (int hy = 0; hy < g.order(); ++hy) {
      if (g.element_order(static_cast<Elem>(hy)) != g.element_order(y)) continue;
      std::map<Elem, Elem> phi{{g.identity(), g.identity()}};
      std::queue<Elem> todo;
      todo.push(g.identity());
      bool ok = true;
      while (!todo.empty() && ok) {
        const Elem a = todo.front();
        todo.pop();
        for (auto [gen, img] : {std::pair<Elem, Elem>{x, static_cast<Elem>(hx)}, {y, static_cast<Elem>(hy)}}) {
          const Elem b = g.mul(a, gen);
          const Elem fb = g.mul(phi[a], img);
          auto it = phi.find(b);
          if (it == phi.end()) {
            phi.emplace(b, fb);
            todo.push(b);
          } else if (it->second != fb) {
            ok = false;
          }
        }
      }
      if (!ok || static_cast<int>(phi.size()) != g.order()) continue;
      std::set<Elem> imgs;
      for (auto& kv : phi) imgs.insert(kv.second);
      if (static_cast<int>(imgs.size()) == g.order()) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("permutation parsing and composition") {
  const auto p = parse_cycles("(1 2)(3 4 5)");
  CHECK(p.size() == 5);
  CHECK(format_cycles(p) == "(1 2)(3 4 5)");
  CHECK(format_cycles(parse_cycles("()", 3)) == "()");
  // right to left: x after y
  const auto a = parse_cycles("(1 2)(3 6)", 7);
  const auto b = parse_cycles("(2 6 7)(3 4 5)", 7);
  CHECK(format_cycles(compose(a, b)) == "(1 2 3 4 5 6 7)");
  CHECK_THROWS_AS(parse_cycles("(1 2"), InvalidInput);
  CHECK_THROWS_AS(parse_cycles("(1 1)"), InvalidInput);
}

TEST_CASE("closure from generators") {
  CHECK(cat("D8")->order() == 8);
  CHECK(cat("PSL(2,7)")->order() == 168);
  CHECK(cat("Q8")->order() == 8);
  CHECK(cat("A5")->order() == 60);
  CHECK(cat("S5")->order() == 120);
  CHECK(cat("F20")->order() == 20);
  CHECK(cat("C2xC6")->order() == 12);
  const auto triv = FiniteGroup::from_permutations({parse_cycles("()", 3)});
  CHECK(triv.order() == 1);
  CHECK(rank(triv) == 0);
  CHECK_THROWS_AS(FiniteGroup::from_permutations({parse_cycles("(1 2 3 4 5 6 7 8 9 10 11 12)"),
                                                  parse_cycles("(1 2)", 12)}),
                  ResourceLimit);
}

TEST_CASE("group axioms hold on catalog tables") {
  std::mt19937 rng(1);
  for (const auto& name : catalog_names()) {
    const auto g = catalog_group(name).group;
    const int n = g->order();
    for (int t = 0; t < 500; ++t) {
      const auto a = static_cast<Elem>(rng() % n), b = static_cast<Elem>(rng() % n), c = static_cast<Elem>(rng() % n);
      CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
      CHECK(g->mul(a, g->inv(a)) == g->identity());
      CHECK(g->mul(g->identity(), a) == a);
    }
  }
}

TEST_CASE("from_table builds Z/3") {
  const auto z3 = FiniteGroup::from_table(3, {0, 1, 2, 1, 2, 0, 2, 0, 1});
  CHECK(z3.order() == 3);
  CHECK(z3.is_abelian());
  CHECK(automorphisms(z3).size() == 2);
  CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1, 1}), InvalidInput);
}

TEST_CASE("normal closure") {
  const auto s4 = cat("S4");
  const Elem t = perm_elem(*s4, "(1 2)");
  const Elem dt = perm_elem(*s4, "(1 2)(3 4)");
  CHECK(normal_closure(*s4, std::vector<Elem>{t}).order() == 24);
  CHECK(normal_closure(*s4, std::vector<Elem>{dt}).order() == 4);
  CHECK(normal_closure(*s4, std::vector<Elem>{s4->identity()}).order() == 1);
  for (const auto& name : catalog_names()) {
    const auto g = catalog_group(name).group;
    if (g->order() > 60) continue;
    for (int x = 0; x < g->order(); x += 3) {
      const auto got = normal_closure(*g, std::vector<Elem>{static_cast<Elem>(x)});
      const auto want = conjugacy_closure(*g, {static_cast<Elem>(x)});
      CHECK(got.elements() == std::vector<Elem>(want.begin(), want.end()));
    }
  }
}

TEST_CASE("rank by abelianization and by search agree") {
  CHECK(rank(*cat("Q8")) == 2);
  CHECK(rank(*cat("PSL(2,7)")) == 1);
  CHECK(rank(*cat("C2^3")) == 3);
  CHECK(rank(*cat("C4xC2")) == 2);
  CHECK(rank(*cat("A5")) == 1);
  for (const auto& name : catalog_names()) {
    const auto g = catalog_group(name).group;
    if (g->order() <= 48) CHECK_MESSAGE(rank(*g) == rank_by_search(*g), name);
  }
}

TEST_CASE("abelian invariants") {
  CHECK(abelian_invariants(*cat("C4xC2")) == std::vector<int>{2, 4});
  CHECK(abelian_invariants(*cat("C2xC6")) == std::vector<int>{2, 6});
  CHECK(abelianization_invariants(*cat("S4")) == std::vector<int>{2});
  CHECK(abelianization_invariants(*cat("Q8")) == std::vector<int>{2, 2});
  CHECK(abelianization_invariants(*cat("F20")) == std::vector<int>{4});
  CHECK(abelianization_invariants(*cat("PSL(2,7)")).empty());
  CHECK(derived_subgroup(*cat("A4")).order() == 4);
  const auto basis = abelian_basis(*cat("C4xC2"));
  CHECK(basis.moduli == std::vector<int>{2, 4});
}

TEST_CASE("automorphism counts") {
  const auto q8 = cat("Q8");
  const auto d8 = cat("D8");
  CHECK(automorphisms(*q8).size() == 24);
  CHECK(automorphisms(*d8).size() == 8);
  const NamedGroup nq = catalog_group("Q8");
  CHECK(count_automorphisms_by_images(*q8, nq.names.at("i"), nq.names.at("j")) == 24);
  const NamedGroup nd = catalog_group("D8");
  CHECK(count_automorphisms_by_images(*d8, nd.names.at("r"), nd.names.at("s")) == 8);
  for (const char* name : {"C4xC2", "A4", "D10", "F20", "S4"}) {
    const auto g = cat(name);
    const auto gens = small_generating_set(*g);
    if (gens.size() != 2) continue;
    CHECK_MESSAGE(static_cast<int>(automorphisms(*g).size()) ==
                      count_automorphisms_by_images(*g, gens[0], gens[1]),
                  name);
  }
}

TEST_CASE("automorphisms are bijective homomorphisms") {
  for (const char* name : {"Q8", "D8", "A4", "C2xC6"}) {
    const auto g = cat(name);
    const auto autos = automorphisms(*g);
    CHECK(autos.front() == [&] {
      Automorphism id(static_cast<std::size_t>(g->order()));
      for (int x = 0; x < g->order(); ++x) id[x] = static_cast<Elem>(x);
      return id;
    }());
    for (const auto& a : autos) {
      std::set<Elem> imgs(a.begin(), a.end());
      CHECK(static_cast<int>(imgs.size()) == g->order());
      for (int x = 0; x < g->order(); ++x)
        for (int y = 0; y < g->order(); ++y)
          CHECK(a[g->mul(static_cast<Elem>(x), static_cast<Elem>(y))] == g->mul(a[x], a[y]));
    }
  }
}

TEST_CASE("quotients and isomorphism") {
  const auto c4c2 = cat("C4xC2");
  const auto q = quotient(*c4c2, whole_group(*c4c2));
  CHECK(q.group->order() == 1);
  const auto d8 = cat("D8");
  const auto center = normal_closure(*d8, std::vector<Elem>{catalog_group("D8").names.at("r")});
  CHECK(center.order() == 4);
  const auto qd = quotient(*d8, center);
  CHECK(qd.group->order() == 2);
  CHECK(find_isomorphism(*cat("C2^2"), *quotient(*cat("Q8"), derived_subgroup(*cat("Q8"))).group));
  CHECK_FALSE(find_isomorphism(*cat("Q8"), *d8));
}

TEST_CASE("words evaluate in the catalog presentation") {
  const auto psl = catalog_group("PSL(2,7)");
  const Elem a = evaluate_word(psl, "a");
  const Elem b = evaluate_word(psl, "b");
  CHECK(psl.group->element_order(psl.group->mul(a, b)) == 7);
  CHECK(evaluate_word(psl, "r^2") == a);
  CHECK(evaluate_word(psl, "e") == psl.group->identity());
  const auto c4 = catalog_group("C4xC2");
  CHECK(evaluate_word(c4, "x1^4") == 0);
  CHECK(evaluate_word(c4, "x1*y") == c4.group->mul(c4.names.at("x1"), c4.names.at("y")));
  CHECK_THROWS_AS(evaluate_word(c4, "zz"), InvalidInput);
  CHECK_THROWS_AS(catalog_group("M11"), InvalidInput);
}
