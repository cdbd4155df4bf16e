#pragma once

// Small finite groups held as Cayley tables, built from permutation
// generators or from an explicit multiplication table.
//
// Permutations compose right to left: (x y)(p) = x(y(p)). With this
// convention a = (1 2)(3 6), b = (2 6 7)(3 4 5) give ab = (1 2 3 4 5 6 7).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tameconf {

using Elem = std::uint16_t;

/// Images of 0..n-1, zero-based.
using Perm = std::vector<std::uint8_t>;

/// Parses cycle notation such as "(1 2)(3 4 5)" or "()" on `degree` points
/// (1-based in the text). degree 0 means "largest point mentioned".
Perm parse_cycles(std::string_view text, int degree = 0);
std::string format_cycles(const Perm& p);
Perm compose(const Perm& x, const Perm& y);  // x after y

class FiniteGroup {
 public:
  static constexpr int kClosureCap = 10000;
  static constexpr int kTableCap = 2048;

  static FiniteGroup from_permutations(std::vector<Perm> generators, std::string label = {});
  /// table[a * order + b] = a*b; element 0 must be the identity.
  static FiniteGroup from_table(int order, std::vector<Elem> table, std::string label = {});

  int order() const { return order_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, long long k) const;
  Elem conj(Elem x, Elem g) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  int element_order(Elem a) const { return orders_[a]; }
  bool is_abelian() const;
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool has_permutations() const { return !perms_.empty(); }
  const Perm& permutation(Elem a) const { return perms_.at(a); }
  std::optional<Elem> find(const Perm& p) const;

 private:
  void finish();

  int order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<int> orders_;
  std::vector<Perm> perms_;
  std::map<Perm, Elem> perm_index_;
  std::string label_;
};

/// Sorted, duplicate-free element indices closed under the group law.
class Subgroup {
 public:
  Subgroup() = default;
  explicit Subgroup(std::vector<Elem> sorted_elements) : elems_(std::move(sorted_elements)) {}

  int order() const { return static_cast<int>(elems_.size()); }
  const std::vector<Elem>& elements() const { return elems_; }
  bool contains(Elem a) const;
  bool contains(const Subgroup& h) const;

  friend auto operator<=>(const Subgroup&, const Subgroup&) = default;

 private:
  std::vector<Elem> elems_;
};

Subgroup generate(const FiniteGroup& g, std::span<const Elem> gens);
Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup();
Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> elems);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);
Subgroup derived_subgroup(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
bool is_normal_in(const FiniteGroup& g, const Subgroup& n, const Subgroup& h);
bool is_cyclic(const FiniteGroup& g, const Subgroup& h);
std::vector<Subgroup> cyclic_subgroups(const FiniteGroup& g);
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);

struct Quotient {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Elem> projection;  // element of G -> coset index
};

/// G/N with cosets numbered by their least element.
Quotient quotient(const FiniteGroup& g, const Subgroup& n);
Subgroup image(const Quotient& q, const Subgroup& h);

/// Invariant factors d_1 | d_2 | ... (all > 1) of an abelian group.
std::vector<int> abelian_invariants(const FiniteGroup& abelian);

/// Invariant factors of G/[G,G].
std::vector<int> abelianization_invariants(const FiniteGroup& g);

struct AbelianBasis {
  std::vector<int> moduli;                 // invariant factors d_1 | d_2 | ...
  std::vector<Elem> basis;                 // x_k of order d_k
  std::vector<std::vector<int>> coords;    // element -> exponents on the basis
};

/// G = <x_1> x ... x <x_r> for an abelian group of order <= 256.
AbelianBasis abelian_basis(const FiniteGroup& abelian);

/// Minimal number of normal generators, via the abelianization.
int rank(const FiniteGroup& g);

/// Same number by exhaustive search over element tuples (|G| <= 48).
int rank_by_search(const FiniteGroup& g);

/// Smallest generating tuple, preferring tuples whose elements have few
/// same-order competitors.
std::vector<Elem> small_generating_set(const FiniteGroup& g);

/// Each automorphism as the image table of all elements; identity first.
using Automorphism = std::vector<Elem>;
std::vector<Automorphism> automorphisms(const FiniteGroup& g);

/// Some isomorphism a -> b as an image table, if the groups are isomorphic.
std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

/// Group with names for distinguished elements.
struct NamedGroup {
  std::shared_ptr<const FiniteGroup> group;
  std::map<std::string, Elem> names;
};

/// Catalog keys: "C2^3", "C4xC2", "C2^2", "Q8", "D8", "D10", "A4", "F20",
/// "S4", "A5", "S5", "PSL(2,7)", "C2xC6".
std::vector<std::string> catalog_names();
NamedGroup catalog_group(std::string_view name);

/// Evaluates "s*r^3", "a*b", "x1^2", "e" or a cycle literal "(1 2)(3 4)".
Elem evaluate_word(const NamedGroup& g, std::string_view word);

}  // namespace tameconf
