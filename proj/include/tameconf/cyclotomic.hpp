#pragma once

// Abelian fields of odd squarefree conductor as subfields of Q(zeta_m).
//
// A field is presented by a surjection psi from (Z/mZ)^* = prod (Z/l_iZ)^*
// onto a small abelian group G inside prod Z/d_k: psi sends the generator
// tau_{g_i} (a = g_i mod l_i, a = 1 mod m/l_i) to gamma_i. The field is the
// fixed field of H = ker psi and Gal(F/Q) = G.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tameconf/arith.hpp"
#include "tameconf/config.hpp"
#include "tameconf/group.hpp"
#include "tameconf/signmatrix.hpp"

namespace tameconf {

using AbVec = std::vector<u64>;

class CyclotomicField {
 public:
  static constexpr int kElementCap = 2048;

  /// roots may be empty (smallest primitive roots are used).
  CyclotomicField(std::vector<u64> primes, std::vector<u64> moduli, std::vector<AbVec> images,
                  std::vector<u64> roots = {});

  /// Q itself.
  static CyclotomicField rational();

  const std::vector<u64>& primes() const { return primes_; }
  const std::vector<u64>& roots() const { return roots_; }
  const std::vector<u64>& moduli() const { return moduli_; }
  const std::vector<AbVec>& images() const { return images_; }

  /// Product of the presentation primes (throws past 2^64).
  u64 m() const;
  int degree() const { return static_cast<int>(elements_.size()); }

  /// Presentation primes with nontrivial inertia, in presentation order.
  std::vector<u64> ramified_primes() const;

  /// Elements of G; index 0 is the identity.
  const std::vector<AbVec>& elements() const { return elements_; }
  Elem index_of(const AbVec& v) const;
  const AbVec& element(Elem e) const { return elements_[e]; }

  /// psi(a) for a coprime to m.
  Elem psi(u64 a) const;
  /// psi of the residue a = x mod l_i, 1 mod m/l_i.
  Elem psi_local(std::size_t i, u64 x) const;

  Subgroup generated(std::span<const Elem> gens) const;

  /// Cayley-table view of G (element indices agree with elements()).
  std::shared_ptr<const FiniteGroup> galois_group() const { return group_; }

  /// Residues of H in [1, m), when m <= cap.
  std::vector<u64> subgroup_H(u64 cap = 10000000) const;

  /// Least positive residue coprime to m in the coset e.
  u64 least_residue(Elem e, u64 cap = 100000000) const;

 private:
  AbVec add(const AbVec& a, const AbVec& b) const;
  AbVec scale(const AbVec& a, u64 k) const;
  u64 order_of(const AbVec& a) const;

  std::vector<u64> primes_, roots_, moduli_;
  std::vector<AbVec> images_;
  std::vector<u64> image_orders_;
  std::vector<AbVec> elements_;
  std::map<AbVec, Elem> index_;
  std::shared_ptr<const FiniteGroup> group_;
};

/// Degree-n subfield of Q(zeta_p); gamma = 1 in Z/n.
CyclotomicField field_K_n_p(u64 p, u64 n);

/// Compositum for coprime or equal prime supports.
CyclotomicField composite(const CyclotomicField& a, const CyclotomicField& b);

/// Composite of K_n(l_i) with G = (Z/n)^s and gamma_i the unit vectors.
CyclotomicField standard_composite(std::span<const u64> primes, u64 n, std::span<const u64> roots = {});

Subgroup inertia_group(const CyclotomicField& f, u64 p);

struct DecompositionData {
  int e = 1;
  int f = 1;
  Subgroup Z;
  Subgroup T;
  Elem frobenius = 0;  // a generator of Z/T
};

/// Works for every prime p, including 2 (never ramified here).
DecompositionData decomposition_data(const CyclotomicField& f, u64 p);

/// Configuration over Gal(F/Q) for the ramified primes in the given order.
TameConfig extract_config(const CyclotomicField& f, std::span<const u64> prime_order);

struct RealizationWitness {
  std::vector<Elem> isomorphism;  // Gal(F/Q) element -> target element
  std::vector<int> prime_to_index;  // i-th ramified prime -> target pair index
};

std::optional<RealizationWitness> verify_realization(const CyclotomicField& f, const TameConfig& target);

/// s x s matrix over Z/nZ with zero diagonal.
class DecompMatrix {
 public:
  DecompMatrix(u64 n, DenseMatrix<i64> entries);
  static DecompMatrix parse(u64 n, std::string_view text);
  static DecompMatrix zero(u64 n, int s);

  u64 n() const { return n_; }
  int size() const { return static_cast<int>(a_.rows()); }
  u64 operator()(int i, int j) const { return static_cast<u64>(a_(i, j)); }
  const DenseMatrix<i64>& matrix() const { return a_; }
  std::string to_string() const;

  friend bool operator==(const DecompMatrix& x, const DecompMatrix& y) {
    return x.n_ == y.n_ && x.a_ == y.a_;
  }

 private:
  u64 n_;
  DenseMatrix<i64> a_;
};

/// a_ij with l_i = g_j^(a_ij) mod l_j, read off the engine's Frobenius data;
/// f must be a standard composite.
DecompMatrix decomposition_matrix(const CyclotomicField& f);

}  // namespace tameconf
