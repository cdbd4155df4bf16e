#pragma once

// Sign matrices and the quadratic-residue (QR) matrix machinery: the S^2
// diagonal criterion, the realizing prime search, the inertial-degree
// construction and the permutation-class census.

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tameconf/arith.hpp"

namespace tameconf {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using IntMatrix = DenseMatrix<int>;

/// Parses "a,b;c,d" (rows split on ';', entries on ',').
IntMatrix parse_int_matrix(std::string_view text);
std::string format_int_matrix(const IntMatrix& m);

/// Square matrix with zero diagonal and +-1 off the diagonal.
class SignMatrix {
 public:
  explicit SignMatrix(IntMatrix entries);
  static SignMatrix parse(std::string_view text);

  int size() const { return static_cast<int>(entries_.rows()); }
  int operator()(int i, int j) const { return entries_(i, j); }
  const IntMatrix& matrix() const { return entries_; }
  std::string to_string() const { return format_int_matrix(entries_); }

  /// Simultaneous row/column permutation: result(i, j) = S(perm[i], perm[j]).
  SignMatrix permuted(std::span<const int> perm) const;

  bool is_symmetric() const { return entries_ == entries_.transpose(); }

  friend bool operator==(const SignMatrix& a, const SignMatrix& b) {
    return a.entries_ == b.entries_;
  }
  /// Row-major lexicographic order on the flattened entries.
  friend bool operator<(const SignMatrix& a, const SignMatrix& b);

 private:
  IntMatrix entries_;
};

struct QrVerdict {
  bool is_qr = false;
  std::optional<int> k;
  std::vector<int> diagonal;  // diagonal of S^2
};

/// A sign matrix is QR iff diag(S^2) holds s-k copies of s-1 and k copies of
/// s-2k+1 for some 1 <= k <= s. The smallest such k is reported.
QrVerdict qr_test(const SignMatrix& s);

/// m_ij = (p_i / p_j) for i != j.
SignMatrix qr_matrix_of_primes(std::span<const u64> primes);

/// Lexicographically least tuple of distinct odd primes <= bound whose QR
/// matrix equals s, or nullopt once the range is exhausted.
std::optional<std::vector<u64>> find_primes_for_sign_matrix(const SignMatrix& s, u64 bound);

/// QR matrix whose multiquadratic realization has exactly r ramified primes
/// of inertial degree 2 (0 <= r <= s, r = 0 when s = 1).
SignMatrix inertial_degree_matrix(int s, int r);

/// Least member of the permutation-conjugation class (s <= 8).
SignMatrix canonical_class(const SignMatrix& s);

struct CensusCounts {
  std::uint64_t sign_classes = 0;
  std::uint64_t qr_classes = 0;
  friend bool operator==(const CensusCounts&, const CensusCounts&) = default;
};

/// Exact class counts for 1 <= s <= 5.
CensusCounts census(int s);

}  // namespace tameconf
