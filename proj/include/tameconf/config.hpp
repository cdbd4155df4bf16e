#pragma once

// Tame decomposition configurations (G, {T_i}, {Z_i}): validation,
// enumeration up to Aut(G) x index permutations, quotients and the known
// obstruction predicates.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tameconf/group.hpp"
#include "tameconf/signmatrix.hpp"

namespace tameconf {

struct TameConfig {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Subgroup> T;
  std::vector<Subgroup> Z;

  int size() const { return static_cast<int>(T.size()); }
  bool is_split() const { return T == Z; }
};

/// Empty when every invariant holds, otherwise the first violation.
std::optional<std::string> config_violation(const TameConfig& cfg);

/// Sorted (T_i, Z_i) pairs, each subgroup as its sorted element list.
using ConfigKey = std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>>;
ConfigKey config_key(const TameConfig& cfg);

/// Least key over the action of `autos` (identity included by the caller).
ConfigKey canonical_key(const TameConfig& cfg, const std::vector<Automorphism>& autos);
TameConfig apply_automorphism(const TameConfig& cfg, const Automorphism& a);

/// Representatives ordered by canonical key. Throws UnsupportedScope when
/// rank(G) > 2.
std::vector<TameConfig> enumerate_configs(std::shared_ptr<const FiniteGroup> g);

/// Projection to G/N, or nullopt when rank(G/N) < rank(G).
std::optional<TameConfig> config_quotient(const TameConfig& cfg, const Subgroup& n);

enum class GroupShape { ElementaryAbelian2, Z4xZ2, Q8, Other };
GroupShape classify(const FiniteGroup& g);

/// S_Z for a configuration on an elementary abelian 2-group: entry (i, j)
/// is -1 iff the Frobenius of the i-th prime moves the j-th inertia factor.
SignMatrix sign_matrix_of(const TameConfig& cfg);

enum class ObstructionKind { Obstructed, SplitOnly, NoKnownObstruction };

struct ObstructionVerdict {
  ObstructionKind kind = ObstructionKind::NoKnownObstruction;
  std::string reason;  // predicate name when obstructed
};

/// Per-configuration verdict: Obstructed or NoKnownObstruction.
ObstructionVerdict known_obstruction(const TameConfig& cfg);

/// Group-level summary over all configurations: SplitOnly when exactly
/// the split configurations survive the predicates.
ObstructionKind group_obstruction_summary(const std::vector<TameConfig>& configs);

std::string to_string(ObstructionKind k);

/// Human-readable "<T1 | Z1>, <T2 | Z2>" listing of generators.
std::string describe(const TameConfig& cfg);

}  // namespace tameconf
