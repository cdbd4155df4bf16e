#pragma once

// The bundled table corpus: loading, serialization and per-entry
// verification against the number-field and configuration engines.
//
// Subgroup generators are words in the catalog presentation of the entry's
// group ("x1*y", "s*r", "(1 2)(3 4)"), resolved when the corpus is loaded.

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

#include "tameconf/config.hpp"
#include "tameconf/numberfield.hpp"

namespace tameconf {

inline constexpr const char* kCorpusSchema = "tameconf-corpus/1";

enum class CorpusStatus { Realizable, NotRealizable, Unknown };
std::string to_string(CorpusStatus s);

struct CorpusPrime {
  u64 p = 0;
  int e = 1;
  int f = 1;
  std::vector<PrimeIdeal> pattern;
  friend bool operator==(const CorpusPrime&, const CorpusPrime&) = default;
};

struct CorpusRealization {
  std::vector<BigInt> polynomial;  // constant-first
  std::vector<CorpusPrime> primes;
  friend bool operator==(const CorpusRealization&, const CorpusRealization&) = default;
};

struct ConfigWords {
  std::vector<std::string> T;
  std::vector<std::string> Z;
  friend bool operator==(const ConfigWords&, const ConfigWords&) = default;
};

struct CorpusEntry {
  std::string id;
  std::string table;
  int row = 0;
  std::string group;
  std::vector<ConfigWords> config;
  CorpusStatus status = CorpusStatus::Unknown;
  std::optional<std::string> obstruction;  // predicate expected to fire
  std::optional<CorpusRealization> realization;
  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

/// Throws SchemaError naming the entry ("entries[7] (table2-row1): ...").
std::vector<CorpusEntry> parse_corpus(const nlohmann::json& doc);
std::vector<CorpusEntry> parse_corpus_text(const std::string& text);
std::vector<CorpusEntry> load_corpus(const std::string& path);
nlohmann::json corpus_to_json(const std::vector<CorpusEntry>& entries);
nlohmann::json entry_to_json(const CorpusEntry& entry);

/// Path compiled in for the bundled corpus.
std::string default_corpus_path();

/// Configuration on the catalog group named by the entry.
TameConfig resolve_config(const CorpusEntry& entry);

enum class VerifyOutcome { Pass, Fail, IndexObstruction, Skipped };
std::string to_string(VerifyOutcome v);

struct VerifyReport {
  std::string id;
  VerifyOutcome outcome = VerifyOutcome::Pass;
  std::vector<std::string> failures;
  nlohmann::json detail() const;
  std::optional<Ramification> ramification;
};

/// Realizable rows: ramified primes, patterns, tameness and agreement of the
/// claimed (e, f) with the configuration. Not-realizable rows: the named
/// obstruction predicate fires. Unknown rows are Skipped unless a predicate
/// fires, which is a Fail.
VerifyReport verify_table_entry(const CorpusEntry& entry, bool allow_maximal_order = true);

}  // namespace tameconf
