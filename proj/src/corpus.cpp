#include "tameconf/corpus.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "tameconf/errors.hpp"

namespace tameconf {

using nlohmann::json;

std::string to_string(CorpusStatus s) {
  switch (s) {
    case CorpusStatus::Realizable: return "realizable";
    case CorpusStatus::NotRealizable: return "not_realizable";
    case CorpusStatus::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(VerifyOutcome v) {
  switch (v) {
    case VerifyOutcome::Pass: return "pass";
    case VerifyOutcome::Fail: return "fail";
    case VerifyOutcome::IndexObstruction: return "index_obstruction";
    case VerifyOutcome::Skipped: return "skipped";
  }
  return "?";
}

std::string default_corpus_path() { return TAMECONF_DEFAULT_CORPUS; }

namespace {

class Reader {
 public:
  explicit Reader(std::string where) : where_(std::move(where)) {}

  [[noreturn]] void fail(const std::string& msg) const { throw SchemaError(where_ + ": " + msg); }

  const json& field(const json& obj, const char* key) const {
    if (!obj.is_object()) fail("expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing field '") + key + "'");
    return *it;
  }

  std::string string(const json& obj, const char* key) const {
    const json& v = field(obj, key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  long long integer(const json& v, const std::string& what) const {
    if (!v.is_number_integer()) fail(what + " must be an integer");
    return v.get<long long>();
  }

  void only_keys(const json& obj, std::initializer_list<const char*> keys) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known |= it.key() == k;
      if (!known) fail("unknown field '" + it.key() + "'");
    }
  }

  std::vector<std::string> words(const json& v, const std::string& what) const {
    if (!v.is_array() || v.empty()) fail(what + " must be a nonempty array of words");
    std::vector<std::string> out;
    for (const auto& w : v) {
      if (!w.is_string() || w.get<std::string>().empty()) fail(what + " entries must be nonempty strings");
      out.push_back(w.get<std::string>());
    }
    return out;
  }

  const std::string& where() const { return where_; }
  void relabel(std::string where) { where_ = std::move(where); }

 private:
  std::string where_;
};

BigInt coefficient(const Reader& rd, const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      rd.fail("polynomial coefficient '" + s + "' is not an integer");
    }
    return BigInt(s);
  }
  rd.fail("polynomial coefficients must be integers or decimal strings");
}

CorpusEntry parse_entry(const json& e, Reader& rd) {
  CorpusEntry out;
  rd.only_keys(e, {"id", "table", "row", "group", "config", "status", "obstruction", "realization"});
  out.id = rd.string(e, "id");
  rd.relabel(rd.where() + " (" + out.id + ")");
  out.table = rd.string(e, "table");
  out.row = static_cast<int>(rd.integer(rd.field(e, "row"), "row"));
  out.group = rd.string(e, "group");
  const json& cfg = rd.field(e, "config");
  if (!cfg.is_array() || cfg.empty()) rd.fail("config must be a nonempty array");
  for (const auto& pair : cfg) {
    rd.only_keys(pair, {"T", "Z"});
    out.config.push_back({rd.words(rd.field(pair, "T"), "T"), rd.words(rd.field(pair, "Z"), "Z")});
  }
  const std::string status = rd.string(e, "status");
  if (status == "realizable") {
    out.status = CorpusStatus::Realizable;
  } else if (status == "not_realizable") {
    out.status = CorpusStatus::NotRealizable;
  } else if (status == "unknown") {
    out.status = CorpusStatus::Unknown;
  } else {
    rd.fail("status '" + status + "' is not one of realizable, not_realizable, unknown");
  }
  if (e.contains("obstruction")) {
    if (out.status != CorpusStatus::NotRealizable) rd.fail("obstruction is only allowed on not_realizable rows");
    out.obstruction = rd.string(e, "obstruction");
  } else if (out.status == CorpusStatus::NotRealizable) {
    rd.fail("not_realizable rows must name the obstruction predicate");
  }
  if (e.contains("realization")) {
    if (out.status != CorpusStatus::Realizable) rd.fail("realization is only allowed on realizable rows");
    const json& r = e["realization"];
    rd.only_keys(r, {"polynomial", "primes"});
    CorpusRealization real;
    const json& poly = rd.field(r, "polynomial");
    if (!poly.is_array() || poly.size() < 2) rd.fail("polynomial must list at least two coefficients");
    for (const auto& c : poly) real.polynomial.push_back(coefficient(rd, c));
    if (real.polynomial.back() != 1) rd.fail("polynomial must be monic (last coefficient 1)");
    const int degree = static_cast<int>(real.polynomial.size()) - 1;
    const json& primes = rd.field(r, "primes");
    if (!primes.is_array() || primes.empty()) rd.fail("primes must be a nonempty array");
    for (const auto& q : primes) {
      rd.only_keys(q, {"p", "e", "f", "pattern"});
      CorpusPrime cp;
      const long long p = rd.integer(rd.field(q, "p"), "p");
      const long long ee = rd.integer(rd.field(q, "e"), "e");
      const long long ff = rd.integer(rd.field(q, "f"), "f");
      if (p < 2 || !is_prime(static_cast<u64>(p))) rd.fail("p = " + std::to_string(p) + " is not prime");
      if (ee < 1 || ff < 1) rd.fail("e and f must be positive");
      cp.p = static_cast<u64>(p);
      cp.e = static_cast<int>(ee);
      cp.f = static_cast<int>(ff);
      const json& pat = rd.field(q, "pattern");
      if (!pat.is_array() || pat.empty()) rd.fail("pattern must be a nonempty array of [e, f] pairs");
      int sum = 0;
      for (const auto& ef : pat) {
        if (!ef.is_array() || ef.size() != 2) rd.fail("pattern entries must be [e, f] pairs");
        const long long pe = rd.integer(ef[0], "pattern e"), pf = rd.integer(ef[1], "pattern f");
        if (pe < 1 || pf < 1) rd.fail("pattern e and f must be positive");
        cp.pattern.push_back({static_cast<int>(pe), static_cast<int>(pf)});
        sum += static_cast<int>(pe * pf);
      }
      if (sum != degree) {
        rd.fail("pattern at p = " + std::to_string(p) + " has sum e*f = " + std::to_string(sum) +
                " but the polynomial has degree " + std::to_string(degree));
      }
      real.primes.push_back(std::move(cp));
    }
    if (real.primes.size() != out.config.size()) rd.fail("one prime per configuration pair is required");
    out.realization = std::move(real);
  } else if (out.status == CorpusStatus::Realizable) {
    rd.fail("realizable rows must carry a realization");
  }
  try {
    const TameConfig c = resolve_config(out);
    if (auto bad = config_violation(c)) rd.fail("configuration is invalid: " + *bad);
  } catch (const InvalidInput& ex) {
    rd.fail(ex.what());
  }
  return out;
}

json pattern_json(const std::vector<PrimeIdeal>& pat) {
  json out = json::array();
  for (const auto& q : pat) out.push_back({q.e, q.f});
  return out;
}

}  // namespace

TameConfig resolve_config(const CorpusEntry& entry) {
  const NamedGroup g = catalog_group(entry.group);
  TameConfig cfg{g.group, {}, {}};
  auto span = [&](const std::vector<std::string>& words) {
    std::vector<Elem> gens;
    for (const auto& w : words) gens.push_back(evaluate_word(g, w));
    return generate(*g.group, gens);
  };
  for (const auto& pair : entry.config) {
    cfg.T.push_back(span(pair.T));
    cfg.Z.push_back(span(pair.Z));
  }
  return cfg;
}

std::vector<CorpusEntry> parse_corpus(const json& doc) {
  Reader rd("corpus");
  if (!doc.is_object()) rd.fail("top level must be an object");
  rd.only_keys(doc, {"schema", "entries"});
  const std::string schema = rd.string(doc, "schema");
  if (schema != kCorpusSchema) rd.fail("schema '" + schema + "' is not " + kCorpusSchema);
  const json& entries = rd.field(doc, "entries");
  if (!entries.is_array() || entries.empty()) rd.fail("entries must be a nonempty array");
  std::vector<CorpusEntry> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Reader er("entries[" + std::to_string(i) + "]");
    CorpusEntry e = parse_entry(entries[i], er);
    if (!ids.insert(e.id).second) er.fail("duplicate id '" + e.id + "'");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CorpusEntry> parse_corpus_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw SchemaError(std::string("corpus: not valid JSON: ") + ex.what());
  }
  return parse_corpus(doc);
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("corpus: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus_text(ss.str());
}

json entry_to_json(const CorpusEntry& e) {
  json out = json::object();
  out["id"] = e.id;
  out["table"] = e.table;
  out["row"] = e.row;
  out["group"] = e.group;
  json cfg = json::array();
  for (const auto& pair : e.config) cfg.push_back({{"T", pair.T}, {"Z", pair.Z}});
  out["config"] = cfg;
  out["status"] = to_string(e.status);
  if (e.obstruction) out["obstruction"] = *e.obstruction;
  if (e.realization) {
    json poly = json::array();
    for (const auto& c : e.realization->polynomial) {
      if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max()) {
        poly.push_back(static_cast<long long>(c));
      } else {
        poly.push_back(c.str());
      }
    }
    json primes = json::array();
    for (const auto& q : e.realization->primes)
      primes.push_back({{"p", q.p}, {"e", q.e}, {"f", q.f}, {"pattern", pattern_json(q.pattern)}});
    out["realization"] = {{"polynomial", poly}, {"primes", primes}};
  }
  return out;
}

json corpus_to_json(const std::vector<CorpusEntry>& entries) {
  json list = json::array();
  for (const auto& e : entries) list.push_back(entry_to_json(e));
  return {{"schema", kCorpusSchema}, {"entries", list}};
}

json VerifyReport::detail() const {
  json out = {{"id", id}, {"outcome", to_string(outcome)}, {"failures", failures}};
  if (ramification) {
    json ram = json::object();
    for (const auto& [p, pat] : ramification->ramified) ram[std::to_string(p)] = pattern_json(pat.ideals);
    out["discriminant"] = ramification->discriminant.str();
    out["ramified"] = ram;
    out["index_only"] = ramification->index_only;
    out["unresolved"] = ramification->unresolved;
  }
  return out;
}

VerifyReport verify_table_entry(const CorpusEntry& entry, bool allow_maximal_order) {
  VerifyReport rep;
  rep.id = entry.id;
  auto fail = [&](std::string msg) { rep.failures.push_back(std::move(msg)); };
  const TameConfig cfg = resolve_config(entry);
  const ObstructionVerdict verdict = known_obstruction(cfg);

  if (entry.status == CorpusStatus::NotRealizable) {
    if (verdict.kind != ObstructionKind::Obstructed) {
      fail("no obstruction predicate fires");
    } else if (entry.obstruction && verdict.reason != *entry.obstruction) {
      fail("predicate '" + verdict.reason + "' fired, expected '" + *entry.obstruction + "'");
    }
    rep.outcome = rep.failures.empty() ? VerifyOutcome::Pass : VerifyOutcome::Fail;
    return rep;
  }
  if (entry.status == CorpusStatus::Unknown) {
    if (verdict.kind == ObstructionKind::Obstructed) fail("unknown row is obstructed by " + verdict.reason);
    rep.outcome = rep.failures.empty() ? VerifyOutcome::Skipped : VerifyOutcome::Fail;
    return rep;
  }

  if (verdict.kind == ObstructionKind::Obstructed) fail("realized configuration is flagged by " + verdict.reason);
  const CorpusRealization& real = *entry.realization;
  const IntPoly f(real.polynomial);
  std::vector<u64> claimed;
  for (const auto& q : real.primes) claimed.push_back(q.p);
  Ramification ram;
  try {
    ram = ramified_primes(f, claimed, allow_maximal_order);
  } catch (const PartialFactorization& ex) {
    fail(ex.what());
    rep.outcome = VerifyOutcome::Fail;
    return rep;
  }
  rep.ramification = ram;
  if (!ram.unresolved.empty()) {
    for (u64 q : ram.unresolved) fail("index obstruction at " + std::to_string(q));
    rep.outcome = VerifyOutcome::IndexObstruction;
    return rep;
  }
  std::set<u64> found;
  for (const auto& [p, pat] : ram.ramified) found.insert(p);
  if (found != std::set<u64>(claimed.begin(), claimed.end())) {
    std::ostringstream os;
    os << "ramified primes {";
    for (auto it = found.begin(); it != found.end(); ++it) os << (it == found.begin() ? "" : ", ") << *it;
    os << "} differ from the claimed set";
    fail(os.str());
  }
  const int degree = f.degree();
  for (std::size_t i = 0; i < real.primes.size(); ++i) {
    const CorpusPrime& q = real.primes[i];
    const std::string at = " at p = " + std::to_string(q.p);
    const auto want = SplittingPattern::from(q.pattern);
    if (auto it = ram.ramified.find(q.p); it != ram.ramified.end() && !(it->second == want)) {
      fail("pattern " + it->second.to_string() + at + ", claimed " + want.to_string());
    }
    for (const auto& id : q.pattern)
      if (std::gcd(static_cast<u64>(id.e), q.p) != 1) fail("wild ramification" + at);
    const int t = cfg.T[i].order(), z = cfg.Z[i].order();
    if (q.e != t) fail("e = " + std::to_string(q.e) + at + " but |T| = " + std::to_string(t));
    if (q.e * q.f != z) fail("e*f = " + std::to_string(q.e * q.f) + at + " but |Z| = " + std::to_string(z));
    int le = 1, lf = 1;
    for (const auto& id : q.pattern) {
      le = std::lcm(le, id.e);
      lf = std::lcm(lf, id.f);
    }
    if (le != q.e) fail("lcm of pattern e" + at + " differs from e");
    if (q.f % lf != 0) fail("lcm of pattern f" + at + " does not divide f");
    // a Galois polynomial has one (e, f) repeated
    if (degree == cfg.group->order()) {
      for (const auto& id : q.pattern)
        if (id.e != q.e || id.f != q.f) fail("Galois pattern" + at + " is not uniform");
    }
  }
  rep.outcome = rep.failures.empty() ? VerifyOutcome::Pass : VerifyOutcome::Fail;
  return rep;
}

}  // namespace tameconf
