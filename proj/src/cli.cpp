#include "tameconf/cli.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "tameconf/corpus.hpp"
#include "tameconf/errors.hpp"
#include "tameconf/realize.hpp"

namespace tameconf {

using nlohmann::json;

namespace {

constexpr u64 kDefaultBound = 100'000;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(' ');
    const auto e = cur.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<u64> parse_u64_list(const std::string& s) {
  std::vector<u64> out;
  for (const auto& tok : split(s, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidInput("expected a comma-separated list of positive integers, got '" + s + "'");
    }
    out.push_back(std::stoull(tok));
  }
  return out;
}

std::string join(const std::vector<u64>& v, const char* sep = ", ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

json group_elements(const FiniteGroup& g, const Subgroup& h) {
  json out = json::array();
  for (Elem x : h.elements()) {
    if (g.has_permutations()) {
      out.push_back(format_cycles(g.permutation(x)));
    } else {
      out.push_back(x);
    }
  }
  return out;
}

json config_json(const TameConfig& cfg) {
  json pairs = json::array();
  for (int i = 0; i < cfg.size(); ++i)
    pairs.push_back({{"T", group_elements(*cfg.group, cfg.T[i])}, {"Z", group_elements(*cfg.group, cfg.Z[i])}});
  return {{"description", describe(cfg)}, {"pairs", pairs}, {"split", cfg.is_split()}};
}

json certificate_json(const RealizationCertificate& c) {
  json out;
  out["primes"] = c.primes;
  out["roots"] = c.roots;
  out["degree"] = c.field.degree();
  out["moduli"] = c.field.moduli();
  out["images"] = c.field.images();
  json pd = json::array();
  for (const auto& q : c.prime_data) pd.push_back({{"p", q.p}, {"e", q.e}, {"f", q.f}});
  out["prime_data"] = pd;
  if (c.config) out["config"] = config_json(*c.config);
  if (c.matrix) out["matrix"] = c.matrix->to_string();
  out["reverified"] = verify_certificate(c);
  return out;
}

// "x1/x1,y; y/y": pairs separated by ';', T and Z words by '/', generators by ','
TameConfig parse_config_words(const std::string& group, const std::string& text) {
  CorpusEntry e;
  e.group = group;
  for (const auto& pair : split(text, ';')) {
    const auto tz = split(pair, '/');
    if (tz.size() != 2) throw InvalidInput("config pair '" + pair + "' must read T-gens/Z-gens");
    e.config.push_back({split(tz[0], ','), split(tz[1], ',')});
  }
  TameConfig cfg = resolve_config(e);
  if (auto bad = config_violation(cfg)) throw InvalidInput("invalid configuration: " + *bad);
  return cfg;
}

std::string diag_string(const std::vector<int>& d) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ")";
  return os.str();
}

struct Options {
  bool json = false;
  std::string corpus = default_corpus_path();
  int threads = 1;
  u64 bound = kDefaultBound;
  std::string matrix, group, config, entry, l_list, id;
  u64 n = 0, p = 0, zeta = 0;
  int s = 0;
  bool dedekind_only = false;
};

void search_outcome(RunReport& r, const SearchResult& res) {
  r.result["tuples_tried"] = res.stats.tuples_tried;
  r.result["bound"] = res.stats.bound;
  r.result["signature_space_excluded"] = res.stats.signature_space_excluded;
  r.result["signatures_checked"] = res.stats.signatures_checked;
  if (res.certificate) {
    r.outcome = "found";
    r.result["certificate"] = certificate_json(*res.certificate);
    r.text += "primes: " + join(res.certificate->primes) + "\nroots: " + join(res.certificate->roots) + "\n";
    for (const auto& q : res.certificate->prime_data)
      r.text += "  p=" + std::to_string(q.p) + " e=" + std::to_string(q.e) + " f=" + std::to_string(q.f) + "\n";
    if (!verify_certificate(*res.certificate)) {
      r.exit_code = kExitNegative;
      r.reason = "certificate failed re-verification";
    }
  } else {
    r.outcome = "exhausted";
    r.exit_code = kExitExhausted;
    r.reason = res.stats.signature_space_excluded
                   ? "no witness at any bound (all " + std::to_string(res.stats.signatures_checked) +
                         " residue signatures ruled out)"
                   : "no witness with primes <= " + std::to_string(res.stats.bound) + " (" +
                         std::to_string(res.stats.tuples_tried) + " candidates tried)";
  }
}

void cmd_qr_check(RunReport& r, const Options& o) {
  const SignMatrix m = SignMatrix::parse(o.matrix);
  const auto v = qr_test(m);
  r.result = {{"matrix", m.to_string()}, {"is_qr", v.is_qr}, {"diagonal", v.diagonal}};
  if (v.k) r.result["k"] = *v.k;
  r.reason = "diagonal of S^2 = " + diag_string(v.diagonal);
  r.outcome = v.is_qr ? "qr" : "not-qr";
  r.exit_code = v.is_qr ? kExitOk : kExitNegative;
  r.text = std::string(v.is_qr ? "QR matrix" : "not a QR matrix") + "\n";
}

void cmd_qr_find(RunReport& r, const Options& o) {
  const SignMatrix m = SignMatrix::parse(o.matrix);
  const auto v = qr_test(m);
  r.result = {{"matrix", m.to_string()}, {"bound", o.bound}, {"diagonal", v.diagonal}};
  if (!v.is_qr) {
    r.outcome = "not-qr";
    r.exit_code = kExitNegative;
    r.reason = "diagonal of S^2 = " + diag_string(v.diagonal);
    return;
  }
  const auto primes = find_primes_for_sign_matrix(m, o.bound);
  if (!primes) {
    r.outcome = "exhausted";
    r.exit_code = kExitExhausted;
    r.reason = "no prime tuple <= " + std::to_string(o.bound);
    return;
  }
  r.outcome = "found";
  r.result["primes"] = *primes;
  r.text = "primes: " + join(*primes) + "\n";
}

void cmd_qr_census(RunReport& r, const Options& o) {
  const auto c = census(o.s);
  r.outcome = "done";
  r.result = {{"s", o.s}, {"sign_classes", c.sign_classes}, {"qr_classes", c.qr_classes}};
  r.text = "s=" + std::to_string(o.s) + " sign classes " + std::to_string(c.sign_classes) + ", QR classes " +
           std::to_string(c.qr_classes) + "\n";
}

void cmd_group_enumerate(RunReport& r, const Options& o) {
  const NamedGroup g = catalog_group(o.group);
  const auto configs = enumerate_configs(g.group);
  json list = json::array();
  for (const auto& c : configs) {
    list.push_back(config_json(c));
    r.text += describe(c) + "\n";
  }
  r.outcome = "done";
  r.result = {{"group", o.group}, {"order", g.group->order()}, {"count", configs.size()}, {"configs", list}};
  r.reason = std::to_string(configs.size()) + " configurations";
}

void cmd_group_rank(RunReport& r, const Options& o) {
  const NamedGroup g = catalog_group(o.group);
  const int k = rank(*g.group);
  const auto inv = abelianization_invariants(*g.group);
  r.outcome = "done";
  r.result = {{"group", o.group}, {"order", g.group->order()}, {"rank", k}, {"abelianization", inv}};
  r.text = o.group + ": rank " + std::to_string(k) + "\n";
}

void cmd_group_obstruction(RunReport& r, const Options& o) {
  const NamedGroup g = catalog_group(o.group);
  if (!o.config.empty()) {
    const TameConfig cfg = parse_config_words(o.group, o.config);
    const auto v = known_obstruction(cfg);
    r.result = {{"config", config_json(cfg)}, {"verdict", to_string(v.kind)}, {"reason", v.reason}};
    r.outcome = to_string(v.kind);
    r.reason = v.reason;
    r.exit_code = v.kind == ObstructionKind::Obstructed ? kExitNegative : kExitOk;
    r.text = describe(cfg) + ": " + to_string(v.kind) + (v.reason.empty() ? "" : " (" + v.reason + ")") + "\n";
    return;
  }
  const auto configs = enumerate_configs(g.group);
  json list = json::array();
  for (const auto& c : configs) {
    const auto v = known_obstruction(c);
    list.push_back({{"config", config_json(c)}, {"verdict", to_string(v.kind)}, {"reason", v.reason}});
    r.text += describe(c) + ": " + to_string(v.kind) + (v.reason.empty() ? "" : " (" + v.reason + ")") + "\n";
  }
  const auto summary = group_obstruction_summary(configs);
  r.outcome = to_string(summary);
  r.result = {{"group", o.group}, {"summary", to_string(summary)}, {"configs", list}};
}

void cmd_realize_split(RunReport& r, const Options& o) {
  r.result = {{"n", o.n}, {"s", o.s}};
  search_outcome(r, realize_split(o.n, o.s, o.bound));
}

void cmd_realize_matrix(RunReport& r, const Options& o) {
  const DecompMatrix m = DecompMatrix::parse(o.n, o.matrix);
  r.result = {{"n", o.n}, {"matrix", m.to_string()}};
  search_outcome(r, realize_matrix_odd(m, o.bound));
}

TameConfig config_from_options(const Options& o) {
  if (!o.entry.empty()) {
    for (const auto& e : load_corpus(o.corpus))
      if (e.id == o.entry) return resolve_config(e);
    throw InvalidInput("no corpus entry with id '" + o.entry + "'");
  }
  if (o.group.empty() || o.config.empty()) throw InvalidInput("give --entry, or --group with --config");
  return parse_config_words(o.group, o.config);
}

void cmd_realize_config(RunReport& r, const Options& o) {
  const TameConfig cfg = config_from_options(o);
  r.result = {{"target", config_json(cfg)}};
  const auto v = known_obstruction(cfg);
  r.result["known_obstruction"] = v.reason;
  search_outcome(r, realize_abelian_general(cfg, o.bound));
}

void cmd_reciprocity(RunReport& r, const Options& o) {
  ReciprocityInstance inst{o.n, o.p, parse_u64_list(o.l_list), std::nullopt};
  if (o.zeta) inst.zeta = o.zeta;
  const auto res = reciprocity_check(inst);
  r.result = {{"n", o.n}, {"p", o.p}, {"l", inst.l}, {"zeta", res.zeta}, {"g", res.g},
              {"a", res.a},  {"b", res.b}, {"holds", res.holds}};
  if (res.unit) r.result["unit"] = *res.unit;
  r.outcome = res.holds ? "holds" : "fails";
  r.exit_code = res.holds ? kExitOk : kExitNegative;
  r.text = "a = (" + join(res.a) + "), b = (" + join(res.b) + ")\n";
  r.reason = res.holds ? "b = " + std::to_string(*res.unit) + " * a mod " + std::to_string(o.n)
                       : "no unit scales a to b";
}

void verify_into(RunReport& r, const std::vector<CorpusEntry>& entries, const Options& o) {
  json reports = json::array();
  int pass = 0, fail = 0, obstructed = 0, skipped = 0;
  for (const auto& e : entries) {
    const auto rep = verify_table_entry(e, !o.dedekind_only);
    reports.push_back(rep.detail());
    switch (rep.outcome) {
      case VerifyOutcome::Pass: ++pass; break;
      case VerifyOutcome::Fail: ++fail; break;
      case VerifyOutcome::IndexObstruction: ++obstructed; break;
      case VerifyOutcome::Skipped: ++skipped; break;
    }
    r.text += e.id + ": " + to_string(rep.outcome);
    for (const auto& f : rep.failures) r.text += " | " + f;
    r.text += "\n";
  }
  r.result = {{"entries", reports}, {"pass", pass}, {"fail", fail}, {"index_obstruction", obstructed},
              {"skipped", skipped}};
  r.reason = std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, " + std::to_string(obstructed) +
             " index obstruction, " + std::to_string(skipped) + " skipped";
  if (fail > 0) {
    r.outcome = "fail";
    r.exit_code = kExitNegative;
  } else if (obstructed > 0 || (pass == 0 && skipped > 0)) {
    r.outcome = "unknown";
    r.exit_code = kExitExhausted;
  } else {
    r.outcome = "pass";
  }
}

void cmd_verify_corpus(RunReport& r, const Options& o) { verify_into(r, load_corpus(o.corpus), o); }

void cmd_verify_entry(RunReport& r, const Options& o) {
  for (const auto& e : load_corpus(o.corpus)) {
    if (e.id == o.id) {
      verify_into(r, {e}, o);
      return;
    }
  }
  throw InvalidInput("no corpus entry with id '" + o.id + "'");
}

}  // namespace

bool wants_json(const std::vector<std::string>& args) {
  return std::find(args.begin(), args.end(), "--json") != args.end();
}

RunReport run(const std::vector<std::string>& args) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.command = args;
  Options o;

  CLI::App app{"Tame ramification configurations: sign matrices, groups, abelian realizations, table verification",
               "tameconf"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit one JSON document");
  app.add_option("--corpus", o.corpus, "Corpus file");
  app.add_option("--threads", o.threads, "Worker threads (does not affect output)")->check(CLI::Range(1, 256));
  app.add_option("--bound", o.bound, "Prime search bound")->check(CLI::Range(u64{2}, u64{1} << 40));

  auto* qr = app.add_subcommand("qr", "Sign matrices and the QR criterion")->require_subcommand(1);
  auto* qr_check = qr->add_subcommand("check", "Test a sign matrix with the S^2 criterion");
  qr_check->add_option("--matrix", o.matrix, "Rows separated by ';', entries by ','")->required();
  auto* qr_find = qr->add_subcommand("find", "Search for primes realizing a sign matrix");
  qr_find->add_option("--matrix", o.matrix)->required();
  auto* qr_census = qr->add_subcommand("census", "Count sign and QR matrix classes");
  qr_census->add_option("--s", o.s)->required()->check(CLI::Range(1, 5));

  auto* grp = app.add_subcommand("group", "Catalog groups and their configurations")->require_subcommand(1);
  auto* g_enum = grp->add_subcommand("enumerate", "List configurations up to Aut(G)");
  auto* g_rank = grp->add_subcommand("rank", "Rank of the group");
  auto* g_obs = grp->add_subcommand("obstruction", "Known obstruction predicates");
  for (auto* c : {g_enum, g_rank, g_obs}) c->add_option("--group", o.group)->required();
  g_obs->add_option("--config", o.config, "Pairs 'T-gens/Z-gens' separated by ';'");

  auto* ab = app.add_subcommand("abelian", "Abelian realizations")->require_subcommand(1);
  auto* a_split = ab->add_subcommand("realize-split", "Split configuration with T_i = Z_i of order n");
  a_split->add_option("--n", o.n)->required()->check(CLI::Range(u64{2}, u64{1000}));
  a_split->add_option("--s", o.s)->required()->check(CLI::Range(1, 8));
  auto* a_matrix = ab->add_subcommand("realize-matrix", "Primes with a prescribed decomposition matrix");
  a_matrix->add_option("--n", o.n)->required()->check(CLI::Range(u64{3}, u64{1000}));
  a_matrix->add_option("--matrix", o.matrix)->required();
  auto* a_config = ab->add_subcommand("realize-config", "Search for an abelian field with a configuration");
  a_config->add_option("--group", o.group);
  a_config->add_option("--config", o.config);
  a_config->add_option("--entry", o.entry, "Corpus entry id");
  auto* a_rec = ab->add_subcommand("reciprocity", "Check the reciprocity theorem on one instance");
  a_rec->add_option("--n", o.n)->required()->check(CLI::Range(u64{1}, u64{1} << 32));
  a_rec->add_option("--p", o.p)->required();
  a_rec->add_option("--l", o.l_list, "Comma-separated primes")->required();
  a_rec->add_option("--zeta", o.zeta);

  auto* ver = app.add_subcommand("verify", "Verify corpus rows")->require_subcommand(1);
  auto* v_corpus = ver->add_subcommand("corpus", "Verify every entry");
  auto* v_entry = ver->add_subcommand("entry", "Verify one entry");
  v_entry->add_option("--id", o.id)->required();
  for (auto* c : {v_corpus, v_entry})
    c->add_flag("--dedekind-only", o.dedekind_only, "Report index obstructions instead of using maximal orders");

  auto finish = [&]() {
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    r.outcome = "help";
    r.text = app.help();
    return finish();
  } catch (const CLI::CallForAllHelp&) {
    r.outcome = "help";
    r.text = app.help("", CLI::AppFormatMode::All);
    return finish();
  } catch (const CLI::ParseError& ex) {
    r.outcome = "usage-error";
    r.exit_code = kExitUsage;
    r.reason = ex.what();
    r.text = std::string(ex.what()) + "\n";
    return finish();
  }

  try {
    if (qr_check->parsed()) cmd_qr_check(r, o);
    else if (qr_find->parsed()) cmd_qr_find(r, o);
    else if (qr_census->parsed()) cmd_qr_census(r, o);
    else if (g_enum->parsed()) cmd_group_enumerate(r, o);
    else if (g_rank->parsed()) cmd_group_rank(r, o);
    else if (g_obs->parsed()) cmd_group_obstruction(r, o);
    else if (a_split->parsed()) cmd_realize_split(r, o);
    else if (a_matrix->parsed()) cmd_realize_matrix(r, o);
    else if (a_config->parsed()) cmd_realize_config(r, o);
    else if (a_rec->parsed()) cmd_reciprocity(r, o);
    else if (v_corpus->parsed()) cmd_verify_corpus(r, o);
    else if (v_entry->parsed()) cmd_verify_entry(r, o);
  } catch (const InvalidInput& ex) {
    r = RunReport{args, kExitUsage, "invalid-input", ex.what(), json::object(), std::string(ex.what()) + "\n", 0};
  } catch (const UnsupportedScope& ex) {
    r = RunReport{args, kExitUsage, "unsupported", ex.what(), json::object(), std::string(ex.what()) + "\n", 0};
  } catch (const SchemaError& ex) {
    r = RunReport{args, kExitUsage, "schema-error", ex.what(), json::object(), std::string(ex.what()) + "\n", 0};
  } catch (const ResourceLimit& ex) {
    r = RunReport{args, kExitExhausted, "resource-limit", ex.what(), json::object(), std::string(ex.what()) + "\n", 0};
  } catch (const PartialFactorization& ex) {
    r = RunReport{args, kExitExhausted, "partial-factorization", ex.what(), json::object(),
                  std::string(ex.what()) + "\n", 0};
  }
  if (r.result.is_null()) r.result = json::object();
  return finish();
}

std::string render(const RunReport& r, bool as_json) {
  if (as_json) {
    json out = {{"command", r.command}, {"exit_code", r.exit_code}, {"outcome", r.outcome},
                {"reason", r.reason},   {"result", r.result},       {"timing_ms", r.elapsed_ms}};
    return out.dump(2) + "\n";
  }
  std::string s = r.text;
  s += "outcome: " + r.outcome;
  if (!r.reason.empty()) s += " (" + r.reason + ")";
  s += "\n";
  return s;
}

}  // namespace tameconf
