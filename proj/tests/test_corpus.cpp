#include "doctest.h"

#include <algorithm>
#include <fstream>

#include "tameconf/corpus.hpp"
#include "tameconf/errors.hpp"

using namespace tameconf;
using nlohmann::json;

namespace {

const std::vector<CorpusEntry>& bundled() {
  static const auto entries = load_corpus(default_corpus_path());
  return entries;
}

const CorpusEntry& entry(const std::string& id) {
  const auto& all = bundled();
  const auto it = std::find_if(all.begin(), all.end(), [&](const CorpusEntry& e) { return e.id == id; });
  REQUIRE(it != all.end());
  return *it;
}

json bundled_json() {
  std::ifstream in(default_corpus_path());
  return json::parse(in);
}

std::string schema_message(const json& doc) {
  try {
    parse_corpus(doc);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("bundled corpus shape") {
  const auto& all = bundled();
  CHECK(all.size() == 45);
  int unknown = 0;
  for (const auto& e : all)
    if (e.status == CorpusStatus::Unknown) {
      ++unknown;
      CHECK(e.table == "6");
    }
  CHECK(unknown == 4);
  CHECK(std::count_if(all.begin(), all.end(), [](const CorpusEntry& e) { return e.table == "1"; }) == 9);
  CHECK(std::count_if(all.begin(), all.end(), [](const CorpusEntry& e) { return e.table == "2"; }) == 7);
  CHECK(entry("single-row1").group == "D10");
}

TEST_CASE("round trip through JSON") {
  const auto& all = bundled();
  const json doc = corpus_to_json(all);
  CHECK(parse_corpus(doc) == all);
  CHECK(parse_corpus_text(doc.dump()) == all);
  CHECK(doc == bundled_json());
}

TEST_CASE("schema errors name the row") {
  CHECK_THROWS_AS(parse_corpus_text(""), SchemaError);
  CHECK_THROWS_AS(parse_corpus_text("{}"), SchemaError);
  CHECK_THROWS_AS(parse_corpus_text("[]"), SchemaError);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.json"), SchemaError);

  json doc = bundled_json();
  doc["schema"] = "other/1";
  CHECK(schema_message(doc).find("schema") != std::string::npos);

  doc = bundled_json();
  doc["entries"][7].erase("status");
  const auto msg = schema_message(doc);
  CHECK(msg.find("entries[7]") != std::string::npos);
  CHECK(msg.find("status") != std::string::npos);

  doc = bundled_json();
  doc["entries"][2]["extra"] = 1;
  CHECK(schema_message(doc).find("entries[2]") != std::string::npos);

  doc = bundled_json();
  doc["entries"][0]["realization"]["primes"][0]["pattern"] = json::array({json::array({1, 1})});
  CHECK(schema_message(doc).find("degree") != std::string::npos);

  doc = bundled_json();
  doc["entries"][1]["id"] = doc["entries"][0]["id"];
  CHECK(schema_message(doc).find("duplicate") != std::string::npos);

  doc = bundled_json();
  doc["entries"][0]["config"][0]["T"] = json::array({"nosuch"});
  CHECK_FALSE(schema_message(doc).empty());
}

TEST_CASE("every bundled row verifies") {
  int pass = 0, skipped = 0;
  for (const auto& e : bundled()) {
    const auto r = verify_table_entry(e);
    CHECK_MESSAGE(r.failures.empty(), e.id << ": " << (r.failures.empty() ? "" : r.failures.front()));
    if (r.outcome == VerifyOutcome::Pass) ++pass;
    if (r.outcome == VerifyOutcome::Skipped) {
      ++skipped;
      CHECK(e.status == CorpusStatus::Unknown);
    }
  }
  CHECK(pass == 41);
  CHECK(skipped == 4);
}

TEST_CASE("quartic of discriminant -283") {
  const auto& e = entry("table3-row1");
  REQUIRE(e.realization);
  const auto r = verify_table_entry(e);
  CHECK(r.outcome == VerifyOutcome::Pass);
  REQUIRE(r.ramification);
  CHECK(r.ramification->discriminant == -283);
  CHECK(r.ramification->ramified.at(283).to_string() == "P1^2 P2 P3");
}

TEST_CASE("negative controls") {
  SUBCASE("wrong prime") {
    auto e = entry("table2-row1");
    e.realization->primes[1].p = 31;
    CHECK(verify_table_entry(e).outcome == VerifyOutcome::Fail);
  }
  SUBCASE("printed (2,2) at 37 is inconsistent with the configuration") {
    auto e = entry("table2-row5");
    REQUIRE(e.realization->primes[1].p == 37);
    e.realization->primes[1].f = 2;
    CHECK(verify_table_entry(e).outcome == VerifyOutcome::Fail);
  }
  SUBCASE("wrong pattern") {
    auto e = entry("table2-row1");
    e.realization->primes[0].pattern = {{2, 1}, {2, 1}, {2, 1}, {2, 1}};
    CHECK(verify_table_entry(e).outcome == VerifyOutcome::Fail);
  }
  SUBCASE("not-realizable row with the wrong predicate") {
    auto e = entry("table1-row3");
    e.obstruction = "q8-witt";
    CHECK(verify_table_entry(e).outcome == VerifyOutcome::Fail);
  }
  SUBCASE("realizable label on an obstructed configuration") {
    auto e = entry("table1-row3");
    e.status = CorpusStatus::Realizable;
    e.obstruction.reset();
    e.realization = entry("table1-row1").realization;
    CHECK(verify_table_entry(e).outcome == VerifyOutcome::Fail);
  }
}

TEST_CASE("Dedekind-only verification surfaces index obstructions") {
  const auto r = verify_table_entry(entry("table1-row1"), false);
  CHECK(r.outcome == VerifyOutcome::IndexObstruction);
  CHECK(verify_table_entry(entry("table1-row1"), true).outcome == VerifyOutcome::Pass);
}
