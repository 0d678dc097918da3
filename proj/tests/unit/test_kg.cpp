#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "vtr/errors.hpp"
#include "vtr/kg.hpp"

using vtr::Chunk;
using vtr::KGTriple;
using vtr::TripleStore;

namespace {

KGTriple triple(const std::string& s, const std::string& r, const std::string& o,
                const std::string& st = "", const std::string& ot = "") {
  return {s, r, o, st, ot};
}

Chunk chunk_of(const std::string& text, const std::string& video = "V") {
  Chunk c;
  c.video_id = video;
  c.text = text;
  c.language = "en";
  return c;
}

}  // namespace

TEST_CASE("store groups triples per video and keeps file order") {
  TripleStore store;
  store.add_triple("A", triple("insulin", "treats", "diabetes"));
  store.add_triple("A", triple("doctor", "prescribes", "insulin"));
  store.add_triple("B", triple("metformin", "drug_class", "biguanide"));
  CHECK(store.triple_count("A") == 2);
  CHECK(store.triple_count("B") == 1);
  CHECK(store.triples_for("A")[0].subject == "insulin");
  CHECK(store.triples_for("A")[1].subject == "doctor");
  CHECK_THROWS_AS(store.triples_for("ZZ"), vtr::UnknownVideo);
  CHECK(store.has_video("A"));
  CHECK_FALSE(store.has_video("ZZ"));
}

TEST_CASE("exact duplicate triples are dropped at add") {
  TripleStore store;
  store.add_triple("A", triple("insulin", "treats", "diabetes"));
  store.add_triple("A", triple("insulin", "treats", "diabetes"));
  CHECK(store.triple_count("A") == 1);
  // a different type annotation makes it a different triple
  store.add_triple("A", triple("insulin", "treats", "diabetes", "drug"));
  CHECK(store.triple_count("A") == 2);
}

TEST_CASE("registered empty video is distinct from unknown video") {
  TripleStore store;
  store.add_video("E");
  CHECK(store.triples_for("E").empty());
  CHECK(store.surfaces_for("E").empty());
  CHECK_THROWS_AS(store.triples_for("F"), vtr::UnknownVideo);
}

TEST_CASE("surfaces are ordered longest first") {
  TripleStore store;
  store.add_triple("V", triple("blood", "affects", "energy"));
  store.add_triple("V", triple("blood sugar", "indicates", "diabetes"));
  const auto& surfaces = store.surfaces_for("V");
  REQUIRE(surfaces.size() >= 2);
  CHECK(surfaces[0] == "blood sugar");  // longest surface form first
  auto blood_pos = std::find(surfaces.begin(), surfaces.end(), "blood");
  CHECK(blood_pos != surfaces.end());
}

TEST_CASE("match_entities finds direct surface matches") {
  TripleStore store;
  store.add_triple("V", triple("insulin", "treats", "diabetes"));
  auto matches = match_entities(chunk_of("insulin controls blood sugar"), store);
  CHECK(matches == std::vector<std::string>{"insulin"});
}

TEST_CASE("match_entities is empty without store entities") {
  TripleStore store;
  store.add_video("V");
  CHECK(vtr::match_entities(chunk_of("anything at all"), store).empty());
  // unknown video: no surfaces registered
  CHECK(vtr::match_entities(chunk_of("anything", "UNKNOWN"), store).empty());
}

TEST_CASE("longest match wins over a prefix surface") {
  TripleStore store;
  store.add_triple("V", triple("blood sugar", "indicates", "diabetes"));
  store.add_triple("V", triple("blood", "affects", "energy"));
  auto matches = vtr::match_entities(chunk_of("blood sugar level"), store);
  CHECK(matches == std::vector<std::string>{"blood sugar"});
}

TEST_CASE("matching is case-insensitive and NFKC-folded") {
  TripleStore store;
  store.add_triple("V", triple("Insulin", "treats", "diabetes"));
  auto matches = vtr::match_entities(chunk_of("INSULIN saves lives"), store);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0] == "insulin");  // casefolded form
}

TEST_CASE("word boundaries are required for non-CJK surfaces") {
  TripleStore store;
  store.add_triple("V", triple("sulin", "sounds_like", "zzz"));
  // "sulin" occurs inside "insulin" but not on a word boundary
  CHECK(vtr::match_entities(chunk_of("insulin dose"), store).empty());
  CHECK(vtr::match_entities(chunk_of("the sulin word"), store) ==
        std::vector<std::string>{"sulin"});
  // punctuation counts as a boundary
  CHECK(vtr::match_entities(chunk_of("try sulin."), store) ==
        std::vector<std::string>{"sulin"});
}

TEST_CASE("CJK surfaces match as substrings") {
  TripleStore store;
  store.add_triple("V", triple("胰岛素", "治疗", "糖尿病"));
  auto matches = vtr::match_entities(chunk_of("使用胰岛素治疗糖尿病的方法"), store);
  REQUIRE(matches.size() == 2);
  CHECK(matches[0] == "胰岛素");
  CHECK(matches[1] == "糖尿病");
}

TEST_CASE("matches are reported in first-occurrence order, once each") {
  TripleStore store;
  store.add_triple("V", triple("insulin", "lowers", "sugar"));
  store.add_triple("V", triple("doctor", "prescribes", "insulin"));
  auto matches =
      vtr::match_entities(chunk_of("sugar rises until insulin arrives, says the doctor"), store);
  CHECK(matches == std::vector<std::string>{"sugar", "insulin", "doctor"});
}

TEST_CASE("retrieve_triples returns subject and object positions") {
  TripleStore store;
  store.add_triple("V", triple("insulin", "treats", "diabetes"));
  store.add_triple("V", triple("doctor", "prescribes", "insulin"));
  store.add_triple("V", triple("metformin", "treats", "diabetes"));
  auto hits = vtr::retrieve_triples("insulin", "V", store);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].relation == "treats");      // file order preserved
  CHECK(hits[1].relation == "prescribes");
  CHECK(vtr::retrieve_triples("aspirin", "V", store).empty());
  CHECK_THROWS_AS(vtr::retrieve_triples("insulin", "ZZ", store), vtr::UnknownVideo);
}

TEST_CASE("retrieve_triples lists a self-referential triple once") {
  TripleStore store;
  store.add_triple("V", triple("insulin", "regulates", "insulin"));
  CHECK(vtr::retrieve_triples("insulin", "V", store).size() == 1);
}

TEST_CASE("render_fact templates") {
  CHECK(vtr::render_fact(triple("insulin", "treats", "diabetes")) == "insulin treats diabetes.");
  CHECK(vtr::render_fact(triple("metformin", "drug_class", "biguanide")) ==
        "metformin drug class biguanide.");
  CHECK(vtr::render_fact(triple("insulin", "treats", "diabetes", "", "disease")) ==
        "insulin treats diabetes. diabetes is a disease.");
  CHECK(vtr::render_fact(triple("insulin", "treats", "diabetes", "hormone", "disease")) ==
        "insulin treats diabetes. insulin is a hormone. diabetes is a disease.");
}

TEST_CASE("enrich_chunk appends facts after the verbatim chunk text") {
  TripleStore store;
  store.add_triple("V", triple("insulin", "treats", "diabetes"));
  auto enriched = vtr::enrich_chunk(chunk_of("take insulin in the morning"), store, {});
  CHECK(enriched.base.text == "take insulin in the morning");
  CHECK(enriched.entities == std::vector<std::string>{"insulin"});
  CHECK(enriched.facts == std::vector<std::string>{"insulin treats diabetes."});
  CHECK(enriched.enriched_text == "take insulin in the morning insulin treats diabetes.");
}

TEST_CASE("enrich_chunk without matches is the identity") {
  TripleStore store;
  store.add_triple("V", triple("warfarin", "thins", "blood"));
  auto enriched = vtr::enrich_chunk(chunk_of("nothing relevant here"), store, {});
  CHECK(enriched.facts.empty());
  CHECK(enriched.enriched_text == "nothing relevant here");
}

TEST_CASE("cap=0 bypasses enrichment entirely") {
  TripleStore store;
  store.add_triple("V", triple("insulin", "treats", "diabetes"));
  vtr::EnrichmentConfig off;
  off.max_facts = 0;
  auto enriched = vtr::enrich_chunk(chunk_of("take insulin now"), store, off);
  CHECK(enriched.entities.empty());
  CHECK(enriched.facts.empty());
  CHECK(enriched.enriched_text == "take insulin now");
}

TEST_CASE("fact cap keeps the first cap facts in entity order") {
  TripleStore store;
  for (int i = 0; i < 12; ++i) {
    store.add_triple("V", triple("insulin", "relates_to_" + std::to_string(i),
                                 "thing" + std::to_string(i)));
  }
  vtr::EnrichmentConfig cfg;  // cap 10
  auto enriched = vtr::enrich_chunk(chunk_of("insulin details"), store, cfg);
  REQUIRE(enriched.facts.size() == 10);
  CHECK(enriched.facts[0] == "insulin relates to 0 thing0.");
  CHECK(enriched.facts[9] == "insulin relates to 9 thing9.");
}

TEST_CASE("facts are deduplicated across entities") {
  TripleStore store;
  // one triple reachable from both its subject and its object
  store.add_triple("V", triple("insulin", "treats", "diabetes"));
  auto enriched = vtr::enrich_chunk(chunk_of("insulin helps with diabetes"), store, {});
  CHECK(enriched.entities == std::vector<std::string>{"insulin", "diabetes"});
  CHECK(enriched.facts == std::vector<std::string>{"insulin treats diabetes."});
}

TEST_CASE("enriched text always has the chunk text as prefix") {
  std::mt19937_64 rng(31);
  TripleStore store;
  const std::vector<std::string> entities{"insulin", "sugar", "doctor", "dose"};
  for (size_t i = 0; i < entities.size(); ++i) {
    store.add_triple("V", triple(entities[i], "links_to", entities[(i + 1) % entities.size()]));
  }
  for (int trial = 0; trial < 30; ++trial) {
    std::string text;
    for (int w = 0; w < 6; ++w) {
      if (!text.empty()) text.push_back(' ');
      text += entities[rng() % entities.size()];
    }
    vtr::EnrichmentConfig cfg;
    cfg.max_facts = rng() % 5;
    auto enriched = vtr::enrich_chunk(chunk_of(text), store, cfg);
    CHECK(enriched.enriched_text.rfind(text, 0) == 0);
    CHECK(enriched.facts.size() <= cfg.max_facts);
    // facts unique
    std::set<std::string> unique(enriched.facts.begin(), enriched.facts.end());
    CHECK(unique.size() == enriched.facts.size());
  }
}

TEST_CASE("shuffling input rows changes order at most, not the fact set") {
  std::vector<KGTriple> rows;
  for (int i = 0; i < 6; ++i) {
    rows.push_back(triple("insulin", "r" + std::to_string(i), "o" + std::to_string(i)));
  }
  TripleStore forward;
  for (const auto& r : rows) forward.add_triple("V", KGTriple(r));
  TripleStore backward;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) backward.add_triple("V", KGTriple(*it));

  auto ef = vtr::enrich_chunk(chunk_of("insulin study"), forward, {});
  auto eb = vtr::enrich_chunk(chunk_of("insulin study"), backward, {});
  std::multiset<std::string> sf(ef.facts.begin(), ef.facts.end());
  std::multiset<std::string> sb(eb.facts.begin(), eb.facts.end());
  CHECK(sf == sb);
  CHECK(ef.facts != eb.facts);  // order follows file order by design
}

TEST_CASE("enrichment config hash tracks the cap") {
  vtr::EnrichmentConfig a;
  vtr::EnrichmentConfig b;
  CHECK(a.config_hash() == b.config_hash());
  b.max_facts = 0;
  CHECK(a.config_hash() != b.config_hash());
}
