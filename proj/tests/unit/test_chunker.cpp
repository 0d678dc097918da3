#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "vtr/chunker.hpp"
#include "vtr/embedder.hpp"
#include "vtr/errors.hpp"

using vtr::Chunk;
using vtr::EmbeddingVector;
using vtr_test::FixedEmbedder;

namespace {

vtr::VideoRecord make_video(const std::vector<std::string>& texts,
                            const std::string& id = "vid", const std::string& lang = "en") {
  vtr::VideoRecord v;
  v.video_id = id;
  v.language = lang;
  for (size_t i = 0; i < texts.size(); ++i) {
    vtr::SubtitleLine line;
    line.index = static_cast<uint32_t>(i);
    line.text = texts[i];
    line.start_ms = i * 1000;
    line.end_ms = i * 1000 + 900;
    v.lines.push_back(line);
  }
  return v;
}

// 2D unit vectors at cumulative angles: adjacent cosine k equals
// cos(angle step k), so a desired similarity profile can be planted.
FixedEmbedder planted_profile_embedder(const std::vector<std::string>& texts,
                                       const std::vector<double>& adjacent_cosines) {
  std::map<std::string, EmbeddingVector> table;
  double angle = 0.0;
  for (size_t i = 0; i < texts.size(); ++i) {
    if (i > 0) angle += std::acos(adjacent_cosines[i - 1]);
    table[texts[i]] = {static_cast<float>(std::cos(angle)), static_cast<float>(std::sin(angle))};
  }
  return FixedEmbedder(std::move(table), 2);
}

std::vector<std::pair<uint32_t, uint32_t>> spans(const std::vector<Chunk>& chunks) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (const auto& c : chunks) out.emplace_back(c.first_line, c.last_line);
  return out;
}

}  // namespace

TEST_CASE("identical lines form one chunk for any tau below 1") {
  auto video = make_video({"same line", "same line", "same line"});
  FixedEmbedder emb({{"same line", {1, 0}}}, 2);
  for (float tau : {0.0f, 0.55f, 0.99f}) {
    vtr::ChunkerConfig cfg;
    cfg.tau = tau;
    auto chunks = vtr::chunk_video(video, emb, cfg);
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0].first_line == 0);
    CHECK(chunks[0].last_line == 2);
    CHECK(chunks[0].text == "same line same line same line");
  }
}

TEST_CASE("orthogonal lines split into one chunk per line") {
  auto video = make_video({"aa", "bb", "cc"});
  FixedEmbedder emb({{"aa", {1, 0, 0}}, {"bb", {0, 1, 0}}, {"cc", {0, 0, 1}}}, 3);
  vtr::ChunkerConfig cfg;  // tau = 0.55
  auto chunks = vtr::chunk_video(video, emb, cfg);
  REQUIRE(chunks.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(chunks[i].chunk_id == i);
    CHECK(chunks[i].first_line == i);
    CHECK(chunks[i].last_line == i);
  }
}

TEST_CASE("hand-walked boundary rule: profile (0.9, 0.3, 0.8, 0.2) at tau 0.55") {
  std::vector<std::string> texts{"l0", "l1", "l2", "l3", "l4"};
  auto emb = planted_profile_embedder(texts, {0.9, 0.3, 0.8, 0.2});
  auto video = make_video(texts);
  vtr::ChunkerConfig cfg;
  cfg.tau = 0.55f;
  auto chunks = vtr::chunk_video(video, emb, cfg);
  CHECK(spans(chunks) ==
        std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}, {2, 3}, {4, 4}});
}

TEST_CASE("max_chunk_lines caps runs of similar lines") {
  auto video = make_video({"same line", "same line", "same line", "same line", "same line"});
  FixedEmbedder emb({{"same line", {1, 0}}}, 2);
  vtr::ChunkerConfig cfg;
  cfg.max_chunk_lines = 2;
  auto chunks = vtr::chunk_video(video, emb, cfg);
  CHECK(spans(chunks) ==
        std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}, {2, 3}, {4, 4}});
}

TEST_CASE("min_chunk_lines suppresses early boundaries") {
  std::vector<std::string> texts{"l0", "l1", "l2"};
  auto emb = planted_profile_embedder(texts, {0.2, 0.2});  // boundary candidates everywhere
  auto video = make_video(texts);
  vtr::ChunkerConfig cfg;
  cfg.tau = 0.55f;
  cfg.min_chunk_lines = 2;
  auto chunks = vtr::chunk_video(video, emb, cfg);
  CHECK(spans(chunks) == std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}, {2, 2}});
}

TEST_CASE("zero-sentinel line embeddings force boundaries without errors") {
  auto video = make_video({"real text", "zz", "zz", "more text"});
  // "zz" maps to the sentinel; two adjacent sentinels must not raise
  FixedEmbedder emb({{"real text", {1, 0}}, {"zz", {0, 0}}, {"more text", {1, 0}}}, 2);
  vtr::ChunkerConfig cfg;  // tau 0.55; sentinel pairs compare as 0 < tau
  auto chunks = vtr::chunk_video(video, emb, cfg);
  CHECK(spans(chunks) ==
        std::vector<std::pair<uint32_t, uint32_t>>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
}

TEST_CASE("empty video and bad config are rejected") {
  FixedEmbedder emb({}, 2);
  vtr::VideoRecord empty;
  empty.video_id = "empty";
  CHECK_THROWS_AS(vtr::chunk_video(empty, emb, vtr::ChunkerConfig{}), vtr::EmptyVideo);

  auto video = make_video({"one line"});
  vtr::ChunkerConfig bad;
  bad.tau = 1.5f;
  CHECK_THROWS_AS(vtr::chunk_video(video, emb, bad), vtr::ConfigError);
  bad = {};
  bad.min_chunk_lines = 5;
  bad.max_chunk_lines = 2;
  CHECK_THROWS_AS(vtr::chunk_video(video, emb, bad), vtr::ConfigError);
}

TEST_CASE("single-line video yields one single-line chunk") {
  auto video = make_video({"only line here"});
  FixedEmbedder emb({{"only line here", {1, 0}}}, 2);
  auto chunks = vtr::chunk_video(video, emb, vtr::ChunkerConfig{});
  REQUIRE(chunks.size() == 1);
  CHECK(chunks[0].first_line == 0);
  CHECK(chunks[0].last_line == 0);
  CHECK(chunks[0].text == "only line here");
}

TEST_CASE("similarity profile basics") {
  FixedEmbedder emb({{"aa", {1, 0}}, {"bb", {0, 1}}}, 2);

  auto same = make_video({"aa", "aa"});
  auto p1 = vtr::similarity_profile(same, emb);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == doctest::Approx(1.0));

  auto ortho = make_video({"aa", "bb"});
  auto p2 = vtr::similarity_profile(ortho, emb);
  CHECK(p2[0] == doctest::Approx(0.0));

  auto single = make_video({"aa"});
  CHECK_THROWS_AS(vtr::similarity_profile(single, emb), vtr::TooFewLines);
}

TEST_CASE("profile length is always m-1") {
  std::mt19937_64 rng(21);
  vtr::EmbedderConfig ecfg;
  ecfg.dimension = 64;
  vtr::HashTrigramEmbedder emb(ecfg);
  const std::vector<std::string> words{"insulin", "sugar", "doctor", "dose",
                                       "night",   "water", "walk",   "heart"};
  for (int trial = 0; trial < 20; ++trial) {
    size_t m = 2 + rng() % 12;
    std::vector<std::string> texts;
    for (size_t i = 0; i < m; ++i) {
      texts.push_back(words[rng() % words.size()] + " " + words[rng() % words.size()]);
    }
    auto video = make_video(texts);
    CHECK(vtr::similarity_profile(video, emb).size() == m - 1);
  }
}

TEST_CASE("chunks partition the line range for random inputs") {
  std::mt19937_64 rng(22);
  vtr::EmbedderConfig ecfg;
  ecfg.dimension = 64;
  vtr::HashTrigramEmbedder emb(ecfg);
  const std::vector<std::string> words{"insulin", "sugar", "doctor", "dose", "night", "water"};
  for (int trial = 0; trial < 40; ++trial) {
    size_t m = 1 + rng() % 15;
    std::vector<std::string> texts;
    for (size_t i = 0; i < m; ++i) {
      texts.push_back(words[rng() % words.size()] + " " + words[rng() % words.size()]);
    }
    auto video = make_video(texts, "v" + std::to_string(trial), "de");
    vtr::ChunkerConfig cfg;
    cfg.tau = static_cast<float>((static_cast<double>(rng() % 2001) - 1000.0) / 1000.0);
    cfg.max_chunk_lines = 1 + rng() % 6;
    auto chunks = vtr::chunk_video(video, emb, cfg);

    uint32_t expect_first = 0;
    std::string joined;
    for (size_t j = 0; j < chunks.size(); ++j) {
      CHECK(chunks[j].chunk_id == j);
      CHECK(chunks[j].first_line == expect_first);
      CHECK(chunks[j].last_line >= chunks[j].first_line);
      CHECK(chunks[j].last_line - chunks[j].first_line + 1 <= cfg.max_chunk_lines);
      CHECK(chunks[j].video_id == video.video_id);
      CHECK(chunks[j].language == "de");
      expect_first = chunks[j].last_line + 1;
      if (!joined.empty()) joined.push_back(' ');
      joined += chunks[j].text;
    }
    CHECK(expect_first == m);  // spans tile 0..m-1 exactly

    std::string all_lines;
    for (const auto& line : video.lines) {
      if (!all_lines.empty()) all_lines.push_back(' ');
      all_lines += line.text;
    }
    CHECK(joined == all_lines);
  }
}

TEST_CASE("raising tau never decreases the chunk count") {
  std::mt19937_64 rng(23);
  vtr::EmbedderConfig ecfg;
  ecfg.dimension = 64;
  vtr::HashTrigramEmbedder emb(ecfg);
  const std::vector<std::string> words{"insulin", "sugar", "doctor", "dose", "night"};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::string> texts;
    for (size_t i = 0; i < 12; ++i) {
      texts.push_back(words[rng() % words.size()] + " " + words[rng() % words.size()]);
    }
    auto video = make_video(texts);
    size_t prev = 0;
    for (float tau : {-1.0f, -0.5f, 0.0f, 0.3f, 0.55f, 0.8f, 1.0f}) {
      vtr::ChunkerConfig cfg;
      cfg.tau = tau;
      size_t count = vtr::chunk_video(video, emb, cfg).size();
      CHECK(count >= prev);
      prev = count;
    }
  }
}

TEST_CASE("tau extremes") {
  auto video = make_video({"aa", "bb", "aa", "aa", "cc"});
  FixedEmbedder emb({{"aa", {1, 0, 0}}, {"bb", {0, 1, 0}}, {"cc", {0, 0, 1}}}, 3);

  vtr::ChunkerConfig low;
  low.tau = -1.0f;
  low.max_chunk_lines = 1000000;  // effectively unbounded
  CHECK(vtr::chunk_video(video, emb, low).size() == 1);

  vtr::ChunkerConfig high;
  high.tau = 1.0f;  // boundary whenever cos < 1: maximal identical runs
  CHECK(spans(vtr::chunk_video(video, emb, high)) ==
        std::vector<std::pair<uint32_t, uint32_t>>{{0, 0}, {1, 1}, {2, 3}, {4, 4}});
}

TEST_CASE("chunking is deterministic") {
  std::mt19937_64 rng(24);
  vtr::EmbedderConfig ecfg;
  ecfg.dimension = 64;
  vtr::HashTrigramEmbedder emb(ecfg);
  std::vector<std::string> texts;
  for (int i = 0; i < 10; ++i) texts.push_back("line number " + std::to_string(rng() % 4));
  auto video = make_video(texts);
  vtr::ChunkerConfig cfg;
  auto a = vtr::chunk_video(video, emb, cfg);
  auto b = vtr::chunk_video(video, emb, cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first_line == b[i].first_line);
    CHECK(a[i].last_line == b[i].last_line);
    CHECK(a[i].text == b[i].text);
  }
}

TEST_CASE("config hash tracks parameter changes") {
  vtr::ChunkerConfig a;
  vtr::ChunkerConfig b;
  CHECK(a.config_hash() == b.config_hash());
  b.tau = 0.7f;
  CHECK(a.config_hash() != b.config_hash());
}
