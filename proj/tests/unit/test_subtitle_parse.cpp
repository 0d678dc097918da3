#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "test_util.hpp"
#include "vtr/errors.hpp"
#include "vtr/subtitle_parse.hpp"

TEST_CASE("parse_srt single well-formed cue") {
  auto lines = vtr::parse_srt("1\n00:00:01,000 --> 00:00:02,500\nhello\n\n");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].index == 0);
  CHECK(lines[0].start_ms == 1000);
  CHECK(lines[0].end_ms == 2500);
  CHECK(lines[0].text == "hello");
}

TEST_CASE("parse_srt joins multi-line cue text with single spaces") {
  auto lines = vtr::parse_srt("1\n00:00:01,000 --> 00:00:02,000\na\nb\n\n");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].text == "a b");
}

TEST_CASE("parse_srt rejects start after end") {
  CHECK_THROWS_AS(vtr::parse_srt("1\n00:00:02,500 --> 00:00:01,000\nx\n\n"),
                  vtr::MalformedTimestamp);
}

TEST_CASE("parse_srt reports the offending line number") {
  try {
    vtr::parse_srt("1\nnot a timestamp\nx\n\n");
    FAIL("expected MalformedTimestamp");
  } catch (const vtr::MalformedTimestamp& e) {
    CHECK(e.line_no() == 2);
  }
}

TEST_CASE("parse_srt handles multiple cues, missing counters and BOM") {
  const std::string bom = "\xef\xbb\xbf";
  auto lines = vtr::parse_srt(bom +
                              "1\n00:00:00,000 --> 00:00:01,000\nfirst\n\n"
                              "00:00:02,000 --> 00:00:03,000\nsecond (no counter)\n\n");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].index == 0);
  CHECK(lines[1].index == 1);
  CHECK(lines[1].text == "second (no counter)");
}

TEST_CASE("parse_srt dot decimal separator tolerated") {
  auto lines = vtr::parse_srt("1\n00:00:01.500 --> 00:00:02.000\nx\n\n");
  CHECK(lines[0].start_ms == 1500);
}

TEST_CASE("parse_srt empty input") {
  CHECK_THROWS_AS(vtr::parse_srt(""), vtr::EmptyFile);
  CHECK_THROWS_AS(vtr::parse_srt("\n\n\n"), vtr::EmptyFile);
}

TEST_CASE("parse_vtt minimal file") {
  auto lines = vtr::parse_vtt("WEBVTT\n\n00:00:01.000 --> 00:00:02.000\nhi there\n");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].start_ms == 1000);
  CHECK(lines[0].text == "hi there");
}

TEST_CASE("parse_vtt requires header") {
  CHECK_THROWS_AS(vtr::parse_vtt("00:00:01.000 --> 00:00:02.000\nx\n"), vtr::MissingHeader);
  CHECK_THROWS_AS(vtr::parse_vtt("WEBVTTX\n\n00:00:01.000 --> 00:00:02.000\nx\n"),
                  vtr::MissingHeader);
}

TEST_CASE("parse_vtt short timestamp form MM:SS.mmm") {
  auto lines = vtr::parse_vtt("WEBVTT\n\n00:01.000 --> 00:02.000\nx\n");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].start_ms == 1000);
  CHECK(lines[0].end_ms == 2000);
}

TEST_CASE("parse_vtt skips NOTE and STYLE blocks, honors cue ids") {
  auto lines = vtr::parse_vtt(
      "WEBVTT\n\n"
      "NOTE this is a comment\nspanning lines\n\n"
      "STYLE\n::cue { color: red }\n\n"
      "intro-cue\n00:00:01.000 --> 00:00:02.000\nwelcome\n\n");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].text == "welcome");
}

TEST_CASE("parse_vtt with only NOTE blocks is empty") {
  CHECK_THROWS_AS(vtr::parse_vtt("WEBVTT\n\nNOTE nothing here\n\n"), vtr::EmptyFile);
}

TEST_CASE("parse_vtt ignores cue settings after the end timestamp") {
  auto lines =
      vtr::parse_vtt("WEBVTT\n\n00:00:01.000 --> 00:00:02.000 align:start line:0\nx\n");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].end_ms == 2000);
}

TEST_CASE("parse_jsonl basic and errors") {
  auto lines = vtr::parse_jsonl(
      "{\"index\":0,\"start_ms\":0,\"end_ms\":1000,\"text\":\"a\"}\n"
      "{\"index\":1,\"start_ms\":1000,\"end_ms\":2000,\"text\":\"b\",\"video_id\":\"v\"}\n");
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].text == "b");
  CHECK(lines[1].start_ms == 1000);

  CHECK_THROWS_AS(vtr::parse_jsonl("not json\n"), vtr::ParseError);
  CHECK_THROWS_AS(vtr::parse_jsonl("{\"index\":0}\n"), vtr::ParseError);
  CHECK_THROWS_AS(
      vtr::parse_jsonl("{\"index\":0,\"start_ms\":5,\"end_ms\":1,\"text\":\"x\"}\n"),
      vtr::MalformedTimestamp);
  CHECK_THROWS_AS(vtr::parse_jsonl("\n\n"), vtr::EmptyFile);
}

TEST_CASE("indices are contiguous from zero") {
  auto content = vtr_test::make_srt({"one", "two", "three", "four"});
  auto lines = vtr::parse_srt(content);
  REQUIRE(lines.size() == 4);
  for (size_t i = 0; i < lines.size(); ++i) CHECK(lines[i].index == i);
}

TEST_CASE("determinism: identical bytes give identical tracks") {
  auto content = vtr_test::make_srt({"alpha", "beta", "gamma"});
  CHECK(vtr::parse_srt(content) == vtr::parse_srt(content));
}

TEST_CASE("SRT round-trip through write_srt") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<vtr::SubtitleLine> track;
    uint64_t t = rng() % 1000;
    const size_t n = 1 + rng() % 6;
    for (size_t i = 0; i < n; ++i) {
      vtr::SubtitleLine line;
      line.index = static_cast<uint32_t>(i);
      line.start_ms = t;
      t += 500 + rng() % 2000;
      line.end_ms = t;
      t += rng() % 300;
      line.text = "line " + std::to_string(rng() % 1000);
      track.push_back(line);
    }
    CHECK(vtr::parse_srt(vtr::write_srt(track)) == track);
  }
}
